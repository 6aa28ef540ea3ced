"""Figure rendering for dataset reports.

render_report_files writes, into a directory:

  label_keys.png   bar chart of the most frequent label keys
  lengths.png      histogram of example lengths (tokens)
  label_keys.tsv   the full key histogram, one "key<TAB>count" row per key,
                   sorted by count (descending) then key
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .validate import StatsReport  # noqa: E402


def render_report_files(report: StatsReport, out_dir: str | Path, top_k: int = 20) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    ranked = sorted(report.key_counts.items(), key=lambda kv: (-kv[1], kv[0]))

    tsv_path = out / "label_keys.tsv"
    tsv_path.write_text(
        "".join(f"{key}\t{count}\n" for key, count in ranked), encoding="utf-8"
    )
    written.append(tsv_path)

    top = ranked[:top_k]
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.3 * len(top) + 1)))
    if top:
        names = [k for k, _ in top][::-1]
        counts = [c for _, c in top][::-1]
        ax.barh(names, counts, color="#4878a8")
    ax.set_xlabel("occurrences")
    ax.set_title(f"label keys ({report.task}), top {len(top)} of {report.label_keys}")
    fig.tight_layout()
    keys_path = out / "label_keys.png"
    fig.savefig(keys_path, dpi=120)
    plt.close(fig)
    written.append(keys_path)

    fig, ax = plt.subplots(figsize=(6, 4))
    if report.lengths:
        upper = max(report.lengths)
        ax.hist(report.lengths, bins=range(1, upper + 2), color="#4878a8", edgecolor="white")
    ax.set_xlabel("example length (tokens)")
    ax.set_ylabel("examples")
    ax.set_title(f"length distribution ({report.examples} examples)")
    fig.tight_layout()
    lengths_path = out / "lengths.png"
    fig.savefig(lengths_path, dpi=120)
    plt.close(fig)
    written.append(lengths_path)

    return written

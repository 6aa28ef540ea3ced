"""Batch command-line interface.

Subcommands:

  augment   read a dataset, generate examples, write the result
  check     validate a dataset and report every violation
  stats     summarize a dataset (table or JSON, optional figures)

Every flag has a config-file counterpart (key=value lines, "#" comments,
keys named like the long flags with underscores); explicit flags override
file values. A run manifest (--manifest) records the resolved
configuration, tool version, and input digest, and --from-manifest replays
it byte-identically.

Exit codes: 0 success, 1 configuration error, 2 parse or validation error,
3 no augmentation possible.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .engine import AugmentConfig, augment
from .errors import (
    AugmentError,
    ConfigError,
    DataValidationError,
    FormatError,
    SubaugError,
)
from .formats import FORMATS, check_task_format, read_dataset, write_dataset
from .index import ConstraintSet
from .validate import stats as compute_stats
from .validate import validate_dataset

PROG = "subaug"
TASKS = ("pos", "dep", "const", "text")
CLI_METHODS = ("sub2", "rand", "randword", "balanced")
_METHOD_MAP = {"balanced": "balanced_sub2", "sub2": "sub2", "rand": "rand", "randword": "randword"}

_INT_KEYS = {"multiplier", "target_size", "replicate", "seed", "max_span_len",
             "max_resample_attempts", "top"}
_COMMON_KEYS = {"task", "format", "in", "tag_column"}
_AUGMENT_KEYS = _COMMON_KEYS | (_INT_KEYS - {"top"}) | {
    "method", "out", "constraints", "source_pool", "manifest",
}
_CHECK_KEYS = _COMMON_KEYS
_STATS_KEYS = _COMMON_KEYS | {"constraints", "max_span_len", "top", "json", "figures"}
_BOOL_KEYS = {"json"}


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors map to exit code 1."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog=PROG, description="Same-label substructure substitution and baselines.")
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--task", choices=TASKS)
        p.add_argument("--in", dest="in_", metavar="PATH", help="input dataset file")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--tag-column", choices=("upos", "xpos"),
                       help="CoNLL-U tag column for the pos task (default upos)")
        p.add_argument("--config", metavar="PATH", help="key=value config file")

    p_aug = sub.add_parser("augment", help="generate examples")
    common(p_aug)
    p_aug.add_argument("--method", choices=CLI_METHODS)
    p_aug.add_argument("--out", metavar="PATH", help="output dataset file")
    p_aug.add_argument("--multiplier", type=int, metavar="K",
                       help="generate K*|D| new examples (target size (K+1)*|D|)")
    p_aug.add_argument("--target-size", type=int, metavar="N",
                       help="generate until the dataset holds N examples")
    p_aug.add_argument("--replicate", type=int, metavar="R",
                       help="each original appears R times in the output "
                            "(default: the multiplier, or 1 with --target-size)")
    p_aug.add_argument("--constraints", metavar="FLAGS",
                       help="comma-separated text constraints from n,p,l,t,senti")
    p_aug.add_argument("--max-span-len", type=int, metavar="M")
    p_aug.add_argument("--seed", type=int, metavar="S")
    p_aug.add_argument("--source-pool", choices=("growing", "original"))
    p_aug.add_argument("--max-resample-attempts", type=int, metavar="A")
    p_aug.add_argument("--manifest", metavar="PATH", help="write a run manifest here")
    p_aug.add_argument("--from-manifest", metavar="PATH",
                       help="replay a recorded run (only --out may be overridden)")

    p_check = sub.add_parser("check", help="validate a dataset")
    common(p_check)

    p_stats = sub.add_parser("stats", help="summarize a dataset")
    common(p_stats)
    p_stats.add_argument("--constraints", metavar="FLAGS")
    p_stats.add_argument("--max-span-len", type=int, metavar="M")
    p_stats.add_argument("--top", type=int, metavar="K", help="top keys to list (default 20)")
    p_stats.add_argument("--json", action="store_const", const=True, default=None,
                         help="emit the report as JSON")
    p_stats.add_argument("--figures", metavar="DIR",
                         help="also render figures and a key histogram TSV into DIR")
    return parser


# ---------------------------------------------------------------------------
# config file and option merging


def read_config_file(path: str, allowed: set[str]) -> dict:
    """Parse key=value lines; keys use underscores (max_span_len=3)."""
    values: dict = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in allowed:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from None
        elif key in _BOOL_KEYS:
            if value.lower() not in ("true", "false"):
                raise ConfigError(f"{path}:{lineno}: {key} must be true or false")
            values[key] = value.lower() == "true"
        else:
            values[key] = value
    return values


def _merge(args: argparse.Namespace, keys: set[str]) -> dict:
    """Resolve options: explicit flags override config-file values."""
    opts: dict = {}
    if getattr(args, "config", None):
        opts.update(read_config_file(args.config, keys))
    for key in keys:
        attr = "in_" if key == "in" else key
        value = getattr(args, attr, None)
        if value is not None:
            opts[key] = value
    return opts


def _require(opts: dict, *keys: str) -> None:
    missing = [k for k in keys if opts.get(k) in (None, "")]
    if missing:
        raise ConfigError("missing required options: " + ", ".join(f"--{k}" for k in missing))


def _read_input(opts: dict, strict: bool = True):
    path = Path(opts["in"])
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read input {path}: {exc}") from None
    dataset = read_dataset(text, opts["task"], opts["format"],
                           tag_column=opts.get("tag_column", "upos"), strict=strict)
    for warning in dataset.warnings:
        print(f"{PROG}: warning: {path}: {warning}", file=sys.stderr)
    return dataset, text


# ---------------------------------------------------------------------------
# augment


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


_MANIFEST_KEYS = ("task", "method", "format", "in", "out", "tag_column", "constraints",
                  "multiplier", "target_size", "replicate", "seed", "max_span_len",
                  "source_pool", "max_resample_attempts")


def _load_manifest(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read manifest {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or data.get("tool") != PROG:
        raise ConfigError(f"manifest {path} was not written by {PROG}")
    return data


def cmd_augment(args: argparse.Namespace) -> int:
    replay_digest = None
    if args.from_manifest:
        manifest = _load_manifest(args.from_manifest)
        opts = {k: manifest[k] for k in _MANIFEST_KEYS if manifest.get(k) is not None}
        replay_digest = manifest.get("input_sha256")
        if args.out:
            opts["out"] = args.out
    else:
        opts = _merge(args, _AUGMENT_KEYS)

    _require(opts, "task", "method", "in", "out", "format")
    check_task_format(opts["task"], opts["format"])
    if opts["method"] not in CLI_METHODS:
        raise ConfigError(f"unknown method {opts['method']!r}")

    if opts.get("multiplier") is None and opts.get("target_size") is None:
        opts["multiplier"] = 20
    if opts.get("replicate") is None:
        opts["replicate"] = opts["multiplier"] if opts.get("multiplier") is not None else 1
    opts.setdefault("seed", 0)
    opts.setdefault("source_pool", "growing")
    opts.setdefault("max_resample_attempts", 100)
    opts.setdefault("tag_column", "upos")

    if opts.get("max_span_len") is not None and opts["task"] not in ("pos", "text"):
        raise ConfigError("max_span_len applies to the pos and text tasks")

    constraints = None
    use_aux = False
    raw_constraints = opts.get("constraints")
    if raw_constraints:
        if opts["task"] == "text":
            constraints = ConstraintSet.parse(raw_constraints, opts.get("max_span_len"))
        elif opts["task"] == "const":
            flags = {p.strip().lower() for p in raw_constraints.split(",") if p.strip()}
            if flags == {"senti"}:
                use_aux = True
            else:
                raise ConfigError(
                    "for the const task only the senti constraint (aux keying) applies"
                )
        else:
            raise ConfigError("constraints apply to the text task")
    elif opts["task"] == "text" and opts.get("max_span_len") is not None:
        constraints = ConstraintSet(frozenset(), max_span_len=opts["max_span_len"])

    config = AugmentConfig(
        task=opts["task"],
        method=_METHOD_MAP[opts["method"]],
        constraints=constraints,
        target_size=opts.get("target_size"),
        multiplier=opts.get("multiplier"),
        replicate=opts["replicate"],
        seed=opts["seed"],
        max_resample_attempts=opts["max_resample_attempts"],
        max_span_len=opts.get("max_span_len") if opts["task"] == "pos" else None,
        use_aux=use_aux,
        source_pool=opts["source_pool"],
    )
    config.validate()

    dataset, input_text = _read_input(opts)
    if replay_digest is not None and _sha256(input_text) != replay_digest:
        raise ConfigError(
            f"input {opts['in']} does not match the manifest digest; "
            "the recorded run cannot be reproduced from it"
        )

    result = augment(dataset, config, progress=True)
    output_text = write_dataset(result, opts["format"], tag_column=opts["tag_column"])
    Path(opts["out"]).write_bytes(output_text.encode("utf-8"))
    print(f"wrote {len(result.examples)} examples to {opts['out']}", file=sys.stderr)

    manifest_path = args.manifest or opts.get("manifest")
    if manifest_path:
        manifest = {"tool": PROG, "version": __version__, "command": "augment",
                    "input_sha256": _sha256(input_text)}
        for key in _MANIFEST_KEYS:
            manifest[key] = opts.get(key)
        Path(manifest_path).write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return 0


# ---------------------------------------------------------------------------
# check and stats


def cmd_check(args: argparse.Namespace) -> int:
    opts = _merge(args, _CHECK_KEYS)
    _require(opts, "task", "in", "format")
    dataset, _ = _read_input(opts, strict=False)
    violations = validate_dataset(dataset)
    for v in violations:
        print(f"example {v.example_index}: {v.rule}: {v.message}")
    print(f"{len(violations)} violations")
    return 2 if violations else 0


def cmd_stats(args: argparse.Namespace) -> int:
    opts = _merge(args, _STATS_KEYS)
    _require(opts, "task", "in", "format")
    dataset, _ = _read_input(opts)

    constraints = None
    max_span_len = None
    use_aux = False
    if opts.get("constraints"):
        if opts["task"] == "text":
            constraints = ConstraintSet.parse(opts["constraints"], opts.get("max_span_len"))
        elif opts["task"] == "const" and opts["constraints"].strip().lower() == "senti":
            use_aux = True
        else:
            raise ConfigError("constraints apply to the text task")
    if opts["task"] == "pos":
        max_span_len = opts.get("max_span_len")
    elif opts["task"] == "text":
        if constraints is None and opts.get("max_span_len") is not None:
            constraints = ConstraintSet(frozenset(), max_span_len=opts["max_span_len"])
    elif opts.get("max_span_len") is not None:
        raise ConfigError("max_span_len applies to the pos and text tasks")

    report = compute_stats(dataset, constraints=constraints, max_span_len=max_span_len,
                           use_aux=use_aux, top_k=opts.get("top", 20))
    if opts.get("json"):
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.table())
    if opts.get("figures"):
        from .report import render_report_files  # matplotlib loads only when needed

        for path in render_report_files(report, opts["figures"], top_k=opts.get("top", 20)):
            print(f"wrote {path}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "augment":
            return cmd_augment(args)
        if args.command == "check":
            return cmd_check(args)
        return cmd_stats(args)
    except ConfigError as exc:
        print(f"{PROG}: config error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, DataValidationError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except AugmentError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 3
    except SubaugError as exc:  # safety net for any new subtype
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

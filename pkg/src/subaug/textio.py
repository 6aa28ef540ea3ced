"""Labeled-text formats: TSV and JSONL.

TSV rows are "label<TAB>space-separated tokens"; the format carries no
parses and no provenance. JSONL rows are objects with "label" and "tokens",
plus an optional "parse" (a bracketed tree whose yield must equal the
tokens) and an optional "provenance" object; both optional fields survive a
round trip.
"""

from __future__ import annotations

import json
from typing import TextIO

from .brackets import format_tree, parse_tree
from .data import Dataset, Provenance, TextExample, make_tokens, tree_yield
from .errors import ConfigError, DataValidationError, FormatError
from .validate import check_example

TEXT_FORMATS = ("tsv", "jsonl")


def _as_text(source: str | TextIO) -> str:
    return source.read() if hasattr(source, "read") else source


def _site_to_json(site):
    return list(site) if isinstance(site, tuple) else site


def _site_from_json(site):
    return tuple(site) if isinstance(site, list) else site


def _provenance_to_json(rec: Provenance) -> dict:
    out: dict = {"kind": rec.kind}
    if rec.source is not None:
        out["source"] = rec.source
    if rec.donor is not None:
        out["donor"] = rec.donor
    if rec.source_site is not None:
        out["source_site"] = _site_to_json(rec.source_site)
    if rec.donor_site is not None:
        out["donor_site"] = _site_to_json(rec.donor_site)
    return out


def _provenance_from_json(obj, lineno: int) -> Provenance:
    if not isinstance(obj, dict) or obj.get("kind") not in ("original", "generated", "replicated"):
        raise FormatError("malformed provenance object", line=lineno)
    return Provenance(
        kind=obj["kind"],
        source=obj.get("source"),
        donor=obj.get("donor"),
        source_site=_site_from_json(obj.get("source_site")),
        donor_site=_site_from_json(obj.get("donor_site")),
    )


def read_text(source: str | TextIO, fmt: str = "tsv", strict: bool = True) -> Dataset:
    if fmt not in TEXT_FORMATS:
        raise ConfigError(f"unknown text format {fmt!r}")
    examples: list[TextExample] = []
    provenance: list[Provenance | None] = []
    for lineno, line in enumerate(_as_text(source).splitlines(), start=1):
        if not line.strip():
            continue
        if fmt == "tsv":
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError(
                    f"expected label<TAB>text, got {len(parts)} fields", line=lineno
                )
            label, text = parts
            example = TextExample(label, make_tokens(text.split()))
            provenance.append(None)
        else:
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"bad JSON: {exc.msg}", line=lineno) from None
            if not isinstance(obj, dict) or "label" not in obj or "tokens" not in obj:
                raise FormatError('row must carry "label" and "tokens"', line=lineno)
            label = obj["label"]
            if isinstance(label, (int, float)):
                label = str(label)
            tokens = obj["tokens"]
            if not isinstance(label, str) or not isinstance(tokens, list) \
                    or not all(isinstance(t, str) for t in tokens):
                raise FormatError("label must be a string and tokens a list of strings",
                                  line=lineno)
            parse = None
            if obj.get("parse") is not None:
                parse = parse_tree(obj["parse"], lineno)
            example = TextExample(label, make_tokens(tokens), parse)
            if strict and parse is not None and tree_yield(parse) != example.forms:
                raise DataValidationError(
                    f"line {lineno}: parse yield does not match the token sequence"
                )
            provenance.append(
                _provenance_from_json(obj["provenance"], lineno) if "provenance" in obj else None
            )
        if strict:
            problems = check_example("text", example)
            if problems:
                rule, message = problems[0]
                raise DataValidationError(f"line {lineno}: {rule}: {message}")
        examples.append(example)

    labels = frozenset(ex.label for ex in examples) or None
    records = None
    if any(provenance):
        records = [rec if rec is not None else Provenance("original") for rec in provenance]
    return Dataset("text", examples, provenance=records, labels=labels)


def write_text(dataset: Dataset, fmt: str = "tsv") -> str:
    if dataset.task != "text":
        raise ConfigError(f"text formats carry text data, not {dataset.task!r}")
    if fmt not in TEXT_FORMATS:
        raise ConfigError(f"unknown text format {fmt!r}")
    lines = []
    for i, example in enumerate(dataset.examples):
        if fmt == "tsv":
            if "\t" in example.label or "\n" in example.label:
                raise DataValidationError(f"example {i}: label contains a tab or newline")
            lines.append(f"{example.label}\t{' '.join(example.forms)}")
        else:
            obj: dict = {"label": example.label, "tokens": list(example.forms)}
            if example.parse is not None:
                obj["parse"] = format_tree(example.parse)
            record = dataset.provenance[i] if dataset.provenance else None
            if record is not None and record.kind != "original":
                obj["provenance"] = _provenance_to_json(record)
            lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")

"""Task/format dispatch for reading and writing datasets."""

from __future__ import annotations

from .brackets import read_brackets, write_brackets
from .conllu import read_conllu, write_conllu
from .data import Dataset
from .errors import ConfigError
from .textio import read_text, write_text

FORMATS = ("conllu", "brackets", "tsv", "jsonl")
FORMATS_BY_TASK = {
    "pos": ("conllu",),
    "dep": ("conllu",),
    "const": ("brackets",),
    "text": ("tsv", "jsonl"),
}


def check_task_format(task: str, fmt: str) -> None:
    allowed = FORMATS_BY_TASK.get(task)
    if allowed is None:
        raise ConfigError(f"unknown task {task!r}")
    if fmt not in allowed:
        raise ConfigError(
            f"format {fmt!r} does not carry {task} data (expected {' or '.join(allowed)})"
        )


def read_dataset(text: str, task: str, fmt: str, tag_column: str = "upos",
                 strict: bool = True) -> Dataset:
    check_task_format(task, fmt)
    if fmt == "conllu":
        return read_conllu(text, task=task, tag_column=tag_column, strict=strict)
    if fmt == "brackets":
        return read_brackets(text, strict=strict)
    return read_text(text, fmt=fmt, strict=strict)


def write_dataset(dataset: Dataset, fmt: str, tag_column: str = "upos") -> str:
    check_task_format(dataset.task, fmt)
    if fmt == "conllu":
        return write_conllu(dataset, tag_column=tag_column)
    if fmt == "brackets":
        return write_brackets(dataset)
    return write_text(dataset, fmt=fmt)

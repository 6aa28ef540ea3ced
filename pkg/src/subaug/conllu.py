"""CoNLL-U reading and writing.

The reader consumes the standard 10-column tab-separated layout with
blank-line sentence separators: ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL
DEPS MISC. Comment lines ("# ...") are kept with the sentence that follows
them. Sentences containing multiword-token ranges ("1-2") or empty-node ids
("5.1") are skipped with one recorded warning per sentence. Columns the
carrier types do not model are written back as "_".

Generated examples are written with a provenance comment of the form
"# sub2 = source:<i> donor:<j>" (donor omitted for donor-free methods);
replicated examples carry "# sub2 = replicated:<i>".
"""

from __future__ import annotations

import re
from typing import TextIO

from .data import Dataset, DepSentence, Provenance, TaggedSentence, make_tokens
from .errors import ConfigError, DataValidationError, FormatError
from .validate import check_example

COLUMNS = 10
_ID, _FORM, _UPOS, _XPOS, _HEAD, _DEPREL = 0, 1, 3, 4, 6, 7
_TAG_COLUMN = {"upos": _UPOS, "xpos": _XPOS}
_SENT_ID = re.compile(r"#\s*sent_id\s*=\s*(\S+)")


def _as_text(source: str | TextIO) -> str:
    return source.read() if hasattr(source, "read") else source


def _split_blocks(text: str):
    """Group lines into (comments, [(lineno, fields), ...]) sentence blocks."""
    blocks = []
    comments: list[str] = []
    rows: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if comments or rows:
                blocks.append((comments, rows))
                comments, rows = [], []
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        fields = line.split("\t")
        if len(fields) != COLUMNS:
            raise FormatError(
                f"expected {COLUMNS} tab-separated columns, got {len(fields)}", line=lineno
            )
        rows.append((lineno, fields))
    if comments or rows:
        blocks.append((comments, rows))
    return blocks


def _skip_reason(rows) -> str | None:
    for lineno, fields in rows:
        tok_id = fields[_ID]
        if "-" in tok_id:
            return f"multiword token id {tok_id!r} (line {lineno})"
        if "." in tok_id:
            return f"empty node id {tok_id!r} (line {lineno})"
    return None


def _sentence_name(ordinal: int, comments) -> str:
    for c in comments:
        m = _SENT_ID.match(c)
        if m:
            return f"sentence {ordinal} (sent_id {m.group(1)})"
    return f"sentence {ordinal}"


def read_conllu(source: str | TextIO, task: str = "dep", tag_column: str = "upos",
                strict: bool = True) -> Dataset:
    """Parse CoNLL-U text into a pos or dep dataset.

    strict=True raises DataValidationError on the first structural
    violation, naming the sentence; strict=False builds the carriers as-is
    so that validate_dataset can report everything.
    """
    if task not in ("pos", "dep"):
        raise ConfigError(f"CoNLL-U carries pos or dep data, not {task!r}")
    if tag_column not in _TAG_COLUMN:
        raise ConfigError(f"tag column must be upos or xpos, not {tag_column!r}")
    tag_col = _TAG_COLUMN[tag_column]

    examples = []
    warnings: list[str] = []
    for ordinal, (comments, rows) in enumerate(_split_blocks(_as_text(source)), start=1):
        if not rows:
            warnings.append(f"sentence {ordinal} skipped: no token lines")
            continue
        reason = _skip_reason(rows)
        if reason:
            warnings.append(f"sentence {ordinal} skipped: {reason}")
            continue

        forms: list[str] = []
        tags: list[str] = []
        heads: list[int] = []
        deprels: list[str] = []
        for expected, (lineno, fields) in enumerate(rows, start=1):
            try:
                tok_id = int(fields[_ID])
            except ValueError:
                raise FormatError(f"non-integer token id {fields[_ID]!r}", line=lineno) from None
            if tok_id != expected:
                raise FormatError(
                    f"token id {tok_id} out of sequence (expected {expected})", line=lineno
                )
            forms.append(fields[_FORM])
            if task == "pos":
                tags.append(fields[tag_col])
            else:
                try:
                    heads.append(int(fields[_HEAD]))
                except ValueError:
                    raise FormatError(f"non-integer head {fields[_HEAD]!r}", line=lineno) from None
                deprels.append(fields[_DEPREL])

        tokens = make_tokens(forms)
        if task == "pos":
            example = TaggedSentence(tokens, tuple(tags), tuple(comments))
        else:
            example = DepSentence(tokens, tuple(heads), tuple(deprels), tuple(comments))
        if strict:
            problems = check_example(task, example)
            if problems:
                rule, message = problems[0]
                raise DataValidationError(
                    f"{_sentence_name(ordinal, comments)} (line {rows[0][0]}): {rule}: {message}"
                )
        examples.append(example)
    return Dataset(task, examples, warnings=warnings)


def provenance_comment(record: Provenance | None) -> str | None:
    if record is None or record.kind == "original":
        return None
    if record.kind == "replicated":
        return f"# sub2 = replicated:{record.source}"
    if record.donor is not None:
        return f"# sub2 = source:{record.source} donor:{record.donor}"
    return f"# sub2 = source:{record.source}"


def write_conllu(dataset: Dataset, tag_column: str = "upos") -> str:
    """Serialize a pos or dep dataset; one blank line closes each sentence."""
    if dataset.task not in ("pos", "dep"):
        raise ConfigError(f"CoNLL-U carries pos or dep data, not {dataset.task!r}")
    tag_col = _TAG_COLUMN[tag_column]

    chunks: list[str] = []
    for i, example in enumerate(dataset.examples):
        lines: list[str] = list(example.comments)
        record = dataset.provenance[i] if dataset.provenance else None
        extra = provenance_comment(record)
        if extra:
            lines.append(extra)
        for pos, token in enumerate(example.tokens):
            fields = ["_"] * COLUMNS
            fields[_ID] = str(token.index)
            fields[_FORM] = token.form
            if dataset.task == "pos":
                fields[tag_col] = example.tags[pos]
            else:
                fields[_HEAD] = str(example.heads[pos])
                fields[_DEPREL] = example.deprels[pos]
            lines.append("\t".join(fields))
        chunks.append("\n".join(lines) + "\n")
    # every sentence is closed by a blank line, the last one included
    return "\n".join(chunks) + ("\n" if chunks else "")

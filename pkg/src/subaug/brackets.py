"""Bracketed constituency trees, one tree per line.

Grammar: "(LABEL child ...)" where each child is either another bracketed
node or a bare word (a leaf). "(POS word)" therefore parses as an internal
node with a single leaf child. A node label may carry an auxiliary label
after a vertical bar, as in "(NP|4 ...)" or "(4|POS ...)": the text before
the first bar is the label, the text after it the aux. Serialization is
canonical: single spaces, no padding.
"""

from __future__ import annotations

from typing import TextIO

from .data import Dataset, Internal, Leaf, TreeNode
from .errors import DataValidationError, FormatError
from .validate import check_example

_OPEN, _CLOSE, _ATOM = "(", ")", "atom"


def _lex(line: str):
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append((ch, ch, i + 1))
            i += 1
        else:
            start = i
            while i < n and not line[i].isspace() and line[i] not in "()":
                i += 1
            tokens.append((_ATOM, line[start:i], start + 1))
    return tokens


def parse_tree(line: str, lineno: int | None = None) -> TreeNode:
    """Parse one bracketed tree; raises FormatError / DataValidationError."""
    tokens = _lex(line)
    if not tokens:
        raise FormatError("empty tree line", line=lineno)
    if tokens[0][0] != _OPEN:
        raise FormatError(
            "expected a bracketed tree", line=lineno, column=tokens[0][2]
        )
    node, rest = _parse_node(tokens, 0, lineno)
    if rest != len(tokens):
        raise FormatError(
            "trailing content after tree", line=lineno, column=tokens[rest][2]
        )
    return node


def _parse_node(tokens, at: int, lineno) -> tuple[TreeNode, int]:
    kind, value, col = tokens[at]
    if kind == _ATOM:
        return Leaf(value), at + 1
    if kind == _CLOSE:
        raise FormatError("unexpected ')'", line=lineno, column=col)
    # kind == _OPEN
    at += 1
    if at >= len(tokens) or tokens[at][0] != _ATOM:
        raise FormatError("missing node label after '('", line=lineno, column=col)
    label_text = tokens[at][1]
    label, _, aux = label_text.partition("|")
    at += 1
    children: list[TreeNode] = []
    while at < len(tokens) and tokens[at][0] != _CLOSE:
        child, at = _parse_node(tokens, at, lineno)
        children.append(child)
    if at >= len(tokens):
        raise FormatError("unbalanced parentheses", line=lineno, column=col)
    if not children:
        raise DataValidationError(
            f"empty internal node {label_text!r}"
            + (f" (line {lineno}, column {col})" if lineno is not None else f" (column {col})")
        )
    return Internal(label, tuple(children), aux or None), at + 1


def _check_atom(text: str, what: str) -> None:
    if not text or any(ch.isspace() for ch in text) or "(" in text or ")" in text:
        raise DataValidationError(f"{what} {text!r} is not representable in bracket format")


def format_tree(node: TreeNode) -> str:
    """Canonical one-line serialization of a tree."""
    if isinstance(node, Leaf):
        _check_atom(node.form, "leaf form")
        return node.form
    label = node.label if node.aux is None else f"{node.label}|{node.aux}"
    _check_atom(label, "node label")
    inner = " ".join(format_tree(child) for child in node.children)
    return f"({label} {inner})"


def read_brackets(source: str | TextIO, strict: bool = True) -> Dataset:
    text = source.read() if hasattr(source, "read") else source
    examples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        tree = parse_tree(line, lineno)
        if strict:
            problems = check_example("const", tree)
            if problems:
                rule, message = problems[0]
                raise DataValidationError(f"tree at line {lineno}: {rule}: {message}")
        examples.append(tree)
    return Dataset("const", examples)


def write_brackets(dataset: Dataset) -> str:
    if dataset.task != "const":
        raise DataValidationError(f"bracket format carries const data, not {dataset.task!r}")
    lines = []
    for i, tree in enumerate(dataset.examples):
        if isinstance(tree, Leaf):
            raise DataValidationError(
                f"example {i}: a single bare leaf has no bracketed representation"
            )
        lines.append(format_tree(tree))
    return "\n".join(lines) + ("\n" if lines else "")

"""Carrier types for the four supported tasks, plus small structural helpers.

Tasks are named by short strings throughout: "pos" (tagged sentences), "dep"
(dependency trees), "const" (constituency trees), "text" (labeled token
sequences with an optional parse).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

TASKS = ("pos", "dep", "const", "text")

# A substitution site. Token spans (i, j) are 0-based and half-open; a
# dependency site is the 1-based index of the subtree's root token; a
# constituency site is the tuple of child indices leading from the root to
# the node (the root itself is the empty tuple).
Site = Union[tuple, int]


@dataclass(frozen=True)
class Token:
    form: str
    index: int  # 1-based position within the sentence


def make_tokens(forms: Iterable[str]) -> tuple[Token, ...]:
    """Build a token tuple from plain forms, assigning 1-based indices."""
    return tuple(Token(form, i) for i, form in enumerate(forms, start=1))


@dataclass(frozen=True)
class TaggedSentence:
    tokens: tuple[Token, ...]
    tags: tuple[str, ...]
    comments: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


@dataclass(frozen=True)
class DepSentence:
    """A dependency tree: heads are 1-based token indices, 0 marks the root."""

    tokens: tuple[Token, ...]
    heads: tuple[int, ...]
    deprels: tuple[str, ...]
    comments: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


@dataclass(frozen=True)
class Leaf:
    form: str


@dataclass(frozen=True)
class Internal:
    label: str
    children: tuple["TreeNode", ...]
    aux: str | None = None


TreeNode = Union[Leaf, Internal]


@dataclass(frozen=True)
class TextExample:
    label: str
    tokens: tuple[Token, ...]
    parse: TreeNode | None = None

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


@dataclass(frozen=True)
class Provenance:
    """How an example entered a dataset.

    kind is one of "original", "generated", "replicated". For generated
    examples, source/donor are example indices (source in the output
    dataset's numbering, donor always in the input dataset's) and the site
    fields record the replaced and donated substructure sites. Replicated
    examples record the original they copy in source.
    """

    kind: str
    source: int | None = None
    donor: int | None = None
    source_site: Site | None = None
    donor_site: Site | None = None


ORIGINAL = Provenance("original")


@dataclass
class Dataset:
    task: str
    examples: list
    provenance: list[Provenance] | None = None
    warnings: list[str] = field(default_factory=list)
    labels: frozenset[str] | None = None  # text-task label inventory

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.provenance is not None and len(self.provenance) != len(self.examples):
            raise ValueError("provenance must have one record per example")

    def __len__(self) -> int:
        return len(self.examples)


# ---------------------------------------------------------------------------
# tree helpers


def tree_yield(node: TreeNode) -> tuple[str, ...]:
    """Left-to-right sequence of leaf forms under ``node``."""
    if isinstance(node, Leaf):
        return (node.form,)
    parts: list[str] = []
    for child in node.children:
        parts.extend(tree_yield(child))
    return tuple(parts)


def iter_internal(node: TreeNode, _path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Internal]]:
    """Yield (path, node) for every internal node, root first, in pre-order."""
    if isinstance(node, Internal):
        yield _path, node
        for i, child in enumerate(node.children):
            yield from iter_internal(child, _path + (i,))


def iter_leaves(node: TreeNode, _path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Leaf]]:
    """Yield (path, leaf) for every leaf, left to right."""
    if isinstance(node, Leaf):
        yield _path, node
    else:
        for i, child in enumerate(node.children):
            yield from iter_leaves(child, _path + (i,))


def node_at(tree: TreeNode, path: tuple[int, ...]) -> TreeNode:
    node = tree
    for step in path:
        if isinstance(node, Leaf):
            raise IndexError(f"path {path!r} descends through a leaf")
        node = node.children[step]
    return node


def replace_at(tree: TreeNode, path: tuple[int, ...], new: TreeNode) -> TreeNode:
    """Return a copy of ``tree`` with the node at ``path`` replaced by ``new``."""
    if not path:
        return new
    if isinstance(tree, Leaf):
        raise IndexError(f"path {path!r} descends through a leaf")
    step, rest = path[0], path[1:]
    children = list(tree.children)
    children[step] = replace_at(children[step], rest, new)
    return Internal(tree.label, tuple(children), tree.aux)


def is_preterminal(node: TreeNode) -> bool:
    return (
        isinstance(node, Internal)
        and len(node.children) == 1
        and isinstance(node.children[0], Leaf)
    )


def rebuild_leaves(node: TreeNode, forms: Iterator[str]) -> TreeNode:
    """Copy a tree, replacing leaf forms left-to-right from ``forms``."""
    if isinstance(node, Leaf):
        return Leaf(next(forms))
    return Internal(node.label, tuple(rebuild_leaves(c, forms) for c in node.children), node.aux)


# ---------------------------------------------------------------------------
# dependency helpers


def dep_children(heads: tuple[int, ...]) -> list[list[int]]:
    """children[h] lists the dependents of 1-based token h; children[0] the roots."""
    out: list[list[int]] = [[] for _ in range(len(heads) + 1)]
    for i, h in enumerate(heads, start=1):
        out[h].append(i)
    return out

def dep_subtree(heads: tuple[int, ...], root: int, children: list[list[int]] | None = None) -> list[int]:
    """Sorted 1-based indices of ``root`` and all its transitive dependents.

    Assumes a validated (acyclic) head sequence. ``children`` may be passed
    to reuse a precomputed adjacency list.
    """
    kids = children if children is not None else dep_children(heads)
    seen: list[int] = []
    stack = [root]
    while stack:
        n = stack.pop()
        seen.append(n)
        stack.extend(kids[n])
    seen.sort()
    return seen

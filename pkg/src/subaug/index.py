"""Substructure enumeration and the label-key index.

An occurrence is a Locus: the index of its example plus a task-specific
site (token span, subtree-root token index, or tree path). Occurrences are
interchangeable when they share a label key:

  pos    every token span, keyed by its tag sequence
  dep    every non-root token whose subtree covers a contiguous token
         interval, keyed by the relation on its incoming arc
  const  every internal node (the root included), keyed by its label, or
         by (label, aux) when aux keying is on
  text   every token span, or only phrase spans (exact yields of parse
         nodes) under the p constraint; the key is the tuple of enabled
         constraint components in the fixed order n, l, senti, t, or the
         singleton ("*",) when no component is enabled

Entry lists are ordered by (example index, site).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .data import (
    Dataset,
    DepSentence,
    Internal,
    Leaf,
    TaggedSentence,
    TextExample,
    TreeNode,
    dep_children,
    dep_subtree,
    iter_internal,
)
from .errors import ConfigError

LabelKey = tuple
ANY_KEY: LabelKey = ("*",)
BALANCED_LABEL = "BAL"
FLAGS = ("n", "p", "l", "t", "senti")


@dataclass(frozen=True)
class Locus:
    example: int
    site: object  # span tuple, token index, or tree path


@dataclass(frozen=True)
class ConstraintSet:
    """Which text-task constraints are active, plus an optional span cap.

    l and senti both require p; senti additionally requires aux labels on
    the parses it touches.
    """

    flags: frozenset = frozenset()
    max_span_len: int | None = None

    @classmethod
    def parse(cls, text: str | None, max_span_len: int | None = None) -> "ConstraintSet":
        if not text:
            return cls(frozenset(), max_span_len)
        flags = frozenset(part.strip().lower() for part in text.split(",") if part.strip())
        return cls(flags, max_span_len)

    def validate(self) -> None:
        unknown = self.flags - set(FLAGS)
        if unknown:
            raise ConfigError(f"unknown constraint flags: {', '.join(sorted(unknown))}")
        if "l" in self.flags and "p" not in self.flags:
            raise ConfigError("constraint l requires p")
        if "senti" in self.flags and "p" not in self.flags:
            raise ConfigError("constraint senti requires p")
        if self.max_span_len is not None and self.max_span_len < 1:
            raise ConfigError("max_span_len must be at least 1")


@dataclass
class SubstructureIndex:
    entries: dict[LabelKey, list[Locus]]
    total: int
    # locus -> (key, position within its entry list); used for O(1)
    # self-exclusion when an occurrence draws a donor from its own key
    positions: dict[Locus, tuple[LabelKey, int]] = field(repr=False, default_factory=dict)

    def keys_by_size(self) -> list[tuple[int, LabelKey]]:
        return sorted(((len(v), k) for k, v in self.entries.items()),
                      key=lambda kv: (-kv[0], repr(kv[1])))


def build_index(per_example_loci) -> SubstructureIndex:
    entries: dict[LabelKey, list[Locus]] = {}
    positions: dict[Locus, tuple[LabelKey, int]] = {}
    total = 0
    for example_index, loci in enumerate(per_example_loci):
        for site, key in loci:
            locus = Locus(example_index, site)
            bucket = entries.setdefault(key, [])
            positions[locus] = (key, len(bucket))
            bucket.append(locus)
            total += 1
    return SubstructureIndex(entries, total, positions)


# ---------------------------------------------------------------------------
# per-example enumeration


def pos_spans(sentence: TaggedSentence, max_span_len: int | None = None):
    """All (span, tag-sequence key) pairs, spans capped at max_span_len."""
    n = len(sentence)
    cap = n if max_span_len is None else min(n, max_span_len)
    out = []
    for i in range(n):
        for j in range(i + 1, min(i + cap, n) + 1):
            out.append(((i, j), tuple(sentence.tags[i:j])))
    return out


def dep_subtree_sites(sentence: DepSentence):
    """(root token, relation key) for each contiguous-yield non-root subtree."""
    kids = dep_children(sentence.heads)
    out = []
    for t in range(1, len(sentence) + 1):
        if sentence.heads[t - 1] == 0:
            continue
        members = dep_subtree(sentence.heads, t, kids)
        if members[-1] - members[0] + 1 == len(members):
            out.append((t, (sentence.deprels[t - 1],)))
    return out


def const_nodes(tree: TreeNode, use_aux: bool = False):
    """(path, key) for every internal node; keys carry aux when requested."""
    out = []
    for path, node in iter_internal(tree):
        if use_aux:
            if node.aux is None:
                raise ConfigError("aux keying requires an aux label on every node")
            out.append((path, (node.label, node.aux)))
        else:
            out.append((path, (node.label,)))
    return out


def phrase_spans(tree: TreeNode) -> dict[tuple[int, int], Internal]:
    """Map each span that is the exact yield of some node to the outermost
    such node (two nodes share a span only along a unary chain, and the
    ancestor is visited last here, overwriting the descendant)."""
    found: dict[tuple[int, int], Internal] = {}

    def walk(node: TreeNode, offset: int) -> int:
        if isinstance(node, Leaf):
            return 1
        width = 0
        for child in node.children:
            width += walk(child, offset + width)
        found[(offset, offset + width)] = node
        return width

    walk(tree, 0)
    return found


def text_spans(example: TextExample, constraints: ConstraintSet | None = None,
               missing_parse_ok: bool = False):
    """(span, key) pairs for a text example under the given constraints.

    With p enabled an example without a parse is an error, unless
    missing_parse_ok is set, in which case it simply contributes no spans
    (used for generated examples, which never carry a parse).
    """
    c = constraints or ConstraintSet()
    flags = c.flags
    n = len(example)
    nodes: dict[tuple[int, int], Internal] = {}
    if "p" in flags:
        if example.parse is None:
            if missing_parse_ok:
                return []
            raise ConfigError("constraint p requires parsed examples")
        nodes = phrase_spans(example.parse)
        spans = sorted(nodes)
    else:
        spans = [(i, j) for i in range(n) for j in range(i + 1, n + 1)]

    cap = c.max_span_len
    out = []
    for i, j in spans:
        if cap is not None and j - i > cap:
            continue
        key: list = []
        if "n" in flags:
            key.append(j - i)
        if "l" in flags:
            key.append(nodes[(i, j)].label)
        if "senti" in flags:
            aux = nodes[(i, j)].aux
            if aux is None:
                raise ConfigError("constraint senti requires aux labels on the parse")
            key.append(aux)
        if "t" in flags:
            key.append(example.label)
        out.append(((i, j), tuple(key) if key else ANY_KEY))
    return out


# ---------------------------------------------------------------------------
# dataset-level builders


def index_pos(dataset: Dataset, max_span_len: int | None = None) -> SubstructureIndex:
    return build_index(pos_spans(ex, max_span_len) for ex in dataset.examples)


def index_dep(dataset: Dataset) -> SubstructureIndex:
    return build_index(dep_subtree_sites(ex) for ex in dataset.examples)


def index_const(dataset: Dataset, use_aux: bool = False) -> SubstructureIndex:
    per = []
    for i, tree in enumerate(dataset.examples):
        try:
            per.append(const_nodes(tree, use_aux))
        except ConfigError as exc:
            raise ConfigError(f"example {i}: {exc}") from None
    return build_index(per)


def index_text(dataset: Dataset, constraints: ConstraintSet | None = None) -> SubstructureIndex:
    c = constraints or ConstraintSet()
    c.validate()
    per = []
    for i, example in enumerate(dataset.examples):
        try:
            per.append(text_spans(example, c))
        except ConfigError as exc:
            raise ConfigError(f"example {i}: {exc}") from None
    return build_index(per)


def index_for(dataset: Dataset, constraints: ConstraintSet | None = None,
              max_span_len: int | None = None, use_aux: bool = False) -> SubstructureIndex:
    if dataset.task == "pos":
        return index_pos(dataset, max_span_len)
    if dataset.task == "dep":
        return index_dep(dataset)
    if dataset.task == "const":
        return index_const(dataset, use_aux)
    return index_text(dataset, constraints)


# ---------------------------------------------------------------------------
# balanced skeletons


def balanced_tree(forms) -> Internal:
    """Balanced skeleton over the given forms, every node labeled BAL.

    Spans of three or more tokens split into floor/ceil halves; one- and
    two-token spans attach their leaves directly.
    """
    forms = tuple(forms)
    if not forms:
        raise ConfigError("cannot build a balanced tree over zero tokens")

    def build(lo: int, hi: int) -> Internal:
        if hi - lo <= 2:
            return Internal(BALANCED_LABEL, tuple(Leaf(f) for f in forms[lo:hi]))
        mid = lo + (hi - lo) // 2
        return Internal(BALANCED_LABEL, (build(lo, mid), build(mid, hi)))

    return build(0, len(forms))


def balanced_parse(n: int) -> Internal:
    """Balanced skeleton over n placeholder tokens w1..wn."""
    if n < 1:
        raise ConfigError("token count must be at least 1")
    return balanced_tree(f"w{i}" for i in range(1, n + 1))

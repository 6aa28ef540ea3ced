"""Structural validation and dataset statistics.

Rule catalog (rule ids reported in violations):

  nonempty            example has at least one token
  token-form          token forms are non-empty and contain no whitespace
  token-index         token indices run 1..n in order
  label-form          tags, relations, and node labels are non-empty strings
  length-alignment    token-aligned fields have matching lengths
  head-range          dependency heads lie in 0..n
  single-root         exactly one token has head 0
  acyclic             dependency heads contain no cycle
  nonempty-children   internal tree nodes have at least one child
  yield-match         tree yield is a non-empty sequence of valid forms
  parse-yield-match   attached parse yields exactly the example's tokens
  known-label         class label belongs to the dataset's label inventory
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
    iter_internal,
    tree_yield,
)
from .errors import DataValidationError

RULES = (
    "nonempty",
    "token-form",
    "token-index",
    "label-form",
    "length-alignment",
    "head-range",
    "single-root",
    "acyclic",
    "nonempty-children",
    "yield-match",
    "parse-yield-match",
    "known-label",
)


@dataclass(frozen=True)
class Violation:
    example_index: int
    rule: str
    message: str


def _bad_form(form: str) -> bool:
    return not form or any(ch.isspace() for ch in form)


def _check_tokens(tokens) -> list[tuple[str, str]]:
    problems = []
    if not tokens:
        problems.append(("nonempty", "example has no tokens"))
        return problems
    for pos, tok in enumerate(tokens, start=1):
        if _bad_form(tok.form):
            problems.append(("token-form", f"token {pos} has form {tok.form!r}"))
        if tok.index != pos:
            problems.append(("token-index", f"token at position {pos} carries index {tok.index}"))
    return problems


def _check_labels(labels, what: str) -> list[tuple[str, str]]:
    return [
        ("label-form", f"{what} {i} is {lab!r}")
        for i, lab in enumerate(labels, start=1)
        if not lab or any(ch.isspace() for ch in lab)
    ]


def _check_dep_structure(heads, n: int) -> list[tuple[str, str]]:
    problems = []
    out_of_range = [h for h in heads if h < 0 or h > n]
    if out_of_range:
        problems.append(("head-range", f"heads {sorted(set(out_of_range))} outside 0..{n}"))
        return problems
    roots = [i for i, h in enumerate(heads, start=1) if h == 0]
    if len(roots) != 1:
        problems.append(("single-root", f"{len(roots)} tokens have head 0 (expected exactly 1)"))
    # cycle detection by walking head chains with tri-state marks
    state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 done
    state[0] = 2
    for start in range(1, n + 1):
        path = []
        u = start
        while state[u] == 0:
            state[u] = 1
            path.append(u)
            u = heads[u - 1]
        if state[u] == 1:
            problems.append(("acyclic", f"cycle through token {u}"))
            for p in path:
                state[p] = 2
            state[u] = 2
            break
        for p in path:
            state[p] = 2
    return problems


def _check_tree(node) -> list[tuple[str, str]]:
    problems = []
    for path, internal in iter_internal(node):
        if not internal.children:
            problems.append(("nonempty-children", f"node at path {path} has no children"))
        if not internal.label:
            problems.append(("label-form", f"node at path {path} has an empty label"))
        if internal.aux is not None and not internal.aux:
            problems.append(("label-form", f"node at path {path} has an empty aux label"))
    leaf_forms = tree_yield(node)
    if not leaf_forms:
        problems.append(("yield-match", "tree has an empty yield"))
    elif any(_bad_form(f) for f in leaf_forms):
        problems.append(("yield-match", "tree yield contains an invalid form"))
    return problems


def check_example(task: str, example, labels: frozenset[str] | None = None) -> list[tuple[str, str]]:
    """Return (rule, message) pairs for every invariant the example breaks."""
    problems: list[tuple[str, str]] = []
    if task == "pos":
        assert isinstance(example, TaggedSentence)
        problems += _check_tokens(example.tokens)
        if len(example.tags) != len(example.tokens):
            problems.append(
                ("length-alignment", f"{len(example.tokens)} tokens but {len(example.tags)} tags")
            )
        problems += _check_labels(example.tags, "tag")
    elif task == "dep":
        assert isinstance(example, DepSentence)
        problems += _check_tokens(example.tokens)
        n = len(example.tokens)
        if len(example.heads) != n or len(example.deprels) != n:
            problems.append(
                ("length-alignment",
                 f"{n} tokens but {len(example.heads)} heads / {len(example.deprels)} relations")
            )
        else:
            problems += _check_labels(example.deprels, "relation")
            if n:
                problems += _check_dep_structure(example.heads, n)
    elif task == "const":
        if isinstance(example, Leaf):
            problems += _check_tree(example)
        else:
            assert isinstance(example, Internal)
            problems += _check_tree(example)
    elif task == "text":
        assert isinstance(example, TextExample)
        problems += _check_tokens(example.tokens)
        if not example.label:
            problems.append(("label-form", "empty class label"))
        if labels is not None and example.label and example.label not in labels:
            problems.append(("known-label", f"label {example.label!r} not in the dataset inventory"))
        if example.parse is not None:
            problems += _check_tree(example.parse)
            if tree_yield(example.parse) != example.forms:
                problems.append(("parse-yield-match", "parse yield differs from the token sequence"))
    else:
        raise ValueError(f"unknown task {task!r}")
    return problems


def validate_example(task: str, example, labels: frozenset[str] | None = None) -> list[tuple[str, str]]:
    return check_example(task, example, labels)


def validate_dataset(dataset: Dataset) -> list[Violation]:
    """Run every applicable rule over every example; [] means fully valid."""
    out: list[Violation] = []
    for i, example in enumerate(dataset.examples):
        for rule, message in check_example(dataset.task, example, dataset.labels):
            out.append(Violation(i, rule, message))
    return out


# ---------------------------------------------------------------------------
# statistics


def canonical_content(task: str, example):
    """A hashable content key: identical keys mean duplicate examples.

    Comments and provenance are deliberately excluded, so replicated copies
    count as duplicates of their originals.
    """
    if task == "pos":
        return (example.forms, example.tags)
    if task == "dep":
        return (example.forms, example.heads, example.deprels)
    if task == "const":
        return _tree_key(example)
    parse = _tree_key(example.parse) if example.parse is not None else None
    return (example.label, example.forms, parse)


def _tree_key(node):
    if isinstance(node, Leaf):
        return ("leaf", node.form)
    return (node.label, node.aux, tuple(_tree_key(c) for c in node.children))


def _example_length(task: str, example) -> int:
    if task == "const":
        return len(tree_yield(example))
    return len(example)


def render_key(key: tuple) -> str:
    return " ".join(str(part) for part in key)


@dataclass
class StatsReport:
    task: str
    examples: int
    originals: int
    generated: int
    replicated: int
    tokens: int
    mean_length: float
    max_length: int
    duplicates: int
    label_keys: int
    substructures: int
    top_keys: list[tuple[str, int]]
    key_counts: dict[str, int] = field(repr=False, default_factory=dict)
    lengths: list[int] = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        """Stable, documented JSON field set (see README)."""
        return {
            "task": self.task,
            "examples": self.examples,
            "originals": self.originals,
            "generated": self.generated,
            "replicated": self.replicated,
            "tokens": self.tokens,
            "mean_length": self.mean_length,
            "max_length": self.max_length,
            "duplicates": self.duplicates,
            "label_keys": self.label_keys,
            "substructures": self.substructures,
            "top_keys": [{"key": k, "count": c} for k, c in self.top_keys],
            "key_counts": dict(sorted(self.key_counts.items())),
        }

    def table(self) -> str:
        rows = [
            ("task", self.task),
            ("examples", self.examples),
            ("originals", self.originals),
            ("generated", self.generated),
            ("replicated", self.replicated),
            ("tokens", self.tokens),
            ("mean length", f"{self.mean_length:.2f}"),
            ("max length", self.max_length),
            ("duplicates", self.duplicates),
            ("label keys", self.label_keys),
            ("substructures", self.substructures),
        ]
        width = max(len(name) for name, _ in rows)
        lines = [f"{name:<{width}}  {value}" for name, value in rows]
        if self.top_keys:
            lines.append("")
            lines.append("top label keys")
            key_width = max(len(k) for k, _ in self.top_keys)
            for k, c in self.top_keys:
                lines.append(f"  {k:<{key_width}}  {c}")
        return "\n".join(lines)


def stats(dataset: Dataset, constraints=None, max_span_len: int | None = None,
          use_aux: bool = False, top_k: int = 20) -> StatsReport:
    """Summarize a dataset; the label-key histogram uses the same indexing
    rules as augmentation. Raises on invalid datasets."""
    from .index import index_for  # local import keeps module load graph flat

    violations = validate_dataset(dataset)
    if violations:
        first = violations[0]
        raise DataValidationError(
            f"dataset does not validate ({len(violations)} violations; first: "
            f"example {first.example_index}: {first.rule}: {first.message})"
        )

    idx = index_for(dataset, constraints=constraints, max_span_len=max_span_len, use_aux=use_aux)
    key_counts = {render_key(k): len(v) for k, v in idx.entries.items()}
    top = sorted(key_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]

    kinds = {"original": 0, "generated": 0, "replicated": 0}
    if dataset.provenance is None:
        kinds["original"] = len(dataset.examples)
    else:
        for rec in dataset.provenance:
            kinds[rec.kind] += 1

    lengths = [_example_length(dataset.task, ex) for ex in dataset.examples]
    seen = {canonical_content(dataset.task, ex) for ex in dataset.examples}

    return StatsReport(
        task=dataset.task,
        examples=len(dataset.examples),
        originals=kinds["original"],
        generated=kinds["generated"],
        replicated=kinds["replicated"],
        tokens=sum(lengths),
        mean_length=(sum(lengths) / len(lengths)) if lengths else 0.0,
        max_length=max(lengths) if lengths else 0,
        duplicates=len(dataset.examples) - len(seen),
        label_keys=len(idx.entries),
        substructures=idx.total,
        top_keys=top,
        key_counts=key_counts,
        lengths=lengths,
    )

"""The augmentation engine: same-label substructure substitution.

The core loop grows a dataset D' from D until it reaches the target size:

  1. draw an occurrence s uniformly from the substructures of D' (or of D,
     with source_pool="original"),
  2. draw a donor occurrence v uniformly from the occurrences in D that
     share s's label key, excluding s itself,
  3. replace s with v inside s's example and append the result.

Donor pools are frozen over the original dataset; with the default
source_pool="growing" the source pool is extended with each generated
example's substructures, so later draws can chain off generated material.

Determinism: all draws come from one PCG64 stream seeded by config.seed.
Each accepted example consumes one source draw followed by one donor draw;
a source draw whose donor pool is empty consumes no donor draw and is
retried (counting toward max_resample_attempts for that example). Output
is therefore a pure function of the input dataset and the config.

After generation, every original example is appended replicate-1 more
times, so each original appears replicate times in the final output of
size N + (replicate-1)*|D|.
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass

from .data import (
    Dataset,
    DepSentence,
    Provenance,
    TaggedSentence,
    TextExample,
    dep_subtree,
    make_tokens,
    node_at,
    replace_at,
)
from .errors import AugmentError, ConfigError
from .index import (
    ConstraintSet,
    Locus,
    SubstructureIndex,
    balanced_tree,
    build_index,
    const_nodes,
    dep_subtree_sites,
    pos_spans,
    text_spans,
)
from .rng import check_seed, master_rng
from .validate import check_example

METHODS = ("sub2", "rand", "randword", "balanced_sub2")
PROGRESS_EVERY = 10_000


@dataclass(frozen=True)
class AugmentConfig:
    """Everything a run depends on besides the input dataset itself.

    Exactly one of target_size (the final pre-replication size N) or
    multiplier (k, giving N = (k+1)*|D|) must be set. replicate r means
    each original appears r times in the final output.
    """

    task: str
    method: str = "sub2"
    constraints: ConstraintSet | None = None  # text only
    target_size: int | None = None
    multiplier: int | None = None
    replicate: int = 1
    seed: int = 0
    max_resample_attempts: int = 100
    max_span_len: int | None = None  # pos only; text uses constraints.max_span_len
    use_aux: bool = False  # const only: key subtrees by (label, aux)
    source_pool: str = "growing"  # growing | original

    def validate(self) -> None:
        if self.task not in ("pos", "dep", "const", "text"):
            raise ConfigError(f"unknown task {self.task!r}")
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}")
        if (self.target_size is None) == (self.multiplier is None):
            raise ConfigError("exactly one of target_size or multiplier must be set")
        if self.target_size is not None and self.target_size < 1:
            raise ConfigError("target_size must be positive")
        if self.multiplier is not None and self.multiplier < 1:
            raise ConfigError("multiplier must be at least 1")
        if self.replicate < 1:
            raise ConfigError("replicate must be at least 1")
        if self.max_resample_attempts < 1:
            raise ConfigError("max_resample_attempts must be at least 1")
        check_seed(self.seed)
        if self.source_pool not in ("growing", "original"):
            raise ConfigError(f"source_pool must be growing or original, not {self.source_pool!r}")
        if self.constraints is not None and self.task != "text":
            raise ConfigError("constraints apply to the text task only")
        if self.constraints is not None:
            self.constraints.validate()
        if self.max_span_len is not None:
            if self.task != "pos":
                raise ConfigError(
                    "max_span_len applies to the pos task (text caps go in constraints)"
                )
            if self.max_span_len < 1:
                raise ConfigError("max_span_len must be at least 1")
        if self.use_aux and self.task != "const":
            raise ConfigError("use_aux applies to the const task only")
        if self.method == "balanced_sub2":
            if self.task != "text":
                raise ConfigError("balanced substitution applies to the text task only")
            flags = self.constraints.flags if self.constraints else frozenset()
            bad = flags & {"l", "senti"}
            if bad:
                raise ConfigError(
                    f"constraints {', '.join(sorted(bad))} are not valid with balanced skeletons "
                    "(every node carries the same label and no aux)"
                )

    def resolved_target(self, n_original: int) -> int:
        target = self.target_size if self.target_size is not None \
            else (self.multiplier + 1) * n_original
        if target <= n_original:
            raise ConfigError(
                f"target size {target} does not exceed the original size {n_original}"
            )
        return target


@dataclass(frozen=True)
class SpliceResult:
    example: object
    source: Locus
    donor: Locus


# ---------------------------------------------------------------------------
# splice operations


def splice_pos(sentence: TaggedSentence, span, donor: TaggedSentence, donor_span) -> TaggedSentence:
    i, j = span
    di, dj = donor_span
    forms = sentence.forms[:i] + donor.forms[di:dj] + sentence.forms[j:]
    tags = sentence.tags[:i] + donor.tags[di:dj] + sentence.tags[j:]
    return TaggedSentence(make_tokens(forms), tags)


def splice_dep(sentence: DepSentence, root: int, donor: DepSentence, donor_root: int) -> DepSentence:
    """Replace the subtree at ``root`` with the donor subtree at ``donor_root``.

    Both subtrees must cover contiguous token intervals. The donor block
    lands where the removed block was; its internal arcs move with it, and
    its root takes over the removed root's attachment (same head slot,
    donor's relation, which under key equality matches the replaced one).
    """
    block = dep_subtree(sentence.heads, root)
    a, b = block[0], block[-1]
    dblock = dep_subtree(donor.heads, donor_root)
    c, d = dblock[0], dblock[-1]
    if b - a + 1 != len(block) or d - c + 1 != len(dblock):
        raise ConfigError("dependency splicing requires contiguous subtrees")
    delta = (d - c) - (b - a)
    parent = sentence.heads[root - 1]

    def shift(h: int) -> int:
        # heads outside the removed block: 0 and anything left of it stay,
        # anything right of it moves by the length difference
        return h if h < a else h + delta

    forms: list[str] = []
    heads: list[int] = []
    deprels: list[str] = []
    for t in range(1, a):
        forms.append(sentence.tokens[t - 1].form)
        heads.append(shift(sentence.heads[t - 1]))
        deprels.append(sentence.deprels[t - 1])
    for u in range(c, d + 1):
        forms.append(donor.tokens[u - 1].form)
        if u == donor_root:
            heads.append(shift(parent))
        else:
            heads.append(a + (donor.heads[u - 1] - c))
        deprels.append(donor.deprels[u - 1])
    for t in range(b + 1, len(sentence) + 1):
        forms.append(sentence.tokens[t - 1].form)
        heads.append(shift(sentence.heads[t - 1]))
        deprels.append(sentence.deprels[t - 1])
    return DepSentence(make_tokens(forms), tuple(heads), tuple(deprels))


def splice_const(tree, path, donor_tree, donor_path):
    return replace_at(tree, path, node_at(donor_tree, donor_path))


def splice_text(example: TextExample, span, donor: TextExample, donor_span) -> TextExample:
    """Token-span substitution; the class label is kept, the parse dropped
    (the new token sequence no longer matches the old tree)."""
    i, j = span
    di, dj = donor_span
    forms = example.forms[:i] + donor.forms[di:dj] + example.forms[j:]
    return TextExample(example.label, make_tokens(forms), parse=None)


def _splice(task: str, example, site, donor_example, donor_site):
    if task == "pos":
        return splice_pos(example, site, donor_example, donor_site)
    if task == "dep":
        return splice_dep(example, site, donor_example, donor_site)
    if task == "const":
        return splice_const(example, site, donor_example, donor_site)
    return splice_text(example, site, donor_example, donor_site)


# ---------------------------------------------------------------------------
# generation


def _loci_for_example(task: str, example, config: AugmentConfig, lenient: bool = False):
    if task == "pos":
        return pos_spans(example, config.max_span_len)
    if task == "dep":
        return dep_subtree_sites(example)
    if task == "const":
        return const_nodes(example, config.use_aux)
    return text_spans(example, config.constraints, missing_parse_ok=lenient)


def _original_index(dataset: Dataset, config: AugmentConfig):
    per = [_loci_for_example(dataset.task, ex, config) for ex in dataset.examples]
    return build_index(per), per


def _check_augmentable(index: SubstructureIndex) -> None:
    if not any(len(bucket) >= 2 for bucket in index.entries.values()):
        raise AugmentError(
            "no augmentation possible: no label key has two or more occurrences"
        )


def _diagnostic(index: SubstructureIndex) -> str:
    biggest = index.keys_by_size()[:5]
    listed = ", ".join(f"{'/'.join(str(p) for p in key)}={size}" for size, key in biggest)
    return f"largest label keys: {listed}" if biggest else "the index is empty"


def _generate_sub2(dataset: Dataset, config: AugmentConfig, target: int,
                   progress: bool = False):
    task = dataset.task
    index, per_example = _original_index(dataset, config)
    _check_augmentable(index)

    source_items: list[tuple[Locus, tuple]] = []
    for example_index, loci in enumerate(per_example):
        for site, key in loci:
            source_items.append((Locus(example_index, site), key))
    if not source_items:
        raise AugmentError("no augmentation possible: the dataset has no substructures")

    rng = master_rng(config.seed)
    examples = list(dataset.examples)
    provenance = [Provenance("original") for _ in examples]
    growing = config.source_pool == "growing"
    generated = 0
    goal = target - len(dataset.examples)

    while len(examples) < target:
        chosen = None
        for _ in range(config.max_resample_attempts):
            pick = int(rng.integers(len(source_items)))
            locus, key = source_items[pick]
            bucket = index.entries.get(key)
            if not bucket:
                continue
            held = index.positions.get(locus)
            skip = held[1] if held is not None else None
            pool = len(bucket) - (1 if skip is not None else 0)
            if pool > 0:
                chosen = (locus, bucket, skip, pool)
                break
        if chosen is None:
            raise AugmentError(
                f"donor lookup failed {config.max_resample_attempts} times in a row; "
                + _diagnostic(index)
            )
        locus, bucket, skip, pool = chosen
        j = int(rng.integers(pool))
        if skip is not None and j >= skip:
            j += 1
        donor = bucket[j]

        new_example = _splice(
            task, examples[locus.example], locus.site,
            dataset.examples[donor.example], donor.site,
        )
        problems = check_example(task, new_example, dataset.labels)
        if problems:
            rule, message = problems[0]
            raise RuntimeError(
                f"internal error: generated example breaks rule {rule}: {message}"
            )
        new_index = len(examples)
        examples.append(new_example)
        provenance.append(Provenance(
            "generated",
            source=locus.example,
            donor=donor.example,
            source_site=locus.site,
            donor_site=donor.site,
        ))
        if growing:
            for site, key in _loci_for_example(task, new_example, config, lenient=True):
                source_items.append((Locus(new_index, site), key))
        generated += 1
        if progress and generated % PROGRESS_EVERY == 0:
            print(f"generated {generated}/{goal} examples", file=sys.stderr)
    return examples, provenance


def _attach_balanced(dataset: Dataset) -> Dataset:
    working = [
        dataclasses.replace(ex, parse=balanced_tree(ex.forms)) for ex in dataset.examples
    ]
    return Dataset("text", working, labels=dataset.labels)


def _balanced_config(config: AugmentConfig) -> AugmentConfig:
    base = config.constraints or ConstraintSet()
    forced = ConstraintSet(frozenset(base.flags | {"p"}), base.max_span_len)
    return dataclasses.replace(config, method="sub2", constraints=forced)


def _generate_balanced(dataset: Dataset, config: AugmentConfig, target: int,
                       progress: bool = False):
    """Substitution over balanced skeletons: every example gets a balanced
    tree, substitution runs with the p constraint forced on, and the output
    keeps the input originals untouched (generated examples carry no parse)."""
    examples, provenance = _generate_sub2(
        _attach_balanced(dataset), _balanced_config(config), target, progress
    )
    examples[: len(dataset.examples)] = list(dataset.examples)
    return examples, provenance


def augment(dataset: Dataset, config: AugmentConfig, progress: bool = False) -> Dataset:
    """Run the configured augmentation method over the dataset.

    Returns a new dataset whose leading segment is the original examples
    unchanged, followed by target-|D| generated examples, followed by
    (replicate-1) more copies of each original. Full provenance records are
    attached. The input dataset is never mutated.
    """
    config.validate()
    if config.task != dataset.task:
        raise ConfigError(f"config task {config.task!r} != dataset task {dataset.task!r}")
    if not dataset.examples:
        raise ConfigError("cannot augment an empty dataset")
    target = config.resolved_target(len(dataset.examples))

    if config.method == "sub2":
        examples, provenance = _generate_sub2(dataset, config, target, progress)
    elif config.method == "balanced_sub2":
        examples, provenance = _generate_balanced(dataset, config, target, progress)
    else:
        from . import baselines  # deferred: baselines imports this module

        examples, provenance = baselines.generate_random(dataset, config, target)

    for _ in range(config.replicate - 1):
        for i, example in enumerate(dataset.examples):
            examples.append(example)
            provenance.append(Provenance("replicated", source=i))
    return Dataset(dataset.task, examples, provenance=provenance, labels=dataset.labels)


def reachable_one_step(dataset: Dataset, config: AugmentConfig | None = None,
                       keys=None) -> list[SpliceResult]:
    """Every example one substitution away from the dataset, with both the
    source and donor pools frozen over the given examples.

    Enumerates, for each label key (optionally restricted to ``keys``), all
    ordered pairs of distinct same-key occurrences (s, v) and splices v
    into s's example. Useful for exhaustive small-scale checks.
    """
    if config is None:
        config = AugmentConfig(task=dataset.task, multiplier=1)
    config.validate()
    if config.task != dataset.task:
        raise ConfigError(f"config task {config.task!r} != dataset task {dataset.task!r}")

    if config.method == "balanced_sub2":
        working = _attach_balanced(dataset)
        eff = _balanced_config(config)
        index, _ = _original_index(working, eff)
        hosts = working.examples
    else:
        working = dataset
        index, _ = _original_index(dataset, config)
        hosts = dataset.examples

    results: list[SpliceResult] = []
    for key, bucket in index.entries.items():
        if keys is not None and key not in keys:
            continue
        for s in bucket:
            for v in bucket:
                if v == s:
                    continue
                example = _splice(
                    dataset.task, hosts[s.example], s.site, hosts[v.example], v.site
                )
                results.append(SpliceResult(example, s, v))
    return results

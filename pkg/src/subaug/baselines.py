"""Label-preserving random baselines.

rand_shuffle permutes the words of one example while keeping every label
where its word goes: tags travel with their tokens, dependency arcs follow
the words (heads re-expressed in the new positions, possibly non-projective
afterwards), constituency skeletons keep their shape with leaf forms
permuted into it, and text examples keep their class label (an attached
parse has its leaf forms permuted the same way, so its yield stays
aligned).

rand_word replaces exactly one uniformly chosen position with a uniformly
chosen different vocabulary form; everything else is unchanged.

balanced substitution lives in the engine (method "balanced_sub2"); the
wrapper here is the public entry point.

Dataset-level generation is round-robin: the example generated at ordinal m
transforms original m mod |D|, using an RNG stream derived from
(seed, m), so each output is independent of the others.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .data import (
    Dataset,
    DepSentence,
    Internal,
    Leaf,
    Provenance,
    TaggedSentence,
    TextExample,
    iter_leaves,
    make_tokens,
    rebuild_leaves,
    tree_yield,
)
from .errors import ConfigError
from .rng import stream_rng
from .validate import check_example


def _example_forms(task: str, example) -> tuple[str, ...]:
    if task == "const":
        return tree_yield(example)
    return example.forms


def build_vocab(dataset: Dataset) -> tuple[str, ...]:
    """Sorted distinct token forms across the dataset."""
    forms = set()
    for example in dataset.examples:
        forms.update(_example_forms(dataset.task, example))
    return tuple(sorted(forms))


def rand_shuffle(example, task: str, rng: np.random.Generator):
    """Uniformly permute the words of one example, labels traveling along.

    The identity permutation is allowed; a single-token example comes back
    unchanged.
    """
    if task == "const":
        forms = tree_yield(example)
        order = rng.permutation(len(forms))
        permuted = iter([forms[k] for k in order])
        return rebuild_leaves(example, permuted)

    n = len(example)
    order = rng.permutation(n)  # order[new_pos] = old_pos, 0-based
    if task == "pos":
        forms = [example.tokens[k].form for k in order]
        tags = tuple(example.tags[k] for k in order)
        return TaggedSentence(make_tokens(forms), tags)
    if task == "dep":
        new_pos = [0] * n
        for new0, old0 in enumerate(order):
            new_pos[old0] = new0
        forms = [""] * n
        heads = [0] * n
        deprels = [""] * n
        for new0, old0 in enumerate(order):
            forms[new0] = example.tokens[old0].form
            h = example.heads[old0]
            heads[new0] = 0 if h == 0 else new_pos[h - 1] + 1
            deprels[new0] = example.deprels[old0]
        return DepSentence(make_tokens(forms), tuple(heads), tuple(deprels))
    # text
    forms = [example.tokens[k].form for k in order]
    parse = None
    if example.parse is not None:
        parse = rebuild_leaves(example.parse, iter(forms))
    return TextExample(example.label, make_tokens(forms), parse)


def _other_form(vocab: tuple[str, ...], form: str, rng: np.random.Generator) -> str:
    # rejection sampling keeps the draw uniform over entries != form without
    # requiring the vocabulary to be sorted or deduplicated
    if not any(entry != form for entry in vocab):
        raise ConfigError("degenerate vocabulary: only one distinct form")
    while True:
        j = int(rng.integers(len(vocab)))
        if vocab[j] != form:
            return vocab[j]


def _rand_word_at(example, task: str, vocab: tuple[str, ...], rng: np.random.Generator):
    """Substitute one position; returns (new example, 0-based position)."""
    if len(vocab) < 2:
        raise ConfigError("degenerate vocabulary: only one distinct form")
    forms = list(_example_forms(task, example))
    at = int(rng.integers(len(forms)))
    forms[at] = _other_form(vocab, forms[at], rng)
    if task == "pos":
        return TaggedSentence(make_tokens(forms), example.tags), at
    if task == "dep":
        return DepSentence(make_tokens(forms), example.heads, example.deprels), at
    if task == "const":
        return rebuild_leaves(example, iter(forms)), at
    parse = None
    if example.parse is not None:
        parse = rebuild_leaves(example.parse, iter(forms))
    return TextExample(example.label, make_tokens(forms), parse), at


def rand_word(example, task: str, vocab: tuple[str, ...], rng: np.random.Generator):
    """One random same-structure word substitution (position drawn first,
    then the replacement form)."""
    return _rand_word_at(example, task, vocab, rng)[0]


def generate_random(dataset: Dataset, config, target: int):
    """Shared generation loop for the rand and randword methods."""
    task = dataset.task
    vocab: tuple[str, ...] = ()
    if config.method == "randword":
        vocab = build_vocab(dataset)
        if len(vocab) < 2:
            raise ConfigError("degenerate vocabulary: only one distinct form")

    n = len(dataset.examples)
    examples = list(dataset.examples)
    provenance = [Provenance("original") for _ in examples]
    for ordinal in range(target - n):
        src = ordinal % n
        rng = stream_rng(config.seed, ordinal)
        if config.method == "rand":
            new_example = rand_shuffle(dataset.examples[src], task, rng)
            site = None
        else:
            new_example, at = _rand_word_at(dataset.examples[src], task, vocab, rng)
            if task == "const":
                # const sites are tree paths; record the replaced leaf's path
                paths = [p for p, _ in iter_leaves(dataset.examples[src])]
                site = paths[at]
            elif task == "dep":
                site = at + 1  # dep sites are 1-based token indices
            else:
                site = (at, at + 1)
        problems = check_example(task, new_example, dataset.labels)
        if problems:
            rule, message = problems[0]
            raise RuntimeError(
                f"internal error: generated example breaks rule {rule}: {message}"
            )
        examples.append(new_example)
        provenance.append(Provenance("generated", source=src, source_site=site))
    return examples, provenance


def balanced_sub2(dataset: Dataset, config, progress: bool = False) -> Dataset:
    """Same-label substitution over balanced skeletons (see the engine)."""
    from .engine import augment

    return augment(dataset, replace(config, method="balanced_sub2"), progress)

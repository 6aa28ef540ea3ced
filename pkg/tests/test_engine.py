"""Splice operations, the generation loop, and its determinism contract."""

import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from corpora import (
    CONST_MICRO,
    CONST_MICRO_EXPECTED,
    DEP_MICRO,
    DEP_MICRO_EXPECTED,
    POS_MICRO,
    POS_MICRO_EXPECTED,
    TEXT_MICRO,
)
from subaug.data import (
    Dataset,
    DepSentence,
    Internal,
    Leaf,
    TaggedSentence,
    TextExample,
    make_tokens,
    tree_yield,
)
from subaug.engine import (
    AugmentConfig,
    augment,
    reachable_one_step,
    splice_dep,
    splice_pos,
    splice_text,
)
from subaug.errors import AugmentError, ConfigError
from subaug.index import ConstraintSet
from subaug.validate import validate_dataset


def tagged(forms, tags):
    return TaggedSentence(make_tokens(forms), tuple(tags))


# --- configuration -------------------------------------------------------------

def test_config_requires_exactly_one_size():
    with pytest.raises(ConfigError):
        AugmentConfig(task="pos").validate()
    with pytest.raises(ConfigError):
        AugmentConfig(task="pos", multiplier=2, target_size=30).validate()
    AugmentConfig(task="pos", multiplier=2).validate()


def test_config_rejects_bad_values():
    bad = [
        AugmentConfig(task="ner", multiplier=1),
        AugmentConfig(task="pos", method="mixup", multiplier=1),
        AugmentConfig(task="pos", multiplier=0),
        AugmentConfig(task="pos", target_size=0),
        AugmentConfig(task="pos", multiplier=1, replicate=0),
        AugmentConfig(task="pos", multiplier=1, max_resample_attempts=0),
        AugmentConfig(task="pos", multiplier=1, seed=-1),
        AugmentConfig(task="pos", multiplier=1, source_pool="frozen"),
        AugmentConfig(task="pos", multiplier=1, constraints=ConstraintSet()),
        AugmentConfig(task="text", multiplier=1,
                      constraints=ConstraintSet(frozenset({"l"}))),
        AugmentConfig(task="text", multiplier=1, max_span_len=3),
        AugmentConfig(task="pos", multiplier=1, max_span_len=0),
        AugmentConfig(task="pos", multiplier=1, use_aux=True),
        AugmentConfig(task="pos", method="balanced_sub2", multiplier=1),
        AugmentConfig(task="text", method="balanced_sub2", multiplier=1,
                      constraints=ConstraintSet(frozenset({"p", "senti"}))),
    ]
    for config in bad:
        with pytest.raises(ConfigError):
            config.validate()


def test_resolved_target():
    assert AugmentConfig(task="pos", multiplier=3).resolved_target(10) == 40
    assert AugmentConfig(task="pos", target_size=12).resolved_target(10) == 12
    with pytest.raises(ConfigError):
        AugmentConfig(task="pos", target_size=10).resolved_target(10)


# --- splices ---------------------------------------------------------------------

def test_splice_pos():
    out = splice_pos(POS_MICRO.examples[0], (2, 4), POS_MICRO.examples[1], (2, 4))
    assert (out.forms, out.tags) in POS_MICRO_EXPECTED
    grown = splice_pos(tagged(["x"], ["A"]), (0, 1),
                       tagged(["p", "q"], ["A", "B"]), (0, 2))
    assert grown.forms == ("p", "q") and grown.tags == ("A", "B")
    assert [t.index for t in grown.tokens] == [1, 2]


def test_splice_dep_micro():
    out = splice_dep(DEP_MICRO.examples[0], 4, DEP_MICRO.examples[1], 3)
    assert (out.forms, out.heads, out.deprels) in DEP_MICRO_EXPECTED


def test_splice_dep_resizes_and_shifts():
    # replace the one-token subtree at position 1 with a two-token block
    # whose parent sits to the right of the removed block
    src = DepSentence(make_tokens(["a", "b", "c"]), (2, 0, 2), ("su", "root", "ob"))
    donor = DepSentence(make_tokens(["big", "dog", "ran"]), (2, 3, 0),
                        ("mod", "su", "root"))
    out = splice_dep(src, 1, donor, 2)
    assert out.forms == ("big", "dog", "b", "c")
    assert out.heads == (2, 3, 0, 3)
    assert out.deprels == ("mod", "su", "root", "ob")
    # agreement with the object-graph oracle
    assert (out.forms, out.heads, out.deprels) == oracles.splice_dep(
        (src.forms, src.heads, src.deprels), 1,
        (donor.forms, donor.heads, donor.deprels), 2,
    )


def test_splice_text_drops_parse_and_keeps_label():
    src = TextExample("pos", make_tokens(["a", "b"]),
                      Internal("S", (Leaf("a"), Leaf("b"))))
    donor = TextExample("neg", make_tokens(["c"]))
    out = splice_text(src, (1, 2), donor, (0, 1))
    assert out.label == "pos"
    assert out.forms == ("a", "c")
    assert out.parse is None


# --- reachable set vs the micro corpora -------------------------------------------

def test_reachable_pos_micro():
    results = reachable_one_step(POS_MICRO, keys={("DT", "NN")})
    got = {(r.example.forms, r.example.tags) for r in results}
    assert got == POS_MICRO_EXPECTED


def test_reachable_const_micro():
    results = reachable_one_step(CONST_MICRO, keys={("VP",)})
    got = {oracles.tree_repr(r.example) for r in results}
    assert got == CONST_MICRO_EXPECTED


def test_reachable_dep_micro():
    results = reachable_one_step(DEP_MICRO, keys={("dobj",)})
    got = {(r.example.forms, r.example.heads, r.example.deprels) for r in results}
    assert got == DEP_MICRO_EXPECTED


def test_reachable_matches_oracle_on_micro_corpora():
    results = reachable_one_step(POS_MICRO)
    got = {(r.example.forms, r.example.tags) for r in results}
    want = oracles.reachable_pos([(e.forms, e.tags) for e in POS_MICRO.examples])
    assert got == want


# --- the generation loop -----------------------------------------------------------

def small_pos_dataset():
    return Dataset("pos", [
        tagged(["the", "cat", "sat"], ["D", "N", "V"]),
        tagged(["a", "dog", "ran"], ["D", "N", "V"]),
        tagged(["dogs", "sleep"], ["N", "V"]),
    ])


def test_augment_size_and_layout():
    data = small_pos_dataset()
    config = AugmentConfig(task="pos", multiplier=2, replicate=2, seed=1)
    out = augment(data, config)
    # (k+1)*3 generated-inclusive examples plus (r-1)*3 replicas
    assert len(out.examples) == 9 + 3
    assert out.examples[:3] == data.examples
    kinds = [rec.kind for rec in out.provenance]
    assert kinds[:3] == ["original"] * 3
    assert kinds[3:9] == ["generated"] * 6
    assert kinds[9:] == ["replicated"] * 3
    assert [rec.source for rec in out.provenance[9:]] == [0, 1, 2]
    assert out.examples[9:] == data.examples
    assert validate_dataset(out) == []


def test_augment_target_size_path():
    out = augment(small_pos_dataset(),
                  AugmentConfig(task="pos", target_size=5, seed=0))
    assert len(out.examples) == 5
    with pytest.raises(ConfigError):
        augment(small_pos_dataset(), AugmentConfig(task="pos", target_size=3, seed=0))


def test_augment_determinism():
    data = small_pos_dataset()
    config = AugmentConfig(task="pos", multiplier=3, seed=11)
    a = augment(data, config)
    b = augment(data, config)
    assert a.examples == b.examples
    assert a.provenance == b.provenance
    c = augment(data, AugmentConfig(task="pos", multiplier=3, seed=12))
    assert c.examples != a.examples


def test_augment_never_mutates_input():
    data = small_pos_dataset()
    before = list(data.examples)
    augment(data, AugmentConfig(task="pos", multiplier=2, seed=5))
    assert data.examples == before


def test_source_pool_original_never_chains():
    data = small_pos_dataset()
    out = augment(data, AugmentConfig(task="pos", multiplier=30, seed=2,
                                      source_pool="original"))
    sources = [rec.source for rec in out.provenance if rec.kind == "generated"]
    assert sources and all(s < len(data.examples) for s in sources)


def test_source_pool_growing_chains_eventually():
    data = small_pos_dataset()
    out = augment(data, AugmentConfig(task="pos", multiplier=30, seed=2))
    sources = [rec.source for rec in out.provenance if rec.kind == "generated"]
    assert any(s >= len(data.examples) for s in sources)


def test_augment_checks_task_and_emptiness():
    with pytest.raises(ConfigError):
        augment(small_pos_dataset(), AugmentConfig(task="dep", multiplier=1))
    with pytest.raises(ConfigError):
        augment(Dataset("pos", []), AugmentConfig(task="pos", multiplier=1))


def test_no_augmentation_possible():
    lonely = Dataset("pos", [tagged(["a"], ["D"]), tagged(["b"], ["N"])])
    with pytest.raises(AugmentError) as err:
        augment(lonely, AugmentConfig(task="pos", multiplier=1, seed=0))
    assert "no augmentation possible" in str(err.value)


def test_resample_exhaustion_reports_diagnostic():
    # one usable pair drowned in singleton keys; a single draw that lands on
    # a singleton exhausts the budget when max_resample_attempts=1
    examples = [tagged([c], [c.upper()]) for c in "abcdefgh"]
    examples += [tagged(["x"], ["Z"]), tagged(["y"], ["Z"])]
    data = Dataset("pos", examples)
    config = AugmentConfig(task="pos", multiplier=1, seed=0,
                           max_resample_attempts=1)
    failed_seed = None
    for seed in range(50):
        try:
            augment(data, dataclasses.replace(config, seed=seed))
        except AugmentError as err:
            assert "donor lookup failed" in str(err)
            assert "largest label keys" in str(err)
            failed_seed = seed
            break
    assert failed_seed is not None


def test_generated_only_carry_provenance_comments_not_source_comments():
    data = Dataset("pos", [
        TaggedSentence(make_tokens(["a"]), ("D",), comments=("# sent_id = 1",)),
        TaggedSentence(make_tokens(["b"]), ("D",), comments=("# sent_id = 2",)),
    ])
    out = augment(data, AugmentConfig(task="pos", multiplier=1, seed=0))
    for example, record in zip(out.examples, out.provenance):
        if record.kind == "generated":
            assert example.comments == ()


# --- balanced skeleton method -------------------------------------------------------

def test_balanced_sub2_keeps_originals_and_generates_spans():
    data = TEXT_MICRO
    config = AugmentConfig(task="text", method="balanced_sub2", multiplier=3,
                           seed=4, constraints=ConstraintSet(frozenset({"n", "t"})))
    out = augment(data, config)
    assert out.examples[:2] == data.examples
    assert all(ex.parse is None for ex in out.examples)
    assert len(out.examples) == 8
    assert validate_dataset(out) == []
    for ex, rec in zip(out.examples, out.provenance):
        if rec.kind == "generated":
            assert ex.label == "positive"


def test_balanced_reachable_uses_skeleton_spans():
    # over balanced skeletons of two 4-token sentences the phrase spans are
    # (0,4),(0,2),(2,4) in each; with no extra flags any span swaps with any
    results = reachable_one_step(
        TEXT_MICRO, AugmentConfig(task="text", method="balanced_sub2", multiplier=1)
    )
    spans = {(r.source.site, r.donor.site) for r in results}
    allowed = {(0, 4), (0, 2), (2, 4)}
    assert {s for s, _ in spans} <= allowed
    assert {d for _, d in spans} <= allowed
    got = {(r.example.label, r.example.forms) for r in results}
    want = oracles.reachable_text(
        [(ex.label, ex.forms, oracles_balanced(ex.forms)) for ex in TEXT_MICRO.examples],
        flags={"p"},
    )
    assert got == want


def oracles_balanced(forms):
    """Build the balanced skeleton the oracle way: repeated halving."""
    def build(lo, hi):
        if hi - lo <= 2:
            return Internal("BAL", tuple(Leaf(f) for f in forms[lo:hi]))
        mid = (lo + hi) // 2
        return Internal("BAL", (build(lo, mid), build(mid, hi)))
    return build(0, len(forms))


# --- property: sizes, validity, prefix preservation ------------------------------------

@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 4), st.integers(1, 3))
def test_augment_properties(seed, multiplier, replicate):
    data = small_pos_dataset()
    out = augment(data, AugmentConfig(task="pos", multiplier=multiplier,
                                      replicate=replicate, seed=seed))
    n = len(data.examples)
    assert len(out.examples) == (multiplier + 1) * n + (replicate - 1) * n
    assert out.examples[:n] == data.examples
    assert validate_dataset(out) == []
    assert len(out.provenance) == len(out.examples)

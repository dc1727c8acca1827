"""Identity verifiers: derivation powers, translation, rank sweeps, and the
negative controls that prove the verifiers can fail."""

import json

import pytest

import oracles
from affine_basis import affine, pbw, verify
from affine_basis.partitions import (
    A1Standard,
    C2FS,
    ColoredPartition,
    enumerate_admissible,
)
from affine_basis.verify import (
    DerivationTable,
    StepReport,
    sweep_t_power,
    sweep_translation,
    t_apply,
    verify_c0_nonvanishing,
    verify_icprop,
    verify_independence,
    verify_spanning,
    verify_t_power,
    verify_translation,
)


def P(a=(), b=(), c=()):
    return ColoredPartition.of(a=a, b=b, c=c)


# ---------------------------------------------------------------------------
# derivation powers
# ---------------------------------------------------------------------------


def test_derivation_table_is_the_middle_color_bracket():
    table = DerivationTable()
    # the derivation sends f to a multiple of x21' and h to a multiple of x12
    assert {k for _, k in table.action[0]} == {3}
    assert {k for _, k in table.action[6]} == {8}
    # colors are killed (they commute with the middle color)
    for base in (5, 8, 9):
        assert table.action[base] == ()


def test_t_apply_leibniz_on_a_single_factor():
    table = DerivationTable()
    elem = {(0, (affine.encode(-1, 0),)): 1}
    out = t_apply(elem, table)
    (coeff, k), = table.action[0]
    assert out == {(0, (affine.encode(-1, k),)): coeff}


def test_t_power_scalars_match_the_sign_oracle():
    for kind in (A1Standard(1, 0), A1Standard(1, 1)):
        for pi in enumerate_admissible(kind, 3):
            rep = verify_t_power(kind, pi)
            assert rep.ok, pi.tag()
            expected = oracles.t_power_scalar(pi)
            assert rep.witness["scalar"] == str(expected), pi.tag()
            assert rep.witness["next_power_vanishes"] is True


def test_t_power_sweep_pinned_scalars():
    rep = sweep_t_power(A1Standard(1, 0), 2)
    assert rep.ok
    got = [(e["partition"], e["scalar"]) for e in rep.witness["partitions"]]
    assert got == [
        ("empty", "1"),
        ("a1", "1"),
        ("b1", "-1"),
        ("c1", "-1"),
        ("a2", "1"),
        ("b2", "-1"),
        ("c2", "-1"),
        ("a1 c1", "-1"),
    ]


def test_mutated_derivation_table_fails_with_witness():
    kind = A1Standard(1, 0)
    # killing the f-replacement makes any c-part unconvertible
    broken = DerivationTable().mutate(0, ())
    rep = verify_t_power(kind, P(c={1: 1}), broken)
    assert not rep.ok
    assert rep.witness["scalar"] is None
    # a-only partitions never touch the mutated entry, so they still pass
    rep2 = verify_t_power(kind, P(a={1: 1}), broken)
    assert rep2.ok
    # sweeping catches the poisoned entry (only c-parts route through f)
    sweep = sweep_t_power(kind, 1, broken)
    assert not sweep.ok
    bad = [e for e in sweep.witness["partitions"] if not e["ok"]]
    assert {e["partition"] for e in bad} == {"c1"}
    # poisoning the h-entry instead breaks the b-part conversions
    broken_h = DerivationTable().mutate(6, ())
    sweep_h = sweep_t_power(kind, 1, broken_h)
    assert not sweep_h.ok
    bad_h = [e for e in sweep_h.witness["partitions"] if not e["ok"]]
    assert {e["partition"] for e in bad_h} == {"b1"}


# ---------------------------------------------------------------------------
# translation identity and the mode-0 string
# ---------------------------------------------------------------------------


def test_translation_for_the_pure_mode0_partition():
    kind = A1Standard(0, 1)
    rep = verify_translation(kind, P(c={0: 1}))
    assert rep.ok
    assert rep.witness["mu"] == "1"
    assert rep.witness["killed"] is True


def test_translation_sweep_pinned_witnesses():
    rep = sweep_translation(A1Standard(1, 0), 2)
    assert rep.ok
    mus = [e["mu"] for e in rep.witness["partitions"]]
    assert mus == ["1", "1", "-1", "-2", "1", "-1", "-2", "-2"]


def test_c0_nonvanishing_norm_strings():
    rep0 = verify_c0_nonvanishing(A1Standard(1, 0))
    assert rep0.ok and rep0.witness["norms"] == ["1", "0"]
    rep1 = verify_c0_nonvanishing(A1Standard(0, 1))
    assert rep1.ok and rep1.witness["norms"] == ["1", "1", "0"]
    rep2 = verify_c0_nonvanishing(A1Standard(0, 2))
    assert rep2.ok and rep2.witness["norms"][-1] == "0"
    assert all(x != "0" for x in rep2.witness["norms"][:-1])


# ---------------------------------------------------------------------------
# independence / spanning sweeps
# ---------------------------------------------------------------------------


def test_independence_and_spanning_level_one():
    kind = A1Standard(1, 0)
    rep_i = verify_independence(kind, 3)
    assert rep_i.ok
    assert all(e["count"] == e["rank"] for e in rep_i.witness["blocks"])
    rep_s = verify_spanning(kind, 3)
    assert rep_s.ok
    for e in rep_s.witness["blocks"]:
        assert e["admissible_rank"] == e["dimension"]
    # the block table covers every admissible partition
    assert sum(e["count"] for e in rep_i.witness["blocks"]) == len(
        enumerate_admissible(kind, 3)
    )


def test_independence_parallel_jobs_agree():
    kind = A1Standard(0, 1)
    seq = verify_independence(kind, 2, jobs=1)
    par = verify_independence(kind, 2, jobs=2)
    assert seq.ok and par.ok
    assert seq.witness == par.witness


def test_principal_subspace_independence():
    rep = verify_independence(C2FS(1, 0, 0), 3)
    assert rep.ok


def test_dc_violator_creates_a_rank_deficit():
    kind = A1Standard(1, 0)
    module = kind.module()
    violator = P(b={1: 1}, c={1: 1})
    assert not kind.admissible(violator)
    word = kind.monomial_word(violator)
    key = (affine.word_degree(word), module.abs_weight(word))
    block_pis = [
        pi
        for pi in enumerate_admissible(kind, 2)
        if (
            affine.word_degree(kind.monomial_word(pi)),
            module.abs_weight(kind.monomial_word(pi)),
        )
        == key
    ]
    assert block_pis  # the violator's block is populated by admissible vectors
    family = block_pis + [violator]
    vecs = [module.act_word(kind.monomial_word(pi)) for pi in family]
    gram = verify._family_gram(module, vecs)
    rank = pbw.rank_int([[int(x) for x in row] for row in gram])
    assert rank == len(block_pis)  # deficit of exactly the appended vector
    tags = verify._minimal_dependent(gram, family)
    assert tags  # a concrete dependent subfamily is extracted
    assert violator.tag() in tags


# ---------------------------------------------------------------------------
# propagation and report plumbing
# ---------------------------------------------------------------------------


def test_icprop_sweep():
    for kind in (A1Standard(1, 1), A1Standard(0, 2), A1Standard(2, 0)):
        rep = verify_icprop(kind, 4)
        assert rep.ok
        assert rep.witness["violations"] == []


def test_step_report_json_roundtrip():
    rep = StepReport(step="demo", inputs={"x": 1}, ok=True, witness={"y": [2]})
    data = json.loads(rep.to_json())
    assert data == {
        "step": "demo",
        "inputs": {"x": 1},
        "ok": True,
        "witness": {"y": [2]},
        "seconds": 0.0,
    }

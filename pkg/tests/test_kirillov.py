import json
import random
from fractions import Fraction as F

import pytest

from liemd.catalog import FamilyParams, build
from liemd.exact import MatrixQ, PolyQ, mat_rank
from liemd.kirillov import (
    GridSpec,
    b_form_at,
    b_form_symbolic,
    grid_ranks,
    md_check,
    nonvanishing_maximality_check,
    orbit_dim,
    pfaffian_system,
    rank_profile,
)
from liemd.lie_core import LieAlgebra, transport_covector
from conftest import random_invertible, random_rational
from oracles import minor_rank


def g51():
    return build("5.1")


def g523():
    return build("rejected.5.2.3")


F5 = PolyQ.variable(4, 5)
F4 = PolyQ.variable(3, 5)


# ---------------------------------------------------------------------------
# the form and orbit dimensions
# ---------------------------------------------------------------------------

def test_b_form_index_convention():
    b = b_form_at(g51(), [0, 0, 0, 0, 1])
    assert b[1, 0] == 1 and b[3, 2] == 1
    assert b[0, 1] == -1 and b[2, 3] == -1
    assert mat_rank(b) == 4


def test_b_form_zero_covector():
    assert b_form_at(g51(), [0] * 5).is_zero()


def test_b_form_skew():
    rng = random.Random(7)
    g = build("5.4.6", FamilyParams(lambdas=(2, 3)))
    for _ in range(20):
        f = [random_rational(rng) for _ in range(5)]
        b = b_form_at(g, f)
        assert b.transpose() == b.scale(-1)


def test_b_form_requires_jacobi():
    bad = LieAlgebra.from_brackets(5, [(1, 2, {1: 1}), (1, 3, {2: 1})])
    with pytest.raises(ValueError, match="Jacobi"):
        b_form_at(bad, [1, 0, 0, 0, 0])


def test_orbit_dims_match_examples():
    assert orbit_dim(g51(), [0, 0, 0, 0, 1]) == 4
    assert orbit_dim(g51(), [0, 0, 0, 0, 0]) == 0
    assert orbit_dim(build("5.2.1"), [0, 0, 0, 1, 1]) == 2


def test_orbit_dim_is_even(catalog_samples):
    rng = random.Random(9)
    for _, _, _, g in catalog_samples[:10]:
        for _ in range(10):
            f = [random_rational(rng, 9, 9) for _ in range(5)]
            assert orbit_dim(g, f) % 2 == 0


# ---------------------------------------------------------------------------
# symbolic form
# ---------------------------------------------------------------------------

def test_symbolic_form_entries_of_central_extension():
    form = b_form_symbolic(g51())
    for i in range(5):
        for j in range(5):
            e = form.entry(i, j)
            assert e.is_zero() or e == F5 or e == -F5


def test_symbolic_form_of_abelian_is_zero():
    assert b_form_symbolic(LieAlgebra.abelian(5)).is_zero()


def test_symbolic_form_group3_support():
    g = build("5.3.4")
    form = b_form_symbolic(g)
    for i in range(2, 5):
        for j in range(2, 5):
            assert form.entry(i, j).is_zero()
    assert not form.entry(0, 1).is_zero()


def test_symbolic_form_is_bordered_for_codim1_families(catalog_samples):
    # when the derived ideal is spanned by X2..X5 and only X1 acts, the
    # form's nonzero entries are confined to the first row and column
    for label, fid, _, g in catalog_samples:
        if not fid.startswith("5.4."):
            continue
        form = b_form_symbolic(g)
        for i in range(1, 5):
            for j in range(1, 5):
                assert form.entry(i, j).is_zero(), label


def test_symbolic_matches_numeric_everywhere(catalog_samples):
    rng = random.Random(101)
    for _, _, _, g in catalog_samples:
        form = b_form_symbolic(g)
        for _ in range(100):
            f = [random_rational(rng, 9, 9) for _ in range(5)]
            assert form.evaluate(f) == b_form_at(g, f)


# ---------------------------------------------------------------------------
# Pfaffians
# ---------------------------------------------------------------------------

def test_pfaffian_system_central_extension():
    pfs = pfaffian_system(b_form_symbolic(g51()))
    nonzero = [p for p in pfs if not p.is_zero()]
    assert len(nonzero) == 1
    assert nonzero[0] in (F5 * F5, -(F5 * F5))


def test_pfaffian_system_group3_all_zero():
    for fid, params in [("5.3.1", FamilyParams(lambdas=(2, 3))),
                        ("5.3.7", FamilyParams()),
                        ("5.3.8", FamilyParams(lambdas=(2,),
                                               angle=__import__("liemd.exact", fromlist=["UnitPoint"]).UnitPoint(F(3, 5), F(4, 5))))]:
        pfs = pfaffian_system(b_form_symbolic(build(fid, params)))
        assert all(p.is_zero() for p in pfs)


def test_pfaffian_system_rejected_case():
    pfs = pfaffian_system(b_form_symbolic(g523()))
    nonzero = [p for p in pfs if not p.is_zero()]
    assert len(nonzero) == 1
    assert nonzero[0] in (F4 * F5, -(F4 * F5))


def test_pfaffian_system_requires_dim5():
    g = LieAlgebra.abelian(4)
    with pytest.raises(ValueError, match="dimension 5"):
        pfaffian_system(b_form_symbolic(g))


def test_pfaffian_vanishing_forbids_rank4(catalog_samples):
    grid = GridSpec(radius=1, extra_random_samples=50, seed=3)
    for _, _, _, g in catalog_samples:
        if all(p.is_zero() for p in pfaffian_system(b_form_symbolic(g))):
            profile = rank_profile(g, grid)
            assert 4 not in profile.histogram


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

def test_grid_is_deterministic():
    spec = GridSpec(radius=1, extra_random_samples=10, seed=2)
    a = list(spec.covectors(3))
    b = list(spec.covectors(3))
    assert a == b
    assert len(a) == spec.count(3) == 27 + 10


def test_grid_enumerates_lexicographically():
    spec = GridSpec(radius=1, extra_random_samples=0)
    pts = list(spec.integer_points(2))
    assert pts[0] == (-1, -1)
    assert pts[1] == (-1, 0)
    assert pts[-1] == (1, 1)


def test_grid_random_tail_respects_bounds():
    spec = GridSpec(radius=1, extra_random_samples=200, seed=11)
    for cov in spec.random_points(5):
        for x in cov:
            assert abs(x.numerator) <= 9
            assert 1 <= x.denominator <= 9


def test_grid_rejects_bad_parameters():
    with pytest.raises(ValueError):
        GridSpec(radius=0)
    with pytest.raises(ValueError):
        GridSpec(extra_random_samples=-1)


def test_fast_rank_path_matches_bareiss(catalog_samples):
    grid = GridSpec(radius=1, extra_random_samples=30, seed=5)
    covs = list(grid.covectors(5))
    for _, _, _, g in catalog_samples[:8]:
        fast = grid_ranks(g, covs)
        slow = [mat_rank(b_form_at(g, f)) for f in covs]
        assert fast == slow


def test_fast_rank_path_survives_int64_overflow():
    # covector entries far beyond the int64 guard force the exact
    # big-integer fallback, which must agree with Bareiss elimination
    big = 2 ** 40
    g = build("5.2.2", FamilyParams(lambdas=(2,)))
    covs = [
        (big, big + 1, -big, big // 3, 1),
        (0, 0, 0, big, 0),
        (0, 0, 0, 0, big),
        (big, 0, 0, 0, 0),
    ]
    covs = [tuple(F(x) for x in c) for c in covs]
    fast = grid_ranks(g, covs)
    slow = [mat_rank(b_form_at(g, f)) for f in covs]
    assert fast == slow


def test_fast_rank_path_huge_structure_constants():
    huge = F(2 ** 80)
    g = LieAlgebra.from_brackets(5, [(1, 2, {5: huge}), (3, 4, {5: 1})])
    covs = [tuple(F(x) for x in c) for c in
            [(0, 0, 0, 0, 0), (0, 0, 0, 0, 1), (1, 1, 1, 1, 1)]]
    fast = grid_ranks(g, covs)
    slow = [mat_rank(b_form_at(g, f)) for f in covs]
    assert fast == slow


# ---------------------------------------------------------------------------
# the MD verdict
# ---------------------------------------------------------------------------

def test_md_common_factor_rule():
    v = md_check(g51())
    assert (v.kind, v.max_dim, v.proof) == ("IsMD", 4, "common-factor")


def test_md_pfaffian_vanishing_rule():
    v = md_check(build("5.3.7"))
    assert (v.kind, v.max_dim, v.proof) == ("IsMD", 2, "pfaffian-vanishing")


def test_md_zero_form_rule():
    v = md_check(LieAlgebra.abelian(5))
    assert (v.kind, v.max_dim, v.proof) == ("IsMD", 0, "zero-form")


def test_md_rejects_candidate_with_mixed_ranks():
    v = md_check(g523())
    assert v.kind == "NotMD"
    (low_f, low_r), (high_f, high_r) = v.witness_low, v.witness_high
    assert 0 < low_r < high_r
    assert minor_rank(b_form_at(g523(), low_f)) == low_r == 2
    assert minor_rank(b_form_at(g523(), high_f)) == high_r == 4


def test_md_witnesses_are_first_in_enumeration_order():
    # the canonical enumeration is lexicographic from (-r,...,-r); the
    # witness for each rank stratum is its first covector in that order
    v = md_check(g523())
    assert v.witness_high[0] == (-2, -2, -2, -2, -2)
    assert v.witness_low[0] == (-2, -2, -2, -2, 0)


def test_md_rejects_diagonal_pair_specimen():
    v = md_check(build("rejected.3.2a"))
    assert v.kind == "NotMD"
    assert v.witness_low[1] == 2 and v.witness_high[1] == 4


def test_md_requires_solvable():
    sl2ish = LieAlgebra.from_brackets(
        3, [(1, 2, {3: 1}), (1, 3, {1: -2}), (2, 3, {2: 2})])
    padded = sl2ish.direct_sum(LieAlgebra.abelian(2))
    with pytest.raises(ValueError, match="solvable"):
        md_check(padded)


def test_md_requires_dim_5():
    with pytest.raises(ValueError, match="dimension 5"):
        md_check(LieAlgebra.abelian(4))


def test_md_verdict_json_shape():
    v = md_check(g523())
    doc = v.to_dict(histogram={0: 1, 2: 2, 4: 3})
    assert set(doc) == {"verdict", "max_dim", "proof", "witnesses", "histogram"}
    assert doc["verdict"] == "NotMD"
    assert [w["rank"] for w in doc["witnesses"]] == [2, 4]
    assert json.loads(json.dumps(doc)) == doc


def test_md_inconclusive_serialization():
    from liemd.kirillov import MDVerdict
    v = MDVerdict(kind="Inconclusive", max_rank_attained=4,
                  pfaffian_status="nonzero", samples_tested=3325)
    doc = v.to_dict()
    assert doc["verdict"] == "Inconclusive"
    assert doc["evidence"]["max_rank_attained"] == 4
    assert doc["evidence"]["samples_tested"] == 3325


# ---------------------------------------------------------------------------
# covariance under change of basis
# ---------------------------------------------------------------------------

def test_orbit_dim_covariance():
    rng = random.Random(19)
    g = g523()
    for _ in range(10):
        p = random_invertible(rng, 5)
        h = g.change_of_basis(p)
        for _ in range(10):
            f = [random_rational(rng) for _ in range(5)]
            assert orbit_dim(h, transport_covector(f, p)) == orbit_dim(g, f)


def test_rank_profile_covariance():
    rng = random.Random(21)
    grid = GridSpec(radius=1, extra_random_samples=20, seed=8)
    for g in (g51(), g523(), build("5.3.5", FamilyParams(lambdas=(2,)))):
        for _ in range(5):
            p = random_invertible(rng, 5)
            h = g.change_of_basis(p)
            base = rank_profile(g, grid)
            moved = rank_profile(h, grid, transport=p.transpose())
            assert moved.histogram == base.histogram
            for r, w in moved.witnesses.items():
                assert orbit_dim(h, w) == r


# ---------------------------------------------------------------------------
# rank profiles and maximality
# ---------------------------------------------------------------------------

def test_rank_profile_abelian():
    prof = rank_profile(LieAlgebra.abelian(5), GridSpec(radius=1, extra_random_samples=5))
    assert prof.histogram == {0: 243 + 5}


def test_rank_profile_counts_radius1():
    prof = rank_profile(g51(), GridSpec(radius=1, extra_random_samples=0))
    assert prof.histogram == {0: 81, 4: 162}
    assert prof.witnesses[0] == (-1, -1, -1, -1, 0)
    assert prof.witnesses[4] == (-1, -1, -1, -1, -1)


def test_rank_profile_rejected_has_two_nonzero_strata():
    prof = rank_profile(g523())
    assert prof.histogram.get(2, 0) > 0 and prof.histogram.get(4, 0) > 0


def test_maximality_holds_for_md_instances():
    assert nonvanishing_maximality_check(build("5.2.1")) is None
    assert nonvanishing_maximality_check(build("5.4.5")) is None
    assert nonvanishing_maximality_check(LieAlgebra.abelian(5)) is None


def test_maximality_requires_ismd():
    with pytest.raises(ValueError, match="IsMD"):
        nonvanishing_maximality_check(g523())


def test_md_verdict_consistent_with_grid_oracle(catalog_samples):
    # IsMD -> the exhaustive radius-2 grid sees ranks within {0, max};
    # NotMD -> it sees two distinct nonzero ranks
    for label, _, _, g in catalog_samples:
        verdict = md_check(g)
        observed = set(rank_profile(g).histogram)
        if verdict.kind == "IsMD":
            assert observed <= {0, verdict.max_dim}, label
        elif verdict.kind == "NotMD":
            assert len({r for r in observed if r > 0}) >= 2, label


def test_maximality_counterexample_for_discrepancy_family():
    g = build("5.2.2", FamilyParams(lambdas=(2,)))
    violator = nonvanishing_maximality_check(g, max_dim=4)
    assert violator is not None
    assert orbit_dim(g, violator) != 4
    g1 = g.derived_ideal()
    assert any(sum(a * b for a, b in zip(violator, v)) != 0 for v in g1.basis())

"""Torus search, Cartan splitting, weight decomposition, audit tests.

Fixpoint counts are cross-checked against an in-test brute force over
matrix idempotents, and every structural claim of a decomposition is
re-verified from the bracket directly.
"""
from __future__ import annotations

import dataclasses

import pytest

from lie2 import (FIELD_CAVEAT, BudgetExceeded, InvalidInput,
                  NotSimultaneouslyDiagonalizable, NotTwoMapClosed,
                  RestrictedAlgebra, SplitFailed, Torus, audit_decomposition,
                  catalog, cartan_split, is_torus, max_tori, weight_decompose)
from lie2.field import GF, GF2, Subspace
from lie2.liealg import LieAlgebra
from lie2.toruscartan import toral_elements


def ra_of(name: str) -> RestrictedAlgebra:
    entry = catalog(name)
    return RestrictedAlgebra(entry.algebra, entry.two_map)


def gl_basis_vec(n: int, r: int, c: int) -> tuple:
    v = [0] * (n * n)
    v[r * n + c] = 1
    return tuple(v)


def idempotent_count_oracle(n: int) -> int:
    """Brute force matrix idempotents over F2, including zero."""
    count = 0
    for code in range(1 << (n * n)):
        m = [[(code >> (i * n + j)) & 1 for j in range(n)] for i in range(n)]
        sq = [[sum(m[i][k] & m[k][j] for k in range(n)) & 1 for j in range(n)]
              for i in range(n)]
        if sq == m:
            count += 1
    return count


FIXPOINTS_INCLUDING_ZERO = {"heis3": 1, "sl2": 2, "gl2": 8, "w11_p2": 3,
                            "sl3": 29, "gl3": 58}


@pytest.mark.parametrize("name", sorted(FIXPOINTS_INCLUDING_ZERO))
def test_toral_element_counts_frozen(name):
    fx = toral_elements(ra_of(name))
    assert len(fx) == FIXPOINTS_INCLUDING_ZERO[name]
    assert (0,) * catalog(name).algebra.dim in fx


@pytest.mark.parametrize("n", [2, 3])
def test_gl_fixpoints_match_idempotent_oracle(n):
    # the 2-map of gl(n) is matrix squaring, so fixpoints = idempotents
    assert len(toral_elements(ra_of(f"gl{n}"))) == idempotent_count_oracle(n)


def test_toral_elements_budget_and_field_guards():
    with pytest.raises(BudgetExceeded):
        toral_elements(ra_of("gl2"), budget=8)
    alg = LieAlgebra(GF(3), 1, {})
    ra = RestrictedAlgebra(alg, ((0,),))
    with pytest.raises(InvalidInput):
        toral_elements(ra)


MAX_TORUS_EXPECT = {
    "heis3": (0, 0),
    "sl2": (1, 1),
    "gl2": (2, 7),
    "w11_p2": (1, 2),
    "sl3": (2, 28),
    "gl3": (3, 57),
}


@pytest.mark.parametrize("name", sorted(MAX_TORUS_EXPECT))
def test_max_tori_exhaustive_ranks(name):
    rank, seen = MAX_TORUS_EXPECT[name]
    rep = max_tori(ra_of(name))
    assert rep.rank_lb == rank
    assert rep.fixpoints_seen == seen
    assert rep.exhaustive and rep.method == "exhaustive"
    assert rep.caveat == FIELD_CAVEAT
    assert rep.torus.rank == rank
    # the reported torus really is one
    if rank:
        check = is_torus(ra_of(name), rep.torus.space)
        assert check.is_torus and check.torus.rank == rank


def test_sl3_has_no_rank3_torus_over_f2():
    """Exhaustive sweep of all 2^8 vectors: toral rank caps at 2 here."""
    rep = max_tori(ra_of("sl3"))
    assert rep.exhaustive
    assert rep.rank_lb == 2
    assert rep.fixpoints_seen == 28


def test_max_tori_greedy_fallback():
    rep = max_tori(ra_of("gl2"), node_budget=1, restarts=16, seed=5)
    assert not rep.exhaustive and rep.method == "greedy"
    assert rep.rank_lb == 2   # I commutes with everything, greedy cannot stall at 1
    assert rep.caveat == FIELD_CAVEAT


def test_is_torus_verdicts_gl2():
    ra = ra_of("gl2")
    diag = Subspace(GF2, 4, [gl_basis_vec(2, 0, 0), gl_basis_vec(2, 1, 1)])
    rep = is_torus(ra, diag)
    assert rep.is_torus and rep.abelian and rep.injective
    assert rep.torus.toral_basis == ((1, 0, 0, 0), (0, 0, 0, 1))

    # E12 squares to zero: closed but not injective
    rep = is_torus(ra, Subspace(GF2, 4, [gl_basis_vec(2, 0, 1)]))
    assert not rep.is_torus and rep.abelian and not rep.injective

    # E11, E12 span a closed but non-abelian subspace
    rep = is_torus(ra, Subspace(GF2, 4, [gl_basis_vec(2, 0, 0),
                                         gl_basis_vec(2, 0, 1)]))
    assert not rep.is_torus and not rep.abelian

    # E12 + E21 squares to the identity, outside its own line
    with pytest.raises(NotTwoMapClosed):
        is_torus(ra, Subspace(GF2, 4, [(0, 1, 1, 0)]))


def test_zero_torus_is_torus():
    rep = is_torus(ra_of("heis3"), Subspace(GF2, 3))
    assert rep.is_torus and rep.torus.rank == 0


def test_cartan_split_gl2_diagonal():
    ra = ra_of("gl2")
    torus = is_torus(ra, Subspace(GF2, 4, [(1, 0, 0, 0), (0, 0, 0, 1)])).torus
    split = cartan_split(ra, torus)
    assert split.h == torus.space
    assert split.nil.dim == 0


def test_cartan_split_heis3_rank0():
    ra = ra_of("heis3")
    split = cartan_split(ra, Torus(Subspace(GF2, 3), ()))
    assert split.h.dim == 3
    assert split.nil.dim == 3


def test_cartan_split_sl2_fails():
    """sl2's nil candidates e, f close onto the central h: not a subalgebra."""
    ra = ra_of("sl2")
    torus = max_tori(ra).torus
    assert torus.rank == 1
    with pytest.raises(SplitFailed):
        cartan_split(ra, torus)


DIM_PATTERN_EXPECT = {
    "gl2": {"toral_rank": 2, "nil_dim": 0, "root_dims": {"11": 2}},
    "gl3": {"toral_rank": 3, "nil_dim": 0,
            "root_dims": {"011": 2, "101": 2, "110": 2}},
    "sl3": {"toral_rank": 2, "nil_dim": 0,
            "root_dims": {"01": 2, "10": 2, "11": 2}},
    "heis3": {"toral_rank": 0, "nil_dim": 3, "root_dims": {}},
}


@pytest.mark.parametrize("name", sorted(DIM_PATTERN_EXPECT))
def test_weight_decompose_dim_patterns(name):
    ra = ra_of(name)
    dec = weight_decompose(ra, max_tori(ra).torus)
    assert dec.dim_pattern() == DIM_PATTERN_EXPECT[name]
    total = dec.h.dim + sum(sp.dim for sp in dec.weights.values())
    assert total == ra.algebra.dim


@pytest.mark.parametrize("name", ["gl2", "gl3", "sl3", "heis3"])
def test_grading_bracket_containment(name):
    """[g_lam, g_mu] lands in g_(lam+mu), with the Cartan as weight zero."""
    ra = ra_of(name)
    alg = ra.algebra
    dec = weight_decompose(ra, max_tori(ra).torus)
    r = dec.rank
    zero = (0,) * r
    graded = dict(dec.weights)
    graded[zero] = dec.h
    for lam, u in graded.items():
        for mu, v in graded.items():
            target = tuple(a ^ b for a, b in zip(lam, mu))
            tgt = graded.get(target, Subspace(alg.gf, alg.dim))
            for a in u.rows:
                for b in v.rows:
                    assert tgt.contains(alg.bracket(a, b))


def test_weight_vectors_satisfy_eigen_equations():
    ra = ra_of("sl3")
    dec = weight_decompose(ra, max_tori(ra).torus)
    for lam, sp in dec.weights.items():
        for v in sp.rows:
            for i, t in enumerate(dec.torus.toral_basis):
                got = ra.algebra.bracket(t, v)
                assert got == (tuple(v) if lam[i] else (0,) * 8)


def test_toral_coords_and_root_value():
    ra = ra_of("gl3")
    dec = weight_decompose(ra, max_tori(ra).torus)
    basis = dec.torus.toral_basis
    assert len(basis) == 3
    for i, t in enumerate(basis):
        c = dec.toral_coords(t)
        assert c == tuple(1 if j == i else 0 for j in range(3))
    lam = dec.roots()[0]
    val = dec.root_value(lam, basis[0])
    assert val == lam[0]
    with pytest.raises(InvalidInput):
        dec.toral_coords((1,) * 9 if not dec.torus.space.contains((1,) * 9)
                         else (0, 1) + (1,) * 7)


def test_weight_decompose_requires_toral_basis():
    ra = ra_of("sl3")
    rep = max_tori(ra)
    bogus = Torus(rep.torus.space, None)
    with pytest.raises(InvalidInput):
        weight_decompose(ra, bogus)


def test_non_diagonalizable_pseudo_torus_detected():
    # span(x) in heis3 with x declared "toral": ad(x) is nilpotent, not
    # idempotent, so joint eigenspaces cannot fill the algebra
    ra = ra_of("heis3")
    fake = Torus(Subspace(GF2, 3, [(1, 0, 0)]), ((1, 0, 0),))
    with pytest.raises(NotSimultaneouslyDiagonalizable):
        weight_decompose(ra, fake)


AUDIT_NAMES = ["eigen_recheck", "one_dim_root_annihilation",
               "root_bracket_kernel", "iso_rule_transport"]


@pytest.mark.parametrize("name", ["gl2", "gl3", "sl3", "heis3"])
def test_audits_pass_on_catalog(name):
    ra = ra_of(name)
    dec = weight_decompose(ra, max_tori(ra).torus)
    rep = audit_decomposition(dec)
    assert rep.ok
    assert sorted(rep.checks) == sorted(AUDIT_NAMES)
    for check in rep.checks.values():
        assert check.passed and not check.failures


def test_iso_rule_audit_triggers_on_sl3_and_gl3():
    """Sums like E12+E21 square onto the torus and force dimension transport."""
    for name, want in (("sl3", 6), ("gl3", 6), ("gl2", 0)):
        ra = ra_of(name)
        dec = weight_decompose(ra, max_tori(ra).torus)
        check = audit_decomposition(dec).checks["iso_rule_transport"]
        assert check.triggered == want, name
        assert check.passed


def test_eigen_audit_catches_tampered_weights():
    ra = ra_of("sl3")
    dec = weight_decompose(ra, max_tori(ra).torus)
    lams = dec.roots()
    swapped = dict(dec.weights)
    swapped[lams[0]], swapped[lams[1]] = swapped[lams[1]], swapped[lams[0]]
    tampered = dataclasses.replace(dec, weights=swapped)
    rep = audit_decomposition(tampered)
    assert not rep.ok
    assert not rep.checks["eigen_recheck"].passed
    assert rep.checks["eigen_recheck"].failures


def test_one_dim_audit_triggers_when_one_dim_roots_exist():
    # abelian toy with a handmade decomposition is overkill; w11_p2 has a
    # rank-1 torus whose single root space is 1-dimensional
    ra = ra_of("w11_p2")
    dec = weight_decompose(ra, max_tori(ra).torus)
    assert dec.dim_pattern() == {"toral_rank": 1, "nil_dim": 0,
                                 "root_dims": {"1": 1}}
    rep = audit_decomposition(dec)
    assert rep.ok
    assert rep.checks["one_dim_root_annihilation"].triggered == 1

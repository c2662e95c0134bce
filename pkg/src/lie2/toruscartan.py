"""Tori, Cartan subalgebras, weight space decompositions, and their audits.

A torus here is an abelian subspace closed under the 2-map on which squaring
is injective.  Toral bases (bases of 2-map fixpoints) give commuting
idempotent ad-operators, so joint eigenspaces over the prime field decompose
the algebra; the four audit passes re-verify the eigenvalue equations and
the structural facts the downstream case analysis relies on.

Everything is computed over the given finite field.  Maximal torus searches
are exhaustive over that field when they fit in the node budget, otherwise
greedy with seeded restarts; either way the reported rank is a lower bound
for the rank over an algebraic closure, never an upper bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (BudgetExceeded, InternalInconsistency, InvalidInput,
                     NotSimultaneouslyDiagonalizable, NotTwoMapClosed, SplitFailed)
from .field import (Mat, Subspace, Vec, full_space, vec_is_zero, zero_vec)
from .liealg import centralizer, subspace_bracket
from .restricted import (RestrictedAlgebra, classify_element, jcs_decompose,
                         two_map_eval)

FIELD_CAVEAT = ("computed over GF(2^k), not an algebraic closure; "
                "toral ranks are lower bounds and maximality is relative to this field")


def toral_elements(ra: RestrictedAlgebra, budget: int = 1 << 20) -> List[Vec]:
    """All fixpoints of the 2-map, by exhaustive sweep of the whole algebra."""
    alg = ra.algebra
    if alg.gf.degree > 2:
        raise InvalidInput("exhaustive toral sweep supports field degree <= 2")
    total = alg.gf.order ** alg.dim
    if total > budget:
        raise BudgetExceeded(f"sweep of {total} vectors exceeds budget {budget}")
    out = []
    q = alg.gf.order
    n = alg.dim
    for idx in range(total):
        v = []
        t = idx
        for _ in range(n):
            v.append(t % q)
            t //= q
        v = tuple(v)
        if two_map_eval(ra, v) == v:
            out.append(v)
    return out


@dataclass
class Torus:
    space: Subspace
    toral_basis: Optional[Tuple[Vec, ...]]

    @property
    def rank(self) -> int:
        return self.space.dim


@dataclass
class TorusReport:
    is_torus: bool
    abelian: bool
    injective: bool
    torus: Optional[Torus]


def _squaring_matrix(ra: RestrictedAlgebra, s: Subspace) -> Mat:
    """Matrix of the squaring operator in s-coordinates (Frobenius-twisted)."""
    cols = []
    for r in s.rows:
        c = s.coords(two_map_eval(ra, r))
        if c is None:
            raise NotTwoMapClosed("subspace is not closed under the 2-map")
        cols.append(c)
    return Mat(ra.algebra.gf, list(zip(*cols)), ncols=s.dim) if s.dim else \
        Mat(ra.algebra.gf, [], ncols=0)


def is_torus(ra: RestrictedAlgebra, s: Subspace) -> TorusReport:
    """Closure is a precondition (raises NotTwoMapClosed); the rest is reported."""
    alg = ra.algebra
    for i, a in enumerate(s.rows):
        if not s.contains(two_map_eval(ra, a)):
            raise NotTwoMapClosed(f"square of basis row {i} leaves the subspace")
        for b in s.rows[i + 1:]:
            if not s.contains(alg.bracket(a, b)):
                raise NotTwoMapClosed("bracket of basis rows leaves the subspace")
    abelian = all(vec_is_zero(alg.bracket(a, b))
                  for i, a in enumerate(s.rows) for b in s.rows[i + 1:])
    if not abelian:
        return TorusReport(False, False, False, None)
    if s.dim == 0:
        return TorusReport(True, True, True, Torus(s, ()))
    m = _squaring_matrix(ra, s)
    injective = len(m.kernel()) == 0
    if not injective:
        return TorusReport(False, True, False, None)
    return TorusReport(True, True, True, Torus(s, _toral_basis(ra, s, m)))


def _toral_basis(ra: RestrictedAlgebra, s: Subspace, m: Mat) -> Optional[Tuple[Vec, ...]]:
    """Basis of fixpoints spanning s, or None when fixpoints span less."""
    gf = ra.algebra.gf
    d = s.dim
    if d == 0:
        return ()
    if gf.degree == 1:
        fx = Mat(gf, [tuple(m.rows[i][j] ^ (1 if i == j else 0) for j in range(d))
                      for i in range(d)], ncols=d).kernel()
        if len(fx) < d:
            return None
        return tuple(s.combo(c) for c in fx)
    if gf.order ** d > 1 << 16:
        raise BudgetExceeded("fixpoint sweep of the subspace is too large")
    chosen: List[Vec] = []
    span = Subspace(gf, s.ambient)
    for v in s.vectors():
        if vec_is_zero(v) or span.contains(v):
            continue
        if two_map_eval(ra, v) == v:
            chosen.append(v)
            span = span.add_vec(v)
            if span.dim == d:
                return tuple(chosen)
    return None


@dataclass
class MaxTorusReport:
    rank_lb: int
    torus: Torus
    exhaustive: bool
    method: str
    fixpoints_seen: int
    caveat: str = FIELD_CAVEAT


def max_tori(ra: RestrictedAlgebra, sweep_budget: int = 1 << 20,
             node_budget: int = 1 << 20, restarts: int = 32,
             seed: int = 0) -> MaxTorusReport:
    """Largest independent pairwise-commuting set of 2-map fixpoints.

    The span of such a set is a torus with that set as toral basis, and every
    torus with a toral basis arises this way, so over the given field this is
    the maximal achievable toral rank through toral bases.  Exhaustive DFS
    under the node budget, otherwise greedy over seeded candidate orders.
    """
    alg = ra.algebra
    fixpoints = [v for v in toral_elements(ra, budget=sweep_budget) if not vec_is_zero(v)]
    m = len(fixpoints)
    if m == 0:
        return MaxTorusReport(0, Torus(Subspace(alg.gf, alg.dim), ()), True,
                              "exhaustive", 0)
    commute = [[vec_is_zero(alg.bracket(fixpoints[i], fixpoints[j]))
                for j in range(m)] for i in range(m)]
    best: List[int] = []
    nodes = 0
    aborted = False

    def dfs(start: int, chosen: List[int], span: Subspace):
        nonlocal best, nodes, aborted
        if aborted:
            return
        if len(chosen) > len(best):
            best = list(chosen)
        for idx in range(start, m):
            if len(chosen) + (m - idx) <= len(best):
                return
            nodes += 1
            if nodes > node_budget:
                aborted = True
                return
            if span.contains(fixpoints[idx]):
                continue
            if all(commute[idx][c] for c in chosen):
                chosen.append(idx)
                dfs(idx + 1, chosen, span.add_vec(fixpoints[idx]))
                chosen.pop()

    dfs(0, [], Subspace(alg.gf, alg.dim))
    method = "exhaustive"
    if aborted:
        method = "greedy"
        rng = random.Random(seed)
        for _ in range(restarts):
            order = list(range(m))
            rng.shuffle(order)
            chosen: List[int] = []
            span = Subspace(alg.gf, alg.dim)
            for idx in order:
                if span.contains(fixpoints[idx]):
                    continue
                if all(commute[idx][c] for c in chosen):
                    chosen.append(idx)
                    span = span.add_vec(fixpoints[idx])
            if len(chosen) > len(best):
                best = chosen
    basis = tuple(fixpoints[i] for i in best)
    span = Subspace(alg.gf, alg.dim, basis)
    if span.dim != len(basis):
        raise InternalInconsistency("chosen fixpoints are not independent")
    return MaxTorusReport(span.dim, Torus(span, basis), not aborted, method, m)


@dataclass
class CartanSplit:
    torus: Torus
    h: Subspace
    nil: Subspace


def cartan_split(ra: RestrictedAlgebra, torus: Torus) -> CartanSplit:
    """Centralizer of the torus split as torus plus 2-nilpotent part."""
    alg = ra.algebra
    h = centralizer(alg, torus.space)
    if not h.contains_subspace(torus.space):
        raise SplitFailed("torus is not abelian, centralizer misses it")
    nil_vecs = []
    for b in h.rows:
        parts = jcs_decompose(ra, b)
        if not torus.space.contains(parts.semisimple):
            raise SplitFailed(
                "semisimple part of a centralizer element falls outside the torus; "
                "the torus is not maximal over this field")
        nil_vecs.append(parts.nilpotent)
    nil = Subspace(alg.gf, alg.dim, nil_vecs)
    if torus.space.intersect(nil).dim != 0:
        raise SplitFailed("torus and nilpotent part overlap")
    if torus.space.add(nil) != h:
        raise SplitFailed("torus plus nilpotent part does not fill the centralizer")
    if not nil.contains_subspace(subspace_bracket(alg, nil, nil)):
        raise SplitFailed("nilpotent part is not a subalgebra")
    for b in nil.rows:
        if not nil.contains(two_map_eval(ra, b)):
            raise SplitFailed("nilpotent part is not 2-map closed")
    limit = 1 << 12
    if alg.gf.order ** nil.dim <= limit:
        elems = list(nil.vectors())
    else:
        rng = random.Random(0)
        elems = list(nil.rows)
        for _ in range(64):
            elems.append(nil.combo(tuple(rng.randrange(alg.gf.order)
                                         for _ in range(nil.dim))))
    for v in elems:
        if not classify_element(ra, v).two_nilpotent:
            raise SplitFailed("nilpotent part contains a non-2-nilpotent element")
    return CartanSplit(torus, h, nil)


@dataclass
class CartanDecomposition:
    ra: RestrictedAlgebra
    torus: Torus
    h: Subspace
    nil: Subspace
    weights: Dict[Tuple[int, ...], Subspace]

    @property
    def rank(self) -> int:
        return len(self.torus.toral_basis or ())

    def roots(self) -> List[Tuple[int, ...]]:
        return sorted(self.weights)

    def toral_coords(self, t: Sequence[int]) -> Vec:
        """Coordinates of a torus element in the toral basis."""
        basis = self.torus.toral_basis
        if not basis:
            if vec_is_zero(tuple(t)):
                return ()
            raise InvalidInput("vector is not in the torus")
        mat = Mat(self.ra.algebra.gf, list(zip(*basis)), ncols=len(basis))
        c = mat.solve(tuple(t))
        if c is None:
            raise InvalidInput("vector is not in the torus")
        return c

    def root_value(self, root: Sequence[int], t: Sequence[int]) -> int:
        """Evaluate a root (toral-basis functional) on a torus element."""
        gf = self.ra.algebra.gf
        acc = 0
        for r, c in zip(root, self.toral_coords(t)):
            if r and c:
                acc ^= c if r == 1 else gf.mul(r, c)
        return acc

    def toral_part(self, x: Sequence[int]) -> Tuple[Vec, Vec]:
        """Split an element of the centralizer as torus part plus nil part."""
        gf = self.ra.algebra.gf
        n = self.ra.algebra.dim
        stacked = Mat(gf, list(self.torus.space.rows) + list(self.nil.rows),
                      ncols=n).transpose()
        sol = stacked.solve(tuple(x))
        if sol is None:
            raise InvalidInput("element is not in the centralizer of the torus")
        td = self.torus.space.dim
        return self.torus.space.combo(sol[:td]), self.nil.combo(sol[td:])

    def dim_pattern(self) -> Dict[str, object]:
        return {
            "toral_rank": self.rank,
            "nil_dim": self.nil.dim,
            "root_dims": {"".join(map(str, r)): self.weights[r].dim
                          for r in self.roots()},
        }


def weight_decompose(ra: RestrictedAlgebra, torus: Torus) -> CartanDecomposition:
    """Joint eigenspace decomposition for the toral basis, eigenvalues in F2.

    The ad operators of toral basis elements are commuting idempotents, so
    the prime-field eigenvalue tuples must account for the whole algebra;
    anything else raises NotSimultaneouslyDiagonalizable.
    """
    alg = ra.algebra
    gf = alg.gf
    n = alg.dim
    if torus.toral_basis is None:
        raise InvalidInput("torus has no toral basis over this field")
    basis = torus.toral_basis
    r = len(basis)
    ads = [alg.ad_matrix(t) for t in basis]
    ident = Mat.identity(gf, n)
    spaces: Dict[Tuple[int, ...], Subspace] = {}
    total = 0
    for code in range(1 << r):
        lam = tuple((code >> i) & 1 for i in range(r))
        stacked = None
        for i in range(r):
            m = ads[i].add(ident) if lam[i] else ads[i]
            stacked = m if stacked is None else stacked.vstack(m)
        if stacked is None:
            space = full_space(gf, n)
        else:
            space = Subspace(gf, n, stacked.kernel())
        if space.dim:
            spaces[lam] = space
        total += space.dim
    if total != n:
        raise NotSimultaneouslyDiagonalizable(
            f"joint eigenspaces cover {total} of {n} dimensions")
    zero = (0,) * r
    h = spaces.pop(zero, Subspace(gf, n))
    expect_h = centralizer(alg, torus.space)
    if r and h != expect_h:
        raise InternalInconsistency("weight-zero space differs from the centralizer")
    split = cartan_split(ra, torus)
    if split.h != h and r:
        raise InternalInconsistency("centralizer mismatch between split and weights")
    return CartanDecomposition(ra, torus, h, split.nil, spaces)


# ---------------------------------------------------------------------------
# audits


@dataclass
class AuditCheck:
    name: str
    passed: bool
    checked: int
    triggered: int = 0
    failures: List[str] = dc_field(default_factory=list)


@dataclass
class AuditReport:
    checks: Dict[str, AuditCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _audit_eigen(dec: CartanDecomposition) -> AuditCheck:
    """Re-verify [t_i, v] = lambda_i v for every weight vector and h."""
    alg = dec.ra.algebra
    basis = dec.torus.toral_basis
    checked = 0
    fails: List[str] = []
    items = [((0,) * len(basis), dec.h)] + [(lam, sp) for lam, sp in dec.weights.items()]
    for lam, sp in items:
        for v in sp.rows:
            for i, t in enumerate(basis):
                got = alg.bracket(t, v)
                want = tuple(v) if lam[i] else zero_vec(alg.dim)
                checked += 1
                if got != want:
                    fails.append(f"eigen equation failed at weight {lam}, basis {i}")
    return AuditCheck("eigen_recheck", not fails, checked, failures=fails)


def _audit_one_dim(dec: CartanDecomposition) -> AuditCheck:
    """Nil part of the Cartan must annihilate every 1-dimensional root space."""
    alg = dec.ra.algebra
    checked = 0
    triggered = 0
    fails: List[str] = []
    for lam, sp in dec.weights.items():
        if sp.dim != 1:
            continue
        triggered += 1
        for u in dec.nil.rows:
            checked += 1
            if not vec_is_zero(alg.bracket(u, sp.rows[0])):
                fails.append(f"nil part acts nontrivially on 1-dim root space {lam}")
    return AuditCheck("one_dim_root_annihilation", not fails, checked, triggered, fails)


def _audit_toral_brackets(dec: CartanDecomposition) -> AuditCheck:
    """Toral parts of [g_xi, g_xi] must lie in the kernel of xi."""
    alg = dec.ra.algebra
    checked = 0
    fails: List[str] = []
    for lam, sp in dec.weights.items():
        for i, a in enumerate(sp.rows):
            for b in sp.rows[i + 1:]:
                w = alg.bracket(a, b)
                checked += 1
                if not dec.h.contains(w):
                    fails.append(f"[g_xi, g_xi] left the Cartan at root {lam}")
                    continue
                t_part, _ = dec.toral_part(w)
                if dec.root_value(lam, t_part) != 0:
                    fails.append(f"toral part of a root-space bracket escapes Ker xi "
                                 f"at root {lam}")
    return AuditCheck("root_bracket_kernel", not fails, checked, failures=fails)


def _audit_iso_rule(dec: CartanDecomposition, combo_limit: int = 1 << 10) -> AuditCheck:
    """Dimension transport: nonzero toral squares pair root spaces bijectively.

    For e in g_xi with square t + n and t nonzero, every root eta with
    eta(t) = 1 must satisfy dim g_eta = dim g_eta+xi, with ad(e) injective in
    both directions.  Scans all nonzero prime-field combinations of each root
    space basis (the interesting witnesses are sums, not basis rows).
    """
    alg = dec.ra.algebra
    gf = alg.gf
    checked = 0
    triggered = 0
    fails: List[str] = []
    for lam, sp in dec.weights.items():
        if 1 << sp.dim > combo_limit:
            elems = list(sp.rows)
        else:
            elems = [sp.combo(tuple((code >> i) & 1 for i in range(sp.dim)))
                     for code in range(1, 1 << sp.dim)]
        for e in elems:
            if vec_is_zero(e):
                continue
            sq = two_map_eval(dec.ra, e)
            if vec_is_zero(sq):
                continue
            if not dec.h.contains(sq):
                fails.append(f"square of a root vector left the Cartan at {lam}")
                continue
            t_part, _ = dec.toral_part(sq)
            if vec_is_zero(t_part):
                continue
            for eta in dec.roots():
                if dec.root_value(eta, t_part) == 0:
                    continue
                triggered += 1
                target = tuple(a ^ b for a, b in zip(eta, lam))
                if any(target):
                    tgt_space = dec.weights.get(target, Subspace(gf, alg.dim))
                else:
                    tgt_space = dec.h
                src_space = dec.weights[eta]
                checked += 1
                if src_space.dim != tgt_space.dim:
                    fails.append(
                        f"root dims differ under transport: {eta} has {src_space.dim}, "
                        f"{target} has {tgt_space.dim}")
                    continue
                for space, other in ((src_space, tgt_space), (tgt_space, src_space)):
                    cols = []
                    bad = False
                    for v in space.rows:
                        w = alg.bracket(e, v)
                        cw = other.coords(w)
                        if cw is None:
                            fails.append(f"ad(e) image left the target root space "
                                         f"({eta} vs {target})")
                            bad = True
                            break
                        cols.append(cw)
                    if bad:
                        continue
                    if space.dim:
                        mat = Mat(gf, list(zip(*cols)), ncols=space.dim)
                        if len(mat.kernel()) != 0:
                            fails.append(f"ad(e) not injective between {eta} and {target}")
    return AuditCheck("iso_rule_transport", not fails, checked, triggered, fails)


def audit_decomposition(dec: CartanDecomposition) -> AuditReport:
    checks = [
        _audit_eigen(dec),
        _audit_one_dim(dec),
        _audit_toral_brackets(dec),
        _audit_iso_rule(dec),
    ]
    return AuditReport({c.name: c for c in checks})

"""Restricted (2-map) structure on characteristic-2 Lie algebras.

A 2-map is determined by its basis images: on a general vector it expands
quadratically, squares of coordinates on the basis images plus the mixed
bracket terms.  The key exact subroutines here are synthesis of a 2-map from
the bracket alone (a linear solve per basis element, with a certified absence
witness when no solution exists) and the semisimple/nilpotent decomposition
obtained from the Fitting decomposition of the squaring operator on the span
of 2-power iterates.  The squaring operator is only semilinear over GF(2^k),
so image and preimage computations carry an explicit Frobenius twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import InternalInconsistency, InvalidInput
from .field import GF, Mat, Subspace, Vec, basis_vec, vec_add, vec_is_zero, zero_vec
from .liealg import LieAlgebra, center


@dataclass(frozen=True)
class RestrictedAlgebra:
    """Algebra plus the 2-map's images of the basis vectors."""
    algebra: LieAlgebra
    two_map: Tuple[Vec, ...]

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.two_map) != n or any(len(v) != n for v in self.two_map):
            raise InvalidInput("two_map must give one image vector per basis element")


def two_map_eval(ra: RestrictedAlgebra, x: Sequence[int]) -> Vec:
    """Value of the 2-map on an arbitrary vector via quadratic expansion."""
    alg = ra.algebra
    gf = alg.gf
    n = alg.dim
    out = [0] * n
    for i, xi in enumerate(x):
        if xi:
            c = gf.mul(xi, xi)
            img = ra.two_map[i]
            for k in range(n):
                if img[k]:
                    out[k] ^= img[k] if c == 1 else gf.mul(c, img[k])
    for (i, j), cij in alg.table.items():
        s = gf.mul(x[i], x[j])
        if s:
            for k in range(n):
                if cij[k]:
                    out[k] ^= cij[k] if s == 1 else gf.mul(s, cij[k])
    return tuple(out)


def two_power(ra: RestrictedAlgebra, x: Sequence[int], m: int) -> Vec:
    """Iterated 2-map: x, x^[2], x^[4], ... taken m times."""
    v = tuple(x)
    for _ in range(m):
        v = two_map_eval(ra, v)
    return v


@dataclass
class RestrictedReport:
    ok: bool
    failing_indices: List[int]
    random_checked: int


def validate_restricted(ra: RestrictedAlgebra, random_checks: int = 100,
                        seed: int = 0) -> RestrictedReport:
    """Check ad(b_i) = ad(e_i)^2 on the basis, then randomized identities."""
    import random as _random

    alg = ra.algebra
    n = alg.dim
    bad = []
    for i in range(n):
        adi = alg.ad_matrix(basis_vec(n, i))
        if alg.ad_matrix(ra.two_map[i]) != adi.mul(adi):
            bad.append(i)
    done = 0
    if not bad:
        rng = _random.Random(seed)
        q = alg.gf.order
        for _ in range(random_checks):
            x = tuple(rng.randrange(q) for _ in range(n))
            y = tuple(rng.randrange(q) for _ in range(n))
            lam = rng.randrange(q)
            sq = two_map_eval(ra, x)
            adx = alg.ad_matrix(x)
            if alg.ad_matrix(sq) != adx.mul(adx):
                raise InternalInconsistency("derived 2-map identity failed on a vector")
            lx = tuple(alg.gf.mul(lam, c) for c in x)
            lam2 = alg.gf.mul(lam, lam)
            if two_map_eval(ra, lx) != tuple(alg.gf.mul(lam2, c) for c in sq):
                raise InternalInconsistency("2-map is not Frobenius-homogeneous")
            lhs = two_map_eval(ra, vec_add(x, y))
            rhs = vec_add(vec_add(sq, two_map_eval(ra, y)), alg.bracket(x, y))
            if lhs != rhs:
                raise InternalInconsistency("2-map addition rule failed")
            done += 1
    return RestrictedReport(not bad, bad, done)


@dataclass
class SynthesisReport:
    """Outcome of solving ad(y_i) = ad(e_i)^2 for every basis element."""
    two_map: Optional[Tuple[Vec, ...]]
    unique: bool
    center_dim: int
    missing_index: Optional[int] = None

    @property
    def restrictable(self) -> bool:
        return self.two_map is not None


def synthesize_two_map(alg: LieAlgebra) -> SynthesisReport:
    """Recover a 2-map from the bracket, or certify that none exists.

    For each basis element the condition is linear in the unknown image:
    y must satisfy ad(y) = ad(e_i)^2, and y -> ad(y) is linear.  Solutions
    are unique exactly when the center vanishes; otherwise each image is
    reduced modulo the center, which picks the lexicographically least
    representative of its coset.
    """
    n = alg.dim
    cols = []
    for j in range(n):
        adj = alg.ad_matrix(basis_vec(n, j))
        cols.append([x for row in adj.rows for x in row])
    lin = Mat(alg.gf, list(zip(*cols)), ncols=n)
    cen = center(alg)
    images = []
    for i in range(n):
        adi = alg.ad_matrix(basis_vec(n, i))
        sq = adi.mul(adi)
        rhs = [x for row in sq.rows for x in row]
        y = lin.solve(rhs)
        if y is None:
            return SynthesisReport(None, False, cen.dim, missing_index=i)
        images.append(cen.reduce(y))
    return SynthesisReport(tuple(images), cen.dim == 0, cen.dim)


# ---------------------------------------------------------------------------
# element classification and semisimple/nilpotent splitting


def _iterate_span(ra: RestrictedAlgebra, x: Sequence[int], start_power: int) -> Subspace:
    """Span of the 2-power iterates of x starting at the given power.

    Iterates pairwise commute, so once an iterate lands in the span of the
    earlier ones the span is invariant under the 2-map and the chain stops.
    """
    alg = ra.algebra
    v = two_power(ra, x, start_power)
    span = Subspace(alg.gf, alg.dim)
    for _ in range(alg.dim + 1):
        if span.contains(v):
            return span
        span = span.add_vec(v)
        v = two_map_eval(ra, v)
    if span.contains(v):
        return span
    raise InternalInconsistency("2-power iterate span failed to stabilize")


@dataclass
class ElementClass:
    label: str
    semisimple: bool
    two_nilpotent: bool
    nil_steps: Optional[int] = None


def classify_element(ra: RestrictedAlgebra, x: Sequence[int]) -> ElementClass:
    """Semisimple means x lies in the span of its own higher 2-powers."""
    alg = ra.algebra
    x = tuple(x)
    if vec_is_zero(x):
        return ElementClass("semisimple", True, True, nil_steps=0)
    nil_steps = None
    v = x
    for m in range(1, alg.dim + 2):
        v = two_map_eval(ra, v)
        if vec_is_zero(v):
            nil_steps = m
            break
    semisimple = _iterate_span(ra, x, 1).contains(x)
    if semisimple and nil_steps is not None:
        raise InternalInconsistency("nonzero element both semisimple and 2-nilpotent")
    if semisimple:
        return ElementClass("semisimple", True, False)
    if nil_steps is not None:
        return ElementClass("two_nilpotent", False, True, nil_steps=nil_steps)
    return ElementClass("mixed", False, False)


def _frob_coords(gf: GF, v: Sequence[int]) -> Vec:
    return tuple(gf.mul(c, c) for c in v)


def _sqrt_coords(gf: GF, v: Sequence[int]) -> Vec:
    return tuple(gf.sqrt(c) for c in v)


def _annihilator(sub: Subspace) -> Mat:
    """Matrix whose kernel is exactly the subspace (standard bilinear form)."""
    if sub.dim == 0:
        return Mat.identity(sub.gf, sub.ambient)
    rows = Mat(sub.gf, list(sub.rows), ncols=sub.ambient).kernel()
    return Mat(sub.gf, rows, ncols=sub.ambient)


@dataclass
class JcsParts:
    semisimple: Vec
    nilpotent: Vec


def jcs_decompose(ra: RestrictedAlgebra, x: Sequence[int]) -> JcsParts:
    """Split x into commuting semisimple and 2-nilpotent parts.

    Works inside W, the span of all 2-power iterates of x.  The squaring
    operator restricted to W is additive (Frobenius-semilinear over the
    field), so its stabilized image and kernel give a Fitting decomposition
    W = W_inf + N_inf; projecting x onto the two summands yields the parts.
    All claimed properties are re-verified before returning.
    """
    alg = ra.algebra
    gf = alg.gf
    x = tuple(x)
    w = _iterate_span(ra, x, 0)
    d = w.dim
    if d == 0:
        return JcsParts(zero_vec(alg.dim), zero_vec(alg.dim))
    # squaring in w-coordinates: sigma(c) = m_sq @ frob(c)
    img_cols = []
    for r in w.rows:
        c = w.coords(two_map_eval(ra, r))
        if c is None:
            raise InternalInconsistency("iterate span is not 2-map invariant")
        img_cols.append(c)
    m_sq = Mat(gf, list(zip(*img_cols)), ncols=d)

    def sigma_image(sub: Subspace) -> Subspace:
        vecs = [m_sq.mul_vec(_frob_coords(gf, b)) for b in sub.rows]
        return Subspace(gf, d, vecs)

    def sigma_preimage(sub: Subspace) -> Subspace:
        ann = _annihilator(sub)
        lin_pre = Subspace(gf, d, ann.mul(m_sq).kernel())
        return Subspace(gf, d, [_sqrt_coords(gf, b) for b in lin_pre.rows])

    w_inf = Subspace(gf, d, [tuple(1 if i == j else 0 for j in range(d))
                             for i in range(d)])
    for _ in range(d + 1):
        nxt = sigma_image(w_inf)
        if nxt == w_inf:
            break
        w_inf = nxt
    n_inf = Subspace(gf, d)
    for _ in range(d + 1):
        nxt = sigma_preimage(n_inf)
        if nxt == n_inf:
            break
        n_inf = nxt
    if w_inf.dim + n_inf.dim != d or w_inf.intersect(n_inf).dim != 0:
        raise InternalInconsistency("Fitting decomposition of squaring failed")
    cx = w.coords(x)
    if cx is None:
        raise InternalInconsistency("x escaped its own iterate span")
    stacked = Mat(gf, list(w_inf.rows) + list(n_inf.rows), ncols=d).transpose()
    sol = stacked.solve(cx)
    if sol is None:
        raise InternalInconsistency("could not project onto Fitting summands")
    s_coords = w_inf.combo(sol[:w_inf.dim])
    n_coords = n_inf.combo(sol[w_inf.dim:])
    s = w.combo(s_coords)
    nl = w.combo(n_coords)
    if vec_add(s, nl) != x:
        raise InternalInconsistency("semisimple + nilpotent parts do not sum to x")
    if not classify_element(ra, s).semisimple:
        raise InternalInconsistency("claimed semisimple part is not semisimple")
    if not classify_element(ra, nl).two_nilpotent:
        raise InternalInconsistency("claimed nilpotent part is not 2-nilpotent")
    if not vec_is_zero(alg.bracket(s, nl)):
        raise InternalInconsistency("semisimple and nilpotent parts do not commute")
    return JcsParts(s, nl)

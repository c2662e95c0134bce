"""Lie algebras over GF(2^k) given by sparse structure constants.

The bracket is stored only on basis pairs i < j; characteristic 2 makes the
bracket symmetric ([x,y] = -[y,x] = [y,x]), so the i > j values are the same
vectors and [x,x] = 0 holds automatically.  Everything downstream (series,
ideals, simplicity, centralizers) reduces to exact linear algebra.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, InvalidInput
from .field import (GF, GF2, Mat, Subspace, Vec, basis_vec, full_space,
                    vec_add, vec_is_zero, zero_vec)


class LieAlgebra:
    """Finite-dimensional algebra with an alternating bracket in char 2."""

    __slots__ = ("gf", "dim", "name", "labels", "table")

    def __init__(self, gf: GF, dim: int, table: Dict[Tuple[int, int], Sequence[int]],
                 name: str = "", labels: Optional[Sequence[str]] = None):
        if dim < 1:
            raise InvalidInput("algebra dimension must be positive")
        clean: Dict[Tuple[int, int], Vec] = {}
        for (i, j), v in table.items():
            if not (0 <= i < j < dim):
                raise InvalidInput(f"bad basis pair ({i},{j}) for dim {dim}")
            vv = tuple(v)
            if len(vv) != dim:
                raise InvalidInput("structure constant vector has wrong length")
            for c in vv:
                gf.check(c)
            if not vec_is_zero(vv):
                clean[(i, j)] = vv
        if labels is not None and len(labels) != dim:
            raise InvalidInput("label count does not match dimension")
        self.gf = gf
        self.dim = dim
        self.table = clean
        self.name = name
        self.labels = tuple(labels) if labels is not None else None

    def bracket_basis(self, i: int, j: int) -> Vec:
        if i == j:
            return zero_vec(self.dim)
        if i > j:
            i, j = j, i
        return self.table.get((i, j), zero_vec(self.dim))

    def bracket(self, x: Sequence[int], y: Sequence[int]) -> Vec:
        gf = self.gf
        out = [0] * self.dim
        for (i, j), c in self.table.items():
            s = gf.add(gf.mul(x[i], y[j]), gf.mul(x[j], y[i]))
            if s:
                for k in range(self.dim):
                    if c[k]:
                        out[k] ^= c[k] if s == 1 else gf.mul(s, c[k])
        return tuple(out)

    def ad_matrix(self, x: Sequence[int]) -> Mat:
        """Matrix of [x, -] acting on column vectors."""
        cols = [self.bracket(x, basis_vec(self.dim, j)) for j in range(self.dim)]
        return Mat(self.gf, list(zip(*cols)), ncols=self.dim)

    def __repr__(self) -> str:
        tag = self.name or "LieAlgebra"
        return f"{tag}(dim={self.dim}, {self.gf!r})"


@dataclass
class ValidationReport:
    ok: bool
    failing_triples: List[Tuple[int, int, int, Vec]]
    triples_checked: int
    random_checked: int


def jacobi_residual(alg: LieAlgebra, x: Sequence[int], y: Sequence[int],
                    z: Sequence[int]) -> Vec:
    a = alg.bracket(alg.bracket(x, y), z)
    b = alg.bracket(alg.bracket(y, z), x)
    c = alg.bracket(alg.bracket(z, x), y)
    return vec_add(vec_add(a, b), c)


def validate_lie(alg: LieAlgebra, random_checks: int = 200, seed: int = 0) -> ValidationReport:
    """Jacobi on every basis triple, plus randomized identity spot checks."""
    n = alg.dim
    failures = []
    count = 0
    for i in range(n):
        ei = basis_vec(n, i)
        for j in range(i + 1, n):
            ej = basis_vec(n, j)
            for k in range(j + 1, n):
                r = jacobi_residual(alg, ei, ej, basis_vec(n, k))
                count += 1
                if not vec_is_zero(r):
                    failures.append((i, j, k, r))
    rng = random.Random(seed)
    done = 0
    if not failures:
        for _ in range(random_checks):
            x = tuple(rng.randrange(alg.gf.order) for _ in range(n))
            y = tuple(rng.randrange(alg.gf.order) for _ in range(n))
            z = tuple(rng.randrange(alg.gf.order) for _ in range(n))
            if not vec_is_zero(jacobi_residual(alg, x, y, z)):
                raise AssertionError("random Jacobi failed after basis Jacobi passed")
            if not vec_is_zero(alg.bracket(x, x)):
                raise AssertionError("bracket is not alternating")
            lhs = alg.bracket(vec_add(x, y), z)
            rhs = vec_add(alg.bracket(x, z), alg.bracket(y, z))
            if lhs != rhs:
                raise AssertionError("bracket is not bilinear")
            done += 1
    return ValidationReport(not failures, failures, count, done)


def subspace_bracket(alg: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    vecs = [alg.bracket(a, b) for a in u.rows for b in v.rows]
    return Subspace(alg.gf, alg.dim, vecs)


def is_subalgebra(alg: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(subspace_bracket(alg, s, s))


def is_ideal(alg: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(subspace_bracket(alg, full_space(alg.gf, alg.dim), s))


@dataclass
class SeriesReport:
    kind: str
    dims: Tuple[int, ...]
    spaces: Tuple[Subspace, ...]


def derived_series(alg: LieAlgebra) -> SeriesReport:
    """g, [g,g], [[g,g],[g,g]], ... until the dimension stabilizes."""
    cur = full_space(alg.gf, alg.dim)
    spaces = [cur]
    while True:
        nxt = subspace_bracket(alg, cur, cur)
        if nxt == cur:
            break
        spaces.append(nxt)
        cur = nxt
        if cur.dim == 0:
            break
    return SeriesReport("derived", tuple(s.dim for s in spaces), tuple(spaces))


def lower_central_series(alg: LieAlgebra) -> SeriesReport:
    g = full_space(alg.gf, alg.dim)
    cur = g
    spaces = [cur]
    while True:
        nxt = subspace_bracket(alg, g, cur)
        if nxt == cur:
            break
        spaces.append(nxt)
        cur = nxt
        if cur.dim == 0:
            break
    return SeriesReport("lower_central", tuple(s.dim for s in spaces), tuple(spaces))


def is_nilpotent_algebra(alg: LieAlgebra) -> bool:
    return lower_central_series(alg).dims[-1] == 0


def is_solvable_algebra(alg: LieAlgebra) -> bool:
    return derived_series(alg).dims[-1] == 0


def ideal_closure(alg: LieAlgebra, seed: Subspace | Sequence[int]) -> Subspace:
    """Smallest ideal containing the seed; grows by [g, -] until stable."""
    if not isinstance(seed, Subspace):
        seed = Subspace(alg.gf, alg.dim, [tuple(seed)])
    cur = seed
    g = full_space(alg.gf, alg.dim)
    while True:
        nxt = cur.add(subspace_bracket(alg, g, cur))
        if nxt == cur:
            return cur
        cur = nxt


def center(alg: LieAlgebra) -> Subspace:
    """Kernel of every ad(e_j), stacked: since [x, e_j] = ad(e_j) x in char 2."""
    mats = [alg.ad_matrix(basis_vec(alg.dim, j)) for j in range(alg.dim)]
    stacked = mats[0]
    for m in mats[1:]:
        stacked = stacked.vstack(m)
    return Subspace(alg.gf, alg.dim, stacked.kernel())


def centralizer(alg: LieAlgebra, s: Subspace) -> Subspace:
    """Elements commuting with every vector of the subspace."""
    if s.dim == 0:
        return full_space(alg.gf, alg.dim)
    mats = [alg.ad_matrix(r) for r in s.rows]
    stacked = mats[0]
    for m in mats[1:]:
        stacked = stacked.vstack(m)
    return Subspace(alg.gf, alg.dim, stacked.kernel())


@dataclass
class SimplicityReport:
    simple: bool
    witness: Optional[Subspace]
    seeds_checked: int
    reason: str = ""


def is_simple(alg: LieAlgebra, budget: int = 1 << 20) -> SimplicityReport:
    """Sweep ideal closures of every 1-dimensional seed (projective points)."""
    n, q = alg.dim, alg.gf.order
    if n < 2:
        return SimplicityReport(False, None, 0, "dimension below 2")
    derived = subspace_bracket(alg, full_space(alg.gf, alg.dim), full_space(alg.gf, alg.dim))
    if derived.dim < n:
        reason = "abelian" if derived.dim == 0 else "derived subalgebra is a proper ideal"
        witness = None if derived.dim == 0 else derived
        return SimplicityReport(False, witness, 0, reason)
    points = (q ** n - 1) // (q - 1)
    if points > budget:
        raise BudgetExceeded(f"{points} projective seeds exceed budget {budget}")
    checked = 0
    for v in _projective_points(alg.gf, n):
        checked += 1
        cl = ideal_closure(alg, v)
        if cl.dim < n:
            return SimplicityReport(False, cl, checked, "proper ideal from seed")
    return SimplicityReport(True, None, checked, "all seeds generate the algebra")


def _projective_points(gf: GF, n: int):
    """One representative per line: first nonzero coordinate equals 1."""
    q = gf.order
    for lead in range(n):
        tail = n - lead - 1
        for idx in range(q ** tail):
            v = [0] * n
            v[lead] = 1
            t = idx
            for pos in range(lead + 1, n):
                v[pos] = t % q
                t //= q
            yield tuple(v)


# ---------------------------------------------------------------------------
# catalog


@dataclass
class CatalogEntry:
    algebra: LieAlgebra
    two_map: Optional[Tuple[Vec, ...]]
    description: str = ""


def _mat_vec_repr(m: Sequence[Sequence[int]]) -> Vec:
    return tuple(x for row in m for x in row)


def _mat_mul_f2(a, b, n):
    return tuple(tuple((sum(a[i][k] & b[k][j] for k in range(n)) & 1)
                       for j in range(n)) for i in range(n))


def _mat_add_f2(a, b, n):
    return tuple(tuple(a[i][j] ^ b[i][j] for j in range(n)) for i in range(n))


def algebra_from_matrices(name: str, mats: Sequence[Sequence[Sequence[int]]],
                          labels: Sequence[str],
                          with_squares: bool,
                          description: str = "") -> CatalogEntry:
    """Span of n x n F2 matrices under commutator; optional squaring 2-map."""
    gf = GF2
    d = len(mats)
    n = len(mats[0])
    basis_mat = Mat(gf, [_mat_vec_repr(m) for m in mats]).transpose()

    def express(m) -> Vec:
        v = basis_mat.solve(_mat_vec_repr(m))
        if v is None:
            raise InvalidInput(f"{name}: span not closed under the required product")
        return v

    table = {}
    for i in range(d):
        for j in range(i + 1, d):
            comm = _mat_add_f2(_mat_mul_f2(mats[i], mats[j], n),
                               _mat_mul_f2(mats[j], mats[i], n), n)
            table[(i, j)] = express(comm)
    alg = LieAlgebra(gf, d, table, name=name, labels=labels)
    two_map = None
    if with_squares:
        two_map = tuple(express(_mat_mul_f2(m, m, n)) for m in mats)
    return CatalogEntry(alg, two_map, description)


def _unit(n, r, c):
    return tuple(tuple(1 if (i, j) == (r, c) else 0 for j in range(n)) for i in range(n))


def _gl_entry(n: int) -> CatalogEntry:
    mats, labels = [], []
    for r in range(n):
        for c in range(n):
            mats.append(_unit(n, r, c))
            labels.append(f"E{r + 1}{c + 1}")
    return algebra_from_matrices(
        f"gl{n}", mats, labels, with_squares=True,
        description=f"all {n}x{n} matrices over F2 with commutator bracket "
                    "and matrix squaring as 2-map")


def _sl3_entry() -> CatalogEntry:
    pos = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    mats = [_unit(3, r, c) for r, c in pos]
    labels = [f"E{r + 1}{c + 1}" for r, c in pos]
    mats.append(_mat_add_f2(_unit(3, 0, 0), _unit(3, 1, 1), 3))
    labels.append("h1")
    mats.append(_mat_add_f2(_unit(3, 1, 1), _unit(3, 2, 2), 3))
    labels.append("h2")
    return algebra_from_matrices(
        "sl3", mats, labels, with_squares=True,
        description="trace-zero 3x3 matrices over F2; simple, "
                    "restrictable, toral rank 2 over the prime field")


def _sl2_entry() -> CatalogEntry:
    e, f = _unit(2, 0, 1), _unit(2, 1, 0)
    h = _mat_add_f2(_unit(2, 0, 0), _unit(2, 1, 1), 2)
    return algebra_from_matrices(
        "sl2", [e, f, h], ["e", "f", "h"], with_squares=True,
        description="trace-zero 2x2 matrices over F2; not simple in "
                    "characteristic 2 (the identity spans a central ideal)")


def _o3_entry() -> CatalogEntry:
    e1 = _mat_add_f2(_unit(3, 1, 2), _unit(3, 2, 1), 3)
    e2 = _mat_add_f2(_unit(3, 0, 2), _unit(3, 2, 0), 3)
    e3 = _mat_add_f2(_unit(3, 0, 1), _unit(3, 1, 0), 3)
    return algebra_from_matrices(
        "o3", [e1, e2, e3], ["e1", "e2", "e3"], with_squares=False,
        description="cross-product algebra on F2^3; simple but carries "
                    "no 2-map (squares leave the span)")


def _heis3_entry() -> CatalogEntry:
    alg = LieAlgebra(GF2, 3, {(0, 1): (0, 0, 1)}, name="heis3",
                     labels=["x", "y", "z"])
    zero = (zero_vec(3),) * 3
    return CatalogEntry(alg, zero,
                        "Heisenberg algebra: [x,y]=z central, zero 2-map")


def _w11_p2_entry() -> CatalogEntry:
    alg = LieAlgebra(GF2, 2, {(0, 1): (1, 0)}, name="w11_p2",
                     labels=["d", "xd"])
    return CatalogEntry(alg, ((0, 0), (0, 1)),
                        "rank-1 Witt algebra in characteristic 2: "
                        "[d,xd]=d, d^[2]=0, (xd)^[2]=xd")


def _abelian_entry(n: int) -> CatalogEntry:
    alg = LieAlgebra(GF2, n, {}, name=f"abelian({n})")
    return CatalogEntry(alg, tuple(zero_vec(n) for _ in range(n)),
                        f"abelian algebra of dimension {n} with zero 2-map")


def _strictly_upper_entry(n: int) -> CatalogEntry:
    pos = [(r, c) for r in range(n) for c in range(r + 1, n)]
    mats = [_unit(n, r, c) for r, c in pos]
    labels = [f"E{r + 1}{c + 1}" for r, c in pos]
    return algebra_from_matrices(
        f"strictly_upper({n})", mats, labels, with_squares=True,
        description=f"strictly upper triangular {n}x{n} matrices; "
                    "nilpotent, closed under squaring")


_PARAM_RE = re.compile(r"^(abelian|strictly_upper)\((\d+)\)$")


def catalog_names() -> List[str]:
    return ["o3", "heis3", "sl2", "gl2", "sl3", "gl3", "w11_p2",
            "abelian(n)", "strictly_upper(n)"]


def catalog(name: str) -> CatalogEntry:
    """Built-in example algebras; parametrized families take (n)."""
    if name == "o3":
        return _o3_entry()
    if name == "heis3":
        return _heis3_entry()
    if name == "sl2":
        return _sl2_entry()
    if name == "gl2":
        return _gl_entry(2)
    if name == "gl3":
        return _gl_entry(3)
    if name == "sl3":
        return _sl3_entry()
    if name == "w11_p2":
        return _w11_p2_entry()
    m = _PARAM_RE.match(name)
    if m:
        n = int(m.group(2))
        if not 1 <= n <= 12:
            raise InvalidInput("family parameter must be in 1..12")
        if m.group(1) == "abelian":
            return _abelian_entry(n)
        if n < 2:
            raise InvalidInput("strictly_upper needs n >= 2")
        return _strictly_upper_entry(n)
    raise InvalidInput(f"unknown catalog name {name!r}; known: {catalog_names()}")


# ---------------------------------------------------------------------------
# JSON serialization


def _sparse_vec(v: Sequence[int]) -> List[List[int]]:
    return [[k, int(c)] for k, c in enumerate(v) if c]


def _dense_vec(pairs, dim: int, gf: GF) -> Vec:
    v = [0] * dim
    try:
        for k, c in pairs:
            if not (isinstance(k, int) and 0 <= k < dim):
                raise InvalidInput(f"bad coordinate index {k!r}")
            v[k] = gf.check(c)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad sparse vector: {exc}") from exc
    return tuple(v)


def to_json(alg: LieAlgebra, two_map: Optional[Sequence[Sequence[int]]] = None) -> dict:
    doc = {
        "name": alg.name,
        "field": {"degree": alg.gf.degree, "modulus_bits": alg.gf.modulus},
        "dim": alg.dim,
        "bracket": [[i, j, _sparse_vec(v)] for (i, j), v in sorted(alg.table.items())],
    }
    if alg.labels is not None:
        doc["labels"] = list(alg.labels)
    if two_map is not None:
        doc["two_map"] = [[i, _sparse_vec(v)] for i, v in enumerate(two_map)]
    return doc


def from_json(doc) -> Tuple[LieAlgebra, Optional[Tuple[Vec, ...]]]:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidInput("algebra document must be a JSON object")
    try:
        fdeg = doc["field"]["degree"]
        dim = doc["dim"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"missing required field: {exc}") from exc
    if not isinstance(fdeg, int) or not isinstance(dim, int):
        raise InvalidInput("field degree and dim must be integers")
    gf = GF(fdeg)
    stated = doc["field"].get("modulus_bits", gf.modulus)
    if stated != gf.modulus:
        raise InvalidInput(
            f"modulus_bits {stated} does not match the canonical modulus {gf.modulus}")
    table = {}
    for entry in doc.get("bracket", []):
        try:
            i, j, pairs = entry
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"bad bracket entry {entry!r}") from exc
        if not (isinstance(i, int) and isinstance(j, int) and i < j):
            raise InvalidInput(f"bracket entry needs i < j, got ({i!r},{j!r})")
        table[(i, j)] = _dense_vec(pairs, dim, gf)
    alg = LieAlgebra(gf, dim, table, name=str(doc.get("name", "")),
                     labels=doc.get("labels"))
    two_map = None
    if "two_map" in doc:
        images = [zero_vec(dim)] * dim
        seen = set()
        for entry in doc["two_map"]:
            try:
                i, pairs = entry
            except (TypeError, ValueError) as exc:
                raise InvalidInput(f"bad two_map entry {entry!r}") from exc
            if not isinstance(i, int) or not 0 <= i < dim or i in seen:
                raise InvalidInput(f"bad two_map basis index {i!r}")
            seen.add(i)
            images[i] = _dense_vec(pairs, dim, gf)
        two_map = tuple(images)
    return alg, two_map

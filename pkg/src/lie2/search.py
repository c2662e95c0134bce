"""Census of bracket tables: exhaustive at tiny dimensions, sampled above.

Exhaustive mode enumerates every structure-constant table over F2 for
dimensions up to 4 (at most 24 bits per table), filters by the Jacobi
identity, tests simplicity by ideal closure from every nonzero seed, then
attempts a two-map synthesis on the survivors and measures toral rank on
the restrictable ones.  Sampled mode draws tables from a counter-based
deterministic stream instead, so reports are reproducible under any thread
schedule.  Backend selection: the LIE2_BACKEND environment variable, one of
auto, numba, numpy.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from ._kernels import (HAVE_NUMBA, bytes_from_words, pack_table, pair_index,
                       splitmix64_words)
from .errors import (BudgetExceeded, DimensionTooLarge, InternalInconsistency,
                     InvalidInput)
from .field import GF, GF2, Mat
from .liealg import (LieAlgebra, center, derived_series, is_simple,
                     lower_central_series, validate_lie)
from .restricted import RestrictedAlgebra, synthesize_two_map
from .toruscartan import FIELD_CAVEAT, max_tori

_EXHAUSTIVE_MAX_BITS = 24
_SHARD = 1 << 18
_CAP = 1 << 15
_BLOCK = 1 << 20


def census_backend() -> str:
    """Active kernel backend, chosen by the LIE2_BACKEND environment flag."""
    mode = os.environ.get("LIE2_BACKEND", "auto").strip().lower()
    if mode not in ("auto", "numba", "numpy"):
        raise InvalidInput(f"unknown backend {mode!r}")
    if mode == "numba" and not HAVE_NUMBA:
        raise InvalidInput("numba backend requested but numba is not importable")
    if mode == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    return mode


@dataclass(frozen=True)
class CensusSpec:
    """What to scan: dimension, field degree, sampling, and thread budget."""
    dim: int
    field_degree: int = 1
    sample_count: Optional[int] = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not 1 <= self.dim <= 6:
            raise InvalidInput("census covers dimensions 1 through 6")
        if not 1 <= self.field_degree <= 16:
            raise InvalidInput("field degree must be between 1 and 16")
        if self.threads < 1:
            raise InvalidInput("thread budget must be positive")
        if self.sample_count is None:
            bits = self.dim * self.dim * (self.dim - 1) // 2
            if self.field_degree != 1 or bits > _EXHAUSTIVE_MAX_BITS:
                raise InvalidInput(
                    "exhaustive census needs field degree 1 and dimension <= 4; "
                    "use --sample beyond that")
        else:
            if self.sample_count < 1:
                raise InvalidInput("sample count must be positive")
            if self.sample_count > 1 << 28:
                raise BudgetExceeded("sample count beyond 2^28")


@dataclass
class CensusReport:
    dim: int
    field_degree: int
    mode: str
    candidates_scanned: int
    jacobi_pass: int
    simple_count: int
    restrictable_simple_count: int
    simple_iso_classes: List[dict]
    sample_count: Optional[int]
    seed: Optional[int]
    threads: int
    backend: str
    runtime_ms: int
    caveat: str = FIELD_CAVEAT

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "field_degree": self.field_degree,
            "mode": self.mode,
            "candidates_scanned": self.candidates_scanned,
            "jacobi_pass": self.jacobi_pass,
            "simple_count": self.simple_count,
            "restrictable_simple_count": self.restrictable_simple_count,
            "simple_iso_classes": self.simple_iso_classes,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "threads": self.threads,
            "backend": self.backend,
            "runtime_ms": self.runtime_ms,
            "caveat": self.caveat,
        }


# ---------------------------------------------------------------------------
# table <-> algebra conversion


def table_to_algebra(n: int, t: int, name: str = "") -> LieAlgebra:
    """Bracket table integer to a LieAlgebra over F2."""
    nmask = (1 << n) - 1
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = (t >> (n * pair_index(i, j, n))) & nmask
            if c:
                table[(i, j)] = tuple((c >> m) & 1 for m in range(n))
    return LieAlgebra(GF2, n, table, name=name)


def algebra_to_table(alg: LieAlgebra) -> int:
    """Packed table integer of an F2 algebra (inverse of table_to_algebra)."""
    if alg.gf.degree != 1:
        raise InvalidInput("packed tables are defined over F2 only")
    t = 0
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            c = 0
            for m, coord in enumerate(alg.bracket_basis(i, j)):
                c |= (coord & 1) << m
            t |= c << (alg.dim * pair_index(i, j, alg.dim))
    return t


# ---------------------------------------------------------------------------
# GL(n, 2) data


def _invert_rows(rows: Sequence[int], n: int) -> Optional[List[int]]:
    work = [rows[r] | (1 << (n + r)) for r in range(n)]
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if (work[r] >> col) & 1:
                piv = r
                break
        if piv < 0:
            return None
        work[col], work[piv] = work[piv], work[col]
        for r in range(n):
            if r != col and (work[r] >> col) & 1:
                work[r] ^= work[col]
    return [w >> n for w in work]


@lru_cache(maxsize=None)
def gl_matrices(n: int) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]:
    """All invertible n x n matrices over F2 with inverses, rows as bit ints."""
    if n > 4:
        raise DimensionTooLarge("GL sweep is limited to dimension 4")
    out = []
    for code in range(1 << (n * n)):
        rows = tuple((code >> (n * r)) & ((1 << n) - 1) for r in range(n))
        inv = _invert_rows(rows, n)
        if inv is not None:
            out.append((rows, tuple(inv)))
    return tuple(out)


@lru_cache(maxsize=None)
def _gl_arrays(n: int):
    mats = gl_matrices(n)
    g = len(mats)
    cols = np.zeros((g, n), dtype=np.int64)
    invrows = np.zeros((g, n), dtype=np.int64)
    for gi, (rows, inv) in enumerate(mats):
        for c in range(n):
            col = 0
            for r in range(n):
                col |= ((rows[r] >> c) & 1) << r
            cols[gi, c] = col
        for r in range(n):
            invrows[gi, r] = inv[r]
    parity = np.array([bin(v).count("1") & 1 for v in range(1 << n)],
                      dtype=np.int64)
    return cols, invrows, parity


def table_orbit(n: int, t: int) -> set:
    """All tables reachable from t by a GL(n, 2) change of basis."""
    cols, invrows, parity = _gl_arrays(n)
    nmask = (1 << n) - 1
    g = cols.shape[0]
    new = np.zeros(g, dtype=np.int64)
    for i in range(n):
        x = cols[:, i]
        for j in range(i + 1, n):
            y = cols[:, j]
            v = np.zeros(g, dtype=np.int64)
            for a in range(n):
                xa = (x >> a) & 1
                ya = (y >> a) & 1
                for c in range(a + 1, n):
                    fld = (t >> (n * pair_index(a, c, n))) & nmask
                    if not fld:
                        continue
                    s = (xa & ((y >> c) & 1)) ^ (((x >> c) & 1) & ya)
                    v ^= s * fld
            w = np.zeros(g, dtype=np.int64)
            for r in range(n):
                w |= parity[invrows[:, r] & v] << r
            new |= w << (n * pair_index(i, j, n))
    return {int(z) for z in new}


def canonical_table(n: int, t: int) -> int:
    """Least table in the GL(n, 2) orbit."""
    return min(table_orbit(n, t))


def packed_bracket(n: int, t: int, x: int, y: int) -> int:
    """Bracket of two coordinate vectors through a packed table."""
    nmask = (1 << n) - 1
    v = 0
    for i in range(n):
        xi = (x >> i) & 1
        yi = (y >> i) & 1
        if not xi and not yi:
            continue
        for j in range(i + 1, n):
            s = (xi & ((y >> j) & 1)) ^ (((x >> j) & 1) & yi)
            if s:
                v ^= (t >> (n * pair_index(i, j, n))) & nmask
    return v


def _invariant_signature(alg: LieAlgebra):
    return (tuple(derived_series(alg).dims),
            tuple(lower_central_series(alg).dims),
            center(alg).dim)


def iso_match(a: LieAlgebra, b: LieAlgebra) -> Optional[Mat]:
    """Bracket-preserving basis change from a to b, by exhaustive GL sweep."""
    if a.gf != b.gf or a.dim != b.dim:
        raise InvalidInput("iso_match needs matching dimension and field")
    if a.gf.degree != 1:
        raise InvalidInput("the exhaustive GL sweep runs over F2 only")
    if a.dim > 4:
        raise DimensionTooLarge("GL sweep is limited to dimension 4")
    if _invariant_signature(a) != _invariant_signature(b):
        return None
    n = a.dim
    ta = algebra_to_table(a)
    tb = algebra_to_table(b)
    for rows, _inv in gl_matrices(n):
        cols = [0] * n
        for c in range(n):
            for r in range(n):
                cols[c] |= ((rows[r] >> c) & 1) << r
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                ca = (ta >> (n * pair_index(i, j, n))) & ((1 << n) - 1)
                lhs = 0
                for m in range(n):
                    if (ca >> m) & 1:
                        lhs ^= cols[m]
                if lhs != packed_bracket(n, tb, cols[i], cols[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            mat = Mat(GF2, [[(rows[r] >> c) & 1 for c in range(n)]
                            for r in range(n)])
            return mat
    return None


# ---------------------------------------------------------------------------
# census driver


def _configure_threads(threads: int) -> None:
    try:
        import numba
        from numba import set_num_threads
        set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
    except Exception:
        pass


def _merge_kernel_output(counts, simples, nsimple, overflow, offset=0):
    if int(overflow.sum()) != 0:
        raise InternalInconsistency("survivor buffer overflow in census kernel")
    scanned = int(counts[:, 0].sum())
    jac = int(counts[:, 1].sum())
    out: List[int] = []
    for s in range(counts.shape[0]):
        for i in range(int(nsimple[s])):
            out.append(int(simples[s, i]) + offset)
    return scanned, jac, out


def _run_exhaustive(n: int, backend: str) -> Tuple[int, int, List[int]]:
    if n == 1:
        return 1, 1, []
    total = 1 << (n * n * (n - 1) // 2)
    if backend == "numba":
        shard = min(total, _SHARD)
        cap = min(total, _CAP)
        counts, simples, nsimple, overflow = _kernels.census_exhaustive_numba(
            n, total, shard, cap)
        return _merge_kernel_output(counts, simples, nsimple, overflow)
    return _kernels.census_exhaustive_numpy(n, total)


def _sample_rows(n: int, seed: int, start: int, count: int) -> np.ndarray:
    npairs = n * (n - 1) // 2
    words_per = (npairs + 7) // 8
    words = splitmix64_words(seed, start, count, words_per)
    rows = bytes_from_words(words, npairs)
    return rows & np.uint8((1 << n) - 1)


def _run_sampled_packed(spec: CensusSpec, backend: str) -> Tuple[int, int, List[int]]:
    n = spec.dim
    scanned = 0
    jac = 0
    tables: List[int] = []
    for start in range(0, spec.sample_count, _BLOCK):
        count = min(_BLOCK, spec.sample_count - start)
        rows = _sample_rows(n, spec.seed, start, count)
        if backend == "numba":
            shard = min(count, 1 << 14)
            out = _kernels.census_sampled_numba(n, rows, shard, min(count, _CAP))
            bscanned, bjac, idxs = _merge_kernel_output(*out)
        else:
            bscanned, bjac, idxs = _kernels.census_sampled_numpy(n, rows)
        scanned += bscanned
        jac += bjac
        for idx in idxs:
            tables.append(pack_table([int(v) for v in rows[idx]], n))
    verified = []
    for t in tables:
        alg = table_to_algebra(n, t)
        if validate_lie(alg, random_checks=0).ok and is_simple(alg).simple:
            verified.append(t)
    if len(verified) != len(tables):
        raise InternalInconsistency("kernel survivor failed full re-validation")
    return scanned, jac, verified


def _sampled_field_table(gf: GF, n: int, stream: Sequence[int]) -> dict:
    per = 1 if gf.degree <= 8 else 2
    kmask = gf.order - 1
    table = {}
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            vec = []
            for _ in range(n):
                val = stream[pos]
                if per == 2:
                    val |= stream[pos + 1] << 8
                pos += per
                vec.append(val & kmask)
            if any(vec):
                table[(i, j)] = tuple(vec)
    return table


def _run_sampled_generic(spec: CensusSpec) -> Tuple[int, int, List[LieAlgebra]]:
    n = spec.dim
    gf = GF(spec.field_degree)
    npairs = n * (n - 1) // 2
    per = 1 if spec.field_degree <= 8 else 2
    nbytes = npairs * n * per
    words_per = (nbytes + 7) // 8
    jac = 0
    survivors: List[LieAlgebra] = []
    for start in range(0, spec.sample_count, _BLOCK):
        count = min(_BLOCK, spec.sample_count - start)
        words = splitmix64_words(spec.seed, start, count, words_per)
        rows = bytes_from_words(words, nbytes)
        for local in range(count):
            stream = [int(v) for v in rows[local]]
            alg = LieAlgebra(gf, n, _sampled_field_table(gf, n, stream))
            if not validate_lie(alg, random_checks=0).ok:
                continue
            jac += 1
            if is_simple(alg).simple:
                survivors.append(alg)
    return spec.sample_count, jac, survivors


def _class_entry(alg: LieAlgebra, size: int, table: Optional[int],
                 grouping: str) -> dict:
    from .liealg import to_json as alg_to_json
    syn = synthesize_two_map(alg)
    entry = {
        "class_size": size,
        "grouping": grouping,
        "restrictable": syn.restrictable,
        "toral_rank_lb": None,
        "representative": alg_to_json(alg),
    }
    if table is not None:
        entry["representative_table"] = table
    if syn.restrictable:
        ra = RestrictedAlgebra(alg, syn.two_map)
        entry["toral_rank_lb"] = max_tori(ra).rank_lb
    return entry


def _classify_packed(n: int, tables: Sequence[int]) -> List[dict]:
    class_of: Dict[int, int] = {}
    reps: List[int] = []
    sizes: List[int] = []
    for t in tables:
        if t not in class_of:
            orbit = table_orbit(n, t)
            rep = min(orbit)
            cid = len(reps)
            for member in orbit:
                class_of[member] = cid
            reps.append(rep)
            sizes.append(0)
        sizes[class_of[t]] += 1
    out = []
    for rep, size in zip(reps, sizes):
        alg = table_to_algebra(n, rep, name=f"census_rep_{rep}")
        out.append(_class_entry(alg, size, rep, "gl_orbit"))
    return out


def _classify_generic(survivors: Sequence[LieAlgebra],
                      tables: Optional[Sequence[int]] = None) -> List[dict]:
    # beyond dimension 4 the GL sweep is out of reach; group by invariants
    keys: Dict[tuple, int] = {}
    reps: List[Tuple[LieAlgebra, Optional[int]]] = []
    sizes: List[int] = []
    for pos, alg in enumerate(survivors):
        sig = _invariant_signature(alg)
        if sig not in keys:
            keys[sig] = len(reps)
            reps.append((alg, tables[pos] if tables is not None else None))
            sizes.append(0)
        sizes[keys[sig]] += 1
    return [_class_entry(alg, size, table, "invariant_signature")
            for (alg, table), size in zip(reps, sizes)]


def census(spec: CensusSpec) -> CensusReport:
    """Run the census described by the spec and return its report."""
    t0 = time.monotonic()
    backend = census_backend()
    if backend == "numba":
        _configure_threads(spec.threads)
    if spec.sample_count is None:
        scanned, jac, tables = _run_exhaustive(spec.dim, backend)
        mode = "exhaustive"
        classes = _classify_packed(spec.dim, tables)
        simple_count = len(tables)
    elif spec.field_degree == 1 and spec.dim <= 6:
        scanned, jac, tables = _run_sampled_packed(spec, backend)
        mode = "sampled"
        simple_count = len(tables)
        if spec.dim <= 4:
            classes = _classify_packed(spec.dim, tables)
        else:
            algs = [table_to_algebra(spec.dim, t) for t in tables]
            classes = _classify_generic(algs, tables)
    else:
        scanned, jac, algs = _run_sampled_generic(spec)
        mode = "sampled"
        simple_count = len(algs)
        classes = _classify_generic(algs)
    restrictable = sum(c["class_size"] for c in classes if c["restrictable"])
    runtime_ms = int((time.monotonic() - t0) * 1000)
    return CensusReport(
        dim=spec.dim,
        field_degree=spec.field_degree,
        mode=mode,
        candidates_scanned=scanned,
        jacobi_pass=jac,
        simple_count=simple_count,
        restrictable_simple_count=restrictable,
        simple_iso_classes=classes,
        sample_count=spec.sample_count,
        seed=spec.seed if spec.sample_count is not None else None,
        threads=spec.threads,
        backend=backend,
        runtime_ms=runtime_ms,
    )

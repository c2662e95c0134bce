"""Hot census kernels over bit-packed bracket tables.

A bracket table for dimension n stores the C(n,2) basis brackets as n-bit
fields of one integer; pair (i, j) with i < j sits at field index
i*(2n-i-1)/2 + (j-i-1).  The numba path shards the candidate space and
writes into per-shard accumulators, so totals never depend on the thread
schedule.  The numpy path replays the same arithmetic vectorised per chunk
and funnels rare survivors through the scalar helpers below, which also
serve as the reference implementation in the tests.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

try:
    from numba import njit, prange
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn
        return wrap

    prange = range

GOLDEN = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


def pair_index(i: int, j: int, n: int) -> int:
    """Field index of the basis pair (i, j), i < j, in lexicographic order."""
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


# ---------------------------------------------------------------------------
# scalar reference pipeline (shared by the numpy path, sampling re-checks,
# and the test suite)


def unpack_table(t: int, n: int) -> List[int]:
    nmask = (1 << n) - 1
    return [(t >> (n * p)) & nmask for p in range(n * (n - 1) // 2)]


def pack_table(b, n: int) -> int:
    t = 0
    for p, v in enumerate(b):
        t |= int(v) << (n * p)
    return t


def table_bracket_basis(b, n: int, v: int, k: int) -> int:
    """Bracket of the coordinate vector v with basis element k."""
    res = 0
    for m in range(n):
        if m != k and (v >> m) & 1:
            res ^= b[pair_index(min(m, k), max(m, k), n)]
    return res


def table_jacobi_ok(b, n: int) -> bool:
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                r = table_bracket_basis(b, n, b[pair_index(i, j, n)], k)
                r ^= table_bracket_basis(b, n, b[pair_index(j, k, n)], i)
                r ^= table_bracket_basis(b, n, b[pair_index(i, k, n)], j)
                if r:
                    return False
    return True


def _insert_py(slots, n: int, v: int) -> int:
    for bit in range(n - 1, -1, -1):
        if (v >> bit) & 1:
            if slots[bit]:
                v ^= slots[bit]
            else:
                slots[bit] = v
                return v
    return 0


def table_is_simple(b, n: int) -> bool:
    """No proper nonzero ideal: derived algebra full, every seed generates."""
    slots = [0] * n
    rank = 0
    for p in range(n * (n - 1) // 2):
        if _insert_py(slots, n, b[p]):
            rank += 1
    if rank != n:
        return False
    for seed in range(1, 1 << n):
        slots = [0] * n
        work = [seed]
        rank = 1
        slots_added = _insert_py(slots, n, seed)
        work[0] = slots_added
        head = 0
        while head < len(work) and rank < n:
            w = work[head]
            head += 1
            for k in range(n):
                u = table_bracket_basis(b, n, w, k)
                if u:
                    red = _insert_py(slots, n, u)
                    if red:
                        rank += 1
                        work.append(red)
        if rank != n:
            return False
    return True


# ---------------------------------------------------------------------------
# deterministic counter-based sampling stream


def splitmix64_one(seed: int, ctr: int) -> int:
    x = (seed + ctr * GOLDEN) & MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def splitmix64_words(seed: int, start: int, count: int, words_per: int) -> np.ndarray:
    """Words w of candidate i use counter i*words_per + w + 1; vectorised."""
    s = np.uint64(seed & MASK64)
    g = np.uint64(GOLDEN)
    idx = np.arange(start, start + count, dtype=np.uint64)
    out = np.empty((count, words_per), dtype=np.uint64)
    for w in range(words_per):
        x = s + (idx * np.uint64(words_per) + np.uint64(w + 1)) * g
        x = x ^ (x >> np.uint64(30))
        x = x * np.uint64(0xBF58476D1CE4E5B9)
        x = x ^ (x >> np.uint64(27))
        x = x * np.uint64(0x94D049BB133111EB)
        x = x ^ (x >> np.uint64(31))
        out[:, w] = x
    return out


def bytes_from_words(words: np.ndarray, nbytes: int) -> np.ndarray:
    count = words.shape[0]
    out = np.empty((count, nbytes), dtype=np.uint8)
    for pos in range(nbytes):
        w = pos // 8
        sh = np.uint64(8 * (pos % 8))
        out[:, pos] = ((words[:, w] >> sh) & np.uint64(0xFF)).astype(np.uint8)
    return out


# ---------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _br(b, n, v, k):
    res = 0
    for m in range(n):
        if m != k and (v >> m) & 1:
            if m < k:
                p = m * (2 * n - m - 1) // 2 + (k - m - 1)
            else:
                p = k * (2 * n - k - 1) // 2 + (m - k - 1)
            res ^= b[p]
    return res


@njit(cache=True)
def _jacobi(b, n):
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                pij = i * (2 * n - i - 1) // 2 + (j - i - 1)
                pjk = j * (2 * n - j - 1) // 2 + (k - j - 1)
                pik = i * (2 * n - i - 1) // 2 + (k - i - 1)
                if _br(b, n, b[pij], k) ^ _br(b, n, b[pjk], i) ^ _br(b, n, b[pik], j):
                    return False
    return True


@njit(cache=True)
def _insert(slots, n, v):
    for bit in range(n - 1, -1, -1):
        if (v >> bit) & 1:
            if slots[bit]:
                v ^= slots[bit]
            else:
                slots[bit] = v
                return v
    return 0


@njit(cache=True)
def _simple(b, n, slots, work):
    for bit in range(n):
        slots[bit] = 0
    rank = 0
    npairs = n * (n - 1) // 2
    for p in range(npairs):
        if _insert(slots, n, b[p]) != 0:
            rank += 1
    if rank != n:
        return False
    for seed in range(1, 1 << n):
        for bit in range(n):
            slots[bit] = 0
        rank = 0
        head = 0
        tail = 0
        red = _insert(slots, n, seed)
        if red != 0:
            rank += 1
            work[tail] = red
            tail += 1
        while head < tail and rank < n:
            w = work[head]
            head += 1
            for k in range(n):
                u = _br(b, n, w, k)
                if u != 0:
                    red = _insert(slots, n, u)
                    if red != 0:
                        rank += 1
                        work[tail] = red
                        tail += 1
        if rank != n:
            return False
    return True


@njit(cache=True, parallel=True)
def census_exhaustive_numba(n, total, shard_size, cap):
    npairs = n * (n - 1) // 2
    nmask = (1 << n) - 1
    nshards = (total + shard_size - 1) // shard_size
    counts = np.zeros((nshards, 3), dtype=np.int64)
    simples = np.zeros((nshards, cap), dtype=np.int64)
    nsimple = np.zeros(nshards, dtype=np.int64)
    overflow = np.zeros(nshards, dtype=np.int64)
    for s in prange(nshards):
        lo = s * shard_size
        hi = lo + shard_size
        if hi > total:
            hi = total
        b = np.zeros(16, dtype=np.int64)
        slots = np.zeros(8, dtype=np.int64)
        work = np.zeros(16, dtype=np.int64)
        for t in range(lo, hi):
            counts[s, 0] += 1
            for p in range(npairs):
                b[p] = (t >> (n * p)) & nmask
            if not _jacobi(b, n):
                continue
            counts[s, 1] += 1
            if _simple(b, n, slots, work):
                counts[s, 2] += 1
                if nsimple[s] < cap:
                    simples[s, nsimple[s]] = t
                    nsimple[s] += 1
                else:
                    overflow[s] = 1
    return counts, simples, nsimple, overflow


@njit(cache=True, parallel=True)
def census_sampled_numba(n, rows, shard_size, cap):
    count = rows.shape[0]
    npairs = n * (n - 1) // 2
    nmask = (1 << n) - 1
    nshards = (count + shard_size - 1) // shard_size
    counts = np.zeros((nshards, 3), dtype=np.int64)
    simples = np.zeros((nshards, cap), dtype=np.int64)
    nsimple = np.zeros(nshards, dtype=np.int64)
    overflow = np.zeros(nshards, dtype=np.int64)
    for s in prange(nshards):
        lo = s * shard_size
        hi = lo + shard_size
        if hi > count:
            hi = count
        b = np.zeros(16, dtype=np.int64)
        slots = np.zeros(8, dtype=np.int64)
        work = np.zeros(16, dtype=np.int64)
        for idx in range(lo, hi):
            counts[s, 0] += 1
            for p in range(npairs):
                b[p] = rows[idx, p] & nmask
            if not _jacobi(b, n):
                continue
            counts[s, 1] += 1
            if _simple(b, n, slots, work):
                counts[s, 2] += 1
                if nsimple[s] < cap:
                    simples[s, nsimple[s]] = idx
                    nsimple[s] += 1
                else:
                    overflow[s] = 1
    return counts, simples, nsimple, overflow


# ---------------------------------------------------------------------------
# numpy fallback path


def _jacobi_mask_numpy(b, n: int) -> np.ndarray:
    def br(v, k):
        res = np.zeros_like(v)
        for m in range(n):
            if m == k:
                continue
            res ^= ((v >> m) & 1) * b[pair_index(min(m, k), max(m, k), n)]
        return res

    ok = np.ones(b[0].shape, dtype=bool)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                r = br(b[pair_index(i, j, n)], k)
                r ^= br(b[pair_index(j, k, n)], i)
                r ^= br(b[pair_index(i, k, n)], j)
                ok &= r == 0
    return ok


def _derived_rank_numpy(b, n: int) -> np.ndarray:
    size = b[0].shape[0]
    slots = np.zeros((size, n), dtype=np.int64)
    for p in range(len(b)):
        v = b[p].copy()
        for bit in range(n - 1, -1, -1):
            has = ((v >> bit) & 1).astype(bool)
            filled = slots[:, bit] != 0
            red = has & filled
            if red.any():
                v = np.where(red, v ^ slots[:, bit], v)
            ins = has & ~filled
            if ins.any():
                slots[ins, bit] = v[ins]
                v = np.where(ins, 0, v)
    return np.count_nonzero(slots, axis=1)


def census_exhaustive_numpy(n: int, total: int,
                            chunk: int = 1 << 20) -> Tuple[int, int, List[int]]:
    npairs = n * (n - 1) // 2
    nmask = (1 << n) - 1
    scanned = 0
    jacobi = 0
    survivors: List[int] = []
    for lo in range(0, total, chunk):
        hi = min(total, lo + chunk)
        t = np.arange(lo, hi, dtype=np.int64)
        scanned += hi - lo
        b = [(t >> (n * p)) & nmask for p in range(npairs)]
        ok = _jacobi_mask_numpy(b, n)
        surv = t[ok]
        jacobi += int(surv.size)
        if surv.size == 0:
            continue
        sb = [(surv >> (n * p)) & nmask for p in range(npairs)]
        full = _derived_rank_numpy(sb, n) == n
        for tt in surv[full].tolist():
            if table_is_simple(unpack_table(tt, n), n):
                survivors.append(int(tt))
    return scanned, jacobi, survivors


def census_sampled_numpy(n: int, rows: np.ndarray) -> Tuple[int, int, List[int]]:
    npairs = n * (n - 1) // 2
    nmask = (1 << n) - 1
    b = [rows[:, p].astype(np.int64) & nmask for p in range(npairs)]
    ok = _jacobi_mask_numpy(b, n)
    jacobi = int(np.count_nonzero(ok))
    survivors = []
    for idx in np.nonzero(ok)[0].tolist():
        bv = [int(b[p][idx]) for p in range(npairs)]
        if table_is_simple(bv, n):
            survivors.append(int(idx))
    return rows.shape[0], jacobi, survivors

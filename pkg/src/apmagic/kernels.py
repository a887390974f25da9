"""Hot enumeration kernels: numba-jitted loops with a pure-numpy fallback.

Two sweeps dominate runtime everywhere in this package:

* ``scan_triples(max_root)``  -- every square triple a**2 < b**2 < c**2 in
  arithmetic progression with c <= max_root.  Substituting u = (a+c)/2,
  v = (c-a)/2 reduces this to scanning integer points with u**2 + v**2 a
  perfect square (then b is its root and the common difference is 2uv).
* ``sweep_sums(max_sum)``     -- every triple with common difference
  d <= max_sum, found by the exhaustive per-d scan of b (the brute-force
  route kept deliberately independent of the divisor-based enumeration).

Backend selection: the ``APMAGIC_BACKEND`` environment variable chooses
``numba`` (default when importable) or ``numpy``; ``set_backend`` overrides at
runtime.  Both backends return identical int64 arrays with columns
(d, a, b, c), canonically sorted by (d, a), regardless of the number of
worker blocks -- parallel callers may therefore split ranges freely.

All values stay below 2**53 (enforced by the input bounds), so float64 square
roots corrected by one step are exact.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

__all__ = [
    "HAVE_NUMBA",
    "MAX_SCAN_ROOT",
    "MAX_SWEEP_SUM",
    "get_backend",
    "set_backend",
    "default_jobs",
    "scan_triples",
    "sweep_sums",
]

# int64-safety bounds: squares and square sums must stay under 2**53 so the
# float-sqrt-with-correction trick is exact.
MAX_SCAN_ROOT = 30_000_000
MAX_SWEEP_SUM = 100_000_000

_VALID_BACKENDS = ("numba", "numpy")


def _backend_from_env() -> str:
    env = os.environ.get("APMAGIC_BACKEND", "auto").strip().lower()
    if env in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if env not in _VALID_BACKENDS:
        raise ValueError(f"APMAGIC_BACKEND must be auto, numba or numpy, got {env!r}")
    if env == "numba" and not HAVE_NUMBA:
        raise RuntimeError("APMAGIC_BACKEND=numba but numba is not importable")
    return env


_BACKEND = _backend_from_env()


def get_backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    name = name.strip().lower()
    if name not in _VALID_BACKENDS:
        raise ValueError(f"backend must be one of {_VALID_BACKENDS}, got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    _BACKEND = name


def default_jobs() -> int:
    """Worker count default: APMAGIC_JOBS env var, else 1."""
    raw = os.environ.get("APMAGIC_JOBS", "").strip()
    if not raw:
        return 1
    jobs = int(raw)
    if jobs < 1:
        raise ValueError(f"APMAGIC_JOBS must be >= 1, got {jobs}")
    return jobs


# ---------------------------------------------------------------------------
# numba kernels


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _isqrt64(x):
        if x <= 0:
            return 0
        r = int(math.sqrt(x))
        while r * r > x:
            r -= 1
        while (r + 1) * (r + 1) <= x:
            r += 1
        return r

    @njit(cache=True, nogil=True)
    def _scan_block_numba(u_lo, u_hi, max_root):
        count = 0
        for u in range(u_lo, u_hi):
            vmax = min(u - 1, max_root - u)
            for v in range(1, vmax + 1):
                s = u * u + v * v
                r = _isqrt64(s)
                if r * r == s:
                    count += 1
        out = np.empty((count, 4), np.int64)
        k = 0
        for u in range(u_lo, u_hi):
            vmax = min(u - 1, max_root - u)
            for v in range(1, vmax + 1):
                s = u * u + v * v
                r = _isqrt64(s)
                if r * r == s:
                    out[k, 0] = 2 * u * v
                    out[k, 1] = u - v
                    out[k, 2] = r
                    out[k, 3] = u + v
                    k += 1
        return out

    @njit(cache=True, nogil=True)
    def _sweep_block_numba(d_lo, d_hi):
        cap = 256
        out = np.empty((cap, 4), np.int64)
        n = 0
        for d in range(d_lo, d_hi):
            bmin = _isqrt64(d - 1) + 1
            bmax = (d + 1) // 2
            for b in range(bmin, bmax + 1):
                bb = b * b
                aa = bb - d
                a = _isqrt64(aa)
                if a * a != aa:
                    continue
                cc = bb + d
                c = _isqrt64(cc)
                if c * c == cc:
                    if n == cap:
                        cap *= 2
                        grown = np.empty((cap, 4), np.int64)
                        grown[:n] = out[:n]
                        out = grown
                    out[n, 0] = d
                    out[n, 1] = a
                    out[n, 2] = b
                    out[n, 3] = c
                    n += 1
        return out[:n].copy()


# ---------------------------------------------------------------------------
# numpy fallback


def _isqrt_vec(x: np.ndarray) -> np.ndarray:
    r = np.sqrt(x.astype(np.float64)).astype(np.int64)
    r = np.where(r * r > x, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= x, r + 1, r)
    return r


def _scan_block_numpy(u_lo: int, u_hi: int, max_root: int) -> np.ndarray:
    chunks = []
    for u in range(u_lo, u_hi):
        vmax = min(u - 1, max_root - u)
        if vmax < 1:
            continue
        v = np.arange(1, vmax + 1, dtype=np.int64)
        s = u * u + v * v
        b = _isqrt_vec(s)
        hit = b * b == s
        if not hit.any():
            continue
        v = v[hit]
        b = b[hit]
        cols = np.empty((v.size, 4), np.int64)
        cols[:, 0] = 2 * u * v
        cols[:, 1] = u - v
        cols[:, 2] = b
        cols[:, 3] = u + v
        chunks.append(cols)
    if not chunks:
        return np.empty((0, 4), np.int64)
    return np.concatenate(chunks)


def _sweep_block_numpy(d_lo: int, d_hi: int) -> np.ndarray:
    # Loop inversion over b: the pairs (a, b) with d_lo <= b*b - a*a < d_hi
    # are exactly the per-d scans of this d block, batched per b.
    d_max = d_hi - 1
    chunks = []
    bmax = (d_max + 1) // 2
    for b in range(1, bmax + 1):
        bb = b * b
        aa_hi = bb - d_lo
        if aa_hi < 0:
            continue
        a_hi = min(b - 1, math.isqrt(aa_hi))
        aa_lo = bb - d_max
        a_lo = 0 if aa_lo <= 0 else math.isqrt(aa_lo - 1) + 1
        if a_lo > a_hi:
            continue
        a = np.arange(a_lo, a_hi + 1, dtype=np.int64)
        d = bb - a * a
        cc = bb + d
        c = _isqrt_vec(cc)
        hit = c * c == cc
        if not hit.any():
            continue
        a = a[hit]
        d = d[hit]
        c = c[hit]
        cols = np.empty((a.size, 4), np.int64)
        cols[:, 0] = d
        cols[:, 1] = a
        cols[:, 2] = b
        cols[:, 3] = c
        chunks.append(cols)
    if not chunks:
        return np.empty((0, 4), np.int64)
    return np.concatenate(chunks)


# ---------------------------------------------------------------------------
# public sweeps


def _split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    if hi <= lo:
        return []
    parts = max(1, min(parts, hi - lo))
    step = (hi - lo + parts - 1) // parts
    return [(s, min(s + step, hi)) for s in range(lo, hi, step)]


def _run_blocks(fn, blocks, jobs: int) -> list[np.ndarray]:
    if jobs <= 1 or len(blocks) <= 1:
        return [fn(*blk) for blk in blocks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda blk: fn(*blk), blocks))


def _canonical(parts: list[np.ndarray]) -> np.ndarray:
    arr = np.concatenate(parts) if parts else np.empty((0, 4), np.int64)
    if arr.shape[0] == 0:
        return arr
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return arr[order]


def scan_triples(max_root: int, jobs: int = 1) -> np.ndarray:
    """All (d, a, b, c) with 0 <= a < b < c <= max_root and equal square gaps.

    Returns an int64 array sorted by (d, a); the sort makes the output
    independent of block partitioning and worker count.
    """
    if max_root < 1:
        raise ValueError(f"max_root must be positive, got {max_root}")
    if max_root > MAX_SCAN_ROOT:
        raise ValueError(f"max_root {max_root} exceeds int64-safe bound {MAX_SCAN_ROOT}")
    jobs = max(1, jobs)
    blocks = _split_range(2, max_root, jobs * 8 if jobs > 1 else 1)
    if _BACKEND == "numba":
        fn = lambda lo, hi: _scan_block_numba(lo, hi, max_root)
    else:
        fn = lambda lo, hi: _scan_block_numpy(lo, hi, max_root)
    return _canonical(_run_blocks(fn, blocks, jobs))


def sweep_sums(max_sum: int, jobs: int = 1) -> np.ndarray:
    """All (d, a, b, c) with 1 <= d <= max_sum, by exhaustive per-d scan of b.

    This is the brute-force route (independent of divisor enumeration);
    parallel partitioning is by d-range blocks.  Output sorted by (d, a).
    """
    if max_sum < 1:
        raise ValueError(f"max_sum must be positive, got {max_sum}")
    if max_sum > MAX_SWEEP_SUM:
        raise ValueError(f"max_sum {max_sum} exceeds int64-safe bound {MAX_SWEEP_SUM}")
    jobs = max(1, jobs)
    if _BACKEND == "numba":
        blocks = _split_range(1, max_sum + 1, jobs * 8 if jobs > 1 else 1)
        parts = _run_blocks(_sweep_block_numba, blocks, jobs)
    else:
        # The inverted-loop fallback batches per b; blocking by d would rescan
        # the b range per block, so it runs as a single block.
        parts = [_sweep_block_numpy(1, max_sum + 1)]
    return _canonical(parts)

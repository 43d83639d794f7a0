"""Hot brute-force scans over dense sum tables.

Each kernel exists twice: a numba ``@njit`` version and a chunked numpy
version.  The active backend is chosen by the ``EA_KERNELS`` environment
variable (``numba``, ``numpy`` or ``auto``; default ``auto`` picks numba
when importable).  All kernels take the dense sum table ``S`` where
``S[a, b] = a + b`` and ``-1`` marks an undefined sum, and return the
first violating witness or ``None``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a normal dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def backend() -> str:
    """Active kernel backend, resolved from EA_KERNELS at call time."""
    choice = os.environ.get("EA_KERNELS", "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"EA_KERNELS must be auto|numba|numpy, got {choice!r}")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("EA_KERNELS=numba but numba is not importable")
    return choice


# ---------------------------------------------------------------------------
# associativity: (a+b)+c defined  =>  b+c defined and a+(b+c) == (a+b)+c


@njit(cache=True)
def _assoc_numba(S):  # pragma: no cover - exercised via dispatcher
    n = S.shape[0]
    for a in range(n):
        for b in range(n):
            ab = S[a, b]
            if ab < 0:
                continue
            for c in range(n):
                abc = S[ab, c]
                if abc < 0:
                    continue
                bc = S[b, c]
                if bc < 0 or S[a, bc] != abc:
                    return a, b, c
    return -1, -1, -1


def _assoc_numpy(S):
    n = S.shape[0]
    for a in range(n):
        ab = S[a]  # (n,)
        ab_c = np.where(ab[:, None] >= 0, S[np.maximum(ab, 0)[:, None], np.arange(n)], -1)
        a_bc = np.where(S >= 0, S[a][np.maximum(S, 0)], -1)
        bad = (ab_c >= 0) & ((S < 0) | (a_bc != ab_c))
        if bad.any():
            b, c = np.argwhere(bad)[0]
            return a, int(b), int(c)
    return -1, -1, -1


def associativity_violation(S):
    fn = _assoc_numba if backend() == "numba" else _assoc_numpy
    a, b, c = fn(np.ascontiguousarray(S))
    return None if a < 0 else (int(a), int(b), int(c))


# ---------------------------------------------------------------------------
# cancellation: a+c == b+c (both defined)  =>  a == b


@njit(cache=True)
def _cancel_numba(S):  # pragma: no cover
    n = S.shape[0]
    owner = np.empty(n, np.int64)
    for c in range(n):
        owner[:] = -1
        for a in range(n):
            s = S[a, c]
            if s < 0:
                continue
            if owner[s] >= 0:
                return owner[s], a, c
            owner[s] = a
    return -1, -1, -1


def _cancel_numpy(S):
    n = S.shape[0]
    for c in range(n):
        col = S[:, c]
        defined = np.flatnonzero(col >= 0)
        vals = col[defined]
        order = np.argsort(vals, kind="stable")
        dup = np.flatnonzero(np.diff(vals[order]) == 0)
        if dup.size:
            i = dup[0]
            return int(defined[order[i]]), int(defined[order[i + 1]]), c
    return -1, -1, -1


def cancellation_violation(S):
    fn = _cancel_numba if backend() == "numba" else _cancel_numpy
    a, b, c = fn(np.ascontiguousarray(S))
    return None if a < 0 else (int(a), int(b), int(c))


# ---------------------------------------------------------------------------
# normality of a subset P: e+f+d defined, e+d in P, f+d in P  =>  d in P.
# Scan runs over pairs (p, q) in P and d <= p, q with e = p-d, f = q-d.


@njit(cache=True)
def _normality_numba(S, ominus, leq, pidx, in_p):  # pragma: no cover
    n = S.shape[0]
    for i in range(pidx.shape[0]):
        p = pidx[i]
        for j in range(pidx.shape[0]):
            q = pidx[j]
            for d in range(n):
                if in_p[d] or not (leq[d, p] and leq[d, q]):
                    continue
                e = ominus[p, d]
                if S[e, q] >= 0:
                    return p, q, d
    return -1, -1, -1


def _normality_numpy(S, ominus, leq, pidx, in_p):
    n = S.shape[0]
    d_all = np.arange(n)
    for p in pidx:
        below_p = leq[:, p]
        e_all = np.where(below_p, ominus[p, np.minimum(d_all, n - 1)], -1)
        for q in pidx:
            cand = below_p & leq[:, q] & ~in_p
            if not cand.any():
                continue
            d = d_all[cand]
            bad = S[e_all[cand], q] >= 0
            if bad.any():
                return int(p), int(q), int(d[np.argmax(bad)])
    return -1, -1, -1


def normality_violation(S, ominus, leq, pidx, in_p):
    fn = _normality_numba if backend() == "numba" else _normality_numpy
    p, q, d = fn(
        np.ascontiguousarray(S),
        np.ascontiguousarray(ominus),
        np.ascontiguousarray(leq),
        np.ascontiguousarray(np.asarray(pidx, dtype=np.int64)),
        np.ascontiguousarray(in_p),
    )
    return None if p < 0 else (int(p), int(q), int(d))


# ---------------------------------------------------------------------------
# additivity of a map table: J[a + b] == J[a] + J[b] on defined pairs


@njit(cache=True)
def _map_additivity_numba(S, J):  # pragma: no cover
    n = S.shape[0]
    for a in range(n):
        ja = J[a]
        for b in range(n):
            s = S[a, b]
            if s >= 0 and J[s] != S[ja, J[b]]:
                return a, b
    return -1, -1


def _map_additivity_numpy(S, J):
    n = S.shape[0]
    step = max(1, (1 << 22) // n)
    for lo in range(0, n, step):
        blk = S[lo:lo + step]
        defined = blk >= 0
        lhs = J[np.where(defined, blk, 0)]
        rhs = S[J[lo:lo + step][:, None], J[None, :]]
        bad = defined & (lhs != rhs)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return int(lo + i), int(j)
    return -1, -1


def map_additivity_violation(S, J):
    fn = _map_additivity_numba if backend() == "numba" else _map_additivity_numpy
    a, b = fn(np.ascontiguousarray(S), np.ascontiguousarray(np.asarray(J, dtype=S.dtype)))
    return None if a < 0 else (int(a), int(b))


# ---------------------------------------------------------------------------
# Mackey witness: c with c <= a, c <= b, (a-c)+(b-c)+c defined


@njit(cache=True)
def _mackey_numba(S, ominus, leq, a, b):  # pragma: no cover
    n = S.shape[0]
    for c in range(n):
        if not (leq[c, a] and leq[c, b]):
            continue
        a1 = ominus[a, c]
        b1 = ominus[b, c]
        s = S[a1, b1]
        if s >= 0 and S[s, c] >= 0:
            return c
    return -1


def _mackey_numpy(S, ominus, leq, a, b):
    cand = np.flatnonzero(leq[:, a] & leq[:, b])
    if cand.size == 0:
        return -1
    a1 = ominus[a, cand]
    b1 = ominus[b, cand]
    s = S[a1, b1]
    ok = s >= 0
    ok[ok] = S[s[ok], cand[ok]] >= 0
    hits = np.flatnonzero(ok)
    return int(cand[hits[0]]) if hits.size else -1


def mackey_witness(S, ominus, leq, a, b):
    fn = _mackey_numba if backend() == "numba" else _mackey_numpy
    c = fn(
        np.ascontiguousarray(S),
        np.ascontiguousarray(ominus),
        np.ascontiguousarray(leq),
        a,
        b,
    )
    return None if c < 0 else int(c)

"""Compression bases: projection-indexed families of compressions.

A compression with focus p is an additive idempotent map with range
[0, p] and kernel [0, p'].  A base assigns one compression to every
member of a normal sub-effect-algebra P and is closed under composition
on Mackey-compatible pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional

import networkx as nx
import numpy as np

from . import kernels
from .core import (
    Check,
    FiniteAlgebra,
    GridAlgebra,
    ProductAlgebra,
    Report,
    TRIPLE_BUDGET,
    PAIR_BUDGET,
    SAMPLE_SIZE,
    is_principal,
    mackey_compatible,
    sharp_elements,
)
from .errors import DomainMismatch, NoCover, NotEnumerable

MAP_CACHE_ENTRIES = 48_000_000  # cache J tables only while |P|*n stays below


class CompressionBase:
    """Finite compression base: projections plus their map tables.

    ``maps`` may hold explicit ``(n,)`` tables or zero-argument builders
    that produce them; builders keep memory bounded on large carriers.
    """

    enumerable = True

    def __init__(self, algebra: FiniteAlgebra, projections: Iterable[int], maps: Dict):
        self.algebra = algebra
        self.projections = sorted(int(p) for p in projections)
        self.p_set = frozenset(self.projections)
        self.p_pos = {p: i for i, p in enumerate(self.projections)}
        self._maps = dict(maps)
        self._cache_maps = len(self.projections) * algebra.size <= MAP_CACHE_ENTRIES
        self._pcompat = None
        self._pc_matrix = None
        self._elem_leq_proj = None
        self._cover_vec = None
        self._spectral = None
        self._p_meet = None

    # -- maps ----------------------------------------------------------------

    def map_table(self, p: int) -> np.ndarray:
        entry = self._maps[p]
        if callable(entry):
            table = np.asarray(entry(), dtype=np.int64)
            if self._cache_maps:
                self._maps[p] = table
            return table
        return np.asarray(entry, dtype=np.int64)

    def apply(self, p: int, a: int) -> int:
        return int(self.map_table(p)[a])

    def p_ortho(self, p: int) -> int:
        return self.algebra.ortho(p)

    # -- commutants ------------------------------------------------------------

    def commutant_mask(self, p: int) -> np.ndarray:
        """a in C(p) iff a = J_p(a) + J_p'(a)."""
        E = self.algebra
        jp = self.map_table(p)
        jq = self.map_table(self.p_ortho(p))
        return E.sum_pairs(jp, jq) == np.arange(E.size)

    def in_commutant(self, a: int, p: int) -> bool:
        E = self.algebra
        s = E.sum(self.apply(p, a), self.apply(self.p_ortho(p), a))
        return s is not None and s == a

    def pc_matrix(self) -> np.ndarray:
        """Boolean (n, |P|) table of commutant membership."""
        if self._pc_matrix is None:
            cols = [self.commutant_mask(p) for p in self.projections]
            self._pc_matrix = np.stack(cols, axis=1)
        return self._pc_matrix

    def pcompat(self) -> np.ndarray:
        """(|P|, |P|) Mackey compatibility, via q in C(p)."""
        if self._pcompat is None:
            P = np.array(self.projections)
            self._pcompat = self.pc_matrix()[P, :]
            # symmetry is a theorem for valid bases; keep the conjunction so
            # diagnostics on broken bases stay order-independent
            self._pcompat = self._pcompat & self._pcompat.T
        return self._pcompat

    def pc_set(self, a: int) -> np.ndarray:
        """PC(a): projections whose compressions decompose a."""
        return np.array(self.projections)[self.pc_matrix()[a]]

    def bicommutant_set(self, a: int) -> np.ndarray:
        """P(a) = PC(PC(a) u {a}): projections in PC(a) compatible with all of it."""
        mask = self.pc_matrix()[a]
        ok = mask & ~((~self.pcompat()) & mask[None, :]).any(axis=1)
        return np.array(self.projections)[ok]

    def bicommutant_mask_all(self) -> np.ndarray:
        """(n, |P|) membership table of P(a) for every element."""
        pc = self.pc_matrix()
        # a projection p fails for a iff some q in PC(a) is incompatible with p
        misses = pc.astype(np.int16) @ (~self.pcompat()).astype(np.int16)
        return pc & (misses == 0)

    # -- covers ------------------------------------------------------------------

    def elem_leq_proj(self) -> np.ndarray:
        if self._elem_leq_proj is None:
            E = self.algebra
            P = np.array(self.projections)
            n, m = E.size, P.size
            out = np.empty((n, m), dtype=bool)
            for i, p in enumerate(P):
                out[:, i] = E.leq_pairs(np.arange(n), np.full(n, p))
            self._elem_leq_proj = out
        return self._elem_leq_proj

    def proj_leq(self) -> np.ndarray:
        return self.elem_leq_proj()[np.array(self.projections), :]

    def cover_vec(self) -> np.ndarray:
        """Least projection above each element; -1 where none exists."""
        if self._cover_vec is None:
            cand = self.elem_leq_proj()
            strictly_above = (~self.proj_leq()).astype(np.int32)
            misses = cand.astype(np.int32) @ strictly_above.T  # candidates not above P[i]
            ok = cand & (misses == 0)
            P = np.array(self.projections)
            have = ok.any(axis=1)
            self._cover_vec = np.where(have, P[np.argmax(ok, axis=1)], -1)
        return self._cover_vec

    def cover(self, a: int) -> int:
        c = int(self.cover_vec()[a])
        if c < 0:
            raise NoCover(self.algebra.label(a))
        return c

    def has_pcp(self) -> bool:
        return bool((self.cover_vec() >= 0).all())

    # -- lattice structure of P ----------------------------------------------------

    def p_meet_table(self) -> np.ndarray:
        """Pairwise meets inside P (as a sub-poset); -1 where none."""
        if self._p_meet is None:
            Pleq = self.proj_leq()
            m = len(self.projections)
            out = -np.ones((m, m), dtype=np.int64)
            for i in range(m):
                for j in range(m):
                    below = Pleq[:, i] & Pleq[:, j]
                    idx = np.flatnonzero(below)
                    sub = Pleq[np.ix_(idx, idx)]
                    ranks = sub.sum(axis=0)
                    k = int(np.argmax(ranks))
                    if ranks[k] == idx.size:
                        out[i, j] = self.projections[idx[k]]
            self._p_meet = out
        return self._p_meet

    def meet_proj(self, p: int, q: int) -> Optional[int]:
        v = int(self.p_meet_table()[self.p_pos[p], self.p_pos[q]])
        return None if v < 0 else v

    def join_proj(self, p: int, q: int) -> Optional[int]:
        v = self.meet_proj(self.p_ortho(p), self.p_ortho(q))
        return None if v is None else self.p_ortho(v)

    def meet_proj_many(self, ps) -> Optional[int]:
        ps = list(ps)
        out = ps[0]
        for p in ps[1:]:
            out = self.meet_proj(out, p)
            if out is None:
                return None
        return out

    # spectrality verdict is computed in the comparability module and cached here
    def is_spectral(self) -> bool:
        if self._spectral is None:
            from . import comparability

            rep = comparability.check_b_comparability(self)
            self._spectral = rep.passed and self.has_pcp()
        return self._spectral


# ---------------------------------------------------------------------------
# map classification


@dataclass
class MapClassification:
    kind: str  # not_additive | retraction | compression
    focus: Optional[int]
    witness: object = None

    @property
    def is_compression(self) -> bool:
        return self.kind == "compression"


def classify_map(E: FiniteAlgebra, J, budget: int = PAIR_BUDGET,
                 seed: int = 0) -> MapClassification:
    """Decide whether a function table is additive / a retraction / a compression.

    Oversized carriers are checked on a seeded sample of elements (plus
    the boundary elements), matching the budgeted validation policy.
    """
    J = np.asarray(J, dtype=np.int64)
    n = E.size
    if J.shape != (n,) or J.min() < 0 or J.max() >= n:
        raise DomainMismatch("map table must send the carrier into itself")

    witness = _additivity_violation(E, J, budget)
    if witness is not None:
        return MapClassification("not_additive", None, witness)

    focus = int(J[E.one])
    if n <= min(budget, 4 * SAMPLE_SIZE):
        idx = np.arange(n)
    else:
        rng = np.random.default_rng(seed)
        idx = np.unique(np.concatenate([
            rng.integers(0, n, size=SAMPLE_SIZE),
            [E.zero, E.one, focus, E.ortho(focus)]]))
    below = idx[E.leq_pairs(idx, np.full(idx.size, focus))]
    fixed = J[below] == below
    if not fixed.all():
        return MapClassification("not_additive", None, int(below[np.argmin(fixed)]))

    kernel = J[idx] == E.zero
    should = E.leq_pairs(idx, np.full(idx.size, E.ortho(focus)))
    if (kernel == should).all():
        return MapClassification("compression", focus)
    return MapClassification("retraction", focus, int(idx[np.argmax(kernel != should)]))


def _additivity_violation(E: FiniteAlgebra, J, budget: int, seed: int = 0):
    n = E.size
    if E.dense and n * n <= budget:
        return kernels.map_additivity_violation(E.sum_table, J)
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, n, size=SAMPLE_SIZE)
    ys = rng.integers(0, n, size=SAMPLE_SIZE)
    ss = E.sum_pairs(xs, ys)
    ok = ss >= 0
    lhs = np.where(ok, J[np.maximum(ss, 0)], -1)
    rhs = np.where(ok, E.sum_pairs(J[xs], J[ys]), -1)
    bad = np.flatnonzero(ok & (lhs != rhs))
    return (int(xs[bad[0]]), int(ys[bad[0]])) if bad.size else None


# ---------------------------------------------------------------------------
# base validation


def validate_base(E: FiniteAlgebra, cb: CompressionBase,
                  budget: int = TRIPLE_BUDGET, seed: int = 0) -> Report:
    """Verify the compression-base laws.

    Checks: P is a sub-effect algebra, every map is a compression focused
    at its index (C1), composites on Mackey-compatible pairs stay in the
    family (C2), P is normal, supplements pair up, and the triple law
    J_{p+q} o J_{q+r} = J_r holds on summable triples.
    """
    rep = Report(f"compression base on {E.kind} (|P|={len(cb.projections)})")
    n = E.size
    P = cb.projections

    # sub-effect algebra: contains 1, closed under ' and partial sums
    ok = E.one in cb.p_set and E.zero in cb.p_set
    closure_w = None
    for p in P:
        if E.ortho(p) not in cb.p_set:
            ok, closure_w = False, ("ortho", p)
            break
    if ok:
        pa = np.array(P)
        sums = E.sum_pairs(np.repeat(pa, pa.size), np.tile(pa, pa.size))
        outside = [s for s in sums[sums >= 0] if int(s) not in cb.p_set]
        if outside:
            ok, closure_w = False, ("sum", int(outside[0]))
    rep.add("P-sub-effect-algebra", ok, witness=closure_w)

    # (C1): each map is a compression with the right focus
    check_projs = list(P)
    proj_mode = "full"
    if len(P) * n > budget // 4:
        rng0 = np.random.default_rng(seed + 7)
        keep = rng0.choice(len(P), size=min(len(P), 256), replace=False)
        check_projs = sorted({P[i] for i in keep} | {E.zero, E.one})
        proj_mode = "sampled"
    pair_budget = max(budget // max(len(check_projs), 1), 4 * SAMPLE_SIZE)
    c1_ok, c1_w = True, None
    for p in check_projs:
        cls = classify_map(E, cb.map_table(p), budget=pair_budget)
        if not (cls.is_compression and cls.focus == p):
            c1_ok, c1_w = False, (p, cls.kind, cls.witness)
            break
    mode = "full" if (proj_mode == "full" and E.dense and n * n <= pair_budget) else "sampled"
    rep.add("C1-compressions", c1_ok, mode=mode, witness=c1_w,
            detail=f"{len(check_projs)} of {len(P)} maps checked")
    if not c1_ok:
        return rep

    # supplements: kernel of J_p is the range [0, p'] of J_p'
    supp_ok = True
    supp_w = None
    supp_idx = np.arange(n) if n <= budget // max(len(check_projs), 1) else \
        np.random.default_rng(seed + 5).integers(0, n, size=SAMPLE_SIZE)
    for p in check_projs:
        kernel = cb.map_table(p)[supp_idx] == E.zero
        rng_mask = E.leq_pairs(supp_idx, np.full(supp_idx.size, E.ortho(p)))
        if not (kernel == rng_mask).all():
            supp_ok, supp_w = False, p
            break
    rep.add("supplement-pairing", supp_ok, mode=proj_mode, witness=supp_w)

    # (C2): composite of a Mackey-compatible pair is in the family
    c2_ok, c2_w, c2_mode = True, None, "full"
    rng = np.random.default_rng(seed)
    full_c2 = E.dense and len(P) ** 2 * n <= budget
    sample = None if full_c2 else rng.integers(0, n, size=min(n, 2000))
    if full_c2:
        pairs = [(p, q) for p in P for q in P]
    else:
        c2_mode = "sampled"
        pa = np.array(P)
        pairs = list({(int(pa[i]), int(pa[j]))
                      for i, j in zip(rng.integers(0, pa.size, 128),
                                      rng.integers(0, pa.size, 128))})
    for p, q in pairs:
        if not _mackey_pair(E, cb, p, q, fast=not full_c2):
            continue
        jp = cb.map_table(p)
        jq = cb.map_table(q)
        r = int(jp[q])  # candidate focus: J_p(J_q(1))
        if r not in cb.p_set:
            c2_ok, c2_w = False, (p, q, "focus", r)
            break
        jr = cb.map_table(r)
        if sample is None:
            agree = (jp[jq] == jr).all()
        else:
            agree = (jp[jq[sample]] == jr[sample]).all()
        if not agree:
            c2_ok, c2_w = False, (p, q, "table", r)
            break
    rep.add("C2-composition", c2_ok, mode=c2_mode, witness=c2_w)

    # normality of P
    in_p = np.zeros(n, dtype=bool)
    in_p[list(cb.p_set)] = True
    if E.dense and len(P) ** 2 * n <= budget:
        w = kernels.normality_violation(E.sum_table, E.ominus_table, E.leq_table,
                                        np.array(P), in_p)
        rep.add("P-normal", w is None, witness=w)
    else:
        rng = np.random.default_rng(seed + 1)
        ds = rng.integers(0, n, size=SAMPLE_SIZE)
        ok_n, w_n = True, None
        pa = np.array(P)
        ps = pa[rng.integers(0, pa.size, size=SAMPLE_SIZE)]
        qs = pa[rng.integers(0, pa.size, size=SAMPLE_SIZE)]
        good = E.leq_pairs(ds, ps) & E.leq_pairs(ds, qs) & ~in_p[ds]
        es = np.where(good, E.ominus_pairs(ps, np.where(good, ds, 0)), -1)
        viol = good & (np.where(good, E.sum_pairs(np.maximum(es, 0), qs), -1) >= 0)
        if viol.any():
            i = int(np.argmax(viol))
            ok_n, w_n = False, (int(ps[i]), int(qs[i]), int(ds[i]))
        rep.add("P-normal", ok_n, mode="sampled", witness=w_n)

    # triple law on summable triples from P: the composite fixes exactly
    # the shared summand, J_{p+q} o J_{q+r} = J_q
    tl_ok, tl_w = True, None
    pa = np.array(P)
    m = pa.size
    if m * m <= 1 << 22:
        pq = E.sum_pairs(np.repeat(pa, m), np.tile(pa, m)).reshape(m, m)
        ii, jj = np.nonzero(pq >= 0)
        ii2, jj2 = np.repeat(ii, m), np.repeat(jj, m)
        kk = np.tile(np.arange(m), ii.size)
        ok = pq[jj2, kk] >= 0
        total = np.where(ok, E.sum_pairs(pq[ii2, jj2], pa[kk]), -1)
        good = np.flatnonzero(ok & (total >= 0))
        triples = [(int(pq[ii2[t], jj2[t]]), int(pa[jj2[t]]),
                    int(pq[jj2[t], kk[t]]), int(pa[kk[t]])) for t in good]
    else:
        rng2 = np.random.default_rng(seed + 2)
        triples = []
        for _ in range(2048):
            p, q, r = (int(pa[rng2.integers(m)]) for _ in range(3))
            s1, s2 = E.sum(p, q), E.sum(q, r)
            if s1 is not None and s2 is not None and E.sum(s1, r) is not None:
                triples.append((s1, q, s2, r))
    tl_mode = "full" if (len(triples) * n <= budget and sample is None) else "sampled"
    cap = 512 if n <= 100_000 else 192
    if tl_mode == "sampled" and len(triples) > cap:
        keep = np.random.default_rng(seed + 3).choice(len(triples), size=cap, replace=False)
        triples = [triples[t] for t in keep]
    for spq, q, sqr, r in triples:
        jpq = cb.map_table(spq)
        jqr = cb.map_table(sqr)
        jq = cb.map_table(q)
        if tl_mode == "full" or sample is None:
            agree = (jpq[jqr] == jq).all()
        else:
            agree = (jpq[jqr[sample]] == jq[sample]).all()
        if not agree:
            tl_ok, tl_w = False, (spq, q, sqr, r)
            break
    rep.add("triple-law", tl_ok, mode=tl_mode, witness=tl_w)
    return rep


def _mackey_pair(E: FiniteAlgebra, cb: CompressionBase, p: int, q: int,
                 fast: bool = False) -> bool:
    # direct witness search; validation must not trust the maps under test
    if fast:
        # for projections the shared summand, when it exists, is the meet
        c = E.meet(p, q)
        if c is not None:
            a1, b1 = E.ominus(p, c), E.ominus(q, c)
            if a1 is not None and b1 is not None:
                s = E.sum(a1, b1)
                if s is not None and E.sum(s, c) is not None:
                    return True
    ok, _ = mackey_compatible(E, p, q)
    return ok


# ---------------------------------------------------------------------------
# the central base


def _central_candidates(E: FiniteAlgebra) -> np.ndarray:
    sharp = sharp_elements(E)
    if isinstance(E, GridAlgebra):
        return sharp  # zero-one vectors are principal and complemented
    keep = [p for p in sharp
            if is_principal(E, int(p)) and is_principal(E, E.ortho(int(p)))]
    return np.array(keep, dtype=np.int64)


def meet_with_all(E: FiniteAlgebra, p: int) -> Optional[np.ndarray]:
    """Vector of meets a ^ p over the carrier; None when some meet fails."""
    if isinstance(E, GridAlgebra):
        return np.minimum(E.coords, E.coords[p]) @ E.strides
    if isinstance(E, ProductAlgebra):
        pa, pb = E.split_index(p)
        la = meet_with_all(E.left, int(pa))
        lb = meet_with_all(E.right, int(pb))
        if la is None or lb is None:
            return None
        ia, ib = E.split_index(np.arange(E.size))
        return la[ia] * E.right.size + lb[ib]
    out = np.empty(E.size, dtype=np.int64)
    for a in range(E.size):
        v = E.meet(a, p)
        if v is None:
            return None
        out[a] = v
    return out


def central_base(E: FiniteAlgebra) -> CompressionBase:
    """The base of central projections, with U_p(a) = a ^ p.

    An element is central when it is sharp, it and its orthosupplement are
    principal, and every a splits as (a ^ p) + (a ^ p').
    """
    centre = []
    maps = {}
    arange = np.arange(E.size)
    for p in _central_candidates(E):
        p = int(p)
        mp = meet_with_all(E, p)
        mq = None if mp is None else meet_with_all(E, E.ortho(p))
        if mp is None or mq is None:
            continue
        if (E.sum_pairs(mp, mq) == arange).all():
            centre.append(p)
            maps[p] = mp
    return CompressionBase(E, centre, maps)


# ---------------------------------------------------------------------------
# commutants, blocks, covers


def commutant(cb: CompressionBase, p: int) -> np.ndarray:
    """C(p) as an array of element indices.

    Lazy carriers cannot list C(p); use ``cb.in_commutant(a, p)`` (which
    matrix bases decide by commutation of matrices) instead.
    """
    if not cb.enumerable:
        raise NotEnumerable("C(p) is not listable; use cb.in_commutant(a, p)")
    return np.flatnonzero(cb.commutant_mask(p))


def pc(cb: CompressionBase, a: int) -> np.ndarray:
    if not cb.enumerable:
        raise NotEnumerable("PC(a) is not listable on a lazy carrier")
    return cb.pc_set(a)


def bicommutant(cb: CompressionBase, a: int):
    """P(a); asserted to be a Boolean subalgebra of P."""
    if not cb.enumerable:
        return cb.bicommutant(a)  # sums of eigenprojections
    out = cb.bicommutant_set(a)
    pos = [cb.p_pos[int(p)] for p in out]
    compat = cb.pcompat()[np.ix_(pos, pos)]
    if not compat.all():
        raise AssertionError("bicommutant is not pairwise compatible")
    for p in out:
        if cb.p_ortho(int(p)) not in set(int(x) for x in out):
            raise AssertionError("bicommutant not closed under orthosupplement")
    return out


def blocks(cb: CompressionBase) -> list:
    """Maximal pairwise-compatible subsets of P, each checked Boolean."""
    compat = cb.pcompat()
    g = nx.Graph()
    g.add_nodes_from(range(len(cb.projections)))
    for i in range(len(cb.projections)):
        for j in range(i + 1, len(cb.projections)):
            if compat[i, j]:
                g.add_edge(i, j)
    out = []
    for clique in nx.find_cliques(g):
        block = sorted(cb.projections[i] for i in clique)
        _check_boolean_block(cb, block)
        out.append(block)
    return sorted(out)


def _check_boolean_block(cb: CompressionBase, block) -> None:
    E = cb.algebra
    bset = set(block)
    for p in block:
        if E.ortho(p) not in bset:
            raise AssertionError(f"block not closed under ': {block}")
    # meets of compatible projections are J_p(q); check closure + distributivity
    meet = {}
    for p in block:
        jp = cb.map_table(p)
        for q in block:
            m = int(jp[q])
            if m not in bset:
                raise AssertionError("block not closed under meets")
            meet[p, q] = m
    for p in block:
        for q in block:
            for r in block:
                j = cb.join_proj(q, r)
                lhs = meet[p, j]
                rhs = cb.join_proj(meet[p, q], meet[p, r])
                if lhs != rhs:
                    raise AssertionError("block fails distributivity")


def c_block(cb: CompressionBase, block) -> np.ndarray:
    """C(B): elements compatible with every projection in the block."""
    mask = np.ones(cb.algebra.size, dtype=bool)
    for p in block:
        mask &= cb.pc_matrix()[:, cb.p_pos[p]]
    return np.flatnonzero(mask)


def projection_cover(cb: CompressionBase, a: int) -> int:
    """Least projection above a; raises NoCover when the set has no minimum."""
    return cb.cover(a)


def has_pcp(cb: CompressionBase) -> bool:
    return cb.has_pcp()


def check_oml(cb: CompressionBase, closure_limit: int = 3) -> Report:
    """P under the cover property: an orthomodular lattice, sup/inf-closed in E."""
    if not cb.enumerable:
        raise NotEnumerable("the projection lattice of a lazy carrier is not listable")
    if not cb.has_pcp():
        missing = int(np.argmax(cb.cover_vec() < 0))
        raise NoCover(cb.algebra.label(missing))
    E = cb.algebra
    rep = Report(f"OML structure of P (|P|={len(cb.projections)})")
    m = len(cb.projections)
    meets = cb.p_meet_table()
    rep.add("pairwise-meets-exist", bool((meets >= 0).all()))
    joins_ok = all(cb.join_proj(p, q) is not None
                   for p in cb.projections for q in cb.projections)
    rep.add("pairwise-joins-exist", joins_ok)

    om_ok, om_w = True, None
    Pleq = cb.proj_leq()
    for i, p in enumerate(cb.projections):
        for j, q in enumerate(cb.projections):
            if not Pleq[i, j]:
                continue
            inner = cb.meet_proj(q, cb.p_ortho(p))
            rhs = None if inner is None else cb.join_proj(p, inner)
            if rhs != q:
                om_ok, om_w = False, (p, q)
                break
        if not om_ok:
            break
    rep.add("orthomodular-law", om_ok, witness=om_w)

    # sup/inf closure in E for small subsets
    import itertools

    cl_ok, cl_w = True, None
    for size in range(2, closure_limit + 1):
        for subset in itertools.combinations(cb.projections, size):
            mv = E.meet_many(subset)
            if mv is not None and mv not in cb.p_set:
                cl_ok, cl_w = False, ("meet", subset, mv)
                break
            jv = E.meet_many([E.ortho(p) for p in subset])
            if jv is not None and E.ortho(jv) not in cb.p_set:
                cl_ok, cl_w = False, ("join", subset, E.ortho(jv))
                break
        if not cl_ok:
            break
    rep.add(f"sup-inf-closed-(subsets ≤ {closure_limit})", cl_ok, witness=cl_w)
    return rep

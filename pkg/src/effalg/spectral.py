"""Dyadic spectral resolutions from iterated halving.

A spectral base resolves every element a into projections p_lambda
indexed by dyadic rationals: the splitting tree {u_w, c_w} refines the
cover of a binary digit by binary digit, and prefix sums of each layer
give the resolution.  Exact dyadic bookkeeping (binary strings w,
lambda(w) = k(w)/2^l(w)) is kept in integers end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

import numpy as np

from . import comparability
from .core import Report, is_archimedean
from .errors import InternalConsistencyError, NotSpectral, Unstable

# ---------------------------------------------------------------------------
# binary strings and dyadic rationals


def lam_of(w) -> Fraction:
    """lambda(w) = sum_j w_j 2^-j."""
    return Fraction(k_of(w), 2 ** len(w)) if w else Fraction(0)


def k_of(w) -> int:
    k = 0
    for bit in w:
        k = 2 * k + bit
    return k


def succ(w) -> Optional[tuple]:
    """Next string of the same length; None past the all-ones string."""
    w = list(w)
    for i in reversed(range(len(w))):
        if w[i] == 0:
            w[i] = 1
            return tuple(w[:i + 1]) + (0,) * (len(w) - i - 1)
        w[i] = 0
    return None


def pred(w) -> Optional[tuple]:
    w = list(w)
    for i in reversed(range(len(w))):
        if w[i] == 1:
            w[i] = 0
            return tuple(w[:i + 1]) + (1,) * (len(w) - i - 1)
        w[i] = 1
    return None


def lam_succ(w) -> Fraction:
    s = succ(w)
    return Fraction(1) if s is None else lam_of(s)


def lam_pred(w) -> Fraction:
    p = pred(w)
    return Fraction(0) if p is None else lam_of(p)


@dataclass(frozen=True)
class StringCalc:
    lam: Fraction
    k: int
    length: int
    successor: Optional[tuple]
    predecessor: Optional[tuple]
    lam_successor: Fraction
    lam_predecessor: Fraction


def string_calc(w) -> StringCalc:
    """All dyadic bookkeeping for one binary string."""
    w = tuple(int(b) for b in w)
    if any(b not in (0, 1) for b in w):
        raise ValueError("binary strings only")
    return StringCalc(lam_of(w), k_of(w), len(w), succ(w), pred(w),
                      lam_succ(w), lam_pred(w))


@dataclass(frozen=True)
class DyadicRational:
    """num / 2^level in [0, 1], canonical (odd numerator or level 0)."""

    num: int
    level: int

    @classmethod
    def from_fraction(cls, f: Fraction) -> "DyadicRational":
        f = Fraction(f)
        den = f.denominator
        if den & (den - 1):
            raise ValueError(f"{f} is not dyadic")
        return cls(f.numerator, den.bit_length() - 1)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, 2 ** self.level)

    def __post_init__(self):
        if not 0 <= self.num <= 2 ** self.level:
            raise ValueError("dyadic rational outside [0, 1]")
        if self.level > 0 and self.num % 2 == 0:
            raise ValueError("numerator must be odd in canonical form")


def grid(depth: int):
    """All dyadics j / 2^depth in [0, 1], ascending."""
    return [Fraction(j, 2 ** depth) for j in range(2 ** depth + 1)]


# ---------------------------------------------------------------------------
# splitting tree


class SplittingTree:
    """Families u_w (projections) and c_w to a fixed depth.

    Only nodes with nonzero u_w are stored; missing strings read as the
    zero element, which is what the construction produces below a dead
    branch.
    """

    def __init__(self, algebra, element, depth: int):
        self.algebra = algebra
        self.element = element
        self.depth = depth
        self._u: Dict[tuple, object] = {}
        self._c: Dict[tuple, object] = {}

    def u(self, w):
        return self._u.get(tuple(w), self.algebra.zero)

    def c(self, w):
        return self._c.get(tuple(w), self.algebra.zero)

    def layer(self, level: int):
        """Nonzero (w, u_w) at one level, ordered by k(w)."""
        out = [(w, u) for w, u in self._u.items() if len(w) == level]
        return sorted(out, key=lambda t: k_of(t[0]))

    def layer_full(self, level: int):
        for j in range(2 ** level):
            w = tuple((j >> (level - 1 - i)) & 1 for i in range(level))
            yield w, self.u(w), self.c(w)


def splitting_tree(cb, a, n: int, check: bool = True) -> SplittingTree:
    """Iterated halving of a below its cover, to depth n."""
    comparability.require_spectral(cb)
    E = cb.algebra
    tree = SplittingTree(E, a, n)
    root = cb.cover(a)
    if not E.eq(root, E.zero):
        tree._u[()] = root
        tree._c[()] = a
    in_bic = _bicommutant_checker(cb, a) if check else None
    for level in range(n):
        for w, u in tree.layer(level):
            sr = comparability.split(cb, tree.c(w), u)
            for bit, (uc, cc) in enumerate([(sr.u0, sr.c0), (sr.u1, sr.c1)]):
                if not E.eq(uc, E.zero):
                    tree._u[w + (bit,)] = uc
                    tree._c[w + (bit,)] = cc
    if check:
        for level in range(n + 1):
            total = E.zero
            for w, u in tree.layer(level):
                if in_bic is not None and not in_bic(u):
                    raise InternalConsistencyError(
                        f"u_{w} escaped the bicommutant of {E.label(a)}")
                s = E.sum(total, u)
                if s is None:
                    raise InternalConsistencyError(f"layer {level} is not orthogonal")
                total = s
            if not E.eq(total, root if tree._u else E.zero):
                raise InternalConsistencyError(f"layer {level} does not add up to the cover")
    return tree


def _bicommutant_checker(cb, a):
    if cb.enumerable:
        members = set(int(p) for p in cb.bicommutant_set(a))
        return lambda p: int(p) in members or p == cb.algebra.zero
    return lambda p: cb.in_bicommutant(p, a)


# ---------------------------------------------------------------------------
# binary resolution


@dataclass
class SpectralResolution:
    """Projections p_lambda on the dyadic grid of one depth."""

    algebra: object
    element: object
    depth: int
    entries: Dict[Fraction, object] = field(default_factory=dict)
    tree: Optional[SplittingTree] = None

    def at(self, lam) -> object:
        lam = Fraction(lam)
        if lam not in self.entries:
            raise KeyError(f"{lam} is not on the depth-{self.depth} grid")
        return self.entries[lam]

    def grid(self):
        return sorted(self.entries)

    def items(self):
        return [(lam, self.entries[lam]) for lam in self.grid()]


def binary_resolution(cb, a, n: int) -> SpectralResolution:
    """p_0 = (cover a)', then prefix sums of the depth-n layer, p_1 = 1."""
    E = cb.algebra
    tree = splitting_tree(cb, a, n)
    root = tree.u(()) if tree._u else E.zero
    res = SpectralResolution(E, a, n, tree=tree)
    by_k = {k_of(w): u for w, u in tree.layer(n)}
    acc = E.ortho(root)
    res.entries[Fraction(0)] = acc
    for j in range(1, 2 ** n + 1):
        u = by_k.get(j - 1)
        if u is not None:
            s = E.sum(acc, u)
            if s is None:
                raise InternalConsistencyError("resolution prefix sum undefined")
            acc = s
        res.entries[Fraction(j, 2 ** n)] = acc
    if not E.eq(acc, E.one):
        raise InternalConsistencyError("resolution does not reach the unit")
    prev = None
    for lam in res.grid():
        cur = res.entries[lam]
        if prev is not None and not E.leq(prev, cur):
            raise InternalConsistencyError("resolution is not monotone")
        prev = cur
    return res


# ---------------------------------------------------------------------------
# rational extension


@dataclass
class RationalValue:
    projection: object
    stable_from: int
    depth: int


def rational_resolution(cb, a, lam, n: int, details: bool = False):
    """Meet of the dyadic entries above lam, stabilized in the depth.

    Requires an archimedean algebra (right continuity fails otherwise).
    Raises Unstable when the meet still moved between depths n-1 and n.
    """
    comparability.require_spectral(cb)
    E = cb.algebra
    if not is_archimedean(E):
        raise NotSpectral("rational resolution requires an archimedean algebra")
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError("lambda must lie in [0, 1]")
    res = binary_resolution(cb, a, n)
    if lam == 1:
        out = res.at(1)
        return RationalValue(out, 0, n) if details else out

    def at_depth(m):
        j = (lam * 2 ** m).__floor__() + 1
        return res.at(min(Fraction(j, 2 ** m), Fraction(1)))

    values = [at_depth(m) for m in range(1, n + 1)]
    if len(values) >= 2 and not E.eq(values[-1], values[-2]):
        raise Unstable(n)
    stable_from = n
    for m in range(len(values) - 1, 0, -1):
        if E.eq(values[m - 1], values[-1]):
            stable_from = m
        else:
            break
    # cross-check: the stabilized value is the meet (in P) of the whole tail
    tail = [p for mu, p in res.items() if mu > lam]
    meet = tail[0]
    for p in tail[1:]:
        meet = cb.meet_proj(meet, p)
        if meet is None:
            raise InternalConsistencyError("projection meet missing along the tail")
    if not E.eq(meet, values[-1]):
        raise InternalConsistencyError("stabilized value differs from the tail meet")
    return RationalValue(values[-1], stable_from, n) if details else values[-1]


# ---------------------------------------------------------------------------
# the doubling maps f_w


def apply_fw(cb, w, b, q):
    """f_w = f_{w_n} o ... o f_{w_1} inside [0, q]; None once a step fails.

    f_0(b) = 2b (needs b <= q - b), f_1(b) = q - 2(q - b) (needs q - b <= b).
    """
    E = cb.algebra
    cur = b
    if not E.leq(cur, q):
        return None
    for bit in w:
        comp = E.ominus(q, cur)
        if bit == 0:
            if not E.leq(cur, comp):
                return None
            cur = E.sum(cur, cur)
        else:
            if not E.leq(comp, cur):
                return None
            cur = E.ominus(q, E.sum(comp, comp))
        if cur is None:
            return None
    return cur


# ---------------------------------------------------------------------------
# characterization verifier


def verify_resolution(cb, a, family: Dict[Fraction, object], n: int) -> Report:
    """Check the four characterizing clauses of a depth-n dyadic family.

    (i) entries are projections commuting with a; (ii) boundary values
    and monotonicity; (iii) right continuity, checked by exact meets at
    every lambda of level < n -- deeper points carry no right-limit
    information, and the check presumes the depth out-resolves the
    element's dyadic scale (denominator for grids, eigenvalue spacing
    for matrices); (iv) the doubling maps f_w exist on J_{u_w}(a) for
    u_w read off the family, and each image has cover u_w (the strict
    left placement that right continuity forces cell by cell).  For a
    spectral archimedean algebra the computed resolution is the unique
    family passing all four.
    """
    E = cb.algebra
    rep = Report(f"resolution family for {E.label(a)} at depth {n}")
    want = grid(n)
    family = {Fraction(k): v for k, v in family.items()}
    rep.add("grid-complete", sorted(family) == want)
    if not rep.passed:
        return rep

    ok_i, w_i = True, None
    for lam in want:
        p = family[lam]
        if not (_is_projection(cb, p) and cb.in_commutant(a, p)):
            ok_i, w_i = False, lam
            break
    rep.add("(i)-projections-commuting-with-a", ok_i, witness=w_i)

    p0, p1 = family[Fraction(0)], family[Fraction(1)]
    ok_ii = E.leq(p0, E.ortho(a)) and E.eq(p1, E.one)
    if ok_ii:
        for lo, hi in zip(want, want[1:]):
            if not E.leq(family[lo], family[hi]):
                ok_ii = False
                break
    rep.add("(ii)-boundary-and-monotone", ok_ii)

    if not (ok_i and ok_ii):
        rep.add("(iii)-right-continuous", False, detail="skipped: (i)/(ii) failed")
        rep.add("(iv)-doubling-maps-exist", False, detail="skipped: (i)/(ii) failed")
        return rep

    # suffix meets: tail[i] = meet of all entries strictly above want[i]
    ok_iii, w_iii = True, None
    tail = {}
    acc = family[want[-1]]
    tail[len(want) - 2] = acc
    for i in range(len(want) - 2, 0, -1):
        acc = cb.meet_proj(acc, family[want[i]])
        if acc is None:
            ok_iii, w_iii = False, (want[i], "meet")
            break
        tail[i - 1] = acc
    if ok_iii:
        for i, lam in enumerate(want[:-1]):
            if Fraction(lam).denominator == 2 ** n and n > 0:
                continue  # level-n points: no strictly finer grid to the right
            if not E.eq(tail[i], family[lam]):
                ok_iii, w_iii = False, lam
                break
    rep.add("(iii)-right-continuous", ok_iii, witness=w_iii)

    ok_iv, w_iv = True, None
    for level in range(n + 1):
        for j in range(2 ** level):
            w = tuple((j >> (level - 1 - i)) & 1 for i in range(level))
            u_w = cb.meet_proj(family[lam_succ(w)], E.ortho(family[lam_of(w)]))
            if u_w is None:
                ok_iv, w_iv = False, (w, "meet")
                break
            img = apply_fw(cb, w, cb.apply(u_w, a), u_w)
            if img is None or not E.leq(img, u_w):
                ok_iv, w_iv = False, w
                break
            if not E.eq(cb.cover(img), u_w):  # image must fill its cell
                ok_iv, w_iv = False, (w, "cover")
                break
        if not ok_iv:
            break
    rep.add("(iv)-doubling-maps-exist", ok_iv, witness=w_iv)
    return rep


def _is_projection(cb, p) -> bool:
    if cb.enumerable:
        return isinstance(p, (int, np.integer)) and int(p) in cb.p_set
    return cb.is_projection(p)


# ---------------------------------------------------------------------------
# states against the resolution


def expectation_bounds(cb, a, state, n: int):
    """(lo, hi) with lo <= s(a) <= hi = lo + 2^-n, from the depth-n layer."""
    comparability.require_spectral(cb)
    state.require_valid()
    tree = splitting_tree(cb, a, n)
    lo = None
    for w, u in tree.layer(n):
        term = lam_of(w) * state(u)
        lo = term if lo is None else lo + term
    if lo is None:
        lo = Fraction(0) * state(cb.algebra.one)  # keeps the value type
    step = Fraction(1, 2 ** n)
    hi = lo + (step if isinstance(lo, Fraction) else float(step))
    return lo, hi


def commutes_iff_spectrum(cb, a, q, n: int, states=()) -> Report:
    """a in C(q) against: every spectral projection of a lies in C(q).

    When the spectrum commutes, the two-sided compression identity
    s(a) = s(J_q(a) + J_q'(a)) is evaluated on the supplied states.
    """
    E = cb.algebra
    rep = Report(f"commutation vs spectrum for {E.label(a)} and {E.label(q)}")
    lhs = cb.in_commutant(a, q)
    res = binary_resolution(cb, a, n)
    rhs = all(cb.in_commutant(p, q) for _, p in res.items())
    rep.add("sides-agree", lhs == rhs,
            detail=f"element-commutes={lhs}, spectrum-commutes={rhs}")
    if rhs:
        v = E.sum(cb.apply(q, a), cb.apply(E.ortho(q), a))
        for i, s in enumerate(states):
            good = v is not None and _close(s(a), s(v), E.tol)
            rep.add(f"state-{i}-compression-identity", good)
    return rep


def _close(x, y, tol):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return abs(float(x) - float(y)) <= max(tol, 1e-12) * 10

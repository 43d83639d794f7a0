"""Lattice-ordered groups Z^X with an order unit.

Independent oracle for the dyadic constructions: orthogonal
decompositions, the Rickart mapping g* (largest annihilating
projection), rational spectral projections ((n*g - m*u)_+)^* and the
step-function approximation with its norm bound.  Everything here is
exact integer/rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

import numpy as np

from .errors import GridTooNarrow


def _vec(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


@dataclass(frozen=True)
class ZGroup:
    """Z^X ordered coordinatewise, with unit u (all coordinates >= 1).

    Projections are the sharp elements of [0, u]: vectors with
    coordinates u_i or 0.  J_p masks coordinates to the support of p.
    """

    u: tuple

    def __init__(self, u):
        u = _vec(u)
        if (u < 1).any():
            raise ValueError("order unit needs every coordinate >= 1")
        object.__setattr__(self, "u", tuple(int(x) for x in u))

    @property
    def unit(self) -> np.ndarray:
        return _vec(self.u)

    @property
    def dim(self) -> int:
        return len(self.u)

    def projection(self, mask) -> np.ndarray:
        return np.where(np.asarray(mask, dtype=bool), self.unit, 0)

    def support(self, p) -> np.ndarray:
        return _vec(p) > 0

    def compress(self, p, g) -> np.ndarray:
        return np.where(self.support(p), _vec(g), 0)

    def proj_complement(self, p) -> np.ndarray:
        return self.unit - _vec(p)

    def all_projections(self):
        if self.dim > 12:
            raise ValueError("projection enumeration capped at 12 coordinates")
        for bits in iter_product((0, 1), repeat=self.dim):
            yield self.projection(np.array(bits, dtype=bool))

    def in_commutant(self, g, p) -> bool:
        g = _vec(g)
        return np.array_equal(self.compress(p, g) + self.compress(self.proj_complement(p), g), g)

    def norm(self, g) -> Fraction:
        """Order-unit norm: max |g_i| / u_i, as an exact rational."""
        g = _vec(g)
        return max((Fraction(int(abs(x)), int(ui)) for x, ui in zip(g, self.u)),
                   default=Fraction(0))


def orthogonal_decomposition(G: ZGroup, g):
    """Unique split g = g_+ - g_- through a projection: (g_+, g_-, p)."""
    g = _vec(g)
    gp = np.maximum(g, 0)
    gm = np.maximum(-g, 0)
    p = G.projection(g > 0)
    assert np.array_equal(G.compress(p, g), gp)
    assert np.array_equal(G.compress(G.proj_complement(p), g), -gm)
    assert np.minimum(gp, gm).max(initial=0) == 0
    return gp, gm, p


def rickart(G: ZGroup, g, verify: bool = None) -> np.ndarray:
    """g*: the largest projection p with g compatible with p and J_p(g) = 0.

    For up to 12 coordinates the defining biconditional
    p <= g*  <=>  (g in C(p) and J_p(g) = 0) is checked against every
    projection by brute force.
    """
    g = _vec(g)
    star = G.projection(g == 0)
    if verify is None:
        verify = G.dim <= 12
    if verify:
        for p in G.all_projections():
            lhs = (p <= star).all()
            rhs = G.in_commutant(g, p) and not G.compress(p, g).any()
            if lhs != rhs:
                raise AssertionError(f"Rickart biconditional fails at {p} for {g}")
    return star


def positive_part_rickart(G: ZGroup, g) -> np.ndarray:
    """((g)_+)^*, the projection annihilating the positive part."""
    gp, _, _ = orthogonal_decomposition(G, g)
    return rickart(G, gp, verify=False)


def group_spectral(G: ZGroup, g, m: int, n: int) -> np.ndarray:
    """Spectral projection at m/n: ((n*g - m*u)_+)^*.

    Well-definedness in the fraction m/n is asserted by evaluating the
    doubled representation 2m/2n as well.
    """
    if n <= 0:
        raise ValueError("need n > 0")
    g = _vec(g)
    p = positive_part_rickart(G, n * g - m * G.unit)
    p2 = positive_part_rickart(G, 2 * n * g - 2 * m * G.unit)
    assert np.array_equal(p, p2), "spectral projection depends on the fraction form"
    return p


def bounds(G: ZGroup, g):
    """(l_g, u_g): extremal rational slopes m/n with m*u <= n*g resp. >=."""
    g = _vec(g)
    fracs = [Fraction(int(x), int(ui)) for x, ui in zip(g, G.u)]
    return min(fracs), max(fracs)


def dyadic_approximation(G: ZGroup, g, grid, scale: int):
    """Partition u along a slope grid so that n*g is close to sum(m_i u_i).

    ``grid`` is a nondecreasing list m_0 <= ... <= m_N of integers with
    m_0 * u <= scale * g <= m_N * u (otherwise GridTooNarrow).  Returns
    (pieces u_1..u_N, achieved_error, max_gap) with
    ||scale*g - sum_i m_i u_i|| <= max_i (m_i - m_{i-1}).
    """
    g = _vec(g)
    grid = [int(m) for m in grid]
    if any(grid[i] > grid[i + 1] for i in range(len(grid) - 1)):
        raise ValueError("grid must be nondecreasing")
    if len(grid) < 2:
        raise ValueError("grid needs at least two points")
    ng = scale * g
    if (ng - grid[0] * G.unit < 0).any() or (ng - grid[-1] * G.unit > 0).any():
        lg, ug = bounds(G, g)
        raise GridTooNarrow(
            f"grid [{grid[0]}, {grid[-1]}] does not bracket scale*g "
            f"(needs m_0 <= {scale * lg}, m_N >= {scale * ug})")
    N = len(grid) - 1
    # nonincreasing chain q_i with q_i in P_+-(n*g - m_i*u); q_0 = u, q_N = 0
    qs = [G.unit]
    for i in range(1, N):
        r = G.projection(ng - grid[i] * G.unit > 0)
        qs.append(np.minimum(r, qs[-1]))
    qs.append(np.zeros(G.dim, dtype=np.int64))
    pieces = [qs[i - 1] - qs[i] for i in range(1, N + 1)]
    assert np.array_equal(np.sum(pieces, axis=0), G.unit)
    for i, ui in enumerate(pieces, start=1):
        x = G.compress(ui, ng)
        assert (grid[i - 1] * ui <= x).all() and (x <= grid[i] * ui).all()
    combo = sum(grid[i] * pieces[i - 1] for i in range(1, N + 1))
    err = G.norm(ng - combo)
    max_gap = max(grid[i] - grid[i - 1] for i in range(1, N + 1))
    if err > max_gap:
        raise AssertionError("approximation bound violated")
    return pieces, err, Fraction(max_gap)


def general_comparability_holds(G: ZGroup, g) -> bool:
    """P_+-(g) is nonempty (witnessed by the positive-support projection)."""
    g = _vec(g)
    p = G.projection(g > 0)
    return (G.compress(p, g) >= 0).all() and (G.compress(G.proj_complement(p), g) <= 0).all()


def check_comparability_equivalence(instance, cb, samples: int = 200, seed: int = 0):
    """Finite grid algebras vs their integer group: comparability agrees.

    Evaluates b-comparability on the algebra and nonemptiness of
    P_+-(g) for a spanning sample of g in [-2u, 2u]; reports agreement.
    """
    from .comparability import check_b_comparability
    from .core import GridAlgebra, Report

    if not isinstance(instance, GridAlgebra):
        raise TypeError("equivalence check needs a grid algebra with a known "
                        "integer universal group")
    G = ZGroup(instance.group_unit)
    rep = Report(f"comparability equivalence on {instance.kind} "
                 f"(k={instance.k}, d={instance.d})")
    alg = check_b_comparability(cb).passed
    rep.add("algebra-b-comparability", alg)
    rng = np.random.default_rng(seed)
    lo, hi = -2 * G.unit, 2 * G.unit
    group_ok = True
    witness = None
    for _ in range(samples):
        g = rng.integers(lo, hi + 1)
        if not general_comparability_holds(G, g):
            group_ok, witness = False, g
            break
    rep.add("group-general-comparability", group_ok, mode="sampled", witness=witness)
    rep.add("verdicts-agree", alg == group_ok)
    return rep

"""Real symmetric matrix effects 0 <= a <= I, compressions a -> p a p.

The carrier is not enumerable; order and equality are decided by
eigenvalue bounds within a fixed tolerance, covers and positive parts
by eigendecomposition, and boundary eigenvalues (|mu| <= tol) always
land on the 'below' side of a split.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .comparability import SplitResult
from .core import EffectAlgebra, Report
from .errors import (
    ElementNotInCarrier,
    InvalidState,
    NotCommuting,
    NotEnumerable,
)

CLUSTER_GAP = 1e-7  # eigenvalues closer than this count as one spectral point


def sym(x: np.ndarray) -> np.ndarray:
    return (x + x.T) / 2.0


class MatrixEffectAlgebra(EffectAlgebra):
    kind = "matrix"
    enumerable = False

    def __init__(self, dim: int, tol: float = 1e-9):
        if dim not in (2, 3, 4):
            raise ValueError("matrix algebras are supported for dimensions 2..4")
        self.dim = dim
        self.tol = tol

    @property
    def zero(self) -> np.ndarray:
        return np.zeros((self.dim, self.dim))

    @property
    def one(self) -> np.ndarray:
        return np.eye(self.dim)

    def check_element(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        if a.shape != (self.dim, self.dim) or np.abs(a - a.T).max() > self.tol:
            raise ElementNotInCarrier("need a symmetric matrix of the right dimension")
        vals = np.linalg.eigvalsh(sym(a))
        if vals.min() < -self.tol or vals.max() > 1 + self.tol:
            raise ElementNotInCarrier("eigenvalues must lie in [0, 1]")
        return sym(a)

    def eq(self, a, b) -> bool:
        return bool(np.abs(np.asarray(a) - np.asarray(b)).max() <= self.tol)

    def leq(self, a, b) -> bool:
        return bool(np.linalg.eigvalsh(sym(b - a)).min() >= -self.tol)

    def sum(self, a, b):
        s = a + b
        return sym(s) if self.leq(s, self.one) else None

    def ominus(self, b, a):
        return sym(b - a) if self.leq(a, b) else None

    def ortho(self, a) -> np.ndarray:
        return self.one - a

    def label(self, a) -> str:
        rows = ["[" + ", ".join(f"{x:.6g}" for x in row) + "]" for row in np.asarray(a)]
        return "[" + ", ".join(rows) + "]"

    def sample_elements(self, rng, count):
        return [self.random_effect(rng) for _ in range(count)]

    def random_effect(self, rng, eigenvalues=None) -> np.ndarray:
        q = np.linalg.qr(rng.standard_normal((self.dim, self.dim)))[0]
        vals = rng.uniform(0, 1, self.dim) if eigenvalues is None else np.asarray(eigenvalues)
        return sym(q @ np.diag(vals) @ q.T)

    def random_projection(self, rng, rank=None) -> np.ndarray:
        if rank is None:
            rank = int(rng.integers(1, self.dim))
        q = np.linalg.qr(rng.standard_normal((self.dim, self.dim)))[0]
        return sym(q[:, :rank] @ q[:, :rank].T)

    def is_projection(self, p) -> bool:
        p = np.asarray(p)
        return bool(np.abs(p - p.T).max() <= self.tol
                    and np.abs(p @ p - p).max() <= 10 * self.tol)

    # sharpness via idempotence; the order-theoretic scan is not available
    def is_sharp(self, a) -> bool:
        return self.is_projection(a)

    def mackey_compatible(self, a, b):
        """Projection case only: a <-> p iff a = p a p + p' a p'."""
        for x, y in ((a, b), (b, a)):
            if self.is_projection(y):
                yc = self.ortho(y)
                ok = self.eq(y @ x @ y + yc @ x @ yc, x)
                return ok, None
        raise NotEnumerable("compatibility search needs a projection argument")


# ---------------------------------------------------------------------------
# eigenstructure helpers


def eig_clusters(a, gap: float = CLUSTER_GAP):
    """[(eigenvalue, projector)] with nearby eigenvalues merged."""
    vals, vecs = np.linalg.eigh(sym(np.asarray(a, dtype=float)))
    out = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > gap:
            block = vecs[:, start:i]
            out.append((float(vals[start:i].mean()), sym(block @ block.T)))
            start = i
    return out


def support_projection(a, tol: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(sym(np.asarray(a, dtype=float)))
    keep = vals > tol
    block = vecs[:, keep]
    return sym(block @ block.T)


def chi_leq(a, lam, tol: float) -> np.ndarray:
    """Spectral indicator: projector onto eigenvalues <= lam (+tol)."""
    vals, vecs = np.linalg.eigh(sym(np.asarray(a, dtype=float)))
    keep = vals <= lam + tol
    block = vecs[:, keep]
    return sym(block @ block.T)


def joint_eigenprojections(e, f, gap: float = CLUSTER_GAP):
    """Common eigenprojections of a commuting symmetric pair."""
    out = []
    for _, p in eig_clusters(e, gap):
        vals, vecs = np.linalg.eigh(sym(p @ f @ p + 2.0 * (np.eye(len(p)) - p)))
        inside = vals < 1.5  # eigenvectors inside range(p)
        vv, ww = vals[inside], vecs[:, inside]
        start = 0
        for i in range(1, len(vv) + 1):
            if i == len(vv) or vv[i] - vv[i - 1] > gap:
                block = ww[:, start:i]
                out.append(sym(block @ block.T))
                start = i
    return out


# ---------------------------------------------------------------------------
# states


class DensityState:
    """a -> trace(rho a) for a density matrix rho."""

    def __init__(self, algebra: MatrixEffectAlgebra, rho):
        self.algebra = algebra
        self.rho = sym(np.asarray(rho, dtype=float))
        self._validated = False

    def __call__(self, a) -> float:
        return float(np.trace(self.rho @ a))

    def validate(self) -> Report:
        rep = Report("density state")
        vals = np.linalg.eigvalsh(self.rho)
        rep.add("positive", vals.min() >= -self.algebra.tol)
        rep.add("unit-trace", abs(np.trace(self.rho) - 1) <= 10 * self.algebra.tol)
        self._validated = rep.passed
        return rep

    def require_valid(self):
        if not self._validated and not self.validate().passed:
            raise InvalidState("density matrix is not positive with unit trace")


def separating_states(E: MatrixEffectAlgebra):
    """A finite family separating symmetric matrices via their moments."""
    d = E.dim
    out = []
    for i in range(d):
        rho = np.zeros((d, d))
        rho[i, i] = 1.0
        out.append(DensityState(E, rho))
    for i, j in combinations(range(d), 2):
        v = np.zeros(d)
        v[i] = v[j] = 1.0
        out.append(DensityState(E, np.outer(v, v) / 2.0))
    return out


# ---------------------------------------------------------------------------
# the canonical compression base


class MatrixCompressionBase:
    """All projections p with J_p(a) = p a p; lazy analogue of the finite base."""

    enumerable = False

    def __init__(self, algebra: MatrixEffectAlgebra):
        self.algebra = algebra
        self._spectral = None

    # shared surface with the finite base -----------------------------------

    def apply(self, p, a) -> np.ndarray:
        return sym(p @ a @ p)

    def p_ortho(self, p) -> np.ndarray:
        return self.algebra.ortho(p)

    def is_projection(self, p) -> bool:
        return self.algebra.is_projection(p)

    def in_commutant(self, a, p) -> bool:
        return bool(np.abs(p @ a - a @ p).max() <= 100 * self.algebra.tol)

    def commute(self, e, f) -> bool:
        return bool(np.abs(e @ f - f @ e).max() <= 100 * self.algebra.tol)

    def has_b_property(self, a) -> bool:
        # the double commutant of a symmetric matrix is spanned by its
        # eigenprojections, which certify commutation
        return True

    def all_b(self) -> bool:
        return True

    def bicommutant(self, a):
        """Sums of eigenprojections of a (including 0 and 1)."""
        projs = [p for _, p in eig_clusters(a)]
        out = [self.algebra.zero]
        for r in range(1, len(projs) + 1):
            for sub in combinations(projs, r):
                out.append(sym(np.sum(sub, axis=0)))
        return out

    def in_bicommutant(self, p, a) -> bool:
        clusters = [q for _, q in eig_clusters(a)]
        total = np.zeros_like(np.asarray(p, dtype=float))
        for q in clusters:
            if np.abs(q @ p @ q - q).max() <= 1e-6:
                total = total + q
        return self.algebra.eq(total, p)

    def cover(self, a) -> np.ndarray:
        return support_projection(a, self.algebra.tol)

    def has_pcp(self) -> bool:
        return True  # support projections cover; spot-checked in is_spectral

    def meet_proj(self, p, q) -> np.ndarray:
        """Projector onto range(p) n range(q): the eigenvalue-2 space of p+q."""
        vals, vecs = np.linalg.eigh(sym(np.asarray(p) + np.asarray(q)))
        keep = vals > 2 - 1e-6
        block = vecs[:, keep]
        return sym(block @ block.T)

    def p_le_set(self, e, f):
        """Joint spectral projections separating e below f."""
        if not self.commute(e, f):
            raise NotCommuting("matrix pair does not commute")
        E = self.algebra
        joint = joint_eigenprojections(e, f)
        out = []
        for r in range(len(joint) + 1):
            for sub in combinations(joint, r):
                p = sym(np.sum(sub, axis=0)) if sub else E.zero
                pc = E.ortho(p)
                if E.leq(self.apply(p, e), self.apply(p, f)) and \
                   E.leq(self.apply(pc, f), self.apply(pc, e)):
                    out.append(p)
        return out

    def positive_part(self, b, a) -> np.ndarray:
        """(b - a)_+ by clamping negative eigenvalues at zero."""
        vals, vecs = np.linalg.eigh(sym(np.asarray(b) - np.asarray(a)))
        return sym(vecs @ np.diag(np.maximum(vals, 0.0)) @ vecs.T)

    def split(self, c, q) -> SplitResult:
        """Spectral halving of c inside [0, q]; boundary (|mu| <= tol) goes below.

        Diagonalizes 2c - q on range(q): the nonpositive eigenspace is u0,
        its complement in q is u1.
        """
        E = self.algebra
        tol = E.tol
        vals, vecs = np.linalg.eigh(sym(np.asarray(q, dtype=float)))
        basis = vecs[:, vals > 0.5]
        if basis.shape[1] == 0:
            z = E.zero
            return SplitResult(u0=z, u1=z, c0=z, c1=z, ambient_unit=z)
        m = basis.T @ (2.0 * c - q) @ basis
        mv, mw = np.linalg.eigh(sym(m))
        w0 = basis @ mw[:, mv <= tol]
        u0 = sym(w0 @ w0.T)
        u1 = sym(q - u0)
        c0 = sym(2.0 * (u0 @ c @ u0))
        c1 = sym(u1 - 2.0 * (u1 @ (q - c) @ u1))
        return SplitResult(u0=u0, u1=u1, c0=c0, c1=c1, ambient_unit=q)

    def check_b_comparability(self, samples: int = 25, seed: int = 0) -> Report:
        """Spot checks of the operator-interval laws (the carrier is lazy)."""
        E = self.algebra
        rep = Report(f"b-comparability on {E.kind} dim {E.dim}")
        rep.add("b-property", True, mode="structural",
                detail="double commutant of a symmetric matrix")
        rng = np.random.default_rng(seed)
        ok = True
        for _ in range(samples):
            q = np.linalg.qr(rng.standard_normal((E.dim, E.dim)))[0]
            e = sym(q @ np.diag(rng.uniform(0, 1, E.dim)) @ q.T)
            f = sym(q @ np.diag(rng.uniform(0, 1, E.dim)) @ q.T)
            if not self.p_le_set(e, f):
                ok = False
                break
        rep.add("comparability", ok, mode="sampled")
        ok_sharp = all(E.is_sharp(E.random_projection(rng)) for _ in range(8))
        rep.add("sharp-elements-are-projections", ok_sharp, mode="sampled")
        return rep

    def is_spectral(self) -> bool:
        if self._spectral is None:
            rng = np.random.default_rng(7)
            covers_ok = all(
                self.algebra.leq(a, self.cover(a))
                for a in (self.algebra.random_effect(rng) for _ in range(8)))
            self._spectral = covers_ok and self.check_b_comparability().passed
        return self._spectral


def make_matrix_instance(dim: int, tol: float = 1e-9):
    E = MatrixEffectAlgebra(dim, tol=tol)
    return E, MatrixCompressionBase(E)

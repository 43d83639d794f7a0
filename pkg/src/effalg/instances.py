"""Constructors for the worked instances, with document round-tripping.

Every constructor returns (algebra, base) after running the axiom and
base validators (sampled above the scan budget).  The built algebra
carries ``document``, a JSON-serializable description that reparses to
an index-isomorphic instance.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import groups, matrices
from .compbase import CompressionBase, central_base, meet_with_all, validate_base
from .core import (
    BooleanAlgebra,
    FiniteAlgebra,
    GridAlgebra,
    ProductAlgebra,
    State,
    TableAlgebra,
    as_fraction,
    carrier_cap,
    sharp_elements,
    validate_axioms,
)
from .errors import (
    ElementNotInCarrier,
    InternalConsistencyError,
    ScaleMismatch,
    SizeLimit,
)
from .spectral import SplittingTree


def _guard_size(n: int):
    if n > carrier_cap():
        raise SizeLimit(f"carrier of size {n} exceeds EA_MAX_CARRIER={carrier_cap()}")


def _validated(E, cb, what: str, validate: bool = True):
    if not validate:
        return E, cb
    rep = validate_axioms(E)
    if not rep.passed:
        raise InternalConsistencyError(f"{what}: axioms failed\n{rep.summary()}")
    rep = validate_base(E, cb)
    if not rep.passed:
        raise InternalConsistencyError(f"{what}: base failed\n{rep.summary()}")
    return E, cb


# ---------------------------------------------------------------------------
# basic families


def make_boolean(n_atoms: int, validate: bool = True):
    """Powerset of n atoms with U_p(a) = a ^ p over every element."""
    if not 1 <= n_atoms <= 16:
        raise SizeLimit("boolean instances support 1..16 atoms")
    _guard_size(2 ** n_atoms)
    E = BooleanAlgebra(n_atoms)
    if n_atoms <= 10:
        cb = central_base(E)
    else:  # too many projections for an eager table per map
        projs = [int(p) for p in sharp_elements(E)]
        maps = {p: (lambda p=p: meet_with_all(E, p)) for p in projs}
        cb = CompressionBase(E, projs, maps)
    E.document = {"kind": "boolean", "n_atoms": n_atoms}
    return _validated(E, cb, "boolean", validate)


def make_mv_product(denominator: int, arity: int, validate: bool = True):
    """Numerator grid {0..k}^d with the central base over zero-one vectors."""
    if denominator not in (2, 4, 8, 16):
        raise ValueError("denominator must be one of 2, 4, 8, 16")
    if not 1 <= arity <= 4:
        raise ValueError("arity must be 1..4")
    _guard_size((denominator + 1) ** arity)
    E = GridAlgebra(denominator, arity)
    cb = central_base(E)
    E.document = {"kind": "mv_product", "denominator": denominator, "arity": arity}
    return _validated(E, cb, "mv_product", validate)


def make_matrix(dim: int, tol: float = 1e-9):
    """Symmetric matrix effects with the full projection base (lazy carrier)."""
    E, cb = matrices.make_matrix_instance(dim, tol=tol)
    E.document = {"kind": "matrix", "dim": dim, "tol": tol}
    rep = validate_axioms(E)  # sampled triples; the carrier cannot be listed
    if not rep.passed:
        raise InternalConsistencyError(f"matrix axioms failed\n{rep.summary()}")
    return E, cb


def make_table(sums, n: int, zero: int, one: int, labels=None):
    """Explicit table instance from (a, b, a+b) triples; validation is the
    caller's business (broken tables are useful test subjects)."""
    E = TableAlgebra.from_triples(n, sums, zero, one, labels=labels)
    E.document = {"kind": "table", "n": n, "zero": zero, "one": one,
                  "sums": [[int(a), int(b), int(s)] for a, b, s in sums],
                  "labels": list(labels) if labels else None}
    return E


# ---------------------------------------------------------------------------
# products


def make_product(left, right, validate: bool = True):
    """Componentwise product of two instances; base is the pair base."""
    (E1, cb1), (E2, cb2) = left, right
    _guard_size(E1.size * E2.size)
    E = ProductAlgebra(E1, E2)
    projs = []
    maps = {}
    n2 = E2.size
    ia, ib = E.split_index(np.arange(E.size))
    for p1 in cb1.projections:
        for p2 in cb2.projections:
            p = E.pair_index(p1, p2)
            projs.append(p)

            def build(p1=p1, p2=p2):
                return cb1.map_table(p1)[ia] * n2 + cb2.map_table(p2)[ib]

            maps[p] = build
    E.document = {"kind": "product",
                  "factors": [E1.document, E2.document]}
    return _validated(E, CompressionBase(E, projs, maps), "product", validate)


# ---------------------------------------------------------------------------
# horizontal sums


def _hsum_carrier(E1: FiniteAlgebra, E2: FiniteAlgebra):
    """Disjoint union with the two zeros and the two units identified."""
    parts = []
    labels = ["0", "1"]
    index = {}
    for side, Epart in (("L", E1), ("R", E2)):
        for x in range(Epart.size):
            if x in (Epart.zero, Epart.one):
                continue
            index[(side, x)] = len(labels)
            labels.append(f"{side}:{Epart.label(x)}")
            parts.append((side, x))
    n = len(labels)

    def glob(side, x, Epart):
        if x == Epart.zero:
            return 0
        if x == Epart.one:
            return 1
        return index[(side, x)]

    triples = [(0, 0, 0), (0, 1, 1)]
    for side, Epart in (("L", E1), ("R", E2)):
        for x in range(Epart.size):
            for y in range(Epart.size):
                s = Epart.sum(x, y)
                if s is None:
                    continue
                gx, gy, gs = (glob(side, v, Epart) for v in (x, y, s))
                if (gx, gy) == (0, 0) or gx == 1 or gy == 1:
                    continue  # shared elements handled once
                triples.append((gx, gy, gs))
    E = TableAlgebra.from_triples(n, triples, 0, 1, labels=labels)
    E.part_index = index
    return E, glob


def make_horizontal_sum(left, right, state1, state2, validate: bool = True):
    """Zero-one pasting with cross compressions through faithful states.

    For an interior projection p of the left part, the compression sends
    right-part elements to state2(element) * p; this scalar multiple must
    land on the left carrier (ScaleMismatch otherwise).  States are
    checked faithful before anything else.
    """
    (E1, cb1), (E2, cb2) = left, right
    if not (E1.enumerable and E2.enumerable):
        raise SizeLimit("horizontal sums are built for finite parts")
    s1 = state1 if isinstance(state1, State) else State(E1, state1)
    s2 = state2 if isinstance(state2, State) else State(E2, state2)
    for s in (s1, s2):
        s.require_faithful()
        s.require_valid()
    if not (cb1.is_spectral() and cb2.is_spectral()):
        raise InternalConsistencyError("horizontal sums expect spectral parts")

    E, glob = _hsum_carrier(E1, E2)
    projs = {0, 1}
    maps = {0: np.zeros(E.size, dtype=np.int64), 1: np.arange(E.size)}

    def cross_table(side, p, Eown, cbown, Eother, sother):
        """J with focus p (interior, in `side`): own part by the inherited
        compression, other part scaled into [0, p]."""
        tbl = np.zeros(E.size, dtype=np.int64)
        own = cbown.map_table(p)
        for x in range(Eown.size):
            tbl[glob(side, x, Eown)] = glob(side, int(own[x]), Eown)
        other_side = "R" if side == "L" else "L"
        for y in range(Eother.size):
            if y in (Eother.zero, Eother.one):
                continue
            val = sother(y)
            scaled = Eown.scale(val, p) if hasattr(Eown, "scale") else (
                p if val == 1 else (Eown.zero if val == 0 else None))
            if scaled is None:
                raise ScaleMismatch(
                    f"state value {val} times {Eown.label(p)} is off the carrier")
            tbl[glob(other_side, y, Eother)] = glob(side, int(scaled), Eown)
        tbl[1] = glob(side, p, Eown)
        tbl[0] = 0
        return tbl

    for p in cb1.projections:
        if p in (E1.zero, E1.one):
            continue
        g = glob("L", p, E1)
        projs.add(g)
        maps[g] = cross_table("L", p, E1, cb1, E2, s2)
    for p in cb2.projections:
        if p in (E2.zero, E2.one):
            continue
        g = glob("R", p, E2)
        projs.add(g)
        maps[g] = cross_table("R", p, E2, cb2, E1, s1)

    cb = CompressionBase(E, sorted(projs), maps)
    E.kind = "horizontal_sum"
    E.document = {"kind": "horizontal_sum",
                  "parts": [E1.document, E2.document],
                  "states": [[str(v) for v in s1.values], [str(v) for v in s2.values]]}
    E, cb = _validated(E, cb, "horizontal_sum", validate)
    E.meta_spectral = cb.is_spectral()
    return E, cb


def make_mo2(validate: bool = True):
    """Horizontal sum of two four-element Boolean algebras, central base.

    No faithful scalar state maps a Boolean square into an atom interval,
    so there are no compressions focused at the atoms; the only base is
    the trivial one, and sharp atoms stay outside P.
    """
    E1, _ = make_boolean(2)
    E2, _ = make_boolean(2)
    E, _ = _hsum_carrier(E1, E2)
    cb = central_base(E)
    E.kind = "mo2"
    E.document = {"kind": "mo2"}
    return _validated(E, cb, "mo2", validate)


def torsion_witness(E: TableAlgebra):
    """A pair e != f with 2e = 2f = 1, or None; exists in chain pastings."""
    for e in range(E.size):
        if E.sum(e, e) != E.one:
            continue
        for f in range(e + 1, E.size):
            if E.sum(f, f) == E.one:
                return e, f
    return None


# ---------------------------------------------------------------------------
# closed-form resolution for grids


def closed_form_mv_resolution(E: GridAlgebra, a: int, n: int) -> SplittingTree:
    """The grid tree written down directly: at level l, coordinate i sits
    in the cell w with k(w)/2^l < a_i <= (k(w)+1)/2^l, carrying value
    2^l * a_i - k(w).  Used as an oracle; never by the construction."""
    if not isinstance(E, GridAlgebra):
        raise ElementNotInCarrier("closed form applies to grid instances")
    coords = E.coords[a].astype(np.int64)
    k = E.k
    tree = SplittingTree(E, a, n)
    support = coords > 0
    if support.any():
        tree._u[()] = int(np.where(support, k, 0) @ E.strides)
        tree._c[()] = a
    for level in range(1, n + 1):
        cells = {}
        for i, ci in enumerate(coords):
            if ci == 0:
                continue
            # smallest kw with a_i <= (kw+1)/2^level, i.e. ceil(a_i 2^level) - 1
            kw = -((-ci * 2 ** level) // k) - 1
            cells.setdefault(int(kw), []).append(i)
        for kw, idxs in cells.items():
            w = tuple((kw >> (level - 1 - j)) & 1 for j in range(level))
            mask = np.zeros(E.d, dtype=np.int64)
            mask[idxs] = k
            cvec = np.zeros(E.d, dtype=np.int64)
            for i in idxs:
                cvec[i] = coords[i] * 2 ** level - kw * k
            tree._u[w] = int(mask @ E.strides)
            tree._c[w] = int(cvec @ E.strides)
    return tree


def trees_equal(t1: SplittingTree, t2: SplittingTree) -> bool:
    depth = min(t1.depth, t2.depth)
    for level in range(depth + 1):
        m1 = {w: (u, t1.c(w)) for w, u in t1.layer(level)}
        m2 = {w: (u, t2.c(w)) for w, u in t2.layer(level)}
        if m1 != m2:
            return False
    return True


# ---------------------------------------------------------------------------
# states and groups attached to instances


def coordinate_states(E: GridAlgebra):
    """The d coordinate-evaluation states; a separating family."""
    out = []
    for i in range(E.d):
        vals = [Fraction(int(c), E.k) for c in E.coords[:, i]]
        out.append(State(E, vals))
    return out


def weighted_state(E: GridAlgebra, weights) -> State:
    weights = [as_fraction(w) for w in weights]
    if len(weights) != E.d or sum(weights) != 1 or any(w < 0 for w in weights):
        raise ValueError("need nonnegative weights summing to one, one per coordinate")
    vals = [sum(w * Fraction(int(c), E.k) for w, c in zip(weights, E.coords[i]))
            for i in range(E.size)]
    return State(E, vals)


def separating_states(E):
    if isinstance(E, GridAlgebra):
        return coordinate_states(E)
    if isinstance(E, matrices.MatrixEffectAlgebra):
        return matrices.separating_states(E)
    if isinstance(E, ProductAlgebra):
        left = separating_states(E.left)
        right = separating_states(E.right)
        ia, ib = E.split_index(np.arange(E.size))
        out = []
        for s in left:
            out.append(State(E, [s(int(x)) for x in ia]))
        for s in right:
            out.append(State(E, [s(int(x)) for x in ib]))
        return out
    return None


def universal_group(E: GridAlgebra) -> groups.ZGroup:
    """The integer group behind a grid instance (coordinates over unit k)."""
    if not isinstance(E, GridAlgebra):
        raise ElementNotInCarrier(
            "only grid instances carry a torsion-free integer group; "
            "zero-one pastings admit 2e = 2f = 1 with e != f")
    return groups.ZGroup(E.group_unit)


def embed_element(E: GridAlgebra, a: int) -> np.ndarray:
    return E.coords[a].astype(np.int64)


def projection_from_group(E: GridAlgebra, p: np.ndarray) -> int:
    return E.index_of(np.asarray(p, dtype=np.int64))


# ---------------------------------------------------------------------------
# documents


def parse_document(doc: dict):
    kind = doc.get("kind")
    if kind == "boolean":
        return make_boolean(int(doc["n_atoms"]))
    if kind == "mv_product":
        return make_mv_product(int(doc["denominator"]), int(doc["arity"]))
    if kind == "matrix":
        return make_matrix(int(doc["dim"]), tol=float(doc.get("tol", 1e-9)))
    if kind == "product":
        f1, f2 = doc["factors"]
        return make_product(parse_document(f1), parse_document(f2))
    if kind == "horizontal_sum":
        p1, p2 = (parse_document(d) for d in doc["parts"])
        s1, s2 = doc["states"]
        return make_horizontal_sum(p1, p2, [as_fraction(v) for v in s1],
                                   [as_fraction(v) for v in s2])
    if kind == "mo2":
        return make_mo2()
    if kind == "table":
        E = make_table(doc["sums"], int(doc["n"]), int(doc["zero"]), int(doc["one"]),
                       labels=doc.get("labels"))
        cb = central_base(E)
        return E, cb
    raise ValueError(f"unknown instance kind {kind!r}")


def parse_element(E, spec):
    """Element addresses: index, bitmask, numerator vector, row-major matrix,
    or a tagged pair for products and pastings."""
    if isinstance(E, matrices.MatrixEffectAlgebra):
        if isinstance(spec, str):
            vals = [float(Fraction(tok)) for tok in spec.replace(";", ",").split(",")]
        else:
            vals = [float(Fraction(str(v))) for v in np.asarray(spec).ravel()]
        return E.check_element(np.array(vals).reshape(E.dim, E.dim))
    if isinstance(spec, dict):
        if isinstance(E, ProductAlgebra) and "factors" in spec:
            fa, fb = spec["factors"]
            return E.pair_index(parse_element(E.left, fa), parse_element(E.right, fb))
        if hasattr(E, "part_index") and "part" in spec:
            side = "L" if int(spec["part"]) == 0 else "R"
            inner = int(spec["element"])
            return E.part_index.get((side, inner), inner)
        raise ElementNotInCarrier(f"bad element spec {spec!r}")
    if isinstance(spec, str) and isinstance(E, GridAlgebra) and ("," in spec or "/" in spec):
        toks = spec.split(",")
        nums = []
        for t in toks:
            f = Fraction(t.strip())
            v = f * E.k if f.denominator != 1 else f
            if v.denominator != 1:
                raise ElementNotInCarrier(f"{t} is not a multiple of 1/{E.k}")
            nums.append(int(v))
        return E.index_of(np.array(nums))
    idx = int(spec)
    if not 0 <= idx < E.size:
        raise ElementNotInCarrier(f"index {idx} out of range")
    return idx

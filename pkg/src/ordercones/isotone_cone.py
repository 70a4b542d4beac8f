"""Cones of isotone real functions on finite posets.

A function is a plain float vector aligned with the poset's element order.
The cone of isotone functions is polyhedral: membership is the pairwise
condition f(x) <= f(y) whenever x <= y.  This module also carries the
lattice expression trees used to rebuild isotone functions from sublattice
cone generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidInput,
    NegativeValues,
    NotIsotone,
    OrderNotDetermined,
    PointsNotSeparated,
)
from .poset import FinitePoset, FinitePreorder

__all__ = [
    "DEFAULT_TOL",
    "EXPR_TOL",
    "as_function",
    "is_isotone",
    "order_from_functions",
    "OrderFromFunctions",
    "Generator",
    "Constant",
    "Sum",
    "Scale",
    "Join",
    "Meet",
    "expr_from_json",
    "eval_expr",
    "stone_nachbin_express",
    "upset_decomposition",
    "generated_cone_contains",
    "minimal_witness",
    "MinimalWitness",
    "cobounded_commutative",
    "CoboundedResult",
    "NormAdditivityWitness",
    "IsotoneCone",
    "principal_upset_indicators",
    "all_upset_indicators",
]

# Pairwise membership tolerance; double precision over small lattices.
DEFAULT_TOL = 1e-12
# Expression reconstruction tolerance; allows accumulated arithmetic.
EXPR_TOL = 1e-9


def as_function(values, n: int | None = None) -> np.ndarray:
    """Coerce to a float vector, rejecting NaN/inf and wrong lengths."""
    f = np.asarray(values, dtype=float)
    if f.ndim != 1:
        raise InvalidInput(f"function must be a flat vector, got shape {f.shape}")
    if n is not None and f.shape[0] != n:
        raise DimensionMismatch(f"expected {n} values, got {f.shape[0]}")
    if not np.isfinite(f).all():
        raise InvalidInput("function values must be finite")
    return f


def is_isotone(p: FinitePreorder, f, tol: float = DEFAULT_TOL) -> bool:
    """True iff f(x) <= f(y) + tol for every related pair x <= y."""
    f = as_function(f, p.n)
    diff = f[None, :] - f[:, None]  # diff[i, j] = f(j) - f(i)
    return bool((diff[p.rel] >= -tol).all())


class OrderFromFunctions(NamedTuple):
    preorder: FinitePreorder
    separates_points: bool


def order_from_functions(elements, functions, tol: float = DEFAULT_TOL) -> OrderFromFunctions:
    """The preorder x <= y iff s(x) <= s(y) for every s in the family.

    An empty family yields the complete preorder.  The relation is a
    partial order exactly when the family separates points, reported in
    the flag.
    """
    elements = [str(e) for e in elements]
    n = len(elements)
    fns = [as_function(f, n) for f in functions]
    if fns:
        stack = np.stack(fns)  # (m, n)
        rel = (stack[:, :, None] <= stack[:, None, :] + tol).all(axis=0)
    else:
        rel = np.ones((n, n), dtype=bool)
    pre = FinitePreorder(elements, rel)
    return OrderFromFunctions(pre, pre.is_antisymmetric())


# --------------------------------------------------------------------------
# Lattice expression trees


class LatticeExpr:
    """Base of the expression AST; nodes are immutable."""

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Generator(LatticeExpr):
    index: int

    def to_json(self):
        return {"gen": self.index}


@dataclass(frozen=True)
class Constant(LatticeExpr):
    value: float

    def to_json(self):
        return {"const": float(self.value)}


@dataclass(frozen=True)
class Sum(LatticeExpr):
    children: tuple[LatticeExpr, ...]

    def __init__(self, *children: LatticeExpr):
        object.__setattr__(self, "children", tuple(children))

    def to_json(self):
        return {"op": "sum", "args": [c.to_json() for c in self.children]}


@dataclass(frozen=True)
class Scale(LatticeExpr):
    factor: float
    child: LatticeExpr

    def __post_init__(self):
        if self.factor < 0:
            raise InvalidInput(f"scale factor must be >= 0, got {self.factor}")

    def to_json(self):
        return {"op": "scale", "factor": float(self.factor), "args": [self.child.to_json()]}


@dataclass(frozen=True)
class Join(LatticeExpr):
    children: tuple[LatticeExpr, ...]

    def __init__(self, *children: LatticeExpr):
        object.__setattr__(self, "children", tuple(children))

    def to_json(self):
        return {"op": "join", "args": [c.to_json() for c in self.children]}


@dataclass(frozen=True)
class Meet(LatticeExpr):
    children: tuple[LatticeExpr, ...]

    def __init__(self, *children: LatticeExpr):
        object.__setattr__(self, "children", tuple(children))

    def to_json(self):
        return {"op": "meet", "args": [c.to_json() for c in self.children]}


def expr_from_json(data: dict) -> LatticeExpr:
    if not isinstance(data, dict):
        raise InvalidInput(f"expression node must be an object, got {type(data).__name__}")
    if "gen" in data:
        return Generator(int(data["gen"]))
    if "const" in data:
        return Constant(float(data["const"]))
    op = data.get("op")
    args = [expr_from_json(a) for a in data.get("args", [])]
    if op == "sum":
        return Sum(*args)
    if op == "scale":
        return Scale(float(data["factor"]), args[0])
    if op == "join":
        return Join(*args)
    if op == "meet":
        return Meet(*args)
    raise InvalidInput(f"unknown expression node {data!r}")


def eval_expr(expr: LatticeExpr, functions, size: int | None = None) -> np.ndarray:
    """Evaluate an expression tree against a generator family.

    join/meet are pointwise max/min.  size is only needed when the family
    is empty and the tree is all constants.
    """
    fns = [as_function(f) for f in functions]
    if fns:
        n = fns[0].shape[0]
        for f in fns:
            if f.shape[0] != n:
                raise DimensionMismatch("generator functions must share a length")
    elif size is not None:
        n = int(size)
    else:
        raise InvalidInput("empty generator family needs an explicit size")

    def run(node: LatticeExpr) -> np.ndarray:
        if isinstance(node, Generator):
            if not 0 <= node.index < len(fns):
                raise IndexOutOfRange(
                    f"generator index {node.index} out of range for {len(fns)} functions"
                )
            return fns[node.index]
        if isinstance(node, Constant):
            return np.full(n, node.value)
        if isinstance(node, Scale):
            return node.factor * run(node.child)
        if isinstance(node, Sum):
            vals = [run(c) for c in node.children]
            return np.sum(vals, axis=0) if vals else np.zeros(n)
        if isinstance(node, Join):
            vals = [run(c) for c in node.children]
            if not vals:
                raise InvalidInput("join needs at least one child")
            return np.max(vals, axis=0)
        if isinstance(node, Meet):
            vals = [run(c) for c in node.children]
            if not vals:
                raise InvalidInput("meet needs at least one child")
            return np.min(vals, axis=0)
        raise InvalidInput(f"unknown expression node {node!r}")

    return run(expr)


def stone_nachbin_express(
    p: FinitePoset,
    generators,
    target,
    tol: float = DEFAULT_TOL,
    prune: bool = False,
) -> LatticeExpr:
    """Rebuild an isotone target from sublattice-cone generators.

    For every ordered pair (x, y) a two-point interpolant lam*j + mu*1 is
    taken through the target values at x and y, with j picked from the
    generators to have the widest usable gap.  The result is the join over
    x of the meet over y of these interpolants, which reproduces the
    target exactly on a finite poset.

    The generators must induce exactly the poset's order (otherwise
    OrderNotDetermined) and the target must be isotone (NotIsotone).
    With prune=True, branches that cannot affect the evaluation against
    these generators are dropped; evaluation is preserved exactly.
    """
    fns = [as_function(f, p.n) for f in generators]
    if not fns:
        raise OrderNotDetermined("generator family is empty")
    induced = order_from_functions(p.elements, fns, tol=tol).preorder
    if not np.array_equal(induced.rel, p.rel):
        raise OrderNotDetermined("generators do not induce the poset's order")
    big_f = as_function(target, p.n)
    if not is_isotone(p, big_f, tol=tol):
        raise NotIsotone("target is not isotone for the poset's order")

    stack = np.stack(fns)  # (m, n)

    def interpolant(i: int, j: int) -> LatticeExpr:
        fx, fy = big_f[i], big_f[j]
        if fx == fy:
            return Constant(fx)
        gaps = stack[:, j] - stack[:, i]
        signed = gaps if fy > fx else -gaps
        k = int(np.argmax(signed))
        if signed[k] <= tol:
            # Unreachable once the induced order matches: fx != fy forces
            # a strict generator gap in the right direction.
            raise OrderNotDetermined(
                f"no generator separates {p.elements[i]!r} and {p.elements[j]!r}"
            )
        lam = (fy - fx) / gaps[k]
        mu = fx - lam * stack[k, i]
        return Sum(Scale(lam, Generator(k)), Constant(mu))

    branches = []
    for i in range(p.n):
        leaves = [interpolant(i, j) for j in range(p.n)]
        branches.append(Meet(*leaves))
    expr: LatticeExpr = Join(*branches)
    if prune:
        expr = _prune(expr, fns)
    return expr


def _prune(expr: LatticeExpr, fns) -> LatticeExpr:
    """Drop dominated join/meet children; evaluation against fns is unchanged."""

    def keep(children: tuple[LatticeExpr, ...], bigger_wins: bool):
        vals = [eval_expr(c, fns) for c in children]
        kept: list[int] = []
        for i, v in enumerate(vals):
            dominated = False
            for k in kept:
                if bigger_wins and (vals[k] >= v).all():
                    dominated = True
                    break
                if not bigger_wins and (vals[k] <= v).all():
                    dominated = True
                    break
            if not dominated:
                kept = [
                    k
                    for k in kept
                    if not (
                        (v >= vals[k]).all() if bigger_wins else (v <= vals[k]).all()
                    )
                ]
                kept.append(i)
        return [children[i] for i in kept]

    if isinstance(expr, Join):
        children = tuple(_prune(c, fns) for c in expr.children)
        kept = keep(children, bigger_wins=True)
        return kept[0] if len(kept) == 1 else Join(*kept)
    if isinstance(expr, Meet):
        children = tuple(_prune(c, fns) for c in expr.children)
        kept = keep(children, bigger_wins=False)
        return kept[0] if len(kept) == 1 else Meet(*kept)
    return expr


def upset_decomposition(
    p: FinitePoset, f, tol: float = DEFAULT_TOL
) -> list[tuple[float, np.ndarray]]:
    """Write a nonnegative isotone function as a positive sum of up-set indicators.

    Values are sorted ascending and telescoped: the lowest level multiplies
    the full-set indicator (dropped when zero), every further level v_k
    contributes (v_k - v_{k-1}) times the indicator of {f >= v_k}, which is
    an up-set because f is isotone.  Levels closer than tol are merged.
    """
    f = as_function(f, p.n)
    if not is_isotone(p, f, tol=tol):
        raise NotIsotone("function is not isotone")
    if (f < -tol).any():
        raise NegativeValues("function must be nonnegative")
    levels: list[float] = []
    for v in np.sort(f):
        if not levels or v - levels[-1] > tol:
            levels.append(float(v))
    terms: list[tuple[float, np.ndarray]] = []
    prev = 0.0
    for k, v in enumerate(levels):
        coeff = v - prev
        indicator = (f >= v - tol).astype(float)
        if k > 0 or coeff > tol:
            terms.append((coeff, indicator))
        prev = v
    return terms


def generated_cone_contains(elements, generators, f, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the isocone generated by a point-separating family.

    The generated cone coincides with the isotone functions of the induced
    order, so membership reduces to isotonicity for that order.
    """
    pre, separates = order_from_functions(elements, generators, tol=tol)
    if not separates:
        raise PointsNotSeparated("generator family does not separate the elements")
    return is_isotone(pre, f, tol=tol)


@dataclass(frozen=True)
class MinimalWitness:
    """Certificate that the isotone cone has a strict sub-isocone.

    x, y is an incomparable pair; in_cone lies in the restricted cone
    J = {f isotone : f(x) <= f(y)} with a strict gap, outside is isotone
    but not in J.  separator(a, b) produces a member of J telling two
    given distinct elements apart.
    """

    poset: FinitePoset
    x: str
    y: str
    in_cone: np.ndarray
    outside: np.ndarray

    def separator(self, a: str, b: str) -> np.ndarray:
        p = self.poset
        ia, ib = p.index(a), p.index(b)
        if ia == ib:
            raise InvalidInput("separator needs two distinct elements")
        ix, iy = p.index(self.x), p.index(self.y)
        f = p.rel[ia].astype(float)  # indicator of the up-set of a
        if f[ia] == f[ib]:
            f = p.rel[ib].astype(float)
        if f[ix] <= f[iy]:
            return f
        g = self.in_cone
        if g[ia] != g[ib]:
            return g.copy()
        # Reflect f across ker(ev_x - ev_y) along g; stays isotone because
        # the coefficient is nonnegative, lands in J by construction.
        coeff = -2.0 * (f[ix] - f[iy]) / (g[ix] - g[iy])
        return f + coeff * g


def minimal_witness(p: FinitePoset) -> MinimalWitness | None:
    """None when the poset is totally ordered, else a sub-isocone certificate."""
    pairs = p.incomparable_pairs()
    if not pairs:
        return None
    x, y = pairs[0]
    g = p.rel[p.index(y)].astype(float)  # up-set of y: g(x)=0 < 1=g(y)
    g_prime = p.rel[p.index(x)].astype(float)  # up-set of x: decreasing on (x, y)
    return MinimalWitness(poset=p, x=x, y=y, in_cone=g, outside=g_prime)


@dataclass(frozen=True)
class NormAdditivityWitness:
    f: np.ndarray
    g: np.ndarray
    condition: str  # "sum" or "inverse"
    lhs: float
    rhs: float


@dataclass(frozen=True)
class CoboundedResult:
    cobounded: bool
    witness: NormAdditivityWitness | None


def cobounded_commutative(p: FinitePoset) -> CoboundedResult:
    """Norm additivity on the nonnegative cone, with the sup norm.

    Additivity of ||f+g|| on nonnegative isotone functions, together with
    the same condition on inverses of strictly positive ones, holds exactly
    when the poset has both a greatest and a lowest element.  When it
    fails, a violating pair built from up-set indicators of two maximal
    (or two minimal) elements is returned.
    """
    if p.n == 0:
        raise InvalidInput("co-boundedness needs a nonempty poset")
    from .poset import bounds as _bounds

    b = _bounds(p)
    if b.bounded:
        return CoboundedResult(True, None)
    maximal = [i for i in range(p.n) if not (p.rel[i] & ~np.eye(p.n, dtype=bool)[i]).any()]
    minimal = [i for i in range(p.n) if not (p.rel[:, i] & ~np.eye(p.n, dtype=bool)[:, i]).any()]
    if b.top is None:
        # Two maximal elements; each function peaks only at its own, since
        # the up-set of a maximal element is the singleton.
        i, j = maximal[0], maximal[1]
        f = 1.0 + (np.arange(p.n) == i).astype(float)
        g = 1.0 + (np.arange(p.n) == j).astype(float)
        lhs = float(np.max(f + g))
        rhs = float(np.max(f) + np.max(g))
        return CoboundedResult(False, NormAdditivityWitness(f, g, "sum", lhs, rhs))
    # Top exists but bottom does not: violate the inverse condition with
    # strictly positive functions dipping only at distinct minimal elements.
    i, j = minimal[0], minimal[1]
    f = 2.0 - (np.arange(p.n) == i).astype(float)
    g = 2.0 - (np.arange(p.n) == j).astype(float)
    lhs = float(np.max(1.0 / f + 1.0 / g))
    rhs = float(np.max(1.0 / f) + np.max(1.0 / g))
    return CoboundedResult(False, NormAdditivityWitness(f, g, "inverse", lhs, rhs))


def principal_upset_indicators(p: FinitePoset) -> np.ndarray:
    """Indicator rows of the up-sets {y : x <= y}, one per element."""
    return p.rel.astype(float)


def all_upset_indicators(p: FinitePoset, limit: int = 12) -> np.ndarray:
    """Indicator rows of every nonempty proper-or-full up-set.

    Enumerates all 2^n subsets, so it falls back to the principal family
    above the size limit; the principal family induces the same order.
    """
    if p.n > limit:
        return principal_upset_indicators(p)
    up_masks = [int("".join("1" if b else "0" for b in reversed(p.rel[i])), 2) for i in range(p.n)]
    rows = []
    for mask in range(1, 1 << p.n):
        closed = 0
        for i in range(p.n):
            if mask >> i & 1:
                closed |= up_masks[i]
        if closed == mask:
            rows.append([float(mask >> i & 1) for i in range(p.n)])
    if not rows:
        return np.zeros((0, p.n))
    return np.array(rows)


@dataclass(frozen=True)
class IsotoneCone:
    """The cone of isotone functions on a finite poset.

    Contains the constants and is closed under sum, nonnegative scaling
    and pointwise min/max; closedness is automatic for polyhedral cones in
    finite dimensions.
    """

    poset: FinitePoset

    def contains(self, f, tol: float = DEFAULT_TOL) -> bool:
        return is_isotone(self.poset, f, tol=tol)

    def nonneg_contains(self, f, tol: float = DEFAULT_TOL) -> bool:
        f = as_function(f, self.poset.n)
        return self.contains(f, tol=tol) and bool((f >= -tol).all())

    def generators(self) -> np.ndarray:
        return principal_upset_indicators(self.poset)

"""Finite posets and preorders over string element ids.

Relations are stored as dense boolean matrices, rel[i][j] meaning
element_i related-to element_j.  All values are immutable after
construction; every operation returns fresh objects.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AntisymmetryViolation, InvalidInput, UnknownId

__all__ = [
    "FinitePreorder",
    "FinitePoset",
    "Bounds",
    "Sprinkling",
    "build_preorder",
    "build_poset",
    "reduce_preorder",
    "combine",
    "interval",
    "bounds",
    "sprinkle_minkowski",
]


def _closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure, Warshall style (n is small)."""
    out = rel.copy()
    np.fill_diagonal(out, True)
    for k in range(out.shape[0]):
        out |= out[:, k : k + 1] & out[k : k + 1, :]
    return out


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class FinitePreorder:
    """Element ids plus a reflexive, transitive boolean relation matrix."""

    def __init__(self, elements, rel):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise InvalidInput("element ids must be distinct")
        rel = np.asarray(rel, dtype=bool)
        n = len(elements)
        if rel.shape != (n, n):
            raise InvalidInput(f"relation must be {n}x{n}, got {rel.shape}")
        if not rel.diagonal().all():
            raise InvalidInput("relation must be reflexive")
        if not np.array_equal(_closure(rel), rel):
            raise InvalidInput("relation must be transitive")
        self.elements = elements
        self.rel = _freeze(rel)
        self._index = {e: i for i, e in enumerate(elements)}

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownId(f"unknown element id {x!r}") from None

    def leq(self, x: str, y: str) -> bool:
        return bool(self.rel[self.index(x), self.index(y)])

    def is_antisymmetric(self) -> bool:
        both = self.rel & self.rel.T
        return not (both & ~np.eye(self.n, dtype=bool)).any()

    def as_poset(self) -> "FinitePoset":
        return FinitePoset(self.elements, self.rel)

    def strict_pairs(self) -> list[tuple[str, str]]:
        """All related pairs with distinct endpoints (regenerates the relation)."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if i != j and self.rel[i, j]:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinitePreorder)
            and self.elements == other.elements
            and np.array_equal(self.rel, other.rel)
        )

    def __hash__(self):
        return hash((self.elements, self.rel.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.elements)!r}, {self.rel.sum()} pairs)"

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "pairs": [[x, y] for x, y in self._emitted_pairs()],
            "relation": self.rel.astype(int).tolist(),
        }

    def _emitted_pairs(self) -> list[tuple[str, str]]:
        return self.strict_pairs()

    @classmethod
    def from_json(cls, data: dict) -> "FinitePreorder":
        if "elements" not in data:
            raise InvalidInput('missing "elements" key')
        if "relation" in data:
            return cls(data["elements"], np.asarray(data["relation"], dtype=bool))
        return build_preorder(data["elements"], data.get("pairs", []))


class FinitePoset(FinitePreorder):
    """A preorder that is also antisymmetric."""

    def __init__(self, elements, rel):
        super().__init__(elements, rel)
        if not self.is_antisymmetric():
            raise AntisymmetryViolation("relation contains a 2-cycle between distinct ids")

    def covering_pairs(self) -> list[tuple[str, str]]:
        """Transitive reduction: pairs x<y with nothing strictly between."""
        strict = self.rel & ~np.eye(self.n, dtype=bool)
        via = (strict @ strict.astype(np.int64)) > 0
        cover = strict & ~via
        return [
            (self.elements[i], self.elements[j])
            for i in range(self.n)
            for j in range(self.n)
            if cover[i, j]
        ]

    def incomparable_pairs(self) -> list[tuple[str, str]]:
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not self.rel[i, j] and not self.rel[j, i]:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def is_total(self) -> bool:
        return (self.rel | self.rel.T).all()

    def up_set_mask(self, x: str) -> np.ndarray:
        """Boolean mask of {y : x <= y}."""
        return self.rel[self.index(x)].copy()

    def _emitted_pairs(self) -> list[tuple[str, str]]:
        return self.covering_pairs()

    @classmethod
    def from_json(cls, data: dict) -> "FinitePoset":
        if "elements" not in data:
            raise InvalidInput('missing "elements" key')
        if "relation" in data:
            return cls(data["elements"], np.asarray(data["relation"], dtype=bool))
        return build_poset(data["elements"], data.get("pairs", []))


def _pairs_to_relation(elements, pairs) -> np.ndarray:
    index = {str(e): i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise InvalidInput("element ids must be distinct")
    rel = np.eye(len(elements), dtype=bool)
    for x, y in pairs:
        x, y = str(x), str(y)
        if x not in index:
            raise UnknownId(f"unknown element id {x!r}")
        if y not in index:
            raise UnknownId(f"unknown element id {y!r}")
        rel[index[x], index[y]] = True
    return _closure(rel)


def build_preorder(elements, generating_pairs) -> FinitePreorder:
    """Reflexive-transitive closure of the generating pairs, as a preorder."""
    return FinitePreorder(elements, _pairs_to_relation(list(elements), generating_pairs))


def build_poset(elements, generating_pairs) -> FinitePoset:
    """Reflexive-transitive closure of the generating pairs.

    Raises AntisymmetryViolation if the closure relates two distinct ids
    both ways; callers expecting cycles should use build_preorder.
    """
    return FinitePoset(elements, _pairs_to_relation(list(elements), generating_pairs))


def reduce_preorder(q: FinitePreorder) -> tuple[FinitePoset, dict[str, str]]:
    """Collapse mutually related elements into classes; order the classes.

    Classes are the equivalence classes of (x <= y and y <= x); the class
    of x is named after its first member in declared element order.  The
    returned projection maps each id to its class id and is isotone.
    """
    mutual = q.rel & q.rel.T
    class_of: dict[int, int] = {}
    reps: list[int] = []
    for i in range(q.n):
        for r in reps:
            if mutual[i, r]:
                class_of[i] = r
                break
        else:
            class_of[i] = i
            reps.append(i)
    names = [q.elements[r] for r in reps]
    rel = np.zeros((len(reps), len(reps)), dtype=bool)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            rel[a, b] = q.rel[ra, rb]
    projection = {q.elements[i]: q.elements[class_of[i]] for i in range(q.n)}
    return FinitePoset(names, rel), projection


def combine(p: FinitePoset, q: FinitePoset, mode: str) -> FinitePoset:
    """Product order or disjoint union of two posets.

    product: (x, y) <= (x', y') iff x <= x' and y <= y', elements named
    "(x,y)".  disjoint_union: both orders kept, every cross pair
    incomparable; ids are prefixed "L:" / "R:" only on collision.
    """
    if mode == "product":
        elements = [f"({x},{y})" for x in p.elements for y in q.elements]
        rel = np.kron(p.rel, q.rel)
        return FinitePoset(elements, rel)
    if mode == "disjoint_union":
        if set(p.elements) & set(q.elements):
            left = [f"L:{x}" for x in p.elements]
            right = [f"R:{y}" for y in q.elements]
        else:
            left, right = list(p.elements), list(q.elements)
        n, m = p.n, q.n
        rel = np.zeros((n + m, n + m), dtype=bool)
        rel[:n, :n] = p.rel
        rel[n:, n:] = q.rel
        return FinitePoset(left + right, rel)
    raise InvalidInput(f"mode must be 'product' or 'disjoint_union', got {mode!r}")


def interval(p: FinitePoset, x: str, y: str) -> list[str]:
    """The closed interval {z : x <= z <= y}; empty when x is not below y."""
    i, j = p.index(x), p.index(y)
    mask = p.rel[i] & p.rel[:, j]
    return [p.elements[k] for k in range(p.n) if mask[k]]


@dataclass(frozen=True)
class Bounds:
    top: str | None
    bottom: str | None

    @property
    def bounded(self) -> bool:
        return self.top is not None and self.bottom is not None


def bounds(p: FinitePoset) -> Bounds:
    """Greatest and lowest elements, when they exist."""
    top = bottom = None
    for i in range(p.n):
        if p.rel[:, i].all():
            top = p.elements[i]
        if p.rel[i].all():
            bottom = p.elements[i]
    return Bounds(top=top, bottom=bottom)


_MASK64 = (1 << 64) - 1


def _splitmix64_stream(seed: int):
    """Deterministic 64-bit stream; same seed gives the same bits everywhere."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


@dataclass(frozen=True)
class Sprinkling:
    """A sprinkled causal poset with its generating coordinates."""

    poset: FinitePoset
    t: tuple[float, ...]
    x: tuple[float, ...]

    def time_function(self) -> np.ndarray:
        return np.array(self.t, dtype=float)

    def coords_json(self) -> dict:
        return {
            e: {"t": self.t[i], "x": self.x[i]}
            for i, e in enumerate(self.poset.elements)
        }


def sprinkle_minkowski(n: int, seed: int) -> Sprinkling:
    """Sprinkle n points into the unit causal diamond of 1+1 Minkowski space.

    Lightcone coordinates u = t+x, v = t-x are uniform on [0,1]^2, which is
    exactly the diamond between (0,0) and (1,0).  The causal relation is
    x < y iff dt > 0 and dt >= |dx|, reflexivized.  Deterministic for a
    fixed seed, bit for bit.
    """
    if n < 0:
        raise InvalidInput("point count must be nonnegative")
    stream = _splitmix64_stream(int(seed))
    pts = []
    for _ in range(n):
        u = next(stream) / 2.0**64
        v = next(stream) / 2.0**64
        pts.append(((u + v) / 2.0, (u - v) / 2.0, u, v))
    pts.sort()
    elements = [f"p{i}" for i in range(n)]
    rel = np.eye(n, dtype=bool)
    for i in range(n):
        ti, _, ui, vi = pts[i]
        for j in range(n):
            tj, _, uj, vj = pts[j]
            if uj >= ui and vj >= vi and tj > ti:
                rel[i, j] = True
    poset = FinitePoset(elements, rel)
    return Sprinkling(
        poset=poset,
        t=tuple(p[0] for p in pts),
        x=tuple(p[1] for p in pts),
    )

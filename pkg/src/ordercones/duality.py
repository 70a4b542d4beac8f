"""Round trip between finite posets and their diagonal function algebras.

A finite poset determines the algebra of functions on its elements
together with the cone of isotone ones; evaluation at elements gives the
characters, and comparing characters against a generating family of the
cone recovers the poset on the nose.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownId
from .isotone_cone import (
    IsotoneCone,
    all_upset_indicators,
    cobounded_commutative,
    is_isotone,
)
from .poset import FinitePoset, bounds, build_poset

__all__ = [
    "FiniteCommutativeIStar",
    "algebra_from_poset",
    "character_order",
    "MorphismReport",
    "pullback",
    "morphism_check",
    "cobounded_duality_check",
    "joint_value_order",
]


@dataclass(frozen=True)
class FiniteCommutativeIStar:
    """Diagonal algebra over an index set with its isotone cone.

    Members are real vectors over the index set read as diagonal hermitian
    matrices; the cone members are the isotone ones.  Up-set indicators
    plus constants span the cone.
    """

    elements: tuple[str, ...]
    cone: IsotoneCone

    @property
    def poset(self) -> FinitePoset:
        return self.cone.poset

    def characters(self) -> tuple[str, ...]:
        """Evaluations at elements, named by the element ids."""
        return self.elements

    def generator_functions(self) -> np.ndarray:
        return all_upset_indicators(self.poset)

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "poset": self.poset.to_json(),
            "generators": self.generator_functions().tolist(),
        }


def algebra_from_poset(p: FinitePoset) -> FiniteCommutativeIStar:
    return FiniteCommutativeIStar(elements=p.elements, cone=IsotoneCone(p))


def character_order(algebra: FiniteCommutativeIStar) -> FinitePoset:
    """Order the characters by comparing them on the cone's generators.

    ev_x <= ev_y holds when f(x) <= f(y) for every generator f; with the
    up-set indicator family this reproduces the underlying poset exactly
    (integer arithmetic, no tolerance needed).
    """
    gens = algebra.generator_functions()
    n = len(algebra.elements)
    if gens.shape[0] == 0:
        rel = np.ones((n, n), dtype=bool)
    else:
        rel = (gens[:, :, None] <= gens[:, None, :]).all(axis=0)
    return FinitePoset(algebra.elements, rel)


@dataclass(frozen=True)
class MorphismReport:
    star_morphism: bool
    isotone: bool
    pullback_preserves_cone: bool

    def to_json(self) -> dict:
        return {
            "star_morphism": self.star_morphism,
            "isotone": self.isotone,
            "pullback_preserves_cone": self.pullback_preserves_cone,
        }


def _mapping_indices(mapping: dict, source: FinitePoset, target: FinitePoset) -> np.ndarray:
    idx = np.empty(source.n, dtype=int)
    for i, e in enumerate(source.elements):
        if e not in mapping:
            raise UnknownId(f"map is not defined on {e!r}")
        idx[i] = target.index(str(mapping[e]))
    return idx


def pullback(mapping: dict, source: FinitePoset, target: FinitePoset, f) -> np.ndarray:
    """Compose a function on the target with the map: (g* f)(n) = f(g(n))."""
    f = np.asarray(f, dtype=float)
    return f[_mapping_indices(mapping, source, target)]


def morphism_check(mapping: dict, source: FinitePoset, target: FinitePoset) -> MorphismReport:
    """Check a map of posets as an algebra morphism on functions.

    Any total map gives a *-morphism by composition; the report compares
    isotonicity of the map against the pullback carrying the target's
    cone generators into the source's cone.  The two flags agree for every
    map, which is what makes the order side and the algebra side match.
    """
    idx = _mapping_indices(mapping, source, target)
    isotone = True
    for i in range(source.n):
        for j in range(source.n):
            if source.rel[i, j] and not target.rel[idx[i], idx[j]]:
                isotone = False
                break
        if not isotone:
            break
    gens = all_upset_indicators(target)
    preserves = all(is_isotone(source, g[idx]) for g in gens)
    return MorphismReport(star_morphism=True, isotone=isotone, pullback_preserves_cone=preserves)


def cobounded_duality_check(p: FinitePoset) -> bool:
    """Whether norm additivity and the existence of both bounds agree."""
    return cobounded_commutative(p).cobounded == bounds(p).bounded


def joint_value_order(p: FinitePoset, functions) -> tuple[list[tuple[float, ...]], FinitePoset]:
    """Order induced on the joint values of commuting cone members.

    Elements with equal value tuples collapse to one point; the order is
    the transitive closure of the pushforward of the poset's relation.
    For isotone inputs it is always contained in the componentwise order
    of the value tuples.
    """
    fns = [np.asarray(f, dtype=float) for f in functions]
    tuples = [tuple(float(f[i]) for f in fns) for i in range(p.n)]
    points: list[tuple[float, ...]] = []
    where: dict[tuple[float, ...], int] = {}
    for t in tuples:
        if t not in where:
            where[t] = len(points)
            points.append(t)
    labels = [f"v{k}" for k in range(len(points))]
    pairs = []
    for i in range(p.n):
        for j in range(p.n):
            if p.rel[i, j]:
                a, b = where[tuples[i]], where[tuples[j]]
                if a != b:
                    pairs.append((labels[a], labels[b]))
    return points, build_poset(labels, pairs)

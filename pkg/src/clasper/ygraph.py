"""The graph group ``Y(A, s)`` of an abelian group with special element.

``Y(A, s)`` is generated by symbols ``Y[a1, a2, a3]`` invariant under cyclic
rotation, subject to multilinearity and the slide relation
``Y[a, a, b] = Y[s, a, b]``.  Multilinearity reduces everything to basis
symbols ``g(i, j, k)``; the slide relation is imposed on basis colours and on
sums of two basis colours, which generates it in full (the missing terms are
``α(α-1) Y[s, e_i, b]`` with ``2s = 0``).  Antisymmetry is not imposed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .fgab import Cokernel, FgAbelianGroup, GroupElement, Homomorphism, cokernel


class SpecialElementMismatch(ValueError):
    """A morphism does not send the special element to the special element."""


@dataclass(frozen=True)
class SpecialPair:
    group: FgAbelianGroup
    s: GroupElement

    def __post_init__(self):
        if self.s.group != self.group:
            raise ValueError("special element is not in the group")
        if not (2 * self.s).is_zero():
            raise ValueError(f"special element {self.s} has order > 2")


@dataclass(frozen=True)
class YTerm:
    sign: int
    colors: tuple[GroupElement, GroupElement, GroupElement]

    def __init__(self, sign: int, colors: Sequence[GroupElement]):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(colors) != 3:
            raise ValueError("a Y-term has three colours")
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "colors", tuple(colors))


def Y(a1: GroupElement, a2: GroupElement, a3: GroupElement, sign: int = 1) -> YTerm:
    return YTerm(sign, (a1, a2, a3))


def canonical_rotation(t: tuple[int, int, int]) -> tuple[int, int, int]:
    i, j, k = t
    return min((i, j, k), (j, k, i), (k, i, j))


class YGroupStructure:
    """Finite presentation of ``Y(A, s)`` and its invariant-factor form."""

    def __init__(self, pair: SpecialPair):
        self.pair = pair
        A = pair.group
        r = A.rank
        self.generators: tuple[tuple[int, int, int], ...] = tuple(
            sorted({canonical_rotation(t) for t in itertools.product(range(r), repeat=3)})
        )
        self._index = {g: k for k, g in enumerate(self.generators)}
        self.relations = self._relations()
        self._cokernel: Cokernel = cokernel(len(self.generators), self.relations)

    @property
    def group(self) -> FgAbelianGroup:
        return self._cokernel.group

    def _relations(self) -> list[list[int]]:
        A = self.pair.group
        r = A.rank
        rels = []
        for g in self.generators:
            for a in set(g):
                n = A.orders[a]
                if n:
                    row = [0] * len(self.generators)
                    row[self._index[g]] = n
                    rels.append(row)
        colors = [A.gen(i) for i in range(r)]
        colors += [A.gen(i) + A.gen(j) for i, j in itertools.combinations(range(r), 2)]
        for a in colors:
            for j in range(r):
                b = A.gen(j)
                v = self.expand([Y(a, a, b), Y(self.pair.s, a, b, -1)])
                if any(v):
                    rels.append(v)
        return rels

    def expand(self, terms: Iterable[YTerm]) -> list[int]:
        """Multilinear expansion into the basis symbols ``g(i, j, k)``."""
        vec = [0] * len(self.generators)
        A = self.pair.group
        for term in terms:
            if any(c.group != A for c in term.colors):
                raise ValueError("Y-term colour is not in the structure's group")
            nz = [[(i, c) for i, c in enumerate(x.coeffs) if c] for x in term.colors]
            for (i, a), (j, b), (k, c) in itertools.product(*nz):
                vec[self._index[canonical_rotation((i, j, k))]] += term.sign * a * b * c
        return vec

    def project(self, vec: Sequence[int]) -> GroupElement:
        return self._cokernel.project(vec)

    def normal_form(self, terms: Iterable[YTerm]) -> GroupElement:
        return self.project(self.expand(terms))

    def lift(self, x: GroupElement) -> list[int]:
        """A generator vector representing ``x``."""
        if x.group != self.group:
            raise ValueError("element is not in this Y-group")
        vec = [0] * len(self.generators)
        for c, row in zip(x.coeffs, self._cokernel.section):
            if c:
                for g, v in enumerate(row):
                    vec[g] += c * v
        return vec

    def generator_term(self, g: tuple[int, int, int]) -> YTerm:
        A = self.pair.group
        return Y(A.gen(g[0]), A.gen(g[1]), A.gen(g[2]))

    @cached_property
    def generator_forms(self) -> tuple[GroupElement, ...]:
        return tuple(self.project([int(k == g) for k in range(len(self.generators))]) for g in range(len(self.generators)))


@lru_cache(maxsize=256)
def y_group(pair: SpecialPair) -> YGroupStructure:
    return YGroupStructure(pair)


def normal_form(struct: YGroupStructure, terms: Iterable[YTerm]) -> GroupElement:
    return struct.normal_form(terms)


def y_of_morphism(f: Homomorphism, source: SpecialPair, target: SpecialPair) -> Homomorphism:
    """``Y(f) : Y(A, s) -> Y(A', s')``, ``Y[a1, a2, a3] -> Y[f(a1), f(a2), f(a3)]``."""
    if f.source != source.group or f.target != target.group:
        raise ValueError("morphism does not match the special pairs")
    if f(source.s) != target.s:
        raise SpecialElementMismatch(f"f(s) = {f(source.s)} != {target.s}")
    src, tgt = y_group(source), y_group(target)
    gen_images = [
        tgt.normal_form([Y(f.image(g[0]), f.image(g[1]), f.image(g[2]))]) for g in src.generators
    ]
    images = []
    for k in range(src.group.rank):
        out = tgt.group.zero()
        for g, c in enumerate(src.lift(src.group.gen(k))):
            if c:
                out = out + c * gen_images[g]
        images.append(out)
    return Homomorphism.from_images(src.group, tgt.group, images)

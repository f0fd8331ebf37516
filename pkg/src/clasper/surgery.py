"""Formal Y-surgery on invariant records and the maps feeding the square

    Y(P) --S--> records over (H, S)
     |W                |E
    pull-back --N--> B(H, S)

A ``FormalYGraph`` is just three leaves in ``P`` and a sign: surgery keeps
``H``, ``λ`` and every ``q`` fixed, adds ``ε <-, h1∧h2∧h3>^(n)`` to each cup
table and ``8 f1 f2 f3`` to the Rochlin function.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Sequence

from .fgab import Homomorphism, dual_group, dual_map
from .invariants import BElement, InvariantRecord, dual_triples, spin_map
from .spinspace import (
    CubicFn,
    PElement,
    PullbackTarget,
    Spin,
    SpinSpace,
    cubic_product,
    w_structure,
    yterm_leaves,
)
from .trivector import Trivector, dual_basis_value, wedge
from .ygraph import YTerm


@dataclass(frozen=True)
class FormalYGraph:
    leaves: tuple[PElement, PElement, PElement]
    sign: int = 1

    def __init__(self, leaves: Sequence[PElement], sign: int = 1):
        if len(leaves) != 3:
            raise ValueError("a Y-graph has three leaves")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        space = leaves[0].space
        if any(p.space != space for p in leaves):
            raise ValueError("leaves live over different spin spaces")
        object.__setattr__(self, "leaves", tuple(leaves))
        object.__setattr__(self, "sign", sign)

    @property
    def space(self) -> SpinSpace:
        return self.leaves[0].space

    @classmethod
    def from_yterm(cls, space: SpinSpace, term: YTerm) -> FormalYGraph:
        return cls(yterm_leaves(space, term), term.sign)

    def oriented_leaves(self) -> tuple[PElement, PElement, PElement]:
        """Leaves in application order: a negative sign swaps the first two."""
        p1, p2, p3 = self.leaves
        return (p1, p2, p3) if self.sign > 0 else (p2, p1, p3)

    def trivector(self) -> Trivector:
        p1, p2, p3 = self.oriented_leaves()
        return wedge(p1.x, p2.x, p3.x)

    def cubic(self) -> CubicFn:
        p1, p2, p3 = self.leaves
        return cubic_product(p1.f, p2.f, p3.f)


def _cup_delta(H, n: int, X: Trivector) -> dict[tuple[int, int, int], int]:
    dual = dual_group(H, n)
    out = {}
    for t in itertools.combinations(dual.index, 3):
        v = dual_basis_value(dual, t, X)
        if v:
            out[t] = v
    return out


def _add_tables(table: dict, delta: dict, n: int) -> dict:
    out = dict(table)
    for t, v in delta.items():
        out[t] = out.get(t, 0) + v
    return out


def apply_y_surgery(r: InvariantRecord, g: FormalYGraph) -> InvariantRecord:
    spin = r.spin
    if g.space != spin:
        raise ValueError("graph leaves are not over the record's homology")
    X = g.trivector()
    f = g.cubic()
    cup = {n: _add_tables(r.cup[n], _cup_delta(r.group, n, X), n) for n in r.moduli}
    rochlin = {s: r.rochlin[s] + 8 * f(s) for s in spin.points()}
    return replace(r, cup=cup, rochlin=rochlin)


def surgery_S(r: InvariantRecord, graphs: Sequence[FormalYGraph]) -> InvariantRecord:
    for g in graphs:
        r = apply_y_surgery(r, g)
    return r


def map_E(base: InvariantRecord, other: InvariantRecord, psi: Homomorphism, offset: Spin) -> BElement:
    """Differences of cup tables (pulled back to ``H`` through ``ψ``) and of Rochlin functions."""
    if psi.source != base.group or psi.target != other.group:
        raise ValueError("ψ does not go from the base homology to the other homology")
    if not psi.is_isomorphism():
        raise ValueError("ψ is not an isomorphism")
    if base.moduli != other.moduli:
        raise ValueError("records have different modulus sets")
    inv = psi.inverse()
    tables = {}
    for n in base.moduli:
        back = dual_map(inv, n)  # Hom(H, Z_n) -> Hom(H', Z_n)
        dual = dual_group(base.group, n)
        tab = {}
        for t in dual_triples(base.group, n):
            ys = [back(dual.gen(dual.position(i))) for i in t]
            tab[t] = other.cup_value(n, *ys) - base.cup_entry(n, t)
        tables[n] = tab
    Psi = spin_map(psi, offset)
    spin = base.spin
    delta = {}
    for s2 in other.spin.points():
        s = Psi(s2)
        delta[s] = other.rochlin[s2] - base.rochlin[s]
    return BElement(base.moduli, tables, [delta[s] for s in spin.points()])


def map_N(X: Trivector, f: CubicFn, moduli: Sequence[int]) -> BElement:
    """``(X, f) -> ((<-, X>^(n))_n, 8 f)``."""
    space = f.space
    PullbackTarget(space).check(X, f)
    tables = {n: _cup_delta(space.homology, n, X) for n in moduli}
    return BElement(moduli, tables, [8 * f(s) for s in space.points()])


def check_square(base: InvariantRecord, terms: Sequence[YTerm]) -> bool:
    """``E(base, S(base, X), id, 0) == N(W(X))`` with ``W`` taken on the normal form of ``X``."""
    space = base.spin
    graphs = [FormalYGraph.from_yterm(space, t) for t in terms]
    lhs = map_E(base, surgery_S(base, graphs), Homomorphism.identity(base.group), space.base_point())
    w = w_structure(space)
    X, f = w(w.struct.normal_form(terms))
    return lhs == map_N(X, f, base.moduli)

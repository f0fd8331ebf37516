"""Spin spaces as affine ``Z_2``-spaces and functions on them.

Coordinates are fixed by a basis of ``H`` and a base point ``σ0``: the spin
structure ``σ0 + y`` is labelled by the coordinates of ``y`` in the dual
basis of ``Hom(H, Z_2)``, one bit per generator of even or infinite order
(the "even positions").  Generators of odd order contribute nothing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .fgab import FgAbelianGroup, GroupElement, Homomorphism, tensor_mod
from .trivector import Trivector, TrivectorSpace, wedge
from .ygraph import SpecialPair, YGroupStructure, YTerm, Y, y_group

Spin = tuple[int, ...]
Monomial = tuple[int, ...]


class ConstraintViolation(ValueError):
    """An element violates the pull-back constraint ``x ⊗ 1 = κ(f)``."""


@dataclass(frozen=True)
class SpinSpace:
    homology: FgAbelianGroup

    @cached_property
    def even(self) -> tuple[int, ...]:
        """Generators of ``H`` with even or zero order."""
        return tuple(i for i, n in enumerate(self.homology.orders) if n % 2 == 0)

    @property
    def dim(self) -> int:
        return len(self.even)

    def points(self) -> Iterator[Spin]:
        return itertools.product((0, 1), repeat=self.dim)

    def add(self, sigma: Spin, y: Sequence[int]) -> Spin:
        return tuple((a + b) % 2 for a, b in zip(sigma, y))

    def base_point(self) -> Spin:
        return (0,) * self.dim

    @cached_property
    def h2(self) -> tuple[FgAbelianGroup, Homomorphism]:
        """``H_(2)`` and the reduction ``H -> H_(2)``; its generators are the even positions."""
        return tensor_mod(self.homology, 2)

    def one(self) -> AffineFn:
        return AffineFn(self, 1, (0,) * self.dim)

    def zero_fn(self) -> AffineFn:
        return AffineFn(self, 0, (0,) * self.dim)

    def ebar(self, i: int) -> AffineFn:
        """``ē_i(σ0 + y) = <y, e_i>``; the zero function when ``n_i`` is odd."""
        slope = tuple(int(j == i) for j in self.even)
        return AffineFn(self, 0, slope)

    def affine(self, const: int, slope: Sequence[int]) -> AffineFn:
        return AffineFn(self, const, tuple(slope))

    def e(self, x: GroupElement, const: int = 0) -> AffineFn:
        """The affine function with value ``const`` at ``σ0`` and slope ``x ⊗ 1``."""
        return AffineFn(self, const, tuple(x.coeffs[i] % 2 for i in self.even))

    @cached_property
    def monomials(self) -> tuple[Monomial, ...]:
        """Basis of ``C(S, Z_2)``: products of at most three distinct ``ē``'s."""
        d = self.dim
        return tuple(m for k in range(4) for m in itertools.combinations(range(d), k))

    @cached_property
    def cubic_group(self) -> FgAbelianGroup:
        return FgAbelianGroup([2] * len(self.monomials))

    @cached_property
    def h2_trivectors(self) -> TrivectorSpace:
        space = TrivectorSpace(self.h2[0])
        # the n = 2 duality on Λ³H_(2) is perfect: every basis order is 2
        assert all(space.order(t) == 2 for t in space.triples)
        return space


@dataclass(frozen=True)
class AffineFn:
    """``f(σ0 + y) = const + <y, slope>``."""

    space: SpinSpace
    const: int
    slope: tuple[int, ...]

    def __post_init__(self):
        if len(self.slope) != self.space.dim:
            raise ValueError("slope has the wrong length")
        object.__setattr__(self, "const", self.const % 2)
        object.__setattr__(self, "slope", tuple(s % 2 for s in self.slope))

    def __call__(self, sigma: Spin) -> int:
        return (self.const + sum(a * b for a, b in zip(self.slope, sigma))) % 2

    def __add__(self, other: AffineFn) -> AffineFn:
        if other.space != self.space:
            raise ValueError("affine functions on different spin spaces")
        return AffineFn(self.space, self.const + other.const, tuple(a + b for a, b in zip(self.slope, other.slope)))

    def monomials(self) -> set[Monomial]:
        out = {(p,) for p, s in enumerate(self.slope) if s}
        if self.const:
            out.add(())
        return out


def kappa(f: AffineFn) -> GroupElement:
    """The element ``κ(f)`` of ``H_(2)`` with ``f(σ + y) = f(σ) + <y, κ(f)>``."""
    return f.space.h2[0].element(f.slope)


@dataclass(frozen=True)
class CubicFn:
    """A ``Z_2``-valued cubic function, as a set of monomials in the ``ē``'s."""

    space: SpinSpace
    monos: frozenset

    def __post_init__(self):
        if any(len(m) > 3 for m in self.monos):
            raise ValueError("monomial of degree > 3")

    def __call__(self, sigma: Spin) -> int:
        return sum(all(sigma[p] for p in m) for m in self.monos) % 2

    def __add__(self, other: CubicFn) -> CubicFn:
        if other.space != self.space:
            raise ValueError("cubic functions on different spin spaces")
        return CubicFn(self.space, self.monos ^ other.monos)

    def to_vector(self) -> GroupElement:
        return self.space.cubic_group.element([int(m in self.monos) for m in self.space.monomials])

    @classmethod
    def from_vector(cls, space: SpinSpace, x: GroupElement | Sequence[int]) -> CubicFn:
        coeffs = x.coeffs if isinstance(x, GroupElement) else x
        return cls(space, frozenset(m for m, c in zip(space.monomials, coeffs) if c % 2))

    @classmethod
    def zero(cls, space: SpinSpace) -> CubicFn:
        return cls(space, frozenset())

    @classmethod
    def monomial(cls, space: SpinSpace, m: Sequence[int]) -> CubicFn:
        return cls(space, frozenset([tuple(sorted(m))]))


def cubic_product(f1: AffineFn, f2: AffineFn, f3: AffineFn) -> CubicFn:
    """Pointwise product ``f1 f2 f3``, expanded with ``ē^2 = ē``."""
    space = f1.space
    if f2.space != space or f3.space != space:
        raise ValueError("affine functions on different spin spaces")
    out: set[Monomial] = set()
    for a, b, c in itertools.product(f1.monomials(), f2.monomials(), f3.monomials()):
        m = tuple(sorted(set(a) | set(b) | set(c)))
        out ^= {m}
    return CubicFn(space, frozenset(out))


def d3_form(f: CubicFn, y1: Spin, y2: Spin, y3: Spin, sigma: Spin | None = None) -> int:
    """Formal third derivative ``Σ_ε f(σ + ε1 y1 + ε2 y2 + ε3 y3)``."""
    space = f.space
    sigma = space.base_point() if sigma is None else sigma
    total = 0
    for e1, e2, e3 in itertools.product((0, 1), repeat=3):
        pt = tuple((s + e1 * a + e2 * b + e3 * c) % 2 for s, a, b, c in zip(sigma, y1, y2, y3))
        total += f(pt)
    return total % 2


def d3(f: CubicFn, sigma: Spin | None = None) -> Trivector:
    """``d³f`` as an element of ``Λ³H_(2)`` via the ``n = 2`` duality."""
    space = f.space
    tv = space.h2_trivectors
    d = space.dim
    unit = [tuple(int(p == q) for q in range(d)) for p in range(d)]
    coeffs = {t: d3_form(f, unit[t[0]], unit[t[1]], unit[t[2]], sigma) for t in tv.triples}
    return Trivector(tv, coeffs)


# ---------------------------------------------------------------------------
# Y(A(S, Z_2), 1̄) and the isomorphism γ
# ---------------------------------------------------------------------------

def affine_pair(space: SpinSpace) -> SpecialPair:
    """``(A(S, Z_2), 1̄)`` with basis ``1̄, ē_{i}`` (``i`` over the even positions)."""
    A = FgAbelianGroup([2] * (1 + space.dim))
    return SpecialPair(A, A.gen(0))


def affine_to_coords(f: AffineFn) -> GroupElement:
    return affine_pair(f.space).group.element((f.const,) + f.slope)


def affine_from_coords(space: SpinSpace, x: GroupElement) -> AffineFn:
    return AffineFn(space, x.coeffs[0], x.coeffs[1:])


def _affine_basis(space: SpinSpace) -> list[AffineFn]:
    d = space.dim
    return [space.one()] + [AffineFn(space, 0, tuple(int(p == q) for q in range(d))) for p in range(d)]


@lru_cache(maxsize=128)
def gamma_map(space: SpinSpace) -> Homomorphism:
    """``γ : Y(A(S, Z_2), 1̄) -> C(S, Z_2)``, ``Y[f1, f2, f3] -> f1 f2 f3``."""
    struct = y_group(affine_pair(space))
    basis = _affine_basis(space)
    gen_images = [cubic_product(*(basis[a] for a in g)).to_vector() for g in struct.generators]
    images = []
    for k in range(struct.group.rank):
        out = space.cubic_group.zero()
        for g, c in enumerate(struct.lift(struct.group.gen(k))):
            if c:
                out = out + c * gen_images[g]
        images.append(out)
    return Homomorphism.from_images(struct.group, space.cubic_group, images)


def gamma(space: SpinSpace, x: GroupElement) -> CubicFn:
    return CubicFn.from_vector(space, gamma_map(space)(x))


def epsilon_cubic(space: SpinSpace, c: CubicFn) -> GroupElement:
    """Section of ``γ``: ``1̄ -> Y[1̄,1̄,1̄]``, ``ē_i -> Y[ē_i,1̄,1̄]``, ``ē_iē_j -> Y[ē_i,ē_j,1̄]``, ``ē_iē_jē_k -> Y[ē_i,ē_j,ē_k]``."""
    pair = affine_pair(space)
    struct = y_group(pair)
    A = pair.group
    one = A.gen(0)
    terms = []
    for m in c.monos:
        cols = [A.gen(1 + p) for p in m] + [one] * (3 - len(m))
        terms.append(Y(*cols))
    return struct.normal_form(terms)


# ---------------------------------------------------------------------------
# The pull-back P and the isomorphism W
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PElement:
    """``(x, f)`` in ``H ×_{H_(2)} A(S, Z_2)``."""

    x: GroupElement
    f: AffineFn

    def __post_init__(self):
        space = self.f.space
        if self.x.group != space.homology:
            raise ValueError("homology part is not in the spin space's group")
        if kappa(self.f) != space.h2[1](self.x):
            raise ConstraintViolation(f"x ⊗ 1 = {space.h2[1](self.x).coeffs} but κ(f) = {self.f.slope}")

    @property
    def space(self) -> SpinSpace:
        return self.f.space

    def to_coords(self) -> GroupElement:
        return pullback_pair(self.space).group.element((self.f.const,) + self.x.coeffs)

    @classmethod
    def from_coords(cls, space: SpinSpace, c: GroupElement) -> PElement:
        x = space.homology.element(c.coeffs[1:])
        return cls(x, space.e(x, c.coeffs[0]))

    @classmethod
    def zero(cls, space: SpinSpace) -> PElement:
        return cls(space.homology.zero(), space.zero_fn())

    def __add__(self, other: PElement) -> PElement:
        return PElement(self.x + other.x, self.f + other.f)


def pullback_pair(space: SpinSpace) -> SpecialPair:
    """``P`` with basis ``(0, 1̄)`` of order 2 and ``(e_i, ē_i)`` of order ``n_i``; special element ``(0, 1̄)``."""
    P = FgAbelianGroup((2,) + space.homology.orders)
    return SpecialPair(P, P.gen(0))


class PullbackTarget:
    """``Λ³H ×_{Λ³H_(2)} C(S, Z_2)`` with the basis

    ``(0, 1̄)``, ``(0, ē_i)``, ``(0, ē_iē_j)``, ``(e_i∧e_j∧e_k, ē_iē_jē_k)``.
    """

    def __init__(self, space: SpinSpace):
        self.space = space
        self.trivectors = TrivectorSpace(space.homology)
        self._pos = {i: p for p, i in enumerate(space.even)}
        low = [m for m in space.monomials if len(m) < 3]
        self.basis: list[tuple[str, tuple]] = [("f", m) for m in low] + [("X", t) for t in self.trivectors.triples]
        self.group = FgAbelianGroup([2] * len(low) + list(self.trivectors.group.orders))

    def _top_monomial(self, t) -> Monomial | None:
        if all(i in self._pos for i in t):
            return tuple(self._pos[i] for i in t)
        return None

    def reduce_mod2(self, X: Trivector) -> Trivector:
        """``Λ³(- ⊗ Z_2)``."""
        tv = self.space.h2_trivectors
        coeffs = {}
        for t, c in X.coeffs.items():
            m = self._top_monomial(t)
            if m is not None:
                coeffs[m] = c
        return Trivector(tv, coeffs)

    def check(self, X: Trivector, f: CubicFn) -> None:
        if X.space != self.trivectors or f.space != self.space:
            raise ValueError("pull-back components live in the wrong spaces")
        if d3(f) != self.reduce_mod2(X):
            raise ConstraintViolation("d³f differs from the mod-2 reduction of X")

    def to_coords(self, X: Trivector, f: CubicFn) -> GroupElement:
        self.check(X, f)
        vals = []
        for kind, key in self.basis:
            vals.append(int(key in f.monos) if kind == "f" else X.coefficient(key))
        return self.group.element(vals)

    def from_coords(self, c: GroupElement) -> tuple[Trivector, CubicFn]:
        monos = set()
        xc = {}
        for (kind, key), v in zip(self.basis, c.coeffs):
            if kind == "f":
                if v % 2:
                    monos.add(key)
            else:
                xc[key] = v
                m = self._top_monomial(key)
                if m is not None and v % 2:
                    monos.add(m)
        return Trivector(self.trivectors, xc), CubicFn(self.space, frozenset(monos))


def _p_basis(space: SpinSpace) -> list[PElement]:
    H = space.homology
    return [PElement(H.zero(), space.one())] + [PElement(H.gen(i), space.ebar(i)) for i in range(H.rank)]


def w_of_terms(space: SpinSpace, terms: Sequence[YTerm]) -> tuple[Trivector, CubicFn]:
    """``W`` evaluated directly on ``P``-coloured Y-terms, without normal forms."""
    return w_of_leaves(space, [(t.sign, yterm_leaves(space, t)) for t in terms])


def w_of_leaves(space: SpinSpace, signed_leaves: Sequence[tuple[int, Sequence[PElement]]]) -> tuple[Trivector, CubicFn]:
    """``Σ ε (h1∧h2∧h3, f1 f2 f3)`` over ``(ε, (p1, p2, p3))``."""
    X = TrivectorSpace(space.homology).zero()
    f = CubicFn.zero(space)
    for sign, leaves in signed_leaves:
        p1, p2, p3 = leaves
        X = X + sign * wedge(p1.x, p2.x, p3.x)
        f = f + cubic_product(p1.f, p2.f, p3.f)
    return X, f


class WMap:
    """``W : Y(P) -> Λ³H ×_{Λ³H_(2)} C(S, Z_2)`` and its section ``ε``."""

    def __init__(self, space: SpinSpace):
        self.space = space
        self.pair = pullback_pair(space)
        self.struct: YGroupStructure = y_group(self.pair)
        self.target = PullbackTarget(space)
        basis = _p_basis(space)
        self._gen_images = []
        for g in self.struct.generators:
            X, f = w_of_leaves(space, [(1, [basis[a] for a in g])])
            self._gen_images.append(self.target.to_coords(X, f))

    def on_vector(self, vec: Sequence[int]) -> GroupElement:
        out = self.target.group.zero()
        for g, c in enumerate(vec):
            if c:
                out = out + c * self._gen_images[g]
        return out

    def __call__(self, x: GroupElement) -> tuple[Trivector, CubicFn]:
        return self.target.from_coords(self.on_vector(self.struct.lift(x)))

    def as_homomorphism(self) -> Homomorphism:
        images = [self.on_vector(self.struct.lift(self.struct.group.gen(k))) for k in range(self.struct.group.rank)]
        return Homomorphism.from_images(self.struct.group, self.target.group, images)

    def epsilon(self, X: Trivector, f: CubicFn) -> GroupElement:
        """Section of ``W`` defined on the basis of the pull-back."""
        c = self.target.to_coords(X, f)
        P = self.pair.group
        s = P.gen(0)
        even = self.space.even
        out = self.struct.group.zero()
        for (kind, key), v in zip(self.target.basis, c.coeffs):
            if not v:
                continue
            if kind == "f":
                cols = [P.gen(1 + even[p]) for p in key] + [s] * (3 - len(key))
            else:
                cols = [P.gen(1 + i) for i in key]
            out = out + v * self.struct.normal_form([Y(*cols)])
        return out


@lru_cache(maxsize=128)
def w_structure(space: SpinSpace) -> WMap:
    return WMap(space)


def w_map(space: SpinSpace, x: GroupElement) -> tuple[Trivector, CubicFn]:
    return w_structure(space)(x)


def epsilon_tri(space: SpinSpace, X: Trivector, f: CubicFn) -> GroupElement:
    return w_structure(space).epsilon(X, f)


def yterm_leaves(space: SpinSpace, term: YTerm) -> list[PElement]:
    """Decode the ``P``-colours of a Y-term into pull-back elements."""
    return [PElement.from_coords(space, c) for c in term.colors]

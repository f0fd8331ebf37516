"""Third exterior powers of finitely generated abelian groups.

``Λ³H`` has the basis ``e_i∧e_j∧e_k`` (``i<j<k``) of order
``gcd(n_i, n_j, n_k)``.  Coefficients are stored sparsely by index triple.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterator, Mapping, Sequence

from .fgab import (
    DualGroup,
    FgAbelianGroup,
    GroupElement,
    Homomorphism,
    InfiniteGroup,
    dual_group,
)

Triple = tuple[int, int, int]


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted indices (sign 0 on repeats)."""
    a = list(idx)
    sign = 1
    for i in range(len(a)):
        for j in range(len(a) - 1 - i):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                sign = -sign
    if len(set(a)) < len(a):
        return 0, tuple(a)
    return sign, tuple(a)


def det3(m: Sequence[Sequence[int]]) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _mod(x: int, n: int) -> int:
    return x % n if n else x


@dataclass(frozen=True)
class TrivectorSpace:
    base: FgAbelianGroup

    @cached_property
    def triples(self) -> tuple[Triple, ...]:
        """Basis triples of nontrivial order, lexicographic."""
        o = self.base.orders
        return tuple(t for t in itertools.combinations(range(self.base.rank), 3) if gcd(o[t[0]], o[t[1]], o[t[2]]) != 1)

    def order(self, t: Triple) -> int:
        o = self.base.orders
        return gcd(o[t[0]], o[t[1]], o[t[2]])

    @cached_property
    def group(self) -> FgAbelianGroup:
        """``Λ³H`` as an abelian group, one generator per entry of ``triples``."""
        return FgAbelianGroup([self.order(t) for t in self.triples])

    def zero(self) -> Trivector:
        return Trivector(self, {})

    def basis(self, t: Triple) -> Trivector:
        return Trivector(self, {t: 1})

    def from_vector(self, x: GroupElement | Sequence[int]) -> Trivector:
        coeffs = x.coeffs if isinstance(x, GroupElement) else x
        return Trivector(self, dict(zip(self.triples, coeffs)))

    def elements(self) -> Iterator[Trivector]:
        for x in self.group.elements():
            yield self.from_vector(x)


@dataclass(frozen=True)
class Trivector:
    space: TrivectorSpace
    coeffs: Mapping[Triple, int] = field(compare=False)
    _key: tuple = field(init=False, repr=False)

    def __init__(self, space: TrivectorSpace, coeffs: Mapping[Triple, int]):
        clean = {}
        for t, c in coeffs.items():
            sign, st = _sort_sign(t)
            if sign == 0:
                continue
            o = space.order(st)
            if o == 1:
                continue
            v = _mod(clean.get(st, 0) + sign * c, o)
            if v:
                clean[st] = v
            else:
                clean.pop(st, None)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_key", tuple(sorted(clean.items())))

    def __repr__(self):
        terms = " + ".join(f"{c}*e{t[0]}^e{t[1]}^e{t[2]}" for t, c in sorted(self.coeffs.items()))
        return f"Trivector({terms or '0'})"

    def _check(self, other):
        if not isinstance(other, Trivector) or other.space != self.space:
            raise ValueError("trivectors live in different spaces")

    def __add__(self, other: Trivector) -> Trivector:
        self._check(other)
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) + c
        return Trivector(self.space, out)

    def __neg__(self) -> Trivector:
        return Trivector(self.space, {t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other: Trivector) -> Trivector:
        return self + (-other)

    def __mul__(self, k: int) -> Trivector:
        return Trivector(self.space, {t: k * c for t, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Trivector) and self.space == other.space and self._key == other._key

    def __hash__(self):
        return hash((self.space, self._key))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, t: Triple) -> int:
        return self.coeffs.get(t, 0)

    def to_vector(self) -> GroupElement:
        return self.space.group.element([self.coeffs.get(t, 0) for t in self.space.triples])


def wedge(x1: GroupElement, x2: GroupElement, x3: GroupElement) -> Trivector:
    """``x1 ∧ x2 ∧ x3`` expanded in the basis of ``Λ³H``."""
    H = x1.group
    if x2.group != H or x3.group != H:
        raise ValueError("wedge factors must live in the same group")
    coeffs: dict[Triple, int] = {}
    nz = [[(i, c) for i, c in enumerate(x.coeffs) if c] for x in (x1, x2, x3)]
    for (i, a), (j, b), (k, c) in itertools.product(*nz):
        coeffs[(i, j, k)] = coeffs.get((i, j, k), 0) + a * b * c
    return Trivector(TrivectorSpace(H), coeffs)


def pairing_n(dual: DualGroup, y: Trivector, X: Trivector) -> int:
    """``<y, X>^(n)`` for ``y`` in ``Λ³Hom(H, Z_n)`` and ``X`` in ``Λ³H``.

    Bilinear extension of ``det(<y_i, x_j>)`` on decomposable trivectors.
    """
    if y.space.base != dual.group:
        raise ValueError("y is not a trivector over the given dual group")
    if X.space.base != dual.base:
        raise ValueError("X is not a trivector over the dual's base group")
    n = dual.modulus
    total = 0
    for (p, q, r), yc in y.coeffs.items():
        rows = [(dual.index[a], dual.scale(a)) for a in (p, q, r)]
        for (i, j, k), xc in X.coeffs.items():
            m = [[s if b == col else 0 for col in (i, j, k)] for b, s in rows]
            d = det3(m)
            if d:
                total += yc * xc * d
    return _mod(total, n)


def pairing_decomposable(dual: DualGroup, ys: Sequence[GroupElement], xs: Sequence[GroupElement]) -> int:
    """``det(<y_i, x_j>)`` reduced mod ``n``."""
    return _mod(det3([[dual.pair(y, x) for x in xs] for y in ys]), dual.modulus)


def dual_basis_value(dual: DualGroup, t: Triple, X: Trivector) -> int:
    """``<e_i*∧e_j*∧e_k*, X>^(n)`` for a triple of base indices ``t``."""
    pos = [dual.position(i) for i in t]
    if None in pos:
        return 0
    y = Trivector(TrivectorSpace(dual.group), {tuple(pos): 1})
    return pairing_n(dual, y, X)


def basis_coefficient(m: int, ni: int, nj: int, nk: int) -> int:
    """Coefficient of ``(e_i*∧e_j*∧e_k*)^*`` in the image of ``e_i∧e_j∧e_k``.

    ``m^2 gcd(m,n_i,n_j,n_k) / (gcd(m,n_i) gcd(m,n_j) gcd(m,n_k))``.
    """
    if m <= 0:
        raise ValueError("basis_coefficient needs a positive modulus")
    num = m * m * gcd(m, ni, nj, nk)
    den = gcd(m, ni) * gcd(m, nj) * gcd(m, nk)
    q, r = divmod(num, den)
    assert r == 0, (m, ni, nj, nk)
    return q


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def pairing_table(X: Trivector, n: int) -> dict[Triple, int]:
    """Nonzero values of ``<-, X>^(n)`` on the dual basis triples."""
    dual = dual_group(X.space.base, n)
    out = {}
    for t in itertools.combinations(dual.index, 3):
        v = dual_basis_value(dual, t, X)
        if v:
            out[t] = v
    return out


def detect_nonzero(X: Trivector) -> int | None:
    """Smallest ``n | exp(H)`` with ``<-, X>^(n) != 0``, or None if there is none."""
    H = X.space.base
    if not H.is_finite:
        raise InfiniteGroup("detect_nonzero needs a finite group")
    for n in divisors(H.exponent()):
        if pairing_table(X, n):
            return n
    return None


class ExteriorCube:
    """``Λ³ψ : Λ³H -> Λ³H'`` for a homomorphism ``ψ``."""

    def __init__(self, psi: Homomorphism):
        self.psi = psi
        self.source = TrivectorSpace(psi.source)
        self.target = TrivectorSpace(psi.target)
        self._images = {
            t: wedge(psi.image(t[0]), psi.image(t[1]), psi.image(t[2])) for t in self.source.triples
        }

    def __call__(self, X: Trivector) -> Trivector:
        if X.space != self.source:
            raise ValueError("trivector is not in the source space")
        out = self.target.zero()
        for t, c in X.coeffs.items():
            out = out + self._images[t] * c
        return out

    def as_homomorphism(self) -> Homomorphism:
        return Homomorphism.from_images(
            self.source.group, self.target.group, [self._images[t].to_vector() for t in self.source.triples]
        )


def exterior_cube_hom(psi: Homomorphism) -> ExteriorCube:
    return ExteriorCube(psi)

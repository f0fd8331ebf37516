"""Finitely generated abelian groups given by a basis of cyclic factors.

A group is stored as the list of orders ``n_i`` of its basis generators
``e_i``; an order of 0 means an infinite cyclic factor.  Throughout the
package ``Z_0`` is read as ``Z`` and ``gcd(0, k) = k``, so the integer
coefficient case shares code with the finite moduli.

Example:

>>> H = FgAbelianGroup([2, 0])
>>> H
FgAbelianGroup((2, 0))
>>> H.element([3, -1])
GroupElement((2, 0), (1, -1))
>>> D = dual_group(H, 4)
>>> D.orders
(2, 4)
>>> pair(D, D.gen(0), H.gen(0))
2
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, prod
from typing import Iterator, Sequence

Matrix = list[list[int]]


class InfiniteGroup(ValueError):
    """Raised by operations that need a finite group."""


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """``a @ b``; pass ``cols`` when ``b`` may have no rows."""
    if not a:
        return []
    inner = len(b)
    if cols is None:
        cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def _reduce(value: int, order: int) -> int:
    return value % order if order else value


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _snf(mat: Sequence[Sequence[int]]):
    """Return ``(U, D, V, V_inv)`` with ``U @ mat @ V == D``.

    Pivot: smallest nonzero absolute value, ties broken in row-major order.
    """
    a = [list(map(int, row)) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)
    vi = _identity(n)

    def swap_rows(r1, r2):
        a[r1], a[r2] = a[r2], a[r1]
        u[r1], u[r2] = u[r2], u[r1]

    def swap_cols(c1, c2):
        for row in a:
            row[c1], row[c2] = row[c2], row[c1]
        for row in v:
            row[c1], row[c2] = row[c2], row[c1]
        vi[c1], vi[c2] = vi[c2], vi[c1]

    def add_row(dst, src, k):
        ra, rs = a[dst], a[src]
        for j in range(n):
            ra[j] += k * rs[j]
        ru, rus = u[dst], u[src]
        for j in range(m):
            ru[j] += k * rus[j]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]
        rs, rd = vi[src], vi[dst]
        for j in range(n):
            rs[j] -= k * rd[j]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            clean = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v, vi


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U @ mat @ V = D`` over the integers.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...``.
    """
    u, d, v, _ = _snf(mat)
    return u, d, v


def _solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """One integer solution of ``a @ x == b``, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    u, d, v, _ = _snf(a)
    ub = [sum(u[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    return [sum(v[i][k] * y[k] for k in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# Groups and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbelianGroup:
    """Direct sum of cyclic groups ``Z_{n_1} + ... + Z_{n_r}``.

    Factors of order 1 are dropped at construction.
    """

    orders: tuple[int, ...]

    def __init__(self, orders: Sequence[int] = ()):
        orders = tuple(int(n) for n in orders)
        if any(n < 0 for n in orders):
            raise ValueError(f"orders must be >= 0, got {orders}")
        object.__setattr__(self, "orders", tuple(n for n in orders if n != 1))

    def __repr__(self):
        return f"FgAbelianGroup({self.orders})"

    @property
    def rank(self) -> int:
        """Number of basis generators."""
        return len(self.orders)

    @property
    def is_finite(self) -> bool:
        return 0 not in self.orders

    @property
    def free_indices(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.orders) if n == 0)

    @property
    def torsion_indices(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.orders) if n > 0)

    def cardinality(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        return prod(self.orders)

    def exponent(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        return reduce(lambda a, b: a * b // gcd(a, b), self.orders, 1)

    def torsion_exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (n for n in self.orders if n), 1)

    def invariant_factors(self) -> tuple[int, ...]:
        """Canonical invariants: torsion factors ``d_1 | d_2 | ...`` followed by zeros."""
        if not self.orders:
            return ()
        _, d, _, _ = _snf([[n if i == j else 0 for j in range(self.rank)] for i, n in enumerate(self.orders)])
        diag = [d[i][i] for i in range(self.rank)]
        return tuple(x for x in diag if x != 1)

    def is_isomorphic_to(self, other: FgAbelianGroup) -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def element(self, coeffs: Sequence[int]) -> GroupElement:
        return GroupElement(self, coeffs)

    def zero(self) -> GroupElement:
        return GroupElement(self, [0] * self.rank)

    def gen(self, i: int) -> GroupElement:
        return GroupElement(self, [int(i == j) for j in range(self.rank)])

    def gens(self) -> list[GroupElement]:
        return [self.gen(i) for i in range(self.rank)]

    def elements(self) -> Iterator[GroupElement]:
        """All elements, lexicographic in the reduced coefficients."""
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        for c in itertools.product(*(range(n) for n in self.orders)):
            yield GroupElement(self, c)

    def torsion_elements(self) -> Iterator[GroupElement]:
        tors = self.torsion_indices
        for c in itertools.product(*(range(self.orders[i]) for i in tors)):
            coeffs = [0] * self.rank
            for i, ci in zip(tors, c):
                coeffs[i] = ci
            yield GroupElement(self, coeffs)


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    coeffs: tuple[int, ...]

    def __init__(self, group: FgAbelianGroup, coeffs: Sequence[int]):
        if len(coeffs) != group.rank:
            raise ValueError(f"expected {group.rank} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coeffs", tuple(_reduce(int(c), n) for c, n in zip(coeffs, group.orders)))

    def __repr__(self):
        return f"GroupElement({self.group.orders}, {self.coeffs})"

    def _check(self, other: GroupElement):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise ValueError(f"group mismatch: {self.group} vs {getattr(other, 'group', other)}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, [-a for a in self.coeffs])

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, [k * a for a in self.coeffs])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_torsion(self) -> bool:
        return all(c == 0 for c, n in zip(self.coeffs, self.group.orders) if n == 0)

    def order(self) -> int:
        """Order of the element (0 when it has infinite order)."""
        if not self.is_torsion():
            return 0
        return reduce(
            lambda a, b: a * b // gcd(a, b),
            (n // gcd(n, c) for c, n in zip(self.coeffs, self.group.orders) if n),
            1,
        )


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    """Group homomorphism given by the images of the source generators.

    ``matrix[j][i]`` is the ``j``-th coordinate of the image of ``e_i``.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup, matrix: Sequence[Sequence[int]]):
        rows = [list(r) for r in matrix] if target.rank else []
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise ValueError(f"matrix shape does not match {source} -> {target}")
        rows = [[_reduce(int(x), m) for x in r] for r, m in zip(rows, target.orders)]
        for i, n in enumerate(source.orders):
            if n == 0:
                continue
            for j, m in enumerate(target.orders):
                if _reduce(n * rows[j][i], m):
                    raise ValueError(f"image of generator {i} is not killed by its order {n}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in rows))

    @classmethod
    def from_images(cls, source: FgAbelianGroup, target: FgAbelianGroup, images: Sequence[GroupElement]) -> Homomorphism:
        cols = [im.coeffs for im in images]
        return cls(source, target, [[cols[i][j] for i in range(source.rank)] for j in range(target.rank)])

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> Homomorphism:
        return cls(group, group, _identity(group.rank))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise ValueError(f"{x} is not in {self.source}")
        return GroupElement(self.target, [sum(r[i] * x.coeffs[i] for i in range(len(r))) for r in self.matrix])

    def image(self, i: int) -> GroupElement:
        return GroupElement(self.target, [r[i] for r in self.matrix])

    def compose(self, first: Homomorphism) -> Homomorphism:
        """``self ∘ first``."""
        if first.target != self.source:
            raise ValueError("cannot compose: target/source mismatch")
        return Homomorphism(first.source, self.target, matmul(self.matrix, first.matrix, first.source.rank))

    def preimage(self, y: GroupElement) -> GroupElement | None:
        """Some ``x`` with ``self(x) == y``, or None."""
        tgt = self.target
        rel = [m for m in tgt.orders]
        a = [list(self.matrix[j]) + [rel[j] if k == j else 0 for k in range(tgt.rank)] for j in range(tgt.rank)]
        if not a:
            return self.source.zero()
        sol = _solve(a, list(y.coeffs))
        if sol is None:
            return None
        return GroupElement(self.source, sol[: self.source.rank])

    def is_surjective(self) -> bool:
        return all(self.preimage(g) is not None for g in self.target.gens())

    def is_isomorphism(self) -> bool:
        # surjections between isomorphic f.g. abelian groups are bijective
        return self.source.is_isomorphic_to(self.target) and self.is_surjective()

    def inverse(self) -> Homomorphism:
        if not self.is_isomorphism():
            raise ValueError("homomorphism is not invertible")
        return Homomorphism.from_images(self.target, self.source, [self.preimage(g) for g in self.target.gens()])


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cokernel:
    """``Z^g / rowspace(relations)`` in invariant-factor coordinates.

    ``projection[k]`` is the row vector sending a generator vector to the
    ``k``-th coordinate; ``section[k]`` is a generator vector lifting the
    ``k``-th basis element.
    """

    group: FgAbelianGroup
    projection: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]

    def project(self, vec: Sequence[int]) -> GroupElement:
        return GroupElement(self.group, [sum(p * x for p, x in zip(row, vec) if x) for row in self.projection])


def cokernel(generators: int, relations: Sequence[Sequence[int]]) -> Cokernel:
    rels = [list(r) for r in relations if any(r)]
    if any(len(r) != generators for r in rels):
        raise ValueError("relation length does not match generator count")
    if rels:
        _, d, v, vi = _snf(rels)
    else:
        d, v, vi = [], _identity(generators), _identity(generators)
    diag = [d[k][k] if k < len(d) else 0 for k in range(generators)]
    keep = [k for k in range(generators) if diag[k] != 1]
    group = FgAbelianGroup([diag[k] for k in keep])
    proj = tuple(tuple(v[g][k] for g in range(generators)) for k in keep)
    sect = tuple(tuple(vi[k]) for k in keep)
    return Cokernel(group, proj, sect)


def group_from_presentation(generators: int, relations: Sequence[Sequence[int]]) -> tuple[FgAbelianGroup, Homomorphism]:
    """Abelian group on ``generators`` generators subject to ``relations`` (rows).

    Returns the group in invariant-factor form and the projection from the
    free group ``Z^generators``.
    """
    ck = cokernel(generators, relations)
    free = FgAbelianGroup([0] * generators)
    return ck.group, Homomorphism(free, ck.group, ck.projection)


# ---------------------------------------------------------------------------
# Duals and reductions
# ---------------------------------------------------------------------------

def pairing_scale(n: int, order: int) -> int:
    """``n / gcd(n, order)``, the value of ``<e_i*, e_i>`` in ``Z_n``."""
    g = gcd(n, order)
    return n // g if g else 1


def dual_order(n: int, order: int) -> int:
    """Order of ``e_i*`` in ``Hom(H, Z_n)``."""
    if n == 0:
        return 0 if order == 0 else 1
    return gcd(n, order)


@dataclass(frozen=True)
class DualGroup:
    """``Hom(H, Z_n)`` with the dual basis ``<e_i*, e_j> = δ_ij n/gcd(n, n_i)``.

    Dual generators of order 1 are pruned; ``index[p]`` is the generator of
    ``base`` dual to the ``p``-th generator of ``group``.
    """

    base: FgAbelianGroup
    modulus: int
    group: FgAbelianGroup = field(init=False)
    index: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be >= 0")
        full = [dual_order(self.modulus, n) for n in self.base.orders]
        index = tuple(i for i, o in enumerate(full) if o != 1)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "group", FgAbelianGroup([full[i] for i in index]))

    @property
    def orders(self) -> tuple[int, ...]:
        return self.group.orders

    def scale(self, p: int) -> int:
        return pairing_scale(self.modulus, self.base.orders[self.index[p]])

    def position(self, i: int) -> int | None:
        """Position in ``group`` of the dual of base generator ``i``."""
        try:
            return self.index.index(i)
        except ValueError:
            return None

    def gen(self, p: int) -> GroupElement:
        return self.group.gen(p)

    def element(self, coeffs: Sequence[int]) -> GroupElement:
        return self.group.element(coeffs)

    def pair(self, y: GroupElement, x: GroupElement) -> int:
        if y.group != self.group or x.group != self.base:
            raise ValueError("pairing arguments are not in this dual/base pair")
        total = sum(y.coeffs[p] * self.scale(p) * x.coeffs[i] for p, i in enumerate(self.index))
        return _reduce(total, self.modulus)


def dual_group(H: FgAbelianGroup, n: int) -> DualGroup:
    return DualGroup(H, n)


def pair(dual: DualGroup, y: GroupElement, x: GroupElement) -> int:
    """``<y, x>`` in ``Z_n`` for ``y`` in ``Hom(H, Z_n)`` and ``x`` in ``H``."""
    return dual.pair(y, x)


def tensor_mod(H: FgAbelianGroup, n: int) -> tuple[FgAbelianGroup, Homomorphism]:
    """``H ⊗ Z_n`` together with the reduction map ``H -> H ⊗ Z_n``.

    The generators of the result are the images of the ``e_i`` with
    ``gcd(n, n_i) != 1``, in their original order.
    """
    orders = [gcd(n, m) for m in H.orders]
    keep = [i for i, o in enumerate(orders) if o != 1]
    target = FgAbelianGroup([orders[i] for i in keep])
    mat = [[int(i == k) for i in range(H.rank)] for k in keep]
    return target, Homomorphism(H, target, mat)


def dual_map(psi: Homomorphism, n: int) -> Homomorphism:
    """``psi^(n) : Hom(H', Z_n) -> Hom(H, Z_n)``, precomposition with ``psi``."""
    src, tgt = dual_group(psi.target, n), dual_group(psi.source, n)
    cols = []
    for q, j in enumerate(src.index):
        s_q = src.scale(q)
        coeffs = []
        for p, i in enumerate(tgt.index):
            v = _reduce(s_q * psi.matrix[j][i], n)
            s_p = tgt.scale(p)
            if v % s_p:
                raise ArithmeticError("dual map is not integral; psi is not a homomorphism")
            coeffs.append(v // s_p)
        cols.append(coeffs)
    mat = [[cols[q][p] for q in range(len(cols))] for p in range(tgt.group.rank)]
    return Homomorphism(src.group, tgt.group, mat)


def reduction_map(H: FgAbelianGroup, m: int, n: int) -> Homomorphism:
    """``Hom(H, Z_m) -> Hom(H, Z_n)`` induced by ``Z_m -> Z_n`` (requires ``n | m``)."""
    if n == 0 and m != 0 or n and m % n:
        raise ValueError(f"{n} does not divide {m}")
    src, tgt = dual_group(H, m), dual_group(H, n)
    cols = []
    for q, i in enumerate(src.index):
        v = _reduce(src.scale(q), n)
        p = tgt.position(i)
        col = [0] * tgt.group.rank
        if p is not None:
            s_p = tgt.scale(p)
            if v % s_p:
                raise ArithmeticError("reduction is not integral")
            col[p] = v // s_p
        cols.append(col)
    mat = [[cols[q][p] for q in range(len(cols))] for p in range(tgt.group.rank)]
    return Homomorphism(src.group, tgt.group, mat)


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------

def subgroup_order(elements: Sequence[GroupElement], group: FgAbelianGroup) -> int:
    """Order of the subgroup of a finite group generated by ``elements``."""
    rels = [list(x.coeffs) for x in elements]
    rels += [[n if i == j else 0 for j in range(group.rank)] for i, n in enumerate(group.orders)]
    quotient = cokernel(group.rank, rels).group
    return group.cardinality() // quotient.cardinality()


def enumerate_isomorphisms(H: FgAbelianGroup, H2: FgAbelianGroup) -> Iterator[Homomorphism]:
    """All isomorphisms ``H -> H2`` of finite groups.

    Order: lexicographic in the tuple of generator images (image of ``e_1``
    first), each image ordered by its reduced coefficient vector.
    """
    if not H.is_finite or not H2.is_finite:
        raise InfiniteGroup("isomorphism enumeration needs finite groups")
    if not H.is_isomorphic_to(H2):
        return
    by_order: dict[int, list[GroupElement]] = {}
    for x in H2.elements():
        by_order.setdefault(x.order(), []).append(x)

    def extend(images: list[GroupElement], size: int) -> Iterator[list[GroupElement]]:
        k = len(images)
        if k == H.rank:
            yield images
            return
        n = H.orders[k]
        for x in by_order.get(n, []):
            cand = images + [x]
            if subgroup_order(cand, H2) == size * n:
                yield from extend(cand, size * n)

    for images in extend([], 1):
        yield Homomorphism.from_images(H, H2, images)

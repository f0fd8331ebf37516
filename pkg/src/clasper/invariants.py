"""The invariant record ``(H, Spin, λ, q, (u^(n)), R)`` of a closed 3-manifold.

Values in ``Q/Z`` are ``Fraction`` objects reduced into ``[0, 1)``.  Cup
tables are keyed by base generator index triples ``i <= j <= k`` (the dual
basis ``e_i*, e_j*, e_k*``); omitted entries are zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .fgab import (
    FgAbelianGroup,
    GroupElement,
    Homomorphism,
    dual_group,
    dual_map,
    reduction_map,
)
from .spinspace import Spin, SpinSpace
from .trivector import _sort_sign, divisors

Triple = tuple[int, int, int]
CupTable = Mapping[Triple, int]


def qz(x) -> Fraction:
    """Reduce a rational number into ``[0, 1)``."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def _mod(x: int, n: int) -> int:
    return x % n if n else x


# ---------------------------------------------------------------------------
# Linking pairings and quadratic functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinkingPairing:
    """Symmetric ``λ(e_i, e_j)`` on the torsion generators of ``H``."""

    group: FgAbelianGroup
    matrix: tuple[tuple[Fraction, ...], ...]

    def __init__(self, group: FgAbelianGroup, matrix: Sequence[Sequence]):
        t = len(group.torsion_indices)
        if len(matrix) != t or any(len(r) != t for r in matrix):
            raise ValueError(f"linking matrix must be {t}x{t}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "matrix", tuple(tuple(qz(v) for v in r) for r in matrix))

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.group.torsion_indices

    def __call__(self, x: GroupElement, y: GroupElement) -> Fraction:
        tors = self.torsion
        total = Fraction(0)
        for a, i in enumerate(tors):
            if x.coeffs[i]:
                for b, j in enumerate(tors):
                    if y.coeffs[j]:
                        total += x.coeffs[i] * y.coeffs[j] * self.matrix[a][b]
        return qz(total)

    def violations(self) -> list[str]:
        out = []
        tors = self.torsion
        orders = self.group.orders
        m = self.matrix
        for a, b in itertools.product(range(len(tors)), repeat=2):
            if m[a][b] != m[b][a]:
                out.append(f"asymmetric at ({tors[a]},{tors[b]})")
            if qz(orders[tors[a]] * m[a][b]):
                out.append(f"λ(e{tors[a]},e{tors[b]}) = {m[a][b]} not killed by {orders[tors[a]]}")
        if out:
            return out
        gens = [self.group.gen(i) for i in tors]
        for x in self.group.torsion_elements():
            if not x.is_zero() and all(self(x, g) == 0 for g in gens):
                out.append(f"{x.coeffs} pairs to zero with everything")
                break
        return out


@dataclass(frozen=True)
class QuadFn:
    """Quadratic function over a linking pairing, given on torsion generators."""

    linking: LinkingPairing
    values: tuple[Fraction, ...]

    def __init__(self, linking: LinkingPairing, values: Sequence):
        if len(values) != len(linking.torsion):
            raise ValueError("one value per torsion generator expected")
        object.__setattr__(self, "linking", linking)
        object.__setattr__(self, "values", tuple(qz(v) for v in values))

    def __call__(self, x: GroupElement) -> Fraction:
        return quad_value(self, x)

    def violations(self) -> list[str]:
        out = []
        lam = self.linking
        for a, i in enumerate(lam.torsion):
            n = lam.group.orders[i]
            if qz(n * self.values[a] + comb(n, 2) * lam.matrix[a][a]):
                out.append(f"closure fails at e{i}: {n}·q + C({n},2)·λ != 0")
        return out


def quad_value(q: QuadFn, x: GroupElement) -> Fraction:
    """``q(Σ c_i e_i) = Σ (c_i q(e_i) + C(c_i,2) λ_ii) + Σ_{i<j} c_i c_j λ_ij``."""
    if not x.is_torsion():
        raise ValueError(f"{x} is not a torsion element")
    lam = q.linking
    tors = lam.torsion
    c = [x.coeffs[i] for i in tors]
    total = Fraction(0)
    for a in range(len(tors)):
        total += c[a] * q.values[a] + comb(c[a], 2) * lam.matrix[a][a]
        for b in range(a + 1, len(tors)):
            total += c[a] * c[b] * lam.matrix[a][b]
    return qz(total)


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

def default_moduli(H: FgAbelianGroup) -> tuple[int, ...]:
    """``{0} ∪ {d > 1 : d | exp(Tors H)}``, plus 2 whenever ``H ⊗ Z_2 != 0``."""
    mods = {0} | {d for d in divisors(H.torsion_exponent()) if d > 1}
    if any(n % 2 == 0 for n in H.orders):
        mods.add(2)
    return tuple(sorted(mods))


def dual_triples(H: FgAbelianGroup, n: int) -> list[Triple]:
    """Index triples ``i <= j <= k`` of nontrivial dual generators at modulus ``n``."""
    idx = dual_group(H, n).index
    return list(itertools.combinations_with_replacement(idx, 3))


@dataclass(frozen=True)
class Violation:
    constraint: str
    detail: str

    def __str__(self):
        return f"{self.constraint}: {self.detail}"


@dataclass(frozen=True, eq=False)
class InvariantRecord:
    group: FgAbelianGroup
    linking: LinkingPairing
    quadratic: Mapping[Spin, tuple[Fraction, ...]]
    cup: Mapping[int, CupTable]
    rochlin: Mapping[Spin, int]
    moduli: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.moduli:
            object.__setattr__(self, "moduli", default_moduli(self.group))
        object.__setattr__(self, "moduli", tuple(sorted(set(self.moduli))))
        quad = {tuple(k): tuple(qz(v) for v in vals) for k, vals in self.quadratic.items()}
        cup = {}
        # tables for unconfigured moduli are kept so validation can report them
        for n in sorted(set(self.moduli) | set(self.cup)):
            table = {}
            for t, v in self.cup.get(n, {}).items():
                v = _mod(int(v), n) if n >= 0 else int(v)
                if v:
                    table[tuple(t)] = v
            cup[n] = table
        object.__setattr__(self, "quadratic", quad)
        object.__setattr__(self, "cup", cup)
        object.__setattr__(self, "rochlin", {tuple(k): int(v) % 16 for k, v in self.rochlin.items()})

    @property
    def spin(self) -> SpinSpace:
        return SpinSpace(self.group)

    def quad(self, sigma: Spin) -> QuadFn:
        return QuadFn(self.linking, self.quadratic[tuple(sigma)])

    def cup_entry(self, n: int, t: Sequence[int]) -> int:
        """``u^(n)(e_i*, e_j*, e_k*)`` for any order of the indices."""
        sign, st = _sort_sign(t)
        v = self.cup[n].get(st, 0)
        return _mod(-v if sign < 0 else v, n)

    def cup_value(self, n: int, y1: GroupElement, y2: GroupElement, y3: GroupElement) -> int:
        """Trilinear extension of the table to arbitrary elements of ``Hom(H, Z_n)``."""
        dual = dual_group(self.group, n)
        total = 0
        nz = [[(dual.index[p], c) for p, c in enumerate(y.coeffs) if c] for y in (y1, y2, y3)]
        for (i, a), (j, b), (k, c) in itertools.product(*nz):
            total += a * b * c * self.cup_entry(n, (i, j, k))
        return _mod(total, n)

    def __eq__(self, other):
        if not isinstance(other, InvariantRecord):
            return NotImplemented
        return (
            self.group == other.group
            and self.linking == other.linking
            and self.quadratic == other.quadratic
            and self.cup == other.cup
            and self.rochlin == other.rochlin
            and self.moduli == other.moduli
        )


def validate_record(r: InvariantRecord) -> list[Violation]:
    """All constraint violations of a record; empty when it is valid."""
    out: list[Violation] = []
    H = r.group
    spin = r.spin
    points = set(spin.points())

    for msg in r.linking.violations():
        kind = "degenerate pairing" if msg.endswith("pairs to zero with everything") else "linking pairing"
        out.append(Violation(kind, msg))

    if set(r.quadratic) != points:
        out.append(Violation("quadratic", f"spin indices {sorted(r.quadratic)} != all of Z_2^{spin.dim}"))
    else:
        for sigma in sorted(points):
            vals = r.quadratic[sigma]
            if len(vals) != len(H.torsion_indices):
                out.append(Violation("quadratic", f"σ={sigma}: wrong number of values"))
                continue
            for msg in QuadFn(r.linking, vals).violations():
                out.append(Violation("quadratic closure", f"σ={sigma}: {msg}"))

    if set(r.rochlin) != points:
        out.append(Violation("rochlin", f"spin indices {sorted(r.rochlin)} != all of Z_2^{spin.dim}"))

    if 0 not in r.moduli:
        out.append(Violation("moduli", "modulus 0 must be configured"))
    for n in r.moduli:
        if n < 0 or n == 1:
            out.append(Violation("moduli", f"invalid modulus {n}"))
    extra = set(r.cup) - set(r.moduli)
    if extra:
        out.append(Violation("cup", f"tables for unconfigured moduli {sorted(extra)}"))

    for n in r.moduli:
        if n < 0 or n == 1:
            continue
        dual = dual_group(H, n)
        dorders = {i: dual.orders[p] for p, i in enumerate(dual.index)}
        for t, v in r.cup[n].items():
            if len(t) != 3 or list(t) != sorted(t) or any(not 0 <= i < H.rank for i in t):
                out.append(Violation("cup", f"n={n}: bad key {t}"))
                continue
            for i in set(t):
                g = dorders.get(i, 1)
                if _mod(g * v, n):
                    out.append(Violation("cup", f"n={n}: u{t} = {v} not killed by order {g} of e{i}*"))
                    break
            if len(set(t)) < 3 and _mod(2 * v, n):
                out.append(Violation("cup skew", f"n={n}: 2·u{t} = {2 * v} != 0"))

    for n, m in itertools.permutations(r.moduli, 2):
        if n in (0, 1) or m == 1 or (m % n):
            continue
        rho = reduction_map(H, m, n)
        dm = dual_group(H, m)
        for t in itertools.combinations_with_replacement(range(dm.group.rank), 3):
            ys = [rho(dm.gen(p)) for p in t]
            lhs = r.cup_value(n, *ys)
            rhs = _mod(r.cup_entry(m, [dm.index[p] for p in t]), n)
            if lhs != rhs:
                out.append(Violation("cup naturality", f"{m} -> {n} at {tuple(dm.index[p] for p in t)}: {lhs} != {rhs}"))
    return out


def shift_base_point(r: InvariantRecord, t: Spin) -> InvariantRecord:
    """Re-coordinatize spin data around ``σ0 + t``."""
    spin = r.spin
    return replace(
        r,
        quadratic={s: r.quadratic[spin.add(s, t)] for s in spin.points()},
        rochlin={s: r.rochlin[spin.add(s, t)] for s in spin.points()},
    )


def spin_map(psi: Homomorphism, offset: Spin):
    """``Ψ(σ0' + y') = σ0 + offset + ψ^(2)(y')`` on spin indices, for ``ψ : H -> H'``."""
    psi2 = dual_map(psi, 2)
    offset = tuple(offset)
    if len(offset) != psi2.target.rank:
        raise ValueError("offset has the wrong length")

    def Psi(sigma2: Spin) -> Spin:
        img = psi2(psi2.source.element(sigma2)).coeffs
        return tuple((a + b) % 2 for a, b in zip(img, offset))

    return Psi


def transport(r: InvariantRecord, psi: Homomorphism, offset: Spin) -> InvariantRecord:
    """The record over ``ψ.target`` for which ``(ψ, offset)`` is a plain certificate."""
    if psi.source != r.group:
        raise ValueError("ψ does not start at the record's homology")
    inv = psi.inverse()
    H2 = psi.target
    back = [inv(H2.gen(i)) for i in H2.torsion_indices]
    linking = LinkingPairing(H2, [[r.linking(x, y) for y in back] for x in back])
    Psi = spin_map(psi, offset)
    spin2 = SpinSpace(H2)
    quadratic, rochlin = {}, {}
    for s2 in spin2.points():
        q = r.quad(Psi(s2))
        quadratic[s2] = tuple(quad_value(q, x) for x in back)
        rochlin[s2] = r.rochlin[Psi(s2)]
    cup = {}
    for n in r.moduli:
        pull = dual_map(psi, n)
        dual2 = dual_group(H2, n)
        cup[n] = {
            t: r.cup_value(n, *(pull(dual2.gen(dual2.position(i))) for i in t))
            for t in dual_triples(H2, n)
        }
    return InvariantRecord(H2, linking, quadratic, cup, rochlin, r.moduli)


# ---------------------------------------------------------------------------
# B(H, S)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BElement:
    """Per-modulus trilinear deltas on dual triples plus a ``Z_16``-valued map on spin structures."""

    moduli: tuple[int, ...]
    tables: Mapping[int, CupTable]
    rochlin: tuple[int, ...]

    def __init__(self, moduli: Sequence[int], tables: Mapping[int, CupTable], rochlin: Sequence[int]):
        moduli = tuple(sorted(set(moduli)))
        clean = {}
        for n in moduli:
            tab = {}
            for t, v in tables.get(n, {}).items():
                sign, st = _sort_sign(t) if len(set(t)) == 3 else (1, tuple(sorted(t)))
                v = _mod(sign * v + tab.get(st, 0), n)
                if v:
                    tab[st] = v
                else:
                    tab.pop(st, None)
            clean[n] = tab
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "tables", clean)
        object.__setattr__(self, "rochlin", tuple(int(v) % 16 for v in rochlin))

    def __hash__(self):
        return hash((self.moduli, tuple((n, tuple(sorted(t.items()))) for n, t in self.tables.items()), self.rochlin))

    def _check(self, other: BElement):
        if self.moduli != other.moduli or len(self.rochlin) != len(other.rochlin):
            raise ValueError("B-elements of different shapes")

    def __add__(self, other: BElement) -> BElement:
        return b_add(self, other)

    def __sub__(self, other: BElement) -> BElement:
        return b_subtract(self, other)

    def __neg__(self) -> BElement:
        return BElement(self.moduli, {n: {t: -v for t, v in tab.items()} for n, tab in self.tables.items()}, [-v for v in self.rochlin])

    def is_zero(self) -> bool:
        return not any(self.tables.values()) and not any(self.rochlin)

    @classmethod
    def zero(cls, moduli: Sequence[int], spin_count: int) -> BElement:
        return cls(moduli, {}, [0] * spin_count)


def b_add(x: BElement, y: BElement) -> BElement:
    x._check(y)
    tables = {}
    for n in x.moduli:
        tab = dict(x.tables[n])
        for t, v in y.tables[n].items():
            tab[t] = tab.get(t, 0) + v
        tables[n] = tab
    return BElement(x.moduli, tables, [a + b for a, b in zip(x.rochlin, y.rochlin)])


def b_subtract(x: BElement, y: BElement) -> BElement:
    x._check(y)
    return b_add(x, -y)

"""Exhaustive and randomized oracles for the structural lemmas the deciders rely on.

Each ``verify_*`` function returns a ``LemmaReport``; ``ok`` is False as soon
as one counterexample is found, and the counterexample is kept.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .fgab import FgAbelianGroup, dual_group
from .spinspace import (
    AffineFn,
    CubicFn,
    SpinSpace,
    affine_pair,
    cubic_product,
    d3,
    d3_form,
    epsilon_cubic,
    gamma,
    gamma_map,
    kappa,
    w_structure,
)
from .trivector import TrivectorSpace, detect_nonzero, divisors, dual_basis_value, wedge
from .ygraph import SpecialPair, canonical_rotation, y_group


@dataclass
class LemmaReport:
    name: str
    ok: bool = True
    cases: int = 0
    seconds: float = 0.0
    counterexample: str = ""
    details: list[str] = field(default_factory=list)

    def fail(self, msg: str):
        if self.ok:
            self.counterexample = msg
        self.ok = False

    def summary(self) -> str:
        status = "ok" if self.ok else f"FAILED: {self.counterexample}"
        return f"{self.name}: {self.cases} cases in {self.seconds:.2f}s, {status}"


def finite_groups(bound: int) -> Iterator[FgAbelianGroup]:
    """One group per isomorphism type with ``|H| <= bound``, as invariant factors ``d1 | d2 | ...``."""

    def chains(prefix: list[int], size: int):
        yield prefix
        last = prefix[-1] if prefix else 1
        # each factor divides the next
        for d in range(2, bound + 1):
            if size * d > bound:
                break
            if prefix and d % last:
                continue
            yield from chains(prefix + [d], size * d)

    for c in chains([], 1):
        yield FgAbelianGroup(c)


# ---------------------------------------------------------------------------
# Trivector detection
# ---------------------------------------------------------------------------

def _all_vectors(orders: list[int]) -> np.ndarray:
    grids = np.meshgrid(*[np.arange(o, dtype=np.int64) for o in orders], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1) if orders else np.zeros((1, 0), dtype=np.int64)


def trivector_detection(H: FgAbelianGroup) -> tuple[int, int]:
    """Count trivectors of ``H`` and those misclassified by the divisor scan.

    The pairing with each dual basis triple is linear in ``X``, so its matrix
    on the basis trivectors (computed with the general pairing) is applied to
    every ``X`` at once.
    """
    space = TrivectorSpace(H)
    triples = space.triples
    orders = [space.order(t) for t in triples]
    X = _all_vectors(orders)
    detected = np.zeros(len(X), dtype=bool)
    basis = [space.basis(t) for t in triples]
    for n in divisors(H.exponent()):
        dual = dual_group(H, n)
        rows = [t for t in itertools.combinations(dual.index, 3)]
        if not rows or not triples:
            continue
        M = np.array([[dual_basis_value(dual, t, b) for b in basis] for t in rows], dtype=np.int64)
        vals = (X @ M.T) % n
        detected |= vals.any(axis=1)
    nonzero = X.any(axis=1)
    return len(X), int((detected != nonzero).sum())


def verify_trivectors(bound: int = 64, samples: int = 200, seed: int = 0) -> LemmaReport:
    """Every nonzero trivector over every finite ``H`` with ``|H| <= bound`` pairs nontrivially
    with some dual triple at a modulus dividing ``exp(H)``; zero pairs trivially."""
    rep = LemmaReport("trivectors")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for H in finite_groups(bound):
        total, bad = trivector_detection(H)
        rep.cases += total
        if bad:
            rep.fail(f"H = {H.orders}: {bad} misclassified trivectors")
        # the scalar decider agrees on a sample
        space = TrivectorSpace(H)
        if space.triples:
            for _ in range(min(samples, total)):
                X = space.from_vector([rng.randrange(space.order(t)) for t in space.triples])
                if (detect_nonzero(X) is None) != X.is_zero():
                    rep.fail(f"H = {H.orders}: detect_nonzero wrong on {X}")
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# Y-group isomorphisms
# ---------------------------------------------------------------------------

def small_homologies(max_rank: int = 3, orders=(0, 2, 3, 4), max_free: int = 1) -> Iterator[FgAbelianGroup]:
    for r in range(max_rank + 1):
        for o in itertools.combinations_with_replacement(orders, r):
            if o.count(0) <= max_free:
                yield FgAbelianGroup(o)


def verify_cubic(max_rank: int = 3) -> LemmaReport:
    """``Y(A(S, Z_2), 1̄)`` and ``C(S, Z_2)`` agree; ``γ`` is bijective and ``γ ε = id`` on every monomial."""
    rep = LemmaReport("cubic")
    t0 = time.perf_counter()
    for H in small_homologies(max_rank):
        space = SpinSpace(H)
        struct = y_group(affine_pair(space))
        rep.cases += 1
        if struct.group.invariant_factors() != space.cubic_group.invariant_factors():
            rep.fail(f"H = {H.orders}: Y-group {struct.group.invariant_factors()} vs C(S,Z2) {space.cubic_group.invariant_factors()}")
        if not gamma_map(space).is_isomorphism():
            rep.fail(f"H = {H.orders}: γ is not an isomorphism")
        for m in space.monomials:
            c = CubicFn.monomial(space, m)
            if gamma(space, epsilon_cubic(space, c)) != c:
                rep.fail(f"H = {H.orders}: γε != id on monomial {m}")
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_tri(max_rank: int = 3) -> LemmaReport:
    """``Y(P)`` and the pull-back agree; ``W`` is bijective and ``W ε = id`` on every basis element."""
    rep = LemmaReport("tri")
    t0 = time.perf_counter()
    for H in small_homologies(max_rank):
        space = SpinSpace(H)
        W = w_structure(space)
        target = W.target
        rep.cases += 1
        if W.struct.group.invariant_factors() != target.group.invariant_factors():
            rep.fail(f"H = {H.orders}: Y(P) {W.struct.group.invariant_factors()} vs pull-back {target.group.invariant_factors()}")
        if not W.as_homomorphism().is_isomorphism():
            rep.fail(f"H = {H.orders}: W is not an isomorphism")
        for k in range(target.group.rank):
            X, f = target.from_coords(target.group.gen(k))
            if W(W.epsilon(X, f)) != (X, f):
                rep.fail(f"H = {H.orders}: Wε != id on basis element {target.basis[k]}")
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# Relations in Y(A, s)
# ---------------------------------------------------------------------------

def _form_tensor(struct) -> np.ndarray:
    """``T[i, j, k]`` = normal form of ``Y[e_i, e_j, e_k]``."""
    r = struct.pair.group.rank
    m = struct.group.rank
    T = np.zeros((r, r, r, m), dtype=np.int64)
    index = {g: k for k, g in enumerate(struct.generators)}
    forms = struct.generator_forms
    for t in itertools.product(range(r), repeat=3):
        T[t] = forms[index[canonical_rotation(t)]].coeffs
    return T


def _reduce_rows(v: np.ndarray, orders) -> np.ndarray:
    out = v.copy()
    for c, n in enumerate(orders):
        if n:
            out[..., c] %= n
    return out


def special_choices(A: FgAbelianGroup) -> list:
    """``s = 0`` and, when ``A`` has 2-torsion, the first element of order 2."""
    out = [A.zero()]
    for x in A.elements():
        if not x.is_zero() and (2 * x).is_zero():
            out.append(x)
            break
    return out


def verify_antisymmetry(bound: int = 32) -> LemmaReport:
    """``Y[a,b,c] + Y[b,a,c] = 0`` for all ``a, b, c`` in every ``A`` with ``|A| <= bound``."""
    rep = LemmaReport("antisymmetry")
    t0 = time.perf_counter()
    for A in finite_groups(bound):
        if A.rank == 0:
            continue
        E = np.array([x.coeffs for x in A.elements()], dtype=np.int64)
        for s in special_choices(A):
            struct = y_group(SpecialPair(A, s))
            if struct.group.rank == 0:
                rep.cases += len(E) ** 3
                continue
            T = _form_tensor(struct)
            S = T + T.transpose(1, 0, 2, 3)
            vals = np.einsum("ai,bj,ck,ijkm->abcm", E, E, E, S, optimize=True)
            vals = _reduce_rows(vals, struct.group.orders)
            rep.cases += len(E) ** 3
            if vals.any():
                a, b, c = map(int, np.argwhere(vals.any(axis=-1))[0])
                rep.fail(f"A = {A.orders}, s = {s.coeffs}: Y[a,b,c] + Y[b,a,c] != 0 at {E[a]}, {E[b]}, {E[c]}")
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_slide(bound: int = 32) -> LemmaReport:
    """``Y[a,a,b] = Y[s,a,b]`` for all ``a, b`` and every special element ``s``."""
    rep = LemmaReport("slide")
    t0 = time.perf_counter()
    for A in finite_groups(bound):
        if A.rank == 0:
            continue
        E = np.array([x.coeffs for x in A.elements()], dtype=np.int64)
        for s in [x for x in A.elements() if (2 * x).is_zero()]:
            struct = y_group(SpecialPair(A, s))
            rep.cases += len(E) ** 2
            if struct.group.rank == 0:
                continue
            T = _form_tensor(struct)
            sv = np.array(s.coeffs, dtype=np.int64)
            lhs = np.einsum("ai,aj,bk,ijkm->abm", E, E, E, T, optimize=True)
            rhs = np.einsum("i,aj,bk,ijkm->abm", sv, E, E, T, optimize=True)
            if _reduce_rows(lhs - rhs, struct.group.orders).any():
                rep.fail(f"A = {A.orders}, s = {s.coeffs}: slide relation fails")
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# The square and d³
# ---------------------------------------------------------------------------

SQUARE_SHAPES = ((), (2,), (0, 0, 0), (2, 4), (2, 0))


def verify_square(cases: int = 200, seed: int = 0, shapes=SQUARE_SHAPES, max_terms: int = 4) -> LemmaReport:
    """``E(r, S(r, X), id, 0) = N(W(X))`` on random records and random ``X``."""
    from .sampling import random_record, random_yterm
    from .surgery import check_square

    rep = LemmaReport("square")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for orders in shapes:
        H = FgAbelianGroup(orders)
        space = SpinSpace(H)
        for _ in range(cases):
            r = random_record(rng, H)
            terms = [random_yterm(rng, space) for _ in range(rng.randint(1, max_terms))]
            rep.cases += 1
            if not check_square(r, terms):
                rep.fail(f"H = {orders}: square fails for {terms}")
    rep.seconds = time.perf_counter() - t0
    return rep


def _affine_functions(space: SpinSpace) -> list[AffineFn]:
    return [AffineFn(space, c, s) for c in (0, 1) for s in itertools.product((0, 1), repeat=space.dim)]


def _d3_tensor(values: np.ndarray) -> np.ndarray:
    """``D[σ, a, b, c] = Σ_ε F[σ ^ ε1 a ^ ε2 b ^ ε3 c]`` for a value table indexed by bit-encoded points."""
    N = len(values)
    r = np.arange(N)
    s, a, b, c = np.ix_(r, r, r, r)
    total = np.zeros((N, N, N, N), dtype=np.int64)
    for e1, e2, e3 in itertools.product((0, 1), repeat=3):
        total += values[s ^ (e1 * a) ^ (e2 * b) ^ (e3 * c)]
    return total % 2


def verify_d3(max_dim: int = 4, samples: int = 64, seed: int = 0) -> LemmaReport:
    """Base-point independence, trilinearity, alternation and ``d³(f1 f2 f3) = κf1∧κf2∧κf3``.

    Product identity: every triple of affine functions.  Structural
    properties: every cubic function for ``d <= 3`` and ``samples`` random
    ones above, each checked at every base point and argument triple.
    """
    rep = LemmaReport("d3")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for d in range(max_dim + 1):
        space = SpinSpace(FgAbelianGroup([2] * d))
        pts = list(space.points())
        code = {p: sum(bit << (d - 1 - k) for k, bit in enumerate(p)) for p in pts}
        affine = _affine_functions(space)
        for f1, f2, f3 in itertools.product(affine, repeat=3):
            rep.cases += 1
            if d3(cubic_product(f1, f2, f3)) != wedge(kappa(f1), kappa(f2), kappa(f3)):
                rep.fail(f"d = {d}: d³(f1f2f3) != κ∧κ∧κ for {f1}, {f2}, {f3}")
        m = len(space.monomials)
        if d <= 3:
            funcs = itertools.product((0, 1), repeat=m)
        else:
            funcs = (tuple(rng.randrange(2) for _ in range(m)) for _ in range(samples))
        N = len(pts)
        r = np.arange(N)
        for coeffs in funcs:
            f = CubicFn.from_vector(space, coeffs)
            values = np.zeros(N, dtype=np.int64)
            for p in pts:
                values[code[p]] = f(p)
            D = _d3_tensor(values)
            rep.cases += D.size
            if (D != D[0][None]).any():
                rep.fail(f"d = {d}: d³ of {sorted(f.monos)} depends on the base point")
            D0 = D[0]
            if (D0 != D0.transpose(1, 0, 2)).any() or (D0 != D0.transpose(0, 2, 1)).any():
                rep.fail(f"d = {d}: d³ of {sorted(f.monos)} is not symmetric")
            if D0[r, r, :].any() or D0[:, r, r].any():
                rep.fail(f"d = {d}: d³ of {sorted(f.monos)} does not vanish on repeated arguments")
            a, a2 = np.ix_(r, r)
            lhs = D0[a ^ a2]  # D0[a ^ a', b, c]
            rhs = (D0[:, None] + D0[None, :]) % 2
            if (lhs != rhs).any():
                rep.fail(f"d = {d}: d³ of {sorted(f.monos)} is not additive")
            for _ in range(4):
                y1, y2, y3, sg = (rng.choice(pts) for _ in range(4))
                if d3_form(f, y1, y2, y3, sg) != D[code[sg], code[y1], code[y2], code[y3]]:
                    rep.fail(f"d = {d}: table and direct evaluation of d³ disagree")
    rep.seconds = time.perf_counter() - t0
    return rep


LEMMAS = {
    "trivectors": verify_trivectors,
    "cubic": verify_cubic,
    "tri": verify_tri,
    "square": verify_square,
}

"""Deciders for Y1- and Y2-equivalence of invariant records, with certificates.

A certificate is an isomorphism ``ψ : H -> H'`` together with the spin data
pinning the bijection ``Ψ : S' -> S``:

* plain mode: an offset ``t`` with ``Ψ(σ0' + y') = σ0 + t + ψ^(2)(y')``;
* spin mode: the chosen spin structures ``σ, σ'`` with ``Ψ(σ' + y') = σ + ψ^(2)(y')``.
"""
from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .fgab import Homomorphism, dual_group, dual_map, enumerate_isomorphisms
from .invariants import InvariantRecord, dual_triples, quad_value, spin_map
from .spinspace import Spin


class InfiniteSearchSpace(RuntimeError):
    """``H`` is infinite and no supplied candidate passed; the answer is unknown."""


class IncompatibleModuli(ValueError):
    """The two records store cup tables for different modulus sets."""


@dataclass(frozen=True)
class Certificate:
    mode: str
    psi: Homomorphism
    offset: Spin = ()
    sigma: Spin | None = None
    sigma2: Spin | None = None
    moduli: tuple[int, ...] = ()
    conditions: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "psi": [list(r) for r in self.psi.matrix],
            "moduli": list(self.moduli),
            "conditions": list(self.conditions),
        }
        if self.sigma is None:
            out["offset"] = "".join(map(str, self.offset))
        else:
            out["sigma"] = "".join(map(str, self.sigma))
            out["sigma_other"] = "".join(map(str, self.sigma2))
        return out


@dataclass
class Decision:
    """Outcome of a decider: a certificate, a refutation reason, or unknown."""

    certificate: Certificate | None
    reason: str = ""
    unknown: bool = False
    moduli: tuple[int, ...] = field(default=())

    @property
    def equivalent(self) -> bool:
        return self.certificate is not None


# ---------------------------------------------------------------------------
# Conditions
# ---------------------------------------------------------------------------

def _check_psi(r: InvariantRecord, r2: InvariantRecord, psi: Homomorphism):
    if psi.source != r.group or psi.target != r2.group:
        raise ValueError("ψ does not map the first homology to the second")
    if not psi.is_isomorphism():
        raise ValueError("ψ is not an isomorphism")


def _common_moduli(r: InvariantRecord, r2: InvariantRecord) -> tuple[int, ...]:
    if r.moduli != r2.moduli:
        raise IncompatibleModuli(f"moduli {r.moduli} vs {r2.moduli}")
    return r.moduli


def linking_preserved(r: InvariantRecord, r2: InvariantRecord, psi: Homomorphism) -> bool:
    """``λ'(ψx, ψy) = λ(x, y)`` on torsion generators (hence everywhere)."""
    tors = r.group.torsion_indices
    H = r.group
    for i, j in itertools.combinations_with_replacement(tors, 2):
        x, y = H.gen(i), H.gen(j)
        if r2.linking(psi(x), psi(y)) != r.linking(x, y):
            return False
    return True


def quadratic_preserved(r: InvariantRecord, sigma: Spin, r2: InvariantRecord, sigma2: Spin, psi: Homomorphism) -> bool:
    """``q'_{σ'}(ψx) = q_σ(x)`` for all torsion ``x``.

    Both sides are quadratic functions, so it is enough to compare them on
    the torsion generators and compare their polarizations (the linking
    pairings) on pairs of generators.
    """
    q, q2 = r.quad(sigma), r2.quad(sigma2)
    H = r.group
    for i in H.torsion_indices:
        x = H.gen(i)
        if quad_value(q2, psi(x)) != quad_value(q, x):
            return False
    return linking_preserved(r, r2, psi)


def quadratic_preserved_exhaustive(r: InvariantRecord, sigma: Spin, r2: InvariantRecord, sigma2: Spin, psi: Homomorphism) -> bool:
    q, q2 = r.quad(sigma), r2.quad(sigma2)
    return all(quad_value(q2, psi(x)) == quad_value(q, x) for x in r.group.torsion_elements())


def cup_preserved(r: InvariantRecord, r2: InvariantRecord, psi: Homomorphism, moduli: Sequence[int]) -> bool:
    """``u'^(n)(y1', y2', y3') = u^(n)(ψ^(n) y1', ψ^(n) y2', ψ^(n) y3')`` on dual-basis triples of ``H'``."""
    for n in moduli:
        back = dual_map(psi, n)
        dual2 = dual_group(r2.group, n)
        for t in dual_triples(r2.group, n):
            ys = [back(dual2.gen(dual2.position(i))) for i in t]
            if r2.cup_entry(n, t) != r.cup_value(n, *ys):
                return False
    return True


def rochlin_preserved(r: InvariantRecord, r2: InvariantRecord, Psi) -> bool:
    return all(r2.rochlin[s2] == r.rochlin[Psi(s2)] for s2 in r2.spin.points())


def check_y1_spin(r: InvariantRecord, sigma: Spin, r2: InvariantRecord, sigma2: Spin, psi: Homomorphism) -> bool:
    _check_psi(r, r2, psi)
    return quadratic_preserved(r, tuple(sigma), r2, tuple(sigma2), psi)


def check_y2_spin(r: InvariantRecord, sigma: Spin, r2: InvariantRecord, sigma2: Spin, psi: Homomorphism) -> bool:
    _check_psi(r, r2, psi)
    moduli = _common_moduli(r, r2)
    sigma, sigma2 = tuple(sigma), tuple(sigma2)
    if not quadratic_preserved(r, sigma, r2, sigma2, psi):
        return False
    if not cup_preserved(r, r2, psi, moduli):
        return False
    psi2 = dual_map(psi, 2)

    def Psi(s2: Spin) -> Spin:
        y2 = tuple((a - b) % 2 for a, b in zip(s2, sigma2))
        img = psi2(psi2.source.element(y2)).coeffs
        return tuple((a + b) % 2 for a, b in zip(img, sigma))

    return rochlin_preserved(r, r2, Psi)


def check_y2_plain(r: InvariantRecord, r2: InvariantRecord, psi: Homomorphism, offset: Spin) -> bool:
    _check_psi(r, r2, psi)
    moduli = _common_moduli(r, r2)
    if not linking_preserved(r, r2, psi) or not cup_preserved(r, r2, psi, moduli):
        return False
    return _offset_passes(r, r2, psi, spin_map(psi, offset))


def _offset_passes(r: InvariantRecord, r2: InvariantRecord, psi: Homomorphism, Psi) -> bool:
    if not rochlin_preserved(r, r2, Psi):
        return False
    H = r.group
    tors = [H.gen(i) for i in H.torsion_indices]
    images = [psi(x) for x in tors]
    for s2 in r2.spin.points():
        q, q2 = r.quad(Psi(s2)), r2.quad(s2)
        for x, y in zip(tors, images):
            if quad_value(q, x) != quad_value(q2, y):
                return False
    return True


def replay(cert: Certificate, r: InvariantRecord, r2: InvariantRecord) -> bool:
    """Re-verify a certificate against both records."""
    if cert.mode == "y2":
        return check_y2_plain(r, r2, cert.psi, cert.offset)
    if cert.mode == "y2-spin":
        return check_y2_spin(r, cert.sigma, r2, cert.sigma2, cert.psi)
    if cert.mode == "y1-spin":
        return check_y1_spin(r, cert.sigma, r2, cert.sigma2, cert.psi)
    raise ValueError(f"unknown mode {cert.mode!r}")


def invert_certificate(cert: Certificate) -> Certificate:
    """The certificate for the reversed pair ``(r', r)``."""
    inv = cert.psi.inverse()
    if cert.sigma is not None:
        return Certificate(cert.mode, inv, (), cert.sigma2, cert.sigma, cert.moduli, cert.conditions)
    # Ψ^{-1}(σ0 + y) = σ0' + (ψ^{-1})^(2)(t) + (ψ^{-1})^(2)(y), signs vanish mod 2
    offset = spin_map(inv, (0,) * dual_group(inv.source, 2).group.rank)(cert.offset)
    return Certificate(cert.mode, inv, offset, None, None, cert.moduli, cert.conditions)


# ---------------------------------------------------------------------------
# Screens and search
# ---------------------------------------------------------------------------

def screen(r: InvariantRecord, r2: InvariantRecord, mode: str) -> str | None:
    """A reason the records cannot be equivalent, found without any search."""
    if not r.group.is_isomorphic_to(r2.group):
        return "homology groups not isomorphic"
    if mode in ("y2", "y2-spin"):
        if r.moduli == r2.moduli:
            for n in r.moduli:
                if bool(r.cup[n]) != bool(r2.cup[n]):
                    return f"cup profile mismatch at n={n}"
        if Counter(r.rochlin.values()) != Counter(r2.rochlin.values()):
            return "Rochlin multiset mismatch"
    return None


def candidate_isomorphisms(r: InvariantRecord, r2: InvariantRecord, candidates: Iterable[Homomorphism] | None = None) -> Iterator[Homomorphism]:
    """The identity first (when both groups share a basis), then the rest in lexicographic order."""
    if candidates is not None:
        yield from candidates
        return
    identity = None
    if r.group == r2.group:
        identity = Homomorphism.identity(r.group)
        yield identity
    if not (r.group.is_finite and r2.group.is_finite):
        return
    for psi in enumerate_isomorphisms(r.group, r2.group):
        if psi != identity:
            yield psi


def _certificate_for(r: InvariantRecord, r2: InvariantRecord, psi: Homomorphism, mode: str,
                     sigma: Spin | None, sigma2: Spin | None, moduli: tuple[int, ...]) -> Certificate | None:
    if mode == "y1-spin":
        if quadratic_preserved(r, sigma, r2, sigma2, psi):
            return Certificate(mode, psi, (), sigma, sigma2, (), ("a",))
        return None
    if mode == "y2-spin":
        if check_y2_spin(r, sigma, r2, sigma2, psi):
            return Certificate(mode, psi, (), sigma, sigma2, moduli, ("a", "b", "c"))
        return None
    if not linking_preserved(r, r2, psi) or not cup_preserved(r, r2, psi, moduli):
        return None
    for offset in r.spin.points():
        if _offset_passes(r, r2, psi, spin_map(psi, offset)):
            return Certificate(mode, psi, offset, None, None, moduli, ("a", "b", "c", "d"))
    return None


def _worker(args):
    r, r2, psi, mode, sigma, sigma2, moduli = args
    return _certificate_for(r, r2, psi, mode, sigma, sigma2, moduli)


def worker_count() -> int:
    env = os.environ.get("CLASPER_THREADS")
    if env:
        return max(1, int(env))
    return 1


def decide(r: InvariantRecord, r2: InvariantRecord, mode: str = "y2", sigma: Spin | None = None,
           sigma2: Spin | None = None, candidates: Iterable[Homomorphism] | None = None,
           workers: int | None = None) -> Decision:
    """Search for a certificate in candidate order; the first one found wins.

    ``mode`` is ``"y2"`` (plain), ``"y2-spin"`` or ``"y1-spin"``.  The spin
    modes compare the chosen spin structures ``sigma, sigma2`` (base points
    by default).
    """
    if mode not in ("y2", "y2-spin", "y1-spin"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "y2":
        sigma = tuple(sigma) if sigma is not None else r.spin.base_point()
        sigma2 = tuple(sigma2) if sigma2 is not None else r2.spin.base_point()
    if not r.group.is_isomorphic_to(r2.group):
        return Decision(None, "homology groups not isomorphic")
    moduli = _common_moduli(r, r2) if mode != "y1-spin" else ()
    reason = screen(r, r2, mode)
    if reason:
        return Decision(None, reason, moduli=moduli)
    finite = r.group.is_finite
    cands = candidate_isomorphisms(r, r2, candidates)
    workers = worker_count() if workers is None else workers
    if workers > 1:
        cands = list(cands)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_worker, [(r, r2, psi, mode, sigma, sigma2, moduli) for psi in cands], chunksize=16)
            for cert in results:
                if cert is not None:
                    return Decision(cert, moduli=moduli)
    else:
        for psi in cands:
            cert = _certificate_for(r, r2, psi, mode, sigma, sigma2, moduli)
            if cert is not None:
                return Decision(cert, moduli=moduli)
    if not finite and candidates is None:
        raise InfiniteSearchSpace("homology has a free part and no candidate isomorphism passed")
    return Decision(None, "no isomorphism satisfies the conditions", moduli=moduli)


def decide_y2(r: InvariantRecord, r2: InvariantRecord, spin: bool = False, **kw) -> Certificate | None:
    return decide(r, r2, "y2-spin" if spin else "y2", **kw).certificate


def decide_y1_spin(r: InvariantRecord, r2: InvariantRecord, **kw) -> Certificate | None:
    return decide(r, r2, "y1-spin", **kw).certificate

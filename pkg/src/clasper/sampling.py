"""Random valid records, pull-back elements and Y-terms for experiments and tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .fgab import FgAbelianGroup, GroupElement
from .invariants import InvariantRecord, LinkingPairing, default_moduli
from .spinspace import PElement, SpinSpace, pullback_pair
from .surgery import FormalYGraph, surgery_S
from .ygraph import Y, YTerm


@dataclass
class SamplingConfig:
    coeff_range: int = 5
    surgeries: int = 3
    linking_attempts: int = 20


def random_element(rng: random.Random, H: FgAbelianGroup, coeff_range: int = 5) -> GroupElement:
    return H.element([rng.randrange(n) if n else rng.randint(-coeff_range, coeff_range) for n in H.orders])


def random_linking(rng: random.Random, H: FgAbelianGroup, attempts: int = 20) -> LinkingPairing:
    """A random nondegenerate pairing; falls back to a diagonal one with unit entries."""
    tors = H.torsion_indices
    orders = [H.orders[i] for i in tors]
    t = len(tors)
    for _ in range(attempts):
        m = [[Fraction(0)] * t for _ in range(t)]
        for a in range(t):
            for b in range(a, t):
                g = gcd(orders[a], orders[b])
                m[a][b] = m[b][a] = Fraction(rng.randrange(g), g)
        lam = LinkingPairing(H, m)
        if not lam.violations():
            return lam
    m = [[Fraction(0)] * t for _ in range(t)]
    for a, n in enumerate(orders):
        units = [u for u in range(1, n) if gcd(u, n) == 1]
        m[a][a] = Fraction(rng.choice(units), n)
    return LinkingPairing(H, m)


def random_quadratic(rng: random.Random, lam: LinkingPairing) -> tuple[Fraction, ...]:
    """Generator values solving ``n q + C(n,2) λ_ii = 0``: ``q = (2k - (n-1)a) / 2n``."""
    vals = []
    for a, i in enumerate(lam.torsion):
        n = lam.group.orders[i]
        num = lam.matrix[a][a] * n
        assert num.denominator == 1
        k = rng.randrange(n)
        vals.append(Fraction(2 * k - (n - 1) * int(num), 2 * n))
    return tuple(vals)


def random_pelement(rng: random.Random, space: SpinSpace, coeff_range: int = 5) -> PElement:
    x = random_element(rng, space.homology, coeff_range)
    return PElement(x, space.e(x, rng.randrange(2)))


def random_graph(rng: random.Random, space: SpinSpace, coeff_range: int = 5) -> FormalYGraph:
    return FormalYGraph([random_pelement(rng, space, coeff_range) for _ in range(3)], rng.choice((1, -1)))


def random_yterm(rng: random.Random, space: SpinSpace, coeff_range: int = 5) -> YTerm:
    P = pullback_pair(space).group
    cols = [random_pelement(rng, space, coeff_range).to_coords() for _ in range(3)]
    assert all(c.group == P for c in cols)
    return Y(*cols, sign=rng.choice((1, -1)))


def random_record(rng: random.Random, H: FgAbelianGroup, config: SamplingConfig | None = None) -> InvariantRecord:
    """A valid record: cup tables come from random surgeries on the zero tables."""
    config = config or SamplingConfig()
    spin = SpinSpace(H)
    lam = random_linking(rng, H, config.linking_attempts)
    quadratic = {s: random_quadratic(rng, lam) for s in spin.points()}
    rochlin = {s: rng.randrange(16) for s in spin.points()}
    r = InvariantRecord(H, lam, quadratic, {}, rochlin, default_moduli(H))
    graphs = [random_graph(rng, spin, config.coeff_range) for _ in range(config.surgeries)]
    return surgery_S(r, graphs)


def null_graphs(rng: random.Random, space: SpinSpace, count: int, coeff_range: int = 5) -> list[FormalYGraph]:
    """Graph lists whose total effect on the invariants is zero.

    Mixes graphs with a zero leaf (null-homologous, 0-framed), pairs
    ``G, -G``, and the slide relation ``Y[a,a,b] - Y[s,a,b]``.
    """
    out: list[FormalYGraph] = []
    zero = PElement.zero(space)
    s = PElement(space.homology.zero(), space.one())
    while len(out) < count:
        kind = rng.randrange(3)
        if kind == 0:
            leaves = [random_pelement(rng, space, coeff_range) for _ in range(2)]
            leaves.insert(rng.randrange(3), zero)
            out.append(FormalYGraph(leaves, rng.choice((1, -1))))
        elif kind == 1:
            g = random_graph(rng, space, coeff_range)
            out += [g, FormalYGraph(g.leaves, -g.sign)]
        else:
            a = random_pelement(rng, space, coeff_range)
            b = random_pelement(rng, space, coeff_range)
            out += [FormalYGraph([a, a, b], 1), FormalYGraph([s, a, b], -1)]
    rng.shuffle(out)
    return out

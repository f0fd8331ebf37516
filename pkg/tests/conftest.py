import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from clasper.fgab import FgAbelianGroup, Homomorphism, enumerate_isomorphisms


def det(m):
    """Exact determinant by fraction-free elimination."""
    a = [list(map(Fraction, r)) for r in m]
    n = len(a)
    sign = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return out


E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]


def e8_matrix():
    m = [[0] * 8 for _ in range(8)]
    for i in range(8):
        m[i][i] = 2
    for i, j in E8_EDGES:
        m[i][j] = m[j][i] = -1
    return m


def signature(m):
    """Signature of a symmetric rational matrix by congruence diagonalization."""
    a = [[Fraction(v) for v in row] for row in m]
    n = len(a)
    pos = neg = 0
    for c in range(n):
        if a[c][c] == 0:
            k = next((r for r in range(c + 1, n) if a[r][c]), None)
            if k is None:
                continue
            # add row/column k to row/column c to create a nonzero pivot
            for j in range(n):
                a[c][j] += a[k][j]
            for j in range(n):
                a[j][c] += a[j][k]
            if a[c][c] == 0:
                raise ValueError("pivot repair failed")
        p = a[c][c]
        pos += p > 0
        neg += p < 0
        for r in range(c + 1, n):
            f = a[r][c] / p
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
            for j in range(c, n):
                a[j][r] = a[r][j]
    return pos - neg


@st.composite
def groups(draw, max_rank=3, orders=(0, 2, 3, 4), max_free=1, finite=False):
    choices = [n for n in orders if not (finite and n == 0)]
    o = draw(st.lists(st.sampled_from(choices), max_size=max_rank))
    while o.count(0) > max_free:
        o.remove(0)
    return FgAbelianGroup(o)


@st.composite
def elements(draw, group, coeff=6):
    return group.element([draw(st.integers(0, n - 1)) if n else draw(st.integers(-coeff, coeff)) for n in group.orders])


@st.composite
def group_and_elements(draw, count, **kw):
    H = draw(groups(**kw))
    return H, [draw(elements(H)) for _ in range(count)]


def random_homomorphism(rng, A, B):
    """A random homomorphism between small groups, by rejection on generator images."""
    images = []
    for n in A.orders:
        while True:
            x = B.element([rng.randrange(m) if m else rng.randint(-3, 3) for m in B.orders])
            if n == 0 or (n * x).is_zero():
                break
        images.append(x)
    return Homomorphism.from_images(A, B, images)


def random_automorphism(rng, H):
    """A random automorphism; unitriangular shears when ``H`` has a free part."""
    if H.is_finite:
        isos = list(itertools.islice(enumerate_isomorphisms(H, H), 2000))
        return rng.choice(isos)
    psi = Homomorphism.identity(H)
    free = H.free_indices
    for _ in range(3):
        images = [H.gen(i) for i in range(H.rank)]
        i = rng.choice(free)
        others = [j for j in range(H.rank) if j != i]
        if others:
            j = rng.choice(others)
            images[i] = images[i] + rng.randint(-2, 2) * H.gen(j)
        step = Homomorphism.from_images(H, H, images)
        psi = step.compose(psi)
    return psi


@pytest.fixture
def rng():
    return random.Random(12345)

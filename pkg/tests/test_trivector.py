import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from clasper.fgab import FgAbelianGroup, Homomorphism, InfiniteGroup, dual_group, tensor_mod
from clasper.lemmas import finite_groups, trivector_detection
from clasper.trivector import (
    Trivector,
    TrivectorSpace,
    basis_coefficient,
    det3,
    detect_nonzero,
    dual_basis_value,
    exterior_cube_hom,
    pairing_decomposable,
    pairing_n,
    wedge,
)

from conftest import elements, random_homomorphism


def test_wedge_examples():
    H = FgAbelianGroup([0, 0, 0])
    e1, e2, e3 = H.gens()
    assert wedge(e1, e2, e3).coeffs == {(0, 1, 2): 1}
    assert wedge(e1, e1, e2).is_zero()
    assert wedge(e1 + e2, e2, e3) == wedge(e1, e2, e3)
    assert wedge(e2, e1, e3) == -wedge(e1, e2, e3)


def test_wedge_rejects_mixed_groups():
    with pytest.raises(ValueError):
        wedge(FgAbelianGroup([2]).gen(0), FgAbelianGroup([3]).gen(0), FgAbelianGroup([2]).gen(0))


def test_trivector_space_orders():
    space = TrivectorSpace(FgAbelianGroup([2, 4, 0, 3]))
    assert space.triples == ((0, 1, 2),)
    assert space.order((0, 1, 2)) == 2
    assert space.group.orders == (2,)


def _y(dual, *positions):
    return Trivector(TrivectorSpace(dual.group), {tuple(positions): 1})


def test_pairing_examples():
    H = FgAbelianGroup([2, 2, 2])
    D = dual_group(H, 2)
    X = wedge(*H.gens())
    assert pairing_n(D, _y(D, 0, 1, 2), X) == 1
    H = FgAbelianGroup([2, 2, 4])
    D = dual_group(H, 4)
    X = wedge(*H.gens())
    # det diag(2, 2, 1) = 4 = 0 in Z_4
    assert pairing_n(D, _y(D, 0, 1, 2), X) == 0
    assert pairing_n(D, _y(D, 0, 1, 2), TrivectorSpace(H).zero()) == 0


def test_pairing_matches_determinant_of_pairings():
    rng = random.Random(3)
    for orders in [(2, 4, 0), (0, 0, 0, 0), (3, 6, 0, 2), (4, 4, 4)]:
        H = FgAbelianGroup(orders)
        for n in [0, 2, 3, 4, 12]:
            D = dual_group(H, n)
            if D.group.rank < 3:
                continue
            for _ in range(30):
                ys = [D.group.element([rng.randint(-4, 4) for _ in D.orders]) for _ in range(3)]
                xs = [H.element([rng.randint(-4, 4) for _ in H.orders]) for _ in range(3)]
                Y = wedge(*ys)
                X = wedge(*xs)
                assert pairing_n(D, Y, X) == pairing_decomposable(D, ys, xs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 4, 0), (0, 0, 0), (2, 2, 2, 2), (3, 0, 6)]), st.sampled_from([0, 2, 4, 6]), st.data())
def test_pairing_linear_and_alternating(orders, n, data):
    H = FgAbelianGroup(orders)
    D = dual_group(H, n)
    if D.group.rank < 3:
        return
    ys = [data.draw(elements(D.group)) for _ in range(3)]
    xs = [data.draw(elements(H)) for _ in range(4)]
    red = (lambda v: v % n) if n else (lambda v: v)
    X1, X2 = wedge(xs[0], xs[1], xs[2]), wedge(xs[3], xs[1], xs[2])
    Y = wedge(*ys)
    assert pairing_n(D, Y, X1 + X2) == red(pairing_n(D, Y, X1) + pairing_n(D, Y, X2))
    swapped = wedge(ys[1], ys[0], ys[2])
    assert pairing_n(D, swapped, X1) == red(-pairing_n(D, Y, X1))


def test_basis_coefficient_examples():
    assert basis_coefficient(4, 2, 2, 4) == 2
    assert basis_coefficient(2, 2, 2, 2) == 1
    for m in range(1, 25):
        # m^2 gcd(m,m,m,m) / gcd(m,m)^3 = m^3 / m^3
        assert basis_coefficient(m, m, m, m) == 1
    with pytest.raises(ValueError):
        basis_coefficient(0, 2, 2, 2)


def test_basis_coefficient_consistency():
    """coefficient * m / gcd(m, n_i, n_j, n_k) equals the pairing of the basis pair, mod m."""
    for m in range(1, 25):
        for ni, nj, nk in itertools.product([0, 2, 3, 4, 6, 8, 12], repeat=3):
            H = FgAbelianGroup([ni, nj, nk])
            D = dual_group(H, m)
            X = wedge(*H.gens())
            if m == 1:
                continue
            value = dual_basis_value(D, (0, 1, 2), X)
            c = basis_coefficient(m, ni, nj, nk)
            assert (c * (m // gcd(m, ni, nj, nk))) % m == value, (m, ni, nj, nk)


def test_detect_nonzero_examples():
    H = FgAbelianGroup([2, 2, 2])
    assert detect_nonzero(TrivectorSpace(H).zero()) is None
    assert detect_nonzero(wedge(*H.gens())) == 2
    H = FgAbelianGroup([2, 2, 4])
    assert detect_nonzero(wedge(*H.gens())) == 2
    with pytest.raises(InfiniteGroup):
        detect_nonzero(wedge(*FgAbelianGroup([0, 0, 0]).gens()))


def test_detection_exhaustive_small():
    for H in finite_groups(32):
        total, bad = trivector_detection(H)
        assert bad == 0, H
        space = TrivectorSpace(H)
        if 0 < len(space.triples) and total <= 64:
            for X in space.elements():
                assert (detect_nonzero(X) is None) == X.is_zero()


def test_exterior_cube_examples():
    H = FgAbelianGroup([0, 0, 0])
    X = wedge(*H.gens())
    assert exterior_cube_hom(Homomorphism.identity(H))(X) == X
    H2, red = tensor_mod(H, 2)
    assert exterior_cube_hom(red)(X) == wedge(*H2.gens())
    swap = Homomorphism(H, H, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert exterior_cube_hom(swap)(X) == -X


def test_exterior_cube_functorial():
    rng = random.Random(7)
    shapes = [(2, 4, 0), (0, 0, 0), (2, 2, 2), (4, 4), (6, 2, 0, 3)]
    for _ in range(60):
        A, B, C = (FgAbelianGroup(rng.choice(shapes)) for _ in range(3))
        f = random_homomorphism(rng, A, B)
        g = random_homomorphism(rng, B, C)
        F, G, GF = exterior_cube_hom(f), exterior_cube_hom(g), exterior_cube_hom(g.compose(f))
        for t in TrivectorSpace(A).triples:
            X = TrivectorSpace(A).basis(t)
            assert GF(X) == G(F(X))


def test_det3():
    assert det3([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det3([[2, 0, 0], [0, 2, 0], [0, 0, 1]]) == 4
    assert det3([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0

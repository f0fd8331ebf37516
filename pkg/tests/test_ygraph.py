import itertools
import random

import pytest

from clasper.fgab import FgAbelianGroup, Homomorphism, tensor_mod
from clasper.lemmas import verify_antisymmetry, verify_slide
from clasper.trivector import TrivectorSpace, wedge
from clasper.ygraph import (
    SpecialElementMismatch,
    SpecialPair,
    Y,
    canonical_rotation,
    normal_form,
    y_group,
    y_of_morphism,
)

from conftest import random_homomorphism


def pair0(orders):
    A = FgAbelianGroup(orders)
    return SpecialPair(A, A.zero())


def test_y_group_examples():
    assert y_group(pair0([0, 0, 0])).group.invariant_factors() == (0,)
    Z2 = FgAbelianGroup([2])
    struct = y_group(SpecialPair(Z2, Z2.gen(0)))
    assert struct.group.invariant_factors() == (2,)
    s = Z2.gen(0)
    assert not normal_form(struct, [Y(s, s, s)]).is_zero()
    assert y_group(pair0([])).group.rank == 0


def test_special_element_must_have_order_two():
    A = FgAbelianGroup([4])
    with pytest.raises(ValueError):
        SpecialPair(A, A.gen(0))
    SpecialPair(A, 2 * A.gen(0))


def test_normal_form_examples():
    struct = y_group(pair0([0, 0, 0]))
    e1, e2, e3 = struct.pair.group.gens()
    assert normal_form(struct, [Y(e1, e1, e2)]).is_zero()
    assert normal_form(struct, [Y(e1 + e2, e2, e3)]) == normal_form(struct, [Y(e1, e2, e3)])
    assert normal_form(struct, [Y(e1, e2, e3), Y(e2, e1, e3)]).is_zero()
    assert normal_form(struct, [Y(e1, e2, e3), Y(e1, e2, e3, -1)]).is_zero()
    # cyclic rotations name the same generator
    assert normal_form(struct, [Y(e2, e3, e1)]) == normal_form(struct, [Y(e1, e2, e3)])


def test_normal_form_rejects_foreign_colours():
    struct = y_group(pair0([2, 2]))
    x = FgAbelianGroup([3]).gen(0)
    with pytest.raises(ValueError):
        normal_form(struct, [Y(x, x, x)])


def test_canonical_rotation():
    assert canonical_rotation((2, 0, 1)) == (0, 1, 2)
    assert canonical_rotation((1, 0, 2)) == (0, 2, 1)


def test_antisymmetry_and_slide_small():
    assert verify_antisymmetry(16).ok
    assert verify_slide(16).ok


def test_random_antisymmetry_with_free_part():
    rng = random.Random(5)
    for orders in [(0, 0, 0), (2, 0), (0, 4, 2), (0, 0, 2, 2)]:
        A = FgAbelianGroup(orders)
        specials = [A.zero()] + [x for x in (A.gen(i) * (n // 2) for i, n in enumerate(orders) if n % 2 == 0 and n)]
        for s in specials:
            struct = y_group(SpecialPair(A, s))
            for _ in range(40):
                a, b, c = (A.element([rng.randint(-5, 5) for _ in orders]) for _ in range(3))
                assert normal_form(struct, [Y(a, b, c), Y(b, a, c)]).is_zero()
                assert normal_form(struct, [Y(a, a, b), Y(s, a, b, -1)]).is_zero()


def wedge_map(struct):
    """``Y[x1, x2, x3] -> x1 ∧ x2 ∧ x3`` on ``Y(H, 0)`` as a homomorphism."""
    H = struct.pair.group
    space = TrivectorSpace(H)
    gen_images = [wedge(*(H.gen(i) for i in g)).to_vector() for g in struct.generators]
    images = []
    for k in range(struct.group.rank):
        out = space.group.zero()
        for g, c in enumerate(struct.lift(struct.group.gen(k))):
            out = out + c * gen_images[g]
        images.append(out)
    return Homomorphism.from_images(struct.group, space.group, images)


def test_y_of_trivial_special_is_exterior_cube():
    for r in range(5):
        for orders in itertools.combinations_with_replacement((0, 2, 3, 4), r):
            if 0 in orders and r > 3:
                continue
            struct = y_group(pair0(orders))
            space = TrivectorSpace(struct.pair.group)
            assert struct.group.invariant_factors() == space.group.invariant_factors(), orders
            assert wedge_map(struct).is_isomorphism(), orders


def test_y_of_morphism_examples():
    P = pair0([0, 0, 0])
    ident = y_of_morphism(Homomorphism.identity(P.group), P, P)
    assert ident == Homomorphism.identity(y_group(P).group)
    H2, red = tensor_mod(P.group, 2)
    P2 = SpecialPair(H2, H2.zero())
    f = y_of_morphism(red, P, P2)
    e = P.group.gens()
    x = normal_form(y_group(P), [Y(*e)])
    assert f(x) == normal_form(y_group(P2), [Y(*H2.gens())])
    assert f(y_group(P).group.zero()).is_zero()


def test_y_of_morphism_checks_special_element():
    A = FgAbelianGroup([2])
    src = SpecialPair(A, A.gen(0))
    tgt = SpecialPair(A, A.zero())
    with pytest.raises(SpecialElementMismatch):
        y_of_morphism(Homomorphism.identity(A), src, tgt)


def test_y_functorial():
    rng = random.Random(11)
    shapes = [(2, 4), (0, 0, 0), (2, 2, 2), (4, 0), (3, 6)]
    for _ in range(30):
        A, B, C = (FgAbelianGroup(rng.choice(shapes)) for _ in range(3))
        f = random_homomorphism(rng, A, B)
        g = random_homomorphism(rng, B, C)
        pa, pb, pc = (SpecialPair(G, G.zero()) for G in (A, B, C))
        lhs = y_of_morphism(g.compose(f), pa, pc)
        rhs = y_of_morphism(g, pb, pc).compose(y_of_morphism(f, pa, pb))
        assert lhs == rhs


def test_y_functorial_with_special_elements():
    # A = Z2 + Z4 with s = (1, 2); the maps fix s
    A = FgAbelianGroup([2, 4])
    s = A.element([1, 2])
    P = SpecialPair(A, s)
    f = Homomorphism.from_images(A, A, [A.element([1, 0]), A.element([1, 1])])
    g = Homomorphism.from_images(A, A, [A.element([1, 0]), A.element([0, 3])])
    assert f(s) == s and g(s) == s
    lhs = y_of_morphism(g.compose(f), P, P)
    rhs = y_of_morphism(g, P, P).compose(y_of_morphism(f, P, P))
    assert lhs == rhs

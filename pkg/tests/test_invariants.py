import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from clasper.fgab import FgAbelianGroup, Homomorphism
from clasper.invariants import (
    BElement,
    InvariantRecord,
    LinkingPairing,
    QuadFn,
    default_moduli,
    quad_value,
    qz,
    shift_base_point,
    transport,
    validate_record,
)
from clasper.lemmas import finite_groups
from clasper.sampling import SamplingConfig, random_graph, random_record
from clasper.surgery import surgery_S

from conftest import random_automorphism


def sphere(R=0):
    H = FgAbelianGroup([])
    return InvariantRecord(H, LinkingPairing(H, []), {(): ()}, {}, {(): R})


def z2_record(lam, q):
    H = FgAbelianGroup([2])
    return InvariantRecord(H, LinkingPairing(H, [[lam]]), {(0,): (q,), (1,): (q,)}, {}, {(0,): 0, (1,): 0})


def kinds(r):
    return {v.constraint for v in validate_record(r)}


def test_qz():
    assert qz(Fraction(5, 4)) == Fraction(1, 4)
    assert qz(Fraction(-1, 3)) == Fraction(2, 3)
    assert qz(1) == 0


def test_validate_examples():
    assert validate_record(sphere()) == []
    assert "degenerate pairing" in kinds(z2_record(0, 0))
    assert validate_record(z2_record(Fraction(1, 2), Fraction(1, 4))) == []


def test_validate_reports_closure_failure():
    assert kinds(z2_record(Fraction(1, 2), 0)) == {"quadratic closure"}


def test_validate_reports_linking_problems():
    H = FgAbelianGroup([2, 4])
    lam = LinkingPairing(H, [[Fraction(1, 2), Fraction(1, 4)], [Fraction(1, 4), Fraction(1, 4)]])
    assert any("not killed" in m for m in lam.violations())
    lam = LinkingPairing(H, [[Fraction(1, 2), 0], [Fraction(1, 2), Fraction(1, 4)]])
    assert any("asymmetric" in m for m in lam.violations())


def test_validate_reports_missing_spin_data():
    H = FgAbelianGroup([0])
    r = InvariantRecord(H, LinkingPairing(H, []), {(0,): ()}, {}, {(0,): 0, (1,): 0})
    assert kinds(r) == {"quadratic"}
    r = InvariantRecord(H, LinkingPairing(H, []), {(0,): (), (1,): ()}, {}, {(0,): 0})
    assert kinds(r) == {"rochlin"}


def free_record(orders, cup, moduli=()):
    H = FgAbelianGroup(orders)
    r = random_record(random.Random(0), H, SamplingConfig(surgeries=0))
    return InvariantRecord(H, r.linking, r.quadratic, cup, r.rochlin, moduli or r.moduli)


def test_validate_cup_constraints():
    assert free_record([0, 0, 0], {0: {(0, 1, 2): 5}, 2: {(0, 1, 2): 1}}).moduli == (0, 2)
    assert validate_record(free_record([0, 0, 0], {0: {(0, 1, 2): 5}, 2: {(0, 1, 2): 1}})) == []
    assert kinds(free_record([0, 0, 0], {0: {(0, 1, 2): 1}})) == {"cup naturality"}
    assert "cup skew" in kinds(free_record([0, 0, 0], {0: {(0, 0, 1): 1}, 2: {(0, 0, 1): 1}}))
    # e0* has order 2 in Hom(H, Z_4), so an entry 1 is not killed
    assert "cup" in kinds(free_record([2, 4, 4], {4: {(0, 1, 2): 1}}))
    assert "cup" in kinds(free_record([], {3: {}}))
    assert "moduli" in kinds(free_record([2], {}, moduli=(2,)))


def test_validate_reports_bad_keys():
    assert "cup" in kinds(free_record([0, 0, 0], {0: {(2, 1, 0): 1}}))


def test_default_moduli():
    assert default_moduli(FgAbelianGroup([])) == (0,)
    assert default_moduli(FgAbelianGroup([0, 0, 0])) == (0, 2)
    assert default_moduli(FgAbelianGroup([2, 12])) == (0, 2, 3, 4, 6, 12)
    assert default_moduli(FgAbelianGroup([3])) == (0, 3)


def test_quad_value_examples():
    lam = LinkingPairing(FgAbelianGroup([2]), [[Fraction(1, 2)]])
    q = QuadFn(lam, [Fraction(1, 4)])
    H = lam.group
    assert q(H.zero()) == 0
    assert q(H.gen(0)) == Fraction(1, 4)
    assert q(2 * H.gen(0)) == 0
    with pytest.raises(ValueError):
        quad_value(QuadFn(LinkingPairing(FgAbelianGroup([0]), []), []), FgAbelianGroup([0]).gen(0))


def test_quad_value_multiples():
    for n in (2, 3, 4, 5, 6, 8):
        H = FgAbelianGroup([n])
        lam = LinkingPairing(H, [[Fraction(1, n)]])
        for qe in [Fraction(k, 2 * n) for k in range(2 * n)]:
            q = QuadFn(lam, [qe])
            if q.violations():
                continue
            total = Fraction(0)
            for k in range(1, 7):
                # pairwise expansion q((k-1)e + e) = q((k-1)e) + q(e) + λ((k-1)e, e)
                total = total + qe + (k - 1) * lam.matrix[0][0]
                assert q(k * H.gen(0)) == qz(total)


def expansion_oracle(q):
    """``q`` on every torsion element by walking generators and adding ``q(e) + λ(x, e)``."""
    lam = q.linking
    H = lam.group
    values = {H.zero(): Fraction(0)}
    frontier = [H.zero()]
    gens = [(H.gen(i), q.values[a]) for a, i in enumerate(lam.torsion)]
    while frontier:
        nxt = []
        for x in frontier:
            for g, qg in gens:
                y = x + g
                if y not in values:
                    values[y] = qz(values[x] + qg + lam(x, g))
                    nxt.append(y)
        frontier = nxt
    return values


def test_quad_value_matches_expansion_oracle():
    rng = random.Random(3)
    checked = 0
    for H in finite_groups(32):
        r = random_record(rng, H, SamplingConfig(surgeries=0))
        for sigma in list(r.quadratic)[:2]:
            q = r.quad(sigma)
            oracle = expansion_oracle(q)
            assert len(oracle) == H.cardinality()
            for x, v in oracle.items():
                assert q(x) == v
            checked += 1
    assert checked > 50


def test_quadratic_polarizes_to_linking():
    rng = random.Random(4)
    for orders in [(2, 4), (3, 3), (2, 2, 2), (4, 0), (8,)]:
        H = FgAbelianGroup(orders)
        r = random_record(rng, H, SamplingConfig(surgeries=0))
        q = r.quad(r.spin.base_point())
        tors = list(H.torsion_elements())
        for x in tors:
            for y in tors:
                assert qz(q(x + y) - q(x) - q(y)) == r.linking(x, y)


def test_random_records_are_valid():
    rng = random.Random(5)
    for orders in [(), (2,), (0, 0, 0), (2, 4), (2, 0), (3, 6, 0), (2, 2, 2)]:
        for _ in range(5):
            assert validate_record(random_record(rng, FgAbelianGroup(orders))) == []


def test_validity_closed_under_surgery():
    rng = random.Random(6)
    for orders in [(2, 4), (0, 0, 0), (2, 2, 2, 0), (4, 4, 2), (6, 3)]:
        H = FgAbelianGroup(orders)
        r = random_record(rng, H)
        for _ in range(10):
            r = surgery_S(r, [random_graph(rng, r.spin) for _ in range(rng.randint(1, 3))])
            assert validate_record(r) == []


def test_record_equality_normalizes():
    H = FgAbelianGroup([0])
    lam = LinkingPairing(H, [])
    a = InvariantRecord(H, lam, {(0,): (), (1,): ()}, {0: {}}, {(0,): 16, (1,): 8})
    b = InvariantRecord(H, lam, {(0,): (), (1,): ()}, {2: {}}, {(0,): 0, (1,): -8})
    assert a == b


def test_cup_entry_is_antisymmetric():
    r = free_record([0, 0, 0], {0: {(0, 1, 2): 5}, 2: {(0, 1, 2): 1}})
    assert r.cup_entry(0, (1, 0, 2)) == -5
    assert r.cup_entry(0, (2, 0, 1)) == 5
    assert r.cup_entry(2, (1, 0, 2)) == 1


def test_shift_base_point_round_trip():
    rng = random.Random(7)
    r = random_record(rng, FgAbelianGroup([2, 0, 4]))
    t = (1, 0, 1)
    s = shift_base_point(r, t)
    assert s.rochlin[(0, 0, 0)] == r.rochlin[t]
    assert shift_base_point(s, t) == r


def test_transport_by_identity_is_identity():
    rng = random.Random(8)
    for orders in [(2, 4), (0, 0, 0), (3,)]:
        r = random_record(rng, FgAbelianGroup(orders))
        psi = Homomorphism.identity(r.group)
        assert transport(r, psi, r.spin.base_point()) == r


def test_transport_keeps_validity():
    rng = random.Random(9)
    for orders in [(2, 4), (2, 2, 2), (0, 2), (4, 0, 0)]:
        r = random_record(rng, FgAbelianGroup(orders))
        psi = random_automorphism(rng, r.group)
        offset = tuple(rng.randrange(2) for _ in range(r.spin.dim))
        r2 = transport(r, psi, offset)
        assert validate_record(r2) == []


def random_b(rng, moduli=(0, 2, 4), spins=4):
    tables = {}
    for n in moduli:
        tables[n] = {(0, 1, 2): rng.randint(-9, 9), (0, 0, 1): rng.choice((0, n // 2 if n else 0)), (1, 2, 3): rng.randint(-9, 9)}
    return BElement(moduli, tables, [rng.randrange(16) for _ in range(spins)])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_b_group_laws(seed):
    rng = random.Random(seed)
    x, y, z = random_b(rng), random_b(rng), random_b(rng)
    zero = BElement.zero(x.moduli, 4)
    assert x + zero == x
    assert (x - x).is_zero()
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert -(-x) == x


def test_b_normalizes_transposed_keys():
    a = BElement((0,), {0: {(1, 0, 2): 3}}, [])
    b = BElement((0,), {0: {(0, 1, 2): -3}}, [])
    assert a == b
    assert BElement((2,), {2: {(0, 1, 2): 2}}, [16]).is_zero()


def test_b_shape_mismatch():
    with pytest.raises(ValueError):
        BElement.zero((0, 2), 2) + BElement.zero((0,), 2)
    with pytest.raises(ValueError):
        BElement.zero((0,), 2) - BElement.zero((0,), 4)

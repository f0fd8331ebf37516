from collections import Counter

from clasper import lemmas, surgery
from clasper.lemmas import (
    LEMMAS,
    finite_groups,
    verify_antisymmetry,
    verify_cubic,
    verify_d3,
    verify_slide,
    verify_square,
    verify_tri,
    verify_trivectors,
)

# number of abelian groups of order n, for n = 1..32
ABELIAN_COUNTS = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2, 1, 1, 1, 3, 2, 1, 3, 2, 1, 1, 1, 7]


def test_finite_groups_one_per_isomorphism_type():
    sizes = Counter(H.cardinality() for H in finite_groups(32))
    assert [sizes[n] for n in range(1, 33)] == ABELIAN_COUNTS


def test_small_bounds_pass():
    for rep in (verify_trivectors(16), verify_cubic(2), verify_tri(2), verify_antisymmetry(8),
                verify_slide(8), verify_square(5), verify_d3(2)):
        assert rep.ok, rep.summary()
        assert rep.cases > 0


def test_lemma_table():
    assert set(LEMMAS) == {"trivectors", "cubic", "tri", "square"}


def test_trivector_oracle_catches_a_broken_pairing(monkeypatch):
    monkeypatch.setattr(lemmas, "dual_basis_value", lambda dual, t, X: 0)
    rep = verify_trivectors(8, samples=0)
    assert not rep.ok and "misclassified" in rep.counterexample


def test_square_oracle_catches_a_wrong_rochlin_delta(monkeypatch):
    original = surgery.map_N

    def shifted(X, f, moduli):
        out = original(X, f, moduli)
        return type(out)(out.moduli, out.tables, [v + 8 for v in out.rochlin])

    monkeypatch.setattr(surgery, "map_N", shifted)
    assert not verify_square(3, shapes=((2,),)).ok


def test_report_summary():
    rep = verify_trivectors(4)
    assert rep.summary().startswith("trivectors:") and rep.summary().endswith("ok")
    rep.fail("boom")
    rep.fail("second")
    assert rep.counterexample == "boom" and "FAILED: boom" in rep.summary()

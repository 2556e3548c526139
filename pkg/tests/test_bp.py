import pytest

from chromalg import bp, steenrod
from chromalg.poly import PolyRing
from chromalg.rings import PrimeField, ZZ


@pytest.fixture(scope="module")
def table():
    return bp.right_unit(2, 3)


def test_right_unit_v1(table):
    P = table.ring
    assert table.eta_v[1] == P.gen("v1") + 2 * P.gen("t1")


def test_right_unit_v2_exact(table):
    P = table.ring
    v1, v2, t1, t2 = (P.gen(g) for g in ("v1", "v2", "t1", "t2"))
    expected = v2 + 2 * t2 - 4 * (t1 ** 3) - 5 * v1 * (t1 * t1) - 3 * (v1 * v1) * t1
    assert table.eta_v[2] == expected


def test_right_unit_invariance(table):
    P = table.ring
    for k, kill in ((1, ()), (2, ("v1",)), (3, ("v1", "v2"))):
        lhs = bp.reduce_poly_modulo(table.eta_v[k], 2, kill_gens=kill)
        rhs = bp.reduce_poly_modulo(P.gen(f"v{k}"), 2, kill_gens=kill)
        assert lhs == rhs


def test_regular_sequence_bp2():
    seq, module, P = bp.bp2_shadow_sequence(20)
    rep = bp.regular_sequence_check(seq, module, 20)
    assert rep.regular, rep.failures


def test_regular_sequence_repeated_generator_fails():
    P = PolyRing(ZZ, ("v1",), (2,))
    rep = bp.regular_sequence_check(
        [bp.poly_element(P.gen("v1"), "v1"), bp.poly_element(P.gen("v1"), "v1")],
        bp.GradedModule(P, []), 8)
    assert not rep.regular
    step, degree, witness = rep.failures[0]
    assert step == 1 and degree == 0


def test_regular_sequence_two_on_f2_fails():
    P = PolyRing(PrimeField(2), ("t1",), (2,))
    rep = bp.regular_sequence_check([bp.scalar_element(P, 2, "p")],
                                    bp.GradedModule(P, []), 8)
    assert not rep.regular


def test_koszul_regular_case():
    seq, module, P = bp.bp2_shadow_sequence(20)
    tor = bp.koszul_tor(seq, module, 20)
    for (s, d) in tor.entries:
        if s > 0:
            assert tor.is_zero(s, d), (s, d)
    twts = [w for g, w in zip(P.gens, P.weights) if g.startswith("t")]
    assert [tor.dim(0, d) for d in range(21)] == bp.fp_poly_dims(twts, 20)


def test_koszul_exterior_pattern():
    F2 = PrimeField(2)
    P = PolyRing(F2, ("t1", "t2", "t3"), (2, 6, 14))
    module = bp.GradedModule(P, [])
    seq = [bp.SequenceElement(nm, d, P.zero())
           for nm, d in (("p", 0), ("v1", 2), ("v2", 6), ("v3", 14))]
    tor = bp.koszul_tor(seq, module, 16)
    assert tor.total_dims(16) == bp.exterior_pattern_dims([2, 6, 14], [1, 3, 7, 15], 16)


def test_koszul_empty_sequence_returns_module():
    F2 = PrimeField(2)
    P = PolyRing(F2, ("t1", "t2"), (2, 6))
    tor = bp.koszul_tor([], bp.GradedModule(P, []), 10)
    assert [tor.dim(0, d) for d in range(11)] == bp.fp_poly_dims([2, 6], 10)


@pytest.mark.parametrize("n,p,N", [(1, 2, 24), (2, 2, 32), (1, 3, 30), (0, 2, 12)])
def test_tor_degeneration(n, p, N):
    rep = bp.tor_degeneration_identity(n, p, N)
    assert rep["truncated_equal"], (n, p)
    assert rep["full_equal"], (n, p)


def test_degree_zero_trivial():
    rep = bp.tor_degeneration_identity(1, 2, 0)
    assert rep["truncated"][0][0] == 1 and rep["full"][0][0] == 1


def test_connectivity_evenness():
    for n in (1, 2):
        assert steenrod.evenness_below(n, 2 ** (n + 2) + 4)

import random

import pytest

from chromalg import steenrod as st


def test_basis_examples():
    assert st.basis(0) == ((),)
    assert st.basis(3) == ((0, 1), (3,))
    assert len(st.basis(7)) == 4
    assert st.basis(-1) == ()


def test_dims_match_poincare_product():
    assert st.dims_table(48) == st.poincare_product_dims(48)


def test_product_examples():
    assert st.milnor_product(st.sq(1), st.sq(1)) == frozenset()
    Q0, Q1 = st.milnor_primitive(0), st.milnor_primitive(1)
    assert st.milnor_product(Q0, Q1) ^ st.milnor_product(Q1, Q0) == frozenset()
    assert st.milnor_product(st.UNIT, Q1) == Q1


def test_product_associative_random():
    rng = random.Random(0)
    pool = [m for d in range(1, 12) for m in st.basis(d)]
    for _ in range(80):
        a, b, c = (frozenset({rng.choice(pool)}) for _ in range(3))
        assert st.milnor_product(st.milnor_product(a, b), c) == \
            st.milnor_product(a, st.milnor_product(b, c))


def test_milnor_vs_operator_oracle():
    rng = random.Random(2)
    nv = 3
    polys = [frozenset({(1, 1, 1)}), frozenset({(2, 1, 0)}),
             frozenset({(1, 0, 0), (0, 1, 1)})]
    pool = [m for d in range(1, 8) for m in st.basis(d)]
    tested = 0
    while tested < 15:
        r, s = rng.choice(pool), rng.choice(pool)
        if st.mono_degree(r) + st.mono_degree(s) > 10:
            continue
        tested += 1
        prod = st.milnor_product_mono(r, s)
        for tp in polys:
            assert st.element_on_poly(prod, tp, nv) == \
                st.milnor_on_poly(r, st.milnor_on_poly(s, tp, nv), nv)


def test_adem_oracle():
    nv = 3
    tp = frozenset({(1, 1, 1)})
    for a, b in [(1, 1), (1, 2), (2, 2), (3, 2), (2, 3), (5, 2), (4, 4), (3, 6)]:
        direct = st.word_on_poly((a, b), tp, nv)
        via = frozenset()
        for w in st.adem_word_normalize((a, b)):
            via ^= st.word_on_poly(w, tp, nv)
        assert direct == via, (a, b)
        mp = st.milnor_product(st.sq(a), st.sq(b))
        assert st.element_on_poly(mp, tp, nv) == direct, (a, b)


def test_sq_equals_milnor_single_row():
    nv = 2
    tp = frozenset({(2, 1)})
    for n in range(1, 8):
        assert st.milnor_on_poly((n,), tp, nv) == st.sq_on_poly(n, tp, nv)


def test_milnor_primitives():
    for i in range(4):
        Qi = st.milnor_primitive(i)
        assert st.milnor_product(Qi, Qi) == frozenset()
        assert st.element_degree(Qi) == 2 ** (i + 1) - 1
    assert st.milnor_primitive(0) == st.sq(1)
    comm = st.milnor_product(st.sq(2), st.sq(1)) ^ st.milnor_product(st.sq(1), st.sq(2))
    assert comm == st.milnor_primitive(1)


@pytest.mark.parametrize("kind,n,total", [
    ("E", 0, 2), ("E", 1, 4), ("E", 2, 8), ("E", 3, 16),
    ("A", 0, 2), ("A", 1, 8), ("A", 2, 64),
])
def test_profile_dims(kind, n, total):
    pr = st.Profile(kind, n)
    assert pr.total_dim() == total
    assert pr.closure_check()


def test_exterior_inside_full_profile():
    for n in (1, 2):
        An = st.Profile("A", n)
        for r in st.Profile("E", n).algebra_basis():
            assert An.member(r)


def test_quotient_convolution_freeness():
    for kind, n in (("E", 0), ("E", 1), ("E", 2), ("A", 1), ("A", 2)):
        pr = st.Profile(kind, n)
        q = st.quotient_dims_convolution(pr, 48)
        pb = pr.dims(48)
        pa = st.dims_table(48)
        back = [sum(q[i] * pb[d - i] for i in range(d + 1)) for d in range(49)]
        assert back == pa, pr


def test_quotient_low_dims():
    qE1 = st.quotient_dims_convolution(st.Profile("E", 1), 8)
    assert qE1 == [1, 0, 1, 0, 1, 0, 2, 1, 2]
    qA1 = st.quotient_dims_convolution(st.Profile("A", 1), 8)
    assert qA1 == [1, 0, 0, 0, 1, 0, 1, 1, 1]
    qE0 = st.quotient_dims_convolution(st.Profile("E", 0), 8)
    assert qE0 == [1, 0, 1, 1, 1, 1, 2, 2, 2]


def test_quotient_tables_match_and_cyclic():
    for kind, n in (("E", 1), ("E", 2), ("A", 1)):
        pr = st.Profile(kind, n)
        qm = st.QuotientModule(pr, 12)
        assert qm.dims() == st.quotient_dims_convolution(pr, 12)
        assert qm.cyclic_check()


def test_square_commutes_to_16():
    res = st.square_check(16)
    assert res["ok"], res["witness"]


def test_square_degree_zero_maps_unit():
    E1 = st.QuotientModule(st.Profile("E", 1), 4)
    A1 = st.QuotientModule(st.Profile("A", 1), 4)
    m = st.module_map_matrix(E1, A1, 0)
    assert m == [1]


def test_bstar():
    assert st.bstar_generator_degrees(2, 2, 32) == [2, 6, 14, 15, 31]
    assert st.bstar_dims(0, 2, 8) == [1, 0, 1, 1, 1, 1, 2, 2, 2]
    assert st.bstar_dims(1, 2, 0) == [1]


def test_duality_dims():
    assert st.duality_dims_check(0, 16)
    assert st.duality_dims_check(1, 24)
    assert st.duality_dims_check(2, 32)


def test_evenness_below_bound():
    assert st.evenness_below(1, 24)
    assert st.evenness_below(2, 32)

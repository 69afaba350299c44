import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isopieri.pieri import (
    BadM,
    ClassExpansion,
    CodimMismatch,
    FamilyMismatch,
    duality_pair,
    multiply_special,
    pieri,
    single_class,
    triple_degree_prediction,
)
from isopieri.shapes import all_sequences, bruhat_leq, signed_sequence


def seq(*entries):
    return signed_sequence(len(entries), entries)


MU = seq(3, 2, -1, -4)
LAM1 = seq(4, 2, 1, -3)
LAM2 = seq(4, 3, -1, -2)


def test_fixture_expansion_orthogonal():
    assert pieri("B", MU, 2).terms == {LAM1: 2, LAM2: 1}


def test_fixture_expansion_symplectic():
    assert pieri("C", MU, 2).terms == {LAM1: 2, LAM2: 2}


def test_bottom_times_generator():
    bottom = seq(-1, -2, -3)
    e = pieri("B", bottom, 2)
    assert e.terms == {seq(2, -1, -3): 1}


def test_bad_m():
    with pytest.raises(BadM):
        pieri("B", MU, 0)
    with pytest.raises(BadM):
        pieri("B", MU, 5)


@given(
    st.integers(1, 5).flatmap(
        lambda n: st.tuples(
            st.sampled_from(all_sequences(n)), st.integers(1, n)
        )
    )
)
def test_coefficients_are_powers_of_two(mu_m):
    mu, m = mu_m
    for fam in ("B", "C"):
        e = pieri(fam, mu, m)
        for lam, c in e.terms.items():
            assert c > 0 and (c & (c - 1)) == 0
            assert lam.codim == mu.codim + m
            assert bruhat_leq(mu, lam)


def test_multiply_special_linearity():
    e = single_class("B", MU, 2)
    assert multiply_special(e, 2) == pieri("B", MU, 2).scaled(2)
    empty = ClassExpansion("B", 4, {})
    assert multiply_special(empty, 1) == empty


def test_iterated_product_rank_two():
    # (bottom * first special) * first special, worked by hand on the rank-2
    # poset: bottom -> [1,-2] -> [2,-1], single component each step
    bottom = seq(-1, -2)
    once = multiply_special(single_class("B", bottom), 1)
    assert once.terms == {seq(1, -2): 1}
    twice = multiply_special(once, 1)
    assert twice.terms == {seq(2, -1): 1}
    # symplectic: the second step leaves column 1, doubling the coefficient
    twice_c = multiply_special(
        multiply_special(single_class("C", bottom), 1), 1
    )
    assert twice_c.terms == {seq(2, -1): 2}


def test_family_mismatch():
    with pytest.raises(FamilyMismatch):
        ClassExpansion("B", 4, {}) + ClassExpansion("C", 4, {})


def test_duality_pair():
    assert duality_pair("B", MU, MU) == 1
    other = seq(3, 2, 1, -4)  # codim 6
    peer = seq(4, 2, -1, -3)  # codim 6
    assert duality_pair("B", other, peer) == 0
    with pytest.raises(CodimMismatch):
        duality_pair("B", MU, LAM1)


def test_duality_extracts_coefficients():
    e = pieri("B", MU, 2)
    for lam, c in e.terms.items():
        paired = sum(
            coeff * duality_pair("B", nu, lam) for nu, coeff in e.terms.items()
        )
        assert paired == c


def test_triple_degree_prediction():
    assert triple_degree_prediction("B", MU, LAM1, 2) == 2
    assert triple_degree_prediction("C", MU, LAM1, 2) == 2
    assert triple_degree_prediction("B", MU, LAM2, 2) == 1
    # non-comparable pair of the right codimension jump
    assert triple_degree_prediction("B", seq(4, -1, -2, -3), seq(3, 2, 1, -4), 2) == 0
    # comparable but two boxes share a column
    assert triple_degree_prediction("B", seq(1, -2, -3, -4), seq(3, 2, -1, -4), 4) == 0
    with pytest.raises(CodimMismatch):
        triple_degree_prediction("B", MU, LAM1, 1)


def test_commutativity_small():
    for n in (2, 3):
        for fam in ("B", "C"):
            for mu in all_sequences(n):
                base = single_class(fam, mu)
                for a in range(1, n + 1):
                    for b in range(1, n + 1):
                        left = multiply_special(multiply_special(base, a), b)
                        right = multiply_special(multiply_special(base, b), a)
                        assert left == right


def test_json_shape():
    payload = pieri("B", MU, 2).to_json_dict()
    assert payload == {
        "family": "B",
        "n": 4,
        "terms": [
            {"lambda": [4, 2, 1, -3], "coeff": 2},
            {"lambda": [4, 3, -1, -2], "coeff": 1},
        ],
    }
    json.dumps(payload)  # serializable

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isopieri.pieri import pieri
from isopieri.schur import (
    BoxViolation,
    IntPolynomial,
    NotHomogeneous,
    classical_schur,
    classical_triple_degree,
    expand_in_basis,
    hook_partition,
    hook_strip_degree,
    marked_tableau_polynomial,
    oracle_product,
    schur_P,
    schur_P_by_enumeration,
    schur_P_from_Q,
    schur_Q,
    strict_partitions_of,
)
from isopieri.shapes import all_sequences, one_box_per_diagonal, signed_sequence


def seq(*entries):
    return signed_sequence(len(entries), entries)


class TestPolynomials:
    def test_q_one_box(self):
        assert schur_Q((1,), 2).terms == {(1, 0): 2, (0, 1): 2}

    def test_q_one_row(self):
        # hand enumeration of the marked one-row tableaux of length 2
        assert schur_Q((2,), 2).terms == {(2, 0): 2, (1, 1): 4, (0, 2): 2}

    def test_p_from_q(self):
        assert schur_P((1,), 2).terms == {(1, 0): 1, (0, 1): 1}
        assert schur_P((2,), 2).terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
        assert schur_P((), 3).terms == {(0, 0, 0): 1}

    def test_too_few_variables(self):
        assert schur_Q((2, 1), 1).is_zero()

    def test_exact_division_route(self):
        for shape in ((1,), (2,), (2, 1), (3, 1)):
            assert schur_P_from_Q(shape, 3) == schur_P(shape, 3)

    def test_scan_matches_cell_enumeration(self):
        # the letter-scan computation against the raw tableau sum
        for d in range(0, 9):
            for shape in strict_partitions_of(d, 8):
                for N in (1, 2, 3):
                    assert schur_P(shape, N) == schur_P_by_enumeration(shape, N)
        assert schur_P((3, 2, 1), 4) == schur_P_by_enumeration((3, 2, 1), 4)

    def test_free_diagonal_enumeration_is_scaled_p(self):
        # allowing primes on the diagonal multiplies by 2^rows
        for shape in ((1,), (2,), (2, 1), (3, 1), (3, 2, 1)):
            assert marked_tableau_polynomial(shape, 3) == schur_Q(shape, 3)

    @given(st.sampled_from([(1,), (2,), (2, 1), (3,), (3, 1), (3, 2)]),
           st.integers(2, 4))
    def test_symmetry(self, shape, N):
        p = schur_Q(shape, N)
        rng = random.Random(hash((shape, N)) & 0xFFFF)
        point = [rng.randint(-5, 5) for _ in range(N)]
        for i in range(N - 1):
            swapped = point[:]
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            assert p.evaluate(point) == p.evaluate(swapped)

    def test_stability(self):
        for shape in ((2,), (2, 1), (3, 1)):
            for N in (2, 3):
                assert schur_Q(shape, N + 1).drop_last_var() == schur_Q(shape, N)

    def test_leading_term(self):
        for shape in ((2,), (2, 1), (3, 2, 1)):
            N = 4
            exp, coeff = schur_Q(shape, N).leading()
            assert exp == shape + (0,) * (N - len(shape))
            assert coeff == 2 ** len(shape)
            exp, coeff = schur_P(shape, N).leading()
            assert coeff == 1


class TestExpansion:
    def test_basis_element(self):
        got = expand_in_basis(schur_Q((2,), 3), "Q", 2)
        assert got == {(2,): 1}

    def test_square_of_generator(self):
        prod = schur_Q((1,), 3) * schur_Q((1,), 3)
        assert expand_in_basis(prod, "Q", 2) == {(2,): 2}

    def test_zero(self):
        assert expand_in_basis(IntPolynomial(3, {}), "Q", 5) == {}

    def test_not_homogeneous(self):
        p = IntPolynomial(2, {(1, 0): 1, (2, 0): 1})
        with pytest.raises(NotHomogeneous):
            expand_in_basis(p, "P", 2)

    def test_round_trip(self):
        prod = schur_P((2, 1), 4) * schur_P((2,), 4)
        coeffs = expand_in_basis(prod, "P", 5)
        back = IntPolynomial(4, {})
        for shape, c in coeffs.items():
            back = back + schur_P(shape, 4).scaled(c)
        assert back == prod


class TestOracle:
    def test_fixture_products(self):
        mu = seq(3, 2, -1, -4)
        b = oracle_product("B", mu, 2, 4)
        assert b.terms == {seq(4, 2, 1, -3): 2, seq(4, 3, -1, -2): 1}
        c = oracle_product("C", mu, 2, 4)
        assert c.terms == {seq(4, 2, 1, -3): 2, seq(4, 3, -1, -2): 2}

    def test_bottom_class(self):
        for n in (2, 3, 4):
            bottom = signed_sequence(n, tuple(range(-1, -n - 1, -1)))
            for m in (1, n):
                e = oracle_product("B", bottom, m, n)
                (lam, coeff), = e.terms.items()
                assert coeff == 1 and lam.positive_parts == (m,)

    def test_agrees_with_rule_small(self):
        for n in (1, 2, 3):
            for mu in all_sequences(n):
                for m in range(1, n + 1):
                    for fam in ("B", "C"):
                        assert oracle_product(fam, mu, m, n) == pieri(fam, mu, m)


class TestClassicalDegrees:
    def test_examples(self):
        # the reduced rank-3 problem attached to the vertex-adjacent shape
        assert classical_triple_degree((), (1, 1), 2, 3) == 1
        assert classical_triple_degree((), (2, 2), 2, 4) == 0
        assert classical_triple_degree((), (2, 1), 2, 4) == 1

    def test_degenerate_sizes(self):
        with pytest.raises(BoxViolation):
            classical_triple_degree((), (), 2, 2)  # n - k = 0
        with pytest.raises(BoxViolation):
            classical_triple_degree((), (3,), 2, 4)  # escapes the box

    def test_polynomial_route_equals_strip_route(self):
        # two independent computations of the same coefficient, exhaustive
        # over boxes up to 4x4
        for k in range(1, 5):
            for nk in range(1, 5):
                n = k + nk
                shapes = _box_partitions(k, nk)
                for tau in shapes:
                    for sigma in shapes:
                        if not _contains(tau, sigma):
                            continue
                        assert classical_triple_degree(
                            tau, sigma, k, n
                        ) == hook_strip_degree(tau, sigma, k, n)

    def test_degree_is_boolean_and_diagonal_criterion(self):
        # value is 0 or 1; it is 1 exactly for full-size skew pieces with
        # one box per diagonal.  Strip route exhaustively up to 5x5, the
        # polynomial route on a deterministic sample (it recomputes large
        # products, so the full 5x5 sweep is left to the strip route).
        rng = random.Random(20240817)
        for k in range(1, 6):
            for nk in range(1, 6):
                n = k + nk
                shapes = _box_partitions(k, nk)
                for tau in shapes:
                    for sigma in shapes:
                        if not _contains(tau, sigma):
                            continue
                        deg = hook_strip_degree(tau, sigma, k, n)
                        assert deg in (0, 1)
                        predicted = (
                            sum(sigma) - sum(tau) == n - 1
                            and one_box_per_diagonal(tau, sigma)
                        )
                        assert deg == (1 if predicted else 0)
                        if max(k, nk) > 4 and rng.random() < 0.02:
                            assert classical_triple_degree(
                                tau, sigma, k, n
                            ) == deg


def _box_partitions(rows, cols):
    out = [()]
    def rec(acc, r):
        if r == rows:
            return
        hi = cols if not acc else acc[-1]
        for v in range(1, hi + 1):
            out.append(tuple(acc) + (v,))
            rec(acc + [v], r + 1)
    rec([], 0)
    return [tuple(p) for p in {tuple(p) for p in out}]


def _contains(tau, sigma):
    tau = tau + (0,) * (len(sigma) - len(tau))
    if len(tau) > len(sigma):
        return False
    return all(t <= s for t, s in zip(tau, sigma))


def test_hook_partition():
    assert hook_partition(3, 1) == (3,)
    assert hook_partition(2, 3) == (2, 1, 1)
    assert classical_schur((1,), 2).terms == {(1, 0): 1, (0, 1): 1}

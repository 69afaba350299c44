import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isopieri.shapes import (
    AbsValuesNotComplete,
    NoFirstColumnComponent,
    NotComparable,
    NotDecreasing,
    SignedSequence,
    all_sequences,
    bruhat_leq,
    classical_shadow,
    complement,
    component_subproblem,
    counts,
    enumerate_pieri_targets,
    first_column_subproblem,
    from_positive_parts,
    is_skew_row,
    one_box_per_diagonal,
    render_diagram,
    signed_sequence,
    skew,
)


def seq(*entries):
    return signed_sequence(len(entries), entries)


def sequences(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.sampled_from(all_sequences(n))
    )


class TestValidation:
    def test_valid(self):
        s = signed_sequence(4, [3, 2, -1, -4])
        assert s.entries == (3, 2, -1, -4)

    def test_not_decreasing(self):
        with pytest.raises(NotDecreasing):
            signed_sequence(3, [1, 2, -3])

    def test_abs_values(self):
        with pytest.raises(AbsValuesNotComplete):
            signed_sequence(3, [3, 2, -2])

    def test_negatives_forced_by_positives(self):
        for n in range(1, 6):
            for s in all_sequences(n):
                assert from_positive_parts(n, s.positive_parts) == s


class TestCodimAndOrder:
    def test_codim(self):
        assert seq(3, 2, -1, -4).codim == 5
        assert seq(-1, -2, -3).codim == 0
        assert seq(4, 2, 1, -3).codim == 7

    def test_bruhat(self):
        mu = seq(3, 2, -1, -4)
        lam = seq(4, 2, 1, -3)
        assert bruhat_leq(mu, lam)
        assert bruhat_leq(mu, mu)
        assert not bruhat_leq(lam, mu)

    def test_bruhat_positive_part_criterion(self):
        # comparing only at rows where mu is positive decides the order
        for n in range(1, 6):
            seqs = all_sequences(n)
            for mu in seqs:
                for lam in seqs:
                    restricted = all(
                        m <= l
                        for m, l in zip(mu.entries, lam.entries)
                        if m > 0
                    )
                    assert bruhat_leq(mu, lam) == restricted

    def test_complement(self):
        assert complement(seq(4, 2, 1, -3)) == seq(3, -1, -2, -4)
        assert complement(seq(-1, -2, -3)) == seq(3, 2, 1)

    @given(sequences())
    def test_complement_involution_and_codim(self, s):
        n = s.n
        assert complement(complement(s)) == s
        assert s.codim + complement(s).codim == n * (n + 1) // 2


class TestSkewShapes:
    def test_two_component_shape(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 2, 1, -3))
        assert s.boxes == {(1, 4), (3, 1)}
        assert len(s.components) == 2
        assert s.fixed_indices == {2}
        assert not s.zero_is_fixed
        assert counts(s) == (2, 1, 1, 1)

    def test_single_component_vertex_adjacent(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 3, -1, -2))
        assert s.boxes == {(1, 4), (2, 3)}
        assert len(s.components) == 1
        assert s.fixed_indices == {3}
        assert s.zero_is_fixed
        assert counts(s) == (1, 1, 2, 1)

    def test_empty_shape(self):
        lam = seq(3, 2, -1, -4)
        s = skew(lam, lam)
        assert not s.boxes
        assert not s.components
        assert s.fixed_indices == {1, 2, 3, 4}
        assert s.zero_is_fixed
        assert counts(s) == (0, 0, 5, 4)

    def test_not_comparable(self):
        with pytest.raises(NotComparable):
            skew(seq(4, 2, 1, -3), seq(3, 2, -1, -4))

    def test_skew_row(self):
        assert is_skew_row(skew(seq(3, 2, -1, -4), seq(4, 2, 1, -3)))
        assert not is_skew_row(skew(seq(1, -2, -3, -4), seq(3, 2, -1, -4)))
        assert is_skew_row(skew(seq(2, -1, -3), seq(2, -1, -3)))

    def test_column_identities(self):
        # orthogonal: n+1 = phi + delta + columns; symplectic: n = psi + eps + columns
        for n in range(1, 7):
            seqs = all_sequences(n)
            for mu in seqs:
                for lam in seqs:
                    if not bruhat_leq(mu, lam):
                        continue
                    s = skew(mu, lam)
                    c = counts(s)
                    ncols = len(s.occupied_columns)
                    assert n + 1 == c.phi + c.delta + ncols
                    assert n == c.psi + c.eps + ncols

    def test_empty_column_criterion(self):
        # a column k is unoccupied exactly when, at the row j with |mu_j| = k,
        # either mu_j = k with a gap to the next row (mu_j > lam_{j+1}) or
        # the row is fixed negative (mu_j = lam_j = -k)
        for n in range(1, 6):
            seqs = all_sequences(n)
            for mu in seqs:
                for lam in seqs:
                    if not bruhat_leq(mu, lam):
                        continue
                    s = skew(mu, lam)
                    occ = s.occupied_columns
                    for k in range(1, n + 1):
                        j = next(
                            i for i in range(1, n + 1)
                            if abs(mu.entries[i - 1]) == k
                        )
                        mj = mu.entries[j - 1]
                        if mj == k:
                            crit = j == n or lam.entries[j] < k
                        else:
                            crit = lam.entries[j - 1] == mj
                        assert crit == (k not in occ), (mu, lam, k)

    def test_render(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 2, 1, -3))
        assert render_diagram(s) == "...a\n..\nb"


class TestPieriTargets:
    def test_fixture_pair(self):
        got = enumerate_pieri_targets(seq(3, 2, -1, -4), 2)
        assert [t.entries for t in got] == [(4, 2, 1, -3), (4, 3, -1, -2)]

    def test_bottom_class(self):
        for n in range(1, 6):
            bottom = from_positive_parts(n, ())
            for m in range(1, n + 1):
                got = enumerate_pieri_targets(bottom, m)
                assert [t.positive_parts for t in got] == [(m,)]

    def test_top_class(self):
        top = from_positive_parts(4, (4, 3, 2, 1))
        assert enumerate_pieri_targets(top, 2) == []

    def test_against_brute_force(self):
        for n in range(1, 6):
            seqs = all_sequences(n)
            for mu in seqs:
                for m in range(1, n + 1):
                    brute = [
                        lam
                        for lam in seqs
                        if lam.codim == mu.codim + m
                        and bruhat_leq(mu, lam)
                        and is_skew_row(skew(mu, lam))
                    ]
                    assert enumerate_pieri_targets(mu, m) == sorted(
                        brute, key=lambda s: s.entries
                    )


class TestSubproblems:
    def test_first_column_example(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 2, 1, -3))
        mu0, lam0 = first_column_subproblem(s)
        assert mu0.entries == (-1,)
        assert lam0.entries == (1,)

    def test_first_column_whole_diagram(self):
        s = skew(seq(1, -2), seq(2, 1))
        mu0, lam0 = first_column_subproblem(s)
        assert (mu0.entries, lam0.entries) == ((1, -2), (2, 1))

    def test_no_first_column(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 3, -1, -2))
        with pytest.raises(NoFirstColumnComponent):
            first_column_subproblem(s)

    def test_component_example(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 2, 1, -3))
        d = next(c for c in s.components if not c.meets_first_column)
        mu_d, lam_d = component_subproblem(s, d)
        assert mu_d.entries == (1, -2)
        assert lam_d.entries == (2, -1)

    def test_component_example_with_fixed_row(self):
        s = skew(seq(3, 2, -1, -4), seq(4, 3, -1, -2))
        (d,) = s.components
        mu_d, lam_d = component_subproblem(s, d)
        assert mu_d.entries == (2, 1, -3)
        assert lam_d.entries == (3, 2, -1)

    def test_postconditions_exhaustive(self):
        # reduced pairs: the first-column block keeps one component through
        # column 1 and no fixed rows; other blocks keep one component off
        # column 1 with 0 as the only fixed point
        for n in range(1, 6):
            seqs = all_sequences(n)
            for mu in seqs:
                for lam in seqs:
                    if not bruhat_leq(mu, lam):
                        continue
                    s = skew(mu, lam)
                    d0 = s.first_column_component()
                    if d0 is not None:
                        mu0, lam0 = first_column_subproblem(s)
                        red = skew(mu0, lam0)
                        assert len(red.components) == 1
                        assert red.components[0].meets_first_column
                        assert not red.fixed_indices
                        assert red.size == len(d0.boxes)
                    for d in s.components:
                        if d.meets_first_column:
                            continue
                        mu_d, lam_d = component_subproblem(s, d)
                        red = skew(mu_d, lam_d)
                        assert len(red.components) == 1
                        assert not red.components[0].meets_first_column
                        assert not red.fixed_indices
                        assert red.zero_is_fixed
                        assert red.size == len(d.boxes)


class TestClassicalShadow:
    def test_example(self):
        tau, sigma, k = classical_shadow(seq(3, 2, -1, -4), seq(4, 3, -1, -2))
        assert (tau, sigma, k) == ((1, 1), (2, 2), 2)

    def test_equal_inputs(self):
        s = seq(3, 1, -2)
        tau, sigma, _ = classical_shadow(s, s)
        assert tau == sigma

    def test_no_positive_parts(self):
        bottom = from_positive_parts(3, ())
        tau, sigma, k = classical_shadow(bottom, seq(2, -1, -3))
        assert (tau, sigma, k) == ((), (), 0)

    def test_one_box_per_diagonal(self):
        assert one_box_per_diagonal((1, 1), (2, 2))
        assert one_box_per_diagonal((), (2,))
        assert one_box_per_diagonal((), (1, 1))
        assert not one_box_per_diagonal((), (2, 2))
        assert not one_box_per_diagonal((1,), (2, 1))  # diagonals 1, -1: gap

    def test_columns_to_diagonals(self):
        # for reduced skew rows the shadow of the pair has distinct,
        # consecutive diagonals
        for n in range(1, 6):
            seqs = all_sequences(n)
            for mu in seqs:
                for lam in seqs:
                    if not bruhat_leq(mu, lam):
                        continue
                    s = skew(mu, lam)
                    if not is_skew_row(s) or len(s.components) != 1:
                        continue
                    if s.fixed_indices:
                        continue
                    tau, sigma, k = classical_shadow(mu, lam)
                    if k == 0:
                        continue
                    assert one_box_per_diagonal(tau, sigma)

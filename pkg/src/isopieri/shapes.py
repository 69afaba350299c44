"""Index combinatorics for Schubert classes of maximal isotropic Grassmannians.

Schubert classes in both the odd orthogonal and the Lagrangian Grassmannian
are indexed by strictly decreasing integer sequences whose absolute values
exhaust {1..n}.  This module owns those sequences, their Bruhat order and
diagrams, skew shapes with their components and column data, the reindexing
of component subproblems, and the reduction to classical partition pairs.

Rows and columns of diagrams are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple


class ShapeError(ValueError):
    pass


class NotDecreasing(ShapeError):
    pass


class AbsValuesNotComplete(ShapeError):
    pass


class OutOfRange(ShapeError):
    pass


class DimensionMismatch(ShapeError):
    pass


class NotComparable(ShapeError):
    pass


class NoFirstColumnComponent(ShapeError):
    pass


class FirstColumnComponent(ShapeError):
    pass


class NotContained(ShapeError):
    pass


@dataclass(frozen=True, order=True)
class SignedSequence:
    """A strictly decreasing sequence with absolute values exactly {1..n}.

    The negative entries are redundant (forced by the positive ones) but are
    stored anyway, since Schubert membership conditions index all n rows.
    Construct through :func:`signed_sequence` so the invariants are checked.
    """

    n: int
    entries: tuple[int, ...]

    @property
    def codim(self) -> int:
        return sum(e for e in self.entries if e > 0)

    @property
    def positive_parts(self) -> tuple[int, ...]:
        return tuple(e for e in self.entries if e > 0)

    def complement(self) -> "SignedSequence":
        return SignedSequence(self.n, tuple(-e for e in reversed(self.entries)))

    def __str__(self):
        return "[" + ",".join(str(e) for e in self.entries) + "]"


def signed_sequence(n: int, entries) -> SignedSequence:
    entries = tuple(entries)
    if n < 1 or len(entries) != n:
        raise DimensionMismatch(f"expected {n} entries, got {len(entries)}")
    for e in entries:
        if e == 0 or not (-n <= e <= n):
            raise OutOfRange(f"entry {e} outside [-{n},{n}] \\ {{0}}")
    if any(a <= b for a, b in zip(entries, entries[1:])):
        raise NotDecreasing(f"{entries} is not strictly decreasing")
    if set(abs(e) for e in entries) != set(range(1, n + 1)):
        raise AbsValuesNotComplete(f"absolute values of {entries} != 1..{n}")
    return SignedSequence(n, entries)


def from_positive_parts(n: int, parts) -> SignedSequence:
    """Complete strictly decreasing positive parts by the forced negatives."""
    parts = tuple(parts)
    missing = sorted(set(range(1, n + 1)) - set(parts), reverse=False)
    entries = tuple(sorted(parts, reverse=True)) + tuple(-m for m in missing)
    return signed_sequence(n, entries)


def all_sequences(n: int) -> list[SignedSequence]:
    """All of the index set for rank n, in lexicographic entry order."""
    out = []
    for k in range(n + 1):
        for pos in combinations(range(1, n + 1), k):
            out.append(from_positive_parts(n, pos))
    return sorted(out, key=lambda s: s.entries)


def bruhat_leq(mu: SignedSequence, lam: SignedSequence) -> bool:
    if mu.n != lam.n:
        raise DimensionMismatch("sequences of different rank")
    return all(m <= l for m, l in zip(mu.entries, lam.entries))


def complement(lam: SignedSequence) -> SignedSequence:
    return lam.complement()


def row_interval(mu: SignedSequence, lam: SignedSequence, j: int) -> tuple[int, int]:
    """Columns (lo, hi] occupied by row j of the skew diagram (1-based j)."""
    top = lam.entries[j - 1]
    if top <= 0:
        return (0, 0)
    lo = max(mu.entries[j - 1], 0)
    return (lo, top)


@dataclass(frozen=True)
class Component:
    """A connected component of a skew diagram (boxes sharing an edge or vertex)."""

    boxes: frozenset[tuple[int, int]]
    columns: frozenset[int]
    col_set: frozenset[int]
    meets_first_column: bool

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(sorted({r for r, _ in self.boxes}))

    def sort_key(self):
        return min((r, c) for r, c in self.boxes)


@dataclass(frozen=True)
class SkewShape:
    mu: SignedSequence
    lam: SignedSequence
    boxes: frozenset[tuple[int, int]]
    components: tuple[Component, ...]
    fixed_indices: frozenset[int]
    zero_is_fixed: bool

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def size(self) -> int:
        return len(self.boxes)

    @property
    def occupied_columns(self) -> frozenset[int]:
        return frozenset(c for _, c in self.boxes)

    def first_column_component(self) -> Component | None:
        for d in self.components:
            if d.meets_first_column:
                return d
        return None


class Counts(NamedTuple):
    delta: int  # all components
    eps: int    # components avoiding column 1
    phi: int    # fixed rows plus the synthetic index 0 (orthogonal convention)
    psi: int    # fixed rows only (symplectic convention)


def skew(mu: SignedSequence, lam: SignedSequence) -> SkewShape:
    if mu.n != lam.n:
        raise DimensionMismatch("sequences of different rank")
    if not bruhat_leq(mu, lam):
        raise NotComparable(f"{mu} is not below {lam}")
    n = lam.n
    boxes = set()
    for j in range(1, n + 1):
        lo, hi = row_interval(mu, lam, j)
        for c in range(lo + 1, hi + 1):
            boxes.add((j, c))
    components = _split_components(boxes)
    fixed = frozenset(
        j for j in range(1, n + 1) if mu.entries[j - 1] == lam.entries[j - 1]
    )
    zero_fixed = not any(d.meets_first_column for d in components)
    return SkewShape(mu, lam, frozenset(boxes), components, fixed, zero_fixed)


def _split_components(boxes: set[tuple[int, int]]) -> tuple[Component, ...]:
    remaining = set(boxes)
    comps = []
    while remaining:
        seed = remaining.pop()
        blob = {seed}
        frontier = [seed]
        while frontier:
            r, c = frontier.pop()
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    nb = (r + dr, c + dc)
                    if nb in remaining:
                        remaining.remove(nb)
                        blob.add(nb)
                        frontier.append(nb)
        cols = frozenset(c for _, c in blob)
        left = min(cols) - 1
        comps.append(
            Component(
                boxes=frozenset(blob),
                columns=cols,
                col_set=cols | {left},
                meets_first_column=(left == 0),
            )
        )
    return tuple(sorted(comps, key=Component.sort_key))


def is_skew_row(s: SkewShape) -> bool:
    """At most one box in each column."""
    return len(s.boxes) == len(s.occupied_columns)


def counts(s: SkewShape) -> Counts:
    delta = len(s.components)
    eps = sum(1 for d in s.components if not d.meets_first_column)
    psi = len(s.fixed_indices)
    phi = psi + (1 if s.zero_is_fixed else 0)
    return Counts(delta, eps, phi, psi)


def enumerate_pieri_targets(mu: SignedSequence, m: int) -> list[SignedSequence]:
    """All lam with mu <= lam, codim gain m, and lam/mu a skew row."""
    n = mu.n
    target = mu.codim + m
    out = []
    for k in range(n + 1):
        for pos in combinations(range(1, n + 1), k):
            if sum(pos) != target:
                continue
            lam = from_positive_parts(n, pos)
            if bruhat_leq(mu, lam) and is_skew_row(skew(mu, lam)):
                out.append(lam)
    return sorted(out, key=lambda s: s.entries)


def first_column_subproblem(s: SkewShape) -> tuple[SignedSequence, SignedSequence]:
    """Reindex the first-column component to its own rank-l problem.

    Rows j .. j+l-1 of (mu, lam) are reused verbatim, where j is the first
    row of the component and l its largest column.  The result is a shape
    with a unique component meeting column 1 and no fixed rows.
    """
    d = s.first_column_component()
    if d is None:
        raise NoFirstColumnComponent(f"{s.lam}/{s.mu} avoids column 1")
    j = d.rows[0]
    l = s.lam.entries[j - 1]
    if l != max(d.columns):
        raise ShapeError("component head row does not reach its widest column")
    mu0 = signed_sequence(l, s.mu.entries[j - 1 : j - 1 + l])
    lam0 = signed_sequence(l, s.lam.entries[j - 1 : j - 1 + l])
    return mu0, lam0


def component_subproblem(
    s: SkewShape, d: Component
) -> tuple[SignedSequence, SignedSequence]:
    """Reindex a component avoiding column 1 to a rank-p problem, p = #col(d).

    Rows j..k of the component shift down by a-1 (a = mu_k, the column left
    of the component); the mirror rows, those whose entries lie in
    [-lam_j, -a], shift up by a-1.  The result has a unique component
    avoiding column 1 and no fixed rows.
    """
    if d.meets_first_column:
        raise FirstColumnComponent("component meets column 1")
    if d not in s.components:
        raise ShapeError("component does not belong to this shape")
    rows = d.rows
    j, k = rows[0], rows[-1]
    if rows != tuple(range(j, k + 1)):
        raise ShapeError("component rows are not contiguous")
    a = s.mu.entries[k - 1]
    if a != min(d.col_set):
        raise ShapeError("column bookkeeping is inconsistent")
    p = len(d.col_set)
    lo, hi = -s.lam.entries[j - 1], -a
    mirror = [
        i
        for i in range(1, s.n + 1)
        if lo <= s.mu.entries[i - 1] and s.lam.entries[i - 1] <= hi
    ]
    if len(mirror) + (k - j + 1) != p:
        raise ShapeError("mirror rows do not complete the subproblem")
    mu_d = tuple(s.mu.entries[i - 1] - a + 1 for i in range(j, k + 1)) + tuple(
        s.mu.entries[i - 1] + a - 1 for i in mirror
    )
    lam_d = tuple(s.lam.entries[i - 1] - a + 1 for i in range(j, k + 1)) + tuple(
        s.lam.entries[i - 1] + a - 1 for i in mirror
    )
    return signed_sequence(p, mu_d), signed_sequence(p, lam_d)


def component_coordinate_offset(d: Component) -> int:
    """Global column c of the component block <-> reduced column c - a + 1."""
    return min(d.col_set)


def classical_shadow(
    mu: SignedSequence, lam: SignedSequence
) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Subtract the staircase from the positive parts, giving partitions in
    the k x (n-k) box, where k counts the positive parts of mu."""
    if not bruhat_leq(mu, lam):
        raise NotComparable(f"{mu} is not below {lam}")
    k = len(mu.positive_parts)
    n = mu.n
    tau = tuple(mu.entries[j - 1] - (k + 1 - j) for j in range(1, k + 1))
    sigma = tuple(lam.entries[j - 1] - (k + 1 - j) for j in range(1, k + 1))
    for t in (tau, sigma):
        if any(x < 0 for x in t) or any(x > n - k for x in t):
            raise ShapeError(f"shadow {t} escapes the {k}x{n - k} box")
    return tau, sigma, k


def partition_boxes(parts: tuple[int, ...]) -> set[tuple[int, int]]:
    return {(r, c) for r, p in enumerate(parts, start=1) for c in range(1, p + 1)}


def one_box_per_diagonal(tau: tuple[int, ...], sigma: tuple[int, ...]) -> bool:
    """Diagonals c-r of sigma/tau are pairwise distinct and consecutive."""
    tau = tuple(tau) + (0,) * (len(sigma) - len(tau))
    if len(tau) > len(sigma) and any(tau[len(sigma):]):
        raise NotContained(f"{tau} not contained in {sigma}")
    if any(t > s for t, s in zip(tau, sigma)):
        raise NotContained(f"{tau} not contained in {sigma}")
    diags = sorted(
        c - r for (r, c) in partition_boxes(tuple(sigma)) - partition_boxes(tau)
    )
    if len(diags) != len(set(diags)):
        return False
    return all(b - a == 1 for a, b in zip(diags, diags[1:]))


_LABELS = "abcdefghijklmnopqrstuvwxyz"


def render_diagram(s: SkewShape) -> str:
    """One character per box: '.' for cells of mu, letters per component."""
    label = {}
    for i, d in enumerate(s.components):
        for box in d.boxes:
            label[box] = _LABELS[i % len(_LABELS)]
    lines = []
    for j in range(1, s.n + 1):
        top = s.lam.entries[j - 1]
        if top <= 0:
            continue
        lo = max(s.mu.entries[j - 1], 0)
        line = "." * lo + "".join(label[(j, c)] for c in range(lo + 1, top + 1))
        lines.append(line)
    return "\n".join(lines)


def iter_bruhat_pairs(n: int) -> Iterator[tuple[SignedSequence, SignedSequence]]:
    seqs = all_sequences(n)
    for mu in seqs:
        for lam in seqs:
            if bruhat_leq(mu, lam):
                yield mu, lam

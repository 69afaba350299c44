"""Bilinear spaces, exact subspaces, Schubert membership, and enumeration.

Family B lives in a (2n+1)-dimensional space with coordinates -n..n and a
symmetric form pairing opposite coordinates; family C lives in 2n dimensions
with coordinates -n..-1, 1..n and the alternating form.  Subspaces carry a
canonical reduced row echelon basis, so equality of subspaces is equality
of matrices.

Maximal isotropic subspaces over GF(p) are enumerated by recursive isotropic
extension: a subspace is grown one canonical echelon row at a time, so every
subspace is produced exactly once and the product formula for the count is
asserted at the end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import (
    GF,
    PrimeField,
    RationalField,
    in_row_space,
    kernel_basis,
    lin_combo,
    rank,
    rref,
)
from .shapes import SignedSequence

DEFAULT_SUBSPACE_BUDGET = 200_000


class GeometryError(ValueError):
    pass


class WrongDimension(GeometryError):
    pass


class SpaceMismatch(GeometryError):
    pass


class BudgetExceeded(GeometryError):
    pass


@dataclass(frozen=True)
class BilinearSpace:
    """Ambient space of one family: 'B' (odd orthogonal) or 'C' (symplectic)."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in ("B", "C"):
            raise GeometryError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise GeometryError("rank must be positive")

    @cached_property
    def coords(self) -> tuple[int, ...]:
        if self.family == "B":
            return tuple(range(-self.n, self.n + 1))
        return tuple(c for c in range(-self.n, self.n + 1) if c)

    @property
    def dim(self) -> int:
        return 2 * self.n + 1 if self.family == "B" else 2 * self.n

    def idx(self, c: int) -> int:
        if self.family == "B":
            if not -self.n <= c <= self.n:
                raise WrongDimension(f"coordinate {c} out of range")
            return c + self.n
        if c == 0 or not -self.n <= c <= self.n:
            raise WrongDimension(f"coordinate {c} out of range")
        return c + self.n if c < 0 else c + self.n - 1

    def gram(self, i: int, j: int) -> int:
        """The form on basis vectors: nonzero only for opposite coordinates."""
        if i != -j:
            return 0
        if self.family == "B":
            return 1
        return 1 if j > 0 else -1

    @cached_property
    def pairing_index(self) -> tuple[int, ...]:
        """Column index of the partner coordinate, per column."""
        return tuple(self.idx(-c) for c in self.coords)

    @cached_property
    def pairing_weight(self) -> tuple[int, ...]:
        return tuple(self.gram(c, -c) for c in self.coords)

    def vector(self, entries: dict[int, object], field) -> tuple:
        v = [field.zero] * self.dim
        for c, x in entries.items():
            v[self.idx(c)] = field(x) if isinstance(x, int) else x
        return tuple(v)


def form_value(space: BilinearSpace, u, v, field):
    """Evaluate the bilinear form on two coordinate vectors."""
    if len(u) != space.dim or len(v) != space.dim:
        raise WrongDimension("vector length does not match the space")
    s = field.zero
    for j, (pj, wj) in enumerate(zip(space.pairing_index, space.pairing_weight)):
        a, b = u[j], v[pj]
        if a and b:
            term = field.mul(a, b)
            s = field.add(s, term if wj == 1 else field.neg(term))
    return s


def quadratic_value(space: BilinearSpace, v, field):
    return form_value(space, v, v, field)


@dataclass(frozen=True)
class Subspace:
    """An exact subspace with canonical reduced row echelon basis."""

    space: BilinearSpace
    field: object
    rows: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def contains_vector(self, v) -> bool:
        return in_row_space(v, self.rows, self.pivots, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.space == other.space
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.space, self.field, self.rows))


def span(space: BilinearSpace, field, vectors) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != space.dim:
            raise WrongDimension("vector length does not match the space")
    rows, _ = rref(vectors, field)
    return Subspace(space, field, rows)


def coordinate_span(space: BilinearSpace, field, coords) -> Subspace:
    return span(space, field, [space.vector({c: 1}, field) for c in coords])


def is_isotropic(S: Subspace) -> bool:
    rows, field = S.rows, S.field
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            if form_value(S.space, rows[i], rows[j], field):
                return False
    return True


def pairing_functional(space: BilinearSpace, r, field):
    """Row vector f with f . v = form(v, r) for all v."""
    out = [field.zero] * space.dim
    for j, (pj, wj) in enumerate(zip(space.pairing_index, space.pairing_weight)):
        x = r[pj]
        if x:
            out[j] = x if wj == 1 else field.neg(x)
    return tuple(out)


def orthogonal_complement(S: Subspace) -> Subspace:
    sysrows = [pairing_functional(S.space, r, S.field) for r in S.rows]
    basis = kernel_basis(sysrows, S.field, ncols=S.space.dim)
    return Subspace(S.space, S.field, basis)


def dim_intersection(S: Subspace, T: Subspace) -> int:
    if S.space != T.space or S.field != T.field:
        raise SpaceMismatch("subspaces live in different spaces")
    return S.dim + T.dim - rank(list(S.rows) + list(T.rows), S.field)


def in_special(K: Subspace, H: Subspace) -> bool:
    """Whether H meets the fixed isotropic subspace K nontrivially."""
    return dim_intersection(K, H) >= 1


def rank_profiles(S: Subspace) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(pref, suf): pref[i] = rank of the first i columns, suf[i] = rank of
    columns i..D-1.  Together these answer every Schubert interval query."""
    field = S.field
    D = S.space.dim

    def sweep(order):
        work = [list(r) for r in S.rows]
        used = [False] * len(work)
        out = {}
        r = 0
        for c in order:
            pr = None
            for i in range(len(work)):
                if not used[i] and work[i][c]:
                    pr = i
                    break
            if pr is not None:
                used[pr] = True
                r += 1
                inv = field.inv(work[pr][c])
                for i in range(len(work)):
                    if not used[i] and work[i][c]:
                        f = field.mul(work[i][c], inv)
                        work[i] = [
                            field.sub(x, field.mul(f, y))
                            for x, y in zip(work[i], work[pr])
                        ]
            out[c] = r
        return out

    fwd = sweep(range(D))
    bwd = sweep(range(D - 1, -1, -1))
    pref = tuple([0] + [fwd[c] for c in range(D)])
    suf = tuple([bwd[c] for c in range(D)] + [0])
    return pref, suf


def profile_in_schubert(
    space: BilinearSpace,
    profiles: tuple[tuple[int, ...], tuple[int, ...]],
    lam: SignedSequence,
    primed: bool,
) -> bool:
    pref, suf = profiles
    n = space.n
    if not primed:
        for j in range(1, n + 1):
            c = lam.entries[j - 1]
            if n - pref[space.idx(c)] < j:
                return False
    else:
        for j in range(1, n + 1):
            c = -lam.entries[j - 1]
            if n - suf[space.idx(c) + 1] < j:
                return False
    return True


def in_schubert(lam: SignedSequence, H: Subspace, primed: bool = False) -> bool:
    """Membership of a maximal isotropic subspace in the Schubert variety
    indexed by lam (primed: the opposite-flag translate)."""
    if H.space.n != lam.n:
        raise WrongDimension(f"{lam} does not index rank {H.space.n}")
    if H.dim != H.space.n:
        raise WrongDimension("Schubert membership needs a maximal isotropic")
    return profile_in_schubert(H.space, rank_profiles(H), lam, primed)


# ---------------------------------------------------------------------------
# enumeration over prime fields


_COEFF_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _all_coeff_rows(p: int, t: int) -> np.ndarray:
    key = (p, t)
    if key not in _COEFF_CACHE:
        _COEFF_CACHE[key] = np.array(
            list(itertools.product(range(p), repeat=t)), dtype=np.int64
        ).reshape(p**t, t)
    return _COEFF_CACHE[key]


def expected_maximal_isotropic_count(n: int, p: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out *= 1 + p**i
    return out


def enumerate_maximal_isotropic(
    space: BilinearSpace, p: int, budget: int = DEFAULT_SUBSPACE_BUDGET
) -> list[Subspace]:
    """Every maximal isotropic subspace over GF(p), each exactly once.

    Recursive isotropic extension in canonical echelon order: a new basis row
    must be monic, reduced against the current rows, start past their pivots,
    and leave their entries untouched in its own pivot column; that makes the
    stacked matrix the canonical echelon form of the child, so no dedup set
    is needed.  The closed-form count is asserted before returning.
    """
    field = GF(p)
    n, D = space.n, space.dim
    expected = expected_maximal_isotropic_count(n, p)
    if expected > budget:
        raise BudgetExceeded(
            f"{expected} subspaces exceed the budget of {budget}"
        )
    pair = space.pairing_index
    weight = space.pairing_weight
    is_b = space.family == "B"
    if is_b:
        i_zero = space.idx(0)
        pos_idx = np.array([space.idx(c) for c in range(1, n + 1)])
        neg_idx = np.array([space.idx(-c) for c in range(1, n + 1)])

    results: list[tuple[tuple[int, ...], ...]] = []

    def extend(rows: tuple[tuple[int, ...], ...], pivots: tuple[int, ...]):
        if len(rows) == n:
            results.append(rows)
            return
        sysrows = [
            tuple((r[pair[j]] * weight[j]) % p for j in range(D)) for r in rows
        ]
        for q in pivots:
            unit = [0] * D
            unit[q] = 1
            sysrows.append(tuple(unit))
        basis = kernel_basis(sysrows, field, ncols=D)
        if not basis:
            return
        basis_np = np.array(basis, dtype=np.int64)
        f = len(basis)
        last = pivots[-1] if pivots else -1
        for j in range(f):
            qj = next(i for i, x in enumerate(basis[j]) if x)
            if qj <= last:
                continue
            if any(r[qj] for r in rows):
                continue
            t = f - 1 - j
            if t == 0:
                cands = basis_np[j : j + 1]
            else:
                coeffs = _all_coeff_rows(p, t)
                cands = (coeffs @ basis_np[j + 1 :] + basis_np[j]) % p
            if is_b:
                quad = (
                    cands[:, i_zero] * cands[:, i_zero]
                    + 2
                    * np.einsum(
                        "ij,ij->i", cands[:, pos_idx], cands[:, neg_idx]
                    )
                ) % p
                cands = cands[quad == 0]
            for row in cands:
                child = tuple(int(x) for x in row)
                extend(rows + (child,), pivots + (qj,))

    extend((), ())
    if len(results) != expected:
        raise GeometryError(
            f"enumeration produced {len(results)} subspaces, expected {expected}"
        )
    return [Subspace(space, field, rows) for rows in results]


def projective_points(S: Subspace):
    """Canonical monic representatives of the lines of a subspace over GF(p)."""
    if not isinstance(S.field, PrimeField):
        raise GeometryError("projective point enumeration needs a prime field")
    p = S.field.p
    k = S.dim
    for j in range(k):
        for tail in itertools.product(range(p), repeat=k - 1 - j):
            coeffs = (0,) * j + (1,) + tail
            yield lin_combo(coeffs, S.rows, S.field)


def random_isotropic_subspace(
    space: BilinearSpace, field, d: int, rng
) -> Subspace:
    """A random isotropic d-plane over GF(p) by iterated random isotropic
    extension; deterministic given the caller's rng."""
    if d > space.n:
        raise WrongDimension(f"isotropic dimension {d} exceeds {space.n}")
    if isinstance(field, RationalField):
        raise GeometryError(
            "random sampling over the rationals is not supported; "
            "rational inputs are fixture-driven"
        )
    p = field.p
    rows: list[tuple] = []
    D = space.dim
    for _ in range(d):
        sysrows = [pairing_functional(space, r, field) for r in rows]
        basis = kernel_basis(sysrows, field, ncols=D)
        for _attempt in range(10_000):
            coeffs = [rng.randrange(p) for _ in basis]
            v = lin_combo(coeffs, basis, field) if basis else tuple([0] * D)
            if not any(v):
                continue
            if space.family == "B" and quadratic_value(space, v, field):
                continue
            new_rows, _ = rref(rows + [v], field)
            if len(new_rows) == len(rows):
                continue
            rows = list(new_rows)
            break
        else:
            raise GeometryError("could not sample an isotropic extension")
    return Subspace(space, field, tuple(rows))


def subspace_from_int_rows(space: BilinearSpace, field, rows) -> Subspace:
    vectors = [tuple(field(x) for x in r) for r in rows]
    return span(space, field, vectors)

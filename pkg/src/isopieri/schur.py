"""Schur P-/Q-polynomials and classical Schur polynomials, exactly.

The P- and Q-polynomials are generated from marked shifted tableaux in the
alphabet 1' < 1 < 2' < 2 < ... < N' < N: entries weakly increase along rows
and down columns, each primed letter appears at most once per row, each
unprimed letter at most once per column.  P-tableaux additionally carry no
primed letters on the main diagonal, and Q = 2^(rows) * P.

These polynomials are the independent referee for the combinatorial
multiplication rule: products are multiplied out as honest sparse integer
polynomials and re-expanded by lexicographic leading-term elimination.
"""

from __future__ import annotations

from functools import lru_cache

from .pieri import BadM, ClassExpansion
from .shapes import SignedSequence, from_positive_parts, partition_boxes


class SchurError(ValueError):
    pass


class NonDivisible(SchurError):
    pass


class NotHomogeneous(SchurError):
    pass


class ResidualNonzero(SchurError):
    pass


class BoxViolation(SchurError):
    pass


class IntPolynomial:
    """Sparse multivariate polynomial with arbitrary-precision integer
    coefficients; keys are exponent tuples of fixed length nvars."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c: int) -> "IntPolynomial":
        return cls(nvars, {(0,) * nvars: c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, IntPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            w = out.get(e, 0) + c
            if w:
                out[e] = w
            else:
                del out[e]
        return IntPolynomial(self.nvars, out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "IntPolynomial":
        if c == 0:
            return IntPolynomial(self.nvars, {})
        return IntPolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                w = get(key, 0) + ca * cb
                if w:
                    out[key] = w
                else:
                    del out[key]
        return IntPolynomial(self.nvars, out)

    def leading(self) -> tuple[tuple[int, ...], int]:
        e = max(self.terms)
        return e, self.terms[e]

    def total_degree_set(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def swap_vars(self, i: int, j: int) -> "IntPolynomial":
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i], le[j] = le[j], le[i]
            key = tuple(le)
            out[key] = out.get(key, 0) + c
        return IntPolynomial(self.nvars, out)

    def drop_last_var(self) -> "IntPolynomial":
        """Set the last variable to zero (keeps terms with exponent 0 there)."""
        out = {e[:-1]: c for e, c in self.terms.items() if e[-1] == 0}
        return IntPolynomial(self.nvars - 1, out)

    def evaluate(self, point) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= x**k
            total += v
        return total

    def __repr__(self):
        return f"IntPolynomial({self.nvars}, {len(self.terms)} terms)"


def _validate_strict(shape: tuple[int, ...]):
    if any(p <= 0 for p in shape) or any(
        a <= b for a, b in zip(shape, shape[1:])
    ):
        raise SchurError(f"{shape} is not a strict partition")


def _marked_tableau_weights(shape, N, primes_on_diagonal):
    """Accumulate x^weight over marked shifted semistandard tableaux.

    Letters are encoded as 2v-1 (primed v) and 2v (unprimed v).  A letter
    above forbids equality iff it is unprimed; a letter to the left forbids
    equality iff it is primed.
    """
    weights: dict[tuple[int, ...], int] = {}
    rows = len(shape)
    if rows == 0:
        return {(0,) * N: 1}
    # cell list in row-major order with (row, col) in shifted coordinates
    cells = [(i, i + j) for i in range(1, rows + 1) for j in range(shape[i - 1])]
    grid: dict[tuple[int, int], int] = {}
    wt = [0] * N

    def fill(pos: int):
        if pos == len(cells):
            key = tuple(wt)
            weights[key] = weights.get(key, 0) + 1
            return
        r, c = cells[pos]
        lo = 1
        left = grid.get((r, c - 1))
        if left is not None:
            lo = max(lo, left + (left & 1))        # odd key = primed: strict in rows
        up = grid.get((r - 1, c))
        if up is not None:
            lo = max(lo, up + 1 - (up & 1))        # even key = unprimed: strict in columns
        for key in range(lo, 2 * N + 1):
            if not primes_on_diagonal and r == c and key & 1:
                continue
            v = (key + 1) // 2
            grid[(r, c)] = key
            wt[v - 1] += 1
            fill(pos + 1)
            wt[v - 1] -= 1
        grid.pop((r, c), None)

    fill(0)
    return weights


def _shifted_cells(shape: tuple[int, ...]) -> set[tuple[int, int]]:
    return {
        (r, c)
        for r, p in enumerate(shape, start=1)
        for c in range(r, r + p)
    }


@lru_cache(maxsize=None)
def _strip_choices(prev: tuple[int, ...], new: tuple[int, ...]):
    """Number of markings of the one-letter strip new/prev, with and without
    primes allowed on the diagonal: (count_q, count_p, size).

    Within one letter the tableau rules collapse to: a primed cell must be
    the leftmost of its row run, and a cell with a strip cell directly below
    it is forced primed; every unforced leftmost cell is a free prime.
    """
    cells = _shifted_cells(new) - _shifted_cells(prev)
    if not cells:
        return 1, 1, 0
    prevpad = prev + (0,) * (len(new) - len(prev))
    leftmost = set()
    for r, p in enumerate(new, start=1):
        lo = r + prevpad[r - 1]
        if lo <= r + p - 1:
            leftmost.add((r, lo))
    free_q = free_p = 0
    for (r, c) in cells:
        if (r + 1, c) in cells:  # forced primed
            if (r, c) not in leftmost:
                return 0, 0, len(cells)
        elif (r, c) in leftmost:
            free_q += 1
            if c > r:
                free_p += 1
    return 2**free_q, 2**free_p, len(cells)


@lru_cache(maxsize=None)
def _strip_successors(prev: tuple[int, ...], bound: tuple[int, ...]):
    """All strict shapes between prev and bound reachable by one letter,
    with their marking counts; a single letter adds at most one new row."""
    L = len(bound)
    prevpad = prev + (0,) * (L - len(prev))
    max_rows = min(L, len(prev) + 1)
    out = []

    def rec(r: int, acc: tuple[int, ...]):
        if r == max_rows:
            shape = tuple(p for p in acc if p)
            cq, cp, size = _strip_choices(prev, shape)
            if cq:
                out.append((shape, cq, cp, size))
            return
        lo = prevpad[r]
        if r > 0 and acc[r - 1] == 0:
            hi = 0
        elif r > 0:
            hi = min(bound[r], acc[r - 1] - 1)
        else:
            hi = bound[r]
        for v in range(lo, hi + 1):
            rec(r + 1, acc + (v,))

    rec(0, ())
    return tuple(out)


@lru_cache(maxsize=None)
def schur_P(shape: tuple[int, ...], N: int) -> IntPolynomial:
    """Schur P-polynomial in N variables (zero if the shape has > N rows).

    Computed by scanning the alphabet letter by letter: a tableau is a chain
    of strict shapes, one marked strip per letter, so the defining sum over
    tableaux regroups into a dynamic program over (letter, shape) pairs.
    The raw cell-by-cell enumeration is kept alongside as the reference.
    """
    _validate_strict(shape)
    if N < 1:
        raise SchurError("need at least one variable")
    if len(shape) > N:
        return IntPolynomial(N, {})
    states: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {(): {(): 1}}
    for step in range(N):
        nxt: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        remaining = N - step - 1
        for prev, poly in states.items():
            for gamma, _cq, cp, size in _strip_successors(prev, shape):
                if not cp:
                    continue
                if len(shape) - len(gamma) > remaining:
                    continue
                target = nxt.setdefault(gamma, {})
                for exp, coeff in poly.items():
                    key = exp + (size,)
                    target[key] = target.get(key, 0) + coeff * cp
        states = nxt
    return IntPolynomial(N, states.get(shape, {}))


def schur_P_by_enumeration(shape: tuple[int, ...], N: int) -> IntPolynomial:
    """Reference implementation: sum over individual marked tableaux with an
    unprimed diagonal; exponentially slower, used to validate the scan."""
    _validate_strict(shape)
    if len(shape) > N:
        return IntPolynomial(N, {})
    return IntPolynomial(N, _marked_tableau_weights(shape, N, primes_on_diagonal=False))


@lru_cache(maxsize=None)
def schur_Q(shape: tuple[int, ...], N: int) -> IntPolynomial:
    """Schur Q-polynomial: 2^(number of rows) times the P-polynomial."""
    return schur_P(shape, N).scaled(2 ** len(shape))


def schur_P_from_Q(shape: tuple[int, ...], N: int) -> IntPolynomial:
    """Divide the Q-polynomial exactly by 2^(rows); the division failing
    would mean the tableau model is broken."""
    q = schur_Q(shape, N)
    denom = 2 ** len(shape)
    out = {}
    for e, c in q.terms.items():
        if c % denom:
            raise NonDivisible(f"coefficient {c} of {e} not divisible by {denom}")
        out[e] = c // denom
    return IntPolynomial(N, out)


def marked_tableau_polynomial(shape: tuple[int, ...], N: int) -> IntPolynomial:
    """Direct sum over all marked tableaux (primes allowed on the diagonal);
    kept as an independent cross-check that Q = 2^rows * P."""
    _validate_strict(shape)
    if len(shape) > N:
        return IntPolynomial(N, {})
    return IntPolynomial(N, _marked_tableau_weights(shape, N, primes_on_diagonal=True))


def expand_in_basis(
    p: IntPolynomial, basis: str, degree: int
) -> dict[tuple[int, ...], int]:
    """Exact expansion of a homogeneous symmetric polynomial in the P- or
    Q-basis by lexicographic leading-term elimination.

    The leading monomial of the lam-term is x^lam (P) or 2^rows * x^lam (Q);
    the residual must reach zero, otherwise the variable count was too small
    for the shapes present.
    """
    if basis not in ("P", "Q"):
        raise SchurError(f"unknown basis {basis!r}")
    degs = p.total_degree_set()
    if degs and degs != {degree}:
        raise NotHomogeneous(f"degrees {sorted(degs)} != {{{degree}}}")
    N = p.nvars
    result: dict[tuple[int, ...], int] = {}
    residual = p
    for _ in range(100_000):
        if residual.is_zero():
            return result
        exp, coeff = residual.leading()
        shape = tuple(x for x in exp if x)
        if exp != shape + (0,) * (N - len(shape)) or any(
            a <= b for a, b in zip(shape, shape[1:])
        ):
            raise ResidualNonzero(f"leading monomial {exp} is not a strict partition")
        if basis == "P":
            c = coeff
            basis_poly = schur_P(shape, N)
        else:
            denom = 2 ** len(shape)
            if coeff % denom:
                raise ResidualNonzero(
                    f"leading coefficient {coeff} not divisible by {denom}"
                )
            c = coeff // denom
            basis_poly = schur_Q(shape, N)
        lead_exp, lead_coeff = basis_poly.leading()
        if lead_exp != exp[: len(shape)] + (0,) * (N - len(shape)):
            raise ResidualNonzero("triangularity violated")
        if lead_coeff != (1 if basis == "P" else 2 ** len(shape)):
            raise ResidualNonzero("leading coefficient violated")
        result[shape] = result.get(shape, 0) + c
        residual = residual - basis_poly.scaled(c)
    raise ResidualNonzero("elimination failed to terminate")


def oracle_product(
    family: str, mu: SignedSequence, m: int, n: int
) -> ClassExpansion:
    """The product of the mu-class with the m-th special class, computed by
    multiplying the corresponding symmetric polynomials and re-expanding.

    Shapes wider than n fall out of the cohomology ring and are dropped
    after the expansion.
    """
    if not 1 <= m <= n:
        raise BadM(f"m={m} outside 1..{n}")
    if mu.n != n:
        raise SchurError(f"{mu} has rank {mu.n}, expected {n}")
    degree = mu.codim + m
    if degree > n * (n + 1) // 2:
        # no strict partition with at most n parts, all of size at most n,
        # reaches this degree, so every term of the product is truncated
        return ClassExpansion(family, n, {})
    pos = mu.positive_parts
    N = len(pos) + 1
    if family == "B":
        prod = schur_P(pos, N) * schur_P((m,), N)
        coeffs = expand_in_basis(prod, "P", degree)
    elif family == "C":
        prod = schur_Q(pos, N) * schur_Q((m,), N)
        coeffs = expand_in_basis(prod, "Q", degree)
    else:
        raise SchurError(f"unknown family {family!r}")
    terms = {}
    for shape, c in coeffs.items():
        if shape and shape[0] > n:
            continue
        terms[from_positive_parts(n, shape)] = c
    return ClassExpansion(family, n, terms)


# ---------------------------------------------------------------------------
# classical (unshifted) Schur polynomials and the hook triple degree


def _ssyt_weights(shape: tuple[int, ...], N: int) -> dict[tuple[int, ...], int]:
    weights: dict[tuple[int, ...], int] = {}
    rows = len(shape)
    if rows == 0:
        return {(0,) * N: 1}
    if rows > N:
        return {}
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, shape[i - 1] + 1)]
    grid: dict[tuple[int, int], int] = {}
    wt = [0] * N

    def fill(pos: int):
        if pos == len(cells):
            key = tuple(wt)
            weights[key] = weights.get(key, 0) + 1
            return
        r, c = cells[pos]
        lo = max(grid.get((r, c - 1), 1), grid.get((r - 1, c), 0) + 1)
        for v in range(lo, N + 1):
            grid[(r, c)] = v
            wt[v - 1] += 1
            fill(pos + 1)
            wt[v - 1] -= 1
        grid.pop((r, c), None)

    fill(0)
    return weights


@lru_cache(maxsize=None)
def classical_schur(shape: tuple[int, ...], N: int) -> IntPolynomial:
    """Classical Schur polynomial from semistandard tableaux in N variables."""
    if any(p < 0 for p in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise SchurError(f"{shape} is not a partition")
    shape = tuple(p for p in shape if p)
    return IntPolynomial(N, _ssyt_weights(shape, N))


def expand_in_classical_basis(
    p: IntPolynomial, degree: int
) -> dict[tuple[int, ...], int]:
    degs = p.total_degree_set()
    if degs and degs != {degree}:
        raise NotHomogeneous(f"degrees {sorted(degs)} != {{{degree}}}")
    N = p.nvars
    result: dict[tuple[int, ...], int] = {}
    residual = p
    for _ in range(100_000):
        if residual.is_zero():
            return result
        exp, coeff = residual.leading()
        shape = tuple(x for x in exp if x)
        if any(a < b for a, b in zip(exp, exp[1:])):
            raise ResidualNonzero(f"leading monomial {exp} is not a partition")
        result[shape] = result.get(shape, 0) + coeff
        residual = residual - classical_schur(shape, N).scaled(coeff)
    raise ResidualNonzero("elimination failed to terminate")


def hook_partition(arm: int, leg: int) -> tuple[int, ...]:
    """Hook with one row of length arm and first column of length leg."""
    return (arm,) + (1,) * (leg - 1)


@lru_cache(maxsize=None)
def _hook_product_expansion(tau: tuple[int, ...], k: int, n: int):
    hook = hook_partition(n - k, k)
    prod = classical_schur(tau, k) * classical_schur(hook, k)
    return expand_in_classical_basis(prod, sum(tau) + n - 1)


def classical_triple_degree(
    tau: tuple[int, ...], sigma: tuple[int, ...], k: int, n: int
) -> int:
    """Coefficient of the sigma-class in (tau-class) * (hook-class) for the
    Grassmannian of k-planes in n-space, by honest polynomial arithmetic."""
    if k < 1 or n - k < 1:
        raise BoxViolation(f"degenerate Grassmannian sizes k={k}, n={n}")
    tau = tuple(x for x in tau if x)
    sigma = tuple(x for x in sigma if x)
    for t in (tau, sigma):
        if len(t) > k or (t and t[0] > n - k):
            raise BoxViolation(f"{t} escapes the {k}x{n - k} box")
        if any(a < b for a, b in zip(t, t[1:])):
            raise BoxViolation(f"{t} is not a partition")
    padded_tau = tau + (0,) * (len(sigma) - len(tau))
    if len(tau) > len(sigma) or any(a > b for a, b in zip(padded_tau, sigma)):
        raise BoxViolation(f"{tau} not contained in {sigma}")
    return _hook_product_expansion(tau, k, n).get(sigma, 0)


def hook_strip_degree(
    tau: tuple[int, ...], sigma: tuple[int, ...], k: int, n: int
) -> int:
    """Independent route to the same number: count chains tau -> rho -> sigma
    where rho/tau is a horizontal strip of n-k boxes and sigma/rho a vertical
    strip of k-1 boxes."""
    tau = tuple(x for x in tau if x)
    sigma = tuple(x for x in sigma if x)
    tau = tau + (0,) * (len(sigma) - len(tau))
    if sum(sigma) - sum(tau) != n - 1:
        return 0
    count = 0
    # rho ranges over partitions between tau and sigma
    def rec(i, rho):
        nonlocal count
        if i == len(sigma):
            rho = tuple(rho)
            if sum(rho) - sum(tau) != n - k:
                return
            # horizontal strip: columns distinct, i.e. rho interlaces tau
            for j in range(len(rho) - 1):
                if rho[j + 1] > tau[j]:
                    return
            # vertical strip: at most one box per row
            if any(s - r > 1 for s, r in zip(sigma, rho)):
                return
            count += 1
            return
        lo, hi = tau[i], sigma[i]
        upper = hi if i == 0 else min(hi, rho[i - 1])
        for v in range(lo, upper + 1):
            rec(i + 1, rho + [v])

    rec(0, [])
    return count


def strict_partitions_of(d: int, max_part: int) -> list[tuple[int, ...]]:
    """All strict partitions of d with parts bounded by max_part."""
    out = []

    def rec(remaining, biggest, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(remaining, biggest), 0, -1):
            rec(remaining - p, p - 1, acc + [p])

    rec(d, max_part, [])
    return out


def boxes_of(shape: tuple[int, ...]) -> set[tuple[int, int]]:
    return partition_boxes(shape)

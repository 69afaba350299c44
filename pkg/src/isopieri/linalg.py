"""Exact linear algebra over the rationals and over odd prime fields.

Matrices are plain sequences of rows; a row is a sequence of field elements.
Elements are `fractions.Fraction` over QQ and canonical ints in [0, p) over
GF(p).  All routines are exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class RationalField:
    """Arithmetic facade over fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RationalField)


QQ = RationalField()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) for an odd prime p; elements are ints reduced mod p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p == 2:
            # characteristic 2 breaks the quadratic-form bookkeeping downstream
            raise FieldError("characteristic 2 is not supported")
        self.p = p
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def rref(rows, field):
    """Reduced row echelon form.

    Returns (rows, pivots) with zero rows dropped, pivot entries equal to 1
    and pivot columns cleared.  The output is the canonical representative
    of the row space: two inputs span the same space iff outputs coincide.
    """
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != field.one:
            inv = field.inv(piv)
            m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = tuple(tuple(row) for row in m[:r])
    return out, tuple(pivots)


def rank(rows, field) -> int:
    return len(rref(rows, field)[0])


def kernel_basis(rows, field, ncols=None):
    """Canonical basis of the right kernel {v : M v = 0}, as RREF rows."""
    if rows:
        ncols = len(rows[0])
    if ncols is None:
        raise ValueError("ncols required for an empty system")
    red, pivots = rref(rows, field)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for i, pcol in enumerate(pivots):
            v[pcol] = field.neg(red[i][fcol])
        basis.append(v)
    return rref(basis, field)[0]


def solve_linear(rows, rhs, field):
    """One solution x of M x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(rhs) else ()
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    for r, row in enumerate(red):
        if r >= len(pivots) or pivots[r] == ncols:
            return None  # pivot in the rhs column
    x = [field.zero] * ncols
    for r, pcol in enumerate(pivots):
        x[pcol] = red[r][ncols]
    return tuple(x)


def mat_vec(rows, v, field):
    return tuple(
        _dot(row, v, field)
        for row in rows
    )


def _dot(a, b, field):
    s = field.zero
    for x, y in zip(a, b):
        if x and y:
            s = field.add(s, field.mul(x, y))
    return s


def lin_combo(coeffs, rows, field):
    """Sum of coeffs[i] * rows[i]."""
    n = len(rows[0])
    out = [field.zero] * n
    for c, row in zip(coeffs, rows):
        if not c:
            continue
        for j, x in enumerate(row):
            if x:
                out[j] = field.add(out[j], field.mul(c, x))
    return tuple(out)


def in_row_space(v, rref_rows, pivots, field):
    """Whether v lies in the span of rows already in RREF."""
    resid = list(v)
    for row, pcol in zip(rref_rows, pivots):
        c = resid[pcol]
        if c:
            for j, x in enumerate(row):
                if x:
                    resid[j] = field.sub(resid[j], field.mul(c, x))
    return not any(resid)

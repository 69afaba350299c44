"""Embedded worked examples used by the verification suite.

The rank-4 triple-intersection fixture: one pair of index sequences, a
fixed isotropic 3-plane per family, and the two-parameter chart of the
two-variety intersection.  The rank-6 solver fixture pins the closed-form
solution of the isotropy equations.

Note on the symplectic 3-plane: the quoted matrix is isotropic and its
first two rows do lie on the form locus, but the whole pencil through them
does as well (the locus has one quadratic form fewer than in the orthogonal
family, and this plane is tangent to it).  It therefore carries more than
the two expected lines; SYMPLECTIC_K_GENERAL is a transverse replacement
that keeps the first row and the chart parameters 0 and 1.
"""

from __future__ import annotations

from .intersect import bilinear_space
from .geometry import Subspace, span
from .shapes import SignedSequence, signed_sequence

# rank-4 pair: the product fixture with coefficients (2, 1) / (2, 2)
TRIPLE_MU = signed_sequence(4, (3, 2, -1, -4))
TRIPLE_LAM = signed_sequence(4, (4, 2, 1, -3))
TRIPLE_LAM_SECOND = signed_sequence(4, (4, 3, -1, -2))

# columns e_{-4} .. e_4
ORTHOGONAL_K_ROWS = (
    (0, 1, 0, 1, 0, 0, 1, 0, 1),
    (1, 1, 0, 1, 2, -2, 1, 1, -1),
    (0, 0, 1, 0, 0, -1, 0, 0, 0),
)

# columns f_{-4} .. f_{-1}, f_1 .. f_4
SYMPLECTIC_K_ROWS = (
    (0, 1, 0, 1, 0, 1, 0, 1),
    (1, 1, 0, 1, 2, 1, -1, 1),
    (0, 0, 1, 0, 1, 0, 0, 0),
)

# transverse symplectic replacement: same first row, lines at parameters
# (0,0) and (1,1), and exactly two lines on the locus
SYMPLECTIC_K_GENERAL_ROWS = (
    (0, 1, 0, 1, 0, 1, 0, 1),
    (3, 3, 0, 2, 4, 1, -1, 1),
    (0, 0, 4, 1, 4, 0, 0, 0),
)


def orthogonal_K(field) -> Subspace:
    space = bilinear_space("B", 4)
    return span(space, field, [[field(x) for x in r] for r in ORTHOGONAL_K_ROWS])


def symplectic_K(field, general: bool = False) -> Subspace:
    space = bilinear_space("C", 4)
    rows = SYMPLECTIC_K_GENERAL_ROWS if general else SYMPLECTIC_K_ROWS
    return span(space, field, [[field(x) for x in r] for r in rows])


def orthogonal_chart_member(x, z, field) -> Subspace:
    """Row span of the displayed two-parameter chart of the orthogonal
    intersection; lies in it for every x, z."""
    space = bilinear_space("B", 4)
    two = field(2)
    g1 = space.vector({3: field.neg(x), 4: field(1)}, field)
    g2 = space.vector({2: field(1)}, field)
    g3 = space.vector(
        {-1: field(1), 0: field.mul(two, z),
         1: field.neg(field.mul(two, field.mul(z, z)))},
        field,
    )
    g4 = space.vector({-4: x, -3: field(1)}, field)
    return span(space, field, [g1, g2, g3, g4])


def symplectic_chart_member(x, z, field) -> Subspace:
    space = bilinear_space("C", 4)
    g1 = space.vector({3: field.neg(x), 4: field(1)}, field)
    g2 = space.vector({2: field(1)}, field)
    g3 = space.vector({-1: field(1), 1: field.add(z, z)}, field)
    g4 = space.vector({-4: x, -3: field(1)}, field)
    return span(space, field, [g1, g2, g3, g4])


def chart_parameters(H: Subspace, family: str, field):
    """Solve for (x, z) in the chart convention above, given a member."""
    for x in (field(0), field(1)):
        for z in (field(0), field(1)):
            member = (
                orthogonal_chart_member(x, z, field)
                if family == "B"
                else symplectic_chart_member(x, z, field)
            )
            if member == H:
                return x, z
    return None


# rank-6 solver fixture: the chain shape whose isotropy equations have the
# closed-form solution below
SOLVER_LAM = signed_sequence(6, (6, 5, 3, 1, -2, -4))
SOLVER_MU = signed_sequence(6, (5, 3, 1, -2, -4, -6))


def solver_closed_forms(xs: dict, field) -> dict:
    """y_2 = -x_1/x_2, y_3 = -x_2, y_4 = -y_3 x_3 / x_4, y_5 = -x_4,
    y_6 = -x_5 y_5 (needs x_2, x_4 nonzero)."""
    y2 = field.neg(field.div(xs[1], xs[2]))
    y3 = field.neg(xs[2])
    y4 = field.neg(field.div(field.mul(y3, xs[3]), xs[4]))
    y5 = field.neg(xs[4])
    y6 = field.neg(field.mul(xs[5], y5))
    return {2: y2, 3: y3, 4: y4, 5: y5, 6: y6}


def pencil_candidates(dim: int, radius: int = 2):
    """All small coefficient tuples against a basis of the given size."""
    from itertools import product

    for coeffs in product(range(-radius, radius + 1), repeat=dim):
        if any(coeffs):
            yield coeffs

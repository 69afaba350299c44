"""Constructing and counting triple intersections of Schubert varieties.

The locus cut out by one coordinate form per fixed row and one quadratic
form per component confines every member of the two-variety intersection.
A general vector of that locus determines a unique member through it; the
reconstruction here is verification-driven: each block is solved by exact
triangular linear algebra and the promised memberships are asserted before
anything is returned, with failures reported as a degenerate sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .geometry import (
    BilinearSpace,
    BudgetExceeded,
    DEFAULT_SUBSPACE_BUDGET,
    GeometryError,
    Subspace,
    coordinate_span,
    dim_intersection,
    in_schubert,
    in_special,
    is_isotropic,
    projective_points,
    quadratic_value,
    random_isotropic_subspace,
    span,
)
from .linalg import PrimeField, kernel_basis, lin_combo, rank
from .pieri import CodimMismatch, triple_degree_prediction
from .shapes import (
    FirstColumnComponent,
    SignedSequence,
    SkewShape,
    bruhat_leq,
    component_subproblem,
    first_column_subproblem,
    is_skew_row,
    skew,
)


class IntersectError(ValueError):
    pass


class SingularPivot(IntersectError):
    pass


class Stuck(IntersectError):
    pass


class Unnormalizable(IntersectError):
    pass


class DegenerateVector(IntersectError):
    pass


class NeverStabilized(IntersectError):
    pass


class NotInIntersection(IntersectError):
    pass


@lru_cache(maxsize=None)
def bilinear_space(family: str, n: int) -> BilinearSpace:
    return BilinearSpace(family, n)


@dataclass(frozen=True)
class QuadraticForm:
    """x_0^2 + 2*sum x_c x_{-c} over the columns when the component touches
    column 1 (family B), else the scalar-normalized sum x_c x_{-c}."""

    cols: tuple[int, ...]
    with_zero: bool


@dataclass(frozen=True)
class FormSystem:
    family: str
    n: int
    alphas: tuple[int, ...]  # coordinates forced to vanish
    betas: tuple[QuadraticForm, ...]

    @property
    def space(self) -> BilinearSpace:
        return bilinear_space(self.family, self.n)

    @property
    def form_count(self) -> int:
        return len(self.alphas) + len(self.betas)


def build_Z(s: SkewShape, family: str) -> FormSystem:
    """The common zero locus data for the pair (mu, lam) of one family."""
    alphas = [-s.mu.entries[j - 1] for j in sorted(s.fixed_indices)]
    if family == "B" and s.zero_is_fixed:
        alphas.append(0)
    betas = []
    for d in s.components:
        cols = tuple(sorted(c for c in d.col_set if c >= 1))
        if d.meets_first_column:
            if family == "B":
                betas.append(QuadraticForm(cols, with_zero=True))
            # family C: the first-column component contributes no form
        else:
            betas.append(QuadraticForm(cols, with_zero=False))
    return FormSystem(family, s.n, tuple(sorted(alphas)), tuple(betas))


def beta_value(fs: FormSystem, beta: QuadraticForm, v, field):
    space = fs.space
    s = field.zero
    for c in beta.cols:
        a, b = v[space.idx(c)], v[space.idx(-c)]
        if a and b:
            s = field.add(s, field.mul(a, b))
    if beta.with_zero:
        z = v[space.idx(0)]
        return field.add(field.mul(z, z), field.add(s, s))
    return s


def member_of_Z(fs: FormSystem, v, field) -> bool:
    space = fs.space
    for c in fs.alphas:
        if v[space.idx(c)]:
            return False
    for beta in fs.betas:
        if beta_value(fs, beta, v, field):
            return False
    if fs.family == "B":
        # the ambient quadric lies in the ideal of the forms; check, not trust
        assert not quadratic_value(space, v, field), "form ideal misses the quadric"
    return True


def _rand(field, rng):
    if isinstance(field, PrimeField):
        return rng.randrange(field.p)
    return field(rng.randint(-9, 9))


def _rand_nonzero(field, rng):
    while True:
        x = _rand(field, rng)
        if x:
            return x


def sample_Z_vector(fs: FormSystem, s: SkewShape, family: str, field, rng):
    """A random vector of the locus: nonzero fixed coordinates, one random
    point of each component quadric (all but one coordinate free, the last
    solved linearly), and a free block for the first-column component in
    family C."""
    entries: dict[int, object] = {}
    for j in sorted(s.fixed_indices):
        entries[s.mu.entries[j - 1]] = _rand_nonzero(field, rng)
    for d in s.components:
        cols = sorted(c for c in d.col_set if c >= 1)
        c0 = max(cols)
        if d.meets_first_column and family == "C":
            for c in cols:
                entries[c] = _rand_nonzero(field, rng)
                entries[-c] = _rand_nonzero(field, rng)
            continue
        acc = field.zero
        for c in cols:
            entries[c] = _rand_nonzero(field, rng)
        for c in cols:
            if c != c0:
                entries[-c] = _rand_nonzero(field, rng)
                acc = field.add(acc, field.mul(entries[c], entries[-c]))
        if d.meets_first_column:  # family B: x_0^2 + 2*sum = 0
            x0 = _rand_nonzero(field, rng)
            entries[0] = x0
            num = field.add(field.mul(x0, x0), field.add(acc, acc))
            entries[-c0] = field.neg(field.div(num, field.add(entries[c0], entries[c0])))
        else:
            entries[-c0] = field.neg(field.div(acc, entries[c0]))
    return fs.space.vector(entries, field)


# ---------------------------------------------------------------------------
# the local chart for a single component through column 1


def _require_reduced(lam: SignedSequence, mu: SignedSequence):
    s = skew(mu, lam)
    if not is_skew_row(s):
        raise IntersectError("chart needs a skew row")
    if len(s.components) != 1 or not s.components[0].meets_first_column:
        raise IntersectError("chart needs a unique component through column 1")
    if s.fixed_indices:
        raise IntersectError("chart forbids fixed rows")
    return s


def normalize_last_row(
    lam: SignedSequence, mu: SignedSequence
) -> tuple[SignedSequence, SignedSequence, bool]:
    """Return an equivalent pair whose last positive row has length 1; the
    flag says the coordinate involution c -> -c was applied."""
    _require_reduced(lam, mu)
    k = len(mu.positive_parts)
    if lam.entries[k] == 1:
        return lam, mu, False
    lam2, mu2 = mu.complement(), lam.complement()
    _require_reduced(lam2, mu2)
    k2 = len(mu2.positive_parts)
    if lam2.entries[k2] != 1:
        raise Unnormalizable(f"neither {lam}/{mu} nor its mirror ends in a unit row")
    return lam2, mu2, True


def chart_vectors(
    lam: SignedSequence, mu: SignedSequence, xs: dict, ys: dict, family: str, field
) -> list[dict]:
    """The n chart basis vectors as coordinate dicts, rows 1..k supported on
    positive intervals with the x-parameters, row k+1 carrying the special
    column-1 block, deeper rows the y-parameters."""
    n = lam.n
    k = len(mu.positive_parts)
    rows = []
    for i in range(1, k + 1):
        li, mi = lam.entries[i - 1], mu.entries[i - 1]
        entry = {li: field(1)}
        for c in range(mi, li):
            entry[c] = xs[c]
        rows.append(entry)
    x0 = xs[0]
    mk1 = mu.entries[k]
    if family == "B":
        m2 = field.mul(field(2), field.mul(x0, x0))
        entry = {1: field.neg(m2), 0: field.add(x0, x0), -1: field(1)}
    else:
        entry = {1: x0, -1: field(1)}
    for c in range(mk1, -1):
        entry[c] = ys[-c]
    rows.append(entry)
    for i in range(k + 2, n + 1):
        li, mi = lam.entries[i - 1], mu.entries[i - 1]
        entry = {li: field(1)}
        for c in range(mi, li):
            entry[c] = ys[-c]
        rows.append(entry)
    return rows


def solve_ys(
    lam: SignedSequence, mu: SignedSequence, xs: dict, family: str, field
) -> dict:
    """The unique y-parameters making the chart span isotropic.

    Every orthogonality equation between a positive row and a deep row is
    affine in the y's; repeatedly solve any equation left with exactly one
    undetermined y and an invertible coefficient.
    """
    _require_reduced(lam, mu)
    k = len(mu.positive_parts)
    n = lam.n
    if lam.entries[k] != 1:
        raise IntersectError("chart needs last positive row of length 1")
    # positive rows as coordinate dicts
    pos_rows = []
    for i in range(1, k + 1):
        li, mi = lam.entries[i - 1], mu.entries[i - 1]
        entry = {li: field(1)}
        for c in range(mi, li):
            entry[c] = xs[c]
        pos_rows.append(entry)
    # deep rows: pivot coordinate and y-support
    deep = []
    mk1 = mu.entries[k]
    deep.append((-1, list(range(mk1, -1))))
    for i in range(k + 2, n + 1):
        deep.append((lam.entries[i - 1], list(range(mu.entries[i - 1], lam.entries[i - 1]))))
    equations = []  # (const, {t: coeff})
    for g in pos_rows:
        for pivot, ysupp in deep:
            const = g.get(-pivot, field.zero)
            coeffs = {}
            for c in ysupp:
                a = g.get(-c, field.zero)
                if a:
                    coeffs[-c] = a
            if coeffs or const:
                equations.append((const, coeffs))
    unknowns = set(range(2, n + 1))
    known: dict[int, object] = {}
    pending = equations
    while unknowns - set(known):
        progress = False
        still = []
        for const, coeffs in pending:
            c = const
            open_terms = {}
            for t, a in coeffs.items():
                if t in known:
                    c = field.add(c, field.mul(a, known[t]))
                else:
                    open_terms[t] = a
            if not open_terms:
                if c:
                    raise SingularPivot("inconsistent isotropy equation")
                continue
            if len(open_terms) == 1:
                (t, a), = open_terms.items()
                if not a:
                    if c:
                        raise SingularPivot(f"coefficient of y_{t} vanished")
                    continue
                known[t] = field.neg(field.div(c, a))
                progress = True
                continue
            still.append((const, coeffs))
        pending = still
        if not progress:
            raise Stuck(f"cannot determine y for {sorted(unknowns - set(known))}")
    for const, coeffs in equations:
        c = const
        for t, a in coeffs.items():
            c = field.add(c, field.mul(a, known[t]))
        if c:
            raise SingularPivot("solved y-values violate an isotropy equation")
    return {t: known[t] for t in sorted(unknowns)}


def _chain_solve(lam_pos, mu_pos, vplus, vminus, field):
    """Triangular solve of the interval chart against a vector: pivots give
    the combination coefficients, interior columns give x directly, and the
    orthogonality of each row against the negative part gives the shared
    left-end x."""
    k = len(lam_pos)
    for i in range(k - 1):
        if lam_pos[i + 1] != mu_pos[i]:
            raise IntersectError("interval chain broken")
    if mu_pos[-1] != 1:
        raise IntersectError("interval chain must reach column 1")
    alphas = []
    xs: dict[int, object] = {}
    for i in range(k):
        li, mi = lam_pos[i], mu_pos[i]
        if i == 0:
            a = vplus[li]
        else:
            a = field.sub(vplus[li], field.mul(alphas[i - 1], xs[li]))
        if not a:
            raise DegenerateVector("vanishing pivot coefficient")
        alphas.append(a)
        acc = vminus[li]
        for c in range(mi + 1, li):
            xs[c] = field.div(vplus[c], a)
            if vminus[c]:
                acc = field.add(acc, field.mul(xs[c], vminus[c]))
        if not vminus[mi]:
            raise DegenerateVector("vanishing mirror coordinate")
        xs[mi] = field.neg(field.div(acc, vminus[mi]))
    return alphas, xs


def _reconstruct_component(vplus, vminus, lam_d, mu_d, field) -> list[dict]:
    """The unique maximal isotropic block through the sampled component
    vector: a positive interval chart plus its orthogonal negative block."""
    p = lam_d.n
    k = len(mu_d.positive_parts)
    lam_pos = lam_d.entries[:k]
    mu_pos = mu_d.entries[:k]
    alphas, xs = _chain_solve(lam_pos, mu_pos, vplus, vminus, field)
    if field.sub(vplus[1], field.mul(alphas[-1], xs[1])):
        raise DegenerateVector("column-1 consistency failed")
    rows = []
    mat = []
    for i in range(k):
        li, mi = lam_pos[i], mu_pos[i]
        entry = {li: field(1)}
        for c in range(mi, li):
            entry[c] = xs[c]
        rows.append(entry)
        mat.append(tuple(entry.get(c, field.zero) for c in range(1, p + 1)))
    for w in kernel_basis(mat, field, ncols=p):
        rows.append({-c: w[c - 1] for c in range(1, p + 1) if w[c - 1]})
    return rows


def _reconstruct_first_column(v0: dict, lam0, mu0, family: str, field) -> list[dict]:
    lam1, mu1, swapped = normalize_last_row(lam0, mu0)
    u = dict(v0)
    if swapped:
        u = {-c: val for c, val in u.items()}
    scale = u.get(-1, field.zero)
    if not scale:
        raise DegenerateVector("vanishing leading coordinate")
    inv = field.inv(scale)
    u = {c: field.mul(inv, val) for c, val in u.items()}
    l = lam1.n
    k = len(mu1.positive_parts)
    two = field(2)
    if family == "B":
        z = field.div(u.get(0, field.zero), two)
    else:
        z = u.get(1, field.zero)
    if k == 0:
        xs = {0: z}
    else:
        vplus = {c: u.get(c, field.zero) for c in range(1, l + 1)}
        vminus = {c: u.get(-c, field.zero) for c in range(1, l + 1)}
        if family == "B":
            zz = field.mul(two, field.mul(z, z))
            vplus[1] = field.add(vplus[1], zz)
        alphas, xs = _chain_solve(lam1.entries[:k], mu1.entries[:k], vplus, vminus, field)
        residual = field.sub(vplus[1], field.mul(alphas[-1], xs[1]))
        if family == "B":
            if residual:
                raise DegenerateVector("column-1 consistency failed")
            xs[0] = z
        else:
            xs[0] = residual
    ys = solve_ys(lam1, mu1, xs, family, field) if k else {}
    rows = chart_vectors(lam1, mu1, xs, ys, family, field)
    if swapped:
        rows = [{-c: val for c, val in r.items()} for r in rows]
    return rows


def reconstruct(
    v, lam: SignedSequence, mu: SignedSequence, family: str, field
) -> Subspace:
    """The unique maximal isotropic subspace through v lying in both
    Schubert varieties; raises DegenerateVector when the sample is bad."""
    s = skew(mu, lam)
    if not is_skew_row(s):
        raise IntersectError("reconstruction needs a skew row")
    space = bilinear_space(family, lam.n)
    fs = build_Z(s, family)
    if not member_of_Z(fs, v, field):
        raise DegenerateVector("vector lies outside the form locus")
    vectors = []
    for j in sorted(s.fixed_indices):
        vectors.append(space.vector({mu.entries[j - 1]: 1}, field))
    for d in s.components:
        if d.meets_first_column:
            continue
        mu_d, lam_d = component_subproblem(s, d)
        a = min(d.col_set)
        p = lam_d.n
        vplus = {r: v[space.idx(r + a - 1)] for r in range(1, p + 1)}
        vminus = {r: v[space.idx(-(r + a - 1))] for r in range(1, p + 1)}
        try:
            rows = _reconstruct_component(vplus, vminus, lam_d, mu_d, field)
        except (SingularPivot, Stuck) as e:
            raise DegenerateVector(str(e)) from e
        for r in rows:
            entries = {}
            for c, val in r.items():
                entries[(abs(c) + a - 1) * (1 if c > 0 else -1)] = val
            vectors.append(space.vector(entries, field))
    d0 = s.first_column_component()
    if d0 is not None:
        mu0, lam0 = first_column_subproblem(s)
        l = lam0.n
        v0 = {}
        for c in range(1, l + 1):
            v0[c] = v[space.idx(c)]
            v0[-c] = v[space.idx(-c)]
        if family == "B":
            v0[0] = v[space.idx(0)]
        try:
            rows = _reconstruct_first_column(v0, lam0, mu0, family, field)
        except (SingularPivot, Stuck) as e:
            raise DegenerateVector(str(e)) from e
        for r in rows:
            vectors.append(space.vector(r, field))
    H = span(space, field, vectors)
    if H.dim != lam.n:
        raise DegenerateVector("assembled blocks are dependent")
    if not H.contains_vector(v):
        raise DegenerateVector("assembled subspace misses the vector")
    if not is_isotropic(H):
        raise DegenerateVector("assembled subspace is not isotropic")
    if not in_schubert(mu, H):
        raise DegenerateVector("first membership failed")
    if not in_schubert(lam.complement(), H, primed=True):
        raise DegenerateVector("second membership failed")
    return H


def monic(v, field):
    lead = next((x for x in v if x), None)
    if lead is None:
        return None
    inv = field.inv(lead)
    return tuple(field.mul(inv, x) for x in v)


def lines_in_K(
    K: Subspace,
    fs: FormSystem,
    candidates=None,
    budget: int = DEFAULT_SUBSPACE_BUDGET,
) -> list[tuple]:
    """All lines of K inside the form locus; over GF(p) by sweeping the
    projective points of K, over the rationals from caller candidates
    (coefficient tuples against K's basis rows)."""
    field = K.field
    if candidates is None:
        if not isinstance(field, PrimeField):
            raise GeometryError("rational line search needs explicit candidates")
        total = (field.p**K.dim - 1) // (field.p - 1)
        if total > budget:
            raise BudgetExceeded(f"{total} projective points exceed budget {budget}")
        points = projective_points(K)
    else:
        points = (lin_combo(tuple(field(c) for c in coeffs), K.rows, field)
                  for coeffs in candidates)
    seen = set()
    out = []
    for v in points:
        w = monic(v, field)
        if w is None or w in seen:
            continue
        seen.add(w)
        if member_of_Z(fs, w, field):
            out.append(w)
    return sorted(out)


@dataclass(frozen=True)
class TripleCount:
    count: int
    retries: int


def triple_count(
    mu: SignedSequence,
    lam: SignedSequence,
    m: int,
    family: str,
    field,
    rng,
    retries: int = 20,
    members: list[Subspace] | None = None,
    fixed_K: Subspace | None = None,
    candidates=None,
) -> TripleCount:
    """Number of members of the two-variety intersection meeting a general
    isotropic (n+1-m)-plane, counted by line reconstruction and, when the
    enumerated member list is supplied, cross-checked against it.

    The plane is resampled until the count matches the predicted value, so
    the retry count is part of the result; never stabilizing is an error.
    """
    if lam.codim != mu.codim + m:
        raise CodimMismatch(f"|{lam}| != |{mu}| + {m}")
    n = mu.n
    space = bilinear_space(family, n)
    prediction = triple_degree_prediction(family, mu, lam, m)
    comparable = bruhat_leq(mu, lam)
    s = skew(mu, lam) if comparable else None
    fs = build_Z(s, family) if comparable else None
    skew_row = comparable and is_skew_row(s)
    last = None
    for attempt in range(retries):
        K = fixed_K if fixed_K is not None else random_isotropic_subspace(
            space, field, n + 1 - m, rng
        )
        enum_count = None
        enum_set = None
        if members is not None:
            enum_set = {H for H in members if in_special(K, H)}
            enum_count = len(enum_set)
        if skew_row:
            lines = lines_in_K(K, fs, candidates=candidates)
            try:
                recon = {reconstruct(w, lam, mu, family, field) for w in lines}
            except DegenerateVector as e:
                last = f"degenerate sample: {e}"
                continue
            count = len(recon)
            if enum_set is not None and enum_set != recon:
                last = "enumeration and reconstruction disagree"
                continue
        elif comparable:
            lines = lines_in_K(K, fs, candidates=candidates)
            if enum_count is not None:
                count = enum_count
            elif not lines:
                count = 0  # no locus line in K, so no member meets K
            else:
                last = "cannot certify a nonzero count without enumeration"
                continue
        else:
            count = enum_count if enum_count is not None else 0
        if count == prediction:
            return TripleCount(count, attempt)
        last = f"count {count} != predicted {prediction}"
        if fixed_K is not None:
            break
    raise NeverStabilized(
        f"{family}: {mu} -> {lam} (m={m}) did not stabilize: {last}"
    )


def remark_transfer(H: Subspace, mu: SignedSequence, lam: SignedSequence) -> Subspace:
    """Carry a member of the orthogonal intersection to the symplectic one by
    dropping the 0-coordinate, legal when no component touches column 1."""
    s = skew(mu, lam)
    if s.first_column_component() is not None:
        raise FirstColumnComponent("a component meets column 1")
    if H.space.family != "B":
        raise IntersectError("transfer starts from the orthogonal family")
    if not (in_schubert(mu, H) and in_schubert(lam.complement(), H, primed=True)):
        raise NotInIntersection("input is not in the intersection")
    i0 = H.space.idx(0)
    if any(r[i0] for r in H.rows):
        raise NotInIntersection("member uses the 0-coordinate")
    space_c = bilinear_space("C", H.space.n)
    rows = tuple(r[:i0] + r[i0 + 1 :] for r in H.rows)
    HC = Subspace(space_c, H.field, rows)
    if not is_isotropic(HC):
        raise NotInIntersection("image is not isotropic")
    if not (in_schubert(mu, HC) and in_schubert(lam.complement(), HC, primed=True)):
        raise NotInIntersection("image left the intersection")
    return HC


# ---------------------------------------------------------------------------
# helpers for the classical reduction and for decomposition checks


def in_classical_schubert(rows, tau, k: int, n: int, field, dual: bool = False) -> bool:
    """Membership of a k-plane (rows over n positive coordinates) in the
    classical Schubert variety for tau, or its opposite-flag version."""
    tau = tuple(tau) + (0,) * (k - len(tau))
    kdim = len(rows)
    for j in range(1, k + 1):
        if not dual:
            start = k + 1 - j + tau[j - 1]  # span e_start..e_n
            outside = [r[: start - 1] for r in rows]
        else:
            end = j + tau[k - j]  # span e_1..e_end
            outside = [r[end:] for r in rows]
        if kdim - rank(outside, field) < j:
            return False
    return True


def block_dimensions(H: Subspace, s: SkewShape) -> dict:
    """Dimensions of the intersections of H with the coordinate blocks of
    the shape: fixed block, first-column block, and one (minus, plus) pair
    per remaining component."""
    space, field = H.space, H.field
    fixed_coords = [s.mu.entries[j - 1] for j in sorted(s.fixed_indices)]
    out = {
        "fixed": dim_intersection(
            H, coordinate_span(space, field, fixed_coords)
        )
        if fixed_coords
        else 0
    }
    comps = []
    for d in s.components:
        cols = sorted(c for c in d.col_set if c >= 1)
        if d.meets_first_column:
            coords = [c for c in cols] + [-c for c in cols]
            if space.family == "B":
                coords.append(0)
            out["zero_block"] = dim_intersection(
                H, coordinate_span(space, field, coords)
            )
        else:
            minus = dim_intersection(H, coordinate_span(space, field, cols))
            plus = dim_intersection(
                H, coordinate_span(space, field, [-c for c in cols])
            )
            comps.append({"cols": len(cols), "rows": len(d.rows), "minus": minus, "plus": plus})
    out["components"] = comps
    return out

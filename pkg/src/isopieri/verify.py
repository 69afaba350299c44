"""Verification sweeps: each function checks one global identity end to end
and returns a small report; the CLI and the acceptance tests are thin
wrappers over these."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from . import fixtures
from .geometry import (
    coordinate_span,
    enumerate_maximal_isotropic,
    is_isotropic,
    profile_in_schubert,
    rank_profiles,
    span,
)
from .intersect import (
    DegenerateVector,
    NeverStabilized,
    bilinear_space,
    build_Z,
    lines_in_K,
    member_of_Z,
    reconstruct,
    remark_transfer,
    sample_Z_vector,
    solve_ys,
    chart_vectors,
    triple_count,
)
from .linalg import GF, QQ
from .pieri import multiply_special, pieri, single_class, triple_degree_prediction
from .schur import oracle_product
from .shapes import (
    all_sequences,
    bruhat_leq,
    counts,
    is_skew_row,
    signed_sequence,
    skew,
)

DEFAULT_SEED = 20240817


def split_rng(root_seed: int, *tags) -> random.Random:
    """A reproducible per-instance stream derived from one root seed."""
    digest = hashlib.sha256(repr((root_seed,) + tags).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class Report:
    name: str
    ok: bool
    details: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "details": self.details,
            "failures": self.failures,
        }


@lru_cache(maxsize=None)
def enumerated_with_profiles(family: str, n: int, p: int):
    space = bilinear_space(family, n)
    subs = enumerate_maximal_isotropic(space, p)
    return tuple((H, rank_profiles(H)) for H in subs)


@lru_cache(maxsize=None)
def intersection_members(family: str, n: int, p: int, mu, lam) -> tuple:
    space = bilinear_space(family, n)
    lamc = lam.complement()
    return tuple(
        H
        for H, prof in enumerated_with_profiles(family, n, p)
        if profile_in_schubert(space, prof, mu, False)
        and profile_in_schubert(space, prof, lamc, True)
    )


# --- criterion 1 -----------------------------------------------------------

def fixture_expansions() -> Report:
    mu = fixtures.TRIPLE_MU
    lam1, lam2 = fixtures.TRIPLE_LAM, fixtures.TRIPLE_LAM_SECOND
    failures = []
    b = pieri("B", mu, 2)
    if not (b.terms == {lam1: 2, lam2: 1}):
        failures.append(f"orthogonal expansion gave {b}")
    c = pieri("C", mu, 2)
    if not (c.terms == {lam1: 2, lam2: 2}):
        failures.append(f"symplectic expansion gave {c}")
    return Report("fixture-expansions", not failures, {}, failures)


# --- criterion 2 -----------------------------------------------------------

def oracle_equivalence(max_n: int = 5, families=("B", "C")) -> Report:
    failures = []
    instances = 0
    for n in range(1, max_n + 1):
        seqs = all_sequences(n)
        for m in range(1, n + 1):
            for mu in seqs:
                for fam in families:
                    instances += 1
                    rule = pieri(fam, mu, m)
                    oracle = oracle_product(fam, mu, m, n)
                    if rule != oracle:
                        failures.append(
                            f"{fam} n={n} mu={mu} m={m}: rule {rule} vs oracle {oracle}"
                        )
    return Report(
        "oracle-equivalence", not failures, {"instances": instances}, failures
    )


# --- criterion 3 -----------------------------------------------------------

def duality_enumeration(p: int = 3, max_n: int = 3, families=("B", "C")) -> Report:
    failures = []
    pairs = 0
    fld = GF(p)
    for fam in families:
        for n in range(1, max_n + 1):
            space = bilinear_space(fam, n)
            seqs = all_sequences(n)
            for mu in seqs:
                for lam in seqs:
                    if mu.codim != lam.codim:
                        continue
                    pairs += 1
                    pts = intersection_members(fam, n, p, mu, lam)
                    if mu == lam:
                        expected = coordinate_span(space, fld, mu.entries)
                        if len(pts) != 1 or pts[0] != expected:
                            failures.append(
                                f"{fam} n={n} {mu}: expected the coordinate span, got {len(pts)} points"
                            )
                    elif pts:
                        failures.append(
                            f"{fam} n={n} {mu} vs {lam}: {len(pts)} unexpected points"
                        )
    return Report("duality-enumeration", not failures, {"pairs": pairs}, failures)


# --- criterion 4 -----------------------------------------------------------

def triple_count_sweep(
    p: int = 5,
    n: int = 3,
    seed: int = DEFAULT_SEED,
    retries: int = 20,
    families=("B", "C"),
) -> Report:
    failures = []
    fld = GF(p)
    instances = 0
    max_retries_seen = 0
    for fam in families:
        seqs = all_sequences(n)
        for mu in seqs:
            for lam in seqs:
                m = lam.codim - mu.codim
                if not 1 <= m <= n:
                    continue
                instances += 1
                members = list(intersection_members(fam, n, p, mu, lam))
                rng = split_rng(seed, "triple", fam, mu.entries, lam.entries)
                try:
                    res = triple_count(
                        mu, lam, m, fam, fld, rng, retries=retries, members=members
                    )
                except NeverStabilized as e:
                    failures.append(str(e))
                    continue
                max_retries_seen = max(max_retries_seen, res.retries)
                expected = triple_degree_prediction(fam, mu, lam, m)
                if res.count != expected:
                    failures.append(
                        f"{fam} {mu}->{lam}: count {res.count} != {expected}"
                    )
    return Report(
        "triple-counts",
        not failures,
        {"instances": instances, "max_retries": max_retries_seen, "seed": seed},
        failures,
    )


# --- criterion 5 -----------------------------------------------------------

def rational_fixture_orthogonal() -> Report:
    failures = []
    fld = QQ
    mu, lam = fixtures.TRIPLE_MU, fixtures.TRIPLE_LAM
    K = fixtures.orthogonal_K(fld)
    if not is_isotropic(K) or K.dim != 3:
        failures.append("the quoted 3-plane is not isotropic")
    fs = build_Z(skew(mu, lam), "B")
    lines = lines_in_K(K, fs, candidates=fixtures.pencil_candidates(3))
    expected = sorted(
        filter(
            None,
            (
                _monic_of(fixtures.ORTHOGONAL_K_ROWS[0], "B", fld),
                _monic_of(fixtures.ORTHOGONAL_K_ROWS[1], "B", fld),
            ),
        )
    )
    if lines != expected:
        failures.append(f"expected the 2 quoted lines, found {len(lines)}")
    params = []
    for w in lines:
        H = reconstruct(w, lam, mu, "B", fld)
        got = fixtures.chart_parameters(H, "B", fld)
        if got is None:
            failures.append("reconstruction left the displayed chart")
        else:
            params.append((str(got[0]), str(got[1])))
    if params != [("0", "0"), ("1", "1")]:
        failures.append(f"chart parameters {params} != ((0,0),(1,1))")
    return Report(
        "rational-fixture-orthogonal", not failures, {"lines": len(lines)}, failures
    )


def _monic_of(int_row, family: str, fld):
    from .intersect import monic

    return monic(tuple(fld(x) for x in int_row), fld)


def rational_fixture_symplectic(general_K: bool = False) -> Report:
    """With the quoted plane this honestly fails the exactly-two-lines claim
    (see the module note in fixtures); with general_K=True the transverse
    replacement plane is used and everything holds."""
    failures = []
    fld = QQ
    mu, lam = fixtures.TRIPLE_MU, fixtures.TRIPLE_LAM
    K = fixtures.symplectic_K(fld, general=general_K)
    if not is_isotropic(K) or K.dim != 3:
        failures.append("the 3-plane is not isotropic")
    fs = build_Z(skew(mu, lam), "C")
    lines = lines_in_K(K, fs, candidates=fixtures.pencil_candidates(3))
    rows = (
        fixtures.SYMPLECTIC_K_GENERAL_ROWS if general_K else fixtures.SYMPLECTIC_K_ROWS
    )
    quoted = [_monic_of(rows[0], "C", fld), _monic_of(rows[1], "C", fld)]
    for w in quoted:
        if w not in lines:
            failures.append("a quoted line is not on the locus")
    if len(lines) != 2:
        failures.append(f"expected exactly 2 lines, found {len(lines)}")
    params = []
    for w in quoted:
        H = reconstruct(w, lam, mu, "C", fld)
        got = fixtures.chart_parameters(H, "C", fld)
        if got is None:
            failures.append("reconstruction left the displayed chart")
        else:
            params.append((str(got[0]), str(got[1])))
    if params != [("0", "0"), ("1", "1")]:
        failures.append(f"chart parameters {params} != ((0,0),(1,1))")
    return Report(
        "rational-fixture-symplectic" + ("-general" if general_K else ""),
        not failures,
        {"lines": len(lines), "general_K": general_K},
        failures,
    )


# --- criterion 6 -----------------------------------------------------------

def solver_fixture(seed: int = DEFAULT_SEED, trials: int = 100) -> Report:
    failures = []
    lam, mu = fixtures.SOLVER_LAM, fixtures.SOLVER_MU
    rng = split_rng(seed, "solver")
    for t in range(trials):
        xs = {}
        for i in range(6):
            val = Fraction(rng.randint(-9, 9))
            if i in (2, 4):
                while val == 0:
                    val = Fraction(rng.randint(-9, 9))
            xs[i] = val
        for fam in ("B", "C"):
            ys = solve_ys(lam, mu, xs, fam, QQ)
            expected = fixtures.solver_closed_forms(xs, QQ)
            if ys != expected:
                failures.append(f"trial {t} {fam}: {ys} != {expected}")
                continue
            rows = chart_vectors(lam, mu, xs, ys, fam, QQ)
            space = bilinear_space(fam, 6)
            H = span(space, QQ, [space.vector(r, QQ) for r in rows])
            if H.dim != 6 or not is_isotropic(H):
                failures.append(f"trial {t} {fam}: chart span not isotropic")
    return Report("solver-fixture", not failures, {"trials": trials}, failures)


# --- criterion 7 -----------------------------------------------------------

def column_count_identities(max_n: int = 6) -> Report:
    failures = []
    pairs = 0
    for n in range(1, max_n + 1):
        seqs = all_sequences(n)
        for mu in seqs:
            for lam in seqs:
                if not bruhat_leq(mu, lam):
                    continue
                pairs += 1
                s = skew(mu, lam)
                cnt = counts(s)
                ncols = len(s.occupied_columns)
                if n + 1 != cnt.phi + cnt.delta + ncols:
                    failures.append(f"orthogonal identity fails for {mu} <= {lam}")
                if n != cnt.psi + cnt.eps + ncols:
                    failures.append(f"symplectic identity fails for {mu} <= {lam}")
    return Report("column-count-identities", not failures, {"pairs": pairs}, failures)


# --- criterion 8 -----------------------------------------------------------

def iterated_commutativity(max_n: int = 5, families=("B", "C")) -> Report:
    failures = []
    instances = 0
    for n in range(1, max_n + 1):
        seqs = all_sequences(n)
        for fam in families:
            for mu in seqs:
                base = single_class(fam, mu)
                for a in range(1, n + 1):
                    ea = multiply_special(base, a)
                    for b in range(1, n + 1):
                        instances += 1
                        left = multiply_special(ea, b)
                        right = multiply_special(multiply_special(base, b), a)
                        if left != right:
                            failures.append(f"{fam} n={n} {mu} a={a} b={b}")
    return Report(
        "iterated-commutativity", not failures, {"instances": instances}, failures
    )


# --- criterion 9 -----------------------------------------------------------

def reconstruction_singleton(
    p: int = 5,
    n: int = 3,
    seed: int = DEFAULT_SEED,
    samples: int = 5,
    retries: int = 20,
    families=("B", "C"),
) -> Report:
    failures = []
    fld = GF(p)
    shapes = 0
    checked = 0
    for fam in families:
        space = bilinear_space(fam, n)
        seqs = all_sequences(n)
        for mu in seqs:
            for lam in seqs:
                if not bruhat_leq(mu, lam):
                    continue
                s = skew(mu, lam)
                if not is_skew_row(s):
                    continue
                shapes += 1
                members = intersection_members(fam, n, p, mu, lam)
                fs = build_Z(s, fam)
                rng = split_rng(seed, "singleton", fam, mu.entries, lam.entries)
                for slot in range(samples):
                    for _ in range(retries):
                        v = sample_Z_vector(fs, s, fam, fld, rng)
                        try:
                            H = reconstruct(v, lam, mu, fam, fld)
                        except DegenerateVector:
                            continue
                        through = [G for G in members if G.contains_vector(v)]
                        if len(through) == 1 and through[0] == H:
                            checked += 1
                            break
                        failures.append(
                            f"{fam} {mu}->{lam}: {len(through)} members through sample"
                        )
                        break
                    else:
                        failures.append(
                            f"{fam} {mu}->{lam} slot {slot}: no usable sample in {retries} tries"
                        )
    return Report(
        "reconstruction-singleton",
        not failures,
        {"shapes": shapes, "checked": checked, "seed": seed},
        failures,
    )


# --- criterion 10 ----------------------------------------------------------

def transfer_equivalence(p: int = 3, max_n: int = 2) -> Report:
    failures = []
    pairs = 0
    for n in range(1, max_n + 1):
        seqs = all_sequences(n)
        for mu in seqs:
            for lam in seqs:
                if not bruhat_leq(mu, lam):
                    continue
                s = skew(mu, lam)
                if s.first_column_component() is not None:
                    continue
                pairs += 1
                xs = intersection_members("B", n, p, mu, lam)
                ys = intersection_members("C", n, p, mu, lam)
                if len(xs) != len(ys):
                    failures.append(
                        f"n={n} {mu}->{lam}: point counts {len(xs)} vs {len(ys)}"
                    )
                    continue
                images = {remark_transfer(H, mu, lam) for H in xs}
                if len(images) != len(xs) or images != set(ys):
                    failures.append(f"n={n} {mu}->{lam}: transfer is not a bijection")
    return Report("transfer-equivalence", not failures, {"pairs": pairs}, failures)


ALL_CRITERIA = (
    ("1 fixture expansions", lambda: fixture_expansions()),
    ("2 oracle equivalence (n<=5)", lambda: oracle_equivalence(5)),
    ("3 duality enumeration (F3, n<=3)", lambda: duality_enumeration(3, 3)),
    ("4 triple counts (F5, n=3)", lambda: triple_count_sweep(5, 3)),
    ("5a rational fixture, orthogonal", lambda: rational_fixture_orthogonal()),
    ("5b rational fixture, symplectic", lambda: rational_fixture_symplectic()),
    ("6 solver fixture", lambda: solver_fixture()),
    ("7 column count identities (n<=6)", lambda: column_count_identities(6)),
    ("8 iterated commutativity (n<=5)", lambda: iterated_commutativity(5)),
    ("9 reconstruction singleton (F5, n=3)", lambda: reconstruction_singleton()),
    ("10 transfer equivalence (F3, n<=2)", lambda: transfer_equivalence()),
)

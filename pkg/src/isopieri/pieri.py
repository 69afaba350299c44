"""Multiplication of a Schubert class by a special class, in both families.

Family B is the odd orthogonal Grassmannian, family C the Lagrangian one.
The product of a basis class with the m-th special class expands over skew
rows of m boxes with coefficients 2^(delta-1) resp. 2^eps, where delta
counts components of the skew diagram and eps those avoiding column 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .shapes import (
    SignedSequence,
    bruhat_leq,
    counts,
    enumerate_pieri_targets,
    is_skew_row,
    skew,
)

FAMILIES = ("B", "C")


class PieriError(ValueError):
    pass


class BadM(PieriError):
    pass


class FamilyMismatch(PieriError):
    pass


class CodimMismatch(PieriError):
    pass


@dataclass(frozen=True)
class ClassExpansion:
    """A finite integer combination of Schubert classes of one family."""

    family: str
    n: int
    terms: dict[SignedSequence, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyMismatch(f"unknown family {self.family!r}")
        for lam, c in self.terms.items():
            if lam.n != self.n:
                raise CodimMismatch(f"term {lam} has rank {lam.n}, expected {self.n}")
            if c == 0:
                raise PieriError("zero coefficient stored")

    def items_sorted(self) -> list[tuple[SignedSequence, int]]:
        return sorted(self.terms.items(), key=lambda kv: (-kv[0].codim, kv[0].entries))

    def coefficient(self, lam: SignedSequence) -> int:
        return self.terms.get(lam, 0)

    def scaled(self, c: int) -> "ClassExpansion":
        if c == 0:
            return ClassExpansion(self.family, self.n, {})
        return ClassExpansion(self.family, self.n, {k: c * v for k, v in self.terms.items()})

    def __add__(self, other: "ClassExpansion") -> "ClassExpansion":
        if self.family != other.family:
            raise FamilyMismatch(f"{self.family} + {other.family}")
        if self.n != other.n:
            raise CodimMismatch("expansions of different rank")
        merged = dict(self.terms)
        for k, v in other.terms.items():
            w = merged.get(k, 0) + v
            if w:
                merged[k] = w
            else:
                merged.pop(k, None)
        return ClassExpansion(self.family, self.n, merged)

    def __eq__(self, other):
        return (
            isinstance(other, ClassExpansion)
            and self.family == other.family
            and self.n == other.n
            and self.terms == other.terms
        )

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "terms": [
                {"lambda": list(lam.entries), "coeff": c}
                for lam, c in self.items_sorted()
            ],
        }

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{lam}" for lam, c in self.items_sorted())


def single_class(family: str, lam: SignedSequence, coeff: int = 1) -> ClassExpansion:
    return ClassExpansion(family, lam.n, {lam: coeff})


def pieri(family: str, mu: SignedSequence, m: int) -> ClassExpansion:
    """Expansion of the product of the mu-class with the m-th special class."""
    if family not in FAMILIES:
        raise FamilyMismatch(f"unknown family {family!r}")
    if not 1 <= m <= mu.n:
        raise BadM(f"m={m} outside 1..{mu.n}")
    terms = {}
    for lam in enumerate_pieri_targets(mu, m):
        cnt = counts(skew(mu, lam))
        terms[lam] = 2 ** (cnt.delta - 1) if family == "B" else 2**cnt.eps
    return ClassExpansion(family, mu.n, terms)


def multiply_special(e: ClassExpansion, m: int) -> ClassExpansion:
    out = ClassExpansion(e.family, e.n, {})
    for mu, c in e.terms.items():
        out = out + pieri(e.family, mu, m).scaled(c)
    return out


def duality_pair(family: str, mu: SignedSequence, lam: SignedSequence) -> int:
    """Intersection pairing of the mu-class with the class dual to lam."""
    if family not in FAMILIES:
        raise FamilyMismatch(f"unknown family {family!r}")
    if mu.codim != lam.codim:
        raise CodimMismatch(f"|{mu}| = {mu.codim} != {lam.codim} = |{lam}|")
    return 1 if mu == lam else 0


def triple_degree_prediction(
    family: str, mu: SignedSequence, lam: SignedSequence, m: int
) -> int:
    """Predicted number of points of the triple intersection with a general
    special variety: 0 unless lam/mu is a skew row, else a power of 2."""
    if family not in FAMILIES:
        raise FamilyMismatch(f"unknown family {family!r}")
    if lam.codim != mu.codim + m:
        raise CodimMismatch(f"|{lam}| != |{mu}| + {m}")
    if not bruhat_leq(mu, lam):
        return 0
    s = skew(mu, lam)
    if not is_skew_row(s):
        return 0
    cnt = counts(s)
    return 2 ** (cnt.delta - 1) if family == "B" else 2**cnt.eps

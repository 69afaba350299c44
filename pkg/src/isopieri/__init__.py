"""Exact multiplication by special Schubert classes in the cohomology of
maximal isotropic Grassmannians, checked three independent ways: the
combinatorial rule, Schur P-/Q-polynomial products, and literal counting of
triple intersections of Schubert varieties over exact fields."""

from .linalg import GF, QQ
from .pieri import ClassExpansion, duality_pair, multiply_special, pieri, triple_degree_prediction
from .schur import classical_triple_degree, oracle_product, schur_P, schur_Q
from .shapes import (
    SignedSequence,
    SkewShape,
    bruhat_leq,
    classical_shadow,
    complement,
    counts,
    enumerate_pieri_targets,
    from_positive_parts,
    is_skew_row,
    one_box_per_diagonal,
    signed_sequence,
    skew,
)
from .geometry import (
    BilinearSpace,
    Subspace,
    enumerate_maximal_isotropic,
    form_value,
    in_schubert,
    in_special,
    is_isotropic,
    random_isotropic_subspace,
    span,
)
from .intersect import (
    FormSystem,
    build_Z,
    lines_in_K,
    member_of_Z,
    normalize_last_row,
    reconstruct,
    remark_transfer,
    sample_Z_vector,
    solve_ys,
    triple_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

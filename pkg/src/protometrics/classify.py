"""Full taxonomy classification of a labeled matrix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .checks import (
    DEFAULT_WITNESS_CAP,
    PropertyVerdict,
    Status,
    check_prequadrangle,
    check_strict,
    check_triangle,
)
from .errors import PreconditionError
from .matrix import DEFAULT_TOLERANCE, InequalityType, LabeledMatrix, ToleranceConfig
from .transforms import potential_of

__all__ = ["REPORT_FLAGS", "ClassificationReport", "classify"]

# Flag names in report order.
REPORT_FLAGS = (
    "symmetric",
    "nonnegative",
    "zero_diagonal",
    "identity_of_indiscernibles",
    "triangle_o",
    "triangle_i",
    "triangle_t",
    "triangle_c",
    "prequad_o",
    "prequad_i",
    "prequad_t",
    "prequad_c",
    "strict_protometric",
    "zero_protometric",
    "difference_protometric",
    "quasi_semi_metric",
    "semi_metric",
    "metric",
    "potential_difference",
    "symmetric_protometric",
    "weak_partial_pseudo_metric",
)


@dataclass(frozen=True)
class ClassificationReport:
    """Boolean membership flags plus the verdicts they were derived from.

    The flags form an implication chain by construction: metric implies
    semi_metric implies quasi_semi_metric implies difference_protometric
    implies prequad_t, and weak_partial_pseudo_metric implies
    symmetric_protometric, which is the conjunction of the four
    pre-quadrangle flags.
    """

    symmetric: bool
    nonnegative: bool
    zero_diagonal: bool
    identity_of_indiscernibles: bool
    triangle_o: bool
    triangle_i: bool
    triangle_t: bool
    triangle_c: bool
    prequad_o: bool
    prequad_i: bool
    prequad_t: bool
    prequad_c: bool
    strict_protometric: bool
    zero_protometric: bool
    difference_protometric: bool
    quasi_semi_metric: bool
    semi_metric: bool
    metric: bool
    potential_difference: bool
    symmetric_protometric: bool
    weak_partial_pseudo_metric: bool
    triangle: Mapping[InequalityType, PropertyVerdict]
    prequadrangle: Mapping[InequalityType, PropertyVerdict]
    strictness: PropertyVerdict

    @property
    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in REPORT_FLAGS}


def classify(
    M: LabeledMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
    *,
    max_witnesses: int = DEFAULT_WITNESS_CAP,
) -> ClassificationReport:
    """Classify M against the full taxonomy at the given tolerances.

    Deterministic, and invariant under consistent relabeling: flags do not
    change when rows and columns are permuted together, and witnesses are
    permuted accordingly.
    """
    E = M.entries
    n = M.n
    diag = np.diagonal(E)

    symmetric = float(np.abs(E - E.T).max()) <= tol.eps_eq
    nonnegative = float(E.min()) >= -tol.eps_ineq
    zero_diagonal = float(np.abs(diag).max()) <= tol.eps_eq
    off = ~np.eye(n, dtype=bool)
    offdiag_distinct = bool((np.abs(E[off]) > tol.eps_strict).all()) if n > 1 else True
    identity_of_indiscernibles = zero_diagonal and offdiag_distinct

    triangle = {
        ty: check_triangle(M, ty, tol, max_witnesses=max_witnesses) for ty in InequalityType
    }
    prequad = {
        ty: check_prequadrangle(M, ty, tol, max_witnesses=max_witnesses)
        for ty in InequalityType
    }
    strictness = check_strict(M, InequalityType.TRANSITIVE, tol, max_witnesses=max_witnesses)

    t_ok = {ty: triangle[ty].status is Status.PASS for ty in InequalityType}
    q_ok = {ty: prequad[ty].status is Status.PASS for ty in InequalityType}

    prequad_t = q_ok[InequalityType.TRANSITIVE]
    strict_protometric = prequad_t and strictness.status is Status.PASS

    # Degenerate-pair equality: p(x,y) + p(y,x) - p(x,x) - p(y,y) identically 0.
    q = (E + E.T) - (diag[:, None] + diag[None, :])
    zero_protometric = float(np.abs(q).max()) <= tol.eps_eq

    difference_protometric = prequad_t and zero_diagonal
    quasi_semi_metric = difference_protometric and nonnegative
    semi_metric = quasi_semi_metric and symmetric
    metric = semi_metric and identity_of_indiscernibles

    try:
        potential_of(M, tol)
        potential_difference = True
    except PreconditionError:
        potential_difference = False

    symmetric_protometric = all(q_ok.values())
    weak_partial_pseudo_metric = symmetric_protometric and float(diag.min()) >= -tol.eps_ineq

    return ClassificationReport(
        symmetric=symmetric,
        nonnegative=nonnegative,
        zero_diagonal=zero_diagonal,
        identity_of_indiscernibles=identity_of_indiscernibles,
        triangle_o=t_ok[InequalityType.OUTGOING],
        triangle_i=t_ok[InequalityType.INCOMING],
        triangle_t=t_ok[InequalityType.TRANSITIVE],
        triangle_c=t_ok[InequalityType.CYCLIC],
        prequad_o=q_ok[InequalityType.OUTGOING],
        prequad_i=q_ok[InequalityType.INCOMING],
        prequad_t=prequad_t,
        prequad_c=q_ok[InequalityType.CYCLIC],
        strict_protometric=strict_protometric,
        zero_protometric=zero_protometric,
        difference_protometric=difference_protometric,
        quasi_semi_metric=quasi_semi_metric,
        semi_metric=semi_metric,
        metric=metric,
        potential_difference=potential_difference,
        symmetric_protometric=symmetric_protometric,
        weak_partial_pseudo_metric=weak_partial_pseudo_metric,
        triangle=triangle,
        prequadrangle=prequad,
        strictness=strictness,
    )

"""Transforms between the classes: gauges, the protometric/distance bijection,
coordinate extraction, the specialization preorder, and the similarity bridge
(Gromov product, Farris transform, entrywise log)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .checks import Status, check_prequadrangle, check_triangle
from .errors import InputError, PreconditionError, TransitivityError
from .matrix import DEFAULT_TOLERANCE, InequalityType, LabeledMatrix, ToleranceConfig

__all__ = [
    "Decomposition",
    "PreorderResult",
    "ZeroCoordinates",
    "add",
    "affine_gauge",
    "compose",
    "decompose",
    "farris_transform",
    "gromov_product",
    "log_transform",
    "metrize",
    "min_farris_constant",
    "potential_of",
    "specialization_preorder",
    "transpose",
    "zero_coordinates",
]


@dataclass(frozen=True)
class Decomposition:
    """A protometric split into its distance part d and diagonal gauge f."""

    d: LabeledMatrix
    f: dict[str, float]


@dataclass(frozen=True)
class ZeroCoordinates:
    """Separable coordinates of a 0-protometric: p(x,y) = a(x) + b(y).

    The gauge is fixed by b(ref) = 0 where ref is the first label, so the
    coordinates are unique.
    """

    a: dict[str, float]
    b: dict[str, float]
    ref: str


@dataclass(frozen=True)
class PreorderResult:
    """Specialization preorder of a quasi-semi-metric.

    relation holds every ordered pair (x, y) with d(x, y) ~ 0; classes are the
    mutual-reachability blocks, each sorted by label order and listed by first
    member; quotient_order holds the pairs (rep_i, rep_j) between distinct
    classes whose blocks compare.
    """

    relation: tuple[tuple[str, str], ...]
    classes: tuple[tuple[str, ...], ...]
    quotient_order: tuple[tuple[str, str], ...]


def _gauge_vector(M: LabeledMatrix, f: Mapping[str, float], what: str) -> np.ndarray:
    missing = [l for l in M.labels if l not in f]
    if missing:
        raise InputError(f"{what} is missing a value for label {missing[0]!r}")
    extra = [l for l in f if l not in M.labels]
    if extra:
        raise InputError(f"{what} has a value for unknown label {extra[0]!r}")
    vec = np.array([float(f[l]) for l in M.labels], dtype=np.float64)
    if not np.isfinite(vec).all():
        bad = M.labels[int(np.flatnonzero(~np.isfinite(vec))[0])]
        raise InputError(f"{what} has a non-finite value at label {bad!r}")
    return vec


def _check_positive_factor(alpha: float) -> float:
    if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
        raise InputError(f"alpha must be a real number, got {alpha!r}")
    alpha = float(alpha)
    if not (np.isfinite(alpha) and alpha > 0):
        raise InputError(f"alpha must be finite and > 0, got {alpha!r}")
    return alpha


def _require_prequad_t(p: LabeledMatrix, tol: ToleranceConfig, op: str) -> None:
    verdict = check_prequadrangle(p, InequalityType.TRANSITIVE, tol, max_witnesses=1)
    if verdict.status is not Status.PASS:
        w = verdict.witnesses[0]
        raise PreconditionError(
            f"{op} needs a protometric input, but the type-t pre-quadrangle "
            f"inequality fails at (x={w.x!r}, y={w.y!r}, z={w.z!r}): "
            f"lhs={w.lhs!r} < rhs={w.rhs!r}",
            witness=w,
        )


def _require_difference_protometric(d: LabeledMatrix, tol: ToleranceConfig, op: str) -> None:
    diag = np.diagonal(d.entries)
    bad = np.flatnonzero(np.abs(diag) > tol.eps_eq)
    if bad.size:
        l = d.labels[int(bad[0])]
        raise PreconditionError(
            f"{op} needs a zero-diagonal input, but d({l!r},{l!r}) = {d.entry(l, l)!r}"
        )
    verdict = check_triangle(d, InequalityType.TRANSITIVE, tol, max_witnesses=1)
    if verdict.status is not Status.PASS:
        w = verdict.witnesses[0]
        raise PreconditionError(
            f"{op} needs the type-t triangle inequality, which fails at "
            f"(x={w.x!r}, y={w.y!r}, z={w.z!r}): lhs={w.lhs!r} < rhs={w.rhs!r}",
            witness=w,
        )


def _require_metric(d: LabeledMatrix, tol: ToleranceConfig, op: str) -> None:
    E = d.entries
    n = d.n
    asym = np.abs(E - E.T)
    if float(asym.max()) > tol.eps_eq:
        i, j = map(int, np.unravel_index(np.argmax(asym), asym.shape))
        raise PreconditionError(
            f"{op} needs a metric, but d is not symmetric: "
            f"d({d.labels[i]!r},{d.labels[j]!r}) != d({d.labels[j]!r},{d.labels[i]!r})"
        )
    diag = np.diagonal(E)
    if float(np.abs(diag).max()) > tol.eps_eq:
        i = int(np.argmax(np.abs(diag)))
        raise PreconditionError(
            f"{op} needs a metric, but the diagonal is nonzero at {d.labels[i]!r}"
        )
    if n > 1:
        off = ~np.eye(n, dtype=bool)
        if float(E[off].min()) <= tol.eps_strict:
            i, j = map(int, np.argwhere(off & (E <= tol.eps_strict))[0])
            raise PreconditionError(
                f"{op} needs distinct points at positive distance, but "
                f"d({d.labels[i]!r},{d.labels[j]!r}) = {float(E[i, j])!r}"
            )
    verdict = check_triangle(d, InequalityType.TRANSITIVE, tol, max_witnesses=1)
    if verdict.status is not Status.PASS:
        w = verdict.witnesses[0]
        raise PreconditionError(
            f"{op} needs a metric, but the triangle inequality fails at "
            f"(x={w.x!r}, y={w.y!r}, z={w.z!r}): lhs={w.lhs!r} < rhs={w.rhs!r}",
            witness=w,
        )


def transpose(M: LabeledMatrix) -> LabeledMatrix:
    """Swap the roles of the two arguments: output (x, y) = input (y, x)."""
    return LabeledMatrix(M.labels, M.entries.T)


def add(a: LabeledMatrix, b: LabeledMatrix) -> LabeledMatrix:
    """Entrywise sum of two matrices over the same labels in the same order."""
    if a.labels != b.labels:
        raise InputError(
            "entrywise sum needs identical label sequences, got "
            f"{list(a.labels)!r} and {list(b.labels)!r}"
        )
    return LabeledMatrix(a.labels, a.entries + b.entries)


def affine_gauge(M: LabeledMatrix, alpha: float, f: Mapping[str, float]) -> LabeledMatrix:
    """Positive scaling plus a point gauge: output = alpha * p(x,y) + f(x) + f(y).

    This preserves each pre-quadrangle verdict, since the gauge terms cancel
    from both sides and the scaling is positive.
    """
    alpha = _check_positive_factor(alpha)
    g = _gauge_vector(M, f, "gauge f")
    return LabeledMatrix(M.labels, (alpha * M.entries + g[:, None]) + g[None, :])


def metrize(
    p: LabeledMatrix,
    alpha: float,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> LabeledMatrix:
    """Symmetrized gauge-invariant distance of a protometric.

    d(x,y) = alpha * (p(x,y) + p(y,x) - p(x,x) - p(y,y)). The input must pass
    the type-t pre-quadrangle check. The output is symmetric with a zero
    diagonal, and nonnegative up to the scaled inequality tolerance; strict
    protometrics produce a metric.
    """
    alpha = _check_positive_factor(alpha)
    _require_prequad_t(p, tol, "metrize")
    E = p.entries
    diag = np.diagonal(E)
    sym = E + E.T
    gauge = diag[:, None] + diag[None, :]
    return LabeledMatrix(p.labels, alpha * (sym - gauge))


def compose(
    d: LabeledMatrix,
    f: Mapping[str, float],
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> LabeledMatrix:
    """Build the protometric p(x,y) = (d(x,y) + f(x) + f(y)) / 2.

    d must be a difference protometric: zero diagonal and type-t triangle.
    Inverse of decompose, entry for entry.
    """
    _require_difference_protometric(d, tol, "compose")
    g = _gauge_vector(d, f, "gauge f")
    return LabeledMatrix(d.labels, ((d.entries + g[:, None]) + g[None, :]) * 0.5)


def decompose(p: LabeledMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> Decomposition:
    """Split a protometric into f(x) = p(x,x) and d(x,y) = 2 p(x,y) - p(x,x) - p(y,y).

    d is a difference protometric and compose(d, f) rebuilds p. Inverse of
    compose, entry for entry.
    """
    _require_prequad_t(p, tol, "decompose")
    E = p.entries
    diag = np.diagonal(E)
    d = (E + E) - (diag[:, None] + diag[None, :])
    f = {l: float(diag[i]) for i, l in enumerate(p.labels)}
    return Decomposition(d=LabeledMatrix(p.labels, d), f=f)


def zero_coordinates(
    p: LabeledMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> ZeroCoordinates:
    """Separable coordinates a(x) + b(y) of a 0-protometric.

    With ref the first label: a(x) = p(x, ref) and b(y) = p(ref, y) - p(ref, ref),
    so b(ref) = 0. Raises when the degenerate-pair equality
    p(x,y) + p(y,x) = p(x,x) + p(y,y) fails, and also when the equality holds
    but the entries are not reproduced by a(x) + b(y); the error says which
    condition failed and where.
    """
    E = p.entries
    labels = p.labels
    diag = np.diagonal(E)
    q = (E + E.T) - (diag[:, None] + diag[None, :])
    bad = np.abs(q) > tol.eps_eq
    if bool(bad.any()):
        i, j = map(int, np.argwhere(bad)[0])
        raise PreconditionError(
            "not a 0-protometric: "
            f"p({labels[i]!r},{labels[j]!r}) + p({labels[j]!r},{labels[i]!r}) - "
            f"p({labels[i]!r},{labels[i]!r}) - p({labels[j]!r},{labels[j]!r}) = "
            f"{float(q[i, j])!r} != 0"
        )
    a = E[:, 0]
    b = E[0, :] - E[0, 0]
    resid = np.abs(E - (a[:, None] + b[None, :]))
    bad = resid > tol.eps_eq
    if bool(bad.any()):
        i, j = map(int, np.argwhere(bad)[0])
        raise PreconditionError(
            "not a 0-protometric: entries are not separable as a(x) + b(y); "
            f"residual {float(resid[i, j])!r} at ({labels[i]!r}, {labels[j]!r})"
        )
    return ZeroCoordinates(
        a={l: float(a[i]) for i, l in enumerate(labels)},
        b={l: float(b[i]) for i, l in enumerate(labels)},
        ref=labels[0],
    )


def potential_of(d: LabeledMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> dict[str, float]:
    """Recover h with d(x,y) = h(x) - h(y), gauged by h(ref) = d(ref, ref).

    ref is the first label, so h(x) = d(x, ref). Raises when some entry
    misses h(x) - h(y) by more than eps_eq; h is otherwise unique up to an
    additive constant.
    """
    E = d.entries
    labels = d.labels
    h = E[:, 0]
    resid = np.abs((E - h[:, None]) + h[None, :])
    bad = resid > tol.eps_eq
    if bool(bad.any()):
        i, j = map(int, np.argwhere(bad)[0])
        raise PreconditionError(
            "not a potential difference: "
            f"d({labels[i]!r},{labels[j]!r}) - h({labels[i]!r}) + h({labels[j]!r}) = "
            f"{float(E[i, j] - h[i] + h[j])!r}"
        )
    return {l: float(h[i]) for i, l in enumerate(labels)}


def specialization_preorder(
    d: LabeledMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> PreorderResult:
    """Preorder x <= y iff d(x, y) ~ 0, for a quasi-semi-metric d.

    The relation is reflexive by the zero diagonal and transitive by the
    type-t triangle inequality; both are re-verified on the thresholded
    relation, and a transitivity failure (possible only when the tolerances
    disagree with the data) raises TransitivityError. Ties in the quotient
    construction are broken by label order.
    """
    E = d.entries
    n = d.n
    labels = d.labels
    if float(E.min()) < -tol.eps_ineq:
        i, j = map(int, np.unravel_index(np.argmin(E), E.shape))
        raise PreconditionError(
            "specialization preorder needs a nonnegative matrix, but "
            f"d({labels[i]!r},{labels[j]!r}) = {float(E[i, j])!r}"
        )
    diag = np.diagonal(E)
    if float(np.abs(diag).max()) > tol.eps_eq:
        i = int(np.argmax(np.abs(diag)))
        raise PreconditionError(
            f"specialization preorder needs a zero diagonal, but d({labels[i]!r},{labels[i]!r}) "
            f"= {float(diag[i])!r}"
        )
    verdict = check_triangle(d, InequalityType.TRANSITIVE, tol, max_witnesses=1)
    if verdict.status is not Status.PASS:
        w = verdict.witnesses[0]
        raise PreconditionError(
            "specialization preorder needs the type-t triangle inequality, which fails at "
            f"(x={w.x!r}, y={w.y!r}, z={w.z!r}): lhs={w.lhs!r} < rhs={w.rhs!r}",
            witness=w,
        )
    rel = E <= tol.eps_eq
    if not bool(np.diagonal(rel).all()):
        i = int(np.flatnonzero(~np.diagonal(rel))[0])
        raise TransitivityError(
            f"thresholded relation is not reflexive at {labels[i]!r}; "
            "eps_eq is inconsistent with the verified zero diagonal"
        )
    reach2 = (rel.astype(np.int8) @ rel.astype(np.int8)) > 0  # two-step reachability
    broken = reach2 & ~rel
    if bool(broken.any()):
        x, z = map(int, np.argwhere(broken)[0])
        y = int(np.flatnonzero(rel[x, :] & rel[:, z])[0])
        raise TransitivityError(
            "thresholded relation is not transitive: "
            f"{labels[x]!r} <= {labels[y]!r} <= {labels[z]!r} but "
            f"d({labels[x]!r},{labels[z]!r}) = {float(E[x, z])!r} > eps_eq; "
            "the equality tolerance is inconsistent with the inequality tolerance"
        )
    relation = tuple(
        (labels[i], labels[j]) for i, j in np.argwhere(rel)
    )
    mutual = rel & rel.T
    assigned = [False] * n
    classes: list[tuple[str, ...]] = []
    reps: list[int] = []
    for i in range(n):
        if assigned[i]:
            continue
        members = [j for j in range(n) if mutual[i, j]]
        for j in members:
            assigned[j] = True
        classes.append(tuple(labels[j] for j in members))
        reps.append(i)
    quotient = tuple(
        (labels[ri], labels[rj])
        for ri in reps
        for rj in reps
        if ri != rj and rel[ri, rj]
    )
    return PreorderResult(relation=relation, classes=tuple(classes), quotient_order=quotient)


def gromov_product(
    d: LabeledMatrix,
    x0: str,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> LabeledMatrix:
    """Gromov product of a metric at base point x0.

    G(x,y) = (d(x,x0) + d(y,x0) - d(x,y)) / 2. Nonnegative and symmetric,
    with G(x0, x0) = 0; -G is a symmetric protometric with entries <= 0.
    """
    _require_metric(d, tol, "gromov product")
    i0 = d.index(x0)
    v = d.entries[:, i0]
    return LabeledMatrix(d.labels, ((v[:, None] + v[None, :]) - d.entries) * 0.5)


def farris_transform(
    d: LabeledMatrix,
    x0: str,
    constant: float,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> LabeledMatrix:
    """Constant minus the Gromov product: output (x, y) = C - G(x, y).

    For C at or above min_farris_constant the output is nonnegative and
    satisfies the symmetric triangle inequality. The output diagonal is not
    required to be zero.
    """
    if isinstance(constant, bool) or not isinstance(constant, (int, float)):
        raise InputError(f"constant must be a real number, got {constant!r}")
    constant = float(constant)
    if not np.isfinite(constant):
        raise InputError(f"constant must be finite, got {constant!r}")
    G = gromov_product(d, x0, tol)
    return LabeledMatrix(d.labels, constant - G.entries)


def min_farris_constant(
    d: LabeledMatrix,
    x0: str,
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> float:
    """Least C for which the Farris transform passes triangle plus nonnegativity.

    C = max over ordered triples of G(x,y) + G(x,z) - G(y,z), joined with the
    largest pairwise product and with 0. At this C at least one constraint is
    tight, so any smaller constant breaks a triangle or nonnegativity check.
    """
    G = gromov_product(d, x0, tol).entries
    best = 0.0
    for x in range(d.n):
        row = G[x, :]
        t = float(((row[:, None] + row[None, :]) - G).max())
        if t > best:
            best = t
    pair = float(G.max())
    return max(best, pair, 0.0)


def log_transform(s: LabeledMatrix) -> LabeledMatrix:
    """Entrywise -ln of a strictly positive similarity matrix.

    Maps the transition inequality onto the type-t pre-quadrangle inequality.
    """
    E = s.entries
    if not bool((E > 0).all()):
        i, j = map(int, np.argwhere(~(E > 0))[0])
        raise PreconditionError(
            f"log transform needs strictly positive entries, but "
            f"s({s.labels[i]!r},{s.labels[j]!r}) = {float(E[i, j])!r}"
        )
    return LabeledMatrix(s.labels, -np.log(E))

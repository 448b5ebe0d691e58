"""Labeled square matrices and the tolerance settings shared by every check."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, InvalidMatrixError

__all__ = [
    "DEFAULT_TOLERANCE",
    "InequalityType",
    "Interval",
    "LabeledMatrix",
    "ToleranceConfig",
    "auto_labels",
]


class InequalityType(enum.Enum):
    """The four orientations a triangle-style inequality can take.

    For a function d on ordered pairs and a triple (x, y, z) the left-hand
    sides are:

    - OUTGOING  ("o"): d(x, y) + d(x, z)
    - INCOMING  ("i"): d(y, x) + d(z, x)
    - TRANSITIVE ("t"): d(y, x) + d(x, z)
    - CYCLIC    ("c"): d(z, x) + d(x, y)

    each compared against d(y, z), plus d(x, x) in the pre-quadrangle form.
    """

    OUTGOING = "o"
    INCOMING = "i"
    TRANSITIVE = "t"
    CYCLIC = "c"

    @classmethod
    def parse(cls, code: "InequalityType | str") -> "InequalityType":
        """Coerce a one-letter code (or an existing member) to a member."""
        try:
            return cls(code)
        except ValueError:
            raise InputError(
                f"unknown inequality type {code!r}; expected one of o, i, t, c"
            ) from None


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute comparison tolerances.

    An inequality a >= b passes iff a >= b - eps_ineq, equality holds iff
    |a - b| <= eps_eq, and strictness a > b requires a - b > eps_strict.
    """

    eps_ineq: float = 1e-9
    eps_eq: float = 1e-9
    eps_strict: float = 1e-9

    def __post_init__(self):
        for name in ("eps_ineq", "eps_eq", "eps_strict"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError(f"{name} must be a real number, got {v!r}")
            if not (math.isfinite(v) and v >= 0):
                raise InputError(f"{name} must be finite and nonnegative, got {v!r}")


DEFAULT_TOLERANCE = ToleranceConfig()


def auto_labels(n: int) -> tuple[str, ...]:
    """Default point labels x1..xn, used when input carries none."""
    return tuple(f"x{i + 1}" for i in range(n))


class LabeledMatrix:
    """A finite set of labeled points with a real value on every ordered pair.

    Entries are held as a read-only float64 array. Construction rejects
    non-square data, non-finite values, and empty or duplicate labels.
    """

    __slots__ = ("labels", "entries", "_index")

    def __init__(self, labels: Sequence[str], entries) -> None:
        labels = tuple(labels)
        if not labels:
            raise InvalidMatrixError("a matrix needs at least one point")
        for lbl in labels:
            if not isinstance(lbl, str) or lbl == "":
                raise InvalidMatrixError(f"labels must be nonempty strings, got {lbl!r}")
        if len(set(labels)) != len(labels):
            dup = next(l for i, l in enumerate(labels) if l in labels[:i])
            raise InvalidMatrixError(f"duplicate label {dup!r}")
        try:
            arr = np.array(entries, dtype=np.float64, copy=True)
        except (TypeError, ValueError) as exc:
            raise InvalidMatrixError(f"entries must form a square matrix: {exc}") from None
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidMatrixError(f"entries must form a square matrix, got shape {arr.shape}")
        if arr.shape[0] != len(labels):
            raise InvalidMatrixError(
                f"{len(labels)} labels but a {arr.shape[0]}x{arr.shape[1]} matrix"
            )
        if not np.isfinite(arr).all():
            i, j = map(int, np.argwhere(~np.isfinite(arr))[0])
            raise InvalidMatrixError(
                f"non-finite entry {arr[i, j]!r} at ({labels[i]!r}, {labels[j]!r})"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(labels)})

    def __setattr__(self, name, value):
        raise AttributeError("LabeledMatrix is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"label {label!r} is not a point of this matrix") from None

    def entry(self, x: str, y: str) -> float:
        return float(self.entries[self.index(x), self.index(y)])

    def reordered(self, labels: Iterable[str]) -> "LabeledMatrix":
        """The same matrix with its points listed in a new order."""
        new = tuple(labels)
        if sorted(new) != sorted(self.labels):
            raise InputError("reordered() needs a permutation of the existing labels")
        idx = [self.index(l) for l in new]
        return LabeledMatrix(new, self.entries[np.ix_(idx, idx)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.labels, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"LabeledMatrix(n={self.n}, labels={list(self.labels)!r})"


@dataclass(frozen=True)
class Interval:
    """A closed real interval [lo, hi]; nonempty is judged with eps_eq slack."""

    lo: float
    hi: float
    nonempty: bool

    def contains(self, value: float, eps: float) -> bool:
        return self.lo - eps <= value <= self.hi + eps

"""Unitarily invariant norms as symmetric gauges on singular-value sequences.

Four families are supported: the operator norm, Schatten ``p``-norms, Ky Fan
``k``-norms, and the dyadic gauge ``phi(a) = sum_k a_k^down 2^{-k}``.  Every
norm is evaluated on finite (matrix) spectra; trailing zeros contribute
nothing to any of these gauges, so finite truncation is consistent.

Simon showed that a symmetric norm with the Radon-Riesz property is strictly
increasing.  Whether the converse holds is open, so strictness here is only a
classification flag and no Radon-Riesz machinery exists.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadExponent, DominanceViolated, NegativeEntry
from .linalg import DEFAULT_TOL, as_matrix, svd

__all__ = [
    "NormDescriptor",
    "Witness",
    "parse_norm",
    "parse_norms",
    "rearrange_decreasing",
    "gauge",
    "evaluate_norm",
    "check_strictly_increasing_witness",
]

KINDS = ("operator", "schatten", "kyfan", "dyadic")


@dataclass(frozen=True)
class NormDescriptor:
    kind: str
    param: float | int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.kind == "schatten":
            if self.param is None or not (self.param >= 1):
                raise BadExponent(f"Schatten exponent must be >= 1, got {self.param}")
        elif self.kind == "kyfan":
            if isinstance(self.param, bool) or not isinstance(self.param, (int, np.integer)) or self.param < 1:
                raise BadExponent(f"Ky Fan order must be a positive integer, got {self.param}")
        elif self.param is not None:
            raise ValueError(f"{self.kind} norm takes no parameter")

    @property
    def strictly_increasing(self):
        if self.kind == "dyadic":
            return True
        if self.kind == "schatten":
            return math.isfinite(self.param)
        return False

    @property
    def label(self):
        if self.kind == "operator":
            return "op"
        if self.kind == "dyadic":
            return "dyadic"
        p = self.param
        if self.kind == "schatten" and float(p).is_integer():
            p = int(p)
        return f"{self.kind}:{p}"

    def __str__(self):
        return self.label


def parse_norm(text):
    """Parse ``"op"``, ``"schatten:p"``, ``"kyfan:k"`` or ``"dyadic"``."""
    text = text.strip().lower()
    name, _, arg = text.partition(":")
    if name in ("op", "operator") and not arg:
        return NormDescriptor("operator")
    if name == "dyadic" and not arg:
        return NormDescriptor("dyadic")
    if name == "schatten" and arg:
        try:
            p = float(arg)
        except ValueError:
            raise BadExponent(f"bad Schatten exponent {arg!r}") from None
        return NormDescriptor("schatten", p)
    if name == "kyfan" and arg:
        try:
            k = int(arg)
        except ValueError:
            raise BadExponent(f"bad Ky Fan order {arg!r}") from None
        return NormDescriptor("kyfan", k)
    raise ValueError(f"cannot parse norm {text!r}; expected op, schatten:p, kyfan:k or dyadic")


def parse_norms(text):
    return [parse_norm(t) for t in text.split(",") if t.strip()]


def rearrange_decreasing(v):
    v = np.asarray(v, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("sequence has non-finite entries")
    if np.any(v < 0):
        raise NegativeEntry(f"negative entry {v.min()} in gauge argument")
    return np.sort(v)[::-1]


def gauge(d, seq):
    """Symmetric gauge ``phi`` of a nonnegative sequence."""
    a = rearrange_decreasing(seq)
    if a.size == 0:
        return 0.0
    if d.kind == "operator":
        return float(a[0])
    if d.kind == "kyfan":
        return float(np.sum(a[: d.param]))
    if d.kind == "dyadic":
        return float(np.sum(a * 0.5 ** np.arange(a.size)))
    p = float(d.param)
    if math.isinf(p):
        return float(a[0])
    # scale out the max to avoid overflow for large p
    top = a[0]
    if top == 0.0:
        return 0.0
    return float(top * np.sum((a / top) ** p) ** (1.0 / p))


def evaluate_norm(d, m, tol=DEFAULT_TOL):
    """``||m||_phi`` from the singular spectrum of ``m``."""
    return gauge(d, svd(as_matrix(m), tol).values)


class Witness(enum.Enum):
    VIOLATION = "violation"
    CONSISTENT = "consistent"


def check_strictly_increasing_witness(d, a, b, tol=DEFAULT_TOL):
    """Test one dominated pair ``0 <= a_i <= b_i`` against strictness of ``d``.

    Returns ``Witness.VIOLATION`` when ``phi(a) == phi(b)`` within tolerance
    although ``a`` and ``b`` differ somewhere, which proves ``d`` is not
    strictly increasing.
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    if np.any(a < 0) or np.any(b < 0):
        raise NegativeEntry("gauge arguments must be nonnegative")
    scale = float(np.max(b)) if n else 0.0
    if np.any(a > b + tol.scale(scale)):
        i = int(np.argmax(a - b))
        raise DominanceViolated(f"a[{i}] = {a[i]} exceeds b[{i}] = {b[i]}")
    phi_a, phi_b = gauge(d, a), gauge(d, b)
    same_norm = abs(phi_a - phi_b) <= tol.scale(max(phi_a, phi_b))
    differ = np.any(b - a > tol.scale(scale))
    return Witness.VIOLATION if (same_norm and differ) else Witness.CONSISTENT

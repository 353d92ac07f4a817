"""Dense complex matrix kernel.

Everything downstream works with plain ``numpy.ndarray`` objects of dtype
``complex128``; a "ComplexMatrix" is such an array with finite entries.

Two eigen backends are available.  ``"jacobi"`` is a self-contained cyclic
Jacobi solver with complex 2x2 rotations; ``"lapack"`` defers to
``numpy.linalg``.  The LAPACK route is the default because the campaign and
search drivers call the kernel millions of times; the Jacobi route is kept as
an independent cross-check and is exercised by the solver-floor tests.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NoConvergence, NotHermitian, NotPSD, NotSquare

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "EigenDecomposition",
    "SingularSpectrum",
    "PolarParts",
    "PSDCheck",
    "as_matrix",
    "dagger",
    "op_norm",
    "rank_cutoff",
    "check_hermitian",
    "jacobi_eigh",
    "hermitian_eigen",
    "svd",
    "polar",
    "abs_power",
    "psd_power",
    "is_psd",
    "range_projection",
]

METHODS = ("lapack", "jacobi")
DEFAULT_METHOD = "lapack"

JACOBI_CONVERGENCE = 1e-13
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair used for every numerical decision."""

    relative: float = 1e-9
    absolute: float = 1e-12

    def __post_init__(self):
        for name in ("relative", "absolute"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"tolerance {name} must be finite and nonnegative, got {value}")

    def scale(self, reference):
        """Threshold ``relative * reference + absolute``."""
        return self.relative * float(reference) + self.absolute


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted decreasing with the matching unitary eigenvector matrix."""

    values: np.ndarray
    vectors: np.ndarray

    def __len__(self):
        return len(self.values)

    def projection(self, k):
        v = self.vectors[:, k : k + 1]
        return v @ v.conj().T

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.conj().T


@dataclass(frozen=True)
class SingularSpectrum:
    """Singular values (decreasing) with right and left singular vectors.

    ``right`` holds the eigenvectors of ``|m|`` (columns aligned with
    ``values``), ``left`` those of ``|m*|``; ``m @ right[:, k] = values[k] *
    left[:, k]`` for every ``k < len(values)``.
    """

    values: np.ndarray
    right: np.ndarray
    left: np.ndarray

    def rank(self, tol=DEFAULT_TOL):
        if len(self.values) == 0:
            return 0
        return int(np.count_nonzero(self.values > rank_cutoff(self.values[0], tol)))


@dataclass(frozen=True)
class PolarParts:
    """``y = isometry @ positive_part`` with the two associated projections."""

    isometry: np.ndarray
    positive_part: np.ndarray
    range_projection: np.ndarray
    support_projection: np.ndarray


class PSDCheck(NamedTuple):
    ok: bool
    min_eigenvalue: float

    def __bool__(self):
        return bool(self.ok)


def as_matrix(m):
    """Coerce ``m`` to a finite 2-D complex array (a copy is not forced)."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def op_norm(m):
    """Largest singular value."""
    m = as_matrix(m)
    return float(np.linalg.norm(m, 2))


def rank_cutoff(sigma_max, tol=DEFAULT_TOL):
    # singular values at or below this are treated as zero
    return max(tol.absolute, tol.relative * float(sigma_max))


def _require_square(m):
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")


def check_hermitian(m, tol=DEFAULT_TOL):
    """Return ``m`` as a square complex array or raise NotHermitian."""
    m = as_matrix(m)
    _require_square(m)
    defect = np.linalg.norm(m - dagger(m))
    if defect > tol.scale(np.linalg.norm(m)):
        raise NotHermitian(f"||m - m*||_F = {defect:.3e} exceeds tolerance")
    return m


def jacobi_eigh(m, convergence=JACOBI_CONVERGENCE, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Each off-diagonal entry ``a_pq = |a_pq| e^{i phi}`` is annihilated by the
    unitary ``G = diag(1, e^{-i phi}) R`` where ``R`` is the real rotation
    diagonalising the phase-stripped 2x2 block.

    Returns unsorted ``(values, vectors)``.  Raises NoConvergence when the
    off-diagonal Frobenius mass is still above ``convergence * ||m||_F`` after
    ``max_sweeps`` sweeps.
    """
    a = np.array(as_matrix(m), dtype=np.complex128)
    _require_square(a)
    n = a.shape[0]
    a = 0.5 * (a + dagger(a))
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return a.real.diagonal().copy(), v

    target = convergence * np.linalg.norm(a)
    iu = np.triu_indices(n, 1)

    def off_mass():
        return np.sqrt(2.0) * np.linalg.norm(a[iu])

    off = off_mass()
    sweeps = 0
    while off > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal mass {off:.3e})",
                residual=off,
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                phase = apq / mag
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128,
                )
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = dagger(g) @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
        sweeps += 1
        off = off_mass()
    return a.real.diagonal().copy(), v


def _phase_fix(vectors):
    # unit phases making the largest-modulus entry of each column real positive
    if vectors.size == 0:
        return np.ones(vectors.shape[1])
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    mag = np.abs(lead)
    return np.where(mag > 0, np.conj(lead) / np.where(mag > 0, mag, 1.0), 1.0)


def _resolve(method):
    method = DEFAULT_METHOD if method is None else method
    if method not in METHODS:
        raise ValueError(f"unknown eigen backend {method!r}; choose from {METHODS}")
    return method


def hermitian_eigen(m, tol=DEFAULT_TOL, method=None):
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted decreasing.

    Ties keep the solver's output order.
    """
    m = check_hermitian(m, tol)
    if _resolve(method) == "jacobi":
        values, vectors = jacobi_eigh(m)
    else:
        values, vectors = np.linalg.eigh(0.5 * (m + dagger(m)))
    order = np.argsort(-values, kind="stable")
    vectors = vectors[:, order]
    return EigenDecomposition(values=values[order], vectors=vectors * _phase_fix(vectors))


def _complete_basis(cols, n):
    """Extend orthonormal columns ``cols`` (n x r) to an n x n unitary."""
    basis = [cols[:, j] for j in range(cols.shape[1])]
    for e in np.eye(n, dtype=np.complex128):
        if len(basis) == n:
            break
        w = e.copy()
        for _ in range(2):
            for b in basis:
                w -= np.vdot(b, w) * b
        nw = np.linalg.norm(w)
        if nw > 1e-8:
            basis.append(w / nw)
    return np.column_stack(basis) if basis else np.zeros((n, 0), dtype=np.complex128)


def svd(m, tol=DEFAULT_TOL, method=None):
    """Singular spectrum of an arbitrary rectangular matrix.

    With the Jacobi backend the right vectors and squared singular values come
    from the eigendecomposition of ``m* m`` (clamped at zero) and the left
    vectors from ``m v / sigma`` above the rank cutoff.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    k = min(rows, cols)
    if _resolve(method) == "lapack":
        u, s, vh = np.linalg.svd(m)
        right = dagger(vh)
        phase = _phase_fix(right)
        right = right * phase
        u[:, :k] = u[:, :k] * phase[:k]
        return SingularSpectrum(values=s, right=right, left=u)

    eig = hermitian_eigen(dagger(m) @ m, tol, method="jacobi")
    # squared singular values under the rounding floor of m*m carry no information
    floor = cols * np.finfo(float).eps * max(eig.values[0], 0.0)
    s = np.sqrt(np.where(eig.values > floor, eig.values, 0.0))[:k]
    right = eig.vectors
    cut = rank_cutoff(s[0], tol) if k else 0.0
    r = int(np.count_nonzero(s > cut))
    left_support = (m @ right[:, :r]) / s[:r]
    left = _complete_basis(left_support, rows)
    return SingularSpectrum(values=s, right=right, left=left)


def polar(m, tol=DEFAULT_TOL, method=None):
    """Polar decomposition ``m = nu |m|`` with ``nu`` a partial isometry.

    ``nu`` vanishes on the kernel of ``|m|``; no unitary completion is made.
    """
    m = as_matrix(m)
    _require_square(m)
    sv = svd(m, tol, method)
    r = sv.rank(tol)
    v = sv.right[:, :r]
    u = sv.left[:, :r]
    positive = (sv.right * sv.values) @ dagger(sv.right)
    positive = 0.5 * (positive + dagger(positive))
    return PolarParts(
        isometry=u @ dagger(v),
        positive_part=positive,
        range_projection=u @ dagger(u),
        support_projection=v @ dagger(v),
    )


def abs_power(m, exponent, tol=DEFAULT_TOL, method=None):
    """``|m|^exponent`` computed from the singular spectrum of ``m``.

    Working from the SVD avoids squaring the condition number the way
    ``psd_power(m* m, exponent / 2)`` would.
    """
    if exponent <= 0:
        raise ValueError("exponent must be positive")
    sv = svd(as_matrix(m), tol, method)
    n = sv.right.shape[0]
    s = np.zeros(n)
    s[: len(sv.values)] = sv.values
    out = (sv.right * s**exponent) @ dagger(sv.right)
    return 0.5 * (out + dagger(out))


def psd_power(m, exponent, tol=DEFAULT_TOL, method=None):
    """Spectral power ``V diag(lambda^exponent) V*`` of a PSD matrix.

    Eigenvalues in ``[-cutoff, 0)`` are rounding noise and are clamped to zero
    before powering; anything more negative raises NotPSD.
    """
    if not exponent > 0:
        raise ValueError("exponent must be positive")
    eig = hermitian_eigen(m, tol, method)
    lam = eig.values
    scale = np.max(np.abs(lam)) if len(lam) else 0.0
    cutoff = tol.scale(scale)
    if len(lam) and lam[-1] < -cutoff:
        raise NotPSD(f"minimum eigenvalue {lam[-1]:.3e} below -{cutoff:.3e}")
    lam = np.clip(lam, 0.0, None)
    out = (eig.vectors * lam**exponent) @ dagger(eig.vectors)
    return 0.5 * (out + dagger(out))


def is_psd(m, tol=DEFAULT_TOL, method=None):
    """PSD test returning ``PSDCheck(ok, min_eigenvalue)``.

    The threshold is ``-(tol.relative * ||m|| + tol.absolute)``.
    """
    eig = hermitian_eigen(m, tol, method)
    lam_min = float(eig.values[-1])
    norm = float(np.max(np.abs(eig.values)))
    return PSDCheck(lam_min >= -tol.scale(norm), lam_min)


def range_projection(m, tol=DEFAULT_TOL, method=None):
    """Orthogonal projection onto the closure of the range of ``m``."""
    m = as_matrix(m)
    _require_square(m)
    sv = svd(m, tol, method)
    u = sv.left[:, : sv.rank(tol)]
    return u @ dagger(u)

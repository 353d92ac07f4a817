"""Young's inequality for singular values and its equality characterisation.

For square ``a, b`` and conjugate exponents ``p, q`` the four spectra are

* ``alpha_k = lambda_k(|a|)``, ``beta_k = lambda_k(|b|)``,
* ``gamma_k = lambda_k(|ab*|)``,
* ``delta_k = lambda_k(|a|^p / p + |b|^q / q)`` (the "Young mean").

``gamma_k <= delta_k`` always holds, and the following are equivalent:
``|a|^p = |b|^q``; ``z |ab*| z* = mean`` for some contraction ``z``;
``||z |ab*| w||_phi = ||mean||_phi`` for contractions ``z, w`` and a strictly
increasing norm; ``gamma_k = delta_k`` for every ``k``.  This module computes
the spectra, builds the partial isometry carrying the spectral projections of
``|ab*|`` onto those of the mean, and decides the four conditions.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadExponent,
    DegenerateCluster,
    DimensionMismatch,
    NotContraction,
    NotProjection,
    NotPSD,
    NotRankOne,
    NotUnit,
    PremiseNotMet,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    abs_power,
    as_matrix,
    check_hermitian,
    dagger,
    hermitian_eigen,
    is_psd,
    op_norm,
    polar,
    psd_power,
    range_projection,
    rank_cutoff,
    svd,
)
from .norms import evaluate_norm

__all__ = [
    "ConjugatePair",
    "YoungSpectra",
    "EquivalenceReport",
    "SPECTRAL_TOL",
    "MATRIX_TOL",
    "young_spectra",
    "verify_singular_inequality",
    "build_partial_isometry",
    "check_equivalence",
    "check_gamma_delta_from_contraction",
    "check_range_inclusion",
    "check_vector_hoelder",
    "check_projection_hoelder",
    "check_polar_identities",
    "check_lambda_bound",
]

# equality verdicts: loose enough to absorb t^(1/p) conditioning near p = 1
SPECTRAL_TOL = Tolerance(relative=1e-7, absolute=1e-12)
MATRIX_TOL = Tolerance(relative=1e-6, absolute=1e-12)
INEQUALITY_TOL = Tolerance(relative=1e-8, absolute=1e-14)

UNIVERSAL_NOTE = (
    "condition 3 quantifies over all contraction pairs (z, w); only the canonical "
    "witness z = nu*, w = nu is evaluated, which suffices because conditions 1-4 are equivalent"
)


@dataclass(frozen=True)
class ConjugatePair:
    """Conjugate exponents ``1/p + 1/q = 1``; ``q`` is derived from ``p``."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not np.isfinite(p) or p <= 1:
            raise BadExponent(f"p must be a finite real > 1, got {self.p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", p / (p - 1.0))

    def swapped(self):
        return ConjugatePair(self.q)


def _square_pair(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionMismatch(f"need square matrices of equal size, got {a.shape} and {b.shape}")
    return a, b


def _power_from(sv, s):
    vals = np.zeros(sv.right.shape[0])
    vals[: len(sv.values)] = sv.values
    out = (sv.right * vals**s) @ dagger(sv.right)
    return 0.5 * (out + dagger(out))


@dataclass(frozen=True)
class YoungSpectra:
    cp: ConjugatePair
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    gamma_vectors: np.ndarray
    delta_vectors: np.ndarray
    abs_ab: np.ndarray  # |ab*|
    a_power: np.ndarray  # |a|^p
    b_power: np.ndarray  # |b|^q
    mean: np.ndarray  # |a|^p / p + |b|^q / q

    @property
    def inequality_gap(self):
        """``max_k (gamma_k - delta_k)``; never meaningfully positive."""
        return float(np.max(self.gamma - self.delta))

    @property
    def spectral_gap(self):
        return float(np.max(np.abs(self.gamma - self.delta)))


def young_spectra(a, b, cp, tol=DEFAULT_TOL):
    a, b = _square_pair(a, b)
    sa = svd(a, tol)
    sb = svd(b, tol)
    sx = svd(a @ dagger(b), tol)
    a_power = _power_from(sa, cp.p)
    b_power = _power_from(sb, cp.q)
    mean = a_power / cp.p + b_power / cp.q
    eig = hermitian_eigen(mean, tol)
    return YoungSpectra(
        cp=cp,
        alpha=sa.values,
        beta=sb.values,
        gamma=sx.values,
        delta=np.clip(eig.values, 0.0, None),
        gamma_vectors=sx.right,
        delta_vectors=eig.vectors,
        abs_ab=_power_from(sx, 1.0),
        a_power=a_power,
        b_power=b_power,
        mean=mean,
    )


@dataclass(frozen=True)
class InequalityVerdict:
    holds: bool
    worst_index: int
    worst_gap: float

    def __bool__(self):
        return self.holds


def verify_singular_inequality(spectra, delta=None, tol=INEQUALITY_TOL):
    """Check ``gamma_k <= delta_k + tol.scale(delta_0)`` for every ``k``.

    Accepts a :class:`YoungSpectra` or two explicit sequences
    ``(gamma, delta)``.
    """
    if delta is None:
        gamma, delta = spectra.gamma, spectra.delta
    else:
        gamma = spectra
    gamma = np.asarray(gamma, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if gamma.shape != delta.shape:
        raise DimensionMismatch("gamma and delta must have the same length")
    gaps = gamma - delta
    worst = int(np.argmax(gaps))
    limit = tol.scale(delta[0] if delta.size else 0.0)
    return InequalityVerdict(bool(gaps[worst] <= limit), worst, float(gaps[worst]))


def build_partial_isometry(spectra, tol=DEFAULT_TOL, strict=False):
    """``u = sum_k d_k g_k*`` over ``gamma_k`` above the rank cutoff.

    ``g_k`` and ``d_k`` are the eigenvectors of ``|ab*|`` and of the Young
    mean, so ``u p_k u* = q_k`` and ``u* u`` is the projection onto the range
    of ``|ab*|``.  Inside degenerate clusters the solver order is used as the
    matching.  With ``strict=True`` a gamma cluster straddling the rank cutoff
    raises DegenerateCluster instead of being split.
    """
    gamma = spectra.gamma
    cut = rank_cutoff(gamma[0], tol) if gamma.size else 0.0
    r = int(np.count_nonzero(gamma > cut))
    if strict and 0 < r < gamma.size and gamma[r - 1] - gamma[r] <= tol.scale(gamma[0]):
        raise DegenerateCluster(f"gamma cluster straddles the rank cutoff at index {r}")
    g = spectra.gamma_vectors[:, :r]
    d = spectra.delta_vectors[:, :r]
    return d @ dagger(g)


@dataclass(frozen=True)
class NormEquality:
    norm: str
    strictly_increasing: bool
    lhs: float
    rhs: float
    residual: float
    equal: bool


@dataclass(frozen=True)
class EquivalenceReport:
    cond1_residual: float
    cond1: bool
    cond2_witness: np.ndarray
    cond2_residual: float
    cond2: bool
    cond3_norms: tuple
    cond3: bool | None
    cond4_gap: float
    cond4_worst_index: int
    cond4: bool
    p: float
    q: float
    notes: tuple = (UNIVERSAL_NOTE,)

    @property
    def verdicts(self):
        return tuple(v for v in (self.cond1, self.cond2, self.cond3, self.cond4) if v is not None)

    @property
    def overall_consistent(self):
        return len(set(self.verdicts)) == 1

    @property
    def all_true(self):
        return all(self.verdicts)

    def to_dict(self):
        from .matrix_io import matrix_to_dict

        return {
            "p": self.p,
            "q": self.q,
            "cond1": {"residual": self.cond1_residual, "verdict": self.cond1},
            "cond2": {
                "witness": "nu*",
                "z": matrix_to_dict(self.cond2_witness),
                "residual": self.cond2_residual,
                "verdict": self.cond2,
            },
            "cond3": {
                "norms": [
                    {
                        "norm": ne.norm,
                        "strictly_increasing": ne.strictly_increasing,
                        "lhs": ne.lhs,
                        "rhs": ne.rhs,
                        "residual": ne.residual,
                        "equal": ne.equal,
                    }
                    for ne in self.cond3_norms
                ],
                "verdict": self.cond3,
            },
            "cond4": {
                "gap": self.cond4_gap,
                "worst_index": self.cond4_worst_index,
                "verdict": self.cond4,
            },
            "overall_consistent": self.overall_consistent,
            "notes": list(self.notes),
        }


def check_equivalence(a, b, cp, norms, tol=DEFAULT_TOL):
    """Decide the four equivalent conditions for the pair ``(a, b)``.

    The contraction witness for conditions 2 and 3 is ``z = nu*`` (and
    ``w = nu``) from the polar decomposition ``b = nu |b|``: on the equality
    locus ``nu* |ab*| nu = ||a||b|| = |b|^q``, so a negative verdict for this
    witness is conclusive.
    """
    if not norms:
        raise ValueError("at least one norm is required")
    s = young_spectra(a, b, cp, tol)

    res1 = float(np.linalg.norm(s.a_power - s.b_power))
    scale1 = max(np.linalg.norm(s.a_power), np.linalg.norm(s.b_power))
    cond1 = res1 <= MATRIX_TOL.scale(scale1)

    nu = polar(as_matrix(b), tol).isometry
    z = dagger(nu)
    conjugated = z @ s.abs_ab @ nu
    mean_norm = float(np.linalg.norm(s.mean))
    res2 = float(np.linalg.norm(conjugated - s.mean))
    cond2 = res2 <= MATRIX_TOL.scale(mean_norm)

    entries = []
    for d in norms:
        lhs = evaluate_norm(d, conjugated, tol)
        rhs = evaluate_norm(d, s.mean, tol)
        diff = abs(lhs - rhs)
        entries.append(
            NormEquality(d.label, d.strictly_increasing, lhs, rhs, diff, diff <= MATRIX_TOL.scale(rhs))
        )
    strict = [e.equal for e in entries if e.strictly_increasing]
    cond3 = all(strict) if strict else None

    gaps = np.abs(s.gamma - s.delta)
    worst = int(np.argmax(gaps))
    delta0 = float(s.delta[0])
    cond4 = bool(gaps[worst] <= SPECTRAL_TOL.scale(delta0))

    return EquivalenceReport(
        cond1_residual=res1,
        cond1=bool(cond1),
        cond2_witness=z,
        cond2_residual=res2,
        cond2=bool(cond2),
        cond3_norms=tuple(entries),
        cond3=cond3,
        cond4_gap=float(gaps[worst]),
        cond4_worst_index=worst,
        cond4=cond4,
        p=cp.p,
        q=cp.q,
    )


@dataclass(frozen=True)
class GammaDeltaResult:
    status: str  # "confirmed", "violated" or "not_applicable"
    residual: float
    gap: float


def _require_contraction(z, tol):
    norm = op_norm(z)
    if norm > 1.0 + tol.scale(1.0):
        raise NotContraction(f"||z|| = {norm:.6g} exceeds 1")


def check_gamma_delta_from_contraction(a, b, z, cp, tol=DEFAULT_TOL):
    """If ``z |ab*| z* == mean`` for a contraction ``z``, confirm ``gamma == delta``."""
    a, b = _square_pair(a, b)
    z = as_matrix(z)
    if z.shape != a.shape:
        raise DimensionMismatch("z must match the dimension of a and b")
    _require_contraction(z, tol)
    s = young_spectra(a, b, cp, tol)
    residual = float(np.linalg.norm(z @ s.abs_ab @ dagger(z) - s.mean))
    gap = s.spectral_gap
    if residual > MATRIX_TOL.scale(np.linalg.norm(s.mean)):
        return GammaDeltaResult("not_applicable", residual, gap)
    ok = gap <= SPECTRAL_TOL.scale(s.delta[0])
    return GammaDeltaResult("confirmed" if ok else "violated", residual, gap)


def _require_psd(m, name, tol):
    m = check_hermitian(m, tol)
    if not is_psd(m, tol):
        raise NotPSD(f"{name} is not positive semidefinite")
    return m


@dataclass(frozen=True)
class InclusionResult:
    holds: bool
    residual: float


def check_range_inclusion(a, b, cp, tol=DEFAULT_TOL):
    """For PSD ``a, b``, ``1 < p < 2`` and equal spectra: ``Ran|ba|`` lies in the closure of ``Ran b``.

    General (non-PSD) inputs should be passed as ``|a|, |b|``.
    """
    if not 1.0 < cp.p < 2.0:
        raise BadExponent(f"range inclusion needs 1 < p < 2, got p = {cp.p}")
    a, b = _square_pair(a, b)
    a = _require_psd(a, "a", tol)
    b = _require_psd(b, "b", tol)
    s = young_spectra(a, b, cp, tol)
    if s.spectral_gap > SPECTRAL_TOL.scale(s.delta[0]):
        raise PremiseNotMet(f"spectra differ (max |gamma - delta| = {s.spectral_gap:.3e})")
    abs_ba = abs_power(b @ a, 1.0, tol)
    outside = np.eye(a.shape[0]) - range_projection(b, tol)
    residual = float(np.linalg.norm(outside @ abs_ba))
    return InclusionResult(bool(residual <= MATRIX_TOL.scale(np.linalg.norm(abs_ba))), residual)


@dataclass(frozen=True)
class HoelderResult:
    lhs: float
    rhs: float
    holds: bool
    equality: bool
    eigenvector: bool

    @property
    def agree(self):
        return self.equality == self.eigenvector


def check_vector_hoelder(x, xi, r, tol=DEFAULT_TOL):
    """``<x^r xi, xi> <= <x xi, xi>^r`` for PSD ``x``, unit ``xi``, ``0 < r < 1``.

    Equality holds iff ``xi`` is an eigenvector of ``x``.  The Hoelder defect
    is second order in the eigenvector residual, so the eigenvector flag uses
    the square root of the relative tolerance.
    """
    if not 0.0 < r < 1.0:
        raise BadExponent(f"r must lie in (0, 1), got {r}")
    x = _require_psd(x, "x", tol)
    xi = np.asarray(xi, dtype=np.complex128).reshape(-1)
    if xi.size != x.shape[0]:
        raise DimensionMismatch("xi must match the dimension of x")
    if abs(np.linalg.norm(xi) - 1.0) > tol.scale(1.0):
        raise NotUnit(f"||xi|| = {np.linalg.norm(xi)} is not 1")

    xr = psd_power(x, r, tol)
    lhs = float(np.vdot(xi, xr @ xi).real)
    mu = float(np.vdot(xi, x @ xi).real)
    rhs = max(mu, 0.0) ** r
    norm_x = op_norm(x)
    scale = norm_x**r
    holds = lhs <= rhs + tol.scale(scale)
    equality = abs(rhs - lhs) <= tol.scale(scale)
    residual = np.linalg.norm(x @ xi - mu * xi)
    eigenvector = residual <= np.sqrt(tol.relative) * norm_x + tol.absolute
    return HoelderResult(lhs, rhs, bool(holds), bool(equality), bool(eigenvector))


@dataclass(frozen=True)
class ProjectionHoelderResult:
    psd: bool
    min_eigenvalue: float
    equality: bool
    eigenvector: bool
    c: float

    @property
    def agree(self):
        return self.equality == self.eigenvector


def check_projection_hoelder(x, q, r, tol=DEFAULT_TOL):
    """``q x^r q <= (q x q)^r`` for a rank-one projection ``q`` and ``0 < r < 1``.

    Equality iff ``x q = c q`` with ``c = tr(q x q)``.
    """
    if not 0.0 < r < 1.0:
        raise BadExponent(f"r must lie in (0, 1), got {r}")
    x = _require_psd(x, "x", tol)
    q = as_matrix(q)
    if q.shape != x.shape:
        raise DimensionMismatch("q must match the dimension of x")
    if np.linalg.norm(q - dagger(q)) > tol.scale(1.0) or np.linalg.norm(q @ q - q) > tol.scale(1.0):
        raise NotProjection("q is not a Hermitian idempotent")
    if abs(np.trace(q).real - 1.0) > tol.scale(1.0):
        raise NotRankOne(f"q has rank {np.trace(q).real:.3g}, expected 1")

    compressed = q @ x @ q
    diff = psd_power(compressed, r, tol) - q @ psd_power(x, r, tol) @ q
    diff = 0.5 * (diff + dagger(diff))
    check = is_psd(diff, Tolerance(tol.relative, tol.scale(op_norm(x) ** r)))
    norm_x = op_norm(x)
    equality = np.linalg.norm(diff) <= tol.scale(norm_x**r)
    c = float(np.trace(compressed).real)
    eigenvector = np.linalg.norm(x @ q - c * q) <= np.sqrt(tol.relative) * norm_x + tol.absolute
    return ProjectionHoelderResult(bool(check.ok), check.min_eigenvalue, bool(equality), bool(eigenvector), c)


@dataclass(frozen=True)
class PolarIdentityResiduals:
    conjugation: float  # ||ab*| - nu ||a||b|| nu*|
    compression: float  # |nu* |ab*| nu - ||a||b|||
    spectral_gap: float  # max_k |lambda_k(|ab*|) - lambda_k(||a||b||)|
    scale: float

    def ok(self, tol=Tolerance(relative=1e-8, absolute=1e-12)):
        limit = tol.scale(self.scale)
        return max(self.conjugation, self.compression, self.spectral_gap) <= limit


def check_polar_identities(a, b, tol=DEFAULT_TOL):
    """Residuals of ``|ab*| = nu ||a||b|| nu*``, ``nu* |ab*| nu = ||a||b||`` and
    ``lambda_k(|ab*|) = lambda_k(||a||b||)`` where ``b = nu |b|``."""
    a, b = _square_pair(a, b)
    nu = polar(b, tol).isometry
    abs_ab = abs_power(a @ dagger(b), 1.0, tol)
    inner_op = abs_power(a, 1.0, tol) @ abs_power(b, 1.0, tol)
    inner = abs_power(inner_op, 1.0, tol)
    conj = float(np.linalg.norm(abs_ab - nu @ inner @ dagger(nu)))
    comp = float(np.linalg.norm(dagger(nu) @ abs_ab @ nu - inner))
    gap = float(np.max(np.abs(svd(a @ dagger(b), tol).values - svd(inner_op, tol).values)))
    return PolarIdentityResiduals(conj, comp, gap, op_norm(a) * op_norm(b))


@dataclass(frozen=True)
class LambdaBoundResult:
    holds: bool
    worst_index: int
    worst_excess: float


def check_lambda_bound(a, x, b, tol=DEFAULT_TOL):
    """``lambda_k(|a x b|) <= ||a|| ||b|| lambda_k(x)`` for every ``k``."""
    a, x, b = as_matrix(a), as_matrix(x), as_matrix(b)
    if a.shape[1] != x.shape[0] or x.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot form a x b with shapes {a.shape}, {x.shape}, {b.shape}")
    lhs = svd(a @ x @ b, tol).values
    sx = svd(x, tol).values
    bound = np.zeros(lhs.size)
    m = min(lhs.size, sx.size)
    bound[:m] = op_norm(a) * op_norm(b) * sx[:m]
    excess = lhs - bound
    worst = int(np.argmax(excess))
    limit = tol.scale(bound[0] if bound.size else 0.0)
    return LambdaBoundResult(bool(excess[worst] <= limit), worst, float(excess[worst]))

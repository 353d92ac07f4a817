"""Operator equality ``z |ab*| z* = |a|^p / p + |b|^q / q`` for a contraction ``z``.

Once the equality holds, ``|a|^p = |b|^q`` is forced, so everything here takes
``a = (|b|^q)^{1/p}`` and the equality reads ``z |b*|^q z* = |b|^q``.  Three
conditions on ``(b, z)`` are sufficient:

1. ``|b*| z* z = |b*|``
2. ``|b| z z* = |b|``
3. ``|b| z = z |b*|``

and a trace argument shows they are necessary whenever ``Tr |b|^q`` is finite,
which is automatic for matrices.  Necessity for a general compact ``b`` is
open; :func:`search_necessity_counterexample` puts finite sections under
derivative-free falsification pressure.  Because the trace argument covers
every finite-rank case, a search returning no witness is consistency evidence
only; a returned witness means an implementation bug or a numerical artefact
that needs a closer look.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NotContraction, PremiseNotMet
from .generators import (
    clip_to_contraction,
    complex_gaussian,
    decay_profile,
    make_rng,
    random_unitary,
)
from .linalg import DEFAULT_TOL, as_matrix, dagger, op_norm, polar
from .young import MATRIX_TOL

__all__ = [
    "ThreeConditions",
    "SufficiencyResult",
    "TraceArgumentResult",
    "SearchResult",
    "three_conditions",
    "check_sufficiency",
    "check_trace_argument",
    "search_necessity_counterexample",
    "EQUALITY_THRESHOLD",
    "VIOLATION_THRESHOLD",
]

# four orders of separation so rounding cannot fabricate a witness
EQUALITY_THRESHOLD = 1e-8
VIOLATION_THRESHOLD = 1e-4


@dataclass(frozen=True)
class ThreeConditions:
    """Frobenius residuals of the three conditions, relative to ``||b||``."""

    r1: float
    r2: float
    r3: float

    @property
    def worst(self):
        return max(self.r1, self.r2, self.r3)

    def holds(self, tol=MATRIX_TOL):
        return self.worst <= tol.relative + tol.absolute


def _abs_parts(b):
    """``(|b|, |b*|, ||b||)`` from one SVD."""
    u, s, vh = np.linalg.svd(b)
    v = dagger(vh)
    return (v * s) @ vh, (u * s) @ dagger(u), float(s[0])


def three_conditions(b, z):
    b = as_matrix(b)
    z = as_matrix(z)
    abs_b, abs_bstar, norm_b = _abs_parts(b)
    if norm_b == 0.0:
        return ThreeConditions(0.0, 0.0, 0.0)
    r1 = np.linalg.norm(abs_bstar @ dagger(z) @ z - abs_bstar)
    r2 = np.linalg.norm(abs_b @ z @ dagger(z) - abs_b)
    r3 = np.linalg.norm(abs_b @ z - z @ abs_bstar)
    return ThreeConditions(float(r1 / norm_b), float(r2 / norm_b), float(r3 / norm_b))


def _require_contraction(z, tol):
    norm = op_norm(z)
    if norm > 1.0 + tol.scale(1.0):
        raise NotContraction(f"||z|| = {norm:.6g} exceeds 1")


def _powers(b, q):
    u, s, vh = np.linalg.svd(b)
    sq = s**q
    return (dagger(vh) * sq) @ vh, (u * sq) @ dagger(u), float(sq[0])


@dataclass(frozen=True)
class SufficiencyResult:
    residual: float  # ||z|ab*|z* - |b|^q||_F / ||b||^q
    conditions: ThreeConditions
    ok: bool


def check_sufficiency(b, z, cp, tol=DEFAULT_TOL):
    """Given the three conditions, confirm the operator equality with ``a = (|b|^q)^{1/p}``."""
    b = as_matrix(b)
    z = as_matrix(z)
    _require_contraction(z, tol)
    cond = three_conditions(b, z)
    if not cond.holds():
        raise PremiseNotMet(f"three conditions fail (worst relative residual {cond.worst:.3e})")
    bq, _, scale = _powers(b, cp.q)
    # a = (|b|^q)^{1/p} is PSD, so |a| = a
    lam, w = np.linalg.eigh(bq)
    a = (w * np.clip(lam, 0.0, None) ** (1.0 / cp.p)) @ dagger(w)
    u, s, vh = np.linalg.svd(a @ dagger(b))
    abs_ab = (dagger(vh) * s) @ vh
    raw = float(np.linalg.norm(z @ abs_ab @ dagger(z) - bq))
    residual = raw / scale if scale > 0 else raw
    return SufficiencyResult(residual, cond, residual <= EQUALITY_THRESHOLD)


@dataclass(frozen=True)
class TraceArgumentResult:
    conditions: ThreeConditions
    trace_defect: float  # Tr(|b*|^q (1 - z* z)), relative to ||b||^q
    equality_residual: float
    ok: bool


def check_trace_argument(b, z, cp, tol=DEFAULT_TOL):
    """Finite-rank instance of the trace argument.

    From ``z |b*|^q z* = |b|^q`` and a finite trace,
    ``Tr(|b*|^q (1 - z* z)) = 0``; faithfulness of the trace then yields the
    three conditions.  Returns their residuals.
    """
    b = as_matrix(b)
    z = as_matrix(z)
    _require_contraction(z, tol)
    bq, bstar_q, scale = _powers(b, cp.q)
    if scale == 0.0:
        return TraceArgumentResult(ThreeConditions(0.0, 0.0, 0.0), 0.0, 0.0, True)
    residual = float(np.linalg.norm(z @ bstar_q @ dagger(z) - bq)) / scale
    if residual > MATRIX_TOL.relative:
        raise PremiseNotMet(f"z|b*|^q z* != |b|^q (relative residual {residual:.3e})")
    n = b.shape[0]
    defect = float(np.trace(bstar_q @ (np.eye(n) - dagger(z) @ z)).real) / scale
    cond = three_conditions(b, z)
    return TraceArgumentResult(cond, defect, residual, cond.holds())


@dataclass
class SearchResult:
    best_objective: float
    witness: tuple | None
    trials: int
    seed: int
    feasible_points: int = 0
    max_violation: float = 0.0
    witness_violation: float | None = None
    witness_trial: int | None = None
    settings: dict = field(default_factory=dict)

    def to_dict(self):
        from .matrix_io import matrix_to_dict

        out = {
            "best_objective": self.best_objective,
            "trials": self.trials,
            "seed": self.seed,
            "feasible_points": self.feasible_points,
            "max_violation": self.max_violation,
            "equality_threshold": EQUALITY_THRESHOLD,
            "violation_threshold": VIOLATION_THRESHOLD,
            "settings": dict(self.settings),
            "witness": None,
        }
        if self.witness is not None:
            b, z = self.witness
            out["witness"] = {
                "b": matrix_to_dict(b),
                "z": matrix_to_dict(z),
                "violation": self.witness_violation,
                "trial": self.witness_trial,
            }
        return out


@dataclass(frozen=True)
class _TrialOutcome:
    trial: int
    best_objective: float
    feasible_points: int
    max_violation: float
    witness: tuple | None


class _Objective:
    """Relative equality residual plus contraction penalty, with SVD caching."""

    def __init__(self, q, penalty, unitary):
        self.q = q
        self.penalty = penalty
        self.unitary = unitary

    def b_parts(self, b):
        u, s, vh = np.linalg.svd(b)
        sq = s**self.q
        if sq[0] == 0.0:
            return None
        return (dagger(vh) * sq) @ vh, (u * sq) @ dagger(u), float(sq[0])

    def z_excess(self, z):
        if self.unitary:
            return 0.0
        return max(0.0, float(np.linalg.norm(z, 2)) - 1.0)

    def value(self, z, parts, excess):
        if parts is None:
            return np.inf, np.inf
        bq, bstar_q, scale = parts
        residual = float(np.linalg.norm(z @ bstar_q @ dagger(z) - bq)) / scale
        return residual + self.penalty * excess, residual


def _sample_start(rng, n, q, cfg, b_kind, z_kind, start, start_noise):
    if b_kind == "psd_diagonal":
        if cfg.decay == "none":
            diag = rng.uniform(0.05, 1.0, n)
        else:
            diag = decay_profile(cfg.decay, cfg.decay_param, n) * rng.uniform(0.5, 1.0, n)
        b = np.diag(diag).astype(np.complex128)
    else:
        b = complex_gaussian(rng, n)
        if cfg.decay != "none":
            u, _, vh = np.linalg.svd(b)
            b = (u * decay_profile(cfg.decay, cfg.decay_param, n)) @ vh

    if start == "feasible":
        if b_kind != "psd_diagonal" and n > 1:
            # drop trailing singular values so the kernel map below is non-trivial
            rank = int(rng.integers(1, n + 1))
            u, s, vh = np.linalg.svd(b)
            s[rank:] = 0.0
            b = (u * s) @ vh
        pol = polar(b)
        z = dagger(pol.isometry)
        if z_kind == "unitary":
            z = z + (np.eye(n) - pol.support_projection) @ random_unitary(rng, n) @ (np.eye(n) - pol.range_projection)
            z = _unitary_factor(z)
        else:
            k = clip_to_contraction(complex_gaussian(rng, n) / np.sqrt(2.0 * n))
            z = z + (np.eye(n) - pol.support_projection) @ k @ (np.eye(n) - pol.range_projection)
        if start_noise > 0:
            z = z + start_noise * complex_gaussian(rng, n)
            if b_kind == "psd_diagonal":
                b = b + start_noise * np.diag(rng.standard_normal(n))
            else:
                b = b + start_noise * complex_gaussian(rng, n)
    elif z_kind == "unitary":
        z = random_unitary(rng, n)
    else:
        z = clip_to_contraction(complex_gaussian(rng, n) / np.sqrt(2.0 * n))
    if z_kind == "unitary":
        z = _unitary_factor(z)
    if b_kind == "psd_diagonal":
        b = np.diag(np.clip(np.diag(b).real, 0.0, None)).astype(np.complex128)
    return b, z


def _unitary_factor(m):
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def _run_trial(args):
    (seed, trial, cfg, n, q, b_kind, z_kind, start, iterations, step, penalty, start_noise) = args
    rng = make_rng(seed, 3, trial)
    b, z = _sample_start(rng, n, q, cfg, b_kind, z_kind, start, start_noise)
    obj = _Objective(q, penalty, z_kind == "unitary")

    parts = obj.b_parts(b)
    excess = obj.z_excess(z)
    f, residual = obj.value(z, parts, excess)
    best = f
    feasible = 0
    worst_violation = 0.0
    witness = None

    def inspect(b, z, parts, residual, excess):
        nonlocal feasible, worst_violation, witness
        if parts is None or residual > EQUALITY_THRESHOLD or excess > 1e-12:
            return
        feasible += 1
        violation = three_conditions(b, z).worst
        if violation > worst_violation:
            worst_violation = violation
            if violation > VIOLATION_THRESHOLD:
                witness = (b.copy(), z.copy())

    inspect(b, z, parts, residual, excess)

    # coordinates: (which, flat index, real/imag part)
    coords = [("z", i, part) for i in range(n * n) for part in (1.0, 1j)]
    if b_kind == "psd_diagonal":
        coords += [("b", i * n + i, 1.0) for i in range(n)]
    else:
        coords += [("b", i, part) for i in range(n * n) for part in (1.0, 1j)]
    steps = np.full(len(coords), step)
    order = rng.permutation(len(coords))

    for it in range(iterations):
        if it and it % len(coords) == 0:
            order = rng.permutation(len(coords))
        c = order[it % len(coords)]
        which, idx, part = coords[c]
        improved = False
        for sign in (1.0, -1.0):
            delta = sign * steps[c] * part
            if which == "z":
                z_new = z.copy()
                z_new.flat[idx] += delta
                if z_kind == "unitary":
                    z_new = _unitary_factor(z_new)
                new_parts, new_excess, b_new = parts, obj.z_excess(z_new), b
            else:
                b_new = b.copy()
                b_new.flat[idx] += delta
                if b_kind == "psd_diagonal" and b_new.flat[idx].real < 0:
                    continue
                new_parts, new_excess, z_new = obj.b_parts(b_new), excess, z
            f_new, res_new = obj.value(z_new, new_parts, new_excess)
            if f_new < f:
                b, z, parts, excess, f, residual = b_new, z_new, new_parts, new_excess, f_new, res_new
                inspect(b, z, parts, residual, excess)
                improved = True
                break
        if not improved:
            steps[c] *= 0.5
        best = min(best, f)

    return _TrialOutcome(trial, float(best), feasible, float(worst_violation), witness)


def _trial_start(start, trial):
    if start == "mixed":
        return "feasible" if trial % 2 else "random"
    return start


def search_necessity_counterexample(
    cfg,
    trials,
    tol=DEFAULT_TOL,
    *,
    dims=None,
    b_kind="general",
    z_kind="contraction",
    start="random",
    iterations=200,
    step=1e-3,
    penalty=10.0,
    start_noise=0.0,
    workers=1,
):
    """Derivative-free search for ``(b, z)`` meeting the equality but not the three conditions.

    Each trial samples ``b`` (decaying spectrum from ``cfg``) and a contraction
    ``z`` and runs fixed-step coordinate descent (per-coordinate step halved
    on failure) on the relative equality residual plus
    ``penalty * max(0, ||z|| - 1)``.  Every accepted point with relative
    residual at most ``EQUALITY_THRESHOLD`` and ``||z|| <= 1`` is checked
    against the three conditions; a violation above ``VIOLATION_THRESHOLD``
    becomes the witness.

    ``start="feasible"`` seeds each trial on the equality locus
    (``z = nu* + kernel map`` for a rank-deficient ``b``) instead of a random
    point; ``start="mixed"`` alternates, odd trials starting on the locus.
    ``b_kind="psd_diagonal"`` and ``z_kind="unitary"`` restrict the
    search space.  ``dims`` cycles the dimension across trials.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if b_kind not in ("general", "psd_diagonal"):
        raise ValueError(f"unknown b_kind {b_kind!r}")
    if z_kind not in ("contraction", "unitary"):
        raise ValueError(f"unknown z_kind {z_kind!r}")
    if start not in ("random", "feasible", "mixed"):
        raise ValueError(f"unknown start {start!r}")
    cp = cfg.conjugate_pair
    dims = list(dims) if dims else [cfg.dimension]
    jobs = [
        (cfg.seed, t, cfg, dims[t % len(dims)], cp.q, b_kind, z_kind, _trial_start(start, t))
        + (iterations, step, penalty, start_noise)
        for t in range(trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_trial, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [_run_trial(job) for job in jobs]

    best = min(o.best_objective for o in outcomes)
    flagged = [o for o in outcomes if o.witness is not None]
    # deterministic merge: largest violation, then lowest trial index
    flagged.sort(key=lambda o: (-o.max_violation, o.trial))
    top = flagged[0] if flagged else None
    return SearchResult(
        best_objective=best,
        witness=top.witness if top else None,
        trials=trials,
        seed=int(cfg.seed),
        feasible_points=sum(o.feasible_points for o in outcomes),
        max_violation=max(o.max_violation for o in outcomes),
        witness_violation=top.max_violation if top else None,
        witness_trial=top.trial if top else None,
        settings={
            "p": cp.p,
            "dims": dims,
            "decay": cfg.decay,
            "decay_param": cfg.decay_param,
            "b_kind": b_kind,
            "z_kind": z_kind,
            "start": start,
            "iterations": iterations,
            "step": step,
            "penalty": penalty,
            "start_noise": start_noise,
        },
    )

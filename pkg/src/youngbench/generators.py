"""Seeded instance factories.

Every factory builds its own ``numpy.random.Generator`` from the config seed,
so there is no global RNG state and equal configs give bit-identical output.
Compactness is modelled by finite matrices whose singular values follow a
geometric or power-law decay profile.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, BadExponent
from .linalg import dagger
from .young import ConjugatePair

__all__ = [
    "MAX_DIMENSION",
    "GeneratorConfig",
    "make_rng",
    "decay_profile",
    "complex_gaussian",
    "random_unitary",
    "random_psd",
    "random_pair",
    "equality_pair_from",
    "equality_family",
    "opnorm_counterexample",
    "contraction",
    "clip_to_contraction",
]

MAX_DIMENSION = 64
DECAYS = ("none", "geometric", "powerlaw")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    dimension: int = 4
    decay: str = "none"
    decay_param: float | None = None
    p: float = 2.0

    def __post_init__(self):
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ValueError("seed must be an integer")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if isinstance(self.dimension, bool) or not isinstance(self.dimension, (int, np.integer)):
            raise BadDimension("dimension must be an integer")
        if not 1 <= self.dimension <= MAX_DIMENSION:
            raise BadDimension(f"dimension must be in [1, {MAX_DIMENSION}], got {self.dimension}")
        if self.decay not in DECAYS:
            raise ValueError(f"decay must be one of {DECAYS}")
        if self.decay == "geometric" and not (self.decay_param is not None and 0 < self.decay_param < 1):
            raise ValueError("geometric decay needs a ratio in (0, 1)")
        if self.decay == "powerlaw" and not (self.decay_param is not None and self.decay_param > 0):
            raise ValueError("power-law decay needs a positive exponent")
        if not self.p > 1:
            raise BadExponent(f"p must exceed 1, got {self.p}")

    @property
    def conjugate_pair(self):
        return ConjugatePair(self.p)


def make_rng(seed, *stream):
    """Counter-based stream: ``(seed, *stream)`` hashed by SeedSequence."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, stream)]))


def decay_profile(decay, param, n):
    k = np.arange(n, dtype=float)
    if decay == "geometric":
        return param**k
    if decay == "powerlaw":
        return (k + 1.0) ** (-param)
    raise ValueError(f"no profile for decay {decay!r}")


def complex_gaussian(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(rng, n):
    # unitary polar factor of a complex Gaussian matrix
    u, _, vh = np.linalg.svd(complex_gaussian(rng, n))
    return u @ vh


def _respectralize(m, profile):
    u, _, vh = np.linalg.svd(m)
    return (u * profile) @ vh


def random_psd(rng, n, decay="none", param=None):
    if decay == "none":
        g = complex_gaussian(rng, n)
        c = g @ dagger(g) / n
    else:
        w = random_unitary(rng, n)
        c = (w * decay_profile(decay, param, n)) @ dagger(w)
    return 0.5 * (c + dagger(c))


def random_pair(cfg):
    """Independent complex Gaussian ``(a, b)``, re-spectralised when a decay is set."""
    rng = make_rng(cfg.seed, 0)
    n = cfg.dimension
    a = complex_gaussian(rng, n)
    b = complex_gaussian(rng, n)
    if cfg.decay != "none":
        profile = decay_profile(cfg.decay, cfg.decay_param, n)
        a = _respectralize(a, profile)
        b = _respectralize(b, profile)
    return a, b


def _spectral_power(c, s):
    lam, v = np.linalg.eigh(0.5 * (c + dagger(c)))
    lam = np.clip(lam, 0.0, None)
    out = (v * lam**s) @ dagger(v)
    return 0.5 * (out + dagger(out))


def equality_pair_from(c, p, left=None, right=None):
    """Pair with ``|a|^p = |b|^q = c``: ``a = left c^{1/p}``, ``b = right c^{1/q}``.

    ``left`` and ``right`` must be unitaries (identity when omitted).
    """
    cp = ConjugatePair(p)
    c = np.asarray(c, dtype=np.complex128)
    n = c.shape[0]
    abs_a = _spectral_power(c, 1.0 / cp.p)
    abs_b = _spectral_power(c, 1.0 / cp.q)
    left = np.eye(n) if left is None else left
    right = np.eye(n) if right is None else right
    return left @ abs_a, right @ abs_b


def equality_family(cfg):
    """Random pair on the equality locus ``|a|^p = |b|^q``."""
    rng = make_rng(cfg.seed, 1)
    n = cfg.dimension
    c = random_psd(rng, n, cfg.decay, cfg.decay_param)
    u = random_unitary(rng, n)
    v = random_unitary(rng, n)
    return equality_pair_from(c, cfg.p, u, v)


def opnorm_counterexample(dim=2):
    """``a = diag(sqrt2, 1, 0, ...)``, ``b = diag(sqrt2, 0, ...)`` with ``p = q = 2``.

    The operator norms of ``|ab*|`` and the Young mean agree (both 2) although
    ``|a|^2 != |b|^2``.
    """
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or not 2 <= dim <= MAX_DIMENSION:
        raise BadDimension(f"counterexample needs 2 <= dim <= {MAX_DIMENSION}, got {dim}")
    a = np.zeros((dim, dim), dtype=np.complex128)
    b = np.zeros((dim, dim), dtype=np.complex128)
    a[0, 0] = np.sqrt(2.0)
    a[1, 1] = 1.0
    b[0, 0] = np.sqrt(2.0)
    return a, b, ConjugatePair(2.0)


def contraction(cfg, identity=False):
    """Random matrix with singular values clipped to at most 1."""
    n = cfg.dimension
    if identity:
        return np.eye(n, dtype=np.complex128)
    rng = make_rng(cfg.seed, 2)
    g = complex_gaussian(rng, n) / np.sqrt(2.0 * n)
    return clip_to_contraction(g)


def clip_to_contraction(m):
    u, s, vh = np.linalg.svd(m)
    if s[0] <= 1.0:
        return m
    return (u * np.minimum(s, 1.0)) @ vh

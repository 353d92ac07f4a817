import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def cgauss(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def hermitian(rng, n):
    g = cgauss(rng, n)
    return 0.5 * (g + g.conj().T)


def psd(rng, n, rank=None):
    g = cgauss(rng, n, n if rank is None else rank)
    x = g @ g.conj().T
    return 0.5 * (x + x.conj().T)


def unitary(rng, n):
    q, r = np.linalg.qr(cgauss(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)

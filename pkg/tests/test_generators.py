import json

import numpy as np
import pytest

from youngbench.errors import BadDimension, BadExponent, ParseError
from youngbench.generators import (
    GeneratorConfig,
    contraction,
    decay_profile,
    equality_family,
    equality_pair_from,
    opnorm_counterexample,
    random_pair,
)
from youngbench.linalg import abs_power
from youngbench.matrix_io import load_matrix, matrix_from_dict, matrix_to_dict, save_matrix


class TestConfig:
    def test_bounds(self):
        with pytest.raises(BadDimension):
            GeneratorConfig(dimension=0)
        with pytest.raises(BadDimension):
            GeneratorConfig(dimension=65)
        with pytest.raises(BadExponent):
            GeneratorConfig(p=1.0)
        with pytest.raises(ValueError):
            GeneratorConfig(decay="geometric", decay_param=1.5)
        with pytest.raises(ValueError):
            GeneratorConfig(decay="powerlaw", decay_param=-1)
        with pytest.raises(ValueError):
            GeneratorConfig(seed=-1)

    def test_conjugate(self):
        assert GeneratorConfig(p=3.0).conjugate_pair.q == pytest.approx(1.5)


def test_random_pair_is_deterministic():
    cfg = GeneratorConfig(seed=1, dimension=2)
    a1, b1 = random_pair(cfg)
    a2, b2 = random_pair(cfg)
    assert np.array_equal(a1, a2) and np.array_equal(b1, b2)
    a3, _ = random_pair(GeneratorConfig(seed=2, dimension=2))
    assert not np.array_equal(a1, a3)


@pytest.mark.parametrize("decay, param", [("geometric", 0.5), ("powerlaw", 1.5)])
def test_decay_profiles(decay, param):
    a, b = random_pair(GeneratorConfig(seed=5, dimension=4, decay=decay, decay_param=param))
    profile = decay_profile(decay, param, 4)
    for m in (a, b):
        s = np.linalg.svd(m, compute_uv=False)
        np.testing.assert_allclose(s, profile, rtol=1e-10)
    if decay == "geometric":
        np.testing.assert_allclose(profile, [1, 0.5, 0.25, 0.125])


def test_scalar_pair():
    a, b = random_pair(GeneratorConfig(seed=3, dimension=1))
    assert a.shape == b.shape == (1, 1)


class TestEqualityFamily:
    def test_diagonal_p2(self):
        a, b = equality_pair_from(np.diag([4.0, 1.0]), 2.0)
        np.testing.assert_allclose(a, np.diag([2, 1]), atol=1e-14)
        np.testing.assert_allclose(b, np.diag([2, 1]), atol=1e-14)

    def test_scalar_p3(self):
        # 8^(1/3) = 2, 8^(2/3) = 4
        a, b = equality_pair_from(np.array([[8.0]]), 3.0)
        assert a[0, 0].real == pytest.approx(2.0)
        assert b[0, 0].real == pytest.approx(4.0)

    @pytest.mark.parametrize("p", [1.2, 1.5, 2.0, 3.0, 7.0])
    @pytest.mark.parametrize("decay, param", [("none", None), ("geometric", 0.3), ("powerlaw", 2.0)])
    def test_guarantee(self, p, decay, param):
        for seed in range(5):
            cfg = GeneratorConfig(seed=seed, dimension=6, decay=decay, decay_param=param, p=p)
            a, b = equality_family(cfg)
            cp = cfg.conjugate_pair
            ap, bq = abs_power(a, p), abs_power(b, cp.q)
            # reconstruct c independently from |b|^q
            assert np.linalg.norm(ap - bq) <= 1e-9 * np.linalg.norm(bq)

    def test_deterministic(self):
        cfg = GeneratorConfig(seed=9, dimension=3, p=1.5)
        assert all(np.array_equal(x, y) for x, y in zip(equality_family(cfg), equality_family(cfg)))


class TestCounterexample:
    def test_dim2_values(self):
        a, b, cp = opnorm_counterexample(2)
        assert cp.p == cp.q == 2.0
        ab = a @ b.conj().T
        np.testing.assert_allclose(abs_power(ab, 1.0), np.diag([2, 0]), atol=1e-14)
        mean = (a.conj().T @ a + b.conj().T @ b) / 2
        np.testing.assert_allclose(mean, np.diag([2, 0.5]), atol=1e-15)
        assert np.linalg.norm(ab, 2) == pytest.approx(2.0)
        assert np.linalg.norm(mean, 2) == pytest.approx(2.0)
        assert np.linalg.norm(a.conj().T @ a - b.conj().T @ b) == pytest.approx(1.0)

    def test_padding(self):
        a, b, _ = opnorm_counterexample(3)
        np.testing.assert_allclose(np.diag(a), [np.sqrt(2), 1, 0])
        np.testing.assert_allclose(np.diag(b), [np.sqrt(2), 0, 0])

    def test_bad_dimension(self):
        with pytest.raises(BadDimension):
            opnorm_counterexample(1)


class TestContraction:
    def test_norm_bound(self):
        for seed in range(20):
            z = contraction(GeneratorConfig(seed=seed, dimension=5))
            assert np.linalg.norm(z, 2) <= 1 + 1e-12

    def test_identity_flag(self):
        np.testing.assert_array_equal(contraction(GeneratorConfig(dimension=3), identity=True), np.eye(3))

    def test_unclipped_matrix_is_unchanged(self):
        from youngbench.generators import clip_to_contraction

        m = np.diag([0.5, 0.2]) + 0.1j
        assert clip_to_contraction(m) is m


class TestMatrixJson:
    def test_roundtrip(self, tmp_path, rng):
        m = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        save_matrix(m, tmp_path / "m.json")
        assert np.array_equal(load_matrix(tmp_path / "m.json"), m)
        assert matrix_to_dict(np.eye(1)) == {"rows": 1, "cols": 1, "data": [[1.0, 0.0]]}

    @pytest.mark.parametrize(
        "obj, field",
        [
            ({"rows": 2, "cols": 2, "data": [[1, 0]]}, "data"),
            ({"rows": 0, "cols": 1, "data": []}, "rows"),
            ({"rows": 1, "cols": "x", "data": [[1, 0]]}, "cols"),
            ({"rows": 1, "cols": 1, "data": [[1, 0, 2]]}, "data"),
            ({"rows": 1, "cols": 1, "data": [["a", 0]]}, "data"),
        ],
    )
    def test_rejects(self, obj, field):
        with pytest.raises(ParseError, match=field):
            matrix_from_dict(obj)

    def test_rejects_invalid_json(self, tmp_path):
        (tmp_path / "x.json").write_text("{not json")
        with pytest.raises(ParseError):
            load_matrix(tmp_path / "x.json")

    def test_rejects_nan(self, tmp_path):
        (tmp_path / "x.json").write_text(json.dumps({"rows": 1, "cols": 1, "data": [[float("nan"), 0]]}))
        with pytest.raises(ParseError):
            load_matrix(tmp_path / "x.json")

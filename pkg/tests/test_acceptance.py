"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible even without
``-s``).  Values are re-derived with plain numpy where practical so the
verdicts do not rest on the code under test alone.
"""

import time

import numpy as np
import pytest

from youngbench.campaigns import run_campaign, trial_seed
from youngbench.generators import GeneratorConfig, opnorm_counterexample, random_pair
from youngbench.linalg import hermitian_eigen, is_psd
from youngbench.norms import parse_norms
from youngbench.young import ConjugatePair, build_partial_isometry, check_equivalence, young_spectra


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        return ok

    return emit


def _oracle_abs_power(m, s):
    # |m|^s from the eigen-decomposition of m*m
    lam, v = np.linalg.eigh(m.conj().T @ m)
    return (v * np.clip(lam, 0, None) ** (s / 2)) @ v.conj().T


def _oracle_spectra(a, b, p):
    q = p / (p - 1)
    gamma = np.linalg.svd(a @ b.conj().T, compute_uv=False)
    mean = _oracle_abs_power(a, p) / p + _oracle_abs_power(b, q) / q
    delta = np.sort(np.linalg.eigvalsh(0.5 * (mean + mean.conj().T)))[::-1]
    return gamma, delta


def _inequality_instances(trials=500, seed=0):
    dims, ps = (2, 3, 4, 5, 6, 7, 8), (1.5, 2.0, 3.0)
    for t in range(trials):
        n, p = dims[t % 7], ps[(t // 7) % 3]
        a, b = random_pair(GeneratorConfig(seed=trial_seed(seed, "singular-inequality", t), dimension=n, p=p))
        yield t, n, p, a, b


def test_criterion_1_singular_inequality(report):
    start = time.perf_counter()
    summary = run_campaign("singular-inequality", 500)
    elapsed = time.perf_counter() - start

    violations = 0
    oracle_mismatch = 0.0
    combos = set()
    for t, n, p, a, b in _inequality_instances():
        combos.add((n, p))
        gamma, delta = _oracle_spectra(a, b, p)
        violations += int(np.any(gamma > delta + 1e-8 * delta[0]))
        row = summary.rows[t]
        assert row["n"] == n and row["p"] == p
        s = young_spectra(a, b, ConjugatePair(p))
        oracle_mismatch = max(
            oracle_mismatch, np.max(np.abs(s.gamma - gamma)) / delta[0], np.max(np.abs(s.delta - delta)) / delta[0]
        )
    tool_violations = len(summary.failures)
    ok = violations == 0 and tool_violations == 0 and elapsed < 30 and oracle_mismatch <= 1e-10 and len(combos) == 21
    report(
        1,
        ok,
        f"500 pairs, {len(combos)} (n, p) combos, violations tool={tool_violations} oracle={violations}, "
        f"tool-vs-oracle {oracle_mismatch:.1e}, {elapsed:.2f}s",
    )
    assert ok


def test_criterion_2_equality_roundtrip(report):
    summary = run_campaign("equality-roundtrip", 200)
    rows = summary.rows
    all_four = all(r["cond1"] and r["cond2"] and r["cond3"] and r["cond4"] for r in rows)
    rel1 = max(r["cond1_relative_residual"] for r in rows)
    rel4 = max(r["cond4_relative_gap"] for r in rows)
    ok = len(rows) == 200 and all_four and rel1 <= 1e-6 and rel4 <= 1e-7
    report(2, ok, f"200 instances, all four true={all_four}, max rel1={rel1:.1e}, max rel4={rel4:.1e}")
    assert ok


def test_criterion_3_counterexample(report):
    a, b, cp = opnorm_counterexample(2)
    rep = check_equivalence(a, b, cp, parse_norms("op,dyadic"))
    op, dy = rep.cond3_norms
    # hand values: |ab*| = diag(2, 0), mean = diag(2, 1/2)
    ok = (
        abs(op.lhs - 2) <= 1e-10
        and abs(op.rhs - 2) <= 1e-10
        and abs((dy.rhs - dy.lhs) - 0.25) <= 1e-10
        and abs(rep.cond4_gap - 0.5) <= 1e-10
        and rep.overall_consistent
    )
    report(
        3,
        ok,
        f"op {op.lhs:.12f} vs {op.rhs:.12f}, dyadic diff {dy.rhs - dy.lhs:.12f}, cond4 gap {rep.cond4_gap:.12f}",
    )
    assert ok


def test_criterion_4_partial_isometry(report):
    psd_failures = 0
    worst_defect = 0.0
    for _, n, p, a, b in _inequality_instances():
        s = young_spectra(a, b, ConjugatePair(p))
        u = build_partial_isometry(s)
        conj = u @ s.abs_ab @ u.conj().T
        psd_failures += int(not is_psd(s.mean - conj).ok)
        # sum of spectral projections of |ab*| over its nonzero eigenvalues
        lam, v = np.linalg.eigh(_oracle_abs_power(a @ b.conj().T, 1.0))
        keep = lam > max(1e-12, 1e-9 * lam.max())
        support = v[:, keep] @ v[:, keep].conj().T
        worst_defect = max(worst_defect, float(np.linalg.norm(u.conj().T @ u - support)))
    ok = psd_failures == 0 and worst_defect <= 1e-8
    report(4, ok, f"500 instances, is_psd failures={psd_failures}, max ||u*u - sum p_k||_F={worst_defect:.1e}")
    assert ok


def test_criterion_5_lemma_suite(report):
    summary = run_campaign("lemma-checks", 500)
    polar = [r["value"] for r in summary.rows if r["check"] == "polar-identities"]
    hoelder = [r for r in summary.rows if r["check"].startswith("vector-hoelder")]
    disagreements = sum(r["equality"] != r["eigenvector"] for r in hoelder)
    lam = [r for r in summary.rows if r["check"] == "lambda-bound"]
    lam_violations = sum(not r["pass"] for r in lam)
    ok = (
        len(polar) == 500
        and max(polar) <= 1e-8
        and len(hoelder) >= 1000
        and disagreements == 0
        and len(lam) == 500
        and lam_violations == 0
    )
    report(
        5,
        ok,
        f"polar max residual {max(polar):.1e} over {len(polar)}, Hoelder {len(hoelder)} samples "
        f"{disagreements} disagreements, lambda bound {lam_violations} violations over {len(lam)}",
    )
    assert ok


def test_criterion_6_scalar_reduction(report):
    summary = run_campaign("scalar-young", 1000)
    mismatches = 0
    constructed = 0
    for r in summary.rows:
        p = r["p"]
        q = p / (p - 1)
        alpha, beta = r["alpha"], r["beta"]
        lhs, rhs = alpha * beta, alpha**p / p + beta**q / q
        mismatches += int(lhs > rhs * (1 + 1e-12))
        young_equal = abs(rhs - lhs) <= 1e-12 * rhs
        power_equal = abs(alpha**p - beta**q) <= 1e-12 * max(alpha**p, beta**q)
        mismatches += int(young_equal != power_equal or young_equal != r["young_equal"])
        if r["constructed_equality"]:
            constructed += 1
            mismatches += int(not young_equal)
    ok = len(summary.rows) == 1000 and mismatches == 0 and summary.ok and constructed >= 100
    report(6, ok, f"1000 samples ({constructed} constructed equalities), iff mismatches={mismatches}")
    assert ok


@pytest.mark.slow
def test_criterion_7_conjecture_lab(report):
    start = time.perf_counter()
    summary = run_campaign("conjecture-search", 10_000, dims=(2, 3, 4, 5, 6))
    elapsed = time.perf_counter() - start
    suff = [r["value"] for r in summary.rows if r["check"] == "sufficiency"]
    search = summary.parameters["search"]
    ok = (
        len(suff) == 200
        and max(suff) <= 1e-8
        and search["witness"] is None
        and search["trials"] == 10_000
        and search["feasible_points"] >= 5_000
        and max(search["settings"]["dims"]) <= 6
        and elapsed < 300
    )
    report(
        7,
        ok,
        f"sufficiency max {max(suff):.1e} over {len(suff)}, search {search['trials']} trials "
        f"({search['feasible_points']} points on the equality locus) witness={search['witness'] is not None}, "
        f"{elapsed:.1f}s",
    )
    assert ok


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_criterion_8_solver_floor(report, method):
    rng = np.random.default_rng(8)
    worst = 0.0
    for i in range(1000):
        n = 1 + i % 16
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        m = 0.5 * (g + g.conj().T)
        e = hermitian_eigen(m, method=method)
        recon = (e.vectors * e.values) @ e.vectors.conj().T
        worst = max(worst, float(np.linalg.norm(recon - m) / np.linalg.norm(m)))
    ok = worst <= 1e-8
    report(8, ok, f"{method}: 1000 Hermitian matrices n=1..16, max reconstruction error {worst:.1e} * ||m||_F")
    assert ok

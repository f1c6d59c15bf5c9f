"""Acceptance gates for the whole package.

One test per criterion; each prints a PASS/FAIL line with its runtime
(visible with ``pytest tests/test_acceptance.py -v -s``) and enforces
both the stated tolerance and the runtime budget.
"""
import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

import maxdep as md
from maxdep.cli import main, parse_csv


@contextmanager
def criterion(num, name, budget_s):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {num} ({name}): FAIL [{time.perf_counter() - t0:.2f}s]")
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < budget_s
    print(f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} "
          f"[{elapsed:.2f}s, budget {budget_s:g}s]")
    assert ok, f"runtime {elapsed:.2f}s exceeded the {budget_s}s budget"


def _sample(alpha, k, n, seed):
    return md.sample_logistic(md.SimulationSpec(md.LogisticModel(alpha, k), n, seed))


def test_criterion_1_exact_identities():
    with criterion(1, "exact identity suite", 1.0):
        rng = np.random.default_rng(101)
        for _ in range(200):
            n = int(rng.integers(2, 51))
            k = int(rng.integers(2, 7))
            p = md.PseudoObservations(
                tuple(f"C{j}" for j in range(k)), 1.0 - rng.random((n, k))
            )
            full = range(1, k + 1)
            assert abs(
                md.empirical_variogram(p, full)
                - md.empirical_variogram_via_pairs(p, full)
            ) <= 1e-12
            for a in range(1, k + 1):
                for b in range(a + 1, k + 1):
                    diff = md.empirical_variogram(p, (a, b)) - (
                        1.0 - 6.0 * md.empirical_madogram(p, (a, b))
                    )
                    assert abs(diff) <= 1e-12


def test_criterion_2_closed_form_endpoints():
    with criterion(2, "closed-form endpoints", 1.0):
        for k in range(2, 11):
            indep = md.logistic_extremal_coefficients(md.LogisticModel(1.0, k))
            assert abs(md.variogram_from_extremal_coefficients(indep)) <= 1e-14
            total = md.ExtremalCoefficientSet(
                k, {s: 1.0 for s in md.enumerate_subsets(k, 1)}
            )
            assert abs(md.variogram_from_extremal_coefficients(total) - 1.0) <= 1e-14


def test_criterion_3_empirical_endpoints():
    with criterion(3, "empirical endpoints", 5.0):
        rng = np.random.default_rng(300)
        for k in (2, 3, 5):
            col = rng.standard_normal(37)
            table = md.validate_table(
                np.column_stack([col] * k), tuple(f"C{j}" for j in range(k))
            )
            v = md.empirical_variogram(md.rank_transform(table), range(1, k + 1))
            assert v == 1.0
        for k, seed in ((2, 301), (3, 302)):
            t = _sample(1.0, k, 20000, seed)
            v = md.empirical_variogram(md.rank_transform(t), range(1, k + 1))
            assert abs(v) <= 0.03


def test_criterion_4_theory_vs_simulation():
    with criterion(4, "theory vs simulation", 15.0):
        seed = 400
        for alpha in (0.3, 0.5, 0.7):
            for k in (2, 3):
                t = _sample(alpha, k, 50000, seed)
                v = md.empirical_variogram(md.rank_transform(t), range(1, k + 1))
                truth = md.logistic_variogram(md.LogisticModel(alpha, k))
                assert abs(v - truth) <= 0.02, (alpha, k, v, truth)
                seed += 1


def test_criterion_5_monotone_and_bounded():
    with criterion(5, "concordance ordering and bounds", 1.0):
        grid = [round(0.1 * i, 1) for i in range(1, 11)]
        for k in (2, 3, 4, 5):
            vals = [md.logistic_variogram(md.LogisticModel(a, k)) for a in grid]
            assert all(b < a for a, b in zip(vals, vals[1:])), (k, vals)
            assert all(0.0 <= v <= 1.0 for v in vals), (k, vals)


def test_criterion_6_consistency():
    with criterion(6, "estimator consistency", 60.0):
        truth = md.logistic_variogram(md.LogisticModel(0.5, 2))
        rmse = []
        for j, n in enumerate((100, 1000, 10000)):
            errs = []
            for r in range(100):
                t = _sample(0.5, 2, n, 10_000 * (j + 1) + r)
                v = md.empirical_variogram(md.rank_transform(t), (1, 2))
                errs.append(v - truth)
            rmse.append(float(np.sqrt(np.mean(np.square(errs)))))
        assert rmse[0] >= rmse[1] >= rmse[2], rmse
        assert rmse[2] <= rmse[0] / 5.0, rmse


def test_criterion_7_madogram_inversion():
    with criterion(7, "madogram inversion", 5.0):
        t = _sample(0.5, 2, 50000, 700)
        nu = md.empirical_madogram(md.rank_transform(t), (1, 2))
        eps = md.extremal_coefficient_from_madogram(nu)
        assert abs(eps - math.sqrt(2.0)) <= 0.05


def test_criterion_8_sampler_margins():
    with criterion(8, "sampler margins", 5.0):
        for alpha in (0.3, 0.7):
            for n in (100, 10000):
                seed = 800 + int(round(alpha * 10)) + n
                t = _sample(alpha, 3, n, seed)
                assert (md.margin_check(t) < md.ks_critical_value(n)).all()


def test_criterion_9_cli_end_to_end(tmp_path, capsys):
    with criterion(9, "CLI end to end", 5.0):
        # simulate -> CSV -> estimate reproduces the library bit for bit
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        for dest in (out_a, out_b):
            assert main(["simulate", "--alpha", "0.5", "--k", "3", "--n", "500",
                         "--seed", "9", "--output", str(dest)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

        assert main(["estimate", "--input", str(out_a), "--subsets", "all"]) == 0
        first = capsys.readouterr().out
        assert main(["estimate", "--input", str(out_a), "--subsets", "all"]) == 0
        second = capsys.readouterr().out
        assert first == second

        spec = md.SimulationSpec(md.LogisticModel(0.5, 3), 500, 9)
        pseudo = md.rank_transform(md.sample_logistic(spec))
        for rep in json.loads(first):
            want = md.empirical_variogram(pseudo, md.SubsetIndex(rep["subset"]))
            assert rep["v_hat"] == want

        # comma-decimal fixture in a semicolon-delimited file
        fixture = tmp_path / "euro.csv"
        fixture.write_text("A;B\n0,4;0,13\n0,22;0,26\n", encoding="utf-8")
        table = parse_csv(str(fixture))
        assert table.values[0].tolist() == [0.4, 0.13]

"""Injected faults must be caught by the verification batteries."""

import math

import pytest

from longpaths import tiling
from longpaths.harness import verify


def tiling_batteries():
    results = [check() for check in verify.invariant_checks()]
    results.append(verify.check_grid_events(samples=500))
    return {r.name: r for r in results}


def test_unmutated_batteries_pass():
    results = tiling_batteries()
    assert all(r.passed for r in results.values()), [r.line() for r in results.values() if not r.passed]


def test_dense_threshold_off_by_one_is_caught(monkeypatch):
    monkeypatch.setattr(tiling, "DENSE_THRESHOLD", 7)
    results = tiling_batteries()
    assert not results["dense threshold"].passed
    assert not results["small-grid event oracle"].passed


def test_non_strict_ceiling_is_caught(monkeypatch):
    monkeypatch.setattr(tiling, "_strict_ceil", lambda x: math.ceil(x))
    results = tiling_batteries()
    assert not results["strict ceiling"].passed


def test_crossing_that_ignores_density_is_caught(monkeypatch):
    original = tiling._band_grid
    monkeypatch.setattr(tiling, "_band_grid", lambda dense, band: original(dense | True, band))
    assert not verify.check_grid_events(samples=300).passed


@pytest.mark.parametrize("level", ["fast"])
def test_suite_reports_named_checks(level):
    report = verify.SuiteReport(level, [verify.check_strict_ceiling(), verify.check_dense_threshold()])
    assert report.passed
    assert report.text().splitlines()[-1] == "fast: 2/2 checks passed"

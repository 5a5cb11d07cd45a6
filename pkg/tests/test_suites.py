from __future__ import annotations

import json

import numpy as np
import pytest

from albert_forge import batch, suites
from albert_forge.gf import field_of_order
from albert_forge.suites import SuiteReport, run_suite


def test_reports_are_deterministic():
    a = run_suite("octonion", (2, 4), seed=5, n_random=2000)
    b = run_suite("octonion", (2, 4), seed=5, n_random=2000)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert "elapsed" not in a.to_json() and "elapsed" in a.to_json(timings=True)


def test_seed_changes_random_instances_only():
    a = run_suite("albert", (5,), seed=1, n_random=500, n_jordan=200)
    b = run_suite("albert", (5,), seed=2, n_random=500, n_jordan=200)
    assert a.ok and b.ok
    assert [c.name for c in a.checks] == [c.name for c in b.checks]


def test_field_suite_all_small_orders():
    rep = run_suite("field")
    assert rep.ok, rep.failures()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_report_failures_listed():
    rep = SuiteReport("x", 0)
    rep.add("good", 2, True, 1)
    rep.add("bad", 2, [True, False], 2)
    assert not rep.ok and [c.name for c in rep.failures()] == ["bad"]


def test_trace_lemma_gram_detects_corruption(monkeypatch):
    F = field_of_order(5)
    X = np.random.default_rng(0).integers(0, 5, (200, 8))
    ok, _ = suites._trace_lemma_gram(F, X)
    assert ok
    real = batch.omul

    def broken(F, x, y):
        out = real(F, x, y).copy()
        out[..., 1] = F.vadd(out[..., 1], F.vmul(x[..., 2], y[..., 3]))
        return out

    monkeypatch.setattr(batch, "omul", broken)
    bad, _ = suites._trace_lemma_gram(F, X)
    assert not bad


def test_albert_suite_detects_broken_white_test(monkeypatch):
    real = batch.white_mask
    monkeypatch.setattr(batch, "white_mask", lambda F, V: ~real(F, V))
    rep = run_suite("albert", (3,), n_random=500, n_jordan=10)
    assert not rep.ok

# Copyright 2026 The Strahler Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the Python extension module."""

from fractions import Fraction

import pytest

import strahler


def test_enumeration():
    assert [strahler.catalan_count(n) for n in range(1, 8)] == [1, 1, 2, 5, 14, 42, 132]
    assert len(strahler.enumerate_trees(4)) == 5
    assert strahler.enumerate_trees(1) == ["()"]
    with pytest.raises(ValueError):
        strahler.enumerate_trees(0)


def test_branch_counts():
    assert strahler.branch_counts("((()())(((()())())()))") == [6, 2, 1]
    assert strahler.branch_counts("()") == [1]
    with pytest.raises(strahler.StructuralError):
        strahler.branch_counts("(()")


def test_sampling_is_seeded():
    a = strahler.sample_trees(9, 4, seed=3)
    assert a == strahler.sample_trees(9, 4, seed=3)
    assert all(strahler.branch_counts(t)[0] == 9 for t in a)


def test_exact_laws():
    assert strahler.transition_prob(4, 1) == Fraction(4, 5)
    assert strahler.dist_S(2, 4) == {Fraction(1): Fraction(4, 5), Fraction(2): Fraction(1, 5)}
    assert strahler.dist_ratio(1, 1, 4) == {
        Fraction(1, 4): Fraction(4, 5),
        Fraction(1, 2): Fraction(1, 5),
    }
    law = strahler.dist_S(3, 9)
    assert sum(law.values()) == 1
    floats = strahler.dist_S_float(3, 9)
    for j, p in enumerate(floats):
        assert p == pytest.approx(float(law.get(Fraction(j), 0)), abs=1e-14)


def test_moments():
    assert strahler.moment("raw", 1, 4) == Fraction(6, 5)
    assert strahler.moment("raw", 3, 4) == Fraction(12, 5)
    assert strahler.moment("negative", 1, 4) == Fraction(9, 10)
    assert strahler.moment("mixed", 0, 4, l=1) == Fraction(6, 5)
    assert strahler.moment_float("central", 2, 100) == pytest.approx(
        float(strahler.moment("central", 2, 100)), rel=1e-12)
    for n in range(3, 30):
        assert strahler.negative_recurrence_residual(2, n) == 0
    with pytest.raises(ValueError):
        strahler.moment("skew", 1, 4)


def test_mgf():
    assert strahler.mgf_hypergeometric(4, 2) == Fraction(12, 5)
    for n in range(2, 20):
        for x in (Fraction(1, 2), 1, 2, 5):
            assert strahler.mgf_hypergeometric(n, x) == strahler.mgf_direct(n, x)
    assert strahler.derivative_identity_residual(5, 2) == 0
    assert strahler.mgf(10, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_monte_carlo():
    assert strahler.predicted_variance("ratio", q=2, r=1) == Fraction(1, 4)
    assert strahler.predicted_variance("count", r=2) == Fraction(5, 256)
    a = strahler.run_experiment("count", r=1, n=512, samples=400, seed=1, hist_bins=5)
    b = strahler.run_experiment("count", r=1, n=512, samples=400, seed=1, hist_bins=5)
    assert a == b
    assert a["samples"] == 400
    assert sum(a["hist_counts"]) == 400
    assert 0 <= a["ks"] <= 1
    freqs = strahler.horton_check([1, 2], n=2048, samples=50, seed=2)
    assert set(freqs) == {1, 2}


def test_verify_all_exact_only():
    report = strahler.verify_all(skip_mc=True)
    assert [r["id"] for r in report] == list(range(1, 12))
    assert all(r["status"] == "PASS" for r in report[:7])
    assert all(r["status"] == "SKIP" for r in report[7:])

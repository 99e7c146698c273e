import math

import numpy as np
import pytest

from normlab import (
    KNOWN_NO,
    KNOWN_YES,
    UNKNOWN,
    EntrywiseMax,
    EntrywiseSum,
    GInd,
    Lp,
    MaxColSum,
    MaxOf,
    MaxRowSum,
    RandomStream,
    Scaled,
    Spectral,
    mnorm_eval,
    mnorm_is_algebra_candidate,
    sample_matrix,
    sample_vector,
)

A = [[1, 2], [3, 4]]


def test_closed_form_examples():
    assert mnorm_eval(EntrywiseSum(), A) == pytest.approx(10.0)
    assert mnorm_eval(EntrywiseMax(), A) == pytest.approx(4.0)
    assert mnorm_eval(MaxColSum(), A) == pytest.approx(6.0)
    assert mnorm_eval(MaxRowSum(), A) == pytest.approx(7.0)


def test_spectral_example():
    # sqrt of the larger root of l^2 - 30 l + 4 (char. polynomial of A^T A)
    expected = math.sqrt((30.0 + math.sqrt(884.0)) / 2.0)
    assert mnorm_eval(Spectral(), A) == pytest.approx(expected, rel=1e-9)
    assert mnorm_eval(Spectral(), A) == pytest.approx(5.4650, abs=5e-5)


def test_spectral_identity():
    assert mnorm_eval(Spectral(), np.eye(3)) == pytest.approx(1.0, abs=1e-10)


def test_spectral_matches_svd_oracle():
    g = RandomStream(31).generator()
    for n in (2, 3, 4):
        for _ in range(25):
            m = sample_matrix(g, n)
            expected = float(np.linalg.svd(m, compute_uv=False)[0])
            assert mnorm_eval(Spectral(), m) == pytest.approx(expected, rel=1e-8)


def test_spectral_sampled_lower_bound():
    g = RandomStream(37).generator()
    for n in (2, 3):
        for _ in range(10):
            m = sample_matrix(g, n)
            s = mnorm_eval(Spectral(), m)
            best = 0.0
            for _ in range(400):
                x = sample_vector(g, n)
                best = max(best, float(np.linalg.norm(m @ x) / np.linalg.norm(x)))
            assert best <= s * (1 + 1e-9)
            assert best >= 0.8 * s


def test_scaled_and_maxof():
    assert mnorm_eval(Scaled(2.0, EntrywiseMax()), A) == pytest.approx(8.0)
    spec = MaxOf((MaxColSum(), MaxRowSum()))
    assert mnorm_eval(spec, A) == pytest.approx(7.0)


def test_gind_spec_delegates():
    got = mnorm_eval(GInd(Lp(1), Lp(math.inf)), A)
    assert got == pytest.approx(4.0, rel=1e-9)  # entrywise max recovered


def test_submultiplicativity_catalog():
    specs = [
        EntrywiseSum(),
        MaxColSum(),
        MaxRowSum(),
        Spectral(),
        MaxOf((MaxColSum(), MaxRowSum())),
    ]
    g = RandomStream(41).generator()
    pairs = [(sample_matrix(g, 2), sample_matrix(g, 2)) for _ in range(10_000)]
    for spec in specs:
        for a, b in pairs:
            lhs = mnorm_eval(spec, a @ b)
            rhs = mnorm_eval(spec, a) * mnorm_eval(spec, b)
            assert lhs <= rhs * (1 + 1e-9)


def test_entrywise_max_violation_exists():
    j = np.ones((2, 2))
    assert mnorm_eval(EntrywiseMax(), j @ j) == pytest.approx(2.0)
    assert mnorm_eval(EntrywiseMax(), j) ** 2 == pytest.approx(1.0)


def test_entrywise_vs_aggregate_chain():
    g = RandomStream(43).generator()
    for n in (2, 3, 4):
        for _ in range(200):
            m = sample_matrix(g, n)
            em = mnorm_eval(EntrywiseMax(), m)
            es = mnorm_eval(EntrywiseSum(), m)
            for agg in (MaxColSum(), MaxRowSum()):
                v = mnorm_eval(agg, m)
                assert em <= v * (1 + 1e-12)
                assert v <= es * (1 + 1e-12)


def test_algebra_classification_catalog():
    assert mnorm_is_algebra_candidate(EntrywiseSum()) == KNOWN_YES
    assert mnorm_is_algebra_candidate(EntrywiseMax()) == KNOWN_NO
    assert mnorm_is_algebra_candidate(MaxColSum()) == KNOWN_YES
    assert mnorm_is_algebra_candidate(MaxRowSum()) == KNOWN_YES
    assert mnorm_is_algebra_candidate(Spectral()) == KNOWN_YES
    assert mnorm_is_algebra_candidate(MaxOf((MaxColSum(), MaxRowSum()))) == KNOWN_YES


def test_algebra_classification_gind():
    assert mnorm_is_algebra_candidate(GInd(Lp(math.inf), Lp(1))) == KNOWN_YES
    assert mnorm_is_algebra_candidate(GInd(Lp(1), Lp(math.inf))) == KNOWN_NO
    assert mnorm_is_algebra_candidate(GInd(Lp(2), Lp(2))) == KNOWN_YES


def test_algebra_classification_scaled():
    assert mnorm_is_algebra_candidate(Scaled(2.0, MaxColSum())) == KNOWN_YES
    assert mnorm_is_algebra_candidate(Scaled(0.5, MaxColSum())) == UNKNOWN


def test_matrix_norm_axioms_sampled():
    specs = [
        EntrywiseSum(),
        EntrywiseMax(),
        MaxColSum(),
        MaxRowSum(),
        Spectral(),
        Scaled(1.5, MaxColSum()),
        MaxOf((MaxColSum(), MaxRowSum())),
    ]
    g = RandomStream(47).generator()
    for n in (2, 3):
        for spec in specs:
            assert mnorm_eval(spec, np.zeros((n, n))) == 0.0
            for _ in range(60):
                x, y = sample_matrix(g, n), sample_matrix(g, n)
                a = complex(g.standard_normal(), g.standard_normal())
                vx, vy = mnorm_eval(spec, x), mnorm_eval(spec, y)
                assert vx > 0
                hom = abs(mnorm_eval(spec, a * x) - abs(a) * vx)
                assert hom <= 1e-9 * max(1.0, abs(a) * vx)
                tri = mnorm_eval(spec, x + y) - vx - vy
                assert tri <= 1e-9 * max(1.0, vx + vy)

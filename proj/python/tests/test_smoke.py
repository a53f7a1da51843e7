import math

import pytest

import qdeform as qd


def test_structure_function_recurrence():
    p = qd.DeformParams(2.0, 1.0, 0.0)
    for n in range(30):
        lhs = qd.structure_function(p, n + 1) - qd.structure_function(p, n)
        assert lhs == pytest.approx(2.0 ** (-n - 1), rel=1e-13)


def test_excluded_q_raises():
    with pytest.raises(qd.DomainError):
        qd.DeformParams(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        qd.DeformParams(-0.5, 1.0, 0.0)


def test_spectrum_first_levels():
    rows = qd.spectrum(qd.DeformParams(2.0, 1.0, 0.0), 4)
    assert len(rows) == 5
    assert rows[0][1] == pytest.approx(0.25)
    assert rows[1][1] == pytest.approx(0.625)


def test_normalization_matches_brute_sum():
    p = qd.DeformParams(0.5, 1.0, 0.0)
    x = 0.7
    coeff, total = 1.0, 1.0
    for n in range(1, 80):
        coeff /= qd.structure_function(p, n)
        total += coeff * x**n
    assert qd.normalization(p, x)[0] == pytest.approx(total, rel=1e-14)


def test_domain_radius():
    assert qd.domain_radius(qd.DeformParams(2.0, 1.0, 0.0)) == pytest.approx(1.0)
    assert math.isinf(qd.domain_radius(qd.DeformParams(0.5, 1.0, 0.0)))


def test_coherent_state_is_normalized():
    amps, tail, bound = qd.coherent_amplitudes(qd.DeformParams(0.5, 1.0, 0.0), 0.4 + 0.1j, 64)
    assert sum(abs(c) ** 2 for c in amps) == pytest.approx(1.0 - tail, abs=1e-14)
    assert tail <= bound


def test_mandel_sign_follows_regime():
    for q, sign in ((0.5, -1.0), (2.0, 1.0)):
        p = qd.DeformParams(q, 1.0, 0.0)
        _, _, mandel = qd.stats_point(p, 1e-3)
        assert math.copysign(1.0, mandel) == sign


def test_verify_suite_passes_for_defaults():
    for q in (2.0, 0.5):
        results = qd.run_verify(qd.DeformParams(q, 1.0, 0.0))
        assert all(status != "FAIL" for _, _, _, status in results)
        skipped = [name for name, _, _, status in results if status == "skipped"]
        assert skipped


def test_verify_rejects_unknown_tolerance():
    with pytest.raises(qd.DomainError):
        qd.run_verify(qd.DeformParams(2.0, 1.0, 0.0), 64, {"no_such_check": 1e-3})

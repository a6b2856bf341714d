"""Smoke tests for the compiled module."""

import math
import os
import tempfile

import pytest

import almostnet as an


def test_version():
    assert an.__version__


def test_derive_params_block_size():
    p = an.derive_params(q=2, d=2, m=4, n=10)
    assert p.t == 4
    assert an.derive_params(q=2, d=3, m=4, n=20).t == 6
    # override accepted when enough irreducibles exist
    p3 = an.derive_params(q=3, d=2, m=4, n=10, t=2)
    assert p3.t == 2 and p3.t_overridden


def test_derive_params_rejects_bad_input():
    with pytest.raises(ValueError):
        an.derive_params(q=4, d=2, m=1, n=10)  # composite base
    with pytest.raises(ValueError):
        an.derive_params(q=2, d=2, m=1, n=3)  # n below d*t


def test_irreducibles():
    assert an.irreducible_count(2, 4) == 3
    assert an.enumerate_irreducibles(2, 4, 3) == ["11001", "10011", "11111"]
    with pytest.raises(ValueError):
        an.enumerate_irreducibles(2, 4, 4)


def test_generate_and_verify_small():
    p = an.derive_params(q=2, d=2, m=2, n=10, seed=42)
    pts = an.generate_digit_points(p)
    assert len(pts) == 2 * 2**10
    assert all(len(c) == p.digits_per_coord for row in pts for c in row)
    report = an.verify(p)
    assert report.boxes_checked == 11 * 2**10
    # determinism
    assert an.generate_digit_points(p) == pts


def test_float_points_match_digits():
    p = an.derive_params(q=2, d=2, m=1, n=8, seed=3)
    digit_rows = an.generate_digit_points(p)
    float_rows = an.generate_float_points(p)
    assert float_rows.shape == (256, 2)
    for row, frow in zip(digit_rows[:32], float_rows[:32]):
        for digits, value in zip(row, frow):
            assert abs(an.to_float(digits, 2) - value) < 2.0 ** -p.digits_per_coord


def test_point_file_roundtrip_and_perfect_net():
    p = an.derive_params(q=3, d=2, m=1, n=10, t=2, seed=7)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "net.anet")
        an.write_point_file(p, path)
        perfect, report = an.perfect_net_check_file(path)
        assert perfect
        assert report.min_count == report.max_count == 3**8
        # verification at the full depth agrees with the in-memory route
        assert an.verify_file(path).eps_obs == an.verify(p).eps_obs


def test_selftest_passes():
    items = an.structural_selftest(q=2, d=1, t=4, n=12, seed=1, trials=200)
    assert items and all(passed for _, passed, _ in items)


def test_certificate_on_recorded_eps():
    p = an.derive_params(q=3, d=2, m=1, n=10, t=2, seed=7)
    eps = an.verify(p).eps_obs
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "net.anet")
        an.write_point_file(p, path, eps_obs=eps)
        cert, check = an.certificate_file(path, k=1)
        assert cert.matrix.shape == (2, 2)
        assert cert.matrix[0, 0] == 1.0
        assert check.passed
        assert check.max_offdiag <= 2 * eps + 1e-9


def test_generate_verified_trivial_target():
    p = an.derive_params(q=2, d=2, m=4, n=8, seed=9)
    params, eps_obs, retries = an.generate_verified(p, target_eps=4.0, max_retries=3)
    assert retries == 0 and eps_obs <= 4.0
    assert params.seed == 9

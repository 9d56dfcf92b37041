import pytest

from src.models import InvariantReport, Verdict
from src.topology import (
    delta, discriminant_degree, euler_breakdown, euler_closed, gamma, gamma_from_lattice,
    hypersurface_euler, sigma, sign_trend, theorem_b2, theorem_report
)


# --- Fibre data ---
def test_sigma_values():
    assert [sigma(n) for n in range(1, 6)] == [2, 0, 24, -200, 2610]


def test_sigma_divisibility_up_to_60():
    for n in range(1, 61):
        assert sigma(n) == hypersurface_euler(n), n


def test_discriminant_and_delta():
    assert discriminant_degree(2) == 12
    assert discriminant_degree(3) == 108
    assert delta(2) == 12
    assert delta(3) == -108
    assert delta(1) == -2


@pytest.mark.parametrize("fn", [sigma, hypersurface_euler, discriminant_degree, gamma])
@pytest.mark.parametrize("bad", [0, -1, True, 2.0])
def test_rejects_non_positive(fn, bad):
    with pytest.raises(ValueError):
        fn(bad)


# --- Gluing curve ---
def test_gamma_values():
    assert gamma(1) == -540
    assert gamma(2) == -1962


def test_gamma_matches_adjunction():
    for m in range(1, 101):
        assert gamma(m) == gamma_from_lattice(m), m


# --- Euler numbers ---
def test_mayer_vietoris_grid():
    for n in range(1, 11):
        for m in range(1, 101):
            breakdown = euler_breakdown(n, m)
            assert breakdown.e_X == euler_closed(n, m)
            assert breakdown.e_X == breakdown.e_X1 + breakdown.e_X2 - 2 * breakdown.e_X12


def test_surface_fibre_gives_constant_288():
    assert {euler_closed(2, m) for m in range(1, 200)} == {288}
    assert sign_trend(2, 1, 50) == "constant"


def test_threefold_fibre_value():
    assert euler_closed(3, 1) == -15840
    breakdown = euler_breakdown(3, 1)
    assert breakdown.sigma_n == 24
    assert breakdown.discriminant_points == 18 * 108
    assert breakdown.N == 5


def test_even_fibre_dimension_is_positive():
    assert euler_closed(4, 1) > 0
    assert sign_trend(4, 1, 20) == "increasing"
    assert sign_trend(3, 1, 20) == "decreasing"


def test_sign_law_at_m_100():
    for n in range(1, 11):
        value = euler_closed(n, 100)
        assert (value > 0) == (n % 2 == 0), n


def test_sign_trend_rejects_empty_range():
    with pytest.raises(ValueError):
        sign_trend(3, 5, 5)


def test_breakdown_round_trip():
    breakdown = euler_breakdown(4, 7)
    assert type(breakdown).from_dict(breakdown.to_dict()) == breakdown


# --- Invariant report ---
def test_theorem_b2():
    assert theorem_b2(4, 3) == 13
    assert theorem_b2(6, 3) == 5
    with pytest.raises(ValueError):
        theorem_b2(3, 1)


def test_report_N4():
    report = theorem_report(4, 3)
    assert report.b2_X == 13
    assert report.b2_X0 == 14
    assert report.e == 288
    assert report.a == 2
    assert report.in_theorem_range
    assert report.d_semistable
    assert report.ample_L is Verdict.AMPLE_CERTIFIED
    assert report.ample_C is Verdict.AMPLE_CERTIFIED
    assert report.free_L and report.free_C


def test_report_N5():
    report = theorem_report(5, 3)
    assert report.b2_X == 5
    assert report.a == 3
    assert theorem_report(5, 1).e == -15840


def test_report_N3_is_flagged():
    report = theorem_report(3, 2)
    assert not report.in_theorem_range
    assert report.b2_X is None
    assert report.b2_X0 is None
    assert report.e == euler_closed(1, 2)


def test_report_caps_degree():
    report = theorem_report(4, 6, alpha_cap=2)
    assert report.alpha_cap == 2
    assert report.ample_L is Verdict.AMPLE_UP_TO_DEGREE


@pytest.mark.parametrize("N", [2, 0, -4])
def test_report_rejects_small_N(N):
    with pytest.raises(ValueError):
        theorem_report(N, 1)


def test_report_round_trip():
    report = theorem_report(4, 2)
    assert InvariantReport.from_dict(report.to_dict()) == report

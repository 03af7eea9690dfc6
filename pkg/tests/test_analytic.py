import math
from fractions import Fraction

import mpmath
import pytest

from app.analytic.continuation import apply_mirror_numeric, compare_continuation, sample_points
from app.analytic.mellin_barnes import (
    BandError,
    ContourSpec,
    PoleProximityWarning,
    check_band,
    contour_residue,
    integrand_Fl,
    left_residue,
    mellin_barnes_integrate,
    residue_sum_left,
    right_residue,
)
from app.analytic.nilpotent import NilpotentComplex
from app.analytic.picard_fuchs import PfSeries, igw_coefficients, pf_residual
from app.analytic.series import (
    FJRW_RADIUS_LOG,
    GW_RADIUS_LOG,
    ConvergenceError,
    SeriesKind,
    eval_series,
    gamma_class_gw,
    h_gw,
    h_gw_term,
    i_fjrw_coefficient,
    i_from_h,
)
from app.analytic.special import (
    PoleError,
    complex_digamma,
    complex_gamma,
    complex_polygamma,
    digamma_shift_identity,
    gamma_nilpotent,
    rgamma_nilpotent,
)
from app.cohomology.gw import gw_exp
from app.mirror.mirror_map import build_mirror_map

BASE = -6 * math.log(3)


def close(a, b, tol):
    return abs(a - b) <= tol * max(1, abs(b))


# Special functions


def test_gamma_values():
    assert close(complex_gamma(1), 1, 1e-15)
    assert close(complex_gamma(mpmath.mpf(1) / 3) * complex_gamma(mpmath.mpf(2) / 3),
                 2 * mpmath.pi / mpmath.sqrt(3), 1e-15)
    assert close(complex_digamma(1), -mpmath.euler, 1e-15)
    assert close(complex_polygamma(1, 1), mpmath.pi ** 2 / 6, 1e-15)


def test_gamma_poles_raise():
    for z in (0, -2, mpmath.mpf(-5)):
        with pytest.raises(PoleError):
            complex_gamma(z)
        with pytest.raises(PoleError):
            complex_digamma(z)


def test_gamma_nilpotent_is_the_taylor_expansion():
    z0 = mpmath.mpc(0.7, 0.2)
    g = gamma_nilpotent(NilpotentComplex.p() + z0)
    psi, psi1 = mpmath.digamma(z0), mpmath.polygamma(1, z0)
    assert close(g[0], mpmath.gamma(z0), 1e-15)
    assert close(g[1], mpmath.gamma(z0) * psi, 1e-15)
    assert close(g[2], mpmath.gamma(z0) * (psi ** 2 + psi1) / 2, 1e-15)
    psi2 = mpmath.polygamma(2, z0)
    assert close(g[3], mpmath.gamma(z0) * (psi ** 3 + 3 * psi * psi1 + psi2) / 6, 1e-15)


def test_reciprocal_gamma_nilpotent():
    x = NilpotentComplex.p() * 3 + mpmath.mpc(0.4, -1.1)
    product = gamma_nilpotent(x) * rgamma_nilpotent(x)
    assert product.distance(NilpotentComplex.constant(1, 4)) < 1e-15


def test_gamma_nilpotent_at_a_pole():
    with pytest.raises(PoleError):
        gamma_nilpotent(NilpotentComplex.p() - 1)


def test_digamma_shift_identity():
    for d in (0, 1, 3, 4, 6, 7, 9, 10):
        assert abs(digamma_shift_identity(d)) < 1e-15
    with pytest.raises(ValueError):
        digamma_shift_identity(2)


def test_nilpotent_conversions():
    e = NilpotentComplex.from_gw(gw_exp(1))
    assert e.distance(NilpotentComplex.p().exp()) < 1e-15
    assert e.to_dict()[2] == [0.5, 0.0]
    x = NilpotentComplex.p() + 2
    assert x.pow_complex(3).distance(x ** 3) < 1e-15
    s, c = x.sin(), x.cos()
    assert (s * s + c * c).distance(NilpotentComplex.constant(1, 4)) < 1e-15


# Series


def test_gamma_class_gw():
    gamma = gamma_class_gw()
    assert close(gamma[0], 1, 1e-15)
    assert abs(gamma[1]) < 1e-15
    assert close(gamma[2], -mpmath.pi ** 2, 1e-15)


def test_igw_product_formula_ratio():
    a = igw_coefficients(6)
    for n in range(5):
        ratio = a[n + 1][0] / a[n][0]
        assert ratio == Fraction(9 * (3 * n + 1) ** 2 * (3 * n + 2) ** 2, (n + 1) ** 4)


def test_hgw_leading_term():
    result = eval_series("HGW", -40, terms=5)
    assert result.kind == SeriesKind.HGW
    assert close(result.value[0], 1, 1e-12)


def test_hgw_terms_match_the_recursion():
    log_v = complex(BASE - 2, 0.5)
    total = sum((h_gw_term(n, log_v) for n in range(20)), NilpotentComplex.constant(0, 4))
    assert total.relative_error(h_gw(log_v, terms=20).value) < 1e-15


def test_ifjrw_first_term():
    log_u = mpmath.mpc(0.3, 0.2)
    value = eval_series(SeriesKind.IFJRW, log_u, terms=1).value
    assert close(value.sector1[0], mpmath.exp(log_u), 1e-15)
    assert close(value.sector1[1], mpmath.exp(log_u) * log_u, 1e-15)
    assert value.sector2.norm() == 0


@pytest.mark.parametrize("log_v", [complex(BASE - 1.5, 0.3), complex(BASE - 3, -2.0)])
def test_igw_from_hgw(log_v):
    h_value = eval_series("HGW", log_v, terms=30).value
    i_value = eval_series("IGW", log_v, terms=30).value
    assert i_from_h("HGW", h_value).relative_error(i_value) < 1e-12


@pytest.mark.parametrize("log_u", [complex(0.5, 0.4), complex(1.5, -1.0)])
def test_ifjrw_from_hfjrw(log_u):
    h_value = eval_series("HFJRW", log_u, terms=30).value
    i_value = eval_series("IFJRW", log_u, terms=30).value
    assert i_from_h(SeriesKind.HFJRW, h_value).relative_error(i_value) < 1e-12


def test_series_domains():
    with pytest.raises(ConvergenceError):
        eval_series("IGW", 0)
    with pytest.raises(ConvergenceError):
        eval_series("HFJRW", float(FJRW_RADIUS_LOG) + 0.1)
    with pytest.raises(ValueError):
        eval_series("IGW", -20, terms=0)
    with pytest.raises(ValueError):
        eval_series("NOPE", -20)


def test_series_tail_estimate_is_small_deep_inside():
    result = eval_series("IGW", float(GW_RADIUS_LOG) - 5, terms=40)
    assert result.tail_estimate < 1e-30
    assert set(result.to_dict()) == {"kind", "value", "terms", "tail_estimate"}


# Picard-Fuchs


def test_pf_igw_is_exact():
    result = pf_residual("IGW", terms=40)
    assert result.exact
    assert result.residual == 0
    assert result.passed


@pytest.mark.parametrize("which", [PfSeries.HGW, PfSeries.IFJRW, PfSeries.HFJRW])
def test_pf_numeric_series(which):
    result = pf_residual(which, terms=30, tolerance=1e-10)
    assert result.coefficients_checked > 0
    assert result.passed, result.to_dict()


def test_ifjrw_coefficient_ratio():
    H = NilpotentComplex.p(2)
    for d in (0, 1, 3, 4, 6, 7):
        e = H + (d + 1)
        expected = i_fjrw_coefficient(d) * e ** 4 / ((e + 1) ** 2 * (e + 2) ** 2 * 729)
        assert i_fjrw_coefficient(d + 3).relative_error(expected) < 1e-12
    with pytest.raises(ValueError):
        i_fjrw_coefficient(2)


def test_pf_ifjrw_reads_the_product_formula(monkeypatch):
    import app.analytic.picard_fuchs as pf

    monkeypatch.setattr(pf, "i_fjrw_coefficient", lambda d: i_fjrw_coefficient(d) * (d + 1))
    assert not pf_residual("IFJRW", terms=30).passed
    assert pf_residual("HFJRW", terms=30).passed


def test_pf_with_one_term_is_vacuous():
    for which in ("IFJRW", "HFJRW"):
        result = pf_residual(which, terms=1)
        assert result.coefficients_checked == 0
        assert result.passed
    with pytest.raises(ValueError):
        pf_residual("IGW", terms=0)


# Mellin-Barnes


def test_band_checks():
    assert close(check_band(0, complex(-10, -math.pi)), math.pi, 1e-15)
    assert close(check_band(1, complex(-10, math.pi + 1)), math.pi - 1, 1e-15)
    with pytest.raises(BandError):
        check_band(0, complex(-10, 0))
    with pytest.raises(BandError):
        check_band(1, complex(-10, -0.5))


def test_contour_spec_validation():
    with pytest.raises(ValueError):
        ContourSpec(l=0, sigma=0.0)
    with pytest.raises(ValueError):
        ContourSpec(l=0, sigma=-0.3)
    with pytest.raises(ValueError):
        ContourSpec(l=0, height=-1)
    with pytest.raises(ValueError):
        mellin_barnes_integrate(1, complex(-10, math.pi), spec=ContourSpec(l=0))


def test_integrand_warns_near_a_pole():
    with pytest.warns(PoleProximityWarning):
        integrand_Fl(0, mpmath.mpc(-1.0 / 3 + 1e-8, 0), complex(-10, -math.pi))


@pytest.mark.parametrize("l", [0, 1])
def test_right_residues_by_contour(l):
    log_v = complex(BASE - 1, (2 * l - 1) * math.pi + 0.3)
    for n in (0, 1, 2):
        residue = contour_residue(l, n, log_v)
        assert residue.relative_error(right_residue(n, log_v)) < 1e-10
    assert contour_residue(l, -1, log_v).norm() < 1e-10 * right_residue(0, log_v).norm()
    assert right_residue(-1, log_v).norm() == 0


@pytest.mark.parametrize("l", [0, 1])
def test_left_residues_by_contour(l):
    log_v = complex(BASE + 2, (2 * l - 1) * math.pi - 0.4)
    for d, center in ((0, -1.0 / 3), (1, -2.0 / 3), (3, -4.0 / 3)):
        residue = contour_residue(l, center, log_v)
        assert residue.relative_error(left_residue(l, d, log_v)) < 1e-10


def test_left_residue_rejects_missing_poles():
    with pytest.raises(ValueError):
        left_residue(0, 2, complex(-5, -math.pi))
    with pytest.raises(ConvergenceError):
        residue_sum_left(0, complex(BASE - 1, -math.pi))


@pytest.mark.parametrize("l", [0, 1])
@pytest.mark.parametrize("offset", [1.5, 2.5])
def test_left_residue_sum_is_the_mirror_of_hfjrw(l, offset):
    log_v = complex(BASE + offset, (2 * l - 1) * math.pi)
    mirror_value = apply_mirror_numeric(build_mirror_map(l), eval_series("HFJRW", -log_v / 3).value)
    assert residue_sum_left(l, log_v).relative_error(mirror_value) < 1e-10


def test_sample_points():
    points = sample_points(1)
    assert len(points) == 6
    assert all(p.imag == math.pi for p in points)
    assert sum(p.real < BASE for p in points) == 3


@pytest.mark.slow
@pytest.mark.parametrize("l", [0, 1])
def test_continuation_at_sample_points(l):
    for log_v in sample_points(l, offsets=(1.5, 3.5)):
        report = compare_continuation(l, log_v)
        assert report.passed, report.to_dict()
        assert report.side == ("GW" if log_v.real < BASE else "FJRW")


@pytest.mark.slow
def test_integral_does_not_depend_on_sigma():
    log_v = complex(BASE + 2.5, -math.pi)
    a = mellin_barnes_integrate(0, log_v, spec=ContourSpec(l=0, sigma=-1.0 / 6))
    b = mellin_barnes_integrate(0, log_v, spec=ContourSpec(l=0, sigma=-0.25))
    assert a.value.relative_error(b.value) < 1e-9


@pytest.mark.slow
def test_perturbed_mirror_breaks_continuation():
    from app.cohomology.gw import GwClass
    from app.mirror.mirror_map import MirrorMap

    base = build_mirror_map(0)
    bumped = MirrorMap(l=0, columns=(base.columns[0] + GwClass.p() ** 3,) + base.columns[1:])
    report = compare_continuation(0, complex(BASE + 2.5, -math.pi), mirror=bumped)
    assert not report.passed

from fractions import Fraction

import pytest

from app.arith.eisenstein import ONE, EisensteinScalar, zeta_power
from app.cohomology.fjrw import FjrwClass, ch_kminus
from app.cohomology.gw import GwClass, gw_exp
from app.mf.orlov import ParameterRangeError
from app.mirror.checks import (
    OrlovMethod,
    check_elem_identities,
    check_main_theorem,
    check_mirror_closed_form,
    mirror_image_closed,
    slope_line_contribution,
    slope_line_factored,
)
from app.mirror.mirror_map import (
    BASIS_LABELS,
    MirrorMap,
    apply_mirror,
    build_mirror_map,
    build_mirror_map_matrix_form,
)


def test_h_column_constant_term():
    for k, label in ((1, "H^(1)"), (2, "H^(2)")):
        column = build_mirror_map(0).image(label)
        assert column[0] == (ONE - zeta_power(k)).inverse() * Fraction(1, 3)


def test_matrix_form_agrees_with_closed_columns():
    for l in range(-10, 11):
        assert build_mirror_map_matrix_form(l).columns == build_mirror_map(l).columns


def test_matrix_form_needs_enough_damping():
    with pytest.raises(ValueError):
        build_mirror_map_matrix_form(0, damping=4)


def test_matrix_is_row_major_by_p_degree():
    mirror = build_mirror_map(2)
    matrix = mirror.matrix
    assert len(matrix) == 4 and all(len(row) == 4 for row in matrix)
    assert matrix[3][1] == mirror.image("H^(1)")[3]


def test_apply_mirror_is_linear():
    mirror = build_mirror_map(1)
    x, y = ch_kminus(0, 0), ch_kminus(2, 1)
    assert apply_mirror(mirror, x + y) == apply_mirror(mirror, x) + apply_mirror(mirror, y)
    assert apply_mirror(mirror, FjrwClass(s1_H=ONE)) == mirror.columns[BASIS_LABELS.index("H^(1)")]


def _random_scalar(rng):
    return EisensteinScalar(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))


def _random_fjrw(rng):
    return FjrwClass(*(_random_scalar(rng) for _ in range(4)))


def test_apply_mirror_is_linear_on_random_samples(rng):
    mirrors = {l: build_mirror_map(l) for l in range(-3, 4)}
    for _ in range(300):
        mirror = mirrors[rng.randint(-3, 3)]
        c, x, y = _random_scalar(rng), _random_fjrw(rng), _random_fjrw(rng)
        assert apply_mirror(mirror, x * c + y) == apply_mirror(mirror, x) * c + apply_mirror(mirror, y)


def test_elementary_identities():
    for l in range(-6, 7):
        mirror = build_mirror_map(l)
        for q in range(-6, 7):
            report = check_elem_identities(l, q, mirror=mirror)
            assert report.passed, report.to_dict()
            assert [c.name for c in report.checks] == ["unit_power6", "h_power5", "h_power6", "combined"]


def test_mirror_closed_form():
    for l in range(-6, 7):
        for q in range(-6, 7):
            for m in (0, 1):
                assert check_mirror_closed_form(l, q, m).passed


def test_mirror_image_of_the_base_case():
    # U_4(ch K_-) = -e^{3p}
    assert apply_mirror(build_mirror_map(4), ch_kminus(0, 0)) == gw_exp(3) * -1
    assert mirror_image_closed(4, 0, 0) == gw_exp(3) * -1


def test_slope_lines_vanish():
    for l in range(-4, 5):
        for m in range(-2, 3):
            for t in range(-2, 3):
                contribution = slope_line_contribution(l, m, t)
                assert contribution == slope_line_factored(l, m, t)
                assert contribution.is_zero()


def test_main_comparison_closed_route():
    for t in range(4, 11):
        for q in range(-3, 4):
            for m in (0, 1):
                report = check_main_theorem(t, q, m, orlov_method=OrlovMethod.CLOSED)
                assert report.passed, report.to_dict()


def test_main_comparison_ledger_route(engine):
    report = check_main_theorem(4, 0, 0, orlov_method=OrlovMethod.LEDGER, engine=engine)
    assert report.passed
    assert report.checks[0].rhs == gw_exp(3) * -1
    for t, q in ((5, 0), (6, 1), (4, -2)):
        assert check_main_theorem(t, q, 1, engine=engine).passed


def test_main_comparison_both_routes(engine):
    report = check_main_theorem(6, 1, 1, orlov_method=OrlovMethod.BOTH, engine=engine)
    assert [c.name for c in report.checks] == ["main_ledger", "main_closed"]
    assert report.checks[0].rhs == report.checks[1].rhs
    assert report.passed
    assert report.to_dict()["params"]["method"] == "both"


@pytest.mark.slow
def test_main_theorem_on_the_full_grid_by_ledger(engine):
    checked = 0
    for t in range(4, 17):
        for q in range(-6, 7):
            if t - 3 - q < 1:
                continue
            for m in (0, 1):
                report = check_main_theorem(t, q, m, orlov_method=OrlovMethod.LEDGER, engine=engine)
                assert report.passed, report.to_dict()
                checked += 1
    assert engine.ledger_to(19).blocks()
    assert checked == 2 * sum(1 for t in range(4, 17) for q in range(-6, 7) if t - 3 - q >= 1)


def test_main_comparison_report_shape(engine):
    data = check_main_theorem(4, 0, 0, engine=engine).to_dict()
    assert data["params"] == {"t": 4, "q": 0, "m": 0, "method": "ledger"}
    assert data["pass"] is True
    assert set(data) == {"params", "lhs", "rhs", "pass"}


def test_perturbed_mirror_is_detected():
    base = build_mirror_map(5)
    bumped = MirrorMap(l=5, columns=(base.columns[0] + GwClass.p() ** 3,) + base.columns[1:])
    report = check_main_theorem(5, 0, 0, orlov_method=OrlovMethod.CLOSED, mirror=bumped)
    assert not report.passed


def test_ledger_route_below_first_window(engine):
    with pytest.raises(ParameterRangeError):
        check_main_theorem(3, 0, 0, orlov_method=OrlovMethod.LEDGER, engine=engine)

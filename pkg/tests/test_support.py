import math

import numpy as np
import pytest
from scipy.optimize import brentq

from wgamma.config import SweepConfig
from wgamma.errors import BoundaryError, DomainError
from wgamma.models import Params
from wgamma.support import (
    REGIONS,
    classify_by_roots,
    classify_region,
    cubic_discriminant,
    delta2,
    delta_at_zero,
    discriminant_quartic,
    g_curve,
    h_curve,
    is_positive_support,
    p_curves,
    p_poly,
    phase_diagram,
    positivity_verdict,
    q_curves,
    real_roots,
    support_edges,
    support_infimum,
)
from wgamma.transforms import density

M_GRID = np.linspace(0.2, 10, 40)
N_GRID = np.linspace(1, 6, 41)[1:]
BAND = 1e-2


def near_boundary(m: float, n: float) -> bool:
    if abs(n - h_curve(m)) < BAND or abs(m * n - 1) < BAND:
        return True
    return m <= 4 and abs(n - g_curve(m)) < BAND


def grid_points():
    for m in M_GRID:
        for n in N_GRID:
            if not near_boundary(float(m), float(n)):
                yield float(m), float(n)


def test_quartic_at_one_one():
    assert discriminant_quartic(Params(1, 1)).coefficients == (4, -12, -15, -4, 0)


def test_quartic_constant_term_matches_closed_form():
    rng = np.random.default_rng(1)
    for _ in range(50):
        params = Params(float(rng.uniform(0, 10)), float(rng.uniform(1, 6)))
        expected = delta_at_zero(params)
        assert discriminant_quartic(params)(0.0) == pytest.approx(expected, rel=1e-9, abs=1e-9)
    assert delta_at_zero(Params(1, 1)) == 0


def test_quartic_is_the_cubic_discriminant():
    rng = np.random.default_rng(2)
    ratios = []
    while len(ratios) < 100:
        params = Params(float(rng.uniform(0.1, 10)), float(rng.uniform(1, 6)))
        xi = float(rng.uniform(-10, 30))
        algebraic = cubic_discriminant(params, xi)
        if abs(algebraic) < 1.0:
            continue
        ratios.append(discriminant_quartic(params)(xi) / algebraic)
    assert ratios[0] > 0
    assert max(abs(r - ratios[0]) for r in ratios) < 1e-8 * ratios[0]


def test_delta2_signs():
    assert delta2(Params(3, 1)) == 0
    assert p_poly(Params(1, 1.2)) == pytest.approx(-10.072)
    assert delta2(Params(1, 1.2)) > 0
    assert p_poly(Params(10, 1.5)) == pytest.approx(4706)
    assert delta2(Params(10, 1.5)) < 0


def test_curve_values():
    assert h_curve(4) == 1.25
    assert g_curve(4) == pytest.approx(1, abs=1e-12)
    m_star = 2 * (5 + math.sqrt(51)) / 13
    assert q_curves(m_star)[0] == pytest.approx(1, abs=1e-12)


def test_g_solves_p_and_decreases():
    ms = np.linspace(0.05, 3.99, 80)
    values = [g_curve(float(m)) for m in ms]
    for m, n in zip(ms, values):
        assert abs(p_poly(Params(float(m), n))) < 1e-10
        assert n > 1
    assert all(a > b for a, b in zip(values, values[1:]))


def test_h_above_p1_below_two():
    for m in np.linspace(0.05, 1.99, 50):
        assert h_curve(float(m)) > p_curves(float(m))[0]


def test_p1_at_least_one():
    domain = list(np.linspace(0.05, 5 / 3, 30)) + list(np.linspace(2, 9 / math.sqrt(8), 30))
    for m in domain:
        assert p_curves(float(m))[0] >= 1 - 1e-12


def test_g_and_h_meet_once():
    m_star = brentq(lambda m: g_curve(m) - h_curve(m), 2, 3)
    assert m_star == pytest.approx(2.35992, abs=1e-4)
    assert h_curve(m_star) == pytest.approx(math.sqrt(-5 / 3 + 14 / (3 * math.sqrt(3))), abs=1e-6)
    assert h_curve(m_star) == pytest.approx(1.01372, abs=1e-4)


@pytest.mark.parametrize(
    "func, m",
    [(g_curve, 4.5), (g_curve, 0), (p_curves, 3.3), (q_curves, 3.5), (h_curve, 0)],
)
def test_curves_reject_out_of_domain(func, m):
    with pytest.raises(DomainError):
        func(m)


def test_positivity_examples():
    assert is_positive_support(Params(8, 2))
    assert not is_positive_support(Params(7, 2))
    assert not is_positive_support(Params(1, 1.2))
    assert is_positive_support(Params(8, 2.1))
    assert not is_positive_support(Params(8, 2.2))


def test_region_flips_across_h_at_m_eight():
    assert classify_region(Params(8, 2.0)).label == "D"
    assert classify_region(Params(8, 2.2)).label == "C"
    assert h_curve(8) > 2.0
    assert h_curve(8) < 2.2


def test_marchenko_pastur_case_is_flagged():
    verdict = positivity_verdict(Params(0.5, 1))
    assert verdict.positive
    assert verdict.marchenko_pastur_case
    assert not positivity_verdict(Params(8, 2)).marchenko_pastur_case


def test_support_edges_examples():
    assert support_edges(Params(1, 1)) == pytest.approx([0, 4])
    roots = real_roots(discriminant_quartic(Params(1, 1)))
    assert any(abs(r) < 1e-9 for r in roots)
    assert any(abs(r - 4) < 1e-9 for r in roots)

    edges = support_edges(Params(1, 1.2))
    assert len(edges) == 4
    assert sum(e < 0 for e in edges) == 2

    edges = support_edges(Params(10, 1.5))
    assert len(edges) == 2
    assert all(e > 0 for e in edges)


def test_support_edges_consistent_with_density():
    params = Params(1, 1.2)
    edges = support_edges(params)
    assert density(params, (edges[0] + edges[1]) / 2) > 0
    assert density(params, (edges[1] + edges[2]) / 2) == 0
    assert density(params, (edges[2] + edges[3]) / 2) > 0
    assert density(params, edges[0] - 1) == 0
    assert density(params, edges[3] + 1) == 0


def test_support_edges_reject_zero_m():
    with pytest.raises(DomainError):
        support_edges(Params(0, 2))


def test_support_infimum_counts_the_atom():
    assert support_infimum(Params(0.25, 1)) == 0.0
    assert support_infimum(Params(0.25, 2)) == support_edges(Params(0.25, 2))[0] < 0
    assert support_infimum(Params(8, 2)) == support_edges(Params(8, 2))[0]


def test_classify_examples():
    assert classify_region(Params(10, 1.5)).label == "D"
    assert classify_region(Params(1, 2)).label == "C"
    assert classify_region(Params(1, 1.2)).label == "A1"


def test_classify_refuses_boundary_points():
    on_h = Params(3, h_curve(3))
    with pytest.raises(BoundaryError):
        classify_region(on_h)
    label = classify_region(on_h, strict=False)
    assert label.on_h_boundary
    on_g = Params(2, g_curve(2))
    assert classify_region(on_g, strict=False).on_g_boundary


def test_classify_rejects_marchenko_pastur_line():
    with pytest.raises(DomainError):
        classify_region(Params(2, 1))


def test_closed_form_agrees_with_root_oracle():
    for m, n in grid_points():
        params = Params(m, n)
        assert classify_region(params).label == classify_by_roots(params).label, (m, n)


def test_positivity_matches_edges_and_density():
    xs = np.linspace(-5, -1e-3, 20)
    for m, n in grid_points():
        params = Params(m, n)
        positive = is_positive_support(params)
        assert positive == (support_edges(params)[0] >= -1e-9), (m, n)
        if positive:
            assert all(density(params, float(x)) == 0 for x in xs), (m, n)


def test_phase_diagram_covers_grid():
    config = SweepConfig(m_min=0.5, m_max=8, m_steps=5, n_min=1, n_max=3, n_steps=4)
    rows = phase_diagram(config, threads=2)
    assert len(rows) == 20
    assert (rows[0].m, rows[0].n) == (0.5, 1.0)
    assert rows[0].label == "MP"
    assert (rows[1].m, rows[1].n) == (0.5, pytest.approx(5 / 3))
    assert rows[-1].m == 8
    assert all(row.label in (*REGIONS, "MP") for row in rows)
    assert all(len(row.edges) in (2, 4) for row in rows)

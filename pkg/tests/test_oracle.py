import logging
import math

import mpmath
import numpy as np
import pandas as pd
import pytest

from hankel_fh.applications import ThinningSpec, clt_params, gap_probability_log, mgf_asymptotic
from hankel_fh.equilibrium import (
    REFERENCE_POTENTIALS,
    EnsembleClass,
    normalize_psi,
    potential_from_density,
    solve_density,
)
from hankel_fh.errors import DeterminantUnderflowError, InvalidInputError, InvalidSpecError
from hankel_fh.fh_asymptotics import WeightSpec
from hankel_fh.numerics_core import ChebSeries, integrate_jacobi_panel
from hankel_fh.oracle import (
    SWEEP_COLUMNS,
    _log_det,
    _new_context,
    convergence_sweep,
    correlation_ratio,
    exact_log_gaussian_mp,
    exact_log_jacobi_mp,
    exact_log_laguerre_mp,
    gauss_rule,
    mgf_ratio,
    moments,
    oracle_log_dn,
    panel_layout,
    thinned_expectation,
    thinned_log_expectation,
)

JACOBI_V = REFERENCE_POTENTIALS[EnsembleClass.JACOBI]
LAGUERRE_V = REFERENCE_POTENTIALS[EnsembleClass.LAGUERRE]
GAUSSIAN_V = REFERENCE_POTENTIALS[EnsembleClass.GAUSSIAN]
TINY = mpmath.mpf("1e-20")


def jacobi(alpha0=0.0, alpha_edge=0.0, points=(), W=None, interior=None, betas=None):
    m = len(points)
    return WeightSpec(
        ensemble="jacobi",
        V=JACOBI_V,
        W=W if W is not None else ChebSeries.constant(0.0),
        points=points,
        alphas=(alpha0, *(interior or (0,) * m), alpha_edge),
        betas=betas or (0,) * m,
    )


def assert_matrix_close(matrix, expected, tol=1e-30):
    for j, row in enumerate(expected):
        for k, value in enumerate(row):
            assert abs(matrix[j, k] - mpmath.mpf(value)) < tol


# --------------------------------------------------------------------------- #
# Quadrature and moments
# --------------------------------------------------------------------------- #


def test_gauss_rule_integrates_jacobi_weight():
    nodes, weights = gauss_rule(12, 0.5, 1.5, 256)
    ctx = _new_context(256)
    total = sum(w * (1 + x) for x, w in zip(nodes, weights))
    # int (1 + x)^{1.5} (1 - x)^{1.5} dx = 2^4 B(2.5, 2.5)
    assert abs(total - 16 * ctx.beta(2.5, 2.5)) < mpmath.mpf("1e-60")


@pytest.mark.parametrize("left_exp, right_exp", [(0.0, 0.0), (0.5, -0.3), (-0.6, 1.7)])
def test_gauss_rule_matches_double_precision_panel(left_exp, right_exp):
    nodes, weights = gauss_rule(20, left_exp, right_exp, 128)
    working = math.fsum(float(w) * math.cos(2.0 * float(x)) for x, w in zip(nodes, weights))
    panel = integrate_jacobi_panel(lambda x: np.cos(2.0 * x), -1.0, 1.0, left_exp, right_exp, 20)
    assert panel == pytest.approx(working, rel=1e-13, abs=1e-14)


def test_gauss_rule_rejects_bad_exponent():
    with pytest.raises(InvalidSpecError):
        gauss_rule(4, -1.0, 0.0, 128)


def test_moment_examples():
    assert_matrix_close(moments(jacobi(), 2, bits=256), [[2, 0], [0, mpmath.mpf(2) / 3]])
    assert_matrix_close(
        moments(WeightSpec(ensemble="laguerre", V=LAGUERRE_V), 2, n_param=2, bits=256),
        [[mpmath.mpf(1) / 4, -mpmath.mpf(3) / 16], [-mpmath.mpf(3) / 16, mpmath.mpf(5) / 32]],
    )
    assert_matrix_close(moments(jacobi(alpha0=1.0), 1, bits=256), [[2]])


def test_moment_matrix_is_hankel():
    matrix = moments(jacobi(points=(0.2,), W=ChebSeries.from_power([0.0, 0.5])), 4, bits=192)
    for j in range(4):
        for k in range(4):
            if j + 1 < 4 and k > 0:
                assert matrix[j + 1, k - 1] == matrix[j, k]


def test_panels_keep_away_from_singular_points():
    spec = jacobi(alpha0=0.5, points=(0.1,), interior=(0.5,))
    panels = panel_layout(spec, 4, 4, 256)
    assert panels[0][0] == -1.0 and panels[-1][1] == 1.0
    assert all(b1 == a2 for (_, b1), (a2, _) in zip(panels, panels[1:]))
    assert 0.1 in {a for a, _ in panels} and 0.1 in {b for _, b in panels}
    assert len(panels) > 2
    for a, b in panels:
        for s in (-1.0, 0.1):
            if s not in (a, b):
                assert max(a - s, s - b) >= 7.0 * (b - a)


def test_sizes_are_checked(monkeypatch):
    monkeypatch.setenv("HANKEL_FH_MAX_N", "4")
    with pytest.raises(InvalidInputError):
        oracle_log_dn(jacobi(), 0)
    with pytest.raises(InvalidInputError):
        oracle_log_dn(jacobi(), 2, bits=64)
    with pytest.raises(InvalidInputError):
        oracle_log_dn(jacobi(), 5)


# --------------------------------------------------------------------------- #
# Determinants
# --------------------------------------------------------------------------- #


def test_oracle_examples():
    result = oracle_log_dn(WeightSpec(ensemble="laguerre", V=LAGUERRE_V), 2, bits=256)
    assert result.log_abs == pytest.approx(-math.log(256.0), abs=1e-14)
    assert result.phase == 0.0
    assert oracle_log_dn(jacobi(), 2, bits=256).log_abs == pytest.approx(math.log(4.0 / 3.0), abs=1e-14)
    assert oracle_log_dn(jacobi(), 1, bits=256).log_abs == pytest.approx(math.log(2.0), abs=1e-14)


def test_oracle_matches_gaussian_closed_form():
    result = oracle_log_dn(WeightSpec(ensemble="gaussian", V=GAUSSIAN_V), 4, bits=384)
    assert abs(result.log_abs_mp - exact_log_gaussian_mp(4, 384)) < TINY


@pytest.mark.parametrize("n", [2, 4, 8])
@pytest.mark.parametrize("alpha0", [0.0, 0.5, 1.5])
def test_oracle_matches_laguerre_closed_form(n, alpha0):
    spec = WeightSpec(ensemble="laguerre", V=LAGUERRE_V, alphas=(alpha0, 0))
    result = oracle_log_dn(spec, n, bits=512)
    assert abs(result.log_abs_mp - exact_log_laguerre_mp(alpha0, n, 512)) < TINY


@pytest.mark.parametrize("n", [2, 4, 8])
@pytest.mark.parametrize("alpha0, alpha_edge", [(0.0, 0.0), (1.0, 0.0), (0.5, 1.5)])
def test_oracle_matches_jacobi_closed_form(n, alpha0, alpha_edge):
    result = oracle_log_dn(jacobi(alpha0, alpha_edge), n, bits=512)
    assert abs(result.log_abs_mp - exact_log_jacobi_mp(alpha0, alpha_edge, n, 512)) < TINY


def test_doubling_precision_is_stable():
    spec = jacobi(alpha0=0.5, points=(0.3,), interior=(1.0,), betas=(0.1j,))
    coarse = oracle_log_dn(spec, 4, bits=256)
    fine = oracle_log_dn(spec, 4, bits=512)
    assert abs(coarse.log_abs_mp - fine.log_abs_mp) < mpmath.mpf(2) ** -128


def test_positive_weights_have_negative_pivot_decay():
    result = oracle_log_dn(jacobi(), 6, bits=256)
    assert result.pivot_decay < 0.0
    assert result.to_dict()["n"] == 6


def test_singular_moment_matrix_underflows():
    ctx = _new_context(128)
    vector = [ctx.mpf(1), ctx.mpf(1), ctx.mpf(1)]
    with pytest.raises(DeterminantUnderflowError) as excinfo:
        _log_det(ctx, vector, 2, real=True)
    assert excinfo.value.pivot_decay == 0.0


def test_complex_alpha_is_pivoted_and_flagged(caplog):
    spec = jacobi(alpha0=complex(0.5, 0.3))
    with caplog.at_level(logging.WARNING):
        result = oracle_log_dn(spec, 2, bits=256)
    assert "Complex alpha" in caplog.text
    exact = complex(exact_log_jacobi_mp(complex(0.5, 0.3), 0.0, 2, 256))
    assert result.log_abs == pytest.approx(exact.real, abs=1e-3)
    assert math.remainder(result.phase - exact.imag, 2 * math.pi) == pytest.approx(0.0, abs=1e-3)


# --------------------------------------------------------------------------- #
# Ratios
# --------------------------------------------------------------------------- #


def test_thinned_expectation_examples():
    base = jacobi(points=(0.0,))
    assert abs(thinned_expectation(base, ThinningSpec({}), 3, bits=192) - 1) < mpmath.mpf("1e-40")
    s = 0.3
    value = thinned_expectation(base, ThinningSpec({1: s}), 1, bits=192)
    with mpmath.workprec(256):
        expected = (1 + mpmath.mpf(s)) / 2
    assert abs(value - expected) < mpmath.mpf("1e-40")


@pytest.mark.parametrize("n", [2, 5])
def test_uniform_thinning_scales_by_s_to_the_n(n):
    base = jacobi(points=(-0.3, 0.4))
    s = 0.3
    value = thinned_expectation(base, ThinningSpec({1: s, 2: s, 3: s}), n, bits=256)
    with mpmath.workprec(256):
        expected = mpmath.mpf(s) ** n
    assert abs(value - expected) < mpmath.mpf("1e-25")


def test_thinned_expectation_needs_plain_points():
    with pytest.raises(InvalidSpecError):
        thinned_log_expectation(jacobi(points=(0.0,), interior=(1.0,)), ThinningSpec({1: 0.5}), 2)


def test_mgf_ratio_examples():
    spec = jacobi(W=ChebSeries.from_power([0.0, 1.0]))
    assert mgf_ratio(spec, 0.0, 4) == 0.0
    assert mgf_ratio(spec, 1.0, 1, bits=256) == pytest.approx(math.log(math.sinh(1.0)), abs=1e-14)
    constant = jacobi(W=ChebSeries.constant(0.7))
    assert mgf_ratio(constant, 0.5, 3, bits=256) == pytest.approx(3 * 0.5 * 0.7, abs=1e-14)


def test_mgf_ratio_needs_real_weight():
    spec = jacobi(alpha0=complex(0.5, 0.1), W=ChebSeries.from_power([0.0, 1.0]))
    with pytest.raises(InvalidSpecError):
        mgf_ratio(spec, 0.2, 3)


def test_correlation_ratio_without_singularities_is_zero():
    spec = jacobi(alpha0=0.5, points=(0.2,))
    assert correlation_ratio(spec, 3, bits=192) == pytest.approx(0.0, abs=1e-14)


# --------------------------------------------------------------------------- #
# Sweeps
# --------------------------------------------------------------------------- #


def test_empty_sweep_is_empty_table():
    table = convergence_sweep(jacobi(), [])
    assert list(table.columns) == SWEEP_COLUMNS
    assert table.empty


def test_sweep_requires_ascending_n():
    with pytest.raises(InvalidInputError):
        convergence_sweep(jacobi(), [4, 2])


def test_sweep_is_independent_of_thread_count(monkeypatch):
    spec = jacobi(alpha0=0.5, points=(0.25,), interior=(1.0,), betas=(0.1j,))
    monkeypatch.setenv("HANKEL_FH_THREADS", "1")
    serial = convergence_sweep(spec, [2, 3, 4], bits=192, timing=False)
    monkeypatch.setenv("HANKEL_FH_THREADS", "3")
    from hankel_fh.config import get_settings

    get_settings.cache_clear()
    parallel = convergence_sweep(spec, [2, 3, 4], bits=192, timing=False)
    pd.testing.assert_frame_equal(serial, parallel)
    assert (serial["seconds"] == 0.0).all()
    assert (serial["phase_defect"] == 0.0).all()


def _assert_converging(table):
    tail = table[table["n"] >= 10]["delta"].abs().tolist()
    assert all(b <= a for a, b in zip(tail, tail[1:])), tail
    assert tail[-1] <= 0.05


SWEEP_N = list(range(6, 29, 2))


@pytest.mark.slow
@pytest.mark.parametrize("ensemble", ["laguerre", "jacobi"])
def test_sweep_converges_with_one_singularity(ensemble):
    V = REFERENCE_POTENTIALS[EnsembleClass.parse(ensemble)]
    spec = WeightSpec(ensemble=ensemble, V=V, points=(0.3,), alphas=(0, 1.0, 0), betas=(0.1j,))
    _assert_converging(convergence_sweep(spec, SWEEP_N, timing=False))


@pytest.mark.slow
def test_sweep_converges_for_synthesized_potential():
    psi = normalize_psi(ChebSeries.from_power([1.0, 0.2]), "laguerre")
    V = potential_from_density(psi, "laguerre")
    spec = WeightSpec(ensemble="laguerre", V=V, points=(0.3,), alphas=(0, 1.0, 0), betas=(0.1j,))
    _assert_converging(convergence_sweep(spec, SWEEP_N, timing=False))


@pytest.mark.slow
def test_mgf_ratio_approaches_clt_limit():
    W = ChebSeries.from_power([0.0, 1.0])
    spec = jacobi(alpha0=1.0, W=W)
    density = solve_density(JACOBI_V, "jacobi")
    params = clt_params("jacobi", density, W, alpha0=1.0)
    assert params.sigma2 == pytest.approx(0.25, abs=1e-12)
    gaps = []
    for n in (12, 24):
        exact = mgf_ratio(spec, 0.2, n)
        gaps.append(abs(exact - mgf_asymptotic("jacobi", density, W, 1.0, 0.0, 0.2, n)))
    assert gaps[1] <= 0.02
    assert gaps[1] < gaps[0]


@pytest.mark.slow
def test_gap_probability_against_thinned_expectation():
    base = jacobi(points=(0.0,))
    density = solve_density(JACOBI_V, "jacobi")
    thinning = ThinningSpec({1: 0.5})
    differences = []
    for n in (8, 16, 24):
        exact = float(thinned_log_expectation(base, thinning, n))
        differences.append(exact - gap_probability_log(base, thinning, n, density=density).real)
    logging.info("thinned expectation minus gap asymptotics: %s", differences)
    assert abs(differences[-1]) <= abs(differences[0]) + 1e-6

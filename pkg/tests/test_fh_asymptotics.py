import math

import numpy as np
import pytest

from hankel_fh.equilibrium import (
    REFERENCE_POTENTIALS,
    EnsembleClass,
    normalize_psi,
    potential_from_density,
    solve_density,
)
from hankel_fh.errors import InvalidInputError, InvalidSpecError
from hankel_fh.fh_asymptotics import (
    AsymptoticConstants,
    WeightSpec,
    asymptotic_log_dn,
    constants,
    dik_log_jacobi,
    error_scale,
    exact_log_gaussian,
    exact_log_jacobi,
    exact_log_laguerre,
    forrester_frankel_ratio,
    pairwise_terms,
    starting_point_constants,
)
from hankel_fh.numerics_core import ChebSeries
from hankel_fh.special_functions import log_barnes_g, zeta_prime_minus_one

LOG2 = math.log(2.0)
LOG2PI = math.log(2.0 * math.pi)
ZP = zeta_prime_minus_one()

GAUSSIAN_V = REFERENCE_POTENTIALS[EnsembleClass.GAUSSIAN]
LAGUERRE_V = REFERENCE_POTENTIALS[EnsembleClass.LAGUERRE]
JACOBI_V = REFERENCE_POTENTIALS[EnsembleClass.JACOBI]


def assert_constants_close(actual, expected, tol=1e-10):
    for a, b in zip(actual.as_tuple(), expected.as_tuple()):
        assert abs(a - b) <= tol, (actual, expected)


# --------------------------------------------------------------------------- #
# WeightSpec
# --------------------------------------------------------------------------- #


def test_minimal_jacobi_spec():
    spec = WeightSpec.from_dict({"class": "jacobi", "V": [0], "W": [0], "points": [], "alphas": [0, 0], "betas": []})
    assert spec.m == 0
    assert spec.full_points == (-1.0, 1.0)
    assert spec.is_real_positive()


def test_spec_accepts_monomial_and_complex_input():
    spec = WeightSpec.from_dict(
        {
            "class": "laguerre",
            "V_mono": [2, 2],
            "points": [0.3],
            "alphas": [0.5, [1.0, 0.2], 0],
            "betas": [[0, 0.1]],
        }
    )
    assert spec.V == LAGUERRE_V
    assert spec.alphas[1] == complex(1.0, 0.2)
    assert spec.betas == (0.1j,)
    assert not spec.is_real_positive()
    assert spec.beta_max == 0.0


@pytest.mark.parametrize(
    "data, message",
    [
        ({"class": "jacobi", "V": [0], "points": [0.0], "alphas": [0, 0, 0], "betas": [0.3]},
         "Re beta_1 must lie in (-1/4, 1/4)"),
        ({"class": "jacobi", "V": [0], "points": [0.5, 0.4], "alphas": [0, 0, 0, 0], "betas": [0, 0]},
         "-1 < t_1 < ... < t_m < 1"),
        ({"class": "jacobi", "V": [0], "points": [0.0], "alphas": [0, -1, 0], "betas": [0]},
         "Re alpha_1 must exceed -1"),
        ({"class": "jacobi", "V": [0], "points": [0.9995], "alphas": [0, 0, 0], "betas": [0]},
         ">= delta"),
        ({"class": "gaussian", "V": [1, 0, 1], "alphas": [1, 0]}, "gaussian weights require alpha_0 = alpha_1 = 0"),
        ({"class": "laguerre", "V": [2, 2], "alphas": [0, 1]}, "laguerre weights require alpha_1 = 0"),
        ({"class": "gaussian", "V": [1, 0, 1], "W_mono": [0, 0, 0, 1]}, "deg W <= deg V"),
        ({"class": "jacobi", "V": [0], "points": [0.0], "alphas": [0, 0], "betas": [0]}, "alphas must list"),
        ({"class": "jacobi"}, "missing required key 'V'"),
        ({"class": "jacobi", "V": [0], "V_mono": [0]}, "either 'V' or 'V_mono'"),
        ({"class": "jacobi", "V": [0], "alphas": [True, 0]}, "alpha_0 must be a number"),
    ],
)
def test_spec_validation_messages(data, message):
    with pytest.raises(InvalidSpecError) as excinfo:
        WeightSpec.from_dict(data)
    assert message in str(excinfo.value)


def test_spec_round_trips_through_dict():
    spec = WeightSpec(
        ensemble="jacobi",
        V=ChebSeries.from_power([0.0, 0.5, 0.25]),
        W=ChebSeries.from_power([0.1, -0.3]),
        points=(-0.2, 0.6),
        alphas=(0.5, 1.0, 0.0, 0.3),
        betas=(0.1j, complex(0.05, -0.2)),
        delta=1e-4,
    )
    assert WeightSpec.from_dict(spec.to_dict()) == spec


def test_without_interior_singularities_keeps_edges():
    spec = WeightSpec(
        ensemble="jacobi", V=JACOBI_V, points=(0.1,), alphas=(0.5, 1.0, 0.25), betas=(0.2j,)
    )
    plain = spec.without_interior_singularities()
    assert plain.alphas == (0.5, 0j, 0.25)
    assert plain.betas == (0j,)
    assert plain.points == spec.points


# --------------------------------------------------------------------------- #
# Constants against closed forms
# --------------------------------------------------------------------------- #


def test_gaussian_preset_constants():
    consts = constants(WeightSpec(ensemble="gaussian", V=GAUSSIAN_V))
    expected = AsymptoticConstants(-LOG2 - 0.75, LOG2PI, -1.0 / 12.0, ZP)
    assert_constants_close(consts, expected)
    assert consts.error_exponent == 1.0


@pytest.mark.parametrize("alpha0", [0.0, 0.5, 1.3, -0.4])
def test_laguerre_preset_matches_starting_point(alpha0):
    consts = constants(WeightSpec(ensemble="laguerre", V=LAGUERRE_V, alphas=(alpha0, 0)))
    expected = AsymptoticConstants(
        -LOG2 - 1.5,
        LOG2PI - alpha0 * (1.0 + LOG2),
        alpha0 * alpha0 / 2.0 - 1.0 / 6.0,
        alpha0 / 2.0 * LOG2PI + 2.0 * ZP - log_barnes_g(1.0 + alpha0),
    )
    assert_constants_close(consts, expected)
    assert_constants_close(starting_point_constants("laguerre", alpha0), expected)


@pytest.mark.parametrize("alpha0, alpha_edge", [(0.0, 0.0), (1.0, 0.0), (0.5, 1.5), (-0.3, 0.7)])
def test_jacobi_preset_matches_starting_point(alpha0, alpha_edge):
    consts = constants(WeightSpec(ensemble="jacobi", V=JACOBI_V, alphas=(alpha0, alpha_edge)))
    assert_constants_close(consts, starting_point_constants("jacobi", alpha0, alpha_edge))


def test_jacobi_trivial_constants():
    consts = constants(WeightSpec(ensemble="jacobi", V=JACOBI_V))
    expected = AsymptoticConstants(-LOG2, LOG2PI, -0.25, 3.0 * ZP + LOG2 / 12.0)
    assert_constants_close(consts, expected)


@pytest.mark.parametrize("ensemble", list(EnsembleClass))
def test_constant_shift_of_potential_moves_only_c1(ensemble):
    alphas = {"gaussian": (0, 0, 0), "laguerre": (0.7, 0.4, 0), "jacobi": (0.7, 0.4, 0.2)}[ensemble.value]
    spec = WeightSpec(
        ensemble=ensemble,
        V=REFERENCE_POTENTIALS[ensemble],
        points=(0.25,),
        alphas=alphas,
        betas=(0.1j,),
    )
    base = constants(spec)
    shifted = constants(spec.with_(V=spec.V + 0.75))
    assert shifted.C1 == pytest.approx(base.C1 - 0.75, abs=1e-12)
    for a, b in zip(shifted.as_tuple()[1:], base.as_tuple()[1:]):
        assert a == pytest.approx(b, abs=1e-12)


def test_real_positive_weight_has_real_constants():
    psi = normalize_psi(ChebSeries.from_power([1.0, 0.2]), "laguerre")
    V = potential_from_density(psi, "laguerre")
    spec = WeightSpec(
        ensemble="laguerre",
        V=V,
        W=ChebSeries.from_power([0.0, 0.3]),
        points=(-0.4, 0.3),
        alphas=(0.5, 1.0, 0.0, 0),
        betas=(0.0, 0.1j),
    )
    assert spec.is_real_positive()
    for value in constants(spec).as_tuple():
        assert value.imag == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("ensemble", ["laguerre", "jacobi"])
def test_conjugate_weight_conjugates_constants(ensemble):
    # conj of the jump factor with beta is the jump factor with -conj(beta)
    spec = WeightSpec(
        ensemble=ensemble,
        V=REFERENCE_POTENTIALS[EnsembleClass.parse(ensemble)],
        W=ChebSeries.from_power([0.1, 0.4]),
        points=(-0.4, 0.3),
        alphas=(0.6 + 0.2j, 0.5 + 0.3j, -0.2 + 0.1j, 0.3 if ensemble == "jacobi" else 0),
        betas=(0.1 + 0.05j, -0.05 + 0.2j),
    )
    mirrored = spec.with_(
        alphas=tuple(a.conjugate() for a in spec.alphas),
        betas=tuple(-b.conjugate() for b in spec.betas),
    )
    for a, b in zip(constants(mirrored).as_tuple(), constants(spec).as_tuple()):
        assert abs(a - b.conjugate()) <= 1e-12


@pytest.mark.parametrize("ensemble", list(EnsembleClass))
def test_plain_points_drop_out_of_constants(ensemble):
    edge = {"gaussian": 0, "laguerre": 0.6, "jacobi": 0.6}[ensemble.value]
    base = WeightSpec(
        ensemble=ensemble,
        V=REFERENCE_POTENTIALS[ensemble],
        W=ChebSeries.from_power([0.2, 1.0]),
        alphas=(edge, 0.4 if ensemble is EnsembleClass.JACOBI else 0),
    )
    reference = constants(base)
    for points in [(-0.4, 0.3), (-0.1, 0.6)]:
        spec = base.with_(points=points, alphas=(base.alphas[0], 0, 0, base.alphas[1]), betas=(0, 0))
        consts = constants(spec)
        assert abs(consts.C3 - reference.C3) <= 1e-12
        assert abs(consts.C4 - reference.C4) <= 1e-12


def test_pairwise_terms_ignore_point_labels():
    points = (-1.0, -0.4, 0.3, 1.0)
    alphas = (0.5, 1.0 + 0.2j, -0.3, 0.7)
    betas = (0j, 0.1 + 0.05j, -0.2j, 0j)
    reference = pairwise_terms(points, alphas, betas)
    for order in [(3, 2, 1, 0), (1, 3, 0, 2), (2, 0, 3, 1)]:
        permuted = pairwise_terms(
            [points[j] for j in order], [alphas[j] for j in order], [betas[j] for j in order]
        )
        assert abs(permuted - reference) <= 1e-12


def test_error_exponent_tracks_beta_max():
    spec = WeightSpec(ensemble="jacobi", V=JACOBI_V, points=(0.0,), alphas=(0, 0, 0), betas=(0.1 + 0.2j,))
    consts = constants(spec)
    assert consts.beta_max == pytest.approx(0.1)
    assert consts.error_exponent == pytest.approx(0.6)
    assert error_scale(consts, 16) == pytest.approx(math.log(16) / 16 ** 0.6)


def test_density_of_another_class_is_rejected():
    density = solve_density(LAGUERRE_V, "laguerre")
    with pytest.raises(InvalidSpecError):
        constants(WeightSpec(ensemble="jacobi", V=JACOBI_V), density=density)


# --------------------------------------------------------------------------- #
# log D_n
# --------------------------------------------------------------------------- #


def test_asymptotic_log_dn_examples():
    zero = AsymptoticConstants(0j, 0j, 0j, 0j)
    assert asymptotic_log_dn(zero, 7) == 0
    gaussian = starting_point_constants("gaussian")
    expected = 100 * (-LOG2 - 0.75) + 10 * LOG2PI - math.log(10) / 12 + ZP
    assert asymptotic_log_dn(gaussian, 10) == pytest.approx(expected, abs=1e-12)
    assert asymptotic_log_dn(gaussian, 1) == pytest.approx(gaussian.C1 + gaussian.C2 + gaussian.C4)


@pytest.mark.parametrize("n", [0, -3, 2.5, True])
def test_asymptotic_log_dn_rejects_bad_n(n):
    with pytest.raises(InvalidInputError):
        asymptotic_log_dn(AsymptoticConstants(0j, 0j, 0j, 0j), n)


@pytest.mark.parametrize(
    "alpha0, n, expected",
    [(0, 2, -math.log(256.0)), (0, 1, -LOG2), (1, 1, -2.0 * LOG2)],
)
def test_exact_log_laguerre_examples(alpha0, n, expected):
    assert exact_log_laguerre(alpha0, n) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "alpha0, alpha_edge, n, expected",
    [(0, 0, 1, LOG2), (0, 0, 2, math.log(4.0 / 3.0)), (1, 0, 1, LOG2)],
)
def test_exact_log_jacobi_examples(alpha0, alpha_edge, n, expected):
    assert exact_log_jacobi(alpha0, alpha_edge, n) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n, expected", [(1, 0.5 * math.log(math.pi / 2)), (2, math.log(math.pi / 32))])
def test_exact_log_gaussian_examples(n, expected):
    assert exact_log_gaussian(n) == pytest.approx(expected, abs=1e-12)


def test_exact_forms_approach_asymptotics():
    for ensemble, exact in [
        ("gaussian", lambda n: exact_log_gaussian(n)),
        ("laguerre", lambda n: exact_log_laguerre(0.5, n)),
        ("jacobi", lambda n: exact_log_jacobi(0.5, 0.25, n)),
    ]:
        alphas = {"gaussian": (0, 0), "laguerre": (0.5, 0), "jacobi": (0.5, 0.25)}[ensemble]
        consts = starting_point_constants(ensemble, *alphas)
        errors = [abs(exact(n) - asymptotic_log_dn(consts, n)) for n in (50, 100, 200)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-2


def test_exact_forms_reject_bad_edge_exponents():
    with pytest.raises(InvalidSpecError):
        exact_log_laguerre(-1.0, 3)
    with pytest.raises(InvalidSpecError):
        starting_point_constants("gaussian", 0.5)


# --------------------------------------------------------------------------- #
# Jacobi V = 0 expansion and the Laguerre ratio
# --------------------------------------------------------------------------- #


def test_dik_reduces_to_closed_form_without_singularities():
    spec = WeightSpec(ensemble="jacobi", V=JACOBI_V)
    for n in (1, 5, 12):
        assert dik_log_jacobi(spec, n) == pytest.approx(exact_log_jacobi(0, 0, n), abs=1e-12)


def _fit_n_logn_const(values, ns):
    matrix = np.array([[n, math.log(n), 1.0] for n in ns], dtype=complex)
    return np.linalg.solve(matrix, np.array(values, dtype=complex))


def test_dik_agrees_with_constants_coefficientwise():
    rng = np.random.default_rng(5)
    points = tuple(sorted(rng.uniform(-0.8, 0.8, size=2)))
    spec = WeightSpec(
        ensemble="jacobi",
        V=JACOBI_V,
        points=points,
        alphas=(0.0, *rng.uniform(0.0, 1.0, size=2), 0.0),
        betas=tuple(1j * rng.uniform(-0.5, 0.5, size=2)),
    )
    ns = (2, 4, 8)
    diffs = [dik_log_jacobi(spec, n) - exact_log_jacobi(0, 0, n) for n in ns]
    c_n, c_log, c_0 = _fit_n_logn_const(diffs, ns)
    with_fh = constants(spec)
    plain = constants(spec.without_interior_singularities())
    assert abs(c_n - (with_fh.C2 - plain.C2)) <= 1e-10
    assert abs(c_log - (with_fh.C3 - plain.C3)) <= 1e-10
    assert abs(c_0 - (with_fh.C4 - plain.C4)) <= 1e-10


def test_dik_and_constants_converge_together():
    spec = WeightSpec(ensemble="jacobi", V=JACOBI_V, points=(0.0,), alphas=(0, 0, 0), betas=(0.1j,))
    consts = constants(spec)
    gap = abs(dik_log_jacobi(spec, 2000) - asymptotic_log_dn(consts, 2000))
    assert gap < 1e-3


def test_dik_requires_flat_jacobi_weight():
    with pytest.raises(InvalidSpecError):
        dik_log_jacobi(WeightSpec(ensemble="jacobi", V=ChebSeries.from_power([0.0, 0.5])), 4)
    with pytest.raises(InvalidSpecError):
        dik_log_jacobi(WeightSpec(ensemble="laguerre", V=LAGUERRE_V), 4)


def test_forrester_frankel_examples():
    plain = WeightSpec(ensemble="laguerre", V=LAGUERRE_V)
    assert forrester_frankel_ratio(plain, 9) == pytest.approx(0.0, abs=1e-14)

    constant_w = plain.with_(W=ChebSeries.constant(0.4))
    assert forrester_frankel_ratio(constant_w, 9) == pytest.approx(9 * 0.4, abs=1e-12)

    linear = WeightSpec(ensemble="laguerre", V=LAGUERRE_V, W=ChebSeries.from_power([0.0, 1.0]), alphas=(2, 0))
    assert forrester_frankel_ratio(linear, 0) == pytest.approx(1.0 / 8.0 + 1.0, abs=1e-12)


def test_forrester_frankel_needs_no_interior_points():
    spec = WeightSpec(ensemble="laguerre", V=LAGUERRE_V, points=(0.0,), alphas=(0, 1, 0), betas=(0,))
    with pytest.raises(InvalidSpecError):
        forrester_frankel_ratio(spec, 4)

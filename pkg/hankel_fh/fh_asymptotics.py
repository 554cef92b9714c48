"""
Large-n asymptotics of Hankel determinants with Fisher-Hartwig singularities.

    log D_n = C1 n^2 + C2 n + C3 log n + C4 + O(log n / n^{1 - 4 beta_max})

for Gaussian-, Laguerre- and Jacobi-type weights

    w(x) = e^{-n V(x)} e^{W(x)} prod_j |x - t_j|^{alpha_j} omega_{beta_j}(x),

together with the exact finite-n product formulas for the reference weights
and the Deift-Its-Krasovsky expansion for V = W = 0 Jacobi weights.

Edge conventions: t_0 = -1, t_{m+1} = 1, beta_0 = beta_{m+1} = 0. The edge
exponents alpha_0, alpha_{m+1} are carried for every class and are forced to
zero where the class has a soft edge, so the sums over "all" points below are
written once for the three classes.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_settings
from .equilibrium import (
    REFERENCE_POTENTIALS,
    REFERENCE_PSI,
    EnsembleClass,
    EquilibriumDensity,
    edge_factor,
    solve_density,
    tail_integral,
)
from .errors import InvalidInputError, InvalidSpecError
from .numerics_core import ChebSeries, integrate_w1, pv_hilbert_T, quadratic_form_W
from .special_functions import barnes_ratio, log_barnes_g, zeta_prime_minus_one

LOG2 = math.log(2.0)
LOG2PI = math.log(2.0 * math.pi)


# --------------------------------------------------------------------------- #
# Weight description
# --------------------------------------------------------------------------- #


def _zero_series() -> ChebSeries:
    return ChebSeries((0.0,))


def _parse_complex(value: Any, name: str) -> complex:
    if isinstance(value, bool):
        raise InvalidSpecError(f"{name} must be a number or a [re, im] pair")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re_part, im_part = value
        if isinstance(re_part, (int, float)) and isinstance(im_part, (int, float)):
            if not isinstance(re_part, bool) and not isinstance(im_part, bool):
                return complex(float(re_part), float(im_part))
    raise InvalidSpecError(f"{name} must be a number or a [re, im] pair, got {value!r}")


def _complex_to_json(value: complex) -> List[float]:
    return [float(value.real), float(value.imag)]


def _series_from(data: Dict[str, Any], key: str, required: bool) -> ChebSeries:
    mono_key = f"{key}_mono"
    if key in data and mono_key in data:
        raise InvalidSpecError(f"give either '{key}' or '{mono_key}', not both")
    try:
        if key in data:
            return ChebSeries(tuple(data[key]))
        if mono_key in data:
            return ChebSeries.from_power(data[mono_key])
    except (TypeError, ValueError) as exc:
        raise InvalidSpecError(f"'{key}' must be a non-empty list of real numbers: {exc}") from exc
    if required:
        raise InvalidSpecError(f"missing required key '{key}' (or '{mono_key}')")
    return _zero_series()


@dataclass(frozen=True)
class WeightSpec:
    """Ensemble class, polynomial V and W, and the Fisher-Hartwig data.

    ``alphas`` holds alpha_0 .. alpha_{m+1} (edge exponents included);
    ``betas`` holds beta_1 .. beta_m.
    """

    ensemble: EnsembleClass
    V: ChebSeries
    W: ChebSeries = field(default_factory=_zero_series)
    points: Tuple[float, ...] = ()
    alphas: Tuple[complex, ...] = (0j, 0j)
    betas: Tuple[complex, ...] = ()
    delta: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "ensemble", EnsembleClass.parse(self.ensemble))
        object.__setattr__(self, "points", tuple(float(t) for t in self.points))
        object.__setattr__(
            self, "alphas", tuple(_parse_complex(a, f"alpha_{j}") for j, a in enumerate(self.alphas))
        )
        object.__setattr__(
            self, "betas", tuple(_parse_complex(b, f"beta_{j + 1}") for j, b in enumerate(self.betas))
        )
        if self.delta is None:
            object.__setattr__(self, "delta", get_settings().delta)
        object.__setattr__(self, "delta", float(self.delta))
        self._validate()

    def _validate(self) -> None:
        m = len(self.points)
        if not self.delta > 0.0:
            raise InvalidSpecError(f"delta must be positive, got {self.delta}")
        if len(self.alphas) != m + 2:
            raise InvalidSpecError(
                f"alphas must list alpha_0 .. alpha_{m + 1} ({m + 2} values), got {len(self.alphas)}"
            )
        if len(self.betas) != m:
            raise InvalidSpecError(f"betas must list beta_1 .. beta_{m} ({m} values), got {len(self.betas)}")

        for value in self.points + tuple(abs(z) for z in self.alphas + self.betas):
            if not math.isfinite(value):
                raise InvalidSpecError("points and exponents must be finite")
        full = (-1.0,) + self.points + (1.0,)
        for j in range(len(full) - 1):
            if not full[j] < full[j + 1]:
                raise InvalidSpecError("points must satisfy -1 < t_1 < ... < t_m < 1")
        for j in range(len(full) - 1):
            if full[j + 1] - full[j] < self.delta:
                raise InvalidSpecError(
                    f"min{{|t_j - t_k|, |t_j - 1|, |t_j + 1|}} >= delta = {self.delta:g} is violated "
                    f"between {full[j]:g} and {full[j + 1]:g}"
                )

        for j, alpha in enumerate(self.alphas):
            if not alpha.real > -1.0:
                raise InvalidSpecError(f"Re alpha_{j} must exceed -1, got {alpha.real:g}")
        for j, beta in enumerate(self.betas, start=1):
            if not -0.25 < beta.real < 0.25:
                raise InvalidSpecError(f"Re beta_{j} must lie in (-1/4, 1/4), got {beta.real:g}")

        if self.ensemble is EnsembleClass.GAUSSIAN and (self.alphas[0] != 0 or self.alphas[-1] != 0):
            raise InvalidSpecError(f"gaussian weights require alpha_0 = alpha_{m + 1} = 0")
        if self.ensemble is EnsembleClass.LAGUERRE and self.alphas[-1] != 0:
            raise InvalidSpecError(f"laguerre weights require alpha_{m + 1} = 0")
        if self.ensemble is not EnsembleClass.JACOBI and self.W.degree > self.V.degree:
            raise InvalidSpecError(
                f"deg W <= deg V is required on unbounded domains (deg W = {self.W.degree}, "
                f"deg V = {self.V.degree})"
            )

    # -- views --------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def full_points(self) -> Tuple[float, ...]:
        return (-1.0,) + self.points + (1.0,)

    @property
    def full_betas(self) -> Tuple[complex, ...]:
        return (0j,) + self.betas + (0j,)

    @property
    def alpha_edge(self) -> complex:
        return self.alphas[-1]

    @property
    def interior_alphas(self) -> Tuple[complex, ...]:
        return self.alphas[1:-1]

    @property
    def alpha_sum(self) -> complex:
        return sum(self.alphas, 0j)

    @property
    def beta_max(self) -> float:
        return max((abs(b.real) for b in self.betas), default=0.0)

    def is_real_positive(self) -> bool:
        """True when every alpha is real and every beta purely imaginary."""
        return all(a.imag == 0.0 for a in self.alphas) and all(b.real == 0.0 for b in self.betas)

    def with_(self, **changes: Any) -> "WeightSpec":
        return dataclasses.replace(self, **changes)

    def without_interior_singularities(self) -> "WeightSpec":
        m = self.m
        return self.with_(
            alphas=(self.alphas[0],) + (0j,) * m + (self.alphas[-1],),
            betas=(0j,) * m,
        )

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "class": self.ensemble.value,
            "V": list(self.V.coeffs),
            "W": list(self.W.coeffs),
            "points": list(self.points),
            "alphas": [_complex_to_json(a) for a in self.alphas],
            "betas": [_complex_to_json(b) for b in self.betas],
            "delta": self.delta,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WeightSpec":
        if not isinstance(data, dict):
            raise InvalidSpecError("a weight spec must be a JSON object")
        if "class" not in data:
            raise InvalidSpecError("missing required key 'class'")
        points = data.get("points", [])
        if not isinstance(points, list):
            raise InvalidSpecError("'points' must be a list of real numbers")
        for t in points:
            if isinstance(t, bool) or not isinstance(t, (int, float)):
                raise InvalidSpecError(f"'points' must be a list of real numbers, got {t!r}")
        m = len(points)
        alphas = data.get("alphas", [0] * (m + 2))
        betas = data.get("betas", [0] * m)
        if not isinstance(alphas, list) or not isinstance(betas, list):
            raise InvalidSpecError("'alphas' and 'betas' must be lists")
        delta = data.get("delta")
        if delta is not None and (isinstance(delta, bool) or not isinstance(delta, (int, float))):
            raise InvalidSpecError(f"'delta' must be a positive number, got {delta!r}")
        return cls(
            ensemble=EnsembleClass.parse(data["class"]),
            V=_series_from(data, "V", required=True),
            W=_series_from(data, "W", required=False),
            points=tuple(points),
            alphas=tuple(alphas),
            betas=tuple(betas),
            delta=delta,
        )


# --------------------------------------------------------------------------- #
# Constants container
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class AsymptoticConstants:
    C1: complex
    C2: complex
    C3: complex
    C4: complex
    beta_max: float = 0.0
    error_exponent: float = 1.0

    def as_tuple(self) -> Tuple[complex, complex, complex, complex]:
        return (self.C1, self.C2, self.C3, self.C4)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "C1": _complex_to_json(self.C1),
            "C2": _complex_to_json(self.C2),
            "C3": _complex_to_json(self.C3),
            "C4": _complex_to_json(self.C4),
            "beta_max": self.beta_max,
            "error_exponent": self.error_exponent,
        }


@dataclass(frozen=True)
class _ClassData:
    c1: float
    c3: float
    zeta_multiple: int
    # psi(t) enters interior logs as log(psi_scale * psi(t))
    psi_scale: float


_CLASS_DATA = {
    EnsembleClass.GAUSSIAN: _ClassData(c1=-LOG2 - 0.75, c3=-1.0 / 12.0, zeta_multiple=1, psi_scale=math.pi / 2.0),
    EnsembleClass.LAGUERRE: _ClassData(c1=-LOG2 - 1.5, c3=-1.0 / 6.0, zeta_multiple=2, psi_scale=math.pi),
    EnsembleClass.JACOBI: _ClassData(c1=-LOG2, c3=-0.25, zeta_multiple=3, psi_scale=math.pi),
}


# --------------------------------------------------------------------------- #
# Building blocks of C4
# --------------------------------------------------------------------------- #


def _edge_terms(ensemble: EnsembleClass, psi: ChebSeries, a0: complex, ae: complex) -> complex:
    data = _CLASS_DATA[ensemble]
    zp = data.zeta_multiple * zeta_prime_minus_one()
    psi_left = float(psi(-1.0))
    psi_right = float(psi(1.0))
    if ensemble is EnsembleClass.GAUSSIAN:
        scale = data.psi_scale
        return zp - (math.log(scale * psi_left) + math.log(scale * psi_right)) / 24.0
    if ensemble is EnsembleClass.LAGUERRE:
        return (
            zp
            - (1.0 - 4.0 * a0 * a0) / 8.0 * math.log(math.pi * psi_left)
            - math.log(math.pi * psi_right) / 24.0
            + a0 / 2.0 * LOG2PI
        )
    return (
        zp
        + LOG2 / 12.0
        - (1.0 - 4.0 * a0 * a0) / 8.0 * math.log(math.pi * psi_left)
        - (1.0 - 4.0 * ae * ae) / 8.0 * math.log(math.pi * psi_right)
        + (a0 + ae) / 2.0 * LOG2PI
        - (a0 * a0 + ae * ae) / 2.0 * LOG2
    )


def _local_terms(ensemble: EnsembleClass, t: float, alpha: complex, beta: complex) -> complex:
    one_minus_t2 = (1.0 - t) * (1.0 + t)
    if ensemble is EnsembleClass.GAUSSIAN:
        log_a = LOG2 + 0.5 * math.log(one_minus_t2)
        log_b = 3.0 * LOG2 + 1.5 * math.log(one_minus_t2)
    elif ensemble is EnsembleClass.LAGUERRE:
        log_a = 0.5 * (math.log1p(-t) - math.log1p(t))
        log_b = 2.0 * LOG2 + 1.5 * math.log1p(-t) + 0.5 * math.log1p(t)
    else:
        log_a = -0.5 * math.log(one_minus_t2)
        log_b = 2.0 * LOG2 + 0.5 * math.log(one_minus_t2)
    return alpha * alpha / 4.0 * log_a - beta * beta * log_b


def pairwise_terms(points: Sequence[float], alphas: Sequence[complex], betas: Sequence[complex]) -> complex:
    """Sum over j < k of the pair interaction in C4, over the full point list t_0 .. t_{m+1}.

    Points may be listed in any order; each keeps its own exponents.
    """
    order = sorted(range(len(points)), key=lambda j: points[j])
    points = [float(points[j]) for j in order]
    alphas = [alphas[j] for j in order]
    betas = [betas[j] for j in order]
    thetas = [math.acos(max(-1.0, min(1.0, t))) for t in points]
    total = 0j
    for k in range(len(points)):
        for j in range(k):
            bb = betas[j] * betas[k]
            aa = alphas[j] * alphas[k]
            if bb != 0:
                # 1 - t_j t_k - sqrt((1 - t_j^2)(1 - t_k^2)) = 2 sin^2((theta_j - theta_k) / 2)
                half = 0.5 * (thetas[j] - thetas[k])
                total += 2.0 * bb * (LOG2 + 2.0 * math.log(abs(math.sin(half))))
            exponent = aa / 2.0 + 2.0 * bb
            total -= aa / 2.0 * LOG2
            if exponent != 0:
                total -= exponent * math.log(abs(points[j] - points[k]))
            total += 0.5j * math.pi * (alphas[k] * betas[j] - alphas[j] * betas[k])
    return total


def jump_phase_sum(points: Sequence[float], betas: Sequence[complex]) -> complex:
    return sum((b * math.asin(t) for t, b in zip(points, betas)), 0j)


def w_terms(spec: WeightSpec) -> complex:
    """The W-dependent part of C4."""
    W = spec.W
    total = spec.alpha_sum / (2.0 * math.pi) * integrate_w1(W)
    total -= sum((a / 2.0 * float(W(t)) for t, a in zip(spec.full_points, spec.alphas)), 0j)
    for t, beta in zip(spec.points, spec.betas):
        total += 1j * beta / math.pi * math.sqrt(1.0 - t * t) * (-pv_hilbert_T(W, t))
    return total + quadratic_form_W(W)


# --------------------------------------------------------------------------- #
# Operations
# --------------------------------------------------------------------------- #


def constants(
    spec: WeightSpec,
    degree: Optional[int] = None,
    density: Optional[EquilibriumDensity] = None,
) -> AsymptoticConstants:
    ensemble = spec.ensemble
    if density is None:
        density = solve_density(spec.V, ensemble, degree)
    elif density.ensemble is not ensemble:
        raise InvalidSpecError(
            f"density was solved for the {density.ensemble.value} class, spec is {ensemble.value}"
        )
    data = _CLASS_DATA[ensemble]
    psi, g = density.psi, density.g
    V = spec.V
    e = edge_factor(ensemble)
    A = spec.alpha_sum
    a0, ae = spec.alphas[0], spec.alpha_edge

    C1 = data.c1 - 0.5 * integrate_w1((V - REFERENCE_POTENTIALS[ensemble]) * (psi + REFERENCE_PSI[ensemble]) * e)

    C2 = LOG2PI - A * LOG2 - A / (2.0 * math.pi) * integrate_w1(V) + integrate_w1(spec.W * g)
    C2 += sum((a / 2.0 * float(V(t)) for t, a in zip(spec.full_points, spec.alphas)), 0j)
    for t, beta in zip(spec.points, spec.betas):
        C2 += 1j * math.pi * beta * (1.0 - 2.0 * tail_integral(density, t))

    C3 = data.c3 + (a0 * a0 + ae * ae) / 2.0
    C3 += sum((a * a / 4.0 - b * b for a, b in zip(spec.interior_alphas, spec.betas)), 0j)

    C4 = _edge_terms(ensemble, psi, a0, ae)
    for t, alpha, beta in zip(spec.points, spec.interior_alphas, spec.betas):
        C4 += (alpha * alpha / 4.0 - beta * beta) * math.log(data.psi_scale * float(psi(t)))
        C4 += _local_terms(ensemble, t, alpha, beta)
        C4 += barnes_ratio(alpha, beta)
    C4 += pairwise_terms(spec.full_points, spec.alphas, spec.full_betas)
    C4 += 1j * A * jump_phase_sum(spec.points, spec.betas)
    C4 -= log_barnes_g(1.0 + a0) + log_barnes_g(1.0 + ae)
    C4 += w_terms(spec)

    beta_max = spec.beta_max
    return AsymptoticConstants(
        C1=complex(C1),
        C2=complex(C2),
        C3=complex(C3),
        C4=complex(C4),
        beta_max=beta_max,
        error_exponent=1.0 - 4.0 * beta_max,
    )


def _check_n(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise InvalidInputError(f"n must be an integer >= {minimum}, got {n!r}")
    return int(n)


def asymptotic_log_dn(consts: AsymptoticConstants, n: int) -> complex:
    n = _check_n(n)
    return consts.C1 * n * n + consts.C2 * n + consts.C3 * math.log(n) + consts.C4


def error_scale(consts: AsymptoticConstants, n: int) -> float:
    """log n / n^{error_exponent}, the size of the neglected remainder."""
    n = _check_n(n)
    return math.log(n) / n ** consts.error_exponent


def _check_edge_alpha(alpha: complex, name: str) -> complex:
    alpha = _parse_complex(alpha, name)
    if not alpha.real > -1.0:
        raise InvalidSpecError(f"Re {name} must exceed -1, got {alpha.real:g}")
    return alpha


def exact_log_gaussian(n: int) -> float:
    """log D_n for the weight e^{-2 n x^2} on the real line."""
    n = _check_n(n)
    return (
        0.5 * n * math.log(math.pi)
        - 0.5 * n * (n - 1) * LOG2
        + log_barnes_g(n + 1).real
        - 0.5 * n * n * math.log(2.0 * n)
    )


def exact_log_laguerre(alpha0: complex, n: int) -> complex:
    """log D_n for (1 + x)^{alpha0} e^{-2n(x + 1)} on [-1, inf)."""
    n = _check_n(n)
    a0 = _check_edge_alpha(alpha0, "alpha_0")
    return (
        -n * (n + a0) * math.log(2.0 * n)
        + log_barnes_g(n + 1)
        + log_barnes_g(n + a0 + 1)
        - log_barnes_g(1 + a0)
    )


def exact_log_jacobi(alpha0: complex, alpha_edge: complex, n: int) -> complex:
    """log D_n for (1 + x)^{alpha0} (1 - x)^{alpha_edge} on [-1, 1]."""
    n = _check_n(n)
    a0 = _check_edge_alpha(alpha0, "alpha_0")
    ae = _check_edge_alpha(alpha_edge, "alpha_{m+1}")
    return (
        (n * n + n * (a0 + ae)) * LOG2
        + log_barnes_g(n + 1)
        + log_barnes_g(n + a0 + 1)
        + log_barnes_g(n + ae + 1)
        + log_barnes_g(n + a0 + ae + 1)
        - log_barnes_g(1 + a0)
        - log_barnes_g(1 + ae)
        - log_barnes_g(2 * n + a0 + ae + 1)
    )


def starting_point_constants(
    ensemble: EnsembleClass,
    alpha0: complex = 0,
    alpha_edge: complex = 0,
) -> AsymptoticConstants:
    """Large-n expansion coefficients of the exact reference determinants."""
    ensemble = EnsembleClass.parse(ensemble)
    a0 = _check_edge_alpha(alpha0, "alpha_0")
    ae = _check_edge_alpha(alpha_edge, "alpha_{m+1}")
    zp = zeta_prime_minus_one()
    if ensemble is EnsembleClass.GAUSSIAN:
        if a0 != 0 or ae != 0:
            raise InvalidSpecError("gaussian weights require alpha_0 = alpha_{m+1} = 0")
        return AsymptoticConstants(complex(-LOG2 - 0.75), complex(LOG2PI), complex(-1.0 / 12.0), complex(zp))
    if ensemble is EnsembleClass.LAGUERRE:
        if ae != 0:
            raise InvalidSpecError("laguerre weights require alpha_{m+1} = 0")
        return AsymptoticConstants(
            complex(-1.5 - LOG2),
            LOG2PI - a0 * (1.0 + LOG2),
            a0 * a0 / 2.0 - 1.0 / 6.0,
            a0 / 2.0 * LOG2PI + 2.0 * zp - log_barnes_g(1 + a0),
        )
    s = a0 + ae
    return AsymptoticConstants(
        complex(-LOG2),
        (1.0 - s) * LOG2 + math.log(math.pi),
        (2.0 * a0 * a0 + 2.0 * ae * ae - 1.0) / 4.0,
        -(log_barnes_g(1 + a0) + log_barnes_g(1 + ae))
        + 3.0 * zp
        + (1.0 / 12.0 - s * s / 2.0) * LOG2
        + s / 2.0 * LOG2PI,
    )


def _is_zero_series(series: ChebSeries) -> bool:
    return bool(np.all(series.array == 0.0))


def dik_log_jacobi(spec: WeightSpec, n: int) -> complex:
    """exact_log_jacobi(0, 0, n) plus the DIK expansion of log J_n(alpha, beta, 0, 0) / J_n(0, 0, 0, 0)."""
    n = _check_n(n)
    if spec.ensemble is not EnsembleClass.JACOBI:
        raise InvalidSpecError("the DIK expansion applies to jacobi weights only")
    if not _is_zero_series(spec.V) or not _is_zero_series(spec.W):
        raise InvalidSpecError("the DIK expansion requires V = 0 and W = 0")
    A = spec.alpha_sum
    a0, ae = spec.alphas[0], spec.alpha_edge
    arcsin_sum = jump_phase_sum(spec.points, spec.betas)

    value = (2j * arcsin_sum - A * LOG2) * n
    log_coeff = (a0 * a0 + ae * ae) / 2.0
    log_coeff += sum((a * a / 4.0 - b * b for a, b in zip(spec.interior_alphas, spec.betas)), 0j)
    value += log_coeff * math.log(n)
    value += 1j * A * arcsin_sum
    value += (a0 + ae) / 2.0 * LOG2PI - (a0 * a0 + ae * ae) / 2.0 * LOG2
    value += pairwise_terms(spec.full_points, spec.alphas, spec.full_betas)
    for t, alpha, beta in zip(spec.points, spec.interior_alphas, spec.betas):
        value += barnes_ratio(alpha, beta)
        value -= (alpha * alpha / 4.0 + beta * beta) * 0.5 * math.log(1.0 - t * t)
        value -= 2.0 * beta * beta * LOG2
    value -= log_barnes_g(1 + a0) + log_barnes_g(1 + ae)
    return complex(value + exact_log_jacobi(0, 0, n))


def dik_error_scale(spec: WeightSpec, n: int) -> float:
    n = _check_n(n)
    return math.log(n) / n ** (1.0 - 2.0 * spec.beta_max)


def forrester_frankel_ratio(spec: WeightSpec, n: int, density: Optional[EquilibriumDensity] = None) -> complex:
    """Asymptotic log of L_n(alpha_0, 0, V, W) / L_n(alpha_0, 0, V, 0)."""
    n = _check_n(n, minimum=0)
    if spec.ensemble is not EnsembleClass.LAGUERRE:
        raise InvalidSpecError("the ratio is stated for laguerre weights")
    if spec.m != 0:
        raise InvalidSpecError(f"the ratio needs m = 0 (only alpha_0), got m = {spec.m}")
    if density is None:
        density = solve_density(spec.V, spec.ensemble)
    W = spec.W
    a0 = spec.alphas[0]
    shifted = W - float(W(-1.0))
    return complex(
        n * integrate_w1(W * density.g)
        + quadratic_form_W(W)
        + a0 / (2.0 * math.pi) * integrate_w1(shifted)
    )

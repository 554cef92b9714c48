"""
Random-matrix applications of the determinant asymptotics.

Partition functions, central limit theorems for linear statistics,
correlations of characteristic polynomials and gap probabilities of
piecewise-constant thinned spectra. Everything is returned in log form.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .equilibrium import EnsembleClass, EquilibriumDensity, solve_density
from .errors import InvalidSpecError
from .fh_asymptotics import (
    AsymptoticConstants,
    WeightSpec,
    asymptotic_log_dn,
    constants,
)
from .numerics_core import ChebSeries, integrate_w1, quadratic_form_W

PREFACTOR_ALL_INTERVALS = "all_intervals"
PREFACTOR_OUTER_INTERVALS = "outer_intervals"


# --------------------------------------------------------------------------- #
# Data types
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class CLTParams:
    mu: float
    sigma2: float
    centering: float

    def to_dict(self) -> Dict[str, float]:
        return {"mu": self.mu, "sigma2": self.sigma2, "centering": self.centering}


@dataclass(frozen=True)
class ThinningSpec:
    """Survival probabilities s_k for the thinned intervals k in K.

    Interval k is (t_{k-1}, t_k); interval 1 and interval m+1 extend to the
    ends of the domain.
    """

    survival: Dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: Dict[int, float] = {}
        for key, value in dict(self.survival).items():
            try:
                index = int(key)
                s = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidSpecError(f"thinning entry {key!r}: {value!r} is not an index/probability pair") from exc
            if not 0.0 < s <= 1.0:
                raise InvalidSpecError(f"survival s_{index} must lie in (0, 1], got {s:g}")
            cleaned[index] = s
        object.__setattr__(self, "survival", cleaned)

    @property
    def keep_set(self) -> Tuple[int, ...]:
        return tuple(sorted(self.survival))

    def check_range(self, m: int) -> None:
        for k in self.survival:
            if not 1 <= k <= m + 1:
                raise InvalidSpecError(f"thinned interval index {k} must lie in 1 .. {m + 1}")

    def survival_profile(self, m: int) -> Tuple[float, ...]:
        """(s~_1, ..., s~_{m+1}) with s~_j = 1 off the thinned set."""
        self.check_range(m)
        return tuple(self.survival.get(j, 1.0) for j in range(1, m + 2))

    def to_dict(self) -> Dict[str, Any]:
        return {"survival": {str(k): s for k, s in sorted(self.survival.items())}}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ThinningSpec":
        if not isinstance(data, dict):
            raise InvalidSpecError("a thinning spec must be a JSON object")
        survival = data.get("survival", {})
        if not isinstance(survival, dict):
            raise InvalidSpecError("'survival' must map interval indices to probabilities")
        return cls(survival=survival)


# --------------------------------------------------------------------------- #
# Partition functions and CLT
# --------------------------------------------------------------------------- #


def partition_asymptotics(
    ensemble: EnsembleClass,
    V: ChebSeries,
    alpha0: complex = 0,
    alpha_edge: complex = 0,
    degree: Optional[int] = None,
) -> AsymptoticConstants:
    spec = WeightSpec(ensemble=ensemble, V=V, alphas=(alpha0, alpha_edge))
    return constants(spec, degree=degree)


def _real_exponent(value: Any, name: str) -> float:
    value = complex(value)
    if value.imag != 0.0:
        raise InvalidSpecError(f"{name} must be real for the CLT, got {value}")
    if not value.real > -1.0:
        raise InvalidSpecError(f"{name} must exceed -1, got {value.real:g}")
    return value.real


def clt_params(
    ensemble: EnsembleClass,
    density: EquilibriumDensity,
    W: ChebSeries,
    alpha0: float = 0.0,
    alpha_edge: float = 0.0,
) -> CLTParams:
    ensemble = EnsembleClass.parse(ensemble)
    a0 = _real_exponent(alpha0, "alpha_0")
    ae = _real_exponent(alpha_edge, "alpha_{m+1}")
    if ensemble is EnsembleClass.GAUSSIAN and (a0 != 0.0 or ae != 0.0):
        raise InvalidSpecError("gaussian weights require alpha_0 = alpha_{m+1} = 0")
    if ensemble is EnsembleClass.LAGUERRE and ae != 0.0:
        raise InvalidSpecError("laguerre weights require alpha_{m+1} = 0")

    sigma2 = 2.0 * quadratic_form_W(W)
    centering = integrate_w1(W * density.g)
    w_mean = integrate_w1(W) / (2.0 * math.pi)
    mu = (a0 + ae) * w_mean - a0 / 2.0 * float(W(-1.0)) - ae / 2.0 * float(W(1.0))
    return CLTParams(mu=float(mu), sigma2=float(sigma2), centering=float(centering))


def mgf_asymptotic(
    ensemble: EnsembleClass,
    density: EquilibriumDensity,
    W: ChebSeries,
    alpha0: float,
    alpha_edge: float,
    t: float,
    n: int,
) -> float:
    """Large-n limit of log E[exp(t sum_i W(x_i))]."""
    params = clt_params(ensemble, density, W, alpha0, alpha_edge)
    return n * t * params.centering + t * params.mu + 0.5 * t * t * params.sigma2


# --------------------------------------------------------------------------- #
# Correlations and thinning
# --------------------------------------------------------------------------- #


def char_poly_correlation_log(
    spec: WeightSpec,
    n: int,
    density: Optional[EquilibriumDensity] = None,
) -> complex:
    """log E[prod_k |p_n(t_k)|^{alpha_k} e^{2i beta_k arg p_n(t_k)}]."""
    if density is None:
        density = solve_density(spec.V, spec.ensemble)
    with_fh = asymptotic_log_dn(constants(spec, density=density), n)
    without_fh = asymptotic_log_dn(constants(spec.without_interior_singularities(), density=density), n)
    phase = 1j * n * math.pi * sum(spec.betas, 0j)
    return complex(with_fh - without_fh - phase)


def thinning_to_fh(m: int, thinning: ThinningSpec) -> Tuple[complex, ...]:
    """beta_j = log(s~_j / s~_{j+1}) / (2 pi i), j = 1..m."""
    profile = thinning.survival_profile(m)
    betas = []
    for j in range(m):
        beta = cmath.log(profile[j] / profile[j + 1]) / (2j * math.pi)
        betas.append(complex(0.0, beta.imag))
    return tuple(betas)


def gap_prefactor(m: int, thinning: ThinningSpec, n: int, prefactor: str = PREFACTOR_ALL_INTERVALS) -> float:
    profile = thinning.survival_profile(m)
    if prefactor == PREFACTOR_ALL_INTERVALS:
        return 0.5 * n * sum(math.log(s) for s in thinning.survival.values())
    if prefactor == PREFACTOR_OUTER_INTERVALS:
        return 0.5 * n * (math.log(profile[0]) + math.log(profile[-1]))
    raise InvalidSpecError(
        f"prefactor must be {PREFACTOR_ALL_INTERVALS!r} or {PREFACTOR_OUTER_INTERVALS!r}, got {prefactor!r}"
    )


def gap_probability_log(
    spec_base: WeightSpec,
    thinning: ThinningSpec,
    n: int,
    prefactor: str = PREFACTOR_ALL_INTERVALS,
    density: Optional[EquilibriumDensity] = None,
) -> complex:
    """log P(no observed point in the thinned intervals)."""
    if any(a != 0 for a in spec_base.interior_alphas):
        raise InvalidSpecError("gap probabilities need alpha_1 = ... = alpha_m = 0")
    m = spec_base.m
    betas = thinning_to_fh(m, thinning)
    if density is None:
        density = solve_density(spec_base.V, spec_base.ensemble)
    thinned = asymptotic_log_dn(constants(spec_base.with_(betas=betas), density=density), n)
    plain = asymptotic_log_dn(constants(spec_base.with_(betas=(0j,) * m), density=density), n)
    value = complex(thinned - plain + gap_prefactor(m, thinning, n, prefactor))
    logging.debug("Gap probability n=%s K=%s prefactor=%s: %s", n, thinning.keep_set, prefactor, value)
    return value

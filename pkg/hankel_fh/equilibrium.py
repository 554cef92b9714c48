"""
Equilibrium measures of one-cut regular potentials supported on [-1, 1].

For every class the density is written rho(x) = g(x) / sqrt(1 - x^2) with

    g(t) = [2 pi + PV int V'(x) sqrt(1 - x^2) / (x - t) dx] / (2 pi^2)

and psi = g / (1 - x^2) (Gaussian), g / (1 - x) (Laguerre), g (Jacobi).
A potential whose support is not [-1, 1] leaves a non-zero g at a soft edge;
that residual is what the support check measures.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .config import get_settings
from .errors import DomainError, InvalidPotentialError, NotRegularError, SupportNotNormalizedError
from .numerics_core import (
    ChebSeries,
    cheb_fit,
    hilbert_U_series,
    integrate_w1,
    lobatto_nodes,
    pv_hilbert_T,
    u_to_t_coefficients,
)


class EnsembleClass(str, Enum):
    GAUSSIAN = "gaussian"
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"

    @classmethod
    def parse(cls, value: "str | EnsembleClass") -> "EnsembleClass":
        if isinstance(value, EnsembleClass):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as exc:
            raise InvalidPotentialError(
                f"unknown ensemble class {value!r}; expected gaussian, laguerre or jacobi"
            ) from exc


# x -> (1 - x^2), (1 - x), 1 as T-series
_EDGE_FACTORS = {
    EnsembleClass.GAUSSIAN: ChebSeries((0.5, 0.0, -0.5)),
    EnsembleClass.LAGUERRE: ChebSeries((1.0, -1.0)),
    EnsembleClass.JACOBI: ChebSeries((1.0,)),
}

REFERENCE_POTENTIALS = {
    EnsembleClass.GAUSSIAN: ChebSeries((1.0, 0.0, 1.0)),  # 2x^2
    EnsembleClass.LAGUERRE: ChebSeries((2.0, 2.0)),  # 2(x + 1)
    EnsembleClass.JACOBI: ChebSeries((0.0,)),
}

REFERENCE_PSI = {
    EnsembleClass.GAUSSIAN: 2.0 / math.pi,
    EnsembleClass.LAGUERRE: 1.0 / math.pi,
    EnsembleClass.JACOBI: 1.0 / math.pi,
}


def edge_factor(ensemble: EnsembleClass) -> ChebSeries:
    return _EDGE_FACTORS[EnsembleClass.parse(ensemble)]


def soft_edges(ensemble: EnsembleClass) -> tuple:
    ensemble = EnsembleClass.parse(ensemble)
    if ensemble is EnsembleClass.GAUSSIAN:
        return (-1.0, 1.0)
    if ensemble is EnsembleClass.LAGUERRE:
        return (1.0,)
    return ()


# --------------------------------------------------------------------------- #
# Density container
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class EquilibriumDensity:
    ensemble: EnsembleClass
    psi: ChebSeries
    normalization_defect: float
    edge_residual: float = 0.0

    @property
    def g(self) -> ChebSeries:
        """rho(x) sqrt(1 - x^2) as a Chebyshev series."""
        return self.psi * _EDGE_FACTORS[self.ensemble]

    def psi_at(self, x):
        return self.psi(x)

    def rho_at(self, x):
        x = np.asarray(x, dtype=float)
        return self.g(x) / np.sqrt(1.0 - x * x)

    def mass(self) -> float:
        return integrate_w1(self.g)


def _leading_power_coefficient(V: ChebSeries) -> tuple:
    power = V.trimmed(1e-13 * max(1.0, float(np.max(np.abs(V.array))))).to_power()
    power = np.trim_zeros(power, "b")
    if power.size == 0:
        return 0, 0.0
    return power.size - 1, float(power[-1])


def check_potential_growth(V: ChebSeries, ensemble: EnsembleClass) -> None:
    """Integrability of e^{-nV} on the unbounded part of the domain."""
    ensemble = EnsembleClass.parse(ensemble)
    degree, leading = _leading_power_coefficient(V)
    if ensemble is EnsembleClass.GAUSSIAN and (degree < 2 or degree % 2 or leading <= 0):
        raise InvalidPotentialError(
            "gaussian potentials must have even degree >= 2 and a positive leading coefficient"
        )
    if ensemble is EnsembleClass.LAGUERRE and (degree < 1 or leading <= 0):
        raise InvalidPotentialError(
            "laguerre potentials must have degree >= 1 and a positive leading coefficient"
        )


# --------------------------------------------------------------------------- #
# Operations
# --------------------------------------------------------------------------- #


def density_g_from_potential(V: ChebSeries) -> ChebSeries:
    """g = rho sqrt(1 - x^2) from the principal-value identity for V'."""
    pv = hilbert_U_series(V.derivative())
    return (pv + 2.0 * math.pi) * (1.0 / (2.0 * math.pi ** 2))


def solve_density(
    V: ChebSeries,
    ensemble: EnsembleClass,
    degree: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> EquilibriumDensity:
    settings = get_settings()
    ensemble = EnsembleClass.parse(ensemble)
    degree = settings.cheb_degree if degree is None else int(degree)
    tolerance = settings.density_tolerance if tolerance is None else tolerance
    check_potential_growth(V, ensemble)
    degree = max(degree, V.degree + 2, 4)

    g = density_g_from_potential(V)
    scale = max(1.0, float(np.max(np.abs(g.array))))
    edge_residual = max((abs(float(g(edge))) / scale for edge in soft_edges(ensemble)), default=0.0)

    # g / edge factor is a polynomial division; the remainder is the soft-edge residual
    quotient, _ = cheb.chebdiv(g.array, _EDGE_FACTORS[ensemble].array)
    psi = cheb_fit(ChebSeries(tuple(quotient)), degree).trimmed(1e-15)
    nodes = lobatto_nodes(degree)

    mass = integrate_w1(psi * _EDGE_FACTORS[ensemble])
    defect = abs(mass - 1.0)
    logging.debug(
        "Equilibrium %s: degree=%s defect=%.3e edge_residual=%.3e",
        ensemble.value,
        degree,
        defect,
        edge_residual,
    )
    if defect > tolerance or edge_residual > tolerance:
        raise SupportNotNormalizedError(
            f"equilibrium support of V is not [-1, 1] for the {ensemble.value} class "
            f"(normalization defect {defect:.3e}, soft-edge residual {edge_residual:.3e})"
        )

    psi_nodes = psi(nodes)
    if np.any(psi_nodes <= 0.0):
        worst = float(nodes[int(np.argmin(psi_nodes))])
        raise NotRegularError(
            f"equilibrium density is not positive on [-1, 1] (psi <= 0 near x={worst:.6f})"
        )
    return EquilibriumDensity(
        ensemble=ensemble,
        psi=psi,
        normalization_defect=defect,
        edge_residual=edge_residual,
    )


def tail_integral(density: EquilibriumDensity, t: float) -> float:
    """int_t^1 rho(x) dx, exact through x = cos(theta)."""
    t = float(t)
    if not -1.0 <= t <= 1.0:
        raise DomainError(f"tail integral needs t in [-1, 1], got t={t}")
    theta = math.acos(t)
    g = density.g.array
    k = np.arange(1, g.size)
    return float(g[0] * theta + np.sum(g[1:] * np.sin(k * theta) / k))


def tail_integral_identity(V: ChebSeries, t: float) -> float:
    """(sqrt(1 - t^2) / 2 pi^2) PV int V(x) / ((t - x) sqrt(1 - x^2)) dx + arccos(t) / pi."""
    t = float(t)
    return -math.sqrt(1.0 - t * t) / (2.0 * math.pi ** 2) * pv_hilbert_T(V, t) + math.acos(t) / math.pi


def potential_prime_from_density(psi: ChebSeries, ensemble: EnsembleClass) -> ChebSeries:
    """V' on [-1, 1] whose equilibrium density (for this class) has the given psi."""
    ensemble = EnsembleClass.parse(ensemble)
    g = (psi * _EDGE_FACTORS[ensemble]).array
    u_coeffs = -2.0 * math.pi * g[1:]
    if u_coeffs.size == 0:
        return ChebSeries((0.0,))
    return ChebSeries(tuple(u_to_t_coefficients(u_coeffs)))


def potential_from_density(psi: ChebSeries, ensemble: EnsembleClass) -> ChebSeries:
    """The potential with V(-1) = 0 matching ``psi``."""
    return potential_prime_from_density(psi, ensemble).antiderivative(anchor=-1.0)


def normalize_psi(psi: ChebSeries, ensemble: EnsembleClass) -> ChebSeries:
    mass = integrate_w1(psi * _EDGE_FACTORS[EnsembleClass.parse(ensemble)])
    if mass <= 0.0:
        raise NotRegularError(f"psi has non-positive mass {mass:.6g}")
    return psi * (1.0 / mass)


__all__ = [
    "EnsembleClass",
    "EquilibriumDensity",
    "REFERENCE_POTENTIALS",
    "REFERENCE_PSI",
    "check_potential_growth",
    "density_g_from_potential",
    "edge_factor",
    "normalize_psi",
    "potential_from_density",
    "potential_prime_from_density",
    "soft_edges",
    "solve_density",
    "tail_integral",
    "tail_integral_identity",
]

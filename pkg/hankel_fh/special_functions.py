"""
Complex log-Gamma, complex log-Barnes-G and the constant zeta'(-1).

Barnes G only ever appears through its logarithm. Arguments with Re z < 20 are
shifted upward with G(z + 1) = Gamma(z) G(z) and the large-argument series

    log G(z + 1) = z^2/2 log z - 3z^2/4 + z/2 log(2 pi) - 1/12 log z + zeta'(-1)
                   + sum_{k>=1} B_{2k+2} / (4k(k+1) z^{2k})

is applied there.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Union

import mpmath
import numpy as np
from scipy import special

from .errors import LogZeroError, PoleError

ComplexLike = Union[int, float, complex]

ZETA_PRIME_MINUS_ONE_DIGITS = "-0.16542114370045092921"
ASYMPTOTIC_THRESHOLD = 20.0
_SERIES_TERMS = 10


def _as_complex(z: ComplexLike) -> complex:
    value = complex(z)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"argument must be finite, got {z!r}")
    return value


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and float(z.real).is_integer()


# --------------------------------------------------------------------------- #
# zeta'(-1)
# --------------------------------------------------------------------------- #


def zeta_prime_minus_one_mp(dps: int = 40) -> mpmath.mpf:
    """zeta'(-1) = 1/12 - log A (A = Glaisher's constant) at ``dps`` digits."""
    with mpmath.workdps(dps):
        return +(mpmath.mpf(1) / 12 - mpmath.log(mpmath.glaisher))


@lru_cache(maxsize=1)
def zeta_prime_minus_one() -> float:
    return float(zeta_prime_minus_one_mp(40))


# --------------------------------------------------------------------------- #
# Gamma and Barnes G
# --------------------------------------------------------------------------- #


def log_gamma(z: ComplexLike) -> complex:
    """Principal branch of log Gamma(z)."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z={z.real:g}")
    return complex(special.loggamma(z))


@lru_cache(maxsize=1)
def _barnes_series_coefficients() -> np.ndarray:
    bern = special.bernoulli(2 * _SERIES_TERMS + 2)
    return np.array(
        [bern[2 * k + 2] / (4.0 * k * (k + 1)) for k in range(1, _SERIES_TERMS + 1)]
    )


def log_barnes_g_asymptotic(z: ComplexLike) -> complex:
    """Large-argument series for log G(z); accurate to roundoff for Re z >= 20."""
    w = _as_complex(z) - 1.0
    log_w = complex(np.log(w))
    value = (
        0.5 * w * w * log_w
        - 0.75 * w * w
        + 0.5 * w * math.log(2.0 * math.pi)
        - log_w / 12.0
        + zeta_prime_minus_one()
    )
    inv_w2 = 1.0 / (w * w)
    power = inv_w2
    for coeff in _barnes_series_coefficients():
        value += coeff * power
        power *= inv_w2
    return complex(value)


def log_barnes_g(z: ComplexLike) -> complex:
    """log G(z), continued from the real axis through the Gamma recurrence."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise LogZeroError(f"Barnes G vanishes at z={z.real:g}")
    if z.real >= ASYMPTOTIC_THRESHOLD:
        return log_barnes_g_asymptotic(z)
    shift = int(math.ceil(ASYMPTOTIC_THRESHOLD - z.real))
    total = log_barnes_g_asymptotic(z + shift)
    for k in range(shift):
        total -= complex(special.loggamma(z + k))
    return total


def barnes_ratio(alpha: ComplexLike, beta: ComplexLike) -> complex:
    """log[G(1 + a/2 + b) G(1 + a/2 - b) / G(1 + a)]."""
    alpha = _as_complex(alpha)
    beta = _as_complex(beta)
    return (
        log_barnes_g(1.0 + alpha / 2.0 + beta)
        + log_barnes_g(1.0 + alpha / 2.0 - beta)
        - log_barnes_g(1.0 + alpha)
    )


def barnes_integral_identity(z: ComplexLike) -> complex:
    """Closed form of int_0^z log Gamma(1 + x) dx."""
    z = _as_complex(z)
    return (
        0.5 * z * math.log(2.0 * math.pi)
        - 0.5 * z * (z + 1.0)
        + z * log_gamma(z + 1.0)
        - log_barnes_g(z + 1.0)
    )

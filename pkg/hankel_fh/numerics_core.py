"""
Chebyshev spectral engine on [-1, 1].

Lobatto interpolation, Gauss-type weighted quadrature and the exact
principal-value (finite Hilbert transform) identities

    PV int T_k(x) / ((x - t) sqrt(1 - x^2)) dx      =  pi U_{k-1}(t)
    PV int U_{k-1}(y) sqrt(1 - y^2) / (y - t) dy    = -pi T_k(t)

Both PV helpers keep (x - t) in the denominator; callers flip signs explicitly.
All routines are double precision and hold no shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import chebyshev as cheb
from scipy import fft, special

from .config import get_settings
from .errors import DomainError, InvalidInputError

Number = Union[int, float]
RealFunction = Callable[[np.ndarray], np.ndarray]


# --------------------------------------------------------------------------- #
# Chebyshev series
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ChebSeries:
    """Chebyshev-T expansion ``sum_k coeffs[k] * T_k(x)`` on [-1, 1]."""

    coeffs: Tuple[float, ...]

    def __post_init__(self) -> None:
        try:
            values = np.atleast_1d(np.asarray(self.coeffs, dtype=float)).ravel()
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"Chebyshev coefficients must be real numbers: {exc}") from exc
        if values.size == 0:
            raise InvalidInputError("a Chebyshev series needs at least one coefficient")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("Chebyshev coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(float(v) for v in values))

    @classmethod
    def constant(cls, value: Number) -> "ChebSeries":
        return cls((float(value),))

    @classmethod
    def from_power(cls, coeffs: Sequence[Number]) -> "ChebSeries":
        """Build from monomial coefficients c_0 + c_1 x + c_2 x^2 + ..."""
        power = np.asarray(coeffs, dtype=float)
        if power.size == 0:
            raise InvalidInputError("a polynomial needs at least one coefficient")
        return cls(tuple(cheb.poly2cheb(power)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def to_power(self) -> np.ndarray:
        return cheb.cheb2poly(self.array)

    def trimmed(self, tol: float = 0.0) -> "ChebSeries":
        return ChebSeries(tuple(cheb.chebtrim(self.array, tol)))

    @property
    def degree(self) -> int:
        scale = max(1.0, float(np.max(np.abs(self.array))))
        return len(self.trimmed(1e-13 * scale).coeffs) - 1

    def __call__(self, x):
        return cheb.chebval(x, self.array)

    def derivative(self) -> "ChebSeries":
        return ChebSeries(tuple(cheb.chebder(self.array)))

    def antiderivative(self, anchor: float = -1.0) -> "ChebSeries":
        """Antiderivative vanishing at ``anchor``."""
        return ChebSeries(tuple(cheb.chebint(self.array, lbnd=anchor)))

    def __add__(self, other: Union["ChebSeries", Number]) -> "ChebSeries":
        if isinstance(other, ChebSeries):
            return ChebSeries(tuple(cheb.chebadd(self.array, other.array)))
        return ChebSeries(tuple(cheb.chebadd(self.array, [float(other)])))

    __radd__ = __add__

    def __neg__(self) -> "ChebSeries":
        return ChebSeries(tuple(-self.array))

    def __sub__(self, other: Union["ChebSeries", Number]) -> "ChebSeries":
        return self + (-other)

    def __rsub__(self, other: Number) -> "ChebSeries":
        return (-self) + other

    def __mul__(self, other: Union["ChebSeries", Number]) -> "ChebSeries":
        if isinstance(other, ChebSeries):
            return ChebSeries(tuple(cheb.chebmul(self.array, other.array)))
        return ChebSeries(tuple(self.array * float(other)))

    __rmul__ = __mul__


def lobatto_nodes(degree: int) -> np.ndarray:
    """Chebyshev-Lobatto nodes cos(pi j / N), j = 0..N, ordered from +1 down to -1."""
    if degree < 1:
        raise InvalidInputError(f"Lobatto grid needs degree >= 1, got {degree}")
    return np.cos(np.pi * np.arange(degree + 1) / degree)


def _sample(f: Callable, x: np.ndarray) -> np.ndarray:
    values = np.asarray(f(x))
    if np.iscomplexobj(values):
        raise InvalidInputError("integrand must be real valued")
    values = np.broadcast_to(values.astype(float), x.shape)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("integrand produced a non-finite value")
    return values


def _check_open(t: float) -> float:
    t = float(t)
    if not abs(t) < 1.0:
        raise DomainError(f"principal-value point must satisfy |t| < 1, got t={t}")
    return t


# --------------------------------------------------------------------------- #
# Interpolation and quadrature
# --------------------------------------------------------------------------- #


def cheb_fit(f: RealFunction, degree: Optional[int] = None) -> ChebSeries:
    """Interpolate ``f`` at the N+1 Chebyshev-Lobatto nodes (DCT-I)."""
    settings = get_settings()
    degree = settings.cheb_degree if degree is None else int(degree)
    if degree < 1 or degree > settings.max_cheb_degree:
        raise InvalidInputError(
            f"Chebyshev degree must lie in [1, {settings.max_cheb_degree}], got {degree}"
        )
    nodes = lobatto_nodes(degree)
    values = _sample(f, nodes)
    coeffs = fft.dct(values, type=1) / degree
    coeffs[0] /= 2.0
    coeffs[-1] /= 2.0
    return ChebSeries(tuple(coeffs))


def integrate_w1(f: ChebSeries) -> float:
    """int_{-1}^{1} f(x) / sqrt(1 - x^2) dx by Gauss-Chebyshev (first kind)."""
    x, w = cheb.chebgauss(len(f.coeffs))
    return float(np.dot(w, f(x)))


def integrate_w2(f: ChebSeries) -> float:
    """int_{-1}^{1} f(x) sqrt(1 - x^2) dx by Gauss-Chebyshev (second kind)."""
    x, w = special.roots_chebyu(len(f.coeffs))
    return float(np.dot(w, f(x)))


def integrate_jacobi_panel(
    f: RealFunction,
    a: float,
    b: float,
    left_exp: float,
    right_exp: float,
    nodes: int,
) -> float:
    """int_a^b f(x) (x - a)^left_exp (b - x)^right_exp dx by Gauss-Jacobi quadrature."""
    if left_exp <= -1.0 or right_exp <= -1.0:
        raise InvalidInputError(
            f"Jacobi exponents must exceed -1, got left={left_exp}, right={right_exp}"
        )
    if not a < b:
        raise InvalidInputError(f"panel must satisfy a < b, got [{a}, {b}]")
    if nodes < 1:
        raise InvalidInputError(f"need at least one quadrature node, got {nodes}")
    xi, w = special.roots_jacobi(int(nodes), right_exp, left_exp)
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * xi
    scale = half ** (left_exp + right_exp + 1.0)
    return float(scale * np.dot(w, _sample(f, x)))


# --------------------------------------------------------------------------- #
# Principal-value integrals
# --------------------------------------------------------------------------- #


def pv_hilbert_T(f: ChebSeries, t: float) -> float:
    """PV int_{-1}^{1} f(x) / ((x - t) sqrt(1 - x^2)) dx."""
    t = _check_open(t)
    a = f.array
    if a.size == 1:
        return 0.0
    u_values = special.eval_chebyu(np.arange(a.size - 1), t)
    return float(math.pi * np.dot(a[1:], u_values))


def t_to_u_coefficients(a: np.ndarray) -> np.ndarray:
    """Rewrite sum a_k T_k as sum c_j U_j."""
    c = np.zeros(len(a))
    for k, ak in enumerate(a):
        if k == 0:
            c[0] += ak
        elif k == 1:
            c[1] += 0.5 * ak
        else:
            c[k] += 0.5 * ak
            c[k - 2] -= 0.5 * ak
    return c


def u_to_t_coefficients(c: np.ndarray) -> np.ndarray:
    """Rewrite sum c_j U_j as sum a_k T_k (U_j = 2 sum of T_i, i = j, j-2, ..., plus T_0 for even j)."""
    a = np.zeros(len(c))
    for j, cj in enumerate(c):
        for i in range(j, -1, -2):
            a[i] += cj if i == 0 else 2.0 * cj
    return a


def hilbert_U_series(f: ChebSeries) -> ChebSeries:
    """The polynomial t -> PV int f(y) sqrt(1 - y^2) / (y - t) dy as a T-series."""
    c = t_to_u_coefficients(f.array)
    out = np.zeros(c.size + 1)
    out[1:] = -math.pi * c
    return ChebSeries(tuple(out))


def pv_hilbert_U(f: ChebSeries, t: float) -> float:
    """PV int_{-1}^{1} f(y) sqrt(1 - y^2) / (y - t) dy."""
    t = _check_open(t)
    return float(hilbert_U_series(f)(t))


def quadratic_form_W(W: ChebSeries) -> float:
    """(1/4pi^2) int W(x)/sqrt(1-x^2) [PV int W'(y) sqrt(1-y^2)/(x-y) dy] dx."""
    inner = -hilbert_U_series(W.derivative())
    return integrate_w1(W * inner) / (4.0 * math.pi ** 2)


def quadratic_form_W_spectral(W: ChebSeries) -> float:
    """Closed form (1/8) sum_k k a_k^2 of :func:`quadratic_form_W`."""
    a = W.array
    k = np.arange(a.size)
    return float(np.dot(k, a * a) / 8.0)

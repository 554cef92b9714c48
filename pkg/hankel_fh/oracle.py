"""
Arbitrary-precision ground truth for Hankel determinants.

Moments int x^k w(x) dx are integrated panel by panel in mpmath at the
requested working precision; the n x n Hankel matrix built from them is
LU-factored in the same precision. Every call runs in its own ``MPContext``,
so determinants for different n can be computed concurrently.

Panel layout: breakpoints at -1, every t_j, +1 and the tail cutoffs of
unbounded domains. A panel is bisected until every root-type singular point
it does not touch lies at least 7 widths away and the exponential factor
varies by at most e^8 across it. Panels touching a root-type point use the
Gauss-Jacobi rule with that exponent; all others use Gauss-Legendre.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
import pandas as pd
from numpy.polynomial import chebyshev as cheb

from .applications import ThinningSpec
from .config import get_settings
from .equilibrium import EnsembleClass
from .errors import DeterminantUnderflowError, InvalidInputError, InvalidPotentialError, InvalidSpecError
from .fh_asymptotics import AsymptoticConstants, WeightSpec, asymptotic_log_dn, constants

GUARD_BITS = 32
MIN_BITS = 128
SEPARATION_FACTOR = 7.0
RATE_LIMIT = 4.0
MAX_BISECTIONS = 40
MAX_CUTOFF = 1e6

SWEEP_COLUMNS = ["n", "oracle_log_abs", "asymptotic_re", "delta", "phase_defect", "pivot_decay", "seconds"]


@dataclass(frozen=True)
class OracleResult:
    n: int
    bits: int
    log_abs: float
    phase: float
    pivot_decay: float
    log_abs_mp: Any = field(default=None, compare=False, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "bits": self.bits,
            "log_abs": self.log_abs,
            "phase": self.phase,
            "pivot_decay": self.pivot_decay,
        }


def _new_context(bits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = int(bits) + GUARD_BITS
    return ctx


def _check_sizes(n: int, bits: int) -> None:
    settings = get_settings()
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidInputError(f"matrix size n must be a positive integer, got {n!r}")
    if n > settings.max_n:
        raise InvalidInputError(f"matrix size n={n} exceeds the configured maximum {settings.max_n}")
    if bits < MIN_BITS:
        raise InvalidInputError(f"working precision must be at least {MIN_BITS} bits, got {bits}")


def node_count(n: int, bits: int) -> int:
    digits = bits * math.log10(2.0)
    return int(math.ceil((digits + 10.0) / 2.9)) + int(n)


# --------------------------------------------------------------------------- #
# Gauss rules in working precision
# --------------------------------------------------------------------------- #


@lru_cache(maxsize=256)
def _gauss_rule_raw(q: int, left_exp: float, right_exp: float, prec: int) -> Tuple[tuple, tuple]:
    ctx = mpmath.MPContext()
    ctx.prec = prec
    logging.debug("Gauss rule cache miss: q=%s exps=(%s, %s) prec=%s", q, left_exp, right_exp, prec)
    if left_exp == 0.0 and right_exp == 0.0:
        X, Wt = ctx.gauss_quadrature(q, "legendre")
    else:
        # weight (1 - x)^alpha (1 + x)^beta on [-1, 1]
        X, Wt = ctx.gauss_quadrature(q, "jacobi", right_exp, left_exp)
    return tuple(X[i]._mpf_ for i in range(q)), tuple(Wt[i]._mpf_ for i in range(q))


def gauss_rule(q: int, left_exp: float, right_exp: float, bits: int, ctx: Optional[mpmath.MPContext] = None):
    """Nodes and weights for int_{-1}^{1} f(x) (1 + x)^left_exp (1 - x)^right_exp dx."""
    if left_exp <= -1.0 or right_exp <= -1.0:
        raise InvalidSpecError(f"Jacobi exponents must exceed -1, got ({left_exp}, {right_exp})")
    ctx = ctx or _new_context(bits)
    nodes, weights = _gauss_rule_raw(int(q), float(left_exp), float(right_exp), int(ctx.prec))
    return [ctx.make_mpf(v) for v in nodes], [ctx.make_mpf(v) for v in weights]


# --------------------------------------------------------------------------- #
# Panel layout
# --------------------------------------------------------------------------- #


def _singular_points(spec: WeightSpec) -> List[Tuple[float, complex]]:
    return [(t, a) for t, a in zip(spec.full_points, spec.alphas) if a != 0]


def _log_envelope(spec: WeightSpec, n: int, n_param: int, x: float) -> Tuple[float, float]:
    """log of the largest moment integrand at x and its derivative."""
    V, W = spec.V.array, spec.W.array
    value = -n_param * cheb.chebval(x, V) + cheb.chebval(x, W) + (2 * n - 2) * math.log(abs(x))
    slope = -n_param * cheb.chebval(x, cheb.chebder(V)) + cheb.chebval(x, cheb.chebder(W)) + (2 * n - 2) / x
    for s, alpha in _singular_points(spec):
        value += alpha.real * math.log(abs(x - s))
        slope += alpha.real / (x - s)
    return float(value), float(slope)


def tail_cutoff(spec: WeightSpec, n: int, n_param: int, bits: int, direction: int = 1) -> float:
    """|X| beyond which the integrand is below 2^-(bits+64) of its size on [-1, 1]."""
    grid = np.linspace(-1.0, 1.0, 65)
    reference = float(np.max(-n_param * spec.V(grid) + spec.W(grid)))
    need = (bits + 64) * math.log(2.0)

    critical = [1.0] + [abs(t) for t in spec.points]
    roots = np.roots(spec.V.derivative().to_power()[::-1]) if spec.V.degree > 1 else np.array([])
    critical += [abs(r.real) for r in roots if abs(r.imag) < 1e-9]
    X = max(critical) + 1.0
    while True:
        h, dh = _log_envelope(spec, n, n_param, direction * X)
        h2, dh2 = _log_envelope(spec, n, n_param, 2.0 * direction * X)
        if h < reference - need and direction * dh < -1.0 and direction * dh2 < -1.0 and h2 < h:
            return direction * X
        X *= 1.25
        if X > MAX_CUTOFF:
            raise InvalidPotentialError(
                f"no tail cutoff below {MAX_CUTOFF:g}: e^(-nV) does not decay on the unbounded domain"
            )


def _breakpoints(spec: WeightSpec, n: int, n_param: int, bits: int) -> List[float]:
    inner = [-1.0, *spec.points, 1.0]
    if spec.ensemble is EnsembleClass.JACOBI:
        return inner
    right = tail_cutoff(spec, n, n_param, bits, direction=1)
    if spec.ensemble is EnsembleClass.LAGUERRE:
        return inner + [right]
    left = tail_cutoff(spec, n, n_param, bits, direction=-1)
    return [left] + inner + [right]


def _variation_rate(spec: WeightSpec, n_param: int, a: float, b: float) -> float:
    x = np.linspace(a, b, 9)
    dv = np.max(np.abs(cheb.chebval(x, cheb.chebder(spec.V.array))))
    dw = np.max(np.abs(cheb.chebval(x, cheb.chebder(spec.W.array))))
    return float(n_param * dv + dw)


def panel_layout(spec: WeightSpec, n: int, n_param: int, bits: int) -> List[Tuple[float, float]]:
    singular = [s for s, _ in _singular_points(spec)]
    breaks = _breakpoints(spec, n, n_param, bits)
    panels: List[Tuple[float, float]] = []

    def split(a: float, b: float, depth: int) -> None:
        width = b - a
        crowded = any(
            s != a and s != b and max(a - s, s - b) < SEPARATION_FACTOR * width for s in singular
        )
        steep = _variation_rate(spec, n_param, a, b) * width / 2.0 > RATE_LIMIT
        if (crowded or steep) and depth < MAX_BISECTIONS:
            mid = 0.5 * (a + b)
            split(a, mid, depth + 1)
            split(mid, b, depth + 1)
        else:
            panels.append((a, b))

    for a, b in zip(breaks[:-1], breaks[1:]):
        split(a, b, 0)
    logging.debug("Panel layout: %s panels over %s", len(panels), breaks)
    return panels


# --------------------------------------------------------------------------- #
# Moments
# --------------------------------------------------------------------------- #


def _clenshaw(ctx, coeffs: Sequence[Any], x):
    b1 = ctx.zero
    b2 = ctx.zero
    for c in reversed(coeffs[1:]):
        b1, b2 = 2 * x * b1 - b2 + c, b1
    return x * b1 - b2 + coeffs[0]


def _interval_index(points: Sequence[float], a: float) -> int:
    return 1 + sum(1 for t in points if t <= a)


def _interval_factors(ctx, spec: WeightSpec, survival: Optional[Sequence[float]], real: bool) -> List[Any]:
    """Jump constant times survival multiplier for intervals 1 .. m+1 (index 0 unused)."""
    m = spec.m
    factors: List[Any] = [None]
    for k in range(1, m + 2):
        exponent = ctx.mpc(0)
        for j, beta in enumerate(spec.betas, start=1):
            sign = 1 if j >= k else -1
            exponent += sign * ctx.mpc(beta.real, beta.imag)
        value = ctx.exp(ctx.mpc(0, 1) * ctx.pi * exponent)
        if survival is not None:
            value *= ctx.mpf(survival[k - 1])
        factors.append(ctx.re(value) if real else value)
    return factors


def _moment_vector(
    ctx,
    spec: WeightSpec,
    n: int,
    n_param: int,
    bits: int,
    survival: Optional[Sequence[float]] = None,
    w_scale: float = 1.0,
) -> List[Any]:
    real = spec.is_real_positive()
    q = node_count(n, bits)
    v_coeffs = [ctx.mpf(c) for c in spec.V.coeffs]
    w_coeffs = [ctx.mpf(c) * ctx.mpf(w_scale) for c in spec.W.coeffs]
    singular = _singular_points(spec)
    interval_factors = _interval_factors(ctx, spec, survival, real)
    zero = ctx.mpf(0) if real else ctx.mpc(0)
    moments = [zero] * (2 * n - 1)

    for a, b in panel_layout(spec, n, n_param, bits):
        left = next((alpha for s, alpha in singular if s == a), 0j)
        right = next((alpha for s, alpha in singular if s == b), 0j)
        nodes, weights = gauss_rule(q, left.real, right.real, bits, ctx)
        lo, hi = ctx.mpf(a), ctx.mpf(b)
        half = (hi - lo) / 2
        center = (hi + lo) / 2
        scale = half ** (1 + ctx.mpf(left.real) + ctx.mpf(right.real))
        panel_factor = interval_factors[_interval_index(spec.points, a)]
        for xi, wi in zip(nodes, weights):
            x = center + half * xi
            exponent = -n_param * _clenshaw(ctx, v_coeffs, x) + _clenshaw(ctx, w_coeffs, x)
            value = ctx.exp(exponent) * wi * scale * panel_factor
            for s, alpha in singular:
                distance = abs(x - s)
                if s == a or s == b:
                    if alpha.imag != 0.0:
                        value *= ctx.exp(ctx.mpc(0, alpha.imag) * ctx.log(distance))
                elif real:
                    value *= ctx.power(distance, ctx.mpf(alpha.real))
                else:
                    value *= ctx.exp(ctx.mpc(alpha.real, alpha.imag) * ctx.log(distance))
            power = value
            for k in range(2 * n - 1):
                moments[k] += power
                power *= x
    return moments


def moments(
    spec: WeightSpec,
    n: int,
    n_param: Optional[int] = None,
    bits: Optional[int] = None,
    survival: Optional[Sequence[float]] = None,
):
    """The n x n Hankel moment matrix int x^{j+k} w(x) dx in working precision."""
    bits = get_settings().default_bits(n) if bits is None else int(bits)
    _check_sizes(n, bits)
    n_param = n if n_param is None else int(n_param)
    ctx = _new_context(bits)
    vector = _moment_vector(ctx, spec, n, n_param, bits, survival)
    return ctx.matrix([[vector[j + k] for k in range(n)] for j in range(n)])


# --------------------------------------------------------------------------- #
# Determinants
# --------------------------------------------------------------------------- #


def _log_det(ctx, vector: Sequence[Any], n: int, real: bool) -> Tuple[Any, Any, float]:
    a = [[vector[j + k] for k in range(n)] for j in range(n)]
    tolerance = ctx.ldexp(ctx.mpf(1), -ctx.prec + 16) * max(abs(v) for v in vector)
    log_abs = ctx.mpf(0)
    phase = ctx.mpf(0)
    pivot_logs = []
    for k in range(n):
        if not real:
            p = max(range(k, n), key=lambda i: abs(a[i][k]))
            if p != k:
                a[k], a[p] = a[p], a[k]
                phase += ctx.pi
        pivot = a[k][k]
        magnitude = abs(pivot)
        if magnitude <= tolerance or (real and pivot <= 0):
            decay = float(min(pivot_logs, default=ctx.mpf(0)) - max(pivot_logs, default=ctx.mpf(0)))
            raise DeterminantUnderflowError(
                f"pivot {k + 1} of {n} vanished at {int(ctx.prec) - GUARD_BITS} bits", pivot_decay=decay
            )
        log_piv = ctx.log(magnitude)
        pivot_logs.append(log_piv)
        log_abs += log_piv
        if not real:
            phase += ctx.arg(pivot)
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor == 0:
                continue
            row, pivot_row = a[i], a[k]
            for j in range(k + 1, n):
                row[j] -= factor * pivot_row[j]
    two_pi = 2 * ctx.pi
    phase -= two_pi * ctx.nint(phase / two_pi)
    if phase <= -ctx.pi:
        phase += two_pi
    decay = float(min(pivot_logs) - max(pivot_logs))
    return log_abs, phase, decay


def _oracle(
    spec: WeightSpec,
    n: int,
    bits: Optional[int],
    n_param: Optional[int],
    survival: Optional[Sequence[float]] = None,
    w_scale: float = 1.0,
) -> OracleResult:
    bits = get_settings().default_bits(n) if bits is None else int(bits)
    _check_sizes(n, bits)
    n_param = n if n_param is None else int(n_param)
    real = spec.is_real_positive()
    if any(a.imag != 0.0 for a in spec.alphas):
        logging.warning("Complex alpha: only pivot_decay signals the reliability of this determinant")
    ctx = _new_context(bits)
    vector = _moment_vector(ctx, spec, n, n_param, bits, survival, w_scale)
    log_abs, phase, decay = _log_det(ctx, vector, n, real)
    if decay < -0.5 * bits * math.log(2.0):
        logging.warning("Pivot decay %.1f uses more than half of the %s working bits", decay, bits)
    result = OracleResult(
        n=int(n),
        bits=bits,
        log_abs=float(log_abs),
        phase=float(phase),
        pivot_decay=decay,
        log_abs_mp=log_abs,
    )
    logging.info(
        "Oracle %s n=%s bits=%s: log|D|=%.12f phase=%.3e pivot_decay=%.1f",
        spec.ensemble.value,
        n,
        bits,
        result.log_abs,
        result.phase,
        decay,
    )
    return result


def oracle_log_dn(
    spec: WeightSpec,
    n: int,
    bits: Optional[int] = None,
    n_param: Optional[int] = None,
) -> OracleResult:
    return _oracle(spec, n, bits, n_param)


def _require_real_positive(spec: WeightSpec, what: str) -> None:
    if not spec.is_real_positive():
        raise InvalidSpecError(f"{what} needs a real positive weight (real alphas, imaginary betas)")


def thinned_log_expectation(spec: WeightSpec, thinning: ThinningSpec, n: int, bits: Optional[int] = None):
    """log E[prod_j s~_j^{N_j}] in working precision."""
    if any(a != 0 for a in spec.interior_alphas) or any(b != 0 for b in spec.betas):
        raise InvalidSpecError("thinned expectations need alpha_j = beta_j = 0 at interior points")
    _require_real_positive(spec, "a thinned expectation")
    profile = thinning.survival_profile(spec.m)
    thinned = _oracle(spec, n, bits, None, survival=profile)
    plain = _oracle(spec, n, bits, None)
    ctx = _new_context(thinned.bits)
    return ctx.mpf(thinned.log_abs_mp) - ctx.mpf(plain.log_abs_mp)


def thinned_expectation(spec: WeightSpec, thinning: ThinningSpec, n: int, bits: Optional[int] = None):
    value = thinned_log_expectation(spec, thinning, n, bits)
    return value.context.exp(value)


def mgf_ratio(spec: WeightSpec, t: float, n: int, bits: Optional[int] = None) -> float:
    """log D_n(V, tW) / D_n(V, 0)."""
    _require_real_positive(spec, "the moment generating function")
    if t == 0:
        return 0.0
    scaled = _oracle(spec, n, bits, None, w_scale=t)
    plain = _oracle(spec.with_(W=spec.W * 0.0), n, bits, None)
    return float(scaled.log_abs_mp - plain.log_abs_mp)


def correlation_ratio(spec: WeightSpec, n: int, bits: Optional[int] = None) -> complex:
    """log D_n(alpha, beta) / D_n(0, 0) - i n pi sum beta_k at finite n (principal phase)."""
    with_fh = _oracle(spec, n, bits, None)
    without_fh = _oracle(spec.without_interior_singularities(), n, bits, None)
    real_part = float(with_fh.log_abs_mp - without_fh.log_abs_mp)
    beta_sum = sum(spec.betas, 0j)
    value = complex(real_part, with_fh.phase - without_fh.phase) - 1j * n * math.pi * beta_sum
    imag = math.remainder(value.imag, 2.0 * math.pi)
    if imag <= -math.pi:
        imag += 2.0 * math.pi
    return complex(value.real, imag)


# --------------------------------------------------------------------------- #
# Exact reference determinants in working precision
# --------------------------------------------------------------------------- #


def _mp_number(ctx, value: complex):
    value = complex(value)
    return ctx.mpf(value.real) if value.imag == 0.0 else ctx.mpc(value.real, value.imag)


def _log_g(ctx, z):
    return ctx.log(ctx.barnesg(z))


def exact_log_gaussian_mp(n: int, bits: int = 512):
    ctx = _new_context(bits)
    n = ctx.mpf(n)
    return n / 2 * ctx.log(ctx.pi) - n * (n - 1) / 2 * ctx.ln2 + _log_g(ctx, n + 1) - n * n / 2 * ctx.log(2 * n)


def exact_log_laguerre_mp(alpha0: complex, n: int, bits: int = 512):
    ctx = _new_context(bits)
    a0 = _mp_number(ctx, alpha0)
    n = ctx.mpf(n)
    return -n * (n + a0) * ctx.log(2 * n) + _log_g(ctx, n + 1) + _log_g(ctx, n + a0 + 1) - _log_g(ctx, 1 + a0)


def exact_log_jacobi_mp(alpha0: complex, alpha_edge: complex, n: int, bits: int = 512):
    ctx = _new_context(bits)
    a0 = _mp_number(ctx, alpha0)
    ae = _mp_number(ctx, alpha_edge)
    n = ctx.mpf(n)
    return (
        (n * n + n * (a0 + ae)) * ctx.ln2
        + _log_g(ctx, n + 1)
        + _log_g(ctx, n + a0 + 1)
        + _log_g(ctx, n + ae + 1)
        + _log_g(ctx, n + a0 + ae + 1)
        - _log_g(ctx, 1 + a0)
        - _log_g(ctx, 1 + ae)
        - _log_g(ctx, 2 * n + a0 + ae + 1)
    )


# --------------------------------------------------------------------------- #
# Convergence sweep
# --------------------------------------------------------------------------- #


def _wrap_phase(value: float) -> float:
    wrapped = math.remainder(value, 2.0 * math.pi)
    return wrapped + 2.0 * math.pi if wrapped <= -math.pi else wrapped


def convergence_sweep(
    spec: WeightSpec,
    n_list: Sequence[int],
    bits: Optional[int] = None,
    timing: bool = True,
    consts: Optional[AsymptoticConstants] = None,
) -> pd.DataFrame:
    """Oracle log|D_n| against Re of the asymptotic expansion, one row per n."""
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise InvalidInputError(f"n list must be strictly ascending, got {n_list}")
    if not n_list:
        return pd.DataFrame(columns=SWEEP_COLUMNS)
    for n in n_list:
        _check_sizes(n, get_settings().default_bits(n) if bits is None else bits)
    consts = constants(spec) if consts is None else consts
    real = spec.is_real_positive()

    def run(n: int) -> Dict[str, Any]:
        started = time.perf_counter()
        result = oracle_log_dn(spec, n, bits)
        elapsed = time.perf_counter() - started
        asymptotic = asymptotic_log_dn(consts, n)
        return {
            "n": n,
            "oracle_log_abs": result.log_abs,
            "asymptotic_re": asymptotic.real,
            "delta": result.log_abs - asymptotic.real,
            "phase_defect": 0.0 if real else _wrap_phase(result.phase - asymptotic.imag),
            "pivot_decay": result.pivot_decay,
            "seconds": elapsed if timing else 0.0,
        }

    workers = max(1, min(get_settings().threads, len(n_list)))
    logging.info("Convergence sweep over n=%s with %s worker(s)", n_list, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(run, n_list))
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

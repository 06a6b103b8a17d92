"""Laplace-inversion kernels for the auxiliary family 1/(x^a (1+x^b)).

The central object is phi_b, the density whose Laplace transform is
1/(1+x^b) for 1 < b < 2.  Everything else is built from it:

    psi_b(t)   = integral of phi_b over [0, t]   (transform 1/(x(1+x^b)))
    rho_b      = the oscillatory closed-form part of psi_b
    tau_b      = psi_b - rho_b, completely monotonic, two integral routes
    eta_{a,b}  = fractional integral of phi_b; its sign decides complete
                 monotonicity of 1/(x^a (1+x^b))
    kappa_a(t) = t^(a-1)/Gamma(a), the power-law Laplace density

Evaluation notes.  The semi-infinite integrals behind phi and tau have a
Mellin-type algebraic tail that truncation cannot reach for b near 1, so
the tail is folded onto a finite interval: substitute y = s^b, then
y + cos(b*pi) = sin-magnitude * cot(w), and finally remove the remaining
w^(-1/b) endpoint singularity with a power-law change of variable evaluated
in log space (the exponents cancel analytically, avoiding overflow for b
close to 1).  The denominator 1 + 2 s^b cos(b pi) + s^(2b) has no real
zero for b in (1, 2), but it dips to sin^2(b pi) near s^b = -cos(b pi);
quadrature knots are seeded at that resonance.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .numerics import QuadConfig, integrate

PI = math.pi

# Closed forms take over this close to the endpoints b = 1 (phi = exp(-t))
# and b = 2 (phi = sin t), where the integral representations degenerate.
ENDPOINT_BAND = 2.5e-4

DEFAULT_CFG = QuadConfig()
TRUNC_CFG = QuadConfig(tail_cutoff_strategy="truncate_at_T")


@dataclass(frozen=True)
class KernelValue:
    value: float
    err_estimate: float
    route: str  # closed_form | quadrature_primary | quadrature_alternate

    def __post_init__(self):
        if self.err_estimate < 0.0:
            raise ValueError("err_estimate must be >= 0")


def _consts(beta: float) -> Tuple[float, float]:
    """(sigma, c) with sigma = -sin(beta*pi) > 0 and c = cos(beta*pi).

    sigma > 0 is exactly the discriminant condition under which
    1 + 2 c s^b + s^(2b) has no real zero, so the integrands below divide
    safely; it fails only at b = 1, 2, which the callers dispatch first.
    """
    sigma = -math.sin(beta * PI)
    if sigma <= 0.0:
        raise DomainError(f"integral routes need beta strictly inside (1, 2), got {beta}")
    return sigma, math.cos(beta * PI)


def _denom(s: float, beta: float, c: float) -> float:
    sb = s ** beta
    return 1.0 + 2.0 * c * sb + sb * sb


def _ladder(lo: float, hi: float, levels: int = 45) -> list:
    """Knots geometrically refined toward both interval ends."""
    span = hi - lo
    out = [lo + span * 2.0 ** (-k) for k in range(1, levels + 1)]
    out += [lo + span * (1.0 - 2.0 ** (-k)) for k in range(1, levels + 1)]
    return out


def _resonance_knots(beta: float, sigma: float, c: float, upper: float) -> list:
    # Denominator minimum at s^b = -c (only reachable when c < 0, b < 1.5).
    if c >= 0.0:
        return []
    s0 = (-c) ** (1.0 / beta)
    w = max(sigma / beta, 1e-6)
    return [k for k in (s0 - 10 * w, s0 - w, s0, s0 + w, s0 + 10 * w) if 0.0 < k < upper]


def kappa(alpha: float, t: float) -> float:
    """t^(alpha-1) / Gamma(alpha)."""
    if alpha <= 0.0 or t <= 0.0:
        raise DomainError("kappa requires alpha > 0 and t > 0")
    return t ** (alpha - 1.0) / math.gamma(alpha)


def rho_kernel(beta: float, t: float) -> float:
    """1 - (2/b) exp(t cos(pi/b)) cos(t sin(pi/b)); closed form on [1, 2]."""
    if not 1.0 <= beta <= 2.0:
        raise DomainError("rho kernel requires beta in [1, 2]")
    if t < 0.0:
        raise DomainError("t must be >= 0")
    a = PI / beta
    return 1.0 - (2.0 / beta) * math.exp(t * math.cos(a)) * math.cos(t * math.sin(a))


def rho_values(beta: float, ts: np.ndarray) -> np.ndarray:
    if not 1.0 <= beta <= 2.0:
        raise DomainError("rho kernel requires beta in [1, 2]")
    a = PI / beta
    ts = np.asarray(ts, dtype=float)
    return 1.0 - (2.0 / beta) * np.exp(ts * math.cos(a)) * np.cos(ts * math.sin(a))


def _check_tau_domain(beta: float, t: float) -> None:
    if not 1.0 < beta < 2.0:
        raise DomainError("tau kernel requires beta in (1, 2)")
    if t < 0.0:
        raise DomainError("t must be >= 0")


def _tau_primary(beta: float, t: float, cfg: QuadConfig) -> Tuple[float, float]:
    """Direct s-domain integral: (sigma/pi) * int e^{-ts} s^(b-1) / D(s) ds."""
    sigma, c = _consts(beta)

    def g(s: float) -> float:
        return math.exp(-t * s) * s ** (beta - 1.0) / _denom(s, beta, c)

    knots = _resonance_knots(beta, sigma, c, math.inf)
    if t >= 0.5 and cfg.tail_cutoff_strategy == "exp_substitution":
        v, e = integrate(g, 0.0, math.inf, cfg, decay=t, knots=knots)
    else:
        trunc = QuadConfig(cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions, "truncate_at_T")
        v, e = integrate(g, 0.0, math.inf, trunc, knots=knots)
    return sigma / PI * v, sigma / PI * e


def _tau_alternate(beta: float, t: float, cfg: QuadConfig) -> Tuple[float, float]:
    """Arctangent-substituted route on the finite interval (0, (2-b)*pi]."""
    sigma, c = _consts(beta)
    w_hi = (2.0 - beta) * PI
    inv_beta = 1.0 / beta

    def g(w: float) -> float:
        y = sigma / math.tan(w) - c
        y = y if y > 0.0 else 0.0  # rounding noise at the y = 0 endpoint
        return math.exp(-t * y ** inv_beta)

    v, e = integrate(g, 0.0, w_hi, cfg, knots=_ladder(0.0, w_hi))
    return v / (beta * PI), e / (beta * PI)


def tau_kernel(
    beta: float, t: float, route: str = "primary", cfg: Optional[QuadConfig] = None
) -> KernelValue:
    """Completely monotonic remainder tau_b(t) = psi_b(t) - rho_b(t).

    ``route`` selects between the two integral representations; they agree
    within combined error estimates.  tau_b(0) = 2/b - 1.
    """
    _check_tau_domain(beta, t)
    cfg = cfg or DEFAULT_CFG
    if route == "primary":
        v, e = _tau_primary(beta, t, cfg)
        return KernelValue(v, e, "quadrature_primary")
    if route == "alternate":
        v, e = _tau_alternate(beta, t, cfg)
        return KernelValue(v, e, "quadrature_alternate")
    raise ValueError("route must be 'primary' or 'alternate'")


def _phi_oscillatory_term(beta: float, t: float) -> float:
    a = PI / beta
    return -(2.0 / beta) * math.exp(t * math.cos(a)) * math.cos(a + t * math.sin(a))


def _J_integral(beta: float, t: float, cfg: QuadConfig) -> Tuple[float, float]:
    """int_0^inf e^{-ts} s^b / D(s) ds, split at s^b = 4.

    The head is integrated directly; the algebraic tail is compactified
    (y = s^b, then cot) and its w^(-1/b) endpoint removed by a power-law
    substitution in log space.
    """
    sigma, c = _consts(beta)
    s_split = 4.0 ** (1.0 / beta)

    def g(s: float) -> float:
        return math.exp(-t * s) * s ** beta / _denom(s, beta, c)

    knots = [s_split * 2.0 ** (-k) for k in range(1, 31)]
    knots += _resonance_knots(beta, sigma, c, s_split)
    v1, e1 = integrate(g, 0.0, s_split, cfg, knots=knots)

    w_hi = math.atan(sigma / (4.0 + c))
    q = beta / (beta - 1.0)
    v_hi = w_hi ** (1.0 / q)
    ln_sigma = math.log(sigma)
    inv_beta = 1.0 / beta

    def h(v: float) -> float:
        if v <= 0.0:
            return 0.0
        ln_v = math.log(v)
        ln_w = q * ln_v
        if ln_w > -18.0:
            w = math.exp(ln_w)
            ln_y = math.log(sigma / math.tan(w) - c)
        else:
            ln_y = ln_sigma - ln_w  # cot(w) ~ 1/w
        ln_big = ln_y * inv_beta
        amp = q * math.exp((q - 1.0) * ln_v + ln_big)
        if t == 0.0:
            return amp
        if ln_big > 700.0:
            return 0.0
        return amp * math.exp(-t * math.exp(ln_big))

    v2, e2 = integrate(h, 0.0, v_hi, cfg)
    return v1 + v2 / (beta * sigma), e1 + e2 / (beta * sigma)


def _phi_primary(beta: float, t: float, cfg: QuadConfig) -> Tuple[float, float]:
    sigma, _ = _consts(beta)
    v, e = _J_integral(beta, t, cfg)
    return -(sigma / PI) * v + _phi_oscillatory_term(beta, t), (sigma / PI) * e


def _phi_alternate(beta: float, t: float, cfg: QuadConfig) -> Tuple[float, float]:
    """Integration-by-parts route with the arctan weight; valid for t > 0."""
    if t <= 0.0:
        raise DomainError("the integrated-by-parts route requires t > 0")
    sigma, c = _consts(beta)
    sin_bpi = -sigma

    def g(s: float) -> float:
        return math.atan((s ** beta + c) / sin_bpi) * (1.0 - t * s) * math.exp(-t * s)

    if t >= 0.5 and cfg.tail_cutoff_strategy == "exp_substitution":
        v, e = integrate(g, 0.0, math.inf, cfg, decay=t)
    else:
        hi = 45.0 / t
        v, e = integrate(g, 0.0, hi, cfg, knots=[1.0, 10.0, hi / 2.0])
    return -(v / (beta * PI)) + _phi_oscillatory_term(beta, t), e / (beta * PI)


def phi(
    beta: float, t: float, route: str = "primary", cfg: Optional[QuadConfig] = None
) -> KernelValue:
    """Laplace density of 1/(1+x^b) for b in [1, 2].

    Dispatches to the closed forms exp(-t) and sin(t) inside the endpoint
    band; otherwise evaluates the requested integral route.
    """
    if not 1.0 <= beta <= 2.0:
        raise DomainError("phi requires beta in [1, 2]")
    if t < 0.0:
        raise DomainError("t must be >= 0")
    if abs(beta - 1.0) < ENDPOINT_BAND:
        return KernelValue(math.exp(-t), 0.0, "closed_form")
    if abs(beta - 2.0) < ENDPOINT_BAND:
        return KernelValue(math.sin(t), 0.0, "closed_form")
    cfg = cfg or DEFAULT_CFG
    if route == "primary":
        v, e = _phi_primary(beta, t, cfg)
        return KernelValue(v, e, "quadrature_primary")
    if route == "alternate":
        v, e = _phi_alternate(beta, t, cfg)
        return KernelValue(v, e, "quadrature_alternate")
    raise ValueError("route must be 'primary' or 'alternate'")


def psi(beta: float, t: float, cfg: Optional[QuadConfig] = None) -> KernelValue:
    """psi_b(t) = integral of phi_b over [0, t], via the rho + tau split.

    psi_b(0) = 0, psi_b >= 0, and psi_b(t) -> 1 as t -> infinity for b < 2.
    """
    if not 1.0 <= beta <= 2.0:
        raise DomainError("psi requires beta in [1, 2]")
    if t < 0.0:
        raise DomainError("t must be >= 0")
    if abs(beta - 1.0) < ENDPOINT_BAND:
        return KernelValue(1.0 - math.exp(-t), 0.0, "closed_form")
    if abs(beta - 2.0) < ENDPOINT_BAND:
        return KernelValue(1.0 - math.cos(t), 0.0, "closed_form")
    cfg = cfg or DEFAULT_CFG
    tau_v, tau_e = _tau_primary(beta, t, cfg)
    return KernelValue(rho_kernel(beta, t) + tau_v, tau_e, "quadrature_primary")


class PsiEvaluator:
    """Fast tabulated evaluator of tau_b / psi_b on vectors of t.

    Precomputes composite Gauss-Legendre nodes of the arctangent-substituted
    tau integral (panels refined geometrically toward both ends, where the
    small-y kink and the large-t mass live).  Suitable for dense grid scans;
    agreement with the adaptive routes is covered by the test suite.
    """

    def __init__(self, beta: float, levels: int = 50, order: int = 10):
        if not 1.0 < beta < 2.0:
            raise DomainError("PsiEvaluator requires beta in (1, 2)")
        self.beta = beta
        sigma, c = _consts(beta)
        w_hi = (2.0 - beta) * PI
        breaks = sorted(
            set(
                [w_hi * 2.0 ** (-k) for k in range(1, levels + 1)]
                + [w_hi * (1.0 - 2.0 ** (-k)) for k in range(1, levels + 1)]
                + [0.0, w_hi]
            )
        )
        xg, wg = np.polynomial.legendre.leggauss(order)
        nodes = []
        weights = []
        for a, b in zip(breaks[:-1], breaks[1:]):
            h = 0.5 * (b - a)
            nodes.append(0.5 * (a + b) + h * xg)
            weights.append(h * wg)
        w = np.concatenate(nodes)
        self._weights = np.concatenate(weights)
        y = np.maximum(sigma / np.tan(w) - c, 0.0)
        self._decay = y ** (1.0 / beta)

    def tau_values(self, ts) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return np.exp(-np.outer(ts, self._decay)) @ self._weights / (self.beta * PI)

    def psi_values(self, ts) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return rho_values(self.beta, ts) + self.tau_values(ts)

    def psi(self, t: float) -> float:
        return float(self.psi_values(np.array([t]))[0])


# -- tabulated phi for convolution / transform workloads ---------------------

_PHI_TABLES: Dict[float, Tuple[float, CubicSpline]] = {}
_PHI_LOCK = threading.Lock()


def phi_callable(beta: float, t_max: float) -> Callable:
    """Vectorized t -> phi_b(t) on [0, t_max].

    Closed forms at the endpoint band; elsewhere a cubic spline through
    adaptively integrated values (cached per beta, grown on demand).
    """
    if not 1.0 <= beta <= 2.0:
        raise DomainError("phi requires beta in [1, 2]")
    if abs(beta - 1.0) < ENDPOINT_BAND:
        return lambda ts: np.exp(-np.asarray(ts, dtype=float))
    if abs(beta - 2.0) < ENDPOINT_BAND:
        return lambda ts: np.sin(np.asarray(ts, dtype=float))
    with _PHI_LOCK:
        cached = _PHI_TABLES.get(beta)
        if cached is not None and cached[0] >= t_max:
            return cached[1]
        hi = max(t_max, 10.0)
        # phi(t) - phi(0) - phi'(0) t ~ t^beta near 0 (the second derivative
        # blows up), so the head grid must be geometric and tight.
        grid = np.concatenate(
            [[0.0], np.geomspace(1e-8, 1.0, 400, endpoint=False), np.arange(1.0, hi + 0.05, 0.05)]
        )
        vals = np.array([_phi_primary(beta, float(t), DEFAULT_CFG)[0] for t in grid])
        spline = CubicSpline(grid, vals)
        _PHI_TABLES[beta] = (hi, spline)
        return spline


# Absolute accuracy allowance for spline-tabulated phi values.
PHI_TABLE_SLACK = 2e-7


def eta(
    alpha: float, beta: float, t: float, cfg: Optional[QuadConfig] = None
) -> KernelValue:
    """Fractional integral (1/Gamma(a)) int_0^t (t-s)^(a-1) phi_b(s) ds.

    The sign of eta decides complete monotonicity of 1/(x^a (1+x^b)); at
    a = 1 it reduces to psi_b(t).  The (t-s)^(a-1) endpoint is removed by
    the substitution w = (t-s)^a.
    """
    if alpha <= 0.0:
        raise DomainError("eta requires alpha > 0")
    if t <= 0.0:
        raise DomainError("eta requires t > 0")
    if not 1.0 <= beta <= 2.0:
        raise DomainError("eta requires beta in [1, 2]")
    cfg = cfg or DEFAULT_CFG

    if abs(beta - 1.0) < ENDPOINT_BAND:
        phi_s = lambda s: math.exp(-s)  # noqa: E731
        table_slack = 0.0
    elif abs(beta - 2.0) < ENDPOINT_BAND:
        phi_s = math.sin
        table_slack = 0.0
    else:
        spline = phi_callable(beta, t)
        phi_s = lambda s: float(spline(s))  # noqa: E731
        table_slack = PHI_TABLE_SLACK * t ** alpha / math.gamma(alpha + 1.0)

    inv_alpha = 1.0 / alpha

    def g(w: float) -> float:
        s = t - w ** inv_alpha
        if s < 0.0:
            s = 0.0
        return phi_s(s)

    v, e = integrate(g, 0.0, t ** alpha, cfg, knots=_ladder(0.0, t ** alpha, 40))
    scale = 1.0 / (alpha * math.gamma(alpha))
    return KernelValue(v * scale, e * scale + table_slack, "quadrature_primary")


def eta_grid(alpha: float, beta: float, ts, panels: int = 24, order: int = 8) -> np.ndarray:
    """Vectorized eta_{a,b} over a grid of t >= 0 (for threshold scans).

    Uses Gamma(a) eta(t) = (t^a / a) int_0^1 phi(t (1 - xi^(1/a))) d(xi)
    with fixed composite Gauss-Legendre nodes refined toward both ends.
    """
    if alpha <= 0.0:
        raise DomainError("eta requires alpha > 0")
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0.0):
        raise DomainError("t must be >= 0")
    breaks = sorted(
        set(
            [2.0 ** (-k) for k in range(1, panels + 1)]
            + [1.0 - 2.0 ** (-k) for k in range(1, panels + 1)]
            + [0.0, 1.0]
        )
    )
    xg, wg = np.polynomial.legendre.leggauss(order)
    nodes = []
    weights = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        h = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + h * xg)
        weights.append(h * wg)
    xi = np.concatenate(nodes)
    wq = np.concatenate(weights)

    if abs(beta - 1.0) < ENDPOINT_BAND:
        phi_vec = lambda s: np.exp(-s)  # noqa: E731
    elif abs(beta - 2.0) < ENDPOINT_BAND:
        phi_vec = np.sin
    else:
        phi_vec = phi_callable(beta, float(ts.max()) if ts.size else 10.0)

    s_nodes = np.outer(ts, 1.0 - xi ** (1.0 / alpha))
    inner = phi_vec(s_nodes) @ wq
    return ts ** alpha / (alpha * math.gamma(alpha)) * inner


def laplace_check(
    kernel: str,
    beta: float,
    x: float,
    alpha: Optional[float] = None,
    cfg: Optional[QuadConfig] = None,
) -> float:
    """|numeric Laplace transform - closed-form target| as a validation probe.

    Targets: phi -> 1/(1+x^b); psi -> 1/(x(1+x^b));
    eta (needs alpha) -> 1/(x^a (1+x^b)).
    """
    if x <= 0.0:
        raise DomainError("laplace check requires x > 0")
    if not 1.0 <= beta <= 2.0:
        raise DomainError("beta must be in [1, 2]")
    cfg = cfg or QuadConfig(abs_tol=1e-8, rel_tol=1e-8)

    if kernel == "phi":
        hi = 60.0 / x
        table = phi_callable(beta, hi)
        f = lambda t: math.exp(-x * t) * float(table(t))  # noqa: E731
        target = 1.0 / (1.0 + x ** beta)
    elif kernel == "psi":
        hi = 60.0 / x
        if abs(beta - 1.0) < ENDPOINT_BAND:
            base = lambda t: 1.0 - math.exp(-t)  # noqa: E731
        elif abs(beta - 2.0) < ENDPOINT_BAND:
            base = lambda t: 1.0 - math.cos(t)  # noqa: E731
        else:
            ev = PsiEvaluator(beta)
            base = ev.psi
        f = lambda t: math.exp(-x * t) * base(t)  # noqa: E731
        target = 1.0 / (x * (1.0 + x ** beta))
    elif kernel == "eta":
        if alpha is None or alpha <= 0.0:
            raise DomainError("eta kernel needs alpha > 0")
        hi = 80.0 / x
        f = lambda t: math.exp(-x * t) * eta(alpha, beta, t, cfg).value if t > 0 else 0.0  # noqa: E731
        target = 1.0 / (x ** alpha * (1.0 + x ** beta))
    else:
        raise ValueError("kernel must be one of 'phi', 'psi', 'eta'")

    value, _ = integrate(f, 0.0, hi, cfg, knots=_ladder(0.0, hi, 40))
    return abs(value - target)

import math

import numpy as np
import pytest

from dagum.errors import ConvergenceError, NoSignChangeError
from dagum.kernels import PsiEvaluator
from dagum.numerics import Bracket, QuadConfig, find_root, integrate, maximize_1d

PI = math.pi


def gauss_panel(f, a, b, n=200):
    """Independent fixed-order Gauss-Legendre oracle."""
    xs, ws = np.polynomial.legendre.leggauss(n)
    y = 0.5 * (b - a) * xs + 0.5 * (a + b)
    return 0.5 * (b - a) * float(np.sum(ws * f(y)))


def test_exponential_tail():
    v, e = integrate(lambda t: math.exp(-t), 0.0, math.inf, decay=1.0)
    assert v == pytest.approx(1.0, abs=1e-9)


def test_sine_half_period():
    v, _ = integrate(math.sin, 0.0, PI)
    assert v == pytest.approx(2.0, abs=1e-9)


def test_singular_endpoint_oscillatory_integral():
    # int_0^{2pi} (2pi - s)^(-1/2) sin s ds: negative, since the second
    # half-period weight dominates.  Oracle: substitute u = sqrt(2pi - s).
    v, e = integrate(
        lambda s: (2.0 * PI - s) ** (-0.5) * math.sin(s), 0.0, 2.0 * PI, sing_hi=-0.5
    )
    oracle = gauss_panel(lambda u: 2.0 * np.sin(2.0 * PI - u**2), 0.0, math.sqrt(2.0 * PI))
    assert v < 0.0
    assert v == pytest.approx(oracle, abs=1e-9)
    assert v == pytest.approx(-0.8608154493380397, abs=1e-9)


def test_truncated_algebraic_tail():
    cfg = QuadConfig(tail_cutoff_strategy="truncate_at_T")
    v, _ = integrate(lambda s: (1.0 + s) ** (-2.1), 0.0, math.inf, cfg)
    assert v == pytest.approx(1.0 / 1.1, abs=1e-8)


def test_linearity():
    f = lambda t: math.exp(-t)  # noqa: E731
    g = lambda t: math.exp(-2.0 * t)  # noqa: E731
    a, b = 3.0, -2.0
    vf, ef = integrate(f, 0.0, math.inf, decay=1.0)
    vg, eg = integrate(g, 0.0, math.inf, decay=2.0)
    vc, ec = integrate(lambda t: a * f(t) + b * g(t), 0.0, math.inf, decay=1.0)
    assert abs(vc - (a * vf + b * vg)) <= abs(a) * ef + abs(b) * eg + ec + 1e-12


def test_nonconvergence_reports_partial():
    cfg = QuadConfig(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=3)
    with pytest.raises(ConvergenceError) as exc:
        integrate(lambda s: math.sqrt(abs(math.sin(7.0 * s))), 0.0, 10.0, cfg)
    assert exc.value.value is not None
    assert exc.value.err_estimate > 0.0


def test_maximize_one_minus_cos():
    t, v = maximize_1d(lambda t: 1.0 - math.cos(t), Bracket(0.0, 2.0 * PI), 1e-10)
    assert t == pytest.approx(PI, abs=1e-6)
    assert v == pytest.approx(2.0, abs=1e-12)


def test_maximize_parabola():
    t, v = maximize_1d(lambda t: -((t - 1.0) ** 2), Bracket(0.0, 2.0), 1e-10)
    assert t == pytest.approx(1.0, abs=1e-6)
    assert v == pytest.approx(0.0, abs=1e-12)


def test_maximize_psi_against_dense_grid_oracle():
    beta = 1.5
    ev = PsiEvaluator(beta)
    hi = 3.0 * PI / math.sin(PI / beta)
    t_star, f_star = maximize_1d(ev.psi, Bracket(0.0, hi), 1e-9)
    # dense-grid oracle at step 1e-4
    ts = np.arange(0.0, hi, 1e-4)
    vals = ev.psi_values(ts)
    k = int(np.argmax(vals))
    assert f_star >= float(vals[k]) - 1e-9
    assert abs(t_star - float(ts[k])) < 1e-3
    # the maximizer sits within the first oscillation, near pi/sin(pi/beta)
    assert abs(t_star - PI / math.sin(PI / beta)) < PI / math.sin(PI / beta)


def test_maximize_constant_shift_invariance():
    f = lambda t: math.sin(t) * math.exp(-0.1 * t)  # noqa: E731
    t1, v1 = maximize_1d(f, Bracket(0.0, 10.0), 1e-9)
    t2, v2 = maximize_1d(lambda t: f(t) + 5.0, Bracket(0.0, 10.0), 1e-9)
    assert t1 == pytest.approx(t2, abs=1e-6)
    assert v2 - v1 == pytest.approx(5.0, abs=1e-10)


def test_find_root_sqrt2():
    r = find_root(lambda x: x * x - 2.0, Bracket(1.0, 2.0), 1e-12)
    assert r == pytest.approx(math.sqrt(2.0), abs=1e-10)


def test_find_root_identity():
    assert find_root(lambda x: x, Bracket(-1.0, 1.0), 1e-12) == pytest.approx(0.0, abs=1e-12)


def test_find_root_requires_sign_change():
    with pytest.raises(NoSignChangeError):
        find_root(lambda x: 1.0 + x * x, Bracket(-1.0, 1.0), 1e-9)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadConfig(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadConfig(tail_cutoff_strategy="nope")
    with pytest.raises(ValueError):
        Bracket(1.0, 1.0)

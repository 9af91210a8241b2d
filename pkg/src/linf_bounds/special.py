"""Scalar kernel for the Bennett function and its relatives.

Everything here is a pure function of float inputs evaluated in binary64:

* ``psi(x) = (1 + x) log(1 + x) - x`` and its inverse ``psi_inv``,
* the principal branch of the Lambert W function,
* ``psi_prime_at_inv(y) = log(1 + psi_inv(y))``,
* the iterated-logarithm root of ``y / log(y) = r``.

The inverse of ``psi`` uses the closed Lambert form for ``y > 1`` and a
bracketed Newton solve on ``[0, 1]``, where the closed form is 0/0 at the
seam.
"""
from __future__ import annotations

import math

from ._numerics import (
    DEFAULT_TOL,
    Bracket,
    ConvergenceError,
    DomainError,
    Tolerances,
    safeguarded_newton,
)

E = math.e
INV_E = math.exp(-1.0)
_LOG_OVERFLOW = 700.0

__all__ = [
    "psi",
    "psi_prime",
    "psi_inv",
    "log_psi_inv",
    "psi_prime_at_inv",
    "lambert_w",
    "lambert_w_from_log",
    "iterated_log_solve",
    "iterated_log_fixed_point",
    "log_iterated_log_fixed_point",
]


def psi(x: float) -> float:
    """Bennett's function ``(1 + x) log(1 + x) - x`` for ``x >= 0``."""
    if x < 0 or math.isnan(x):
        raise DomainError(f"psi is defined for x >= 0, got {x}")
    if x < 0.05:
        # alternating series sum_{k>=2} (-1)^k x^k / (k (k - 1)); the direct
        # formula cancels catastrophically near zero
        total, term = 0.0, x * x
        for k in range(2, 20):
            total += term / (k * (k - 1)) if k % 2 == 0 else -term / (k * (k - 1))
            term *= x
        return total
    if math.isinf(x):
        return math.inf
    return (1.0 + x) * math.log1p(x) - x


def psi_prime(x: float) -> float:
    return math.log1p(x)


def lambert_w(x: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Principal branch ``W_0`` of the Lambert function, real ``x >= -1/e``.

    Halley iteration on ``w e^w = x`` below ``x = 3`` (seeded by the
    branch-point series near ``-1/e``); above that, Newton on the log form
    ``w + log w = log x``, which never overflows.
    """
    if math.isnan(x):
        raise DomainError("lambert_w of NaN")
    if x < -INV_E:
        if x >= -INV_E - 4 * math.ulp(INV_E):
            return -1.0
        raise DomainError(f"lambert_w requires x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x > 3.0:
        return lambert_w_from_log(math.log(x), tol)

    if x < -0.32:
        p = math.sqrt(max(0.0, 2.0 * E * (x + INV_E)))
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))
        if p < 1e-3:
            # series truncation error ~ p^5, below double precision here
            return w
    else:
        w = math.log1p(x)
        if x > 0.5:
            w -= math.log1p(w) * 0.5
    for _ in range(tol.max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        dw = f / denom
        w -= dw
        if abs(dw) <= tol.rel_tol * 1e-3 * (1.0 + abs(w)):
            break
    return w


def lambert_w_from_log(log_x: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """``W(exp(log_x))`` for large arguments, solving ``w + log w = log_x``.

    Valid for ``log_x > 1`` (so ``w > 1``); used where ``exp(log_x)`` itself
    would overflow.
    """
    if log_x <= 1.0:
        return lambert_w(math.exp(log_x), tol)
    if math.isinf(log_x):
        return math.inf
    l2 = math.log(log_x)
    w = log_x - l2 + l2 / log_x
    for _ in range(tol.max_iter):
        g = w + math.log(w) - log_x
        dw = g / (1.0 + 1.0 / w)
        w -= dw
        if abs(dw) <= 1e-3 * tol.rel_tol * w:
            return w
    raise ConvergenceError(f"lambert_w_from_log({log_x}) did not converge")


def psi_inv(y: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Inverse of ``psi`` on ``[0, inf)``.

    For ``y > 1`` uses ``(y - 1) / W((y - 1) / e) - 1``. On ``[0, 1]`` a
    safeguarded Newton solve inside ``[sqrt(2y)/2, 2 sqrt(2y)]``.
    """
    if y < 0 or math.isnan(y):
        raise DomainError(f"psi_inv is defined for y >= 0, got {y}")
    if y == 0.0:
        return 0.0
    if math.isinf(y):
        return math.inf
    if y > 1.0:
        u = (y - 1.0) / E
        if u > 1e300:
            return math.exp(log_psi_inv(math.log(y), tol))
        return (y - 1.0) / lambert_w(u, tol) - 1.0
    s = math.sqrt(2.0 * y)
    bracket = Bracket(0.5 * s, 2.0 * s)
    x0 = s * (1.0 + s / 6.0)
    x = safeguarded_newton(lambda t: psi(t) - y, psi_prime, bracket, x0=x0, tol=tol)
    # one extra Newton step: the stopping rule fires one step early
    d = psi_prime(x)
    return x - (psi(x) - y) / d if d > 0 else x


def log_psi_inv(log_y: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """``log(psi_inv(exp(log_y)))`` without overflowing for huge ``y``."""
    if log_y < -_LOG_OVERFLOW:
        # psi_inv(y) = sqrt(2y) (1 + O(sqrt(y)))
        return 0.5 * (math.log(2.0) + log_y)
    if log_y < _LOG_OVERFLOW:
        return math.log(psi_inv(math.exp(log_y), tol))
    # y - 1 and the trailing -1 are invisible at this magnitude
    return log_y - math.log(lambert_w_from_log(log_y - 1.0, tol))


def psi_prime_at_inv(y: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """``psi'(psi_inv(y)) = log(1 + psi_inv(y))``; equals ``1 + W((y-1)/e)`` for y > 1."""
    if y < 0 or math.isnan(y):
        raise DomainError(f"psi_prime_at_inv is defined for y >= 0, got {y}")
    if y > 1.0:
        return 1.0 + lambert_w((y - 1.0) / E, tol)
    return math.log1p(psi_inv(y, tol))


def iterated_log_fixed_point(r: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Largest root of ``y / log(y) = r`` for ``r > e``.

    This is the limit of the increasing sequence ``f_1 = r``,
    ``f_k = r log f_{k-1}``, which lies in ``[r log r, 2 r log r]``. The
    limit is computed by Newton on ``y - r log y`` started from the upper
    end ``2 r log r``: the function is convex and increasing there, so the
    iterates decrease monotonically onto the same root the sequence reaches.
    """
    if not r > E:
        raise DomainError(f"iterated-log fixed point needs r > e, got {r}")
    if math.isinf(r):
        return math.inf
    y = 2.0 * r * math.log(r)
    for _ in range(tol.max_iter):
        h = y - r * math.log(y)
        step = h / (1.0 - r / y)
        y_new = y - step
        if y_new <= r:
            # cannot happen from the right of the root in exact arithmetic
            y_new = 0.5 * (y + r)
        if abs(y - y_new) <= 1e-3 * tol.rel_tol * y_new:
            return y_new
        y = y_new
    raise ConvergenceError(f"iterated-log solve did not converge for r={r}")


def log_iterated_log_fixed_point(log_r: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """``log`` of :func:`iterated_log_fixed_point` given ``log r``.

    Solves ``L - log L = log r`` for ``L > 1``; safe when ``r`` overflows.
    """
    if not log_r > 1.0:
        raise DomainError(f"iterated-log fixed point needs r > e, got log r = {log_r}")
    if log_r < _LOG_OVERFLOW:
        return math.log(iterated_log_fixed_point(math.exp(log_r), tol))
    L = math.log(2.0) + log_r + math.log(log_r)
    for _ in range(tol.max_iter):
        step = (L - math.log(L) - log_r) / (1.0 - 1.0 / L)
        L -= step
        if abs(step) <= 1e-3 * tol.rel_tol * L:
            return L
    raise ConvergenceError(f"log iterated-log solve did not converge for log r={log_r}")


def iterated_log_solve(c: float, q: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Solve ``x^q / (q log x) = c`` for ``x > sqrt(e)``.

    With ``y = x^q`` the equation reads ``y / log y = c``, so the answer is
    ``(c log(c log(c log ...)))^(1/q)``.
    """
    if q < 1:
        raise DomainError(f"iterated_log_solve needs q >= 1, got {q}")
    if not c > E:
        raise DomainError(f"iterated_log_solve needs c > e, got {c}")
    x = math.exp(log_iterated_log_fixed_point(math.log(c), tol) / q)
    if not x > math.sqrt(E):
        raise DomainError(f"solution {x} is not above sqrt(e) (c={c}, q={q})")
    return x

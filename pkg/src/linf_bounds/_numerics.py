"""Small numerical building blocks shared by the kernels.

Root bracketing, safeguarded Newton, and adaptive Simpson quadrature. Kept
dependency-free so the special-function kernel can be audited in isolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """Iterative routine exhausted its budget without meeting tolerance."""


@dataclass(frozen=True)
class Tolerances:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_iter: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("bracket endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


def safeguarded_newton(
    f: Callable[[float], float],
    df: Callable[[float], float],
    bracket: Bracket,
    x0: float | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Root of an increasing or decreasing ``f`` inside ``bracket``.

    Newton steps are taken while they stay strictly inside the current
    bracket; otherwise the step falls back to bisection. The bracket shrinks
    every iteration, so convergence is guaranteed for a sign change.
    """
    lo, hi = bracket.lo, bracket.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise DomainError(f"root not bracketed: f({lo})={flo}, f({hi})={fhi}")
    increasing = fhi > 0
    x = 0.5 * (lo + hi) if x0 is None or not lo < x0 < hi else x0
    for _ in range(tol.max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == increasing:
            hi = x
        else:
            lo = x
        d = df(x)
        x_new = x - fx / d if d != 0.0 and math.isfinite(d) else 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        # Newton is quadratic near the root: a step below rel_tol leaves an
        # error far below it.
        if abs(x_new - x) <= tol.rel_tol * abs(x_new):
            return x_new
        if hi - lo <= 4 * math.ulp(max(abs(lo), abs(hi))):
            return x_new
        x = x_new
    raise ConvergenceError("safeguarded Newton did not converge")


def bisect(f: Callable[[float], float], lo: float, hi: float, max_iter: int = 400) -> float:
    """Plain bisection down to adjacent floating-point numbers."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise DomainError(f"root not bracketed on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fhi > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 0.0,
    max_depth: int = 60,
    max_evals: int = 2_000_000,
) -> float:
    """Adaptive Simpson quadrature with Richardson correction.

    The tolerance budget of a panel is split evenly between its halves. The
    global target is ``max(abs_tol, rel_tol * |coarse estimate|)``; the coarse
    estimate comes from a 65-point composite Simpson pass so that sharply
    peaked integrands are not declared converged on the first panel.
    """
    if b < a:
        return -adaptive_simpson(f, b, a, rel_tol, abs_tol, max_depth, max_evals)
    if a == b:
        return 0.0
    m0 = 64
    h0 = (b - a) / m0
    xs = [a + i * h0 for i in range(m0 + 1)]
    xs[-1] = b
    ys = [f(x) for x in xs]
    coarse = h0 / 3 * (ys[0] + ys[-1] + 4 * sum(ys[1:-1:2]) + 2 * sum(ys[2:-1:2]))
    target = max(abs_tol, rel_tol * abs(coarse))
    if target == 0.0:
        target = 1e-300
    evals = m0 + 1
    total = 0.0
    # one stack entry per coarse Simpson panel pair
    stack = []
    for i in range(0, m0, 2):
        x0, x2 = xs[i], xs[i + 2]
        y0, y1, y2 = ys[i], ys[i + 1], ys[i + 2]
        whole = (x2 - x0) / 6 * (y0 + 4 * y1 + y2)
        stack.append((x0, x2, y0, y1, y2, whole, target / (m0 // 2), 0))
    while stack:
        x0, x2, y0, y1, y2, whole, eps, depth = stack.pop()
        x1 = 0.5 * (x0 + x2)
        yl, yr = f(0.5 * (x0 + x1)), f(0.5 * (x1 + x2))
        evals += 2
        left = (x1 - x0) / 6 * (y0 + 4 * yl + y1)
        right = (x2 - x1) / 6 * (y1 + 4 * yr + y2)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15 * eps or evals > max_evals:
            if depth >= max_depth or evals > max_evals:
                if abs(delta) > 15 * eps and abs(delta) > 1e-3 * target:
                    raise ConvergenceError(
                        f"adaptive Simpson failed near [{x0}, {x2}] (delta={delta})")
            total += left + right + delta / 15
        else:
            stack.append((x0, x1, y0, yl, y1, left, eps / 2, depth + 1))
            stack.append((x1, x2, y1, yr, y2, right, eps / 2, depth + 1))
    return total

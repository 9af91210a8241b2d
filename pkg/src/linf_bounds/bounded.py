"""Upper and lower bounds on E||mean||_inf for a.s. bounded random vectors.

For ``n`` independent mean-zero vectors in ``R^p`` whose coordinates have
variance at most ``sigma^2`` and are bounded by ``B``, the union bound
combined with Bennett's inequality gives the tail envelope

    q_benn(t) = 2p exp(-(n sigma^2 / B^2) psi(t B / sigma^2)).

``threshold_A`` is the level where ``q_benn`` crosses one, and the integral of
``min(1, q_benn)`` over ``[0, B]`` is sandwiched by
``A + c (B/n)(f(A) - f(B))`` with ``f(t) = q_benn(t) / log(1 + t B / sigma^2)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._numerics import DomainError, adaptive_simpson
from .special import psi, psi_inv

#: Lower constant of the integral sandwich, (log 2)^2 / (4 sqrt 2).
SANDWICH_CONSTANT = math.log(2.0) ** 2 / (4.0 * math.sqrt(2.0))
#: Worst explicit constant in the matching lower bound for the Bernoulli vectors.
LOWER_CONSTANT_CASE_A = 1.0 / 3825.0
LOWER_CONSTANT_CASE_B = 0.75


class Regime(str, enum.Enum):
    CASE_A = "CaseA"
    CASE_B = "CaseB"
    A_GREATER_THAN_B = "AGreaterThanB"


@dataclass(frozen=True)
class BoundedInstance:
    """Query ``(n, p, sigma, B)`` with an almost-sure envelope ``B``."""

    n: int
    p: int
    sigma: float
    B: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        if int(self.p) != self.p or self.p < 1:
            raise DomainError(f"p must be a positive integer, got {self.p}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not (self.B > 0 and math.isfinite(self.B)):
            raise DomainError(f"B must be positive, got {self.B}")
        if self.sigma > self.B:
            raise DomainError(f"sigma <= B required, got sigma={self.sigma}, B={self.B}")

    @property
    def bernoulli_mass(self) -> float:
        """P(W = B) for the worst-case two-point coordinate."""
        return self.sigma ** 2 / (self.sigma ** 2 + self.B ** 2)


@dataclass(frozen=True)
class InfBoundResult:
    upper: float
    lower: float
    A: float
    correction: float
    regime: Regime
    integral: float | None = None


def _log_bennett_tail(t: float, inst: BoundedInstance) -> float:
    s2, B = inst.sigma ** 2, inst.B
    return math.log(2 * inst.p) - inst.n * s2 / B ** 2 * psi(t * B / s2)


def bennett_tail(t: float, inst: BoundedInstance, clip: bool = False) -> float:
    """Union-Bennett bound on ``P(||mean||_inf > t)``; ``clip`` caps it at 1."""
    if t < 0 or math.isnan(t):
        raise DomainError(f"bennett_tail needs t >= 0, got {t}")
    q = math.exp(_log_bennett_tail(t, inst))
    return min(1.0, q) if clip else q


def threshold_A(inst: BoundedInstance) -> float:
    """Level at which the union-Bennett tail equals one."""
    s2, B = inst.sigma ** 2, inst.B
    return s2 / B * psi_inv(B ** 2 * math.log(2 * inst.p) / (inst.n * s2))


def f_benn(t: float, inst: BoundedInstance) -> float:
    if not t > 0:
        raise DomainError(f"f_benn needs t > 0, got {t}")
    return bennett_tail(t, inst) / math.log1p(t * inst.B / inst.sigma ** 2)


def correction_term(inst: BoundedInstance, A: float | None = None) -> float:
    """``(B/n)(f(A ^ B) - f(B))``; zero when ``A >= B``."""
    A = threshold_A(inst) if A is None else A
    a = min(A, inst.B)
    if a >= inst.B:
        return 0.0
    return inst.B / inst.n * (f_benn(a, inst) - f_benn(inst.B, inst))


def bennett_integral(inst: BoundedInstance, rel_tol: float = 1e-8) -> float:
    """Integral of ``min(1, q_benn)`` over ``[0, B]``.

    The integrand equals one on ``[0, A]`` and has a kink at ``A``, so the
    interval is split there and only ``[A, B]`` is integrated numerically.
    """
    A = threshold_A(inst)
    if A >= inst.B:
        return inst.B
    tail = adaptive_simpson(lambda t: bennett_tail(t, inst, clip=True), A, inst.B,
                            rel_tol=rel_tol, abs_tol=1e-300)
    return A + tail


def regime(inst: BoundedInstance) -> Regime:
    if threshold_A(inst) > inst.B:
        return Regime.A_GREATER_THAN_B
    ratio = inst.n * inst.sigma ** 2 / (inst.sigma ** 2 + inst.B ** 2)
    return Regime.CASE_A if ratio >= 1.0 / (2 * inst.p) else Regime.CASE_B


def e_inf_bounds(inst: BoundedInstance, with_integral: bool = False) -> InfBoundResult:
    """Upper bound ``min(B, (A ^ B) + (B/n)(f(A ^ B) - f(B)))`` and the
    regime-matched lower bound.

    CaseA lower bounds carry the constant 1/3825 and CaseB uses
    ``(3/4) p sigma^2 / B``; in CaseB the two endpoints are not of the same
    order in general and are reported as they are.
    """
    A = threshold_A(inst)
    corr = correction_term(inst, A)
    upper = min(inst.B, min(A, inst.B) + corr)
    reg = regime(inst)
    if reg is Regime.CASE_A:
        lower = LOWER_CONSTANT_CASE_A * upper
    elif reg is Regime.CASE_B:
        lower = LOWER_CONSTANT_CASE_B * inst.p * inst.sigma ** 2 / inst.B
    else:
        lower = LOWER_CONSTANT_CASE_A * inst.B
    integral = bennett_integral(inst) if with_integral else None
    return InfBoundResult(upper=upper, lower=lower, A=A, correction=corr,
                          regime=reg, integral=integral)


def e_inf_upper(inst: BoundedInstance) -> float:
    return e_inf_bounds(inst).upper


def e_inf_lower(inst: BoundedInstance) -> float:
    return e_inf_bounds(inst).lower


def sandwich_interval(inst: BoundedInstance) -> tuple[float, float]:
    """Closed-form interval that must contain ``bennett_integral(inst)``."""
    A = threshold_A(inst)
    corr = correction_term(inst, A)
    a = min(A, inst.B)
    return a + SANDWICH_CONSTANT * corr, a + corr

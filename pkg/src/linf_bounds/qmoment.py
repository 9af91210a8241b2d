"""Upper bounds when the envelope only has a finite q-th moment.

The instance ``(n, p, sigma, B, q)`` constrains the coordinate variances by
``sigma^2`` and the averaged ``q``-th moment of ``||X_i||_inf`` by ``B^q``.
Everything hinges on the case statistic

    kappa = (B^2 / sigma^2)^(q / (q - 2)) * log(2p) / n,

compared against ``e``. Powers like ``(B^2/sigma^2)^(q/(q-2))`` overflow near
``q = 2``, so the arithmetic below is carried out on logarithms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._numerics import DomainError
from .bounded import BoundedInstance, e_inf_upper
from .special import lambert_w, lambert_w_from_log, log_iterated_log_fixed_point, log_psi_inv, psi_inv

E = math.e
#: Largest adjacent ratio U*(q') / U*(q) allowed by the monotonicity argument.
MONOTONICITY_FACTOR = 4
_LOG_MAX_FLOAT = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class MomentInstance:
    """Query with variance bound ``sigma^2`` and envelope moment bound ``B^q``.

    ``q`` may be ``math.inf`` for an almost-surely bounded envelope.
    """

    n: int
    p: int
    sigma: float
    B: float
    q: float

    def __post_init__(self):
        BoundedInstance(self.n, self.p, self.sigma, self.B)
        if not self.q >= 2:
            raise DomainError(f"q must be >= 2, got {self.q}")

    @property
    def y(self) -> float:
        """``log(2p) / n``."""
        return math.log(2 * self.p) / self.n

    def bounded(self) -> BoundedInstance:
        return BoundedInstance(self.n, self.p, self.sigma, self.B)

    def with_q(self, q: float) -> "MomentInstance":
        return MomentInstance(self.n, self.p, self.sigma, self.B, q)


@dataclass(frozen=True)
class TailQuery:
    """Inverse failure probability ``z`` and truncation level ``K``."""

    z: float
    K: float

    def __post_init__(self):
        if not self.z > 1:
            raise DomainError(f"z must exceed 1, got {self.z}")
        if not self.K > 0:
            raise DomainError(f"K must be positive, got {self.K}")


@dataclass(frozen=True)
class QBoundResult:
    value: float
    case: int
    modulo_constant: bool
    log_case_statistic: float
    q_boundary: bool = False
    clamped: bool = False


def _exponent_power(inst: MomentInstance) -> float:
    """``q / (q - 2)``, with the limits 1 at ``q = inf`` and inf at ``q = 2``."""
    if math.isinf(inst.q):
        return 1.0
    if inst.q == 2:
        return math.inf
    return inst.q / (inst.q - 2)


def log_case_statistic(inst: MomentInstance) -> float:
    """``log kappa``; at ``q = 2`` the convention ``1^inf = 1`` is used when sigma = B."""
    lr = 2.0 * math.log(inst.B / inst.sigma)
    power = _exponent_power(inst)
    if lr == 0.0:
        return math.log(inst.y)
    return power * lr + math.log(inst.y)


def moment_case(inst: MomentInstance) -> int:
    """1 when ``kappa <= e``, else 2."""
    return 1 if log_case_statistic(inst) <= 1.0 else 2


def _log1p_exp(x: float) -> float:
    return x + math.log1p(math.exp(-x)) if x > 0 else math.log1p(math.exp(x))


def _scaled_psi_inv(log_coef: float, log_arg: float) -> float:
    """``exp(log_coef) * psi_inv(exp(log_arg))`` without intermediate overflow."""
    if log_arg == -math.inf:
        return 0.0
    log_val = log_coef + log_psi_inv(log_arg)
    # the threshold itself can be infinite, e.g. q -> 2+ with sigma < B
    return math.inf if log_val > _LOG_MAX_FLOAT else math.exp(log_val)


def _bennett_threshold(sigma: float, K: float, log_z: float, n: int) -> float:
    """One-sided Bennett level ``(sigma^2/K) psi_inv(K^2 log z / (n sigma^2))``."""
    return sigma ** 2 / K * psi_inv(K ** 2 * log_z / (n * sigma ** 2))


def _check_tail_query(query: TailQuery, inst: MomentInstance) -> None:
    if math.isinf(inst.q):
        raise DomainError("tail thresholds need a finite q")
    if query.K < inst.B:
        raise DomainError(f"truncation level K={query.K} must be >= B={inst.B}")


def _moment_part(query: TailQuery, inst: MomentInstance) -> float:
    """``B (sigma^2/B^2)^((q-1)/(q-2)) psi_inv((B^2/sigma^2)^(q/(q-2)) log z / n)``."""
    q, lr = inst.q, 2.0 * math.log(inst.B / inst.sigma)
    log_z = math.log(query.z)
    if log_z == 0.0:
        return 0.0
    log_coef = math.log(inst.B) - (q - 1) / (q - 2) * lr
    log_arg = q / (q - 2) * lr + math.log(log_z / inst.n)
    return _scaled_psi_inv(log_coef, log_arg)


def fuk_nagaev_threshold_v1(query: TailQuery, inst: MomentInstance) -> float:
    """Level exceeded by the mean of the truncated variables w.p. at most ``1/z``.

    Sum of a variance/moment interpolation term and a truncation term
    ``(B^q / K^(q-1)) psi_inv((K/B)^q log z / n)``. At ``q = 2`` the moment
    bound carries no information beyond the variance and the plain Bennett
    level for ``(sigma, K)`` is returned.
    """
    _check_tail_query(query, inst)
    log_z = math.log(query.z)
    if inst.q == 2:
        return _bennett_threshold(inst.sigma, query.K, log_z, inst.n)
    if log_z == 0.0:
        return 0.0
    q = inst.q
    first = _moment_part(query, inst)
    log_coef2 = q * math.log(inst.B) - (q - 1) * math.log(query.K)
    log_arg2 = q * math.log(query.K / inst.B) + math.log(log_z / inst.n)
    return first + _scaled_psi_inv(log_coef2, log_arg2)


def truncation_remainder(query: TailQuery, inst: MomentInstance) -> float:
    """``R = (1 - (B^q / (sigma^2 K^(q-2)))^(1/(q-2)))_+``."""
    q = inst.q
    log_k0 = (q * math.log(inst.B) - 2.0 * math.log(inst.sigma)) / (q - 2)
    return max(0.0, 1.0 - math.exp(log_k0 - math.log(query.K)))


def fuk_nagaev_threshold_v2(query: TailQuery, inst: MomentInstance) -> float:
    """Variant whose truncation term is a Lambert-W expression.

    The second term vanishes when ``R = 0`` (``B^q >= sigma^2 K^(q-2)``) and
    decays like ``1/q``; ``floor(q) + 1`` is the exponent denominator.
    """
    _check_tail_query(query, inst)
    log_z = math.log(query.z)
    if inst.q == 2:
        return _bennett_threshold(inst.sigma, query.K, log_z, inst.n)
    if log_z == 0.0:
        return 0.0
    q, K, n = inst.q, query.K, inst.n
    first = _moment_part(query, inst)
    R = truncation_remainder(query, inst)
    if R == 0.0:
        return first
    m = math.floor(q) + 1
    log_w_arg = (q / m) * math.log(K / inst.B) + (math.log(log_z) - math.log(n * R)) / m - math.log(10.0)
    w = lambert_w_from_log(log_w_arg) if log_w_arg > 1.0 else lambert_w(math.exp(log_w_arg))
    return first + 2.0 * K * log_z / (n * q * w)


def u_bound(inst: MomentInstance) -> float:
    """``min(B, U)``: ``10 sigma sqrt(log(2p)/n)`` in case 1, the Lambert-free
    closed form ``5 B (B^2/sigma^2)^(1/(q-2)) y / log(1 + kappa)`` in case 2."""
    y = inst.y
    lk = log_case_statistic(inst)
    if lk <= 1.0:
        return min(inst.B, 10.0 * inst.sigma * math.sqrt(y))
    lr = 2.0 * math.log(inst.B / inst.sigma)
    if math.isinf(inst.q):
        inv = 0.0
    elif inst.q == 2:
        return inst.B
    else:
        inv = lr / (inst.q - 2)
    log_val = math.log(5.0 * inst.B) + inv + math.log(y) - math.log(_log1p_exp(lk))
    return inst.B if log_val >= math.log(inst.B) else math.exp(log_val)


def lq_bennett_upper(inst: MomentInstance) -> float:
    """``B y^(1-1/q) [log((B^2/sigma^2) y^(1-2/q))]^(1/q-1)``, ``y = log(2p)/n``.

    Case 2 only; the bound holds up to a universal constant.
    """
    if moment_case(inst) != 2:
        raise DomainError("lq_bennett_upper applies only when kappa > e")
    q, y = inst.q, inst.y
    a = 0.0 if math.isinf(q) else 1.0 / q
    inner = 2.0 * math.log(inst.B / inst.sigma) + (1.0 - 2.0 * a) * math.log(y)
    if inner <= 0.0:
        raise DomainError("inner logarithm argument must exceed 1")
    return inst.B * math.exp((1.0 - a) * math.log(y) + (a - 1.0) * math.log(inner))


def limit_expression(inst: MomentInstance) -> float:
    """q -> inf limit of the case-2 bound: ``B y / log(B^2 y / sigma^2)``."""
    inner = math.log(inst.B ** 2 * inst.y / inst.sigma ** 2)
    if inner <= 0:
        raise DomainError("limit expression needs B^2 log(2p) / (n sigma^2) > 1")
    return inst.B * inst.y / inner


def baseline_bound(inst: MomentInstance) -> float:
    """Reference rate ``sigma sqrt(y) + B y^(1-1/q)`` the combined bound is compared with."""
    a = 0.0 if math.isinf(inst.q) else 1.0 / inst.q
    return inst.sigma * math.sqrt(inst.y) + inst.B * inst.y ** (1.0 - a)


def u_star_result(inst: MomentInstance) -> QBoundResult:
    lk = log_case_statistic(inst)
    if math.isinf(inst.q):
        value = e_inf_upper(inst.bounded())
        return QBoundResult(value, 1 if lk <= 1.0 else 2, False, lk)
    if lk <= 1.0:
        raw, case = inst.sigma * math.sqrt(inst.y), 1
    else:
        raw, case = lq_bennett_upper(inst), 2
    return QBoundResult(min(inst.B, raw), case, True, lk,
                        q_boundary=inst.q == 2, clamped=raw > inst.B)


def u_star(inst: MomentInstance) -> float:
    """Combined bound ``min(B, U*)``; ``q = inf`` routes to the bounded-envelope bound."""
    return u_star_result(inst).value


def optimal_truncation_K(inst: MomentInstance) -> float:
    """Truncation level balancing the Bennett part against the tail part.

    Solves ``x^q / (q log x) = D`` with ``x = K sqrt(log(2p)/(n sigma^2))``
    by the iterated logarithm when ``(D log D)^(1/q) >= e``; otherwise uses
    the explicit level ``2B y^(-1/q) [log((B/sigma) y^(1/2-1/q))]^(1/q)``.
    """
    if math.isinf(inst.q) or moment_case(inst) != 2:
        raise DomainError("optimal truncation is defined for finite q with kappa > e")
    q, y, n = inst.q, inst.y, inst.n
    log_s = 0.5 * (math.log(y) - 2.0 * math.log(inst.sigma))
    c0 = E * math.log(2 * inst.p) + math.sqrt(2.0)
    log_d = math.log(q - 1) + math.log(n) + q * (math.log(inst.B) + log_s) - math.log(c0) - 2 * math.log(q)
    if log_d > 1.0 and (log_d + math.log(log_d)) / q >= 1.0:
        # x = K s solves x^q / (q log x) = D; work with log D so D may overflow
        return math.exp(log_iterated_log_fixed_point(log_d) / q - log_s)
    return fallback_truncation_K(inst)


def fallback_truncation_K(inst: MomentInstance) -> float:
    q, y = inst.q, inst.y
    inner = math.log(inst.B / inst.sigma) + (0.5 - 1.0 / q) * math.log(y)
    return 2.0 * inst.B * y ** (-1.0 / q) * inner ** (1.0 / q)


def truncation_D(inst: MomentInstance) -> float:
    q, n = inst.q, inst.n
    s = math.sqrt(inst.y / inst.sigma ** 2)
    c0 = E * math.log(2 * inst.p) + math.sqrt(2.0)
    return (q - 1) * n * (inst.B * s) ** q / (c0 * q * q)


@dataclass
class MonotonicityReport:
    q_grid: list[float]
    values: list[float]
    ratios: list[float]
    factor: float = MONOTONICITY_FACTOR
    limit: float | None = None
    limit_rel_gap: float | None = None
    q_inf_value: float | None = None
    violations: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def monotonicity_audit(inst_base: MomentInstance, q_grid: list[float]) -> MonotonicityReport:
    """Evaluate ``U*`` along ``q_grid`` and flag adjacent ratios above 4.

    Requires ``log(2p)/n <= 1``.
    """
    if inst_base.y > 1.0:
        raise DomainError("monotonicity audit requires log(2p)/n <= 1")
    qs = [float(q) for q in q_grid]
    if any(b < a for a, b in zip(qs, qs[1:])):
        raise DomainError("q_grid must be non-decreasing")
    values = [u_star(inst_base.with_q(q)) for q in qs]
    ratios = [b / a for a, b in zip(values, values[1:])]
    report = MonotonicityReport(qs, values, ratios)
    report.violations = [i for i, r in enumerate(ratios) if r > MONOTONICITY_FACTOR]
    report.q_inf_value = u_star(inst_base.with_q(math.inf))
    try:
        report.limit = limit_expression(inst_base)
        report.limit_rel_gap = values[-1] / report.limit - 1.0 if values else None
    except DomainError:
        report.limit = None
    return report

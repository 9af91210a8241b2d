"""Exact oracles and Monte Carlo estimates used to audit the bounds.

Monte Carlo work is split into fixed-size replication blocks. Block ``b`` of
a run draws from ``RngStream.generator(block=b)`` and blocks are reassembled
in order, so a result depends on ``(seed, stream_id, reps)`` but never on
the number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Callable

import numpy as np
from scipy.special import gammaln, log_ndtr

from ._numerics import DomainError
from .bounded import BoundedInstance, Regime, e_inf_bounds
from .distributions import (
    BernoulliWorst,
    DependentBernoulli,
    ProductH,
    RngStream,
    TwoPoint,
)

#: Elements (rows x n x dim) materialised per replication block at most.
BLOCK_ELEMENTS = 2_000_000
MAX_BLOCK_REPS = 4096
MAX_EXACT_N = 10_000
WILSON_LEVEL = 0.99


@dataclass(frozen=True)
class EstimateResult:
    mean: float
    std_error: float
    reps: int
    seed: int


@dataclass(frozen=True)
class TailEstimate:
    frequency: float
    ci_low: float
    ci_high: float
    std_error: float
    hits: int
    reps: int
    seed: int


@dataclass(frozen=True)
class SandwichRow:
    instance: BoundedInstance
    truth: float
    truth_se: float
    lower: float
    upper: float
    ok: bool
    regime: str
    method: str

    @property
    def tightness(self) -> float:
        """``truth / upper``, recorded rather than asserted."""
        return self.truth / self.upper


# ---------------------------------------------------------------------------
# exact oracle

def _binom_logpmf(n: int, theta: float) -> np.ndarray:
    k = np.arange(n + 1, dtype=float)
    return (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
            + k * math.log(theta) + (n - k) * math.log1p(-theta))


def exact_bernoulli_expected_max(inst: BoundedInstance) -> float:
    """``E max_j |mean_j|`` for ``p`` independent worst-case Bernoulli coordinates.

    One coordinate of the mean is ``((sigma^2 + B^2)/(n B)) k - sigma^2/B``
    with ``k ~ Bin(n, sigma^2/(sigma^2 + B^2))``. Its absolute value takes at
    most ``n + 1`` values ``u``; with survival ``S(u)`` the maximum of ``p``
    copies has ``P(M > u) = 1 - (1 - S(u))^p``, evaluated as
    ``-expm1(p log1p(-S))``, and ``E M`` is the sum of these over the gaps.
    """
    if inst.n > MAX_EXACT_N:
        raise DomainError(f"exact oracle supports n <= {MAX_EXACT_N}, got {inst.n}")
    n, s2, B = inst.n, inst.sigma ** 2, inst.B
    theta = inst.bernoulli_mass
    k = np.arange(n + 1, dtype=float)
    vals = np.abs((s2 + B * B) / (n * B) * k - s2 / B)
    pmf = np.exp(_binom_logpmf(n, theta))
    order = np.argsort(vals, kind="stable")
    u, w = vals[order], pmf[order]
    # survival just above u_i: mass of strictly later entries (summed small to large)
    surv = np.concatenate([np.cumsum(w[::-1])[::-1][1:], [0.0]])
    surv = np.minimum(surv, 1.0)
    gaps = np.diff(np.concatenate([[0.0], u]))
    # P(M > t) on [u_{i-1}, u_i) uses the survival at u_{i-1}; it is 1 below u_0
    tail = np.concatenate([[1.0], -np.expm1(inst.p * np.log1p(-surv[:-1]))])
    # |mean_j| <= B always; clip the rounding drift of the affine map
    return float(min(np.sum(gaps * tail), B))


def exact_two_point_expected_max_norm(spec, n: int) -> float:
    """``E max_{i <= n} ||X_i||_inf`` for TwoPoint and BernoulliWorst specs."""
    if isinstance(spec, TwoPoint):
        low, high, p_low = spec.low_value, spec.K, 1.0 - spec.upper_mass
    elif isinstance(spec, BernoulliWorst):
        low, high = spec.sigma ** 2 / spec.B, spec.B
        p_low = (spec.B ** 2 / (spec.sigma ** 2 + spec.B ** 2)) ** spec.p
    else:
        raise DomainError(f"no exact envelope law for {type(spec).__name__}")
    all_low = p_low ** n
    return low * all_low + high * (1.0 - all_low)


# ---------------------------------------------------------------------------
# blocked Monte Carlo

def block_size(n: int, dim: int) -> int:
    return max(1, min(MAX_BLOCK_REPS, BLOCK_ELEMENTS // max(1, n * dim)))


def run_blocks(stat: Callable[[np.random.Generator, int], np.ndarray], reps: int,
               rng: RngStream, per_block: int, workers: int = 1) -> np.ndarray:
    """Evaluate ``stat(gen, m)`` over consecutive blocks and concatenate.

    Block sizes and generators depend only on ``reps``, ``per_block`` and
    ``rng``; ``workers`` changes scheduling only.
    """
    if reps < 1:
        raise DomainError("reps must be positive")
    if workers < 1:
        raise DomainError("workers must be positive")
    sizes = [per_block] * (reps // per_block)
    if reps % per_block:
        sizes.append(reps % per_block)

    def one(b: int) -> np.ndarray:
        return np.asarray(stat(rng.generator(block=b), sizes[b]), dtype=float)

    if workers == 1:
        parts = [one(b) for b in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(one, range(len(sizes))))
    return np.concatenate(parts)


def _mean_and_se(x: np.ndarray) -> tuple[float, float]:
    m = float(np.mean(x))
    se = float(np.std(x, ddof=1) / math.sqrt(x.size)) if x.size > 1 else 0.0
    return m, se


def _sample_means(spec, n: int, gen: np.random.Generator, m: int) -> np.ndarray:
    x = spec.sample(gen, m * n)
    return x.reshape(m, n, spec.dim).mean(axis=1)


def estimate_expected_max(spec, n: int, reps: int, rng: RngStream, p: int | None = None,
                          workers: int = 1) -> EstimateResult:
    """Monte Carlo estimate of ``E max_j |(1/n) sum_i X_i(j)|``."""
    if p is not None and p != spec.dim:
        raise DomainError(f"p={p} does not match the spec dimension {spec.dim}")
    if reps < 100:
        raise DomainError("estimate_expected_max needs reps >= 100")

    def stat(gen, m):
        return np.abs(_sample_means(spec, n, gen, m)).max(axis=1)

    vals = run_blocks(stat, reps, rng, block_size(n, spec.dim), workers)
    mean, se = _mean_and_se(vals)
    return EstimateResult(mean, se, reps, rng.seed)


def wilson_interval(hits: int, reps: int, level: float = WILSON_LEVEL) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + level / 2.0)
    phat = hits / reps
    denom = 1.0 + z * z / reps
    centre = (phat + z * z / (2 * reps)) / denom
    half = z / denom * math.sqrt(phat * (1 - phat) / reps + z * z / (4 * reps * reps))
    # the endpoints are exactly 0 and 1 at hits = 0 and hits = reps
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == reps else min(1.0, centre + half)
    return lo, hi


def empirical_tail(spec, n: int, threshold: float, reps: int, rng: RngStream,
                   coordinate: int = 0, workers: int = 1) -> TailEstimate:
    """Frequency of ``(1/n) sum_i X_i(coordinate) >= threshold`` with a Wilson 99% interval."""
    if reps < 10_000:
        raise DomainError("empirical_tail needs reps >= 10^4")

    def stat(gen, m):
        return _sample_means(spec, n, gen, m)[:, coordinate] >= threshold

    hits = int(run_blocks(stat, reps, rng, block_size(n, spec.dim), workers).sum())
    freq = hits / reps
    lo, hi = wilson_interval(hits, reps)
    return TailEstimate(freq, lo, hi, math.sqrt(freq * (1 - freq) / reps), hits, reps, rng.seed)


# ---------------------------------------------------------------------------
# reports

def case_b_bracket(inst: BoundedInstance) -> tuple[float, float]:
    """``[3 p sigma^2 / (4B), (p + 1) sigma^2 / B]`` for the Bernoulli vectors in CaseB."""
    s2 = inst.sigma ** 2
    return 0.75 * inst.p * s2 / inst.B, (inst.p + 1) * s2 / inst.B


def sandwich_report(grid, reps: int = 20_000, rng: RngStream | None = None,
                    workers: int = 1) -> list[SandwichRow]:
    """Place the worst-case Bernoulli truth between the regime lower bound and the upper bound.

    The truth is exact for ``n <= 10^4`` and Monte Carlo otherwise. In CaseB
    the upper end is the smaller of the general bound and ``(p+1) sigma^2/B``.
    """
    rng = RngStream(0) if rng is None else rng
    rows = []
    for idx, inst in enumerate(grid):
        res = e_inf_bounds(inst)
        upper = res.upper
        if res.regime is Regime.CASE_B:
            upper = min(upper, case_b_bracket(inst)[1])
        if inst.n <= MAX_EXACT_N:
            truth, se, method = exact_bernoulli_expected_max(inst), 0.0, "exact"
        else:
            est = estimate_expected_max(BernoulliWorst(inst.sigma, inst.B, inst.p), inst.n,
                                        reps, rng.child(idx), workers=workers)
            truth, se, method = est.mean, est.std_error, "mc"
        ok = res.lower - 3 * se <= truth <= upper + 3 * se
        rows.append(SandwichRow(inst, truth, se, res.lower, upper, ok, res.regime.value, method))
    return rows


@dataclass
class MqReport:
    n: int
    q: float
    estimate: float
    std_error: float
    upper_bound: float
    upper_ok: bool
    lower_reference: float | None = None
    empirical_c: float | None = None
    method: str = "mc"


def _envelope_norms(spec, gen: np.random.Generator, m: int) -> np.ndarray:
    if isinstance(spec, ProductH):
        return spec.sample_norm(gen, m)
    return np.abs(spec.sample(gen, m)).max(axis=1)


def mq_check(spec, n: int, q: float, B_env: float, reps: int, rng: RngStream,
             workers: int = 1, tau_factor: float = 5.0) -> MqReport:
    """Check ``E max_{i <= n} ||X_i||_inf <= n^(1/q) B_env``.

    TwoPoint and BernoulliWorst use the exact law of the maximum. For
    ProductH the heavy-tail reference ``(n / log(n)^2)^(1/q)`` times ``B`` or
    ``p sigma^2 / B`` is reported together with the implied constant.
    """
    if spec.envelope_moment(q) > B_env ** q * (1 + 1e-9):
        raise DomainError("spec envelope moment exceeds B_env^q")
    bound = n ** (1.0 / q) * B_env
    if isinstance(spec, (TwoPoint, BernoulliWorst)):
        val = exact_two_point_expected_max_norm(spec, n)
        return MqReport(n, q, val, 0.0, bound, val <= bound, method="exact")

    def stat(gen, m):
        return _envelope_norms(spec, gen, m * n).reshape(m, n).max(axis=1)

    vals = run_blocks(stat, reps, rng, block_size(n, 1), workers)
    est, se = _mean_and_se(vals)
    report = MqReport(n, q, est, se, bound, est <= bound + 4 * se)
    if isinstance(spec, ProductH) and n > 1:
        sigma = spec.tau * math.sqrt(tau_factor)
        big = 2 * spec.p - 1 >= 5 * (B_env / sigma) ** 2 / (1 + 2 * q) ** (2.0 / q)
        scale = B_env if big else spec.p * sigma ** 2 / B_env
        report.lower_reference = (n / math.log(n) ** 2) ** (1.0 / q) * scale
        report.empirical_c = est / report.lower_reference
    return report


@dataclass
class ReductionReport:
    dependent: EstimateResult
    independent: EstimateResult
    ratio: float
    ok: bool


def independence_reduction_check(dependent_spec: DependentBernoulli, n: int, reps: int,
                                 rng: RngStream, workers: int = 1) -> ReductionReport:
    """Compare a dependent vector against independent coordinates with the same marginals.

    Passes when the dependent estimate is at most twice the independent one
    plus four combined standard errors.
    """
    # common random numbers: with p = 1 both sides see identical draws
    dep = estimate_expected_max(dependent_spec, n, reps, rng, workers=workers)
    ind = estimate_expected_max(dependent_spec.independent_counterpart(), n, reps, rng,
                                workers=workers)
    combined = math.sqrt(dep.std_error ** 2 + 4 * ind.std_error ** 2)
    ratio = dep.mean / ind.mean if ind.mean > 0 else math.inf
    return ReductionReport(dep, ind, ratio, dep.mean <= 2 * ind.mean + 4 * combined)


# ---------------------------------------------------------------------------
# elementary brackets used as self-tests

def inclusion_exclusion_bracket(probs) -> tuple[float, float, float]:
    """``(sum p - sum_{i<j} p_i p_j, 1 - prod(1 - p), sum p)``."""
    p = np.asarray(probs, dtype=float)
    s1 = float(p.sum())
    s2 = 0.5 * (s1 * s1 - float(np.sum(p * p)))
    return s1 - s2, float(-np.expm1(np.sum(np.log1p(-p)))), s1


def binomial_bracket(x: float, p: int) -> tuple[float, float, float]:
    """``(p x - C(p,2) x^2, 1 - (1-x)^p, p x)``."""
    return p * x - 0.5 * p * (p - 1) * x * x, -math.expm1(p * math.log1p(-x)), p * x


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def mills_bracket(x: float) -> tuple[float, float, float]:
    """``(phi(x)/(x+1), Phi(-x), phi(x)/x)`` for ``x > 0``."""
    if not x > 0:
        raise DomainError("Mills bracket needs x > 0")
    dens = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    return dens / (x + 1.0), normal_cdf(-x), dens / x


def _kl_bernoulli(a: float, theta: float) -> float:
    t1 = 0.0 if a == 0 else a * math.log(a / theta)
    t2 = 0.0 if a == 1 else (1 - a) * math.log((1 - a) / (1 - theta))
    return t1 + t2


def log_binomial_upper_tail(n: int, theta: float, m: int) -> float:
    """Exact ``log P(Bin(n, theta) >= m)`` from the log-pmf."""
    if m <= 0:
        return 0.0
    if m > n:
        return -math.inf
    lp = _binom_logpmf(n, theta)[m:]
    top = float(lp.max())
    return min(0.0, top + math.log(float(np.sum(np.exp(lp - top)))))


def binomial_upper_tail(n: int, theta: float, m: int) -> float:
    return math.exp(log_binomial_upper_tail(n, theta, m))


def log_normal_tail_lower(n: int, theta: float, m: int) -> float:
    """``log Phi(-sqrt(2 n H(m/n, theta)))`` for ``m >= n theta``."""
    return float(log_ndtr(-math.sqrt(2.0 * n * _kl_bernoulli(m / n, theta))))


def normal_tail_lower(n: int, theta: float, m: int) -> float:
    return math.exp(log_normal_tail_lower(n, theta, m))


@dataclass
class BracketAudit:
    name: str
    checked: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

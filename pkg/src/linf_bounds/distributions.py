"""Extremal distributions for the maximal inequalities and their samplers.

* ``TwoPoint(tau, K)``: values ``-tau^2/K`` and ``K``, mean zero, variance ``tau^2``.
* ``BernoulliWorst(sigma, B, p)``: ``p`` independent ``TwoPoint(sigma, B)`` coordinates.
* ``HeavyTailG(q)``: symmetric, ``P(|G| > x) = x^-q max(log x, 1)^-2`` for ``x >= 1``.
* ``ProductH(q, tau, K, p)``: ``G * (W_1, ..., W_p)`` with two-point ``W_j``.
* ``DependentBernoulli(sigma, B, p, coupling)``: BernoulliWorst marginals with
  fully dependent coordinates.

Sampling is driven by :class:`RngStream`, a ``(seed, stream_id)`` pair mapped
to a numpy generator through ``SeedSequence``; equal pairs give equal draws.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import ConvergenceError, DomainError, adaptive_simpson, bisect
from .bounded import BoundedInstance

_U64 = 2 ** 64


@dataclass(frozen=True)
class RngStream:
    """Reproducible source of random draws identified by ``(seed, stream_id)``."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if int(v) != v or not 0 <= v < _U64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {v}")

    def generator(self, block: int | None = None) -> np.random.Generator:
        """Fresh generator; ``block`` selects an independent sub-stream."""
        key = [int(self.seed), int(self.stream_id)]
        if block is not None:
            key.append(int(block))
        return np.random.default_rng(np.random.SeedSequence(key))

    def child(self, offset: int) -> "RngStream":
        return RngStream(self.seed, (self.stream_id + offset) % _U64)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


# ---------------------------------------------------------------------------
# heavy-tailed envelope variable G(q)

def _check_q(q: float) -> None:
    if not q >= 2:
        raise DomainError(f"q must be >= 2, got {q}")


def heavy_tail_survival(x, q: float):
    """``P(|G| > x)``: 1 below 1, ``x^-q`` on ``[1, e]``, ``x^-q (log x)^-2`` above."""
    _check_q(q)
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lx = np.log(np.maximum(x, 1.0))
        s = np.exp(-q * lx) / np.maximum(lx, 1.0) ** 2
    s = np.where(x < 1.0, 1.0, s)
    return s if s.ndim else float(s)


def heavy_tail_cdf(x, q: float):
    """Distribution function of ``G(q)``; flat at 1/2 on ``(-1, 1)``."""
    x = np.asarray(x, dtype=float)
    half_tail = 0.5 * np.asarray(heavy_tail_survival(np.abs(x), q))
    out = np.where(x < 0, half_tail, 1.0 - half_tail)
    out = np.where(np.abs(x) < 1.0, 0.5, out)
    return out if out.ndim else float(out)


def _abs_from_survival(v, q: float, max_iter: int = 100):
    """Invert ``v = P(|G| > x)`` for ``v`` in ``(0, 1]``.

    Power inversion on ``[1, e]``; beyond ``e`` Newton on
    ``q L + 2 log L = -log v`` in ``L = log x``. That function is increasing
    and concave, so iterates started at ``L = 1`` increase monotonically.
    """
    v = np.asarray(v, dtype=float)
    shape = v.shape
    lv = np.log(v.ravel())
    out = np.exp(-lv / q)
    tail = lv < -q
    if np.any(tail):
        target = -lv[tail]
        L = np.ones_like(target)
        for _ in range(max_iter):
            step = (q * L + 2.0 * np.log(L) - target) / (q + 2.0 / L)
            L = L - step
            if np.all(np.abs(step) <= 1e-15 * L):
                break
        else:
            raise ConvergenceError("heavy-tail quantile Newton did not converge")
        out[tail] = np.exp(L)
    return out.reshape(shape)


def quantile_heavy_tail_g(u, q: float):
    """Inverse CDF of ``G(q)``; ``quantile(0.5) = 1`` by convention."""
    _check_q(q)
    u = np.asarray(u, dtype=float)
    if np.any((u <= 0) | (u >= 1)):
        raise DomainError("quantile needs u in (0, 1)")
    mag = _abs_from_survival(2.0 * np.minimum(u, 1.0 - u), q)
    out = np.where(u >= 0.5, mag, -mag)
    return out if out.ndim else float(out)


def sample_heavy_tail_g(q: float, rng, count: int) -> np.ndarray:
    """``count`` independent draws of ``G(q)``.

    The magnitude is drawn from its survival function directly, which avoids
    the cancellation of ``1 - u`` for far-tail draws.
    """
    _check_q(q)
    gen = _as_generator(rng)
    v = 1.0 - gen.random(count)  # (0, 1]
    sign = np.where(gen.random(count) < 0.5, -1.0, 1.0)
    return sign * _abs_from_survival(v, q)


def heavy_tail_abs_moment(s: float, q: float, c: float = math.inf, rel_tol: float = 1e-11) -> float:
    """``E[|G|^s 1{|G| <= c}]``.

    Integrates ``s x^(s-1) P(|G| > x)`` up to ``c`` and removes the boundary
    term. Past ``e`` the substitution ``t = 1 / log x`` turns the tail piece
    into ``s * int exp(-(q - s)/t) dt`` over ``[1/log c, 1]``.
    """
    _check_q(q)
    if s < 0 or (math.isinf(c) and s > q):
        raise DomainError("moment order must satisfy 0 <= s <= q for an untruncated moment")
    if c < 1.0:
        return 0.0
    m = min(c, math.e)
    a = q - s
    total = 1.0
    total += s * math.log(m) if a == 0 else s / a * (1.0 - m ** (-a))
    if c > math.e:
        lo = 0.0 if math.isinf(c) else 1.0 / math.log(c)
        total += s * adaptive_simpson(lambda t: math.exp(-a / t) if t > 0 else (0.0 if a > 0 else 1.0),
                                      lo, 1.0, rel_tol=rel_tol, abs_tol=1e-300)
    if math.isfinite(c):
        total -= c ** s * float(heavy_tail_survival(c, q))
    return total


# ---------------------------------------------------------------------------
# distribution specs

@dataclass(frozen=True)
class TwoPoint:
    """``-tau^2/K`` w.p. ``K^2/(K^2+tau^2)`` and ``K`` w.p. ``tau^2/(K^2+tau^2)``."""

    tau: float
    K: float
    kind = "TwoPoint"

    def __post_init__(self):
        if not (0 < self.tau <= self.K and math.isfinite(self.K)):
            raise DomainError(f"need 0 < tau <= K, got tau={self.tau}, K={self.K}")

    @property
    def dim(self) -> int:
        return 1

    @property
    def upper_mass(self) -> float:
        return self.tau ** 2 / (self.K ** 2 + self.tau ** 2)

    @property
    def low_value(self) -> float:
        return self.tau ** 2 / self.K

    def sample(self, rng, rows: int) -> np.ndarray:
        return _two_point_draws(_as_generator(rng), self.tau, self.K, (rows, 1))

    def variance(self) -> float:
        return self.tau ** 2

    def envelope_moment(self, q: float) -> float:
        """``E|X|^q``."""
        pm = self.upper_mass
        return self.low_value ** q * (1.0 - pm) + self.K ** q * pm


@dataclass(frozen=True)
class BernoulliWorst:
    """``p`` independent coordinates with values ``-sigma^2/B`` and ``B``."""

    sigma: float
    B: float
    p: int = 1
    kind = "BernoulliWorst"

    def __post_init__(self):
        BoundedInstance(1, self.p, self.sigma, self.B)

    @property
    def dim(self) -> int:
        return self.p

    def coordinate(self) -> TwoPoint:
        return TwoPoint(self.sigma, self.B)

    def sample(self, rng, rows: int) -> np.ndarray:
        return _two_point_draws(_as_generator(rng), self.sigma, self.B, (rows, self.p))

    def variance(self) -> float:
        return self.sigma ** 2

    def envelope_moment(self, q: float) -> float:
        """``E ||X||_inf^q``: the norm is ``B`` unless every coordinate is low."""
        lo, B = self.sigma ** 2 / self.B, self.B
        all_low = (1.0 - self.coordinate().upper_mass) ** self.p
        return lo ** q * all_low + B ** q * (1.0 - all_low)


@dataclass(frozen=True)
class HeavyTailG:
    q: float
    kind = "HeavyTailG"

    def __post_init__(self):
        _check_q(self.q)

    @property
    def dim(self) -> int:
        return 1

    def sample(self, rng, rows: int) -> np.ndarray:
        return sample_heavy_tail_g(self.q, rng, rows)[:, None]

    def variance(self) -> float:
        return heavy_tail_abs_moment(2.0, self.q)

    def envelope_moment(self, q: float) -> float:
        return heavy_tail_abs_moment(q, self.q)


@dataclass(frozen=True)
class ProductH:
    """``G(q) * (W_1, ..., W_p)`` with ``W_j`` i.i.d. ``TwoPoint(tau, K)``.

    With ``truncation = c`` the scalar factor is replaced by
    ``G 1{|G| <= c}``, which stays symmetric and makes the vector bounded by
    ``c K``.
    """

    q: float
    tau: float
    K: float
    p: int = 1
    truncation: float | None = None
    kind = "ProductH"

    def __post_init__(self):
        _check_q(self.q)
        TwoPoint(self.tau, self.K)
        if int(self.p) != self.p or self.p < 1:
            raise DomainError(f"p must be a positive integer, got {self.p}")
        if self.truncation is not None and not self.truncation >= 1:
            raise DomainError("truncation level must be at least 1")

    @property
    def dim(self) -> int:
        return self.p

    @property
    def _c(self) -> float:
        return math.inf if self.truncation is None else self.truncation

    @property
    def all_low_mass(self) -> float:
        """``P(max_j |W_j| = tau^2/K) = (K^2/(K^2+tau^2))^p``."""
        return math.exp(self._log_all_low)

    @property
    def _log_all_low(self) -> float:
        return self.p * math.log1p(-self.tau ** 2 / (self.K ** 2 + self.tau ** 2))

    def _scalar(self, gen: np.random.Generator, rows: int) -> np.ndarray:
        g = sample_heavy_tail_g(self.q, gen, rows)
        if self.truncation is not None:
            g = np.where(np.abs(g) <= self.truncation, g, 0.0)
        return g

    def sample(self, rng, rows: int) -> np.ndarray:
        gen = _as_generator(rng)
        g = self._scalar(gen, rows)
        w = _two_point_draws(gen, self.tau, self.K, (rows, self.p))
        return g[:, None] * w

    def sample_norm(self, rng, rows: int) -> np.ndarray:
        """Draws of ``||H||_inf = |G| max_j |W_j|`` without forming the vector."""
        gen = _as_generator(rng)
        g = np.abs(self._scalar(gen, rows))
        low = gen.random(rows) < self.all_low_mass
        return g * np.where(low, self.tau ** 2 / self.K, self.K)

    def variance(self) -> float:
        return heavy_tail_abs_moment(2.0, self.q, self._c) * self.tau ** 2

    def max_w_moment(self, q: float) -> float:
        """``E max_j |W_j|^q``."""
        # 1 - pi via expm1: pi is within p tau^2/K^2 of one when K >> tau
        pi, any_high = self.all_low_mass, -math.expm1(self._log_all_low)
        return (self.tau ** 2 / self.K) ** q * pi + self.K ** q * any_high

    def envelope_moment(self, q: float) -> float:
        return heavy_tail_abs_moment(q, self.q, self._c) * self.max_w_moment(q)

    def envelope_survival(self, t: float) -> float:
        """``P(||H||_inf > t)``."""
        pi = self.all_low_mass
        a = self.tau ** 2 / self.K
        return pi * _g_abs_survival(t / a, self.q, self._c) + (1.0 - pi) * _g_abs_survival(t / self.K, self.q, self._c)


@dataclass(frozen=True)
class DependentBernoulli:
    """BernoulliWorst marginals driven by a single two-point draw per row.

    ``comonotone`` copies the draw to all coordinates; ``antithetic`` copies
    it to the first half and its negative to the second half.
    """

    sigma: float
    B: float
    p: int = 1
    coupling: str = "comonotone"
    kind = "DependentBernoulli"

    def __post_init__(self):
        BoundedInstance(1, self.p, self.sigma, self.B)
        if self.coupling not in ("comonotone", "antithetic"):
            raise DomainError(f"unknown coupling {self.coupling!r}")

    @property
    def dim(self) -> int:
        return self.p

    def sample(self, rng, rows: int) -> np.ndarray:
        w = _two_point_draws(_as_generator(rng), self.sigma, self.B, (rows, 1))
        out = np.repeat(w, self.p, axis=1)
        if self.coupling == "antithetic":
            out[:, self.p // 2 + self.p % 2:] *= -1.0
        return out

    def independent_counterpart(self) -> BernoulliWorst:
        """Independent coordinates with the same marginal law of ``|X_j|``."""
        return BernoulliWorst(self.sigma, self.B, self.p)

    def variance(self) -> float:
        return self.sigma ** 2


def _g_abs_survival(x: float, q: float, c: float) -> float:
    """``P(|G 1{|G| <= c}| > x)``."""
    if x >= c:
        return 0.0
    return float(heavy_tail_survival(x, q)) - float(heavy_tail_survival(c, q)) if math.isfinite(c) \
        else float(heavy_tail_survival(x, q))


def _two_point_draws(gen: np.random.Generator, tau: float, K: float, shape) -> np.ndarray:
    up = gen.random(shape) < tau ** 2 / (K ** 2 + tau ** 2)
    return np.where(up, K, -tau ** 2 / K)


# ---------------------------------------------------------------------------
# operations on specs

def sample_bernoulli_worst(inst: BoundedInstance, rng, rows: int) -> np.ndarray:
    """``rows x p`` matrix of i.i.d. worst-case two-point entries."""
    return BernoulliWorst(inst.sigma, inst.B, inst.p).sample(rng, rows)


def sample_product_h(spec: ProductH, rng, count: int) -> np.ndarray:
    return spec.sample(rng, count)


def _log_envelope_F(log_y: float, q: float, p: int) -> float:
    """``log F(y)`` with ``F(y) = y^-q r^p + y^q (1 - r^p)``, ``r = y^2/(1+y^2)``."""
    p_log_r = -p * math.log1p(math.exp(-2.0 * log_y))
    a = -q * log_y + p_log_r
    if p_log_r > -1e-8:
        # 1 - r^p = p / y^2 to relative order p / y^2
        log_high = math.log(p) - 2.0 * log_y + math.log1p(-0.5 * (p + 1) * math.exp(-2.0 * log_y))
    else:
        log_high = math.log(-math.expm1(p_log_r))
    b = q * log_y + log_high
    return max(a, b) + math.log1p(math.exp(-abs(a - b)))


def envelope_F(y: float, q: float, p: int) -> float:
    return math.exp(_log_envelope_F(math.log(y), q, p))


def solve_envelope_K(sigma: float, B: float, q: float, p: int, tau_factor: float = 5.0) -> float:
    """Level ``K`` making ``ProductH(q, sigma/sqrt(tau_factor), K, p)`` have envelope moment ``B^q``.

    Writes ``K = tau y`` and solves ``F(y) = (B/tau)^q / (1 + 2q)`` on
    ``y >= 1`` by bisection in ``log y``; ``F(1) = 1`` and ``F`` increases.
    """
    _check_q(q)
    BoundedInstance(1, p, sigma, B)
    tau = sigma / math.sqrt(tau_factor)
    log_target = q * math.log(B / tau) - math.log1p(2.0 * q)
    if log_target < -1e-12:
        raise DomainError("envelope bound too small for the variance: no root with y >= 1")
    if log_target <= 0.0:
        return tau
    hi = 1.0
    while _log_envelope_F(hi, q, p) < log_target:
        hi *= 2.0
        if hi > 700.0:
            raise DomainError("envelope equation has no root: bracket expansion failed")
    log_y = bisect(lambda t: _log_envelope_F(t, q, p) - log_target, 0.0, hi)
    return tau * math.exp(log_y)


def envelope_residual(K: float, sigma: float, B: float, q: float, p: int, tau_factor: float = 5.0) -> float:
    """``(1 + 2q) E max_j |W_j|^q - B^q`` at level ``K``."""
    tau = sigma / math.sqrt(tau_factor)
    spec = ProductH(q, tau, K, p) if K >= tau else None
    if spec is None:
        raise DomainError("K must be at least tau")
    return (1.0 + 2.0 * q) * spec.max_w_moment(q) - B ** q


def threshold_T(spec, n: int) -> float:
    """Smallest ``t`` with ``P(||X||_inf > t) <= 1/(8n)``."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    level = 1.0 / (8 * n)
    if isinstance(spec, TwoPoint):
        return spec.low_value if spec.upper_mass <= level else spec.K
    if isinstance(spec, BernoulliWorst):
        b2 = spec.B ** 2
        any_high = -math.expm1(spec.p * math.log(b2 / (spec.sigma ** 2 + b2)))
        return spec.sigma ** 2 / spec.B if any_high <= level else spec.B
    if isinstance(spec, HeavyTailG):
        return float(_abs_from_survival(level, spec.q))
    if isinstance(spec, ProductH):
        hi = spec.K * float(_abs_from_survival(level, spec.q))
        return bisect(lambda t: level - spec.envelope_survival(t), 0.0, hi)
    raise DomainError(f"threshold_T is not defined for {type(spec).__name__}")

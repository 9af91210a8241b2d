"""Verification suites run by ``linf-bounds verify``.

Each suite returns a list of :class:`VerifyRow`. Grids are fixed (they come
from private, constant seeds); the user seed only drives Monte Carlo draws,
so a report is a deterministic function of ``(suite, reps, seed)``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .bounded import (
    BoundedInstance,
    bennett_integral,
    correction_term,
    e_inf_bounds,
    threshold_A,
)
from .distributions import (
    BernoulliWorst,
    ProductH,
    RngStream,
    TwoPoint,
    envelope_F,
    envelope_residual,
    heavy_tail_cdf,
    sample_heavy_tail_g,
    solve_envelope_K,
)
from .qmoment import (
    MomentInstance,
    TailQuery,
    baseline_bound,
    fuk_nagaev_threshold_v1,
    fuk_nagaev_threshold_v2,
    limit_expression,
    moment_case,
    monotonicity_audit,
    u_star,
)
from .simulation import (
    binomial_bracket,
    log_binomial_upper_tail,
    case_b_bracket,
    empirical_tail,
    estimate_expected_max,
    exact_bernoulli_expected_max,
    inclusion_exclusion_bracket,
    mills_bracket,
    log_normal_tail_lower,
    mq_check,
)
from .special import (
    iterated_log_fixed_point,
    lambert_w,
    psi,
    psi_inv,
    psi_prime_at_inv,
)

E = math.e
INEQ_SLACK = 1e-12
#: Published-constant floor used for the integral sandwich (below (log 2)^2/(4 sqrt 2)).
SANDWICH_FLOOR = 0.0849
QUAD_SLACK = 1e-6
Q_GRID = (2.5, 3.0, 4.0, 8.0, 16.0, 64.0, 256.0)
TAIL_Z = (2.0, 10.0, 100.0)
DKW_ALPHA = 0.01


@dataclass(frozen=True)
class VerifyRow:
    suite: str
    check: str
    case: str
    value: float
    reference: float
    ok: bool

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "reference", float(self.reference))
        object.__setattr__(self, "ok", bool(self.ok))

    def as_dict(self) -> dict:
        return asdict(self)


FIELDS = ("suite", "check", "case", "value", "reference", "ok")


# ---------------------------------------------------------------------------
# lemmas

def _log_grid(lo: float, hi: float, count: int = 500) -> np.ndarray:
    return np.geomspace(lo, hi, count)


def _ineq_row(check: str, xs, lhs: Callable, rhs: Callable, case: str = "",
              relative: bool = False) -> VerifyRow:
    """Worst excess of ``lhs`` over ``rhs`` across ``xs``.

    The excess is scaled by ``max(1, |rhs|)``, or by ``|rhs|`` when
    ``relative`` is set (for quantities far below one).
    """
    worst = -math.inf
    for x in xs:
        a, b = lhs(x), rhs(x)
        worst = max(worst, (a - b) / (abs(b) if relative else max(1.0, abs(b))))
    return VerifyRow("lemmas", check, case or f"{len(xs)} points", worst, INEQ_SLACK, worst <= INEQ_SLACK)


def suite_lemmas(reps: int = 0, seed: int = 0, workers: int = 1) -> list[VerifyRow]:
    rows = []
    pos = _log_grid(1e-10, 1e6)
    rows.append(_ineq_row("psi_inv(psi(x)) round trip", np.concatenate([[0.0], pos]),
                          lambda x: abs(psi_inv(psi(x)) - x) / (1 + x), lambda x: 0.0))
    near_branch = -1.0 / E + np.geomspace(1e-15, 1.0 / E, 250)
    wgrid = np.concatenate([[-1.0 / E], near_branch, _log_grid(1e-10, 1e6, 250)])
    rows.append(_ineq_row("lambert_w residual", wgrid,
                          lambda x: abs(lambert_w(x) * math.exp(lambert_w(x)) - x) / (1 + abs(x)),
                          lambda x: 0.0))
    nonneg = np.concatenate([[0.0], _log_grid(1e-10, 1e6)])
    rows.append(_ineq_row("W(x) >= (1-1/e) log(1+x)", nonneg,
                          lambda x: (1 - 1 / E) * math.log1p(x), lambert_w))
    rows.append(_ineq_row("W(x) <= log(1+x)", nonneg, lambert_w, math.log1p))
    gt1 = _log_grid(1.0 + 1e-9, 1e6)
    rows.append(_ineq_row("W(x) >= log x - log log(x(1+1/e)/log x)", gt1,
                          lambda x: math.log(x) - math.log(math.log(x * (1 + 1 / E) / math.log(x))),
                          lambert_w))
    small = np.concatenate([[0.0], _log_grid(1e-10, E)])
    rows.append(_ineq_row("psi_inv(x) >= sqrt(2x) on [0,e]", small,
                          lambda x: math.sqrt(2 * x), psi_inv))
    rows.append(_ineq_row("psi_inv(x) <= 2 sqrt(2x) on [0,e]", small,
                          psi_inv, lambda x: 2 * math.sqrt(2 * x)))

    def g_large(x):
        return (x - 1) / math.log1p((x - 1) / E) - 1

    rows.append(_ineq_row("psi_inv(x) >= g(x) for x > 1", gt1, g_large, psi_inv))
    rows.append(_ineq_row("psi_inv(x) <= 2 g(x) for x > 1", gt1, psi_inv, lambda x: 2 * g_large(x)))
    rows.append(_ineq_row("log(1+x)/sqrt2 <= sqrt2 log(1+sqrt x) on [0,e]", small,
                          lambda x: math.log1p(x) / math.sqrt(2), lambda x: math.sqrt(2) * math.log1p(math.sqrt(x))))
    rows.append(_ineq_row("sqrt2 log(1+sqrt x) <= psi'(psi_inv x) on [0,e]", small,
                          lambda x: math.sqrt(2) * math.log1p(math.sqrt(x)), psi_prime_at_inv))
    rows.append(_ineq_row("psi'(psi_inv x) <= 1.5 log(1+sqrt x) on [0,e]", small,
                          psi_prime_at_inv, lambda x: 1.5 * math.log1p(math.sqrt(x))))
    rows.append(_ineq_row("psi'(psi_inv x) >= log(1+x)/sqrt2 for x > 1", gt1,
                          lambda x: math.log1p(x) / math.sqrt(2), psi_prime_at_inv))
    rows.append(_ineq_row("psi'(psi_inv x) <= log(1+x)/log2 for x > 1", gt1,
                          psi_prime_at_inv, lambda x: math.log1p(x) / math.log(2)))
    big = _log_grid(math.sqrt(E) * (1 + 1e-12), 1e6)

    def ratio(x):
        return psi(x) / ((1 + x) * math.log1p(x) ** 2)

    rows.append(_ineq_row("1/(6 log x) <= 1/(3 log(1+x))", big,
                          lambda x: 1 / (6 * math.log(x)), lambda x: 1 / (3 * math.log1p(x))))
    rows.append(_ineq_row("1/(3 log(1+x)) <= psi(x)/((1+x) log^2(1+x))", big,
                          lambda x: 1 / (3 * math.log1p(x)), ratio))
    rows.append(_ineq_row("psi(x)/((1+x) log^2(1+x)) <= 1/log(1+x)", big,
                          ratio, lambda x: 1 / math.log1p(x)))
    rows.append(_ineq_row("1/log(1+x) <= 1/log x", big,
                          lambda x: 1 / math.log1p(x), lambda x: 1 / math.log(x)))
    ge_e = _log_grid(E, 1e6)
    vals = [-x * lambert_w(-1.0 / x) for x in ge_e]
    rows.append(_ineq_row("-x W(-1/x) >= 1", ge_e, lambda x: 1.0, lambda x: -x * lambert_w(-1.0 / x)))
    rows.append(_ineq_row("-x W(-1/x) <= e", ge_e, lambda x: -x * lambert_w(-1.0 / x), lambda x: E))
    rise = max(b - a for a, b in zip(vals, vals[1:]))
    rows.append(VerifyRow("lemmas", "-x W(-1/x) decreasing", f"{len(ge_e)} points", rise,
                          INEQ_SLACK, rise <= INEQ_SLACK))
    rows.append(_ineq_row("log(1+x) >= x/3 on [0,e]", small, lambda x: x / 3, math.log1p))
    half = _log_grid(0.5 + 1e-9, 1e6)
    rows.append(_ineq_row("log 2x <= 1.25 log(2x/sqrt(log 2x))", half,
                          lambda x: math.log(2 * x),
                          lambda x: 1.25 * math.log(2 * x / math.sqrt(math.log(2 * x)))))
    pairs = [(x, y) for x in np.geomspace(1e-3, 1e3, 30) for y in np.geomspace(1e-3, 1e3, 30) if x * y > 1]

    def aux2_lhs(xy):
        x, y = xy
        u = (x * y - 1) / E
        return u / math.log1p(u) if u > 0 else 1.0

    def aux2_rhs(xy):
        x, y = xy
        return (1 + x) * y / math.log((1 + x) * y)

    rows.append(_ineq_row("((xy-1)/e)/log(1+(xy-1)/e) <= (1+x)y/log((1+x)y)", pairs, aux2_lhs, aux2_rhs))
    rs = _log_grid(E * (1 + 1e-9), 1e12)
    rows.append(_ineq_row("r log r <= iterated-log fixed point", rs,
                          lambda r: r * math.log(r), iterated_log_fixed_point))
    rows.append(_ineq_row("iterated-log fixed point <= 2 r log r", rs,
                          iterated_log_fixed_point, lambda r: 2 * r * math.log(r)))
    xs = _log_grid(1e-3, 30.0)
    rows.append(_ineq_row("phi(x)/(x+1) <= Phi(-x)", xs,
                          lambda x: mills_bracket(x)[0], lambda x: mills_bracket(x)[1], relative=True))
    rows.append(_ineq_row("Phi(-x) <= phi(x)/x", xs,
                          lambda x: mills_bracket(x)[1], lambda x: mills_bracket(x)[2], relative=True))
    gen = np.random.default_rng(20240101)
    prob_vectors = [gen.random(int(gen.integers(1, 30))) ** 3 for _ in range(500)]
    rows.append(_ineq_row("inclusion-exclusion lower", prob_vectors,
                          lambda v: inclusion_exclusion_bracket(v)[0], lambda v: inclusion_exclusion_bracket(v)[1]))
    rows.append(_ineq_row("inclusion-exclusion upper", prob_vectors,
                          lambda v: inclusion_exclusion_bracket(v)[1], lambda v: inclusion_exclusion_bracket(v)[2]))
    xp = [(x, p) for x in np.geomspace(1e-6, 0.999, 25) for p in (1, 2, 3, 10, 100, 1000)]
    rows.append(_ineq_row("p x - C(p,2) x^2 <= 1-(1-x)^p", xp,
                          lambda t: binomial_bracket(*t)[0], lambda t: binomial_bracket(*t)[1]))
    rows.append(_ineq_row("1-(1-x)^p <= p x", xp,
                          lambda t: binomial_bracket(*t)[1], lambda t: binomial_bracket(*t)[2]))
    zs = [(n, th, m) for n in (5, 20, 100, 1000) for th in (0.01, 0.1, 0.3, 0.5, 0.8)
          for m in sorted({int(v) for v in np.linspace(math.ceil(n * th), n, 12)})]
    rows.append(_ineq_row("log P(Bin >= m) >= log Phi(-sqrt(2 n H(m/n, theta)))", zs,
                          lambda t: log_normal_tail_lower(*t), lambda t: log_binomial_upper_tail(*t)))
    return rows


# ---------------------------------------------------------------------------
# bounded case

def sandwich_grid(count: int = 200) -> list[BoundedInstance]:
    gen = np.random.default_rng(4004)
    out = []
    for _ in range(count):
        n = int(round(10 ** gen.uniform(math.log10(2), 4)))
        p = int(round(10 ** gen.uniform(0, 6)))
        B = float(10 ** gen.uniform(-1, 1))
        sigma = B * float(10 ** gen.uniform(-3, 0))
        out.append(BoundedInstance(n, p, sigma, B))
    return out


def regime_grid(kind: str, count: int) -> list[BoundedInstance]:
    """Instances in one regime with ``n <= 50`` (CaseA, CaseB) or tiny ``n`` (A > B)."""
    gen = np.random.default_rng({"CaseA": 11, "CaseB": 12, "AGreaterThanB": 13}[kind])
    out = []
    while len(out) < count:
        if kind == "CaseA":
            n, p, r = int(gen.integers(1, 51)), int(gen.integers(1, 1001)), 10 ** gen.uniform(-2, 0)
        elif kind == "CaseB":
            n, p, r = int(gen.integers(1, 51)), int(gen.integers(1, 51)), 10 ** gen.uniform(-3, -0.5)
        else:
            n, p, r = int(gen.integers(1, 6)), int(10 ** gen.uniform(1, 6)), 10 ** gen.uniform(-0.3, 0)
        B = float(10 ** gen.uniform(-1, 1))
        inst = BoundedInstance(n, p, float(r) * B, B)
        if e_inf_bounds(inst).regime.value == kind:
            out.append(inst)
    return out


def _inst_label(inst) -> str:
    return f"n={inst.n} p={inst.p} sigma={inst.sigma:.6g} B={inst.B:.6g}"


def suite_sandwich_inf(reps: int = 20_000, seed: int = 0, workers: int = 1) -> list[VerifyRow]:
    rows = []
    for inst in sandwich_grid():
        A = threshold_A(inst)
        a = min(A, inst.B)
        corr = correction_term(inst, A)
        val = bennett_integral(inst)
        lo = a + SANDWICH_FLOOR * corr
        hi = a + corr
        ok = lo * (1 - QUAD_SLACK) <= val <= hi * (1 + QUAD_SLACK)
        # relative position inside the sandwich, 0 at the lower end and 1 at the upper
        pos = (val - a) / corr if corr > 0 else 0.0
        rows.append(VerifyRow("sandwich-inf", "bennett integral sandwich", _inst_label(inst), pos,
                              SANDWICH_FLOOR, ok))
    for kind, count in (("CaseA", 100), ("CaseB", 30), ("AGreaterThanB", 10)):
        for inst in regime_grid(kind, count):
            truth = exact_bernoulli_expected_max(inst)
            res = e_inf_bounds(inst)
            if kind == "CaseA":
                lo, hi = res.upper / 3825.0, res.upper
            elif kind == "CaseB":
                lo, hi = case_b_bracket(inst)
            else:
                lo, hi = inst.B / 3825.0, inst.B
                ok_regime = inst.n * inst.sigma ** 2 / (inst.sigma ** 2 + inst.B ** 2) >= 1 / (2 * inst.p)
                rows.append(VerifyRow("sandwich-inf", "A>B implies CaseA inequality", _inst_label(inst),
                                      threshold_A(inst) / inst.B, 1.0, ok_regime))
            rows.append(VerifyRow("sandwich-inf", f"exact oracle in {kind} bracket", _inst_label(inst),
                                  truth / hi, lo / hi, lo <= truth <= hi))
    rng = RngStream(seed, 1)
    for k, inst in enumerate([BoundedInstance(3, 2, 0.5, 1.0), BoundedInstance(10, 20, 0.3, 1.0),
                              BoundedInstance(50, 100, 1.0, 1.0), BoundedInstance(2, 1, 0.01, 1.0),
                              BoundedInstance(25, 5, 0.1, 2.0)]):
        exact = exact_bernoulli_expected_max(inst)
        est = estimate_expected_max(BernoulliWorst(inst.sigma, inst.B, inst.p), inst.n, reps,
                                    rng.child(k), workers=workers)
        z = (est.mean - exact) / est.std_error if est.std_error > 0 else (0.0 if est.mean == exact else math.inf)
        rows.append(VerifyRow("sandwich-inf", "Monte Carlo vs exact oracle (z-score)", _inst_label(inst),
                              z, 4.0, abs(z) <= 4.0))
    return rows


# ---------------------------------------------------------------------------
# finite-q tails

def tail_specs() -> list[tuple]:
    """``(spec, truncation level K, q)`` with moments computed from the spec itself."""
    return [
        (TwoPoint(1.0, 3.0), 3.0, 3.0),
        (TwoPoint(0.5, 4.0), 4.0, 2.5),
        (ProductH(3.0, 0.5, 1.0, 1, truncation=8.0), 8.0, 3.0),
        (ProductH(4.0, 0.5, 1.0, 1, truncation=5.0), 5.0, 4.0),
    ]


def suite_tails_q(reps: int = 100_000, seed: int = 0, workers: int = 1, n: int = 20) -> list[VerifyRow]:
    rows = []
    rng = RngStream(seed, 2)
    k = 0
    for spec, K, q in tail_specs():
        sigma = math.sqrt(spec.variance())
        B = spec.envelope_moment(q) ** (1.0 / q)
        inst = MomentInstance(n, 1, sigma, B, q)
        for z in TAIL_Z:
            for name, fn in (("v1", fuk_nagaev_threshold_v1), ("v2", fuk_nagaev_threshold_v2)):
                thr = fn(TailQuery(z, K), inst)
                est = empirical_tail(spec, n, thr, reps, rng.child(k), workers=workers)
                k += 1
                limit = 1.0 / z + 3.0 * math.sqrt((1.0 / z) * (1.0 - 1.0 / z) / reps)
                case = f"{type(spec).__name__} q={q:g} sigma={sigma:.6g} B={B:.6g} K={K:g} z={z:g}"
                rows.append(VerifyRow("tails-q", f"tail frequency at threshold {name}", case,
                                      est.frequency, limit, est.frequency <= limit))
    return rows


# ---------------------------------------------------------------------------
# q monotonicity and limits

def monotonicity_grid(count: int = 20) -> list[MomentInstance]:
    """Instances with ``log(2p)/n <= 1`` in the second case even at ``q = inf``."""
    gen = np.random.default_rng(5005)
    out = []
    while len(out) < count:
        n = int(round(10 ** gen.uniform(0.5, 4)))
        p = int(round(10 ** gen.uniform(0, 6)))
        sigma = float(10 ** gen.uniform(-3, 0))
        inst = MomentInstance(n, p, sigma, 1.0, math.inf)
        if inst.y <= 1.0 and math.log(inst.y / sigma ** 2) > 1.0:
            out.append(inst)
    return out


def comparison_grid(count: int = 50) -> list[MomentInstance]:
    """Second-case instances (at every q) for the comparison with the reference rate."""
    gen = np.random.default_rng(9009)
    out = []
    while len(out) < count:
        n = int(round(10 ** gen.uniform(1, 4)))
        p = int(round(10 ** gen.uniform(1, 6)))
        sigma = float(10 ** gen.uniform(-3, -1))
        inst = MomentInstance(n, p, sigma, 1.0, math.inf)
        if math.log(inst.y / sigma ** 2) > 1.0:
            out.append(inst)
    return out


def suite_monotonicity(reps: int = 0, seed: int = 0, workers: int = 1) -> list[VerifyRow]:
    rows = []
    for inst in monotonicity_grid():
        rep = monotonicity_audit(inst, list(Q_GRID))
        label = _inst_label(inst)
        rows.append(VerifyRow("monotonicity", "max adjacent ratio U*(q')/U*(q)", label,
                              max(rep.ratios), 4.0, rep.ok))
        gap = abs(u_star(inst.with_q(4096.0)) / limit_expression(inst) - 1.0)
        rows.append(VerifyRow("monotonicity", "|U*(4096)/limit - 1|", label, gap, 0.05, gap <= 0.05))
    first, last, worst = [], [], 0.0
    for inst in comparison_grid():
        ratios = []
        for q in Q_GRID:
            iq = inst.with_q(q)
            assert moment_case(iq) == 2
            ratios.append(u_star(iq) / baseline_bound(iq))
        worst = max(worst, max(ratios))
        first.append(ratios[0])
        last.append(ratios[-1])
        rows.append(VerifyRow("monotonicity", "U*/reference rate, max over q", _inst_label(inst),
                              max(ratios), 5.0, max(ratios) <= 5.0))
    m_first, m_last = float(np.mean(first)), float(np.mean(last))
    decreasing = sum(b < a for a, b in zip(first, last))
    rows.append(VerifyRow("monotonicity", "per-instance ratio decrease count (recorded)",
                          f"{len(first)} instances", float(decreasing), float(len(first)), True))
    rows.append(VerifyRow("monotonicity", "grid-mean ratio at q=256 below q=2.5",
                          f"mean at q=2.5 is {m_first:.6g}", m_last, m_first, m_last < m_first))
    return rows


# ---------------------------------------------------------------------------
# envelope solver, heavy-tail sampler, M_q

def envelope_grid(count: int = 100) -> list[tuple[float, float, float, int]]:
    gen = np.random.default_rng(7007)
    out = []
    for _ in range(count):
        sigma = float(10 ** gen.uniform(-1, 1))
        B = sigma * float(10 ** gen.uniform(0, 1))
        q = float(10 ** gen.uniform(math.log10(2.2), math.log10(20)))
        p = int(round(10 ** gen.uniform(0, 4)))
        out.append((sigma, B, q, p))
    return out


def dkw_statistic(draws: np.ndarray, cdf: Callable) -> float:
    x = np.sort(draws)
    F = np.asarray(cdf(x))
    N = x.size
    i = np.arange(1, N + 1)
    return float(max(np.max(i / N - F), np.max(F - (i - 1) / N)))


def suite_mq(reps: int = 20_000, seed: int = 0, workers: int = 1) -> list[VerifyRow]:
    rows = []
    for sigma, B, q, p in envelope_grid():
        K = solve_envelope_K(sigma, B, q, p)
        res = abs(envelope_residual(K, sigma, B, q, p))
        label = f"sigma={sigma:.6g} B={B:.6g} q={q:.6g} p={p}"
        rows.append(VerifyRow("mq", "envelope residual / B^q", label, res / B ** q, 1e-10,
                              res <= 1e-10 * B ** q))
        floor = B / (1 + 2 * q) ** (1 / q)
        # equality is attained up to rounding when (y^2/(1+y^2))^p underflows
        rows.append(VerifyRow("mq", "K >= B/(1+2q)^(1/q)", label, K / floor, 1.0,
                              K >= floor * (1 - 1e-12)))
        y_star = math.sqrt(5) * K / sigma
        ys = np.geomspace(1.0, 2.0 * y_star, 50)
        F = [math.log(envelope_F(y, q, p)) for y in ys]
        steps = min(b - a for a, b in zip(F, F[1:]))
        rows.append(VerifyRow("mq", "log F strictly increasing on 50 y-values", label, steps, 0.0, steps > 0))
    rng = RngStream(seed, 3)
    draws_n = 100_000
    eps = math.sqrt(math.log(2 / DKW_ALPHA) / (2 * draws_n))
    for k, q in enumerate((2.0, 3.0, 5.0, 10.0)):
        g = sample_heavy_tail_g(q, rng.child(k).generator(), draws_n)
        d = dkw_statistic(g, lambda x: heavy_tail_cdf(x, q))
        rows.append(VerifyRow("mq", "DKW sup |F_N - F| for G(q)", f"q={q:g} N={draws_n}", d, eps, d <= eps))
    specs = []
    for q, sigma, B, p in ((2.5, 1.0, 1.5, 10), (3.0, 1.0, 3.0, 5), (5.0, 1.0, 2.0, 20)):
        K = solve_envelope_K(sigma, B, q, p)
        specs.append((ProductH(q, sigma / math.sqrt(5), K, p), q, B))
    specs.append((TwoPoint(1.0, 3.0), 2.0, TwoPoint(1.0, 3.0).envelope_moment(2.0) ** 0.5))
    k = 10
    for spec, q, B in specs:
        for n in (10, 100, 1000):
            rep = mq_check(spec, n, q, B, reps, rng.child(k), workers=workers)
            k += 1
            case = f"{type(spec).__name__} q={q:g} B={B:.6g} n={n} ({rep.method})"
            rows.append(VerifyRow("mq", "E max norm <= n^(1/q) B + 4 SE", case,
                                  rep.estimate, rep.upper_bound + 4 * rep.std_error, rep.upper_ok))
            if rep.empirical_c is not None:
                rows.append(VerifyRow("mq", "implied heavy-tail lower constant (recorded)", case,
                                      rep.empirical_c, 0.0, rep.empirical_c > 0))
    return rows


SUITES: dict[str, Callable[..., list[VerifyRow]]] = {
    "lemmas": suite_lemmas,
    "sandwich-inf": suite_sandwich_inf,
    "tails-q": suite_tails_q,
    "monotonicity": suite_monotonicity,
    "mq": suite_mq,
}

DEFAULT_REPS = {"lemmas": 0, "sandwich-inf": 20_000, "tails-q": 100_000, "monotonicity": 0, "mq": 20_000}


def run_suite(name: str, reps: int | None = None, seed: int = 0, workers: int = 1) -> list[VerifyRow]:
    if name not in SUITES:
        raise KeyError(name)
    reps = DEFAULT_REPS[name] if reps is None else reps
    return SUITES[name](reps=reps, seed=seed, workers=workers)

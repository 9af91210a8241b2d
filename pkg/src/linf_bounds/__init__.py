"""Bounds on E||(1/n) sum_i X_i||_inf under variance and envelope-moment constraints."""
from ._numerics import Bracket, ConvergenceError, DomainError, Tolerances
from .bounded import (
    BoundedInstance,
    InfBoundResult,
    Regime,
    bennett_integral,
    bennett_tail,
    correction_term,
    e_inf_bounds,
    e_inf_lower,
    e_inf_upper,
    f_benn,
    regime,
    sandwich_interval,
    threshold_A,
)
from .distributions import (
    BernoulliWorst,
    DependentBernoulli,
    HeavyTailG,
    ProductH,
    RngStream,
    TwoPoint,
    heavy_tail_cdf,
    quantile_heavy_tail_g,
    sample_bernoulli_worst,
    sample_heavy_tail_g,
    sample_product_h,
    solve_envelope_K,
    threshold_T,
)
from .qmoment import (
    MomentInstance,
    TailQuery,
    baseline_bound,
    fuk_nagaev_threshold_v1,
    fuk_nagaev_threshold_v2,
    limit_expression,
    lq_bennett_upper,
    monotonicity_audit,
    optimal_truncation_K,
    u_bound,
    u_star,
)
from .simulation import (
    EstimateResult,
    SandwichRow,
    empirical_tail,
    estimate_expected_max,
    exact_bernoulli_expected_max,
    independence_reduction_check,
    mq_check,
    sandwich_report,
)
from .special import iterated_log_solve, lambert_w, psi, psi_inv, psi_prime_at_inv

__version__ = "0.1.0"

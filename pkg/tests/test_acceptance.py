"""Acceptance checks, one test per criterion.

Each test records a single ``PASS``/``FAIL`` line and then asserts; the
lines are printed in the terminal summary (see ``conftest.py``). Running
this file as a script prints all ten lines directly.
"""
import sys
from functools import lru_cache

from linf_bounds.cli import main
from linf_bounds.verify import run_suite

SEED = 0
#: lines collected for the terminal summary
RESULTS = []


@lru_cache(maxsize=None)
def suite(name):
    return tuple(run_suite(name, seed=SEED, workers=4))


def rows_for(name, check):
    return [r for r in suite(name) if r.check == check]


def report(number, title, ok, detail=""):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    if __name__ == "__main__":
        print(line)
    return ok


def check_1():
    rows = suite("lemmas")
    bad = [r.check for r in rows if not r.ok]
    return report(1, "special-function inequalities on 500-point log grids", rows and not bad,
                  f"{len(rows)} inequalities, failing: {bad or 'none'}")


def check_2():
    rows = rows_for("sandwich-inf", "bennett integral sandwich")
    bad = sum(not r.ok for r in rows)
    return report(2, "Bennett integral inside the closed-form sandwich", len(rows) == 200 and bad == 0,
                  f"{len(rows)} instances, {bad} outside")


def check_3():
    counts = {}
    ok = True
    for check, want in (("exact oracle in CaseA bracket", 100), ("exact oracle in CaseB bracket", 30),
                        ("exact oracle in AGreaterThanB bracket", 10)):
        rows = rows_for("sandwich-inf", check)
        counts[check.split()[-2]] = f"{sum(r.ok for r in rows)}/{len(rows)}"
        ok = ok and len(rows) == want and all(r.ok for r in rows)
    return report(3, "exact Bernoulli oracle inside the regime brackets", ok,
                  ", ".join(f"{k} {v}" for k, v in counts.items()))


def check_4():
    v1 = rows_for("tails-q", "tail frequency at threshold v1")
    v2 = rows_for("tails-q", "tail frequency at threshold v2")
    rows = v1 + v2
    ok = len(v1) == len(v2) == 12 and all(r.ok for r in rows)
    worst = max(r.value / r.reference for r in rows)
    return report(4, "tail frequency <= 1/z + 3 SE at both thresholds (10^5 reps)", ok,
                  f"{len(rows)} rows, max frequency/limit {worst:.3f}")


def check_5():
    rows = rows_for("monotonicity", "max adjacent ratio U*(q')/U*(q)")
    worst = max(r.value for r in rows)
    return report(5, "adjacent q ratios of U* at most 4", len(rows) == 20 and all(r.ok for r in rows),
                  f"{len(rows)} instances, worst ratio {worst:.3f}")


def check_6():
    rows = rows_for("monotonicity", "|U*(4096)/limit - 1|")
    worst = max(r.value for r in rows)
    return report(6, "U*(4096) within 5% of the q -> inf limit", len(rows) == 20 and all(r.ok for r in rows),
                  f"max relative gap {worst:.4f}")


def check_7():
    checks = ("envelope residual / B^q", "K >= B/(1+2q)^(1/q)", "log F strictly increasing on 50 y-values")
    groups = [rows_for("mq", c) for c in checks]
    ok = all(len(g) == 100 and all(r.ok for r in g) for g in groups)
    worst = max(r.value for r in groups[0])
    return report(7, "envelope solver residual, floor and monotonicity", ok,
                  f"100-point grid, max residual/B^q {worst:.2e}")


def check_8():
    dkw = rows_for("mq", "DKW sup |F_N - F| for G(q)")
    mq = rows_for("mq", "E max norm <= n^(1/q) B + 4 SE")
    ok = len(dkw) == 4 and len(mq) == 12 and all(r.ok for r in dkw + mq)
    return report(8, "heavy-tail sampler DKW test and the n^(1/q) B upper check", ok,
                  f"DKW {sum(r.ok for r in dkw)}/4, upper {sum(r.ok for r in mq)}/{len(mq)}")


def check_9():
    ratio = rows_for("monotonicity", "U*/reference rate, max over q")
    trend = rows_for("monotonicity", "grid-mean ratio at q=256 below q=2.5")
    count = rows_for("monotonicity", "per-instance ratio decrease count (recorded)")
    ok = len(ratio) == 50 and all(r.ok for r in ratio) and trend and all(r.ok for r in trend)
    detail = f"max ratio {max(r.value for r in ratio):.3f}"
    if count:
        detail += f", per-instance decrease {int(count[0].value)}/{int(count[0].reference)}"
    return report(9, "U* below 5x the reference rate, ratio falls with q", ok, detail)


# reduced replication counts keep the three-way comparison fast
DETERMINISM_REPS = {"lemmas": None, "sandwich-inf": 2000, "tails-q": 20_000, "monotonicity": None, "mq": 5000}


def check_10(tmp_dir):
    mismatched = []
    for name, reps in DETERMINISM_REPS.items():
        outputs = []
        for workers in (1, 4, 8):
            path = tmp_dir / f"{name}-{workers}.csv"
            argv = ["verify", "--suite", name, "--seed", "11", "--workers", str(workers),
                    "--format", "csv", "--output", str(path)]
            if reps is not None:
                argv += ["--reps", str(reps)]
            main(argv)
            outputs.append(path.read_bytes())
        if not (outputs[0] == outputs[1] == outputs[2]):
            mismatched.append(name)
    return report(10, "verify reports byte-identical for 1, 4 and 8 workers", not mismatched,
                  f"suites differing: {mismatched or 'none'}")


class TestAcceptance:
    def test_criterion_01_lemma_audit(self):
        assert check_1()

    def test_criterion_02_bennett_sandwich(self):
        assert check_2()

    def test_criterion_03_exact_oracle_sandwich(self):
        assert check_3()

    def test_criterion_04_tail_thresholds(self):
        assert check_4()

    def test_criterion_05_q_monotonicity(self):
        assert check_5()

    def test_criterion_06_q_limit(self):
        assert check_6()

    def test_criterion_07_envelope_solver(self):
        assert check_7()

    def test_criterion_08_heavy_tail(self):
        assert check_8()

    def test_criterion_09_reference_comparison(self):
        assert check_9()

    def test_criterion_10_determinism(self, tmp_path):
        assert check_10(tmp_path)


if __name__ == "__main__":
    import pathlib
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        results = [check() for check in (check_1, check_2, check_3, check_4, check_5, check_6, check_7,
                                         check_8, check_9)]
        results.append(check_10(pathlib.Path(d)))
    sys.exit(0 if all(results) else 1)

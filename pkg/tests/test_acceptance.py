"""Acceptance battery: every quantitative claim at its frozen tolerance.

Each criterion prints one PASS/FAIL line (run with ``pytest -s`` to see them).
The check engines live in heavycover.verification and also back the
``heavycover verify`` CLI subcommand; the counts and tolerances here are the
frozen acceptance values, not tunables.
"""

from fractions import Fraction

from heavycover.verification import (
    check_base_cut_identity,
    check_continuity,
    check_determinism,
    check_dual_bound,
    check_exposure_semantics,
    check_oracle_equivalence,
    check_selection_bound,
    check_tangent_tightness,
    check_transversal,
)

SEED = 42

# Small-n slack: bounds are asserted as (constant - 3/n); the numerator 3 was
# calibrated against exhaustive runs at n <= 12 before these fixtures froze.
SLACK_NUMERATOR = 3


def _report(num, check):
    status = "PASS" if check["passed"] else "FAIL"
    print(f"\n[criterion {num}] {status} {check['id']}: {check['description']}")
    for failure in check["failures"]:
        print(f"    {failure}")
    assert check["passed"], f"criterion {num} failed: {check['failures']}"


def test_criterion_1_oracle_equivalence_exact():
    # >= 200 planar sets (n <= 30), >= 200 line families (n <= 20),
    # >= 10^4 generic surround triples; zero mismatches allowed
    check = check_oracle_equivalence(SEED, planar_sets=200, dual_sets=200,
                                     triples=10_000)
    assert check["details"]["planar_sets"] == 200
    assert check["details"]["dual_sets"] == 200
    assert check["details"]["surround_triples"] == 10_000
    _report(1, check)


def test_criterion_2_selection_bound_with_slack():
    # 50 seeded general-position sets, n cycling {10, 15, 20}:
    # max depth fraction >= 2/9 - 3/n in every trial
    check = check_selection_bound(SEED, trials=50, sizes=(10, 15, 20))
    assert check["details"]["slack_numerator"] == SLACK_NUMERATOR
    _report(2, check)


def test_criterion_3_dual_bound_with_slack():
    # 50 seeded line families, n cycling {8, 10, 12}:
    # max dual depth fraction >= 2/9 - 3/n in every trial
    check = check_dual_bound(SEED, trials=50, sizes=(8, 10, 12))
    _report(3, check)


def test_criterion_4_tangent_tightness():
    # tangent families n in {9, 12, 18}: strict max <= floor(n^3/27), and the
    # max fraction approaches 2/9 monotonically across the three sizes
    check = check_tangent_tightness(sizes=(9, 12, 18))
    rows = check["details"]["rows"]
    assert [r["n"] for r in rows] == [9, 12, 18]
    for r in rows:
        assert r["max_count"] <= r["product_bound_floor"]
    dist = [Fraction(r["distance_to_2_9"]) for r in rows]
    assert dist[0] >= dist[1] >= dist[2]
    _report(4, check)


def test_criterion_5_base_cut_identity():
    # >= 100 seeded (q, family) instances with n <= 12, exact equalities
    check = check_base_cut_identity(SEED, trials=100, max_n=12)
    _report(5, check)


def test_criterion_6_exposure_semantics():
    # >= 50 seeded instances, 3 sampled exact directions per arc, exact match
    check = check_exposure_semantics(SEED, trials=50)
    _report(6, check)


def test_criterion_7_transversal():
    # 50 seeded pairs (n in {6, 9, 12}) meet the median floor
    # floor((n-1)/2) * ceil((n-1)/2) / C(n, 2); full-1/2 frequency reported;
    # d=3, m=1 fractions match an independent enumeration on 10 instances
    check = check_transversal(SEED, trials=50, sizes=(6, 9, 12), d3_trials=10)
    print(f"    full 1/2 bound met in {check['details']['full_half_met']} of "
          f"{check['details']['per_set_reports']} per-set reports")
    _report(7, check)


def test_criterion_8_continuity():
    # 10 seeded paths (n = 10, k = 101 samples): witness with
    # tau = 2/9 - 3/10 present at every non-degenerate sample; the crafted
    # fixture path must produce at least one flagged argmax jump
    check = check_continuity(SEED, paths=10, n=10, samples=101)
    assert check["details"]["tau"] == str(Fraction(2, 9) - Fraction(3, 10))
    assert check["details"]["fixture_jumps"] >= 1
    _report(8, check)


def test_criterion_9_determinism():
    # the battery serializes byte-identically across reruns and thread counts
    check = check_determinism(SEED, trials=2, samples=11)
    _report(9, check)

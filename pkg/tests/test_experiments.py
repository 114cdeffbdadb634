import json
from fractions import Fraction

import pytest

from conftest import system
from oracles import brute_count, finite_difference_fit
from numsys.errors import GoldenMismatch, NotExactlyPolynomial, UnsupportedGrowthClass
from numsys.experiments import (
    ANOMALY,
    CONSISTENT,
    CONVERGING,
    INCONCLUSIVE,
    UNSUPPORTED,
    fit_count_polynomial,
    load_table1,
    multiplication_experiment,
    table1_experiment,
    convergence_experiment,
)
from numsys import experiments
from numsys.numeration import make_system
from numsys.regex import regex_dfa


def ab_length(x):
    """Length of the representation of x in a*b*, from the closed form v_n = (n+1)(n+2)/2."""
    n = 0
    while (n + 1) * (n + 2) // 2 <= x:
        n += 1
    return n


def test_table1_matches_golden_rows():
    report = table1_experiment()
    assert report.verdict == CONSISTENT
    golden = {r["n"]: r for r in load_table1()}
    assert len(report.rows) == 21
    for row in report.rows:
        g = golden[row["n"]]
        assert (row["two_v_n"], row["k"], row["w_len"]) == (g["two_v_n"], g["k"], g["w_len"])
    assert report.rows[9]["two_v_n"] == 3962 and report.rows[9]["word"] == "bbbbbaabaaa"


def test_table1_words_are_consistent():
    comp = system("not-a*b*")
    for row in table1_experiment(n_max=12).rows:
        w = row["word"]
        assert comp.value(w) == row["two_v_n"]
        assert w.startswith("b" * row["k"]) and w[row["k"]] == "a"
        assert len(w) == row["k"] + 1 + row["w_len"]


def test_table1_mismatch_raises(monkeypatch):
    rows = load_table1()
    rows[3] = dict(rows[3], k=rows[3]["k"] + 1)
    monkeypatch.setattr(experiments, "load_table1", lambda: rows)
    with pytest.raises(GoldenMismatch) as info:
        table1_experiment()
    assert info.value.report.verdict == ANOMALY
    assert info.value.row["n"] == 4


@pytest.mark.parametrize("pattern", ["a*b*", "a*b*a*", "a*b*c*", "a*(b|c)"])
def test_count_polynomial_fit(pattern):
    ns = make_system(regex_dfa(pattern, "abc"))
    fit = fit_count_polynomial(ns)
    u = [brute_count(ns.dfa, ns.initial, n) for n in range(9)]
    assert list(fit.a) == finite_difference_fit(u, fit.degree)
    for n in range(1, 9):
        assert fit.rho(n) == u[n]
    for n in range(0, 30):
        assert fit.P(n + 1) - fit.P(n) == fit.rho(n)
        assert fit.cumulative(n) == ns.v(ns.initial, n)
    assert fit.P(0) == 0


def test_a_star_b_star_fit():
    fit = fit_count_polynomial(system("a*b*"))
    assert fit.a == (1, 1)
    assert fit.b == (0, Fraction(1, 2), Fraction(1, 2))


def test_fit_errors():
    with pytest.raises(UnsupportedGrowthClass):
        fit_count_polynomial(system("no-aa"))
    with pytest.raises(NotExactlyPolynomial):
        fit_count_polynomial(system("even-a*b*"))


def test_perfect_power_affine_law():
    report = multiplication_experiment(system("a*b*"), 4)
    assert report.verdict == CONSISTENT
    law = report.summary["affine_law"]
    assert law["beta"] == 2 and law["C"] is not None
    for row in report.rows:
        assert row["f"] == ab_length(row["lambda_x"])
    # closed form: (2n+1)(2n+2)/2 > 2n(n+1) >= 2n(2n+1)/2, so the length is exactly 2n
    assert law["C"] == 0
    assert all(row["f"] == 2 * row["n"] + law["C"] for row in report.rows if row["n"] >= 50)


@pytest.mark.parametrize("lam", [2, 3, 5])
def test_non_powers_are_not_progressions(lam):
    report = multiplication_experiment(system("a*b*"), lam)
    assert report.verdicts["periodicity"] == "NotAPOnWindow"
    assert report.verdict == CONSISTENT


def test_eight_is_not_a_square_so_no_affine_law():
    report = multiplication_experiment(system("a*b*"), 8)
    assert report.summary["perfect_power_base"] is None


def test_cumulative_count_path():
    report = multiplication_experiment(system("even-a*b*"), 2)
    assert report.summary["path"] == "cumulative-counts"
    assert report.verdict in (CONSISTENT, INCONCLUSIVE)


@pytest.mark.parametrize("lam", [2, 4, 8])
def test_complement_of_polynomial(lam):
    report = multiplication_experiment(system("not-a*b*"), lam, n_max=120)
    assert report.summary["path"] == "complement-of-polynomial"
    assert report.verdict == CONSISTENT


def test_complement_with_non_power_is_inconclusive():
    report = multiplication_experiment(system("not-a*b*"), 3, n_max=40)
    assert report.verdict == INCONCLUSIVE


def test_exponential_language_is_unsupported():
    report = multiplication_experiment(system("no-aa"), 2, n_max=20)
    assert report.verdict == UNSUPPORTED
    assert len(report.rows) == 21


def test_convergence_a_star_b_star():
    report = convergence_experiment(system("a*b*"), n_max=2000)
    assert report.verdict == CONVERGING
    assert abs(report.summary["limit_estimate"] - 0.5) < 1e-3
    for row in report.rows[:50]:
        n = row["n"]
        assert row["v_ratio"] == Fraction((n + 1) * (n + 2), 2 * n * n)


def test_convergence_even_language_oscillates_in_density():
    report = convergence_experiment(system("even-a*b*"), n_max=2000)
    assert abs(report.summary["limit_estimate"] - 0.25) < 1e-3
    low, high = report.summary["u_ratio_last_quarter"]
    assert low == 0 and high >= 0.9


def test_convergence_rejects_exponential():
    with pytest.raises(UnsupportedGrowthClass):
        convergence_experiment(system("all-ab"))


def test_report_json_is_deterministic():
    a = multiplication_experiment(system("a*b*"), 4, n_max=60).dumps()
    b = multiplication_experiment(system("a*b*"), 4, n_max=60).dumps()
    assert a == b
    doc = json.loads(a)
    assert doc["summary"]["count_polynomial"]["b"] == ["0", "1/2", "1/2"]

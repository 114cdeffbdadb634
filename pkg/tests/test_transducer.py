import dataclasses

import pytest
from hypothesis import given, settings

from conftest import random_dfas, system
from oracles import accepted_upto
from numsys.errors import (
    EmptyLanguage,
    FiniteLanguage,
    NoSuitableAnchor,
    NotInLanguage,
    NotPositional,
    RemainderClosureOverflow,
)
from numsys.numeration import make_system, value_indices
from numsys.positional import pi_U, rho_U
from numsys.regex import regex_dfa
from numsys.transducer import (
    apply_indices,
    apply_transducer,
    beta_table,
    build_transducer,
    convert_representation,
    lambda_table,
    solve_decomposition,
    verify_decomposition,
)

POSITIONAL = ["a*b*", "no-aa", "a+(a|b)*", "all-ab"]


def check_identity(ns, dec, t, max_len):
    seen = {}
    for w in accepted_upto(ns.dfa, max_len):
        g = apply_indices(t, w)
        assert len(g) == len(w)
        assert set(g) <= t.digits
        assert pi_U(dec.U, g) == dec.alpha * value_indices(ns, w), w
        assert g not in seen.get(len(w), set())
        seen.setdefault(len(w), set()).add(g)


@pytest.mark.parametrize("name", POSITIONAL)
def test_identity_on_examples(name):
    ns = system(name)
    dec = solve_decomposition(ns)
    assert verify_decomposition(ns, dec)
    t = build_transducer(ns, dec)
    check_identity(ns, dec, t, 10 if len(ns.alphabet) == 2 else 7)


def test_no_aa_decomposition():
    ns = system("no-aa")
    dec = solve_decomposition(ns)
    assert (dec.alpha, dec.k) == (1, 2)
    s, t_state = ns.initial, ns.dfa.delta[ns.initial][0]
    dead = next(iter(ns.dfa.dead_states()))
    assert dec.e[s] == (0, 1)
    assert dec.e[t_state] == (2, 0)
    assert dec.e[dead] == (0, 0)
    assert dec.U.terms[:5] == (1, 3, 8, 22, 60)


def test_no_aa_lambda_table_live_rows():
    ns = system("no-aa")
    dec = solve_decomposition(ns)
    lam = lambda_table(ns, dec)
    s, t_state = ns.initial, ns.dfa.delta[ns.initial][0]
    assert lam[s] == [(0, 1), (2, 1), (2, 2)]
    assert lam[t_state] == [(0, 1), (0, 1), (0, 2)]


def test_beta_rows_count_letters():
    ns = system("no-aa")
    for q, rows in enumerate(beta_table(ns)):
        for sigma, row in enumerate(rows):
            # sigma letters below, plus the marker on the initial state
            assert sum(row) == sigma + 1


def test_perturbed_decomposition_fails_at_zero():
    ns = system("no-aa")
    dec = solve_decomposition(ns)
    t_state = ns.dfa.delta[ns.initial][0]
    e = [list(row) for row in dec.e]
    e[t_state][0] = 3
    bad = dataclasses.replace(dec, e=tuple(tuple(r) for r in e))
    report = verify_decomposition(ns, bad)
    assert not report
    assert report.first_failure == 0 and report.failing_state == t_state


def test_negative_cases():
    with pytest.raises(NoSuitableAnchor):
        solve_decomposition(system("J"))
    with pytest.raises(NoSuitableAnchor):
        solve_decomposition(system("not-a*b*"))
    with pytest.raises(NotPositional):
        solve_decomposition(make_system(regex_dfa("a*", "ab")))


def test_canonical_conversion():
    ns = system("no-aa")
    dec = solve_decomposition(ns)
    t = build_transducer(ns, dec)
    for w in accepted_upto(ns.dfa, 5):
        word = ns.alphabet.decode(w)
        canon = convert_representation(ns, dec, t, word)
        assert canon == rho_U(dec.U, dec.alpha * value_indices(ns, w))


def test_rejects_words_outside_language():
    ns = system("no-aa")
    t = build_transducer(ns, solve_decomposition(ns))
    with pytest.raises(NotInLanguage):
        apply_transducer(t, "baab")
    with pytest.raises(NotInLanguage):
        apply_transducer(t, "aa")


def test_closure_bound_enforced():
    ns = system("no-aa")
    with pytest.raises(RemainderClosureOverflow):
        build_transducer(ns, solve_decomposition(ns), closure_bound=1)


def test_transducer_json():
    ns = system("a*b*")
    t = build_transducer(ns, solve_decomposition(ns))
    doc = t.to_json()
    assert doc["alpha"] == t.alpha and doc["k"] == t.k


@settings(max_examples=40)
@given(random_dfas(max_states=4))
def test_identity_on_random_languages(dfa):
    try:
        ns = make_system(dfa)
        dec = solve_decomposition(ns)
        t = build_transducer(ns, dec, closure_bound=20_000)
    except (EmptyLanguage, FiniteLanguage, NoSuitableAnchor, NotPositional, RemainderClosureOverflow):
        return
    check_identity(ns, dec, t, 8)

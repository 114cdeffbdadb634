import math
import re

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_dfas
from oracles import accepted_upto, brute_count, words_upto
from numsys import automata
from numsys.automata import (
    CountTable,
    OrderedAlphabet,
    OrderedDfa,
    automaton_morphism,
    classify_growth,
    common_recurrence,
    complement,
    difference,
    equivalent,
    intersect,
    is_empty,
    is_subset,
    minimize,
    trim,
    union,
)
from numsys.errors import EmptyLanguage, MorphismConflict, NotASublanguage
from numsys.languages import EXAMPLES, a_star_b_star, no_aa
from numsys.regex import regex_dfa

MAX_LEN = 6


def language(dfa, max_len=MAX_LEN):
    return set(accepted_upto(dfa, max_len))


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        OrderedAlphabet(("a", "a"))


def test_alphabet_encode_decode_round_trip():
    ab = OrderedAlphabet(("a", "b", "c"))
    assert ab.encode("cab") == (2, 0, 1)
    assert ab.decode((2, 0, 1)) == "cab"
    assert ab.rank("b") == 1


def test_build_fills_partial_table_with_dead_state():
    dfa = OrderedDfa.build("ab", [[0, None]], 0, [0])
    assert dfa.n_states == 2
    assert dfa.accepts("aaa") and not dfa.accepts("ab")
    assert dfa.dead_states() == frozenset({1})


def test_malformed_tables_rejected():
    with pytest.raises(ValueError):
        OrderedDfa(OrderedAlphabet(("a",)), ((1,),), 0, frozenset())
    with pytest.raises(ValueError):
        OrderedDfa(OrderedAlphabet(("a", "b")), ((0,),), 0, frozenset())


@given(random_dfas(), random_dfas())
def test_boolean_operations_match_brute_force(x, y):
    lx, ly = language(x), language(y)
    assert language(intersect(x, y)) == lx & ly
    assert language(union(x, y)) == lx | ly
    assert language(difference(x, y)) == lx - ly
    assert language(complement(x)) == set(words_upto(2, MAX_LEN)) - lx


@given(random_dfas(max_states=6))
def test_minimize_preserves_language_and_is_idempotent(dfa):
    m = minimize(dfa)
    assert language(m) == language(dfa)
    assert m.n_states <= dfa.n_states
    assert minimize(m) == m
    assert equivalent(m, dfa)


@given(random_dfas(max_states=6))
def test_trim_preserves_language(dfa):
    if is_empty(dfa):
        with pytest.raises(EmptyLanguage):
            trim(dfa)
        return
    t = trim(dfa)
    assert language(t) == language(dfa)
    assert len(t.dead_states()) <= 1


def test_minimal_sizes_of_examples():
    assert minimize(a_star_b_star()).n_states == 3
    # s, t (after one a) and the dead state
    assert minimize(no_aa()).n_states == 3


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_counts_match_brute_force(name):
    dfa = EXAMPLES[name]()
    table = CountTable(dfa)
    max_len = 12 if len(dfa.alphabet) == 2 else 8
    for state in range(dfa.n_states):
        running = 0
        for n in range(max_len + 1):
            exact = brute_count(dfa, state, n)
            running += exact
            assert table.u(state, n) == exact
            assert table.v(state, n) == running
        assert table.v(state, -1) == 0


def test_count_helpers_validate_length():
    table = CountTable(a_star_b_star())
    with pytest.raises(ValueError):
        automata.count_words(table, 0, -1)
    assert automata.cumulative_count(table, 0, -1) == 0
    with pytest.raises(ValueError):
        automata.cumulative_count(table, 0, -2)


@pytest.mark.parametrize(
    "pattern,kind,degree",
    [
        ("a*b*", "polynomial", 1),
        ("a*", "polynomial", 0),
        ("a*b*a*", "polynomial", 2),
        ("ab", "polynomial", 0),
        ("(a|b)*", "exponential", None),
        ("a+(a|b)*", "exponential", None),
        ("(ab)*", "polynomial", 0),
    ],
)
def test_growth_classification(pattern, kind, degree):
    g = classify_growth(regex_dfa(pattern, "ab"))
    assert g.kind == kind
    assert g.degree == degree


def test_finite_language_flagged():
    g = classify_growth(regex_dfa("a|ab|bb", "ab"))
    assert g.finite and g.is_polynomial


@pytest.mark.parametrize("pattern", ["a*b*", "a*b*a*", "(aa)*b*", "a*"])
def test_polynomial_degree_matches_counts(pattern):
    dfa = regex_dfa(pattern, "ab")
    g = classify_growth(dfa)
    table = CountTable(dfa)
    # doubling n multiplies u_n by about 2^degree
    ratio = table.u(dfa.initial, 400) / table.u(dfa.initial, 200)
    assert abs(math.log2(ratio) - g.degree) < 0.05


def test_morphism_from_sublanguage():
    k = regex_dfa("a*", "ab")
    l_dfa = a_star_b_star()
    h = automaton_morphism(k, l_dfa)
    assert h(k.initial) == l_dfa.initial
    for q in k.live_states():
        assert q in h.map


def test_morphism_rejects_non_sublanguage():
    with pytest.raises(NotASublanguage):
        automaton_morphism(regex_dfa("(a|b)*", "ab"), a_star_b_star())


def test_morphism_conflict_for_b_star_in_a_star_b_star():
    with pytest.raises(MorphismConflict):
        automaton_morphism(regex_dfa("b*", "ab"), a_star_b_star())


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_common_recurrence_from_charpoly(name):
    dfa = minimize(EXAMPLES[name]())
    d = common_recurrence(dfa)
    live = sorted(dfa.live_states())
    mat = sympy.Matrix(automata.transition_count_matrix(dfa, live))
    x = sympy.Symbol("x")
    expected = sympy.Poly(mat.charpoly(x).as_expr(), x).all_coeffs()
    assert [1] + [-c for c in d] == [int(c) for c in expected]
    table = CountTable(dfa)
    m = len(d)
    for q in range(dfa.n_states):
        for n in range(20):
            assert table.u(q, n + m) == sum(d[i] * table.u(q, n + m - 1 - i) for i in range(m))


@pytest.mark.parametrize("pattern", ["a*b*", "(a|b)*bb(a|b)*", "a(ab|b)*a?", "()|a+b?", "(a|b)(a|b)*c?"])
def test_regex_matches_python_re(pattern):
    letters = "abc"
    dfa = regex_dfa(pattern, letters)
    py = re.compile(pattern)
    for w in words_upto(3, 5):
        word = "".join(letters[i] for i in w)
        assert dfa.accepts(word) == bool(py.fullmatch(word)), word


def test_regex_rejects_garbage():
    with pytest.raises(ValueError):
        regex_dfa("a)b", "ab")


@given(random_dfas())
def test_json_round_trip(dfa):
    assert OrderedDfa.from_json(dfa.to_json()) == dfa


def test_file_round_trip(tmp_path):
    dfa = no_aa()
    automata.save_dfa(dfa, tmp_path / "d.json")
    assert automata.load_dfa(tmp_path / "d.json") == dfa


def test_json_state_count_mismatch():
    doc = a_star_b_star().to_json()
    doc["states"] += 1
    with pytest.raises(ValueError):
        OrderedDfa.from_json(doc)


@given(random_dfas(), random_dfas())
def test_subset_agrees_with_languages(x, y):
    inside = language(x, 8) <= language(y, 8)
    if is_subset(x, y):
        assert inside
    if not inside:
        assert not is_subset(x, y)

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import greedy_digits
from numsys.errors import HorizonExceeded, NegativeValue, NotIncreasing, ZeroTrailingCoefficient
from numsys.positional import (
    INCONCLUSIVE,
    NOT_PISOT,
    PISOT,
    DigitWord,
    PositionalSystem,
    make_positional,
    normalize,
    pi_U,
    pisot_check,
    rho_U,
)

BINARY = make_positional((2,), (1,))
FIBONACCI = make_positional((1, 1), (1, 2))
NO_AA = make_positional((2, 2), (1, 3))
SYSTEMS = {"binary": BINARY, "fibonacci": FIBONACCI, "no-aa": NO_AA, "tribonacci": make_positional((1, 1, 1), (1, 2, 4))}


def test_terms_and_digit_bounds():
    assert BINARY.terms[:6] == (1, 2, 4, 8, 16, 32) and BINARY.digit_bound == 1
    assert FIBONACCI.terms[:6] == (1, 2, 3, 5, 8, 13) and FIBONACCI.digit_bound == 1
    assert NO_AA.terms[:5] == (1, 3, 8, 22, 60) and NO_AA.digit_bound == 2
    assert make_positional((10,), (1,)).digit_bound == 9


def test_construction_errors():
    with pytest.raises(ZeroTrailingCoefficient):
        make_positional((1, 0), (1, 2))
    with pytest.raises(NotIncreasing):
        make_positional((1,), (1,))
    with pytest.raises(ValueError):
        make_positional((2,), (2,))
    with pytest.raises(ValueError):
        make_positional((1, 1), (1,))


def test_longer_initial_segment_is_kept():
    ps = make_positional((2,), (1, 3))
    assert ps.terms[:4] == (1, 3, 6, 12)


def test_known_expansions():
    assert rho_U(FIBONACCI, 0).digits == ()
    assert rho_U(NO_AA, 13).digits == (1, 1, 2)
    assert normalize(NO_AA, (0, 4)).digits == (1, 1)
    assert pi_U(BINARY, (1, 0, 1)) == 5
    assert pi_U(FIBONACCI, DigitWord((1, 0, 0))) == 3


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_greedy_soundness(name):
    ps = SYSTEMS[name]
    terms = list(ps.terms)
    for x in range(100_000):
        digits = rho_U(ps, x).digits
        assert pi_U(ps, digits) == x
        assert list(digits) == greedy_digits(terms, x)
        assert not digits or digits[0] != 0
        assert all(0 <= d <= ps.digit_bound for d in digits)
        if x % 97 == 0:
            # greedy condition: every suffix is smaller than the next term up
            n = len(digits)
            for i in range(n):
                assert pi_U(ps, digits[i:]) < ps.terms[n - i]


@given(st.sampled_from(sorted(SYSTEMS)), st.lists(st.integers(0, 9), max_size=12))
def test_normalization_idempotent(name, digits):
    ps = SYSTEMS[name]
    once = normalize(ps, digits)
    assert pi_U(ps, once) == pi_U(ps, digits)
    assert normalize(ps, once) == once


def test_normalization_handles_negative_digits():
    assert normalize(BINARY, (1, -1)).digits == (1,)
    with pytest.raises(NegativeValue):
        normalize(BINARY, (-1, 0))


def test_range_errors():
    small = make_positional((2,), (1,), horizon=4)
    assert small.terms == (1, 2, 4, 8, 16)
    with pytest.raises(HorizonExceeded):
        rho_U(small, 16)
    with pytest.raises(HorizonExceeded):
        small.U(5)
    with pytest.raises(HorizonExceeded):
        pi_U(small, (1,) * 6)
    with pytest.raises(NegativeValue):
        rho_U(small, -1)


def test_digit_word_alphabet_check():
    with pytest.raises(ValueError):
        DigitWord((0, 3), alphabet={0, 1})
    assert DigitWord((1, 0)).padded(4) == (0, 0, 1, 0)


def test_json_round_trip():
    assert PositionalSystem.from_json(NO_AA.to_json()) == NO_AA


@pytest.mark.parametrize(
    "recurrence,verdict",
    [
        ((2,), PISOT),
        ((1, 1), PISOT),
        ((1, 1, 1), PISOT),
        ((2, 2), PISOT),
        ((1, 0, 1), PISOT),
        ((3, -1), PISOT),
        ((0, 2), NOT_PISOT),
        ((-1, 0, 0, 1), NOT_PISOT),
        ((0, 1), INCONCLUSIVE),
        ((1, 2), INCONCLUSIVE),
    ],
)
def test_pisot_check(recurrence, verdict):
    report = pisot_check(recurrence)
    assert report.verdict == verdict
    assert bool(report) == (verdict == PISOT)


def test_pisot_report_details():
    report = pisot_check((1, 1))
    assert report.irreducible
    assert abs(report.dominant_root - (1 + 5**0.5) / 2) < 1e-12
    assert report.moduli[0][0] > 1 > report.moduli[1][1]
    assert pisot_check((3, -2)).irreducible is False

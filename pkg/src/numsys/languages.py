"""The running example languages, as minimal automata."""

from numsys.automata import complement, intersect, minimize
from numsys.regex import regex_dfa

AB = ("a", "b")
ABC = ("a", "b", "c")


def a_star_b_star():
    return regex_dfa("a*b*", AB)


def not_a_star_b_star():
    """``{a,b}* minus a*b*``: the words containing ``ba``."""
    return minimize(complement(a_star_b_star()))


def no_aa():
    """Words over ``a < b < c`` without the factor ``aa``."""
    return minimize(complement(regex_dfa("(a|b|c)*aa(a|b|c)*", ABC)))


def even_a_star_b_star():
    """``a*b*`` intersected with even-length words: ``2n+1`` words of length ``2n``, none of odd length."""
    return minimize(intersect(a_star_b_star(), regex_dfa("((a|b)(a|b))*", AB)))


def a_plus_any():
    return regex_dfa("a+(a|b)*", AB)


def j_language():
    return regex_dfa("a(a|b)*|(a|b)*bb(a|b)*", AB)


def all_words(letters=AB):
    return regex_dfa("(" + "|".join(letters) + ")*", letters)


EXAMPLES = {
    "a*b*": a_star_b_star,
    "not-a*b*": not_a_star_b_star,
    "no-aa": no_aa,
    "even-a*b*": even_a_star_b_star,
    "a+(a|b)*": a_plus_any,
    "J": j_language,
    "all-ab": all_words,
}

"""Brute-force oracles. Nothing here uses the count recursion or the series code."""

import itertools
from fractions import Fraction


def words_upto(n_letters, max_len):
    """Every index word of length <= max_len, in genealogical order."""
    for n in range(max_len + 1):
        yield from itertools.product(range(n_letters), repeat=n)


def run(delta, state, word):
    for j in word:
        state = delta[state][j]
    return state


def accepted_upto(dfa, max_len, state=None):
    """Accepted index words of length <= max_len, genealogically sorted, by direct simulation."""
    start = dfa.initial if state is None else state
    return [w for w in words_upto(len(dfa.alphabet), max_len) if run(dfa.delta, start, w) in dfa.finals]


def naive_rank(dfa, word):
    """Position of ``word`` in the sorted list of accepted words no longer than it."""
    words = accepted_upto(dfa, len(word))
    return sorted(words, key=lambda w: (len(w), w)).index(tuple(word))


def brute_count(dfa, state, n):
    return sum(
        1 for w in itertools.product(range(len(dfa.alphabet)), repeat=n) if run(dfa.delta, state, w) in dfa.finals
    )


def naive_rank_from(dfa, state, word):
    words = accepted_upto(dfa, len(word), state)
    return words.index(tuple(word))


def brute_cumulative(dfa, state, n):
    return sum(brute_count(dfa, state, i) for i in range(n + 1)) if n >= 0 else 0


def generator_coefficient(name, word, dfa_x, dfa_l, image):
    """Coefficient of ``word`` in the generator series called ``name``, from its definition.

    ``name`` is ``T[k]``, ``U[l,m]``, ``U'[l,m]``, ``V[l,m]`` or ``W[k,a]``;
    ``image[k]`` is the system-automaton state paired with state ``k`` of ``dfa_x``.
    """
    kind, args = name[:-1].split("[")
    args = args.split(",")
    n = len(word)
    if kind == "W":
        k, a = int(args[0]), dfa_l.alphabet.rank(args[1])
        if n or run(dfa_x.delta, k, (a,)) not in dfa_x.finals:
            return 0
        h = image[k]
        return naive_rank_from(dfa_l, h, (a,)) - brute_cumulative(dfa_l, h, 0)
    first, second = (int(x) for x in args) if kind != "T" else (int(args[0]), None)
    if run(dfa_x.delta, first, word) not in dfa_x.finals:
        return 0
    if kind == "T":
        if not n:
            return 0
        h = image[first]
        return naive_rank_from(dfa_l, h, word) - brute_cumulative(dfa_l, h, n - 1)
    if kind == "U":
        return brute_count(dfa_l, second, n) if n else 0
    if kind == "U'":
        return brute_count(dfa_l, second, n)
    if kind == "V":
        return brute_cumulative(dfa_l, second, n - 1)
    raise ValueError(name)


def greedy_digits(terms, x):
    """Canonical greedy digits over an explicit list of terms, most significant first."""
    if x == 0:
        return []
    top = max(i for i, t in enumerate(terms) if t <= x)
    out = []
    for i in range(top, -1, -1):
        d, x = divmod(x, terms[i])
        out.append(d)
    return out


def finite_difference_fit(values, degree):
    """Lagrange interpolation of ``values[1..degree+1]`` evaluated symbolically as coefficients."""
    import sympy

    n = sympy.Symbol("n")
    pts = list(range(1, degree + 2))
    poly = sympy.interpolate([(p, values[p]) for p in pts], n)
    coeffs = sympy.Poly(poly, n).all_coeffs()[::-1]
    return [Fraction(int(c.p), int(c.q)) for c in coeffs] + [Fraction(0)] * (degree + 1 - len(coeffs))

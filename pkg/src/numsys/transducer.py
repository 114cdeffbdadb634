"""Letter-to-letter conversion of abstract representations into positional digit strings.

Given a positional system ``U`` and integers ``alpha, k, e[p][i]`` with

    alpha * u_{n+k-1}(p) = sum_i e[p][i] * U_{n+i}     for every state p and n >= 0,

each letter of ``w`` contributes a fixed block of ``k`` digits determined by
the state it is read from, and the last ``k - 1`` letters add a constant.
Summing the overlapping blocks gives a digit string ``g(w)`` of length
``|w|`` with ``pi_U(g(w)) = alpha * val(w)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from numsys.automata import common_recurrence
from numsys.errors import (
    NoSuitableAnchor,
    NotIncreasing,
    NotInLanguage,
    NotPositional,
    RemainderClosureOverflow,
)
from numsys.linalg import det, solve
from numsys.numeration import NumerationSystem, value_indices
from numsys.positional import DigitWord, PositionalSystem, make_positional, normalize, pi_U, rho_U

DEFAULT_CLOSURE_BOUND = 10**6


@dataclass(frozen=True)
class Decomposition:
    """``alpha * u_{n+k-1}(p) = sum_i e[p][i] * U_{n+i}``, with ``U_n = u_n(anchor)``."""

    alpha: int
    k: int
    e: tuple
    U: PositionalSystem
    anchor: int
    hankel_singular: bool = False

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "k": self.k,
            "e": [list(row) for row in self.e],
            "anchor": self.anchor,
            "hankel_singular": self.hankel_singular,
            "U": self.U.to_json(),
        }


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked_upto: int
    first_failure: int | None = None
    failing_state: int | None = None
    justification: str = ""

    def __bool__(self):
        return self.ok


def _strip_zero_roots(recurrence, initial):
    """Drop trailing zero coefficients (roots at 0), keeping enough initial terms."""
    rec = list(recurrence)
    while rec and rec[-1] == 0:
        rec.pop()
    return tuple(rec), tuple(initial)


def solve_decomposition(ns: NumerationSystem, horizon: int | None = None) -> Decomposition:
    """Find an anchor final state ``f`` expressing every state's counts through ``u(f)``.

    Final states are tried in order, first those with a nonsingular Hankel
    matrix ``(u_{i+j}(f))``, then those whose singular system is still
    consistent for every state. Raises NoSuitableAnchor if none works and
    NotPositional if the anchor's counts are not strictly increasing.
    """
    dfa = ns.dfa
    rec = common_recurrence(dfa)
    m = len(rec)
    states = range(dfa.n_states)
    finals = sorted(dfa.finals)

    def hankel(f):
        return [[ns.u(f, i + j) for j in range(m)] for i in range(m)]

    def coefficients(f):
        h = hankel(f)
        out = []
        for p in states:
            c = solve(h, [ns.u(p, n + m - 1) for n in range(m)])
            if c is None:
                return None
            out.append(c)
        return out

    nonsingular = [f for f in finals if det(hankel(f)) != 0]
    singular = [f for f in finals if f not in nonsingular]
    for f in nonsingular + singular:
        coeffs = coefficients(f)
        if coeffs is None:
            continue
        alpha = 1
        for row in coeffs:
            for c in row:
                alpha = math.lcm(alpha, Fraction(c).denominator)
        e = tuple(tuple(int(c * alpha) for c in row) for row in coeffs)
        prec, init = _strip_zero_roots(rec, [ns.u(f, n) for n in range(m)])
        try:
            U = make_positional(prec, init, **({"horizon": horizon} if horizon else {}))
        except NotIncreasing as exc:
            raise NotPositional(f"u_n({f}) is not strictly increasing: {exc}") from None
        dec = Decomposition(alpha, m, e, U, f, f in singular)
        report = verify_decomposition(ns, dec)
        if report:
            return dec
    raise NoSuitableAnchor("no final state expresses every state's counts by a linear recurrence")


def verify_decomposition(ns: NumerationSystem, dec: Decomposition, extra_horizon: int = 8) -> VerificationReport:
    """Check the defining identity exactly for ``n = 0 .. m + k + extra_horizon``.

    Both sides satisfy the same order-``m`` linear recurrence, so agreement on
    ``m`` consecutive values already forces agreement for every ``n``.
    """
    m = len(common_recurrence(ns.dfa))
    upto = m + dec.k + extra_horizon
    upto = min(upto, dec.U.horizon - dec.k + 1)
    for n in range(upto + 1):
        for p in range(ns.dfa.n_states):
            lhs = dec.alpha * ns.u(p, n + dec.k - 1)
            rhs = sum(dec.e[p][i] * dec.U.terms[n + i] for i in range(dec.k))
            if lhs != rhs:
                return VerificationReport(False, upto, n, p)
    return VerificationReport(
        True, upto, justification=f"order-{m} recurrence shared by both sides; {upto + 1} values agree"
    )


# ---------------------------------------------------------------------------
# the transducer


def beta_table(ns: NumerationSystem) -> list:
    """``beta[q][sigma][p]``: letters below ``sigma`` leading ``q`` to ``p``, plus 1 when ``p`` is initial."""
    dfa = ns.dfa
    n, na = dfa.n_states, len(dfa.alphabet)
    table = []
    for q in range(n):
        rows = []
        for sigma in range(na):
            row = [0] * n
            for lower in range(sigma):
                row[dfa.delta[q][lower]] += 1
            row[dfa.initial] += 1
            rows.append(tuple(row))
        table.append(tuple(rows))
    return table


def lambda_table(ns: NumerationSystem, dec: Decomposition) -> list:
    """``lam[q][sigma][j] = sum_p beta[q][sigma][p] * e[p][j]``."""
    beta = beta_table(ns)
    n = ns.dfa.n_states
    return [
        [tuple(sum(b[p] * dec.e[p][j] for p in range(n)) for j in range(dec.k)) for b in beta[q]]
        for q in range(n)
    ]


@dataclass(frozen=True)
class DigitTransducer:
    """States are ``(automaton state, remainders)``; state 0 is the start ``(s, 0, ..., 0)``.

    ``main[(i, sigma)] = (digit, j)`` consumes one letter and emits one digit.
    ``tail[i][suffix]`` is the block of ``k - 1`` digits emitted while reading
    the last ``k - 1`` letters into the unique final state. Words shorter than
    ``k`` go through the ``short`` lookup table.
    """

    alphabet: object
    alpha: int
    k: int
    states: tuple
    main: dict
    tail: dict
    short: dict
    digits: frozenset
    remainders: frozenset
    widened: bool = False
    metadata: dict = field(default_factory=dict)

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def output_alphabet(self) -> frozenset:
        """``B`` together with any digits used only by the short-word table."""
        return self.digits.union(*map(set, self.short.values()))

    def to_json(self) -> dict:
        letters = self.alphabet.letters

        def word(idx):
            return [letters[j] for j in idx]

        return {
            "alpha": self.alpha,
            "k": self.k,
            "states": [[p, list(g)] for p, g in self.states],
            "start": 0,
            "final": "f",
            "main": [[i, letters[s], d, j] for (i, s), (d, j) in sorted(self.main.items())],
            "tail": [[i, word(z), list(b)] for i in sorted(self.tail) for z, b in sorted(self.tail[i].items())],
            "short": [[word(z), list(b)] for z, b in sorted(self.short.items())],
            "B": sorted(self.digits),
            "T": sorted(self.remainders),
            "short_alphabet_widened": self.widened,
        }


def build_transducer(
    ns: NumerationSystem, dec: Decomposition, closure_bound: int = DEFAULT_CLOSURE_BOUND
) -> DigitTransducer:
    dfa = ns.dfa
    k, alpha = dec.k, dec.alpha
    na = len(dfa.alphabet)
    live = dfa.live_states()
    for p in dfa.dead_states():
        if any(dec.e[p]):
            raise ValueError(f"dead state {p} must have a zero row, got {dec.e[p]}")
    lam = lambda_table(ns, dec)
    s = dfa.initial

    start = (s, (0,) * (k - 1))
    index = {start: 0}
    states = [start]
    main = {}
    i = 0
    while i < len(states):
        p, g = states[i]
        for sigma in range(na):
            q = dfa.delta[p][sigma]
            if q not in live:
                continue
            row = lam[p][sigma]  # row[j] multiplies U_{pos-k+1+j}
            if k == 1:
                digit, nxt = row[0], (q, ())
            else:
                # g[0] is the remainder on the highest remaining position
                digit = row[k - 1] + g[0]
                rest = tuple(row[k - 2 - t] + g[t + 1] for t in range(k - 2)) + (row[0],)
                nxt = (q, rest)
            if nxt not in index:
                if len(states) >= closure_bound:
                    raise RemainderClosureOverflow(f"more than {closure_bound} remainder states")
                index[nxt] = len(states)
                states.append(nxt)
            main[(i, sigma)] = (digit, index[nxt])
        i += 1

    # tail constants per automaton state: suffix z in L_p of length k - 1
    base = ns.v(s, k - 2)
    constants = {}
    for p in live:
        table = {}
        for z in itertools.product(range(na), repeat=k - 1):
            if dfa.accepts_indices(z, p):
                table[z] = value_indices(ns, z, p) - ns.v(p, k - 2) + base
        constants[p] = table
    tail = {}
    for i, (p, g) in enumerate(states):
        if not constants[p]:
            continue
        if k == 1:
            # the constant vanishes: the empty suffix is accepted only from final states
            assert all(c == 0 for c in constants[p].values())
            tail[i] = {z: () for z in constants[p]}
        else:
            tail[i] = {z: g[:-1] + (g[-1] + alpha * c,) for z, c in constants[p].items()}

    digits = {d for d, _ in main.values()}
    for blocks in tail.values():
        for b in blocks.values():
            digits.update(b)
    remainders = {x for _, g in states for x in g}

    short, widened = _short_words(ns, dec, digits)
    return DigitTransducer(
        dfa.alphabet,
        alpha,
        k,
        tuple(states),
        main,
        tail,
        short,
        frozenset(digits),
        frozenset(remainders),
        widened,
        {"closure_states": len(states)},
    )


def _short_words(ns, dec, digits):
    """Digit strings for the finitely many words shorter than ``k``.

    Searches ``B^{|w|}`` for a string of the right value; if none exists a
    padded greedy expansion (or the whole value on the last digit) is used and
    the table is flagged as drawing on a wider alphabet.
    """
    dfa = ns.dfa
    na = len(dfa.alphabet)
    alphabet = sorted(digits)
    table, widened = {}, False
    for n in range(dec.k):
        for z in itertools.product(range(na), repeat=n):
            if not dfa.accepts_indices(z):
                continue
            target = dec.alpha * value_indices(ns, z)
            found = next(
                (c for c in itertools.product(alphabet, repeat=n) if pi_U(dec.U, c) == target), None
            )
            if found is None:
                widened = True
                greedy = rho_U(dec.U, target).digits
                if len(greedy) <= n:
                    found = (0,) * (n - len(greedy)) + greedy
                else:
                    found = (0,) * (n - 1) + (target,)
            table[z] = tuple(found)
    return table, widened


def apply_transducer(t: DigitTransducer, word) -> DigitWord:
    """``g(w)``: a digit string of length ``|w|`` with value ``alpha * val(w)``."""
    return DigitWord(apply_indices(t, t.alphabet.encode(word)), t.output_alphabet)


def apply_indices(t: DigitTransducer, idx) -> tuple:
    """``g`` on a word given as letter ranks; returns the bare digit tuple."""
    n = len(idx)
    if n < t.k:
        try:
            return t.short[tuple(idx)]
        except KeyError:
            raise NotInLanguage(f"{t.alphabet.decode(idx)!r} is not in the language") from None
    out = []
    i = 0
    for sigma in idx[: n - (t.k - 1)]:
        step = t.main.get((i, sigma))
        if step is None:
            raise NotInLanguage(f"{t.alphabet.decode(idx)!r} is not in the language")
        d, i = step
        out.append(d)
    block = t.tail.get(i, {}).get(tuple(idx[n - (t.k - 1):]))
    if block is None:
        raise NotInLanguage(f"{t.alphabet.decode(idx)!r} is not in the language")
    return tuple(out) + tuple(block)


def convert_representation(ns: NumerationSystem, dec: Decomposition, t: DigitTransducer, word) -> DigitWord:
    """Canonical ``U``-representation of ``alpha * val(w)``, via the transducer and normalization."""
    return normalize(dec.U, apply_transducer(t, word))

"""Abstract numeration systems: genealogical ranking, unranking, recognizable progressions."""

from __future__ import annotations

from dataclasses import dataclass, field

from numsys import kernels
from numsys.automata import CountTable, OrderedDfa, classify_growth, minimize, trim
from numsys.errors import FiniteLanguage, InvalidModulus, NotInLanguage, NotStrictlyIncreasing


@dataclass(frozen=True)
class NumerationSystem:
    """An infinite regular language read in genealogical order.

    ``dfa`` is minimal and trim; ``counts`` is filled lazily.
    """

    dfa: OrderedDfa
    counts: CountTable = field(compare=False, repr=False)

    @property
    def alphabet(self):
        return self.dfa.alphabet

    @property
    def initial(self) -> int:
        return self.dfa.initial

    def u(self, state: int, n: int) -> int:
        return self.counts.u(state, n)

    def v(self, state: int, n: int) -> int:
        return self.counts.v(state, n)

    def value(self, word) -> int:
        return value(self, word)

    def representation(self, x: int):
        return representation(self, x)

    def cmp(self, x, y) -> int:
        return genealogical_cmp(self.alphabet, x, y)


def make_system(dfa: OrderedDfa) -> NumerationSystem:
    m = trim(minimize(dfa))
    if classify_growth(m).finite:
        raise FiniteLanguage("a numeration system needs an infinite language")
    return NumerationSystem(m, CountTable(m))


def genealogical_cmp(alphabet, x, y) -> int:
    """-1, 0 or 1: shorter words first, then lexicographic by letter rank."""
    if isinstance(alphabet, NumerationSystem):
        alphabet = alphabet.alphabet
    a, b = alphabet.encode(x), alphabet.encode(y)
    ka, kb = (len(a), a), (len(b), b)
    return (ka > kb) - (ka < kb)


def value(ns: NumerationSystem, word) -> int:
    """0-based genealogical rank of ``word`` in the language."""
    idx = ns.alphabet.encode(word)
    return value_indices(ns, idx)


def value_indices(ns: NumerationSystem, idx, start: int | None = None) -> int:
    """Rank of the index word ``idx`` among the words accepted from ``start`` (default: initial)."""
    dfa = ns.dfa
    start = dfa.initial if start is None else start
    if not dfa.accepts_indices(idx, start):
        raise NotInLanguage(f"{ns.alphabet.decode(idx)!r} is not in the language")
    n = len(idx)
    if n == 0:
        return 0
    states = [start]
    for j in idx[:-1]:
        states.append(dfa.delta[states[-1]][j])
    # base case: a single letter from the state reached before it
    k, sigma = states[-1], idx[-1]
    row = dfa.delta[k]
    val = ns.u(k, 0) + sum(1 for j in range(sigma) if row[j] in dfa.finals)
    # val_k(σw) = val_{k.σ}(w) + v_{|w|}(k) - v_{|w|-1}(k.σ) + Σ_{σ'<σ} u_{|w|}(k.σ')
    for i in range(n - 2, -1, -1):
        k, sigma = states[i], idx[i]
        row = dfa.delta[k]
        m = n - 1 - i
        val += ns.v(k, m) - ns.v(row[sigma], m - 1) + sum(ns.u(row[j], m) for j in range(sigma))
    return val


def representation_length(ns: NumerationSystem, x: int) -> int:
    """Length ``n`` with ``v_{n-1}(s) <= x < v_n(s)``."""
    if x < 0:
        raise ValueError("only non-negative integers have representations")
    s = ns.initial
    n = 0
    while ns.v(s, n) <= x:
        n += 1
    return n


def representation_indices(ns: NumerationSystem, x: int) -> tuple:
    n = representation_length(ns, x)
    j = x - ns.v(ns.initial, n - 1)
    dfa = ns.dfa
    q = dfa.initial
    out = []
    for remaining in range(n - 1, -1, -1):
        row = dfa.delta[q]
        for sigma, t in enumerate(row):
            c = ns.u(t, remaining)
            if j < c:
                out.append(sigma)
                q = t
                break
            j -= c
        else:  # pragma: no cover - counts guarantee a letter is found
            raise AssertionError("unranking descent ran out of letters")
    return tuple(out)


def representation(ns: NumerationSystem, x: int):
    """The ``(x+1)``-th word of the language in genealogical order."""
    return ns.alphabet.decode(representation_indices(ns, x))


def first_words(ns: NumerationSystem, count: int):
    """The ``count`` smallest words, as index tuples, in genealogical order."""
    out = []
    dfa = ns.dfa
    length = 0
    while len(out) < count:
        # depth-first in letter order enumerates one length lexicographically
        stack = [(dfa.initial, ())]
        level = []
        while stack and len(out) + len(level) < count:
            q, prefix = stack.pop()
            rem = length - len(prefix)
            if rem == 0:
                if q in dfa.finals:
                    level.append(prefix)
                continue
            row = dfa.delta[q]
            for sigma in range(len(row) - 1, -1, -1):
                if ns.u(row[sigma], rem - 1):
                    stack.append((row[sigma], prefix + (sigma,)))
        out.extend(level)
        length += 1
    return out[:count]


# ---------------------------------------------------------------------------
# recognizable arithmetic progressions


def progression_automaton(ns: NumerationSystem, p: int, q: int) -> OrderedDfa:
    """Minimal DFA for the representations of ``p, p+q, p+2q, ...``.

    States pair the language state with the value series' coefficient vector
    reduced mod ``q`` (so the value of the word read so far is known mod
    ``q`` once it ends in the language), plus a node of the prefix tree of
    the finitely many words whose value is below ``p``.
    """
    if q < 1:
        raise InvalidModulus(f"modulus must be positive, got {q}")
    if p < 0:
        raise ValueError("progression offset must be non-negative")
    from numsys.series import build_series_representation, reduce_mod

    dfa = ns.dfa
    k = len(dfa.alphabet)
    live = dfa.live_states()

    # prefix tree of r_S(0), ..., r_S(p-1)
    children = [{}]
    small = set()
    for x in range(p):
        node = 0
        for sigma in representation_indices(ns, x):
            nxt = children[node].get(sigma)
            if nxt is None:
                nxt = len(children)
                children[node][sigma] = nxt
                children.append({})
            node = nxt
        small.add(node)
    outside = -1

    if q == 1:
        start_vec = ()
        step = lambda vec, j: ()  # noqa: E731
        residue_ok = lambda vec: True  # noqa: E731
    else:
        rep = reduce_mod(build_series_representation(ns), q)
        csr = rep.csr()
        gamma = kernels.as_int64(rep.gamma)
        start_vec = tuple(rep.lam)
        target = p % q
        step = lambda vec, j: kernels.vecmat_mod(vec, csr[j], q)  # noqa: E731
        residue_ok = lambda vec: kernels.dot_mod(vec, gamma, q) == target  # noqa: E731

    sink = "sink"
    start = (dfa.initial, start_vec, 0) if dfa.initial in live else sink
    index = {start: 0}
    states = [start]
    rows = []
    finals = set()
    i = 0
    while i < len(states):
        st = states[i]
        if st == sink:
            rows.append((i,) * k)
        else:
            lq, vec, node = st
            if lq in dfa.finals and residue_ok(vec) and node not in small:
                finals.add(i)
            row = []
            for j in range(k):
                lt = dfa.delta[lq][j]
                if lt not in live:
                    nxt = sink
                else:
                    child = children[node].get(j, outside) if node != outside else outside
                    nxt = (lt, step(vec, j), child)
                if nxt not in index:
                    index[nxt] = len(states)
                    states.append(nxt)
                row.append(index[nxt])
            rows.append(tuple(row))
        i += 1
    return minimize(OrderedDfa(dfa.alphabet, tuple(rows), 0, frozenset(finals)))


# ---------------------------------------------------------------------------
# eventual arithmetic progressions

EVENTUALLY_AP = "EventuallyAP"
NOT_AP_ON_WINDOW = "NotAPOnWindow"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class APDetection:
    verdict: str
    y0: int | None = None
    gamma: int | None = None
    k: int | None = None
    x0: int | None = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "y0": self.y0, "gamma": self.gamma, "k": self.k, "x0": self.x0}


def eventual_ap_detect(samples, gamma_max: int = 64, margin: int = 2) -> APDetection:
    """Look for ``y0, Γ, k`` with ``f(x + k) = f(x) + Γ`` beyond ``f^{-1}(y0)``.

    ``samples`` are ``f(0), f(1), ...`` of a strictly increasing ``f``. A period
    ``Γ`` is accepted only if the image is ``Γ``-periodic from a threshold in
    the lower half of the observed range and at least ``margin`` periods of
    data sit above it; the smallest such ``Γ`` wins. If the range leaves room
    for ``margin`` periods of every ``Γ <= gamma_max`` and none is accepted,
    the verdict is NotAPOnWindow; otherwise Inconclusive.
    """
    f = list(samples)
    if any(b <= a for a, b in zip(f, f[1:])):
        raise NotStrictlyIncreasing("samples must be strictly increasing")
    if len(f) < 2:
        return APDetection(INCONCLUSIVE)
    image = set(f)
    where = {y: x for x, y in enumerate(f)}
    lo, hi = f[0], f[-1]
    span = hi - lo
    all_testable = True
    for gamma in range(1, gamma_max + 1):
        if span < margin * gamma:
            all_testable = False
            continue
        y0 = lo
        for y in range(hi - gamma, lo - 1, -1):
            if (y in image) != (y + gamma in image):
                y0 = y + 1
                break
        if y0 > lo + span // 2 or hi - y0 < margin * gamma:
            continue
        y0 = min(y for y in image if y >= y0)
        x0 = where[y0]
        k = where[y0 + gamma] - x0
        if all(f[x + k] == f[x] + gamma for x in range(x0, len(f) - k)):
            return APDetection(EVENTUALLY_AP, y0, gamma, k, x0)
    return APDetection(NOT_AP_ON_WINDOW if all_testable else INCONCLUSIVE)

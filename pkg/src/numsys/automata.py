"""Complete deterministic automata over totally ordered alphabets.

Every construction in the package is carried by :class:`OrderedDfa`. States are
plain integers ``0..n-1``; ``delta[state][letter_index]`` is total. When an
automaton is canonicalized (by :func:`minimize` or :func:`trim`) states are
numbered breadth-first from the initial state, visiting letters in alphabet
order, and the dead state (if any) comes last.
"""

from __future__ import annotations

import json
import threading
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from numsys import kernels
from numsys.errors import EmptyLanguage, MorphismConflict, NotASublanguage, UnknownLetter
from numsys.linalg import charpoly


@dataclass(frozen=True)
class OrderedAlphabet:
    letters: tuple[str, ...]
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("alphabet must not be empty")
        if any(not isinstance(a, str) or not a for a in letters):
            raise ValueError("letters must be non-empty strings")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in {letters!r}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_rank", {a: i for i, a in enumerate(letters)})

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def single_char(self) -> bool:
        return all(len(a) == 1 for a in self.letters)

    def rank(self, letter: str) -> int:
        try:
            return self._rank[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def encode(self, word) -> tuple[int, ...]:
        """Word -> tuple of letter ranks.

        Strings are split into characters for single-character alphabets and on
        whitespace otherwise; any other iterable is taken label by label.
        """
        if isinstance(word, str):
            labels = list(word) if self.single_char else word.split()
        else:
            labels = list(word)
        return tuple(self.rank(a) for a in labels)

    def decode(self, indices: Iterable[int]):
        labels = [self.letters[i] for i in indices]
        if self.single_char:
            return "".join(labels)
        return tuple(labels)


@dataclass(frozen=True)
class OrderedDfa:
    alphabet: OrderedAlphabet
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset

    def __post_init__(self):
        delta = tuple(tuple(int(t) for t in row) for row in self.delta)
        n = len(delta)
        if n == 0:
            raise ValueError("automaton needs at least one state")
        k = len(self.alphabet)
        for q, row in enumerate(delta):
            if len(row) != k:
                raise ValueError(f"state {q}: expected {k} transitions, got {len(row)}")
            if any(t < 0 or t >= n for t in row):
                raise ValueError(f"state {q}: transition target out of range")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        finals = frozenset(int(f) for f in self.finals)
        if any(f < 0 or f >= n for f in finals):
            raise ValueError("final state out of range")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "finals", finals)

    @classmethod
    def build(cls, letters: Sequence[str], delta, initial: int, finals: Iterable[int]) -> "OrderedDfa":
        """Build from a possibly partial table; ``None`` entries go to a fresh dead state."""
        alphabet = letters if isinstance(letters, OrderedAlphabet) else OrderedAlphabet(tuple(letters))
        rows = [list(r) for r in delta]
        if any(t is None for r in rows for t in r):
            dead = len(rows)
            rows = [[dead if t is None else t for t in r] for r in rows]
            rows.append([dead] * len(alphabet))
        return cls(alphabet, tuple(tuple(r) for r in rows), initial, frozenset(finals))

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]

    def run(self, indices: Iterable[int], state: int | None = None) -> int:
        q = self.initial if state is None else state
        for i in indices:
            q = self.delta[q][i]
        return q

    def accepts(self, word) -> bool:
        return self.run(self.alphabet.encode(word)) in self.finals

    def accepts_indices(self, indices: Iterable[int], state: int | None = None) -> bool:
        return self.run(indices, state) in self.finals

    def live_states(self) -> frozenset:
        """States from which some final state is reachable."""
        return coreachable(self)

    def dead_states(self) -> frozenset:
        return frozenset(range(self.n_states)) - coreachable(self)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "states": self.n_states,
            "initial": self.initial,
            "finals": sorted(self.finals),
            "delta": [list(r) for r in self.delta],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OrderedDfa":
        dfa = cls.build(data["alphabet"], data["delta"], data["initial"], data["finals"])
        declared = data.get("states")
        if declared is not None and declared != len(data["delta"]):
            raise ValueError(f"'states' is {declared} but delta has {len(data['delta'])} rows")
        return dfa


def load_dfa(path) -> OrderedDfa:
    return OrderedDfa.from_json(json.loads(Path(path).read_text()))


def save_dfa(dfa: OrderedDfa, path) -> None:
    Path(path).write_text(json.dumps(dfa.to_json()) + "\n")


# ---------------------------------------------------------------------------
# reachability and canonical forms


def reachable(dfa: OrderedDfa, start: int | None = None) -> frozenset:
    seen = {dfa.initial if start is None else start}
    stack = list(seen)
    while stack:
        q = stack.pop()
        for t in dfa.delta[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def coreachable(dfa: OrderedDfa) -> frozenset:
    preds = [set() for _ in range(dfa.n_states)]
    for q, row in enumerate(dfa.delta):
        for t in row:
            preds[t].add(q)
    seen = set(dfa.finals)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


def _canonical(alphabet, delta, initial, finals, dead) -> OrderedDfa:
    """Renumber by BFS in letter order; ``dead`` (a state id or None) is placed last."""
    order = {}
    queue = deque([initial])
    if initial != dead:
        order[initial] = 0
    while queue:
        q = queue.popleft()
        for t in delta[q]:
            if t not in order and t != dead:
                order[t] = len(order)
                queue.append(t)
    if dead is not None:
        order[dead] = len(order)
    inv = sorted(order, key=order.get)
    rows = tuple(tuple(order[t] for t in delta[q]) for q in inv)
    return OrderedDfa(alphabet, rows, order[initial], frozenset(order[f] for f in finals if f in order))


def minimize(dfa: OrderedDfa) -> OrderedDfa:
    """Minimal complete DFA for the same language, canonically numbered."""
    reach = sorted(reachable(dfa))
    idx = {q: i for i, q in enumerate(reach)}
    n, k = len(reach), len(dfa.alphabet)
    flat = kernels.as_int64(idx[dfa.delta[q][j]] for q in reach for j in range(k))
    init = [1 if q in dfa.finals else 0 for q in reach]
    cls = kernels.moore_classes(flat, n, k, init)
    n_cls = max(cls) + 1
    rows = [None] * n_cls
    finals = set()
    for i, q in enumerate(reach):
        c = cls[i]
        if rows[c] is None:
            rows[c] = tuple(cls[flat[i * k + j]] for j in range(k))
        if q in dfa.finals:
            finals.add(c)
    quotient = OrderedDfa(dfa.alphabet, tuple(rows), cls[idx[dfa.initial]], frozenset(finals))
    dead = quotient.dead_states()
    return _canonical(quotient.alphabet, quotient.delta, quotient.initial, quotient.finals,
                      next(iter(dead)) if dead else None)


def trim(dfa: OrderedDfa) -> OrderedDfa:
    """Drop unreachable and useless states, keeping one dead state only if a transition needs it."""
    useful = reachable(dfa) & coreachable(dfa)
    if dfa.initial not in useful:
        raise EmptyLanguage("no final state is reachable")
    keep = sorted(useful)
    idx = {q: i for i, q in enumerate(keep)}
    dead = len(keep)
    rows = [tuple(idx.get(t, dead) for t in dfa.delta[q]) for q in keep]
    needs_dead = any(t == dead for r in rows for t in r)
    if needs_dead:
        rows.append((dead,) * len(dfa.alphabet))
    finals = frozenset(idx[f] for f in dfa.finals if f in idx)
    return _canonical(dfa.alphabet, tuple(rows), idx[dfa.initial], finals, dead if needs_dead else None)


# ---------------------------------------------------------------------------
# boolean operations


def _check_same_alphabet(a: OrderedDfa, b: OrderedDfa):
    if a.alphabet.letters != b.alphabet.letters:
        raise ValueError(f"alphabets differ: {a.alphabet.letters} vs {b.alphabet.letters}")


def product(a: OrderedDfa, b: OrderedDfa, accept) -> OrderedDfa:
    """Reachable product automaton; ``accept(fa, fb)`` decides finality from the two flags."""
    return product_with_pairs(a, b, accept)[0]


def product_with_pairs(a: OrderedDfa, b: OrderedDfa, accept) -> tuple:
    """Like ``product`` but also returns the ``(state of a, state of b)`` pair behind each state."""
    _check_same_alphabet(a, b)
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    rows = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        row = []
        for j in range(len(a.alphabet)):
            t = (a.delta[p][j], b.delta[q][j])
            if t not in index:
                index[t] = len(pairs)
                pairs.append(t)
            row.append(index[t])
        rows.append(tuple(row))
        i += 1
    finals = frozenset(i for i, (p, q) in enumerate(pairs) if accept(p in a.finals, q in b.finals))
    return OrderedDfa(a.alphabet, tuple(rows), 0, finals), tuple(pairs)


def intersect(a: OrderedDfa, b: OrderedDfa) -> OrderedDfa:
    return product(a, b, lambda x, y: x and y)


def union(a: OrderedDfa, b: OrderedDfa) -> OrderedDfa:
    return product(a, b, lambda x, y: x or y)


def difference(a: OrderedDfa, b: OrderedDfa) -> OrderedDfa:
    return product(a, b, lambda x, y: x and not y)


def complement(a: OrderedDfa) -> OrderedDfa:
    return OrderedDfa(a.alphabet, a.delta, a.initial, frozenset(range(a.n_states)) - a.finals)


def is_empty(a: OrderedDfa) -> bool:
    return not (reachable(a) & a.finals)


def is_subset(a: OrderedDfa, b: OrderedDfa) -> bool:
    return is_empty(difference(a, b))


def equivalent(a: OrderedDfa, b: OrderedDfa) -> bool:
    return is_subset(a, b) and is_subset(b, a)


# ---------------------------------------------------------------------------
# counting


class CountTable:
    """Memoized ``u_n(k)`` (words of length exactly n from k) and ``v_n(k)`` (length at most n).

    Rows are appended under a lock, so a table can be shared between threads.
    """

    def __init__(self, dfa: OrderedDfa):
        self.dfa = dfa
        first = [1 if k in dfa.finals else 0 for k in range(dfa.n_states)]
        self._u = [first]
        self._v = [list(first)]
        self._lock = threading.Lock()

    def _extend(self, n: int) -> None:
        if n < len(self._u):
            return
        with self._lock:
            delta = self.dfa.delta
            while len(self._u) <= n:
                prev = self._u[-1]
                row = [sum(prev[t] for t in delta[k]) for k in range(len(delta))]
                cum = [a + b for a, b in zip(self._v[-1], row)]
                self._u.append(row)
                self._v.append(cum)

    def u(self, state: int, n: int) -> int:
        if n < 0:
            return 0
        self._extend(n)
        return self._u[n][state]

    def v(self, state: int, n: int) -> int:
        if n < 0:
            return 0
        self._extend(n)
        return self._v[n][state]

    def u_row(self, n: int) -> list:
        self._extend(n)
        return list(self._u[n])

    def v_row(self, n: int) -> list:
        if n < 0:
            return [0] * self.dfa.n_states
        self._extend(n)
        return list(self._v[n])


def count_words(table: CountTable, state: int, n: int) -> int:
    if n < 0:
        raise ValueError("length must be non-negative")
    return table.u(state, n)


def cumulative_count(table: CountTable, state: int, n: int) -> int:
    if n < -1:
        raise ValueError("cumulative counts are defined for n >= -1")
    return table.v(state, n)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class GrowthClass:
    kind: str  # "polynomial" | "exponential"
    degree: int | None = None
    finite: bool = False

    @property
    def is_polynomial(self) -> bool:
        return self.kind == "polynomial"

    def __str__(self):
        if self.kind == "exponential":
            return "Exponential"
        return f"Polynomial({self.degree})" + (" [finite]" if self.finite else "")


def _sccs(n: int, succ) -> list:
    """Tarjan, iterative. Components come out in reverse topological order."""
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack, comps = [], []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def classify_growth(dfa: OrderedDfa) -> GrowthClass:
    """Polynomial degree or exponential, read off the cycle structure of the live part.

    Exponential iff some strongly connected component of live states carries
    more internal transitions than states (i.e. is not a single simple cycle).
    Otherwise the degree is one less than the largest number of cyclic
    components met on a path from the initial state to a final state. For a
    language that is zero on infinitely many lengths (such as even-length
    words of ``a*b*``) this is the degree of the nonzero subsequence.
    """
    t = trim(dfa)
    live = sorted(t.live_states())
    pos = {q: i for i, q in enumerate(live)}
    succ = [[pos[x] for x in t.delta[q] if x in pos] for q in live]
    comps = _sccs(len(live), succ)
    comp_of = [0] * len(live)
    for c, members in enumerate(comps):
        for v in members:
            comp_of[v] = c
    cyclic = []
    for c, members in enumerate(comps):
        internal = sum(1 for v in members for w in succ[v] if comp_of[w] == c)
        if internal > len(members):
            return GrowthClass("exponential")
        cyclic.append(internal > 0)
    # reverse topological order -> iterate from the end for a forward DP
    best = [None] * len(comps)
    start = comp_of[pos[t.initial]]
    best[start] = int(cyclic[start])
    for c in range(len(comps) - 1, -1, -1):
        if best[c] is None:
            continue
        for v in comps[c]:
            for w in succ[v]:
                d = comp_of[w]
                if d != c:
                    cand = best[c] + int(cyclic[d])
                    if best[d] is None or cand > best[d]:
                        best[d] = cand
    top = max(best[comp_of[pos[f]]] for f in t.finals)
    if top == 0:
        return GrowthClass("polynomial", 0, finite=True)
    return GrowthClass("polynomial", top - 1)


def is_infinite(dfa: OrderedDfa) -> bool:
    g = classify_growth(dfa)
    return not g.finite


@dataclass(frozen=True)
class StateMorphism:
    """Images of the live states of the smaller automaton.

    The dead state of the source carries no derivative of the target, so it
    has no image and is absent from ``map``.
    """

    map: dict

    def __call__(self, q: int) -> int:
        return self.map[q]


def automaton_morphism(dfa_k: OrderedDfa, dfa_l: OrderedDfa) -> StateMorphism:
    _check_same_alphabet(dfa_k, dfa_l)
    if not is_subset(dfa_k, dfa_l):
        raise NotASublanguage("language(K) is not contained in language(L)")
    live = dfa_k.live_states()
    if dfa_k.initial not in live:
        return StateMorphism({})
    h = {dfa_k.initial: dfa_l.initial}
    queue = deque([dfa_k.initial])
    while queue:
        q = queue.popleft()
        for j in range(len(dfa_k.alphabet)):
            q2 = dfa_k.delta[q][j]
            if q2 not in live:
                continue
            img = dfa_l.delta[h[q]][j]
            if q2 in h:
                if h[q2] != img:
                    raise MorphismConflict(f"state {q2} maps to both {h[q2]} and {img}")
            else:
                h[q2] = img
                queue.append(q2)
    return StateMorphism(h)


def transition_count_matrix(dfa: OrderedDfa, states: Sequence[int]) -> list:
    """``A[i][j]`` = number of letters taking ``states[i]`` to ``states[j]``."""
    pos = {q: i for i, q in enumerate(states)}
    mat = [[0] * len(states) for _ in states]
    for i, q in enumerate(states):
        for t in dfa.delta[q]:
            if t in pos:
                mat[i][pos[t]] += 1
    return mat


def common_recurrence(dfa: OrderedDfa) -> tuple:
    """Coefficients ``(d_1..d_m)`` with ``u_{n+m} = d_1 u_{n+m-1} + ... + d_m u_n`` for every state.

    Taken from the characteristic polynomial of the live-state transition
    count matrix, so it holds from ``n = 0`` (Cayley-Hamilton). Dead states
    count zero words and satisfy it trivially.
    """
    live = sorted(dfa.live_states())
    if not live:
        raise EmptyLanguage("automaton accepts nothing")
    coeffs = charpoly(transition_count_matrix(dfa, live))
    d = tuple(-c for c in coeffs[1:])
    table = CountTable(dfa)
    m = len(d)
    for n in range(m + dfa.n_states + 1):
        for k in range(dfa.n_states):
            lhs = table.u(k, n + m)
            rhs = sum(d[i] * table.u(k, n + m - 1 - i) for i in range(m))
            if lhs != rhs:
                raise ArithmeticError(f"recurrence check failed at state {k}, n={n}")
    return d

"""Tiny regular-expression constructor used to spell test languages.

Supports single-character letters, concatenation, ``|``, ``*``, ``+``, ``?``
and parentheses; ``()`` denotes the empty word. Nothing else.
"""

from __future__ import annotations

from numsys.automata import OrderedAlphabet, OrderedDfa, minimize


class _Nfa:
    def __init__(self):
        self.eps = []
        self.edges = []

    def state(self):
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1


class _Parser:
    def __init__(self, text, alphabet, nfa):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.alphabet = alphabet
        self.nfa = nfa

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self):
        frag = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected {self.peek()!r} at {self.pos} in {self.text!r}")
        return frag

    def expr(self):
        frag = self.term()
        while self.peek() == "|":
            self.pos += 1
            other = self.term()
            s, f = self.nfa.state(), self.nfa.state()
            self.nfa.eps[s] += [frag[0], other[0]]
            self.nfa.eps[frag[1]].append(f)
            self.nfa.eps[other[1]].append(f)
            frag = (s, f)
        return frag

    def term(self):
        s = self.nfa.state()
        frag = (s, s)
        while self.peek() not in (None, "|", ")"):
            nxt = self.factor()
            self.nfa.eps[frag[1]].append(nxt[0])
            frag = (frag[0], nxt[1])
        return frag

    def factor(self):
        frag = self.atom()
        while self.peek() in ("*", "+", "?"):
            op = self.peek()
            self.pos += 1
            s, f = self.nfa.state(), self.nfa.state()
            self.nfa.eps[s].append(frag[0])
            self.nfa.eps[frag[1]].append(f)
            if op in ("*", "?"):
                self.nfa.eps[s].append(f)
            if op in ("*", "+"):
                self.nfa.eps[frag[1]].append(frag[0])
            frag = (s, f)
        return frag

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                s = self.nfa.state()
                return (s, s)
            frag = self.expr()
            if self.peek() != ")":
                raise ValueError(f"missing ')' in {self.text!r}")
            self.pos += 1
            return frag
        if c is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        j = self.alphabet.rank(c)
        self.pos += 1
        s, f = self.nfa.state(), self.nfa.state()
        self.nfa.edges[s].append((j, f))
        return (s, f)


def _closure(nfa, states):
    seen = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for t in nfa.eps[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def regex_dfa(pattern: str, letters) -> OrderedDfa:
    """Minimal DFA of ``pattern`` over the ordered alphabet ``letters``."""
    alphabet = letters if isinstance(letters, OrderedAlphabet) else OrderedAlphabet(tuple(letters))
    if not alphabet.single_char:
        raise ValueError("regex constructor needs single-character letters")
    nfa = _Nfa()
    start, final = _Parser(pattern, alphabet, nfa).parse()
    init = _closure(nfa, [start])
    index = {init: 0}
    subsets = [init]
    rows = []
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        row = []
        for j in range(len(alphabet)):
            moved = [t for q in cur for (a, t) in nfa.edges[q] if a == j]
            nxt = _closure(nfa, moved)
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
        i += 1
    finals = frozenset(i for i, sub in enumerate(subsets) if final in sub)
    return minimize(OrderedDfa(alphabet, tuple(rows), 0, finals))

"""Linear representations of the value series ``sum val(w) w`` and its restrictions to sublanguages."""

from __future__ import annotations

from dataclasses import dataclass

from numsys import kernels
from numsys.automata import (
    OrderedAlphabet,
    OrderedDfa,
    automaton_morphism,
    minimize,
    product_with_pairs,
)
from numsys.errors import InvalidModulus, MorphismConflict


@dataclass(frozen=True)
class LinearRepresentation:
    """``(lam, mu, gamma)`` with ``evaluate(w) = lam . mu(w_1) ... mu(w_n) . gamma``.

    ``mu[j]`` is the matrix of letter ``j`` stored as sparse rows: row ``g`` is
    a tuple of ``(column, coefficient)`` pairs with nonzero coefficients.
    ``modulus`` is None over the integers, else ``q`` for the integers mod q.
    """

    alphabet: OrderedAlphabet
    lam: tuple
    mu: tuple
    gamma: tuple
    modulus: int | None = None
    generators: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.lam)

    @property
    def ring(self) -> str:
        return "Integers" if self.modulus is None else f"IntegersMod({self.modulus})"

    @classmethod
    def from_dense(cls, letters, lam, mus, gamma, modulus=None) -> "LinearRepresentation":
        alphabet = letters if isinstance(letters, OrderedAlphabet) else OrderedAlphabet(tuple(letters))
        mu = tuple(_sparse(m) for m in mus)
        return cls(alphabet, tuple(lam), mu, tuple(gamma), modulus)

    def dense(self, j: int) -> list:
        out = [[0] * self.dim for _ in range(self.dim)]
        for g, row in enumerate(self.mu[j]):
            for c, x in row:
                out[g][c] = x
        return out

    def csr(self) -> tuple:
        """Per-letter ``(indptr, indices, data)`` int64 arrays for the mod-q kernels."""
        out = []
        for rows in self.mu:
            indptr, indices, data = [0], [], []
            for row in rows:
                for c, x in row:
                    indices.append(c)
                    data.append(x)
                indptr.append(len(indices))
            out.append((kernels.as_int64(indptr), kernels.as_int64(indices), kernels.as_int64(data)))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "ring": self.ring,
            "alphabet": list(self.alphabet.letters),
            "lambda": list(self.lam),
            "gamma": list(self.gamma),
            "mu": {letter: self.dense(j) for j, letter in enumerate(self.alphabet.letters)},
            "generators": list(self.generators) if self.generators else None,
        }


def _sparse(matrix) -> tuple:
    return tuple(tuple((c, x) for c, x in enumerate(row) if x) for row in matrix)


def step(rep: LinearRepresentation, vec, j: int) -> list:
    """Row vector ``vec`` times ``mu(letter j)``."""
    out = [0] * rep.dim
    for g, x in enumerate(vec):
        if x:
            for c, coef in rep.mu[j][g]:
                out[c] += x * coef
    if rep.modulus is not None:
        q = rep.modulus
        out = [x % q for x in out]
    return out


def evaluate_indices(rep: LinearRepresentation, idx) -> int:
    vec = list(rep.lam)
    for j in idx:
        vec = step(rep, vec, j)
    total = sum(x * y for x, y in zip(vec, rep.gamma))
    return total if rep.modulus is None else total % rep.modulus


def evaluate(rep: LinearRepresentation, word) -> int:
    return evaluate_indices(rep, rep.alphabet.encode(word))


def reduce_mod(rep: LinearRepresentation, q: int) -> LinearRepresentation:
    if q < 2:
        raise InvalidModulus(f"modulus must be at least 2, got {q}")
    if rep.modulus is not None and rep.modulus != q:
        raise InvalidModulus(f"representation is already reduced mod {rep.modulus}")
    mu = tuple(
        tuple(tuple((c, x % q) for c, x in row if x % q) for row in rows) for rows in rep.mu
    )
    return LinearRepresentation(
        rep.alphabet,
        tuple(x % q for x in rep.lam),
        mu,
        tuple(x % q for x in rep.gamma),
        q,
        rep.generators,
    )


# ---------------------------------------------------------------------------
# generator basis


def _build(ns, x_dfa: OrderedDfa, image) -> LinearRepresentation:
    """Representation of ``sum_{w in X} val(w) w`` for ``X`` recognized by ``x_dfa``.

    ``image[k]`` is the state of the system automaton corresponding to state
    ``k`` of ``x_dfa``. Coordinates, in order:

    * ``T[k]``: words ``w != eps`` of ``X_k`` weighted ``val_{h(k)}(w) - v_{|w|-1}(h(k))``
    * ``U[l,m]``: words ``w != eps`` of ``X_l`` weighted ``u_{|w|}(m)``
    * ``U'[l,m]``: words of ``X_l`` weighted ``u_{|w|}(m)``
    * ``V[l,m]``: words of ``X_l`` weighted ``v_{|w|-1}(m)``
    * ``W[k,a]``: the empty word weighted ``val_{h(k)}(a) - v_0(h(k))`` if ``a`` is in ``X_k``

    with ``l, k`` states of ``x_dfa`` and ``m`` states of the system automaton.
    """
    dfa = ns.dfa
    nx, nl, na = x_dfa.n_states, dfa.n_states, len(dfa.alphabet)
    t_off = 0
    u_off = nx
    up_off = u_off + nx * nl
    v_off = up_off + nx * nl
    w_off = v_off + nx * nl
    dim = w_off + nx * na

    def U(l, m):
        return u_off + l * nl + m

    def Up(l, m):
        return up_off + l * nl + m

    def V(l, m):
        return v_off + l * nl + m

    letters = dfa.alphabet.letters
    names = (
        [f"T[{k}]" for k in range(nx)]
        + [f"U[{l},{m}]" for l in range(nx) for m in range(nl)]
        + [f"U'[{l},{m}]" for l in range(nx) for m in range(nl)]
        + [f"V[{l},{m}]" for l in range(nx) for m in range(nl)]
        + [f"W[{k},{letters[a]}]" for k in range(nx) for a in range(na)]
    )

    mu = []
    for a in range(na):
        rows = [dict() for _ in range(dim)]
        for k in range(nx):
            ka = x_dfa.delta[k][a]
            hk = image[k]
            # T: T_{k.a} + sum_{b<a} U_{k.a, h(k).b} + W_{k,a}
            row = rows[t_off + k]
            row[t_off + ka] = row.get(t_off + ka, 0) + 1
            for b in range(a):
                c = U(ka, dfa.delta[hk][b])
                row[c] = row.get(c, 0) + 1
            row[w_off + k * na + a] = 1
        for l in range(nx):
            la = x_dfa.delta[l][a]
            for m in range(nl):
                # U and U': sum over every letter b of U'_{l.a, m.b}
                for src in (U(l, m), Up(l, m)):
                    row = rows[src]
                    for b in range(na):
                        c = Up(la, dfa.delta[m][b])
                        row[c] = row.get(c, 0) + 1
                # V: V_{l.a, m} + U'_{l.a, m}
                row = rows[V(l, m)]
                row[V(la, m)] = row.get(V(la, m), 0) + 1
                row[Up(la, m)] = row.get(Up(la, m), 0) + 1
        mu.append(tuple(tuple(sorted(r.items())) for r in rows))

    gamma = [0] * dim
    for l in range(nx):
        if l in x_dfa.finals:
            for m in range(nl):
                gamma[Up(l, m)] = ns.u(m, 0)
    for k in range(nx):
        hk = image[k]
        for a in range(na):
            if x_dfa.delta[k][a] in x_dfa.finals:
                gamma[w_off + k * na + a] = sum(
                    1 for b in range(a) if dfa.delta[hk][b] in dfa.finals
                )

    lam = [0] * dim
    lam[t_off + x_dfa.initial] = 1
    lam[V(x_dfa.initial, image[x_dfa.initial])] += 1
    return LinearRepresentation(dfa.alphabet, tuple(lam), tuple(mu), tuple(gamma), None, tuple(names))


def build_series_representation(ns) -> LinearRepresentation:
    """Integer representation with ``evaluate(w) = val(w)`` for every word of the language."""
    return _build(ns, ns.dfa, list(range(ns.dfa.n_states)))


def build_subset_series(ns, x_dfa: OrderedDfa) -> LinearRepresentation:
    """Representation of ``val`` restricted to the sublanguage recognized by ``x_dfa``.

    Raises NotASublanguage if the language of ``x_dfa`` is not contained in
    the system's language. Words outside the sublanguage evaluate to 0.
    """
    x_dfa = minimize(x_dfa)
    try:
        h = automaton_morphism(x_dfa, ns.dfa)
    except MorphismConflict:
        # the minimal automaton of X need not map onto the system automaton
        # (b* inside a*b*); the product automaton always does, by projection
        prod, pairs = product_with_pairs(x_dfa, ns.dfa, lambda fx, fl: fx)
        return _build(ns, prod, [m for _, m in pairs])
    # states of x_dfa with an empty future have no image; any state of the
    # system automaton will do since their generators are zero series
    fallback = next(iter(sorted(ns.dfa.dead_states())), ns.dfa.initial)
    image = [h.map.get(k, fallback) for k in range(x_dfa.n_states)]
    return _build(ns, x_dfa, image)

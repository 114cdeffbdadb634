"""Pure-Python kernels. Reference semantics for the compiled twin in ``_ckernels.pyx``."""


def vecmat_mod(vec, indptr, indices, data, q):
    """Row vector times a CSR matrix, reduced mod ``q``.

    ``vec`` has one entry per matrix row; the matrix is square. Returns a tuple.
    """
    out = [0] * len(vec)
    for g, c in enumerate(vec):
        if c:
            for t in range(indptr[g], indptr[g + 1]):
                j = indices[t]
                out[j] = (out[j] + c * data[t]) % q
    return tuple(out)


def dot_mod(vec, col, q):
    total = 0
    for a, b in zip(vec, col):
        if a and b:
            total += a * b
    return total % q


def moore_classes(delta, n_states, n_letters, init):
    """Coarsest partition refining ``init`` that is stable under ``delta``.

    ``delta`` is flat, row-major: ``delta[s * n_letters + j]``. Class ids are
    numbered by first occurrence in state order.
    """
    cls = _first_occurrence(init)
    count = max(cls) + 1 if cls else 0
    while True:
        ids = {}
        new = [0] * n_states
        for s in range(n_states):
            base = s * n_letters
            sig = (cls[s],) + tuple(cls[delta[base + j]] for j in range(n_letters))
            new[s] = ids.setdefault(sig, len(ids))
        if len(ids) == count:
            return new
        cls, count = new, len(ids)


def _first_occurrence(labels):
    ids = {}
    return [ids.setdefault(x, len(ids)) for x in labels]

"""Kernel dispatch.

The compiled extension ``numsys._ckernels`` is used when it was built and
imports cleanly; otherwise the pure-Python twin is used. Set
``NUMSYS_PURE_PYTHON=1`` to force the fallback.
"""

import os
from array import array

from numsys import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("NUMSYS_PURE_PYTHON"):
    try:
        from numsys import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

# Compiled moore_classes packs (key, state) into one int64; beyond this size it overflows.
_MOORE_C_LIMIT = 1 << 20


def as_int64(values):
    return array("q", values)


def vecmat_mod(vec, csr, q):
    """``vec`` (tuple) times the CSR matrix ``csr = (indptr, indices, data)`` mod ``q``."""
    return _impl.vecmat_mod(vec, csr[0], csr[1], csr[2], q)


def dot_mod(vec, col, q):
    return _impl.dot_mod(vec, col, q)


def moore_classes(delta, n_states, n_letters, init):
    if _impl is not _pykernels and n_states >= _MOORE_C_LIMIT:
        return _pykernels.moore_classes(delta, n_states, n_letters, init)
    return _impl.moore_classes(delta, n_states, n_letters, init)


def backends():
    """Name -> module for every importable backend (used by parity tests and benchmarks)."""
    found = {"python": _pykernels}
    try:
        from numsys import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found

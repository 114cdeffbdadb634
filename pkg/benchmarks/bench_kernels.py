"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel timings call each backend module directly. The end-to-end timing
builds a progression automaton in a subprocess, once per backend, with
``NUMSYS_PURE_PYTHON`` selecting the fallback.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from numsys import kernels
from numsys.kernels import as_int64


def random_csr(rng, dim, per_row):
    indptr, indices, data = [0], [], []
    for _ in range(dim):
        cols = sorted(rng.sample(range(dim), per_row))
        indices += cols
        data += [rng.randint(1, 9) for _ in cols]
        indptr.append(len(indices))
    return as_int64(indptr), as_int64(indices), as_int64(data)


def kernel_cases(rng):
    dim = 400
    csr = random_csr(rng, dim, 6)
    q = 1_000_003
    vec = tuple(rng.randrange(q) for _ in range(dim))
    col = as_int64(rng.randrange(q) for _ in range(dim))
    n, k = 20_000, 3
    delta = as_int64(rng.randrange(n) for _ in range(n * k))
    init = [rng.randint(0, 1) for _ in range(n)]
    return {
        "vecmat_mod (400x400, 6 nnz/row)": lambda impl: impl.vecmat_mod(vec, *csr, q),
        "dot_mod (400)": lambda impl: impl.dot_mod(vec, col, q),
        "moore_classes (20000 states)": lambda impl: impl.moore_classes(delta, n, k, init),
    }


END_TO_END = (
    "import time; from numsys.numeration import make_system, progression_automaton; "
    "from numsys.languages import no_aa; ns = make_system(no_aa()); t = time.perf_counter(); "
    "progression_automaton(ns, 3, 29); print(time.perf_counter() - t)"
)


def end_to_end(pure):
    env = dict(os.environ)
    env.pop("NUMSYS_PURE_PYTHON", None)
    if pure:
        env["NUMSYS_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = kernels.backends()
    print(f"backends available: {', '.join(sorted(backends))}; selected at import: {kernels.BACKEND}")
    cases = kernel_cases(random.Random(7))
    header = f"{'kernel':34}" + "".join(f"{name:>12}" for name in sorted(backends))
    print(header)
    for label, call in cases.items():
        row = f"{label:34}"
        for name in sorted(backends):
            impl = backends[name]
            number = 3
            best = min(timeit.repeat(lambda: call(impl), number=number, repeat=args.repeat)) / number
            row += f"{best * 1e3:10.3f}ms"
        print(row)

    print("progression automaton, no-aa, p=3 q=29:")
    if "cython" in backends:
        print(f"  cython  {end_to_end(False):.3f}s")
    print(f"  python  {end_to_end(True):.3f}s")


if __name__ == "__main__":
    main()

"""Positional numeration systems defined by linear recurrences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from numsys.errors import (
    HorizonExceeded,
    NegativeValue,
    NotIncreasing,
    ZeroTrailingCoefficient,
)

DEFAULT_HORIZON = 256


@dataclass(frozen=True)
class DigitWord:
    """Digits most significant first, optionally drawn from a declared integer alphabet."""

    digits: tuple
    alphabet: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", frozenset(self.alphabet))
            stray = [d for d in self.digits if d not in self.alphabet]
            if stray:
                raise ValueError(f"digits {stray} are outside the alphabet")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def padded(self, length: int) -> tuple:
        return (0,) * (length - len(self.digits)) + self.digits


@dataclass(frozen=True)
class PositionalSystem:
    """``U_n = d_1 U_{n-1} + ... + d_m U_{n-m}`` beyond the given initial terms.

    ``terms`` holds ``U_0 .. U_horizon``; canonical digits are ``0 .. digit_bound``.
    """

    recurrence: tuple
    initial: tuple
    horizon: int
    terms: tuple
    digit_bound: int

    @property
    def order(self) -> int:
        return len(self.recurrence)

    def U(self, n: int) -> int:
        if not 0 <= n <= self.horizon:
            raise HorizonExceeded(f"U_{n} is beyond the horizon {self.horizon}")
        return self.terms[n]

    @property
    def canonical_alphabet(self) -> frozenset:
        return frozenset(range(self.digit_bound + 1))

    def to_json(self) -> dict:
        return {"recurrence": list(self.recurrence), "initial": list(self.initial), "horizon": self.horizon}

    @classmethod
    def from_json(cls, data: dict) -> "PositionalSystem":
        return make_positional(data["recurrence"], data["initial"], data.get("horizon", DEFAULT_HORIZON))


def make_positional(recurrence, initial, horizon: int = DEFAULT_HORIZON) -> PositionalSystem:
    """Materialize ``U_0 .. U_horizon`` and derive the canonical digit bound.

    ``initial`` needs at least ``m`` terms; extra terms are kept as given,
    which lets a recurrence whose characteristic polynomial had factors of
    ``x`` stripped start late.
    """
    rec = tuple(int(d) for d in recurrence)
    init = tuple(int(u) for u in initial)
    if not rec:
        raise ValueError("recurrence must have at least one coefficient")
    if rec[-1] == 0:
        raise ZeroTrailingCoefficient("the last recurrence coefficient must be nonzero")
    if len(init) < len(rec):
        raise ValueError(f"need {len(rec)} initial terms, got {len(init)}")
    if init[0] != 1:
        raise ValueError("U_0 must be 1")
    if horizon < len(init) - 1:
        horizon = len(init) - 1
    terms = list(init)
    while len(terms) <= horizon:
        terms.append(sum(d * terms[-1 - i] for i, d in enumerate(rec)))
    terms = terms[: horizon + 1]
    for n in range(horizon):
        if terms[n + 1] <= terms[n]:
            raise NotIncreasing(f"U_{n + 1} = {terms[n + 1]} does not exceed U_{n} = {terms[n]}")
    # largest integer strictly below U_{n+1}/U_n, maximized over the horizon
    bound = max(-(-terms[n + 1] // terms[n]) - 1 for n in range(horizon)) if horizon else 1
    return PositionalSystem(rec, init, horizon, tuple(terms), bound)


def _digits(x) -> tuple:
    return x.digits if isinstance(x, DigitWord) else tuple(int(d) for d in x)


def pi_U(ps: PositionalSystem, x) -> int:
    """Numerical value ``sum x_i U_i``; digits may be negative or non-canonical."""
    digits = _digits(x)
    n = len(digits)
    if n > ps.horizon + 1:
        raise HorizonExceeded(f"{n} digits exceed the horizon {ps.horizon}")
    return sum(d * ps.terms[n - 1 - i] for i, d in enumerate(digits))


def rho_U(ps: PositionalSystem, x: int) -> DigitWord:
    """Greedy expansion of ``x``; 0 is the empty word."""
    if x < 0:
        raise NegativeValue(f"{x} has no canonical representation")
    terms = ps.terms
    if x >= terms[-1]:
        raise HorizonExceeded(f"{x} needs digits beyond the horizon {ps.horizon}")
    if x == 0:
        return DigitWord((), ps.canonical_alphabet)
    top = max(n for n in range(len(terms)) if terms[n] <= x)
    digits = []
    for n in range(top, -1, -1):
        d, x = divmod(x, terms[n])
        digits.append(d)
    return DigitWord(tuple(digits), ps.canonical_alphabet)


def normalize(ps: PositionalSystem, x) -> DigitWord:
    """Canonical expansion of the value of ``x``."""
    value = pi_U(ps, x)
    if value < 0:
        raise NegativeValue(f"digits {_digits(x)} have negative value {value}")
    return rho_U(ps, value)


# ---------------------------------------------------------------------------
# Pisot check

PISOT = "pisot"
NOT_PISOT = "not_pisot"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PisotReport:
    verdict: str
    irreducible: bool
    dominant_root: complex | float
    moduli: tuple  # (lower, upper) bounds per root, with multiplicity

    @property
    def is_pisot(self) -> bool:
        return self.verdict == PISOT

    def __bool__(self):
        return self.is_pisot

    def to_json(self) -> dict:
        root = self.dominant_root
        if isinstance(root, complex):
            root = [root.real, root.imag]
        return {
            "verdict": self.verdict,
            "irreducible": self.irreducible,
            "dominant_root": root,
            "moduli": [list(m) for m in self.moduli],
        }


def characteristic_coefficients(recurrence) -> list:
    """``[1, -d_1, ..., -d_m]``, highest degree first."""
    return [1] + [-int(d) for d in recurrence]


def pisot_check(recurrence, tol: float = 1e-9) -> PisotReport:
    """Is ``x^m - d_1 x^{m-1} - ... - d_m`` the minimal polynomial of a Pisot number?

    Roots are isolated in exact rational boxes refined well below ``tol``, so
    every modulus comparison is certified. A modulus within ``tol`` of 1 gives
    an inconclusive verdict.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(characteristic_coefficients(recurrence), x)
    irreducible = bool(poly.is_irreducible)
    real, cplx = poly.intervals(all=True, eps=sympy.Rational(1, 10**15))

    boxes = []  # (re_lo, re_hi, im_lo, im_hi) as Fractions
    for (a, b), mult in real:
        boxes += [(Fraction(str(a)), Fraction(str(b)), Fraction(0), Fraction(0))] * mult
    for (ll, ur), mult in cplx:
        box = tuple(Fraction(str(v)) for v in (sympy.re(ll), sympy.re(ur), sympy.im(ll), sympy.im(ur)))
        boxes += [box] * mult

    def clamp0(lo, hi):
        return Fraction(0) if lo <= 0 <= hi else min(abs(lo), abs(hi))

    moduli = []
    for r0, r1, i0, i1 in boxes:
        lo2 = clamp0(r0, r1) ** 2 + clamp0(i0, i1) ** 2
        hi2 = max(abs(r0), abs(r1)) ** 2 + max(abs(i0), abs(i1)) ** 2
        moduli.append((lo2, hi2))

    t = Fraction(tol)
    outside, near = [], 0
    for i, (lo2, hi2) in enumerate(moduli):
        if lo2 > (1 + t) ** 2:
            outside.append(i)
        elif hi2 >= (1 - t) ** 2:
            near += 1

    def positive_real(i):
        r0, _, i0, i1 = boxes[i]
        return i0 == i1 == 0 and r0 > 0

    if near:
        verdict = INCONCLUSIVE
    elif len(outside) == 1 and positive_real(outside[0]) and irreducible:
        verdict = PISOT
    else:
        verdict = NOT_PISOT

    k = max(range(len(boxes)), key=lambda i: moduli[i][1])
    r0, r1, i0, i1 = boxes[k]
    re_mid, im_mid = float((r0 + r1) / 2), float((i0 + i1) / 2)
    dominant = re_mid if i0 == i1 == 0 else complex(re_mid, im_mid)
    report_moduli = tuple(
        (float(lo2) ** 0.5, float(hi2) ** 0.5) for lo2, hi2 in sorted(moduli, reverse=True)
    )
    return PisotReport(verdict, irreducible, dominant, report_moduli)

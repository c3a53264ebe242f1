"""Fibonacci, fibotomic and cyclotomic polynomials.

Fibotomic polynomials are built as the Moebius quotient
``prod_{d|n} F_d ** mu(n/d)``: the factors with mu = +1 are multiplied,
then the ones with mu = -1 are divided out exactly.  A remainder would
contradict the construction and is raised as InternalInvariantViolation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable

from . import numth
from .errors import (
    BadInput,
    DomainTooSmall,
    InexactDivision,
    InternalInvariantViolation,
    NotPrime,
    NotRealResult,
)
from .polycore import GaussPoly, IntPoly, domain_map
from .reports import VerificationReport


class FamilyCache:
    """Memo table ``n -> IntPoly`` with insert-if-absent semantics.

    Reads need no lock; inserts are serialized.  Two threads racing on the
    same n may both compute it, and the first stored value wins.
    """

    def __init__(self, builder: Callable[[int], IntPoly]):
        self._builder = builder
        self._store: dict[int, IntPoly] = {}
        self._lock = threading.Lock()

    def __call__(self, n: int) -> IntPoly:
        try:
            return self._store[n]
        except KeyError:
            pass
        value = self._builder(n)
        with self._lock:
            return self._store.setdefault(n, value)

    def __contains__(self, n: int) -> bool:
        return n in self._store

    def clear(self) -> None:
        with self._lock:
            self._store.clear()


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainTooSmall(f"index must be a positive integer, got {n!r}")


_fib_table: list[IntPoly] = [IntPoly(), IntPoly([1])]  # F_0 = 0, F_1 = 1
_fib_lock = threading.Lock()


def fibonacci(n: int) -> IntPoly:
    """F_1 = 1, F_2 = x, F_n = x F_{n-1} + F_{n-2}."""
    _check_n(n)
    if n < len(_fib_table):
        return _fib_table[n]
    with _fib_lock:
        while len(_fib_table) <= n:
            a, b = _fib_table[-2].coeffs, _fib_table[-1].coeffs
            nxt = [0, *b]
            for j, c in enumerate(a):
                nxt[j] += c
            _fib_table.append(IntPoly._raw(nxt))
        return _fib_table[n]


def _mobius_quotient(n: int, term: Callable[[int], IntPoly]) -> IntPoly:
    num, den = [], []
    for d in numth.divisors(n):
        mu = numth.mobius(n // d)
        if mu == 1:
            num.append(term(d))
        elif mu == -1:
            den.append(term(d))
    # prod(num) = Psi_n * prod(den), so every intermediate division is exact.
    acc = num[0]
    for g in num[1:]:
        acc = acc * g
    try:
        for g in den:
            acc = acc.exact_div(g)
    except InexactDivision as exc:
        raise InternalInvariantViolation(f"Moebius quotient for n={n} is not exact: {exc}") from exc
    return acc


def _build_fibotomic(n: int) -> IntPoly:
    _check_n(n)
    if n == 1:
        return IntPoly([1])
    return _mobius_quotient(n, fibonacci)


def _build_cyclotomic(n: int) -> IntPoly:
    _check_n(n)
    return _mobius_quotient(n, lambda d: IntPoly.monomial(d) - 1)


fibotomic_cache = FamilyCache(_build_fibotomic)
cyclotomic_cache = FamilyCache(_build_cyclotomic)


def fibotomic(n: int) -> IntPoly:
    """The n-th fibotomic polynomial; monic of degree phi(n) for n >= 2."""
    return fibotomic_cache(n)


def cyclotomic(n: int) -> IntPoly:
    return cyclotomic_cache(n)


def psi_constant_term(n: int) -> int:
    """Closed form for the constant term of the n-th fibotomic polynomial."""
    _check_n(n)
    if n == 2:
        return 0
    if n % 2 == 0:
        pp = numth.prime_power(n // 2)
        if pp is not None:
            return pp[0]
    return 1


def phi_at_one(n: int) -> int:
    """Closed form for the n-th cyclotomic polynomial at 1."""
    if n < 2:
        raise DomainTooSmall(f"phi_at_one needs n >= 2, got {n}")
    pp = numth.prime_power(n)
    return pp[0] if pp else 1


# ---------------------------------------------------------------------------
# homogenized views


@dataclass(frozen=True)
class HomogeneousView:
    """Bivariate sum_j c_j x^j y^(total_degree - j), stored via its y = 1 slice."""

    base: IntPoly
    total_degree: int

    def __post_init__(self):
        if self.base.degree != self.total_degree:
            raise InternalInvariantViolation(
                f"degree {self.base.degree} != total degree {self.total_degree}"
            )

    def terms(self) -> list[tuple[int, int, int]]:
        """Nonzero terms as (coefficient, x exponent, y exponent)."""
        return [(c, j, self.total_degree - j) for j, c in enumerate(self.base.coeffs) if c]

    def __str__(self) -> str:
        out = []
        for c, i, k in reversed(self.terms()):
            mono = "".join(
                s for s in (_pow_str("x", i), _pow_str("y", k)) if s
            )
            coef = "" if abs(c) == 1 and mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            out.append((sign, coef + mono))
        if not out:
            return "0"
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        return " ".join([text] + [f"{s} {t}" for s, t in out[1:]])


def _pow_str(var: str, e: int) -> str:
    return "" if e == 0 else (var if e == 1 else f"{var}^{e}")


def homogenize(family: str, n: int) -> HomogeneousView:
    if family == "fibonacci":
        return HomogeneousView(fibonacci(n), n - 1)
    if family == "fibotomic":
        return HomogeneousView(fibotomic(n), numth.totient(n) if n > 1 else 0)
    raise BadInput(f"unknown family {family!r}")


def specialize_y(view: HomogeneousView, y0: int) -> IntPoly:
    """Set y = y0, leaving a univariate polynomial in x."""
    t = view.total_degree
    return IntPoly._raw([c * y0 ** (t - j) for j, c in enumerate(view.base.coeffs)])


# ---------------------------------------------------------------------------
# identities relating Psi_{pm} to Psi_m


def verify_psi_pm(p: int, m: int) -> VerificationReport:
    """Check the expression of Psi_{pm} through Psi_m for one (p, m).

    Case labels: ``a`` (p = 2 divides m), ``b`` (p = 2, m odd),
    ``c`` (odd p divides m), ``d`` (odd p, p does not divide m).
    """
    if not numth.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 2:
        raise DomainTooSmall(f"m must be >= 2, got {m}")
    x = IntPoly.x()
    psi_m = fibotomic(m)
    lhs = fibotomic(p * m)
    params = {"p": p, "m": m}
    phi_m = numth.totient(m)
    try:
        if p == 2 and m % 2 == 0:
            case = "a"
            g = GaussPoly.i() * domain_map(x * x + 2, GaussPoly)
            val = domain_map(psi_m, GaussPoly).compose(g) * _i_power(phi_m)
            if m == 2:
                val = -val
            rhs = domain_map(val, IntPoly)
        elif p == 2:
            case = "b"
            # (i sqrt(x^2+4))^2 = -(x^2+4); odd m gives an even Psi_m.
            if phi_m % 2 or any(psi_m.coeffs[1::2]):
                raise InternalInvariantViolation(f"Psi_{m} is not even")
            sign = -1 if (phi_m // 2) % 2 else 1
            rhs = psi_m.even_substitute(-(x * x + 4)) * sign
        elif m % p == 0:
            case = "c"
            rhs = psi_m.compose(x * fibotomic(2 * p))
        else:
            case = "d"
            rhs = psi_m.compose(x * fibotomic(2 * p)).exact_div(psi_m)
    except (NotRealResult, InexactDivision) as exc:
        return VerificationReport("psi_pm", params, _case_label(p, m), False, lhs, None, str(exc))
    return VerificationReport("psi_pm", params, case, lhs == rhs, lhs, rhs)


def _case_label(p: int, m: int) -> str:
    if p == 2:
        return "a" if m % 2 == 0 else "b"
    return "c" if m % p == 0 else "d"


def _i_power(e: int) -> tuple[int, int]:
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[e % 4]


def psi_pm_pairs(limit: int) -> list[tuple[int, int]]:
    """Every (p, m) with p prime, m >= 2 and p*m <= limit."""
    out = []
    for p in range(2, limit // 2 + 1):
        if numth.is_prime(p):
            out.extend((p, m) for m in range(2, limit // p + 1))
    return out

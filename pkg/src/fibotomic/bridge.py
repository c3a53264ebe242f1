"""Exact arithmetic in Q[x][t] / (t^2 - (x^2 + 4)).

``t`` stands for sqrt(x^2 + 4), so ``omega = (x + t)/2`` and
``omega^-1 = (t - x)/2``.  Elements are pairs (a, b) meaning a + b t with
a, b in Q[x]; the reduction t^2 -> x^2 + 4 is applied on every product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import numth
from .errors import DomainTooSmall, NotInvertible, NotPrime
from .families import cyclotomic, fibonacci, fibotomic
from .polycore import IntPoly, RatPoly, domain_map
from .reports import VerificationReport

_T_SQUARED = RatPoly([4, 0, 1])


def _rat(v: Union[int, Fraction, IntPoly, RatPoly]) -> RatPoly:
    if isinstance(v, RatPoly):
        return v
    if isinstance(v, IntPoly):
        return domain_map(v, RatPoly)
    return RatPoly([v])


@dataclass(frozen=True)
class OmegaElement:
    a: RatPoly
    b: RatPoly

    @classmethod
    def lift(cls, v) -> OmegaElement:
        """Embed a scalar or polynomial in x (b = 0)."""
        return cls(_rat(v), RatPoly())

    @classmethod
    def t(cls) -> OmegaElement:
        return cls(RatPoly(), RatPoly([1]))

    def _coerce(self, other) -> OmegaElement:
        return other if isinstance(other, OmegaElement) else OmegaElement.lift(other)

    def __add__(self, other):
        o = self._coerce(other)
        return OmegaElement(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return OmegaElement(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        return OmegaElement(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return ext_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return ext_pow(self, e)

    def norm(self) -> RatPoly:
        """(a + bt)(a - bt) = a^2 - b^2 (x^2 + 4)."""
        return self.a * self.a - self.b * self.b * _T_SQUARED

    def inverse(self) -> OmegaElement:
        """Inverse of a unit: possible only when the norm is a nonzero constant."""
        nrm = self.norm()
        if nrm.degree != 0:
            raise NotInvertible(f"norm {nrm} is not a nonzero constant")
        c = 1 / nrm.coeffs[0]
        return OmegaElement(self.a * c, -self.b * c)

    def is_dyadic(self) -> bool:
        """True when every coefficient denominator is a power of two."""
        return all(d & (d - 1) == 0 for d in (self.a.denominator, self.b.denominator))

    def __str__(self) -> str:
        if self.b.is_zero():
            return str(self.a)
        return f"({self.a}) + ({self.b})*t"


def omega() -> OmegaElement:
    half = Fraction(1, 2)
    return OmegaElement(RatPoly([0, half]), RatPoly([half]))


def omega_inv() -> OmegaElement:
    half = Fraction(1, 2)
    return OmegaElement(RatPoly([0, -half]), RatPoly([half]))


def ext_mul(u: OmegaElement, v: OmegaElement) -> OmegaElement:
    bb = u.b * v.b
    return OmegaElement(u.a * v.a + bb * _T_SQUARED, u.a * v.b + u.b * v.a)


def ext_pow(u: OmegaElement, e: int) -> OmegaElement:
    if e < 0:
        u, e = u.inverse(), -e
    result = OmegaElement.lift(1)
    while e:
        if e & 1:
            result = ext_mul(result, u)
        e >>= 1
        if e:
            u = ext_mul(u, u)
    return result


def ext_eval(f: IntPoly, u: OmegaElement) -> OmegaElement:
    """f(u) by Horner's rule inside the ring."""
    acc = OmegaElement.lift(0)
    for c in reversed(f.coeffs):
        acc = ext_mul(acc, u) + OmegaElement.lift(c)
    return acc


def verify_bridge(n: int) -> VerificationReport:
    """Phi_n(-omega^2) == sign * omega^phi(n) * Psi_n, sign = -1 only for n = 2."""
    if n < 2:
        raise DomainTooSmall(f"n must be >= 2, got {n}")
    w = omega()
    lhs = ext_eval(cyclotomic(n), -ext_mul(w, w))
    sign = -1 if n == 2 else 1
    rhs = ext_pow(w, numth.totient(n)) * OmegaElement.lift(fibotomic(n) * sign)
    return VerificationReport(
        "bridge", {"n": n}, "n=2" if n == 2 else "n>=3", lhs == rhs, lhs, rhs,
        extra={"dyadic": lhs.is_dyadic() and rhs.is_dyadic()},
    )


def verify_webb_parberry(n: int) -> VerificationReport:
    """(omega + omega^-1) F_n == omega^n - (-omega)^-n."""
    if n < 1:
        raise DomainTooSmall(f"n must be >= 1, got {n}")
    w = omega()
    lhs = (w + omega_inv()) * OmegaElement.lift(fibonacci(n))
    rhs = ext_pow(w, n) - ext_pow(-w, -n)
    return VerificationReport(
        "webb_parberry", {"n": n}, "", lhs == rhs, lhs, rhs,
        extra={"dyadic": lhs.is_dyadic() and rhs.is_dyadic()},
    )


def verify_omega_power(p: int) -> VerificationReport:
    """omega^p - omega^-p == x Psi_{2p} for an odd prime p."""
    if p == 2 or not numth.is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    w = omega()
    lhs = ext_pow(w, p) - ext_pow(w, -p)
    rhs = OmegaElement.lift(IntPoly.x() * fibotomic(2 * p))
    return VerificationReport(
        "omega_power", {"p": p}, "", lhs == rhs, lhs, rhs,
        extra={"dyadic": lhs.is_dyadic() and rhs.is_dyadic()},
    )

"""Resultants and discriminants: two independent engines plus closed forms.

Sign convention: ``res(f, g) = det Syl(f, g) = lc(f)**deg(g) * prod g(a)``
over the roots a of f, and ``disc(f) = (-1)**(d(d-1)/2) res(f, f') / lc(f)``.
Signed integers are plain Python ints; ratios are ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, prod

from . import numth
from .errors import (
    BadInput,
    BadRange,
    DegreeTooSmall,
    DomainTooSmall,
    InexactDivision,
    InternalInvariantViolation,
    ZeroPolynomial,
)
from .polycore import IntPoly


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    """(deg f + deg g)-square Sylvester matrix, coefficients in descending order."""
    m, n = f.degree, g.degree
    size = m + n
    fd, gd = f.coeffs[::-1], g.coeffs[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + list(fd) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(gd) + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; the matrix is consumed."""
    n = len(matrix)
    if n == 0:
        return 1
    M = matrix
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        tail = M[k][k + 1 :]
        for i in range(k + 1, n):
            row = M[i]
            a = row[k]
            if a:
                row[k + 1 :] = [(pivot * x - a * y) // prev for x, y in zip(row[k + 1 :], tail)]
            elif pivot != prev:
                row[k + 1 :] = [pivot * x // prev if x else 0 for x in row[k + 1 :]]
        prev = pivot
    return sign * M[n - 1][n - 1]


def _nonzero_pair(f: IntPoly, g: IntPoly) -> None:
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant with the zero polynomial")


def resultant_sylvester(f: IntPoly, g: IntPoly) -> int:
    _nonzero_pair(f, g)
    return bareiss_det(sylvester_matrix(f, g))


def _content(c: list[int]) -> int:
    out = 0
    for x in c:
        out = gcd(out, x)
    return out


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e:
        f = lb**e
        r = [f * c for c in r]
    return r


def resultant_subresultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant via the subresultant polynomial remainder sequence."""
    _nonzero_pair(f, g)
    A, B = list(f.coeffs), list(g.coeffs)
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0 or dB == 0:
        return A[-1] ** dB * B[-1] ** dA
    s = 1
    if dA < dB:
        A, B, dA, dB = B, A, dB, dA
        if dA % 2 and dB % 2:
            s = -1
    a, b = _content(A), _content(B)
    A = [c // a for c in A]
    B = [c // b for c in B]
    t = a**dB * b**dA
    g_, h = 1, 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        A = B
        div = g_ * h**delta
        B = [c // div for c in R]
        g_ = A[-1]
        if delta:
            h = g_**delta // h ** (delta - 1)
        if not B:
            return 0
        if len(B) == 1:
            break
    dA = len(A) - 1
    h = B[-1] ** dA // h ** (dA - 1)
    return s * t * h


_ENGINES = {"sylvester": resultant_sylvester, "subresultant": resultant_subresultant}


def resultant(f: IntPoly, g: IntPoly, method: str = "subresultant") -> int:
    try:
        engine = _ENGINES[method]
    except KeyError:
        raise BadInput(f"unknown resultant method {method!r}") from None
    return engine(f, g)


def discriminant(f: IntPoly, method: str = "subresultant") -> int:
    d = f.degree
    if f.is_zero() or d < 1:
        raise DegreeTooSmall(f"discriminant needs degree >= 1, got {d}")
    r = resultant(f, f.derivative(), method)
    q, rem = divmod(r, f.lc)
    if rem:
        raise InexactDivision(f"lc {f.lc} does not divide res(f, f') = {r}")
    return -q if (d * (d - 1) // 2) % 2 else q


# ---------------------------------------------------------------------------
# closed forms


def _exact(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise InternalInvariantViolation(f"{what}: {den} does not divide {num}")
    return q


def _need_n(n: int) -> None:
    if n < 2:
        raise DomainTooSmall(f"n must be >= 2, got {n}")


def disc_formula_psi(n: int) -> int:
    """Closed-form discriminant of the n-th fibotomic polynomial."""
    _need_n(n)
    phi = numth.totient(n)
    pp = numth.prime_power(n)
    if pp:
        p, alpha = pp
        sign = -1 if (phi // 2) % 2 else 1
        den = p ** (p ** (alpha - 1) + 1)
    else:
        if phi % 2:
            raise InternalInvariantViolation(f"phi({n}) = {phi} is odd")
        sign = -1 if (phi // 2) % 2 else 1
        den = prod(p ** (phi // (p - 1)) for p in numth.factorize(n).primes)
    return sign * _exact((2 * n) ** phi, den, f"disc_formula_psi({n})")


def disc_formula_phi(n: int) -> int:
    """Closed-form discriminant of the n-th cyclotomic polynomial."""
    _need_n(n)
    phi = numth.totient(n)
    sign = -1 if (phi // 2) % 2 else 1
    den = prod(p ** (phi // (p - 1)) for p in numth.factorize(n).primes)
    return sign * _exact(n**phi, den, f"disc_formula_phi({n})")


def disc_ratio(n: int) -> Fraction:
    """disc(Psi_n) / disc(Phi_n) in closed form."""
    _need_n(n)
    pp = numth.prime_power(n)
    return Fraction(2 ** numth.totient(n), pp[0] if pp else 1)


def _res_closed(m: int, n: int) -> int:
    if not 2 <= m < n:
        raise BadRange(f"need 2 <= m < n, got m={m}, n={n}")
    if n % m == 0:
        pp = numth.prime_power(n // m)
        if pp:
            return pp[0] ** numth.totient(m)
    return 1


def res_formula_psi(m: int, n: int) -> int:
    """Closed-form res(Psi_m, Psi_n) for 2 <= m < n."""
    return _res_closed(m, n)


def res_formula_phi(m: int, n: int) -> int:
    """Lehmer's res(Phi_m, Phi_n), restricted to 2 <= m < n."""
    return _res_closed(m, n)


def homog_disc_psi(n: int) -> tuple[int, int]:
    """Discriminant in x of the homogenized Psi_n as (power of y, coefficient)."""
    _need_n(n)
    phi = numth.totient(n)
    return phi * (phi - 1), disc_formula_psi(n)


def homog_res_psi(m: int, n: int) -> tuple[int, int]:
    value = res_formula_psi(m, n)
    return numth.totient(m) * numth.totient(n), value

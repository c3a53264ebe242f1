"""Dense univariate polynomials over Z, Q, Z[i] and Z/pZ.

All four classes are immutable, store coefficients in ascending degree
order with the leading coefficient nonzero, and share one operation
contract: ``+ - * neg``, ``exact_div``, ``compose``, ``even_substitute``,
``derivative``, ``evaluate`` and ``domain_map``.  Multiplication is
schoolbook; zero coefficients are skipped, which matters because every
polynomial in the Fibonacci families has alternating zero coefficients.

The zero polynomial has degree ``NEG_INF``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, TypeVar, Union

from .errors import (
    DomainMismatch,
    InexactDivision,
    ModulusMismatch,
    NotIntegral,
    NotRealResult,
    OddTermPresent,
    ZeroPolynomial,
)

NEG_INF = float("-inf")
MAX_MODULUS = 2**31

P = TypeVar("P", bound="_DensePoly")


def _trim(seq: Sequence) -> tuple:
    i = len(seq)
    while i and not seq[i - 1]:
        i -= 1
    return tuple(seq[:i])


# ---------------------------------------------------------------------------
# list kernels on plain integer coefficient lists


def _mul_lists(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    res = [0] * (len(a) + len(b) - 1)
    anz = [(i, c) for i, c in enumerate(a) if c]
    for j, y in enumerate(b):
        if y:
            for i, x in anz:
                res[i + j] += x * y
    return res


def _add_lists(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _sub_lists(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _int_divmod(f: Sequence[int], g: Sequence[int]) -> tuple[list[int], list[int]]:
    """Long division over Z; the leading coefficient of g must divide each step."""
    dg = len(g) - 1
    lc = g[-1]
    r = list(f)
    if len(f) <= dg:
        return [], r
    q = [0] * (len(f) - dg)
    gnz = [(j, c) for j, c in enumerate(g[:-1]) if c]
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg]
        if not c:
            continue
        if lc == 1:
            qk = c
        elif lc == -1:
            qk = -c
        else:
            qk, rem = divmod(c, lc)
            if rem:
                raise InexactDivision("leading coefficient does not divide the dividend")
        q[k] = qk
        r[k + dg] = 0
        for j, gc in gnz:
            r[k + j] -= qk * gc
    return q, r[:dg]


def _mod_divmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    dg = len(g) - 1
    r = list(f)
    if len(f) <= dg:
        return [], r
    inv = pow(g[-1], -1, p)
    q = [0] * (len(f) - dg)
    gnz = [(j, c) for j, c in enumerate(g[:-1]) if c]
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg] % p
        if not c:
            continue
        qk = c * inv % p
        q[k] = qk
        for j, gc in gnz:
            r[k + j] -= qk * gc
    return q, [c % p for c in r[:dg]]


# ---------------------------------------------------------------------------


class _DensePoly:
    """Shared behaviour; subclasses define the coefficient arithmetic."""

    __slots__ = ()

    coeffs: tuple

    # -- construction hooks -------------------------------------------------
    def _new(self: P, coeffs: Iterable) -> P:
        raise NotImplementedError

    def _const(self: P, c) -> P:
        return self._new([c])

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise DomainMismatch(f"{type(self).__name__} vs {type(other).__name__}")

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self._zero_scalar()

    def _zero_scalar(self):
        return 0

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return self.coeffs

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return _format(self.coeffs, self._fmt_coeff)

    @staticmethod
    def _fmt_coeff(c) -> tuple[int, str]:
        """Return (sign, magnitude text) for a coefficient."""
        return (-1 if c < 0 else 1), str(abs(c))

    # -- ring structure -----------------------------------------------------
    def __pow__(self: P, e: int) -> P:
        if e < 0:
            raise ValueError("negative polynomial power")
        result = self._const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def compose(self: P, g: P) -> P:
        """f(g(x)) by Horner's rule in the polynomial ring."""
        self._check(g)
        acc = self._new([])
        for c in reversed(self.coeffs):
            acc = acc * g + self._const(c)
        return acc

    def even_substitute(self: P, g: P) -> P:
        """For f(z) = h(z**2), return h(g)."""
        self._check(g)
        if any(self.coeffs[1::2]):
            raise OddTermPresent(f"{self} has odd-degree terms")
        return self._new(self.coeffs[0::2]).compose(g)

    def derivative(self: P) -> P:
        return self._new([j * c for j, c in enumerate(self.coeffs)][1:])


class IntPoly(_DensePoly):
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim([int(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs) -> IntPoly:
        obj = cls.__new__(cls)
        obj.coeffs = _trim(coeffs)
        return obj

    @classmethod
    def x(cls) -> IntPoly:
        return cls._raw([0, 1])

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPoly:
        return cls._raw([0] * degree + [c])

    def _new(self, coeffs):
        return IntPoly._raw(list(coeffs))

    def _coerce(self, other) -> IntPoly:
        if isinstance(other, int):
            return IntPoly._raw([other])
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return IntPoly._raw(_add_lists(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return IntPoly._raw(_sub_lists(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return IntPoly._raw([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly._raw([c * other for c in self.coeffs])
        self._check(other)
        return IntPoly._raw(_mul_lists(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def divmod(self, g: IntPoly) -> tuple[IntPoly, IntPoly]:
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = _int_divmod(self.coeffs, g.coeffs)
        return IntPoly._raw(q), IntPoly._raw(r)

    def exact_div(self, g: IntPoly) -> IntPoly:
        q, r = self.divmod(g)
        if not r.is_zero():
            raise InexactDivision(f"remainder {r} dividing by {g}")
        return q

    def __call__(self, c):
        return evaluate(self, c)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g


class RatPoly(_DensePoly):
    """Polynomial over Q, stored as an integer numerator and a common denominator."""

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        self._set([int(c * den) for c in fr], den)

    def _set(self, num, den) -> None:
        num = _trim(num)
        if not num:
            self._num, self._den = (), 1
            return
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self._num, self._den = num, den

    @classmethod
    def _raw(cls, num, den=1) -> RatPoly:
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self):
        return len(self._num) - 1 if self._num else NEG_INF

    def is_zero(self) -> bool:
        return not self._num

    def __len__(self) -> int:
        return len(self._num)

    def _key(self):
        return self._num, self._den

    @property
    def denominator(self) -> int:
        """Least common denominator of the coefficients."""
        return self._den

    @staticmethod
    def _fmt_coeff(c):
        sign = -1 if c < 0 else 1
        c = abs(c)
        return sign, (str(c) if c.denominator == 1 else f"({c})")

    def _new(self, coeffs):
        return RatPoly(coeffs)

    def _coerce(self, other) -> RatPoly:
        if isinstance(other, (int, Fraction)):
            return RatPoly([other])
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        d1, d2 = self._den, other._den
        l = d1 * d2 // gcd(d1, d2)
        a = [c * (l // d1) for c in self._num]
        b = [c * (l // d2) for c in other._num]
        return RatPoly._raw(_add_lists(a, b), l)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly._raw([-c for c in self._num], self._den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatPoly._raw(_mul_lists(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def divmod(self, g: RatPoly) -> tuple[RatPoly, RatPoly]:
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        gc = g.coeffs
        dg = len(gc) - 1
        inv = 1 / gc[-1]
        q = [Fraction(0)] * max(len(r) - dg, 0)
        for k in range(len(q) - 1, -1, -1):
            c = r[k + dg]
            if c:
                qk = c * inv
                q[k] = qk
                for j in range(dg + 1):
                    r[k + j] -= qk * gc[j]
        return RatPoly(q), RatPoly(r[:dg])

    def exact_div(self, g: RatPoly) -> RatPoly:
        q, r = self.divmod(g)
        if not r.is_zero():
            raise InexactDivision(f"remainder {r} dividing by {g}")
        return q

    def derivative(self):
        return RatPoly._raw([j * c for j, c in enumerate(self._num)][1:], self._den)

    def __call__(self, c):
        return evaluate(self, c)


Gauss = tuple  # (re, im) pair of ints


class GaussPoly(_DensePoly):
    """Polynomial over the Gaussian integers, kept as real and imaginary IntPolys."""

    __slots__ = ("re", "im")

    def __init__(self, coeffs: Iterable[Union[int, tuple[int, int], complex]] = ()):
        re, im = [], []
        for c in coeffs:
            a, b = _as_gauss(c)
            re.append(a)
            im.append(b)
        self.re, self.im = IntPoly(re), IntPoly(im)

    @classmethod
    def _from_parts(cls, re: IntPoly, im: IntPoly) -> GaussPoly:
        obj = cls.__new__(cls)
        obj.re, obj.im = re, im
        return obj

    @classmethod
    def i(cls) -> GaussPoly:
        return cls._from_parts(IntPoly(), IntPoly([1]))

    @property
    def coeffs(self) -> tuple[tuple[int, int], ...]:
        n = max(len(self.re), len(self.im))
        return tuple((self.re[j], self.im[j]) for j in range(n))

    @property
    def degree(self):
        n = max(len(self.re), len(self.im))
        return n - 1 if n else NEG_INF

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __len__(self) -> int:
        return max(len(self.re), len(self.im))

    def _key(self):
        return self.re.coeffs, self.im.coeffs

    def _zero_scalar(self):
        return (0, 0)

    @staticmethod
    def _fmt_coeff(c):
        a, b = c
        if b == 0:
            return (-1 if a < 0 else 1), str(abs(a))
        if a == 0:
            sign = -1 if b < 0 else 1
            return sign, ("i" if abs(b) == 1 else f"{abs(b)}i")
        return 1, f"({a}{'+' if b > 0 else '-'}{abs(b)}i)"

    def _new(self, coeffs):
        return GaussPoly(coeffs)

    def _const(self, c):
        a, b = _as_gauss(c)
        return GaussPoly._from_parts(IntPoly([a]), IntPoly([b]))

    def _coerce(self, other) -> GaussPoly:
        if isinstance(other, (int, tuple, complex)):
            return self._const(other)
        self._check(other)
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return GaussPoly._from_parts(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussPoly._from_parts(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        return GaussPoly._from_parts(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return GaussPoly._from_parts(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def exact_div(self, g: GaussPoly) -> GaussPoly:
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        # Multiply through by the conjugate so the divisor becomes real.
        conj = GaussPoly._from_parts(g.re, -g.im)
        norm = (g * conj).re
        num = self * conj
        try:
            return GaussPoly._from_parts(num.re.exact_div(norm), num.im.exact_div(norm))
        except InexactDivision:
            raise InexactDivision(f"{g} does not divide {self}") from None

    def derivative(self):
        return GaussPoly._from_parts(self.re.derivative(), self.im.derivative())

    def __call__(self, c):
        return evaluate(self, c)


class ModPoly(_DensePoly):
    """Polynomial over the prime field Z/pZ, p < 2**31."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        if not 2 <= p < MAX_MODULUS:
            raise ValueError(f"modulus {p} outside [2, 2**31)")
        self.p = p
        self.coeffs = _trim([int(c) % p for c in coeffs])

    @classmethod
    def _raw(cls, coeffs, p) -> ModPoly:
        obj = cls.__new__(cls)
        obj.p = p
        obj.coeffs = _trim(coeffs)
        return obj

    @classmethod
    def x(cls, p: int) -> ModPoly:
        return cls._raw([0, 1], p)

    def _key(self):
        return self.p, self.coeffs

    def __repr__(self) -> str:
        return f"ModPoly({list(self.coeffs)!r}, p={self.p})"

    def _check(self, other) -> None:
        super()._check(other)
        if other.p != self.p:
            raise ModulusMismatch(f"mod {self.p} vs mod {other.p}")

    def _new(self, coeffs):
        return ModPoly._raw([c % self.p for c in coeffs], self.p)

    def _coerce(self, other) -> ModPoly:
        if isinstance(other, int):
            return ModPoly._raw([other % self.p], self.p)
        self._check(other)
        return other

    def __add__(self, other):
        o = self._coerce(other)
        p = self.p
        return ModPoly._raw([c % p for c in _add_lists(self.coeffs, o.coeffs)], p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        p = self.p
        return ModPoly._raw([c % p for c in _sub_lists(self.coeffs, o.coeffs)], p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        p = self.p
        return ModPoly._raw([-c % p for c in self.coeffs], p)

    def __mul__(self, other):
        p = self.p
        if isinstance(other, int):
            return ModPoly._raw([c * other % p for c in self.coeffs], p)
        self._check(other)
        return ModPoly._raw([c % p for c in _mul_lists(self.coeffs, other.coeffs)], p)

    __rmul__ = __mul__

    def divmod(self, g: ModPoly) -> tuple[ModPoly, ModPoly]:
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = _mod_divmod(self.coeffs, g.coeffs, self.p)
        return ModPoly._raw(q, self.p), ModPoly._raw(r, self.p)

    def __mod__(self, g: ModPoly) -> ModPoly:
        return self.divmod(g)[1]

    def exact_div(self, g: ModPoly) -> ModPoly:
        q, r = self.divmod(g)
        if not r.is_zero():
            raise InexactDivision(f"remainder {r} dividing by {g} mod {self.p}")
        return q

    def monic(self) -> ModPoly:
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return self * inv

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def gcd(self, other: ModPoly) -> ModPoly:
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: ModPoly) -> ModPoly:
        result = ModPoly._raw([1], self.p) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def __call__(self, c):
        return evaluate(self, c)


def _as_gauss(c) -> tuple[int, int]:
    if isinstance(c, tuple):
        a, b = c
        return int(a), int(b)
    if isinstance(c, complex):
        if c.real != int(c.real) or c.imag != int(c.imag):
            raise ValueError(f"{c} is not a Gaussian integer")
        return int(c.real), int(c.imag)
    return int(c), 0


def _format(coeffs, fmt) -> str:
    parts = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if not c or c == (0, 0):
            continue
        sign, mag = fmt(c)
        if j == 0:
            body = mag
        else:
            mono = "x" if j == 1 else f"x^{j}"
            body = mono if mag == "1" else (f"{mag}{mono}" if mag != "i" else f"i{mono}")
        if not parts:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# functional surface


def add(f: P, g: P) -> P:
    return f + g


def sub(f: P, g: P) -> P:
    return f - g


def neg(f: P) -> P:
    return -f


def mul(f: P, g: P) -> P:
    return f * g


def exact_div(f: P, g: P) -> P:
    """Quotient of an exact division; InexactDivision on a nonzero remainder."""
    return f.exact_div(g)


def compose(f: P, g: P) -> P:
    return f.compose(g)


def even_substitute(f: P, g: P) -> P:
    return f.even_substitute(g)


def derivative(f: P) -> P:
    return f.derivative()


def evaluate(f: _DensePoly, c):
    """Horner evaluation at a scalar of f's coefficient domain."""
    if isinstance(f, GaussPoly):
        a, b = _as_gauss(c)
        ra, rb = 0, 0
        for ca, cb in reversed(f.coeffs):
            ra, rb = ra * a - rb * b + ca, ra * b + rb * a + cb
        return (ra, rb)
    if isinstance(f, ModPoly):
        p = f.p
        acc = 0
        c %= p
        for cj in reversed(f.coeffs):
            acc = (acc * c + cj) % p
        return acc
    acc = 0
    for cj in reversed(f.coeffs):
        acc = acc * c + cj
    return acc


def domain_map(f: _DensePoly, target: type, p: int | None = None) -> _DensePoly:
    """Coefficient-wise image of f in the ``target`` polynomial class.

    Supported maps: Z -> Z/pZ, Q, Z[i]; Z[i] -> Z (imaginary parts must
    vanish); Q -> Z (denominators must be 1).  Identity maps are allowed.
    """
    src = type(f)
    if target is ModPoly:
        if p is None:
            raise ValueError("reduction to Z/pZ needs the modulus p")
        if src is ModPoly:
            if f.p != p:
                raise ModulusMismatch(f"mod {f.p} vs mod {p}")
            return f
        if src is RatPoly:
            f = domain_map(f, IntPoly)
        elif src is GaussPoly:
            f = domain_map(f, IntPoly)
        return ModPoly(f.coeffs, p)
    if target is src:
        return f
    if src is IntPoly and target is RatPoly:
        return RatPoly._raw(list(f.coeffs), 1)
    if src is IntPoly and target is GaussPoly:
        return GaussPoly._from_parts(f, IntPoly())
    if src is GaussPoly and target is IntPoly:
        if not f.im.is_zero():
            raise NotRealResult(f"nonzero imaginary part {f.im}")
        return f.re
    if src is RatPoly and target is IntPoly:
        if f.denominator != 1:
            raise NotIntegral(f"denominator {f.denominator}")
        return IntPoly._raw(list(f._num))
    if src is ModPoly and target is IntPoly:
        return IntPoly._raw(list(f.coeffs))
    raise DomainMismatch(f"no map {src.__name__} -> {target.__name__}")

"""Factorization of fibotomic polynomials over prime fields.

The engine is the usual three-stage pipeline: squarefree decomposition,
distinct-degree factorization and equal-degree splitting (Cantor-Zassenhaus
for odd p, trace splitting for p = 2).  Powers of the Frobenius map are
applied through the matrix of ``g -> g**p mod f``, which makes both
``x**(p**i) mod f`` and the norm ``a**((p**d - 1)/(p - 1))`` cheap.

On top of it sit the predicted factor shapes and a reconciler comparing
prediction, congruence search and observed factorization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

from . import numth
from .errors import (
    BadInput,
    DegreeTooSmall,
    DomainTooSmall,
    InternalInvariantViolation,
    NotMonic,
    NotPrime,
)
from .families import fibotomic
from .polycore import ModPoly, domain_map

PRIME_POWER_CASE = "PrimePowerCase"
M_EQUALS_2_CASE = "MEquals2Case"


# ---------------------------------------------------------------------------
# factorization engine


def _require_monic(f: ModPoly) -> None:
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic mod {f.p}")


def _pth_root(f: ModPoly) -> ModPoly:
    """g with g(x)**p = f(x), valid when f' = 0 (so f(x) = g(x**p))."""
    p = f.p
    return ModPoly._raw(list(f.coeffs[::p]), p)


def squarefree_decompose(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Pairwise coprime squarefree parts g_i with f = prod g_i**e_i."""
    _require_monic(f)
    out: list[tuple[ModPoly, int]] = []
    _sqf(f, 1, out)
    out.sort(key=lambda t: (t[1], t[0].degree, t[0].coeffs))
    return out


def _sqf(f: ModPoly, scale: int, out: list) -> None:
    if f.degree < 1:
        return
    p = f.p
    df = f.derivative()
    if df.is_zero():
        _sqf(_pth_root(f), scale * p, out)
        return
    c = f.gcd(df)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i * scale))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        _sqf(_pth_root(c), scale * p, out)


class _Frobenius:
    """Matrix of g -> g**p modulo a fixed monic f."""

    def __init__(self, f: ModPoly):
        self.f = f
        self.p = f.p
        d = f.degree
        xp = ModPoly.x(f.p).powmod(f.p, f)
        rows = []
        r = ModPoly._raw([1], f.p)
        for _ in range(d):
            rows.append(list(r.coeffs) + [0] * (d - len(r.coeffs)))
            r = (r * xp) % f
        self.rows = rows
        self.d = d

    def __call__(self, g: ModPoly) -> ModPoly:
        p, d = self.p, self.d
        acc = [0] * d
        for c, row in zip(g.coeffs, self.rows):
            if c:
                for j in range(d):
                    acc[j] += c * row[j]
        return ModPoly._raw([a % p for a in acc], p)


def distinct_degree(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Split a squarefree monic f into (product of all degree-i factors, i)."""
    frob = _Frobenius(f)
    x = ModPoly.x(f.p) % f
    h = x
    rest = f
    out = []
    i = 0
    while rest.degree >= 2 * (i + 1):
        i += 1
        h = frob(h) % rest
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, i))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(rng: random.Random, deg: int, p: int) -> ModPoly:
    while True:
        a = ModPoly._raw([rng.randrange(p) for _ in range(deg)], p)
        if a.degree > 0:
            return a


def equal_degree(g: ModPoly, degree: int, rng: random.Random) -> list[ModPoly]:
    """Split g, a product of distinct monic irreducibles of one degree."""
    if g.degree == degree:
        return [g]
    p = g.p
    frob = _Frobenius(g)
    while True:
        a = _random_poly(rng, g.degree, p)
        t = a
        if p == 2:
            acc = a
            for _ in range(degree - 1):
                t = frob(t)
                acc = acc + t
            b = acc
        else:
            norm = a
            for _ in range(degree - 1):
                t = frob(t)
                norm = (norm * t) % g
            b = norm.powmod((p - 1) // 2, g) - 1
        d = g.gcd(b)
        if 0 < d.degree < g.degree:
            return equal_degree(d, degree, rng) + equal_degree(g.exact_div(d), degree, rng)


@dataclass(frozen=True)
class FactorShape:
    """Multiset of (degree, count, multiplicity) triples.

    ``special`` marks a prediction held at the congruence level only; its
    parts then describe the congruence form, not irreducible factors.
    """

    parts: tuple[tuple[int, int, int], ...]
    special: str | None = None

    def total_degree(self) -> int:
        return sum(d * c * e for d, c, e in self.parts)

    def __str__(self) -> str:
        body = " ".join(f"{c}x(deg{d})^{e}" for d, c, e in self.parts) or "1"
        return f"{self.special}[{body}]" if self.special else body


@dataclass
class ModFactorization:
    p: int
    input: ModPoly
    factors: tuple[tuple[ModPoly, int], ...]

    def product(self) -> ModPoly:
        acc = ModPoly._raw([1], self.p)
        for g, e in self.factors:
            acc = acc * g**e
        return acc

    def shape(self) -> FactorShape:
        counts: dict[tuple[int, int], int] = {}
        for g, e in self.factors:
            counts[(g.degree, e)] = counts.get((g.degree, e), 0) + 1
        return FactorShape(tuple(sorted((d, c, e) for (d, e), c in counts.items())))

    def __str__(self) -> str:
        return " * ".join(f"({g})" + (f"^{e}" if e > 1 else "") for g, e in self.factors) or "1"


def factor_mod_p(f: ModPoly, seed: int = 0) -> ModFactorization:
    """Complete monic irreducible factorization, deterministic for a given seed."""
    _require_monic(f)
    if f.degree < 1:
        raise DegreeTooSmall("factor_mod_p needs degree >= 1")
    rng = random.Random(seed)
    factors = []
    for part, e in squarefree_decompose(f):
        for g, d in distinct_degree(part):
            factors.extend((h, e) for h in equal_degree(g, d, rng))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return ModFactorization(f.p, f, tuple(factors))


# ---------------------------------------------------------------------------
# degree of the minimal polynomial of a root: formula and congruence search


def _check_pm(p: int, m: int) -> None:
    if not numth.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 3:
        raise BadInput(f"m must be >= 3, got {m}")
    if m % p == 0:
        raise BadInput(f"p={p} divides m={m}")


def delta_oracle(p: int, m: int, s: int) -> int:
    """Smallest exponent returning the s-th root to itself, by direct search.

    Odd p: smallest d with p**d = 1 (mod 4) and s p**d = +-s (mod 2m), or
    p**d = 3 (mod 4) and s p**d = m +- s (mod 2m).
    p = 2: smallest d with s 2**d = +-s (mod m).
    """
    _check_pm(p, m)
    if gcd(s, m) != 1:
        raise BadInput(f"gcd(s={s}, m={m}) != 1")
    if p == 2:
        bound = numth.mult_order(2, m)
        targets = {s % m, -s % m}
        for d in range(1, bound + 1):
            if s * pow(2, d, m) % m in targets:
                return d
    else:
        mm = 2 * m
        bound = 2 * numth.mult_order(p, mm)
        same = {s % mm, -s % mm}
        shifted = {(m + s) % mm, (m - s) % mm}
        for d in range(1, bound + 1):
            r4 = pow(p, d, 4)
            v = s * pow(p, d, mm) % mm
            if (r4 == 1 and v in same) or (r4 == 3 and v in shifted):
                return d
    raise InternalInvariantViolation(f"no exponent found for p={p}, m={m}, s={s}")


def delta_formula(p: int, m: int) -> tuple[int, str]:
    """Degree of the irreducible factors of Psi_m mod p, with the matched case."""
    _check_pm(p, m)
    if p == 2:
        u = numth.mult_order(2, m)
        if u % 2 == 0 and pow(2, u // 2, m) == m - 1:
            return u // 2, "p=2: u' even, 2^(u'/2) = -1 mod m"
        return u, "p=2: otherwise"
    mm = 2 * m
    u = numth.mult_order(p, mm)
    half = pow(p, u // 2, mm) if u % 2 == 0 else None
    if p % 4 == 1:
        if half == mm - 1:
            return u // 2, "p=1 mod 4, u even, p^(u/2) = -1"
        if u % 2:
            return u, "p=1 mod 4, u odd"
        return u, "p=1 mod 4, u even, p^(u/2) != -1"
    if u % 2:
        return 2 * u, "p=3 mod 4, u odd"
    if u % 4 == 0:
        if half == mm - 1:
            return u // 2, "p=3 mod 4, u=0 mod 4, p^(u/2) = -1"
        return u, "p=3 mod 4, u=0 mod 4, p^(u/2) != -1"
    if half in ((m + 1) % mm, (m - 1) % mm):
        return u // 2, "p=3 mod 4, u=2 mod 4, p^(u/2) = m+-1"
    return u, "p=3 mod 4, u=2 mod 4, p^(u/2) != m+-1"


# ---------------------------------------------------------------------------
# predictions and reconciliation


def special_form(n: int, p: int) -> ModPoly | None:
    """Congruence form of Psi_n mod p when n = p**k or 2 p**k; else None."""
    k, m = numth.prime_power_split(n, p)
    phi_pk = numth.totient(p**k)
    x = ModPoly.x(p)
    if m == 1:
        if p == 2:
            # x^2 + 4 = x^2 mod 2, and this also covers phi(2) = 1.
            return x**phi_pk
        return (x * x + 4) ** (phi_pk // 2)
    if m == 2:
        return x**phi_pk
    return None


def predict_shape(n: int, p: int) -> FactorShape:
    if n < 2:
        raise DomainTooSmall(f"n must be >= 2, got {n}")
    k, m = numth.prime_power_split(n, p)
    phi_pk = numth.totient(p**k)
    if m == 1:
        if p == 2:
            return FactorShape(((1, 1, phi_pk),), PRIME_POWER_CASE)
        return FactorShape(((2, 1, phi_pk // 2),), PRIME_POWER_CASE)
    if m == 2:
        return FactorShape(((1, 1, phi_pk),), M_EQUALS_2_CASE)
    delta, _ = delta_formula(p, m)
    phi_m = numth.totient(m)
    if p == 2:
        count, rem = divmod(phi_m, 2 * delta)
        mult = 2 * phi_pk
    else:
        count, rem = divmod(phi_m, delta)
        mult = phi_pk
    if rem:
        raise InternalInvariantViolation(f"delta={delta} does not divide phi({m})={phi_m}")
    return FactorShape(((delta, count, mult),))


@dataclass
class ReconciliationReport:
    n: int
    p: int
    k: int
    m: int
    predicted: FactorShape
    observed: FactorShape
    factorization: ModFactorization
    checks: dict[str, bool] = field(default_factory=dict)
    delta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [name for name, good in self.checks.items() if not good]


def reconcile(n: int, p: int, seed: int = 0) -> ReconciliationReport:
    """Compare predicted and observed factorizations of Psi_n mod p."""
    if n < 2:
        raise DomainTooSmall(f"n must be >= 2, got {n}")
    k, m = numth.prime_power_split(n, p)
    psi = domain_map(fibotomic(n), ModPoly, p)
    fact = factor_mod_p(psi, seed)
    predicted = predict_shape(n, p)
    observed = fact.shape()
    phi_n = numth.totient(n)
    checks = {
        "product": fact.product() == psi,
        "degree_predicted": predicted.total_degree() == phi_n,
        "degree_observed": observed.total_degree() == phi_n,
    }
    delta: dict = {}
    if m >= 2:
        psi_m = domain_map(fibotomic(m), ModPoly, p)
        checks["power_congruence"] = psi == psi_m ** numth.totient(p**k)
    if m <= 2:
        form = special_form(n, p)
        checks["special_congruence"] = psi == form
        checks["refines_special"] = fact.product() == form
    else:
        formula, label = delta_formula(p, m)
        oracle = {s: delta_oracle(p, m, s) for s in range(1, m) if gcd(s, m) == 1}
        degrees = sorted({g.degree for g, _ in fact.factors})
        delta = {
            "formula": formula,
            "case": label,
            "oracle": sorted(set(oracle.values())),
            "observed": degrees,
        }
        checks["shape"] = observed == predicted
        checks["delta_s_independent"] = len(set(oracle.values())) == 1
        checks["delta_agreement"] = set(oracle.values()) == {formula} and degrees == [formula]
    return ReconciliationReport(n, p, k, m, predicted, observed, fact, checks, delta)

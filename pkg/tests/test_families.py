import cmath
import math
import threading

import pytest
from hypothesis import given, strategies as st

from fibotomic import families, numth
from fibotomic.errors import BadInput, DomainTooSmall, NotPrime
from fibotomic.families import (
    FamilyCache,
    cyclotomic,
    fibonacci,
    fibotomic,
    homogenize,
    specialize_y,
    verify_psi_pm,
)
from fibotomic.polycore import IntPoly

X = IntPoly.x()


def psi_by_division(n):
    """Independent path: F_n divided by Psi_d for every proper divisor d."""
    acc = fibonacci(n)
    for d in numth.divisors(n)[:-1]:
        acc = acc.exact_div(psi_by_division(d))
    return acc


def test_fibonacci_examples():
    assert fibonacci(1) == IntPoly([1])
    assert fibonacci(2) == X
    assert fibonacci(6) == IntPoly([0, 3, 0, 4, 0, 1])


def test_fibotomic_examples():
    assert fibotomic(1) == IntPoly([1])
    assert fibotomic(6) == X**2 + 3
    assert fibotomic(12) == X**4 + 4 * X**2 + 1


def test_cyclotomic_examples():
    assert cyclotomic(1) == X - 1
    assert cyclotomic(6) == X**2 - X + 1
    assert cyclotomic(8) == X**4 + 1


@pytest.mark.parametrize("n, c", [(2, 0), (18, 3), (15, 1), (1, 1), (4, 2), (16, 2)])
def test_psi_constant_term_examples(n, c):
    assert families.psi_constant_term(n) == c


@pytest.mark.parametrize("n, v", [(9, 3), (6, 1), (2, 2), (32, 2)])
def test_phi_at_one_examples(n, v):
    assert families.phi_at_one(n) == v


def test_phi_at_one_domain():
    with pytest.raises(DomainTooSmall):
        families.phi_at_one(1)


def test_bad_index():
    with pytest.raises(DomainTooSmall):
        fibotomic(0)
    with pytest.raises(DomainTooSmall):
        fibonacci(-3)


@pytest.mark.parametrize("n", range(1, 61))
def test_fibotomic_matches_division_oracle(n):
    assert fibotomic(n) == psi_by_division(n)


@pytest.mark.parametrize("n", [5, 7, 9, 12, 15, 20])
def test_fibotomic_roots_numeric(n):
    # F_n has roots 2i cos(k pi / n), 0 < k < n; Psi_n keeps those with gcd(k, n) = 1.
    psi = fibotomic(n)
    for k in range(1, n):
        root = 2j * math.cos(k * math.pi / n)
        value = sum(c * root**j for j, c in enumerate(psi.coeffs))
        if math.gcd(k, n) == 1:
            assert abs(value) < 1e-6 * (1 + max(abs(c) for c in psi.coeffs)) * 4**n
        else:
            assert abs(value) > 1e-9


@given(st.integers(1, 120))
def test_cyclotomic_product(n):
    acc = IntPoly([1])
    for d in numth.divisors(n):
        acc = acc * cyclotomic(d)
    assert acc == X**n - 1


@given(st.integers(3, 200))
def test_fibotomic_even_and_monic(n):
    psi = fibotomic(n)
    assert psi.degree == numth.totient(n)
    assert psi.lc == 1
    assert not any(psi.coeffs[1::2])


def test_homogenize_examples():
    v = homogenize("fibotomic", 4)
    assert v.base == X**2 + 2 and v.total_degree == 2
    assert str(v) == "x^2 + 2y^2"
    one = homogenize("fibotomic", 1)
    assert one.base == IntPoly([1]) and one.total_degree == 0
    assert str(homogenize("fibonacci", 3)) == "x^2 + y^2"
    with pytest.raises(BadInput):
        homogenize("lucas", 3)


def test_specialize_examples():
    v4 = homogenize("fibotomic", 4)
    assert specialize_y(v4, 1) == X**2 + 2
    assert specialize_y(v4, 3) == X**2 + 18
    assert specialize_y(homogenize("fibotomic", 6), 2) == X**2 + 12


@given(st.integers(2, 40), st.integers(-5, 5), st.integers(-5, 5))
def test_homogeneous_scaling(n, x0, y0):
    # H(x0, y0) evaluated from the terms equals the specialization at x0
    v = homogenize("fibotomic", n)
    direct = sum(c * x0**i * y0**k for c, i, k in v.terms())
    assert specialize_y(v, y0)(x0) == direct


@pytest.mark.parametrize(
    "p, m, case, value",
    [
        (2, 4, "a", X**4 + 4 * X**2 + 2),
        (2, 3, "b", X**2 + 3),
        (3, 3, "c", IntPoly([1, 0, 9, 0, 6, 0, 1])),
        (3, 2, "d", fibotomic(6)),
    ],
)
def test_psi_pm_examples(p, m, case, value):
    rep = verify_psi_pm(p, m)
    assert rep.ok and rep.case == case
    assert rep.lhs == value == rep.rhs


def test_psi_pm_m2_sign_case():
    rep = verify_psi_pm(2, 2)
    assert rep.ok and rep.lhs == X**2 + 2


def test_psi_pm_errors():
    with pytest.raises(NotPrime):
        verify_psi_pm(4, 3)
    with pytest.raises(DomainTooSmall):
        verify_psi_pm(3, 1)


def test_psi_pm_pairs():
    assert families.psi_pm_pairs(8) == [(2, 2), (2, 3), (2, 4), (3, 2)]


def test_cache_concurrent_inserts_agree():
    calls = []

    def build(n):
        calls.append(n)
        return psi_by_division(n)

    cache = FamilyCache(build)
    out = []
    threads = [threading.Thread(target=lambda: out.append(cache(30))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(v is out[0] for v in out)
    assert 30 in cache
    cache.clear()
    assert 30 not in cache

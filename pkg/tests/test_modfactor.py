import itertools
import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from fibotomic import modfactor
from fibotomic.errors import BadInput, DomainTooSmall, NotMonic, NotPrime
from fibotomic.families import fibotomic
from fibotomic.modfactor import (
    FactorShape,
    delta_formula,
    delta_oracle,
    factor_mod_p,
    predict_shape,
    reconcile,
    squarefree_decompose,
)
from fibotomic.polycore import ModPoly, domain_map


def monics(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield ModPoly([*tail, 1], p)


def brute_factor(f):
    """Trial division by every monic polynomial, smallest degree first."""
    p, out = f.p, []
    d = 1
    while f.degree >= 1:
        if 2 * d > f.degree:
            out.append((f, 1))
            break
        for g in monics(p, d):
            q, r = f.divmod(g)
            if r.is_zero():
                out.append((g, 1))
                f = q
                break
        else:
            d += 1
    merged = {}
    for g, _ in out:
        merged[g] = merged.get(g, 0) + 1
    return sorted(merged.items(), key=lambda t: (t[0].degree, t[0].coeffs))


def psi_mod(n, p):
    return domain_map(fibotomic(n), ModPoly, p)


def frobenius_degree(f):
    """Smallest d with x^(p^d) = x mod f; the lcm of the irreducible degrees."""
    x = ModPoly.x(f.p)
    y = x % f
    for d in range(1, 2 * f.degree + 1):
        y = y.powmod(f.p, f)
        if y == x % f:
            return d
    raise AssertionError("unreachable")


# -- worked examples --------------------------------------------------------


def test_squarefree_examples():
    assert squarefree_decompose(ModPoly([1, 0, 1, 0, 1], 2)) == [(ModPoly([1, 1, 1], 2), 2)]
    f = ModPoly([1, 1, 0, 1], 3)
    assert squarefree_decompose(f) == [(f, 1)]
    assert squarefree_decompose(ModPoly([0, 0, 1], 3)) == [(ModPoly([0, 1], 3), 2)]


def test_factor_examples():
    fact = factor_mod_p(psi_mod(5, 2))
    assert psi_mod(5, 2) == ModPoly([1, 0, 1, 0, 1], 2)
    assert fact.factors == ((ModPoly([1, 1, 1], 2), 2),)
    assert factor_mod_p(psi_mod(3, 2)).factors == ((ModPoly([1, 1], 2), 2),)
    f7 = psi_mod(5, 7)
    assert f7 == ModPoly([1, 0, 3, 0, 1], 7)
    parts = factor_mod_p(f7).factors
    assert [(g.degree, e) for g, e in parts] == [(2, 1), (2, 1)]
    assert parts[0][0] != parts[1][0]
    assert parts == tuple(brute_factor(f7))


def test_factor_requires_monic():
    with pytest.raises(NotMonic):
        factor_mod_p(ModPoly([1, 2], 3))


@pytest.mark.parametrize("p, m, s, d", [(7, 5, 1, 2), (3, 8, 1, 4), (2, 5, 1, 2)])
def test_delta_oracle_examples(p, m, s, d):
    assert delta_oracle(p, m, s) == d


@pytest.mark.parametrize("p, m, d", [(7, 5, 2), (3, 8, 4), (2, 3, 1)])
def test_delta_formula_examples(p, m, d):
    assert delta_formula(p, m)[0] == d


def test_delta_domain():
    with pytest.raises(BadInput):
        delta_formula(3, 6)
    with pytest.raises(BadInput):
        delta_formula(5, 2)
    with pytest.raises(NotPrime):
        delta_oracle(9, 5, 1)
    with pytest.raises(BadInput):
        delta_oracle(7, 9, 3)


def test_predict_shape_examples():
    assert predict_shape(5, 2) == FactorShape(((2, 1, 2),))
    nine = predict_shape(9, 3)
    assert nine.special == modfactor.PRIME_POWER_CASE and nine.parts == ((2, 1, 3),)
    assert predict_shape(8, 3) == FactorShape(((4, 1, 1),))
    assert str(predict_shape(5, 2)) == "1x(deg2)^2"
    with pytest.raises(DomainTooSmall):
        predict_shape(1, 3)


def test_psi9_mod3_special():
    assert psi_mod(9, 3) == ModPoly([1, 0, 1], 3) ** 3
    assert modfactor.special_form(9, 3) == ModPoly([1, 0, 1], 3) ** 3


def test_psi8_mod3_irreducible():
    f = psi_mod(8, 3)
    assert f == ModPoly([2, 0, 1, 0, 1], 3)
    assert brute_factor(f) == [(f, 1)]
    assert factor_mod_p(f).factors == ((f, 1),)


@pytest.mark.parametrize(
    "n, p, special",
    [(12, 2, None), (5, 5, ModPoly([4, 0, 1], 5) ** 2), (6, 3, ModPoly([0, 0, 1], 3))],
)
def test_reconcile_examples(n, p, special):
    rep = reconcile(n, p)
    assert rep.ok, rep.failed()
    if special is not None:
        assert psi_mod(n, p) == special


def test_reconcile_12_2_shape():
    rep = reconcile(12, 2)
    assert rep.observed == FactorShape(((1, 1, 4),))
    assert rep.factorization.factors == ((ModPoly([1, 1], 2), 4),)
    assert rep.delta["formula"] == 1


def test_reconcile_5_5_factors():
    rep = reconcile(5, 5)
    assert rep.factorization.factors == ((ModPoly([1, 1], 5), 2), (ModPoly([4, 1], 5), 2))


# -- oracle comparisons -----------------------------------------------------


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=1, max_size=6), st.integers(0, 2**32))
def test_factor_matches_brute_force(p, tail, seed):
    f = ModPoly([*tail, 1], p)
    fact = factor_mod_p(f, seed)
    assert list(fact.factors) == brute_factor(f)
    assert fact.product() == f


@given(st.sampled_from([7, 11, 13]), st.integers(1, 10**6))
def test_factor_product_random(p, seed):
    rng = random.Random(seed)
    f = ModPoly([rng.randrange(p) for _ in range(12)] + [1], p)
    f = f * f * ModPoly([1, 1], p)
    assert factor_mod_p(f, seed).product() == f


def test_seed_independence_of_result():
    f = psi_mod(91, 13)
    base = factor_mod_p(f, 0).factors
    for seed in (1, 7, 2**40):
        assert factor_mod_p(f, seed).factors == base


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_delta_against_frobenius_order(p):
    for m in range(3, 60):
        if m % p == 0:
            continue
        delta, _ = delta_formula(p, m)
        sqf = squarefree_decompose(psi_mod(m, p))
        assert all(frobenius_degree(g) == delta for g, _ in sqf), (p, m)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_delta_oracle_constant_over_s(p):
    for m in range(3, 80):
        if m % p == 0:
            continue
        vals = {delta_oracle(p, m, s) for s in range(1, m) if gcd(s, m) == 1}
        assert vals == {delta_formula(p, m)[0]}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_reconcile_sweep_small(p):
    reports = [reconcile(n, p) for n in range(2, 50)]
    assert [(r.n, r.failed()) for r in reports if not r.ok] == []

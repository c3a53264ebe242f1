from fractions import Fraction

import pytest

from fibotomic import bridge
from fibotomic.bridge import OmegaElement, ext_pow, omega, omega_inv
from fibotomic.errors import DomainTooSmall, NotInvertible, NotPrime
from fibotomic.families import fibotomic
from fibotomic.polycore import IntPoly, RatPoly

X = IntPoly.x()


def lift(f):
    return OmegaElement.lift(f)


def test_omega_components():
    w = omega()
    assert w.a == RatPoly([0, Fraction(1, 2)]) and w.b == RatPoly([Fraction(1, 2)])


def test_unit_identities():
    w, wi = omega(), omega_inv()
    assert w * wi == lift(1)
    assert w - wi == lift(X)
    assert w + wi == OmegaElement.t()
    assert w.inverse() == wi


def test_powers():
    w = omega()
    assert ext_pow(w, 2) + ext_pow(w, -2) == lift(X**2 + 2)
    assert ext_pow(w, 0) == lift(1)
    assert ext_pow(w, 3) - ext_pow(w, -3) == lift(X**3 + 3 * X)
    assert ext_pow(-w, -1) == -omega_inv()


def test_t_squared_reduces():
    t = OmegaElement.t()
    assert t * t == lift(X**2 + 4)


def test_non_unit_has_no_inverse():
    with pytest.raises(NotInvertible):
        ext_pow(OmegaElement.t(), -1)
    with pytest.raises(NotInvertible):
        ext_pow(lift(X), -2)


def test_bridge_small_cases():
    w = omega()
    rep3 = bridge.verify_bridge(3)
    assert rep3.ok and rep3.lhs == ext_pow(w, 2) * lift(X**2 + 1)
    rep2 = bridge.verify_bridge(2)
    assert rep2.ok and -rep2.lhs == w * lift(X)
    assert bridge.verify_bridge(6).ok


def test_webb_parberry_small_cases():
    w, wi = omega(), omega_inv()
    assert bridge.verify_webb_parberry(1).ok
    rep3 = bridge.verify_webb_parberry(3)
    assert rep3.ok and rep3.rhs == ext_pow(w, 3) + ext_pow(w, -3)
    assert (w + wi) * lift(X**2 + 1) == rep3.rhs
    rep6 = bridge.verify_webb_parberry(6)
    assert rep6.ok and rep6.rhs == ext_pow(w, 6) - ext_pow(w, -6)


@pytest.mark.parametrize("p, psi", [(3, X**2 + 3), (5, IntPoly([5, 0, 5, 0, 1])), (7, fibotomic(14))])
def test_omega_power_examples(p, psi):
    rep = bridge.verify_omega_power(p)
    assert rep.ok and rep.lhs == lift(X * psi)


def test_bridge_errors():
    with pytest.raises(DomainTooSmall):
        bridge.verify_bridge(1)
    with pytest.raises(NotPrime):
        bridge.verify_omega_power(2)
    with pytest.raises(NotPrime):
        bridge.verify_omega_power(9)


@pytest.mark.parametrize("n", [2, 5, 12, 30])
def test_only_dyadic_denominators(n):
    rep = bridge.verify_bridge(n)
    assert rep.extra["dyadic"]


def test_wrong_sign_detected():
    # Flipping the n=2 sign must break equality, so the check is not vacuous.
    w = omega()
    lhs = bridge.ext_eval(bridge.cyclotomic(2), -(w * w))
    assert lhs != ext_pow(w, 1) * lift(fibotomic(2))

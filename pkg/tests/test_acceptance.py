"""Acceptance gate: one test per criterion, each reporting PASS/FAIL in the summary.

Every check is an exact integer or polynomial equality.  Runtime budgets are
asserted as stated for each criterion.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from fibotomic import bridge, cli, families, modfactor, numth, resdisc
from fibotomic.families import cyclotomic, fibonacci, fibotomic, homogenize, specialize_y
from fibotomic.polycore import IntPoly

MODP_PRIMES = (2, 3, 5, 7, 11, 13, 101)


_DISC_CACHE: dict[int, tuple[int, int]] = {}


def engine_discs(n):
    """Subresultant discriminants of (Psi_n, Phi_n), shared by criteria 4 and 5."""
    if n not in _DISC_CACHE:
        _DISC_CACHE[n] = (
            resdisc.discriminant(fibotomic(n), "subresultant"),
            resdisc.discriminant(cyclotomic(n), "subresultant"),
        )
    return _DISC_CACHE[n]


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def finish(state, timer, budget, failures, checked):
    state["detail"] = f"{checked} checks, {len(failures)} failed, {timer.elapsed:.1f}s (budget {budget}s)"
    assert failures == [], failures[:5]
    assert timer.elapsed < budget


@pytest.mark.criterion(1)
def test_c01_product_identity(criterion):
    failures = []
    with Timer() as t:
        for n in range(1, 301):
            acc = IntPoly([1])
            for d in numth.divisors(n):
                acc = acc * fibotomic(d)
            if acc != fibonacci(n):
                failures.append(n)
    finish(criterion, t, 10, failures, 300)


@pytest.mark.criterion(2)
def test_c02_degree_parity_monic(criterion):
    failures = []
    with Timer() as t:
        for n in range(2, 301):
            psi = fibotomic(n)
            ok = psi.degree == numth.totient(n) and psi.lc == 1
            if n >= 3:
                ok = ok and not any(psi.coeffs[1::2])
            if not ok:
                failures.append(n)
    finish(criterion, t, 5, failures, 299)


@pytest.mark.criterion(3)
def test_c03_constant_terms(criterion):
    failures = []
    with Timer() as t:
        for n in range(1, 1001):
            if fibotomic(n)(0) != families.psi_constant_term(n):
                failures.append(("psi", n))
        for n in range(2, 1001):
            if cyclotomic(n)(1) != families.phi_at_one(n):
                failures.append(("phi", n))
    finish(criterion, t, 30, failures, 1999)


@pytest.mark.criterion(4)
def test_c04_discriminants(criterion):
    failures, checked = [], 0
    with Timer() as t:
        for n in range(2, 121):
            psi, phi = fibotomic(n), cyclotomic(n)
            d_psi, d_phi = engine_discs(n)
            checks = {
                "psi_formula": d_psi == resdisc.disc_formula_psi(n),
                "phi_formula": d_phi == resdisc.disc_formula_phi(n),
                "psi_sylvester": d_psi == resdisc.discriminant(psi, "sylvester"),
                "phi_sylvester": d_phi == resdisc.discriminant(phi, "sylvester"),
            }
            checked += len(checks)
            failures += [(name, n) for name, good in checks.items() if not good]
    finish(criterion, t, 120, failures, checked)


@pytest.mark.criterion(5)
def test_c05_discriminant_ratio(criterion):
    failures = []
    warm = all(n in _DISC_CACHE for n in range(2, 121))
    with Timer() as t:
        for n in range(2, 121):
            pp = numth.prime_power(n)
            num, den = 2 ** numth.totient(n), (pp[0] if pp else 1)
            if resdisc.disc_ratio(n) != Fraction(num, den):
                failures.append(("closed form", n))
            d_psi, d_phi = engine_discs(n)
            if d_psi * den != d_phi * num:
                failures.append(("engine", n))
    # the 5 s budget presumes the discriminants from criterion 4 are at hand
    finish(criterion, t, 5 if warm else 125, failures, 2 * 119)


@pytest.mark.criterion(6)
def test_c06_resultants(criterion):
    failures, checked = [], 0
    with Timer() as t:
        for n in range(3, 81):
            for m in range(2, n):
                if resdisc.resultant(fibotomic(m), fibotomic(n)) != resdisc.res_formula_psi(m, n):
                    failures.append(("psi", m, n))
                if resdisc.resultant(cyclotomic(m), cyclotomic(n)) != resdisc.res_formula_phi(m, n):
                    failures.append(("phi", m, n))
                checked += 2
    finish(criterion, t, 120, failures, checked)


@pytest.mark.criterion(7)
def test_c07_bridge(criterion):
    failures, checked = [], 0
    with Timer() as t:
        reports = [bridge.verify_bridge(n) for n in range(2, 81)]
        reports += [bridge.verify_webb_parberry(n) for n in range(1, 101)]
        reports += [bridge.verify_omega_power(p) for p in range(3, 32) if numth.is_prime(p)]
        for rep in reports:
            checked += 1
            if not (rep.ok and rep.extra["dyadic"]):
                failures.append((rep.check, rep.params))
    finish(criterion, t, 60, failures, checked)


@pytest.mark.criterion(8)
def test_c08_psi_pm_identities(criterion):
    failures, cases = [], set()
    with Timer() as t:
        pairs = families.psi_pm_pairs(150)
        for p, m in pairs:
            rep = families.verify_psi_pm(p, m)
            cases.add(rep.case)
            if not rep.ok:
                failures.append((p, m, rep.case))
    assert cases == {"a", "b", "c", "d"}
    finish(criterion, t, 60, failures, len(pairs))


@pytest.mark.criterion(9)
def test_c09_modp_sweep(criterion):
    failures, checked = [], 0
    with Timer() as t:
        for p in MODP_PRIMES:
            for n in range(2, 121):
                rep = modfactor.reconcile(n, p, seed=0)
                required = {"product", "degree_predicted", "degree_observed"}
                if rep.m >= 2:
                    required.add("power_congruence")
                if rep.m <= 2:
                    required |= {"special_congruence", "refines_special"}
                else:
                    required |= {"shape", "delta_s_independent", "delta_agreement"}
                missing = required - rep.checks.keys()
                checked += len(rep.checks)
                if missing or not rep.ok:
                    failures.append((n, p, sorted(missing) or rep.failed()))
    finish(criterion, t, 300, failures, checked)


@pytest.mark.criterion(10)
def test_c10_homogenized(criterion):
    failures, checked = [], 0
    with Timer() as t:
        for n in range(2, 61):
            view = homogenize("fibotomic", n)
            exp, value = resdisc.homog_disc_psi(n)
            assert exp == numth.totient(n) * (numth.totient(n) - 1)
            base = resdisc.discriminant(fibotomic(n))
            for y0 in (2, 3):
                got = resdisc.discriminant(specialize_y(view, y0))
                checked += 1
                if got != y0**exp * base or value != base:
                    failures.append(("disc", n, y0))
        for n in range(3, 41):
            for m in range(2, n):
                exp, value = resdisc.homog_res_psi(m, n)
                base = resdisc.resultant(fibotomic(m), fibotomic(n))
                vm, vn = homogenize("fibotomic", m), homogenize("fibotomic", n)
                for y0 in (2, 3):
                    got = resdisc.resultant(specialize_y(vm, y0), specialize_y(vn, y0))
                    checked += 1
                    if got != y0 ** (numth.totient(m) * numth.totient(n)) * base or value != base:
                        failures.append(("res", m, n, y0))
    finish(criterion, t, 120, failures, checked)


@pytest.mark.criterion(11)
def test_c11_cli_contract(criterion, monkeypatch, capsys):
    failures = []
    with Timer() as t:
        proc = subprocess.run(
            [sys.executable, "-m", "fibotomic", "verify", "all", "--max-n", "60"],
            capture_output=True, text=True, check=False,
        )
        if proc.returncode != 0:
            failures.append(("verify all exit", proc.returncode))
        baseline = proc.stdout

        jobs_out = subprocess.run(
            [sys.executable, "-m", "fibotomic", "verify", "all", "--max-n", "60", "--jobs", "3"],
            capture_output=True, text=True, check=False,
        )
        if jobs_out.stdout != baseline or jobs_out.returncode != 0:
            failures.append("jobs output differs")

        for argv in (
            ["verify", "all", "--max-n", "12", "--format", "json"],
            ["poly", "psi", "60", "--format", "json"],
            ["factor", "77", "13", "--format", "json"],
            ["table", "res", "--max-n", "8", "--format", "json"],
        ):
            cli.main(argv)
            raw = capsys.readouterr().out
            if cli.dump_record(json.loads(raw)) + "\n" != raw:
                failures.append(("round trip", argv[0]))

        real = resdisc.disc_formula_psi
        monkeypatch.setattr(resdisc, "disc_formula_psi", lambda n: real(n) + (n == 13))
        code = cli.main(["verify", "all", "--max-n", "60"])
        capsys.readouterr()
        if code != 1:
            failures.append(("corrupted closed form exit", code))
    finish(criterion, t, 120, failures, 7)

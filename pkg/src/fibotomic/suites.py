"""Verification suites behind ``fibotomic verify``.

A suite expands into a list of picklable tasks ``(suite, args)``.  Each task
yields one or more ``CheckOutcome`` rows.  Tasks are independent, so they can
be farmed out to worker processes; results come back in task order, which
keeps the aggregated summary identical for any ``jobs`` value.

Closed forms are looked up as ``resdisc.<name>`` at call time (never bound
at import), so replacing one on the module is seen by every suite.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from . import bridge, families, modfactor, numth, resdisc
from .errors import FibotomicError
from .polycore import IntPoly

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 101)
SUITE_NAMES = ("product", "constant", "identities", "disc", "res", "bridge", "modp", "homog")
HOMOG_Y0 = (2, 3)


class CheckOutcome(NamedTuple):
    check: str
    instance: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 60
    primes: tuple[int, ...] = DEFAULT_PRIMES
    seed: int = 0
    jobs: int = 1


@dataclass
class CheckSummary:
    check: str
    run: int = 0
    passed: int = 0
    first_failure: str | None = None

    @property
    def failed(self) -> int:
        return self.run - self.passed


@dataclass
class SuiteResult:
    summaries: list[CheckSummary] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.summaries)


# ---------------------------------------------------------------------------
# task bodies


def _product(n: int) -> list[CheckOutcome]:
    psi_prod = IntPoly([1])
    for d in numth.divisors(n):
        psi_prod = psi_prod * families.fibotomic(d)
    out = [CheckOutcome("product", f"n={n}", psi_prod == families.fibonacci(n))]
    if n >= 2:
        psi = families.fibotomic(n)
        phi = numth.totient(n)
        shape_ok = psi.degree == phi and psi.lc == 1
        if n >= 3:
            shape_ok = shape_ok and not any(psi.coeffs[phi - 1 :: -2])
        out.append(CheckOutcome("degree_parity_monic", f"n={n}", shape_ok))
    return out


def _constant(n: int) -> list[CheckOutcome]:
    got = families.fibotomic(n)(0)
    want = families.psi_constant_term(n)
    out = [CheckOutcome("psi_constant", f"n={n}", got == want, f"{got} != {want}")]
    if n >= 2:
        got = families.cyclotomic(n)(1)
        want = families.phi_at_one(n)
        out.append(CheckOutcome("phi_at_one", f"n={n}", got == want, f"{got} != {want}"))
    return out


def _identities(p: int, m: int) -> list[CheckOutcome]:
    rep = families.verify_psi_pm(p, m)
    return [CheckOutcome(f"psi_pm_{rep.case}", f"p={p},m={m}", rep.ok, rep.detail)]


def _disc(n: int) -> list[CheckOutcome]:
    psi, phi = families.fibotomic(n), families.cyclotomic(n)
    d_psi = resdisc.discriminant(psi, "subresultant")
    d_psi_syl = resdisc.discriminant(psi, "sylvester")
    d_phi = resdisc.discriminant(phi, "subresultant")
    d_phi_syl = resdisc.discriminant(phi, "sylvester")
    f_psi, f_phi = resdisc.disc_formula_psi(n), resdisc.disc_formula_phi(n)
    ratio = resdisc.disc_ratio(n)
    tag = f"n={n}"
    return [
        CheckOutcome("disc_psi_formula", tag, d_psi == f_psi, f"engine {d_psi} formula {f_psi}"),
        CheckOutcome("disc_phi_formula", tag, d_phi == f_phi, f"engine {d_phi} formula {f_phi}"),
        CheckOutcome(
            "disc_cross_engine", tag, d_psi == d_psi_syl and d_phi == d_phi_syl,
            f"psi {d_psi}/{d_psi_syl} phi {d_phi}/{d_phi_syl}",
        ),
        CheckOutcome(
            "disc_ratio", tag, d_psi * ratio.denominator == d_phi * ratio.numerator,
            f"ratio {ratio}",
        ),
    ]


def _res(m: int, n: int) -> list[CheckOutcome]:
    tag = f"m={m},n={n}"
    r_psi = resdisc.resultant(families.fibotomic(m), families.fibotomic(n))
    r_phi = resdisc.resultant(families.cyclotomic(m), families.cyclotomic(n))
    f_psi, f_phi = resdisc.res_formula_psi(m, n), resdisc.res_formula_phi(m, n)
    return [
        CheckOutcome("res_psi_formula", tag, r_psi == f_psi, f"engine {r_psi} formula {f_psi}"),
        CheckOutcome("res_phi_formula", tag, r_phi == f_phi, f"engine {r_phi} formula {f_phi}"),
    ]


def _report_outcome(rep) -> CheckOutcome:
    tag = ",".join(f"{k}={v}" for k, v in rep.params.items())
    ok = rep.ok and rep.extra.get("dyadic", True)
    return CheckOutcome(rep.check, tag, ok, rep.detail or ("" if rep.ok else "non-dyadic"))


def _bridge(kind: str, n: int) -> list[CheckOutcome]:
    fn = {
        "bridge": bridge.verify_bridge,
        "webb_parberry": bridge.verify_webb_parberry,
        "omega_power": bridge.verify_omega_power,
    }[kind]
    return [_report_outcome(fn(n))]


def _modp(n: int, p: int, seed: int) -> list[CheckOutcome]:
    rep = modfactor.reconcile(n, p, seed)
    return [
        CheckOutcome(f"modp_{name}", f"n={n},p={p}", good, f"observed {rep.observed}, predicted {rep.predicted}")
        for name, good in rep.checks.items()
    ]


def _homog_disc(n: int) -> list[CheckOutcome]:
    view = families.homogenize("fibotomic", n)
    exp, value = resdisc.homog_disc_psi(n)
    out = []
    for y0 in HOMOG_Y0:
        got = resdisc.discriminant(families.specialize_y(view, y0))
        want = y0**exp * value
        out.append(CheckOutcome("homog_disc", f"n={n},y0={y0}", got == want, f"{got} != {want}"))
    return out


def _homog_res(m: int, n: int) -> list[CheckOutcome]:
    vm, vn = families.homogenize("fibotomic", m), families.homogenize("fibotomic", n)
    exp, value = resdisc.homog_res_psi(m, n)
    out = []
    for y0 in HOMOG_Y0:
        got = resdisc.resultant(families.specialize_y(vm, y0), families.specialize_y(vn, y0))
        want = y0**exp * value
        out.append(CheckOutcome("homog_res", f"m={m},n={n},y0={y0}", got == want, f"{got} != {want}"))
    return out


_BODIES: dict[str, Callable[..., list[CheckOutcome]]] = {
    "product": _product,
    "constant": _constant,
    "identities": _identities,
    "disc": _disc,
    "res": _res,
    "bridge": _bridge,
    "modp": _modp,
    "homog_disc": _homog_disc,
    "homog_res": _homog_res,
}


def run_task(task: tuple[str, tuple]) -> list[CheckOutcome]:
    body, args = task
    try:
        return _BODIES[body](*args)
    except FibotomicError as exc:
        return [CheckOutcome(f"{body}_error", repr(args), False, f"{type(exc).__name__}: {exc}")]


# ---------------------------------------------------------------------------
# task lists


def _odd_primes_upto(limit: int) -> list[int]:
    return [p for p in range(3, limit + 1) if numth.is_prime(p)]


def build_tasks(suite: str, cfg: SuiteConfig) -> list[tuple[str, tuple]]:
    N = cfg.max_n
    if suite == "product":
        return [("product", (n,)) for n in range(1, N + 1)]
    if suite == "constant":
        return [("constant", (n,)) for n in range(1, N + 1)]
    if suite == "identities":
        return [("identities", pm) for pm in families.psi_pm_pairs(N)]
    if suite == "disc":
        return [("disc", (n,)) for n in range(2, N + 1)]
    if suite == "res":
        return [("res", (m, n)) for n in range(3, N + 1) for m in range(2, n)]
    if suite == "bridge":
        return (
            [("bridge", ("bridge", n)) for n in range(2, N + 1)]
            + [("bridge", ("webb_parberry", n)) for n in range(1, N + 1)]
            + [("bridge", ("omega_power", p)) for p in _odd_primes_upto(N // 2)]
        )
    if suite == "modp":
        return [("modp", (n, p, cfg.seed)) for p in cfg.primes for n in range(2, N + 1)]
    if suite == "homog":
        return [("homog_disc", (n,)) for n in range(2, N + 1)] + [
            ("homog_res", (m, n)) for n in range(3, N + 1) for m in range(2, n)
        ]
    raise ValueError(f"unknown suite {suite!r}")


def _execute(tasks: list[tuple[str, tuple]], jobs: int) -> Iterable[list[CheckOutcome]]:
    if jobs <= 1 or len(tasks) < 2:
        return map(run_task, tasks)
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map() yields in submission order regardless of completion order
        return list(pool.map(run_task, tasks, chunksize=chunk))


def run_suite(suite: str, cfg: SuiteConfig) -> dict[str, SuiteResult]:
    """Run one suite, or every suite for ``"all"``; keyed by suite name."""
    names = SUITE_NAMES if suite == "all" else (suite,)
    out = {}
    for name in names:
        res = SuiteResult()
        index: dict[str, CheckSummary] = {}
        for outcomes in _execute(build_tasks(name, cfg), cfg.jobs):
            for oc in outcomes:
                summ = index.get(oc.check)
                if summ is None:
                    summ = index[oc.check] = CheckSummary(oc.check)
                    res.summaries.append(summ)
                summ.run += 1
                if oc.ok:
                    summ.passed += 1
                elif summ.first_failure is None:
                    summ.first_failure = f"{oc.instance}: {oc.detail}" if oc.detail else oc.instance
        out[name] = res
    return out

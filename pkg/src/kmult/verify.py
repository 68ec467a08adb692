"""Executable property suites over the catalog and a seeded battery.

Each suite returns a SuiteResult with one named check per assertion;
the CLI maps a failed check to exit status 1.  Battery members can be
fanned out to worker threads (KMULT_THREADS), with results assembled
in model order.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from . import fock, hilbert, koszul, models
from .modules import box_quotient_dim, quotient_by_first, slice_quotient_dim
from .util import is_finite

log = logging.getLogger(__name__)


@dataclass
class Check:
    desc: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list

    @property
    def passed(self):
        return all(c.ok for c in self.checks)


def _threads():
    try:
        n = int(os.environ.get("KMULT_THREADS", "1"))
    except ValueError:
        n = 1
    if n == 0:
        n = os.cpu_count() or 1
    return max(n, 1)


def _map_ordered(fn, items):
    n = _threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _presented_catalog():
    return [("free", models.free_module()),
            ("nonpoly_pair", models.nonpoly_pair()),
            ("vanishing_origin", models.vanishing_origin())]


def _fock_catalog():
    from .poly import Polynomial, VectorPolynomial
    one = Polynomial.one(2)
    full = fock.FockSubmodule(2, 1, [VectorPolynomial.wrap(one)])
    return [("vanishing_origin", models.vanishing_origin()),
            ("full", full),
            ("single_gen", models.single_gen())]


def suite_prop1(seed=7, count=4) -> SuiteResult:
    checks = []
    battery = models.random_battery(seed, count)
    targets = _presented_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]
    splits = [((1, 1), 1), ((1, 2), 2), ((2, 1), 1)]
    for name, m in targets:
        for (a, b), c in splits:
            lhs = koszul.fredholm_index(m, (a + b, c))
            rhs = koszul.fredholm_index(m, (a, c)) + koszul.fredholm_index(m, (b, c))
            checks.append(Check(f"{name}: index(z^{a + b},w^{c}) additivity",
                                lhs == rhs, f"{lhs} vs {rhs}"))
    return SuiteResult("prop1", checks)


def suite_thm3(seed=7, count=6) -> SuiteResult:
    checks = []
    battery = models.random_battery(seed, count)
    targets = _presented_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]

    def run(item):
        name, m = item
        el = koszul.e_limits(m)
        idx = koszul.fredholm_index(m)
        ok = (idx == el.e2 - el.e1 + el.e0
              and el.e0 >= 0 and el.e1 >= 0 and el.e2 >= 0)
        return Check(f"{name}: index = e2 - e1 + e0 with integer e_i",
                     ok, f"index {idx}, e = ({el.e0}, {el.e1}, {el.e2})")
    return SuiteResult("thm3", _map_ordered(run, targets))


def suite_thm4(seed=7, count=0) -> SuiteResult:
    checks = []
    for name, m in _presented_catalog():
        rep = hilbert.lech_check(m, 12)
        checks.append(Check(f"{name}: normalized colengths share the limit",
                            rep.limits_agree, f"box {rep.box_limit} vs fit {rep.e}"))
        checks.append(Check(f"{name}: gap within the growth envelope",
                            rep.envelope_ok, f"C^ {rep.envelope_constant}"))
    return SuiteResult("thm4", checks)


def suite_thm8(seed=7, count=4) -> SuiteResult:
    checks = []
    battery = models.random_battery(seed, count)
    targets = _presented_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]
    for name, m in targets:
        rep = hilbert.theorem8_sandwich(m)
        checks.append(Check(f"{name}: lower bound exact on every cell",
                            all(c.lower_ok for c in rep.cells), f"e = {rep.e}"))
        checks.append(Check(f"{name}: no slack growth along the diagonal",
                            not rep.diagonal_growth,
                            f"diag {[str(s) for s in rep.diagonal_slacks]}"))
    return SuiteResult("thm8", checks)


def suite_thm11(seed=7, count=10) -> SuiteResult:
    battery = models.random_battery(seed, count)
    targets = [("vanishing_origin", models.vanishing_origin())]
    targets += [(f"battery[{i}]", m) for i, m in enumerate(battery)]

    def run(item):
        name, m = item
        idx = koszul.fredholm_index(m)
        e = hilbert.samuel_multiplicity(m).e
        return Check(f"{name}: index equals Samuel multiplicity", idx == e,
                     f"index {idx}, e {e}")
    return SuiteResult("thm11", _map_ordered(run, targets))


def suite_thm15(seed=7, count=10) -> SuiteResult:
    battery = models.random_battery(seed, count)
    targets = _fock_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]

    def run(item):
        name, m = item
        rec = fock.additivity_check(m)
        return Check(f"{name}: e(M) + e(M-perp) = N", rec.ok,
                     f"{rec.e_module} + {rec.e_coinvariant} = {rec.n}")
    return SuiteResult("thm15", _map_ordered(run, targets))


def suite_thm17(seed=7, count=10) -> SuiteResult:
    battery = models.random_battery(seed, count)
    targets = _fock_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]

    def run(item):
        name, m = item
        s = fock.sigma(m)
        fd = fock.fibre_dimension(m)
        return Check(f"{name}: sigma equals fibre dimension", s == fd, f"{s} vs {fd}")
    return SuiteResult("thm17", _map_ordered(run, targets))


def suite_thm18(seed=7, count=10) -> SuiteResult:
    battery = models.random_battery(seed, count)
    targets = _fock_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]

    def run(item):
        name, m = item
        try:
            k = fock.curvature(m)
            ok = k == m.n - fock.fibre_dimension(m)
            detail = f"curvature {k}"
        except Exception as exc:  # cross-check mismatch is a failure, not a crash
            ok, detail = False, str(exc)
        return Check(f"{name}: curvature equals coinvariant Samuel multiplicity",
                     ok, detail)
    return SuiteResult("thm18", _map_ordered(run, targets))


def suite_cor16(seed=7, count=10) -> SuiteResult:
    from .poly import Polynomial
    checks = []
    rng = Random(seed)
    battery = models.random_battery(seed, max(count, 2))
    made = 0
    i = 0
    while made < count:
        m2 = battery[i % len(battery)]
        i += 1
        mult = Polynomial.variable(2, rng.randint(0, 1)) ** rng.randint(1, 2)
        gens = [g.scale(mult) for g in m2.generators]
        m1 = fock.FockSubmodule(2, m2.n, gens)
        rec = fock.monotonicity_check(m1, m2)
        checks.append(Check(f"pair[{made}]: e(M1) <= e(M2) <= N", rec.ok,
                            f"{rec.e_small} <= {rec.e_big} <= {rec.n}"))
        made += 1
    return SuiteResult("cor16", checks)


def suite_cor20(seed=7, count=5) -> SuiteResult:
    checks = []
    vo = models.vanishing_origin()
    r = fock.trace_projection_ratio(vo, 8, 20)
    checks.append(Check("vanishing_origin: trace equals rank exactly",
                        r.exact and r.trace_ratio == float(r.rank_ratio),
                        f"{r.trace_ratio} vs {r.rank_ratio}"))
    battery = models.random_battery(seed, count)

    def run(item):
        i, m = item
        small = fock.trace_projection_ratio(m, 6, 18)
        big = fock.trace_projection_ratio(m, 12, 24)
        gap_small = abs(small.trace_ratio - float(small.rank_ratio))
        gap_big = abs(big.trace_ratio - float(big.rank_ratio))
        ok = gap_big <= 0.25 and gap_big < gap_small + 1e-9
        return Check(f"battery[{i}]: trace/rank gap shrinking and small", ok,
                     f"gap {gap_small:.4f} -> {gap_big:.4f}")
    checks += _map_ordered(run, list(enumerate(battery)))
    return SuiteResult("cor20", checks)


def suite_lemma13(seed=7, count=0) -> SuiteResult:
    checks = []
    rng = Random(seed)
    for name, m in _presented_catalog():
        base = koszul.homology_dims(m, (1, 1)).h
        for t in range(5):
            p = rng.randint(2, 9)
            q = rng.randint(1, p - 1)
            u = koszul.pythagorean_rotation(p, q)
            rot = koszul.rotate_pair(m, u)
            h = koszul.homology_dims(rot, (1, 1)).h
            checks.append(Check(f"{name}: homology invariant under rotation {t}",
                                h == base, f"{h} vs {base}"))
    return SuiteResult("lemma13", checks)


def suite_prop6(seed=7, count=0) -> SuiteResult:
    checks = []
    for name, m in _presented_catalog():
        ker = koszul.action_kernel_dim(m, 0)
        if not (is_finite(ker) and ker == 0):
            log.info("prop6: %s skipped, z-action kernel %s", name, ker)
            checks.append(Check(f"{name}: skipped (z-action not injective)", True,
                                f"kernel {ker}"))
            continue
        idx = koszul.fredholm_index(m)
        quo = quotient_by_first(m)
        one_var = koszul.single_op_report(quo, 0, 12)
        checks.append(Check(f"{name}: pair index = -(index of induced action)",
                            one_var.index is not None and idx == -one_var.index,
                            f"{idx} vs -({one_var.index})"))
    return SuiteResult("prop6", checks)


def suite_prop7(seed=7, count=0) -> SuiteResult:
    checks = []
    for name, m in _presented_catalog():
        rep = hilbert.prop7_check(m)
        checks.append(Check(f"{name}: shifted quotient inequality holds to k=10",
                            rep.shifted_ok, ""))
        checks.append(Check(f"{name}: colength chain dim >= e_quotient >= e",
                            rep.chain_ok,
                            f"{rep.dim_mod_i} >= {rep.e_quotient} >= {rep.e_module}"))
        if rep.literal_failures:
            log.info("prop7: %s literal form fails at k = %s", name, rep.literal_failures)
    return SuiteResult("prop7", checks)


def suite_dashboard(seed=7, count=2) -> SuiteResult:
    battery = [m for m in models.random_battery(seed, count + 4) if m.d == 2][:count]
    targets = _fock_catalog() + [(f"battery[{i}]", m) for i, m in enumerate(battery)]

    def run(item):
        name, m = item
        try:
            board = fock.dashboard(m)
            return Check(f"{name}: all defined dashboard entries equal",
                         board.consistent,
                         f"{board.integer_entries} trace {board.trace_limit:.4f}")
        except Exception as exc:
            return Check(f"{name}: all defined dashboard entries equal", False, str(exc))
    return SuiteResult("dashboard", _map_ordered(run, targets))


SUITES = {
    "prop1": suite_prop1,
    "thm3": suite_thm3,
    "thm4": suite_thm4,
    "thm8": suite_thm8,
    "thm11": suite_thm11,
    "thm15": suite_thm15,
    "thm17": suite_thm17,
    "thm18": suite_thm18,
    "cor16": suite_cor16,
    "cor20": suite_cor20,
    "lemma13": suite_lemma13,
    "prop6": suite_prop6,
    "prop7": suite_prop7,
    "dashboard": suite_dashboard,
}


def run_suite(name: str, seed: int = 7, count: int = 10):
    if name == "all":
        return [fn(seed=seed, count=_default_count(n, count))
                for n, fn in SUITES.items()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](seed=seed, count=count)]


def _default_count(name, requested):
    small = {"prop1": 3, "thm3": 4, "thm8": 3, "dashboard": 2, "cor20": 3,
             "cor16": 6, "thm11": 6, "thm15": 6, "thm17": 6, "thm18": 6}
    return min(requested, small.get(name, requested))

"""Independent oracles and published identities used to validate the engine.

Three mutually independent routes compute the same numbers:

* the reducible recursion (engine, "all" variant);
* the irreducible recursion (engine, "irr" variant);
* the exponential assembly implemented here, which rebuilds a reducible count
  from unordered collections of irreducible ones.

The assembly coefficient rule is validated against a literal truncated
expansion of exp(G_irr) over formal monomials before it is trusted; see
:func:`exp_truncation_check`.  On top of that, closed-form identities for
rational curves in the 2S family (ab1..ab4), the cross-surface 2S+kF identity
and the plane/F_1 equivalences pin the engine to published values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import (
    ALL,
    IRREDUCIBLE,
    SeveriEngine,
    SeveriKey,
    part_classes,
)
from .seqcomb import TangencySeq, ZERO, enumerate_weight, multinomial, seq_multinomial
from .surface import DivClass, SurfaceModel, ZERO_CLASS


@dataclass(frozen=True)
class CheckInstance:
    description: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class CheckReport:
    name: str
    instances: list[CheckInstance] = field(default_factory=list)

    def add(self, description: str, lhs: int, rhs: int):
        self.instances.append(CheckInstance(description, lhs, rhs))

    @property
    def passed(self) -> bool:
        return all(inst.ok for inst in self.instances)

    @property
    def failures(self) -> list[CheckInstance]:
        return [inst for inst in self.instances if not inst.ok]


# -- exponential assembly -------------------------------------------------------


@dataclass(frozen=True)
class _AssemblyPart:
    d: DivClass
    g: int
    alpha: TangencySeq
    beta: TangencySeq
    ups: int

    def sort_key(self):
        return (self.d.a, self.d.b, self.g, self.alpha.sort_key(), self.beta.sort_key())


def assemble_reducible(engine: SeveriEngine, key: SeveriKey) -> int:
    """Reducible count as a sum over unordered multisets of irreducible curves.

    Components partition the class, the assigned contacts, the unassigned
    contacts and the point conditions; the coefficient is
    binom(alpha; alpha^1..alpha^l) * binom(Upsilon; Upsilon^1..Upsilon^l) / sigma
    times the product of the irreducible counts.  Unassigned contacts carry no
    multinomial: a union realizes exactly one distribution of them.
    """
    m = key.model
    if not engine.admissible(key):
        return 0
    ups = m.upsilon(key.d, key.g, key.beta)
    candidates = _assembly_candidates(engine, m, key.d, key.alpha, key.beta, ups)
    total = 0
    acc: list[_AssemblyPart] = []

    def finish():
        nonlocal total
        sigma = 1
        run = 0
        prev = None
        for part in acc + [None]:
            if part == prev:
                run += 1
            else:
                sigma *= math.factorial(run)
                run = 1
            prev = part
        coeff = seq_multinomial(key.alpha, [p.alpha for p in acc])
        coeff *= multinomial(ups, [p.ups for p in acc])
        for p in acc:
            coeff *= engine.count(SeveriKey(m, p.d, p.g, p.alpha, p.beta, IRREDUCIBLE))
        quot, rem = divmod(coeff, sigma)
        assert rem == 0, "symmetry factor must divide exactly"
        total += quot

    # Multisets as non-increasing part chains (indices may repeat, never decrease).
    def extend(start, rem_class, alpha_need, beta_need, ups_rem):
        if rem_class.is_zero:
            if alpha_need.is_zero and beta_need.is_zero and ups_rem == 0:
                finish()
            return
        for i in range(start, len(candidates)):
            p = candidates[i]
            if p.ups > ups_rem or not m.is_effective(rem_class - p.d):
                continue
            if not (p.alpha <= alpha_need and p.beta <= beta_need):
                continue
            acc.append(p)
            extend(i, rem_class - p.d, alpha_need - p.alpha,
                   beta_need - p.beta, ups_rem - p.ups)
            acc.pop()

    extend(0, key.d, key.alpha, key.beta, ups)
    return total


def _assembly_candidates(engine, m, d_full, alpha_full, beta_full, ups_budget):
    from .engine import _leq_seqs, _weight_seqs  # shared enumeration caches

    parts = []
    for c in part_classes(m, d_full, min_dot=0):
        w = m.dot_e(c)
        lead = m.upsilon(c, 1, ZERO)
        for alpha_p in _leq_seqs(alpha_full):
            left = w - alpha_p.weight()
            if left < 0:
                continue
            for beta_p in _weight_seqs(left):
                if not beta_p <= beta_full:
                    continue
                ups_min = lead + beta_p.size() - 1  # at genus 0
                for ups_p in range(ups_min, ups_budget + 1):
                    g_p = ups_p - ups_min
                    if engine.count(SeveriKey(m, c, g_p, alpha_p, beta_p, IRREDUCIBLE)) == 0:
                        continue
                    parts.append(_AssemblyPart(c, g_p, alpha_p, beta_p, ups_p))
    parts.sort(key=_AssemblyPart.sort_key, reverse=True)
    return parts


def _monomial_upsilon(m: SurfaceModel, mono) -> int:
    d, g_minus_1, _alpha, beta = mono
    return m.upsilon(d, g_minus_1 + 1, beta)


def exp_truncation_check(engine: SeveriEngine, model: SurfaceModel,
                         class_cap: DivClass, ups_cap: int = 3) -> CheckReport:
    """Validate the assembly rule against a literal expansion of exp(G_irr).

    G_irr is the generating series with monomial v^D w^{g-1} x^alpha/alpha!
    y^beta z^Upsilon/Upsilon!; its exponential is computed by plain series
    multiplication over Fraction coefficients (no multinomials, no symmetry
    factors) and compared coefficientwise against both the engine's reducible
    recursion and :func:`assemble_reducible`.
    """
    report = CheckReport(f"exp-truncation {model.name()} cap {class_cap.a},{class_cap.b} ups<={ups_cap}")

    def classes_under(cap):
        if model.is_plane:
            return [DivClass(d) for d in range(cap.a + 1)]
        return [
            DivClass(a, b)
            for a in range(cap.a + 1)
            for b in range(-a * model.n, cap.b + 1)
            if model.is_effective(DivClass(a, b)) and model.is_effective(cap - DivClass(a, b))
        ]

    def tangency_pairs(d):
        w = model.dot_e(d)
        if w < 0:
            return []
        out = []
        for ia in range(w + 1):
            for alpha in enumerate_weight(ia):
                for beta in enumerate_weight(w - ia):
                    out.append((alpha, beta))
        return out

    # G_irr restricted to the cap: all other monomials cannot contribute to
    # capped coefficients because both the class and upsilon gradings add.
    series: dict[tuple, Fraction] = {}
    for d in classes_under(class_cap):
        if d.is_zero:
            continue
        for alpha, beta in tangency_pairs(d):
            g = 0
            while True:
                ups = model.upsilon(d, g, beta)
                if ups > ups_cap:
                    break
                if ups >= 0:
                    val = engine.count(SeveriKey(model, d, g, alpha, beta, IRREDUCIBLE))
                    if val:
                        series[(d, g - 1, alpha, beta)] = Fraction(
                            val, alpha.factorial() * math.factorial(ups)
                        )
                g += 1

    unit = (ZERO_CLASS, 0, ZERO, ZERO)

    def mul(t1, t2):
        out: dict[tuple, Fraction] = {}
        for (d1, gm1, a1, b1), c1 in t1.items():
            for (d2, gm2, a2, b2), c2 in t2.items():
                d = d1 + d2
                if not (model.is_effective(class_cap - d) if not model.is_plane
                        else d.a <= class_cap.a):
                    continue
                mono = (d, gm1 + gm2, a1 + a2, b1 + b2)
                if _monomial_upsilon(model, mono) > ups_cap:
                    continue
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return {k: v for k, v in out.items() if v}

    result = {unit: Fraction(1)}
    power = {unit: Fraction(1)}
    m_fact = 1
    for m_ord in range(1, 1 + sum(abs(x) for x in (class_cap.a, class_cap.b)) + ups_cap + 2):
        power = mul(power, series)
        if not power:
            break
        m_fact *= m_ord
        for mono, coeff in power.items():
            result[mono] = result.get(mono, Fraction(0)) + coeff / m_fact

    # Compare every admissible capped reducible key against the expansion.
    for d in classes_under(class_cap):
        g_floor = 1 - (d.a + d.b if not model.is_plane else d.a)
        for alpha, beta in tangency_pairs(d):
            g = g_floor
            while True:
                ups = model.upsilon(d, g, beta)
                if ups > ups_cap:
                    break
                if ups >= 0:
                    coeff = result.get((d, g - 1, alpha, beta), Fraction(0))
                    scaled = coeff * alpha.factorial() * math.factorial(ups)
                    assert scaled.denominator == 1, "expansion coefficient must be integral"
                    key = SeveriKey(model, d, g, alpha, beta, ALL)
                    desc = f"{model.name()} {model.format_class(d)} g={g} a=({alpha}) b=({beta})"
                    report.add(f"exp vs engine: {desc}", int(scaled), engine.count(key))
                    report.add(f"exp vs assembly: {desc}", int(scaled), assemble_reducible(engine, key))
                g += 1
    return report


def assembly_grid_check(engine: SeveriEngine, n: int, a_max: int = 3, b_max: int = 6,
                        ups_max: int = 6) -> CheckReport:
    """assemble_reducible == engine reducible count over a finite admissible grid."""
    model = SurfaceModel.hirzebruch(n)
    report = CheckReport(f"assembly-grid f{n} a<={a_max} b<={b_max} ups<={ups_max}")
    for a in range(a_max + 1):
        for b in range(b_max + 1):
            d = DivClass(a, b)
            for ia in range(b + 1):
                for alpha in enumerate_weight(ia):
                    for beta in enumerate_weight(b - ia):
                        g = 1 - (a + b) - 1  # one below the component floor, to probe zeros
                        while True:
                            ups = model.upsilon(d, g, beta)
                            if ups > ups_max:
                                break
                            if ups >= 0:
                                key = SeveriKey(model, d, g, alpha, beta, ALL)
                                desc = (f"f{n} {model.format_class(d)} g={g} "
                                        f"a=({alpha}) b=({beta})")
                                report.add(desc, assemble_reducible(engine, key),
                                           engine.count(key))
                            g += 1
    return report


# -- closed-form identities ------------------------------------------------------


def _nirr(engine: SeveriEngine, n: int, a: int, b: int, g: int = 0) -> int:
    model = SurfaceModel.hirzebruch(n)
    return engine.count_class(model, DivClass(a, b), g, IRREDUCIBLE)


def ab3(n: int) -> int:
    """Closed form for the rational irreducible count of 2S on F_n."""
    return 2 ** (2 * n) * (n + 3) - (2 * n + 3) * math.comb(2 * n + 1, n)


def ab3_check(engine: SeveriEngine, n_max: int = 5) -> CheckReport:
    report = CheckReport(f"ab3 n<={n_max}")
    for n in range(n_max + 1):
        report.add(f"2S on f{n}", ab3(n), _nirr(engine, n, 2, 0))
    return report


def ab1_check(engine: SeveriEngine, a: int, b: int) -> CheckReport:
    """Rational counts on F_0 in class aS+(b+a)F against an F_2 binomial sum."""
    report = CheckReport(f"ab1 a={a} b={b}")
    lhs = _nirr(engine, 0, a, b + a)
    rhs = sum(
        math.comb(b + 2 * i, i) * _nirr(engine, 2, a - i, b + 2 * i)
        for i in range(a)
    )
    report.add(f"F0 {a}S+{b + a}F", lhs, rhs)
    return report


def ab2_check(engine: SeveriEngine, n: int, b: int) -> CheckReport:
    """Two-step descent for rational 2S+bF counts (needs n >= 2)."""
    if n < 2:
        raise ValueError("ab2 requires n >= 2")
    report = CheckReport(f"ab2 n={n} b={b}")
    lhs = _nirr(engine, n, 2, b)
    rhs = _nirr(engine, n - 2, 2, b + 2) - sum(
        math.comb(2 * (n + b) + 3, n - l - 1) * (l * l * (b + 2) + math.comb(l, 2))
        for l in range(1, n)
    )
    report.add(f"f{n} 2S+{b}F", lhs, rhs)
    return report


def ab4_check(engine: SeveriEngine, n: int, b: int) -> CheckReport:
    """One-step descent for rational 2S+bF counts (needs n >= 1)."""
    if n < 1:
        raise ValueError("ab4 requires n >= 1")
    report = CheckReport(f"ab4 n={n} b={b}")
    lhs = _nirr(engine, n, 2, b)
    rhs = _nirr(engine, n - 1, 2, b + 1) - sum(
        math.comb(2 * (n + b) + 2, n - l - 1) * l * l * (b + 2)
        for l in range(1, n)
    )
    report.add(f"f{n} 2S+{b}F", lhs, rhs)
    return report


def two_s_kf_check(engine: SeveriEngine, n: int, k: int, g: int) -> CheckReport:
    """Cross-surface identity for genus-g irreducible counts of 2S+kF (k >= 1):
    the count on F_n equals the count of 2S+(k-1)F on F_{n+1} plus an explicit
    binomial correction."""
    if k < 1:
        raise ValueError("the 2S+kF identity needs k >= 1")
    report = CheckReport(f"2skf n={n} k={k} g={g}")
    lhs = _nirr(engine, n, 2, k, g)
    correction = 0
    for f in range(0, n - g):
        for alpha in enumerate_weight(n + k - f):
            if alpha.size() != k + 1 + g or alpha.get(1) < k:
                continue
            term = math.comb(alpha.get(1), k)
            term *= multinomial(alpha.size(), [c for _, c in alpha.items()])
            term *= math.comb(2 * n + 2 * k + 2 + g, f)
            term *= alpha.iexp() ** 2
            correction += term
    rhs = _nirr(engine, n + 1, 2, k - 1, g) + correction
    report.add(f"f{n} 2S+{k}F g={g}", lhs, rhs)
    return report


def plane_f1_equivalence(engine: SeveriEngine, d: int, g: int) -> CheckReport:
    """Degree-d plane counts equal two F_1 counts: class dS, and class (d-1)S+F."""
    if d < 1:
        raise ValueError("plane degree must be >= 1")
    report = CheckReport(f"plane d={d} g={g}")
    plane = SurfaceModel.plane_line()
    f1 = SurfaceModel.hirzebruch(1)
    n_plane = engine.count_class(plane, DivClass(d), g, ALL)
    n_ds = engine.count_class(f1, DivClass(d, 0), g, ALL)
    n_res = engine.count_class(f1, DivClass(d - 1, 1), g, ALL)
    report.add(f"P2 {d}L g={g}: plane vs dS", n_plane, n_ds)
    report.add(f"P2 {d}L g={g}: dS vs (d-1)S+F", n_ds, n_res)
    return report


# -- suites ----------------------------------------------------------------------


def run_suite(engine: SeveriEngine, suite: str, grid: dict[str, int] | None = None) -> list[CheckReport]:
    """Named check bundles for the CLI/service; `grid` overrides size limits."""
    grid = dict(grid or {})
    reports: list[CheckReport] = []
    if suite not in ("all", "exp", "ab", "2skf", "plane"):
        raise ValueError(f"unknown verify suite {suite!r}")
    if suite in ("all", "exp"):
        cap_a = grid.get("a", 2)
        cap_b = grid.get("b", 2)
        ups_trunc = grid.get("trunc_ups", 3)
        for n in (grid.get("n0", 1),):
            model = SurfaceModel.hirzebruch(n)
            reports.append(exp_truncation_check(engine, model, DivClass(cap_a, cap_b), ups_trunc))
        ups_max = grid.get("ups", 4 if suite == "all" else 6)
        for n in (1, 2):
            reports.append(assembly_grid_check(engine, n, grid.get("a_max", 3),
                                               grid.get("b_max", 6 if suite == "exp" else 4),
                                               ups_max))
    if suite in ("all", "ab"):
        reports.append(ab3_check(engine, grid.get("n", 4)))
        for a, b in ((2, 0), (2, 1), (3, 0)):
            reports.append(ab1_check(engine, a, b))
        for n in (2, 3):
            for b in (0, 1):
                reports.append(ab2_check(engine, n, b))
        for n in (1, 2, 3):
            for b in (0, 1):
                reports.append(ab4_check(engine, n, b))
    if suite in ("all", "2skf"):
        n_max = grid.get("n", 2)
        k_max = grid.get("k", 2)
        g_max = grid.get("g", 1)
        for n in range(n_max + 1):
            for k in range(1, k_max + 1):
                for g in range(g_max + 1):
                    reports.append(two_s_kf_check(engine, n, k, g))
    if suite in ("all", "plane"):
        d_max = grid.get("d", 4 if suite == "all" else 5)
        for d in range(1, d_max + 1):
            plane = SurfaceModel.plane_line()
            g_top = plane.arithmetic_genus(DivClass(d))
            for g in range(1 - d, g_top + 1):
                reports.append(plane_f1_equivalence(engine, d, g))
    return reports

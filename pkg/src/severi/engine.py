"""Memoized evaluation of the two tangential Severi-degree recursions.

The count N^{D,g}(alpha, beta) is the number of (possibly reducible) genus-g
curves in class D meeting the boundary divisor E with contact orders alpha at
assigned points and beta at unassigned points, through

    Upsilon = -(K+E).D + |beta| + g - 1

general surface points.  The irreducible variant N_irr counts irreducible
curves only.  Both satisfy a degeneration recursion obtained by moving one
point condition onto E:

* Type I: an unassigned order-k contact becomes assigned (coefficient k);
* Type II: the curve splits off E.  For the reducible count the residual is a
  single curve in class D - E with weighted binomial coefficients; for the
  irreducible count the residual is an unordered collection of irreducible
  curves, each meeting E, weighted by multinomials and a symmetry factor.

Every child key has Upsilon exactly one less than its parent, so recursion
depth equals Upsilon and the memo table stays finite.  All arithmetic is exact
(Python integers); no value is ever rounded.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .seqcomb import TangencySeq, ZERO, e, enumerate_leq, enumerate_weight, multinomial, seq_multinomial
from .surface import DivClass, SurfaceModel

ALL = "all"
IRREDUCIBLE = "irr"
VARIANTS = (ALL, IRREDUCIBLE)

_UNSET = object()


class ResourceLimitError(RuntimeError):
    """A configured budget (max upsilon, memo size) was exceeded.

    Distinct from a mathematical zero: the requested value was never computed.
    """


@dataclass(frozen=True)
class SeveriKey:
    """Canonical memo key for one count; carries no point configuration."""

    model: SurfaceModel
    d: DivClass
    g: int
    alpha: TangencySeq
    beta: TangencySeq
    variant: str = ALL

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


@dataclass(frozen=True)
class Type2TermAll:
    """One residual term of the reducible recursion: coeff * N^{D-E,g'}(alpha', beta')."""

    alpha_p: TangencySeq
    beta_p: TangencySeq
    g_p: int
    coeff: int


@dataclass(frozen=True)
class SplitPart:
    """One irreducible component of a Type II splitting.

    gamma <= beta records which of the component's unassigned contacts survive
    as unassigned contacts of the parent; the remaining beta - gamma contacts
    (never empty) are where the component meets the boundary component.
    """

    d: DivClass
    g: int
    alpha: TangencySeq
    beta: TangencySeq
    gamma: TangencySeq
    ups: int

    def sort_key(self):
        return (
            self.d.a,
            self.d.b,
            self.g,
            self.alpha.sort_key(),
            self.beta.sort_key(),
            self.gamma.sort_key(),
        )


@dataclass(frozen=True)
class IrreducibleSplit:
    """An unordered multiset of split parts plus its symmetry factor sigma."""

    parts: tuple[SplitPart, ...]
    sigma: int


@lru_cache(maxsize=None)
def _weight_seqs(w: int) -> tuple[TangencySeq, ...]:
    return tuple(enumerate_weight(w))


@lru_cache(maxsize=None)
def _leq_seqs(a: TangencySeq) -> tuple[TangencySeq, ...]:
    return tuple(enumerate_leq(a))


def part_classes(model: SurfaceModel, rem: DivClass, min_dot: int) -> list[DivClass]:
    """Effective nonzero classes c with rem - c still effective and c.E >= min_dot."""
    out = []
    if model.is_plane:
        for d in range(max(min_dot, 1), rem.a + 1):
            out.append(DivClass(d))
        return out
    n = model.n
    for a2 in range(rem.a + 1):
        b_hi = (rem.a - a2) * n + rem.b
        b_lo = max(min_dot, -a2 * n)
        if a2 == 0:
            b_lo = max(b_lo, 1)
        for b2 in range(b_lo, b_hi + 1):
            out.append(DivClass(a2, b2))
    return out


class SeveriEngine:
    """Shared memo table plus the recursion logic for both count variants.

    Thread-safe: values are deterministic, so concurrent duplicate computation
    of a key is harmless and each key is stored once.
    """

    def __init__(self, prune_genus: bool = True, max_upsilon: int | None = None,
                 max_memo_entries: int | None = None):
        self.prune_genus = prune_genus
        self.max_upsilon = max_upsilon
        self.max_memo_entries = max_memo_entries
        self._memo: dict[SeveriKey, int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.computes = 0

    # -- key plumbing ----------------------------------------------------------

    def admissible(self, key: SeveriKey) -> bool:
        """Effective class, exact tangency budget, nonnegative upsilon."""
        m = key.model
        if not m.is_effective(key.d):
            return False
        if key.alpha.weight() + key.beta.weight() != m.dot_e(key.d):
            return False
        return m.upsilon(key.d, key.g, key.beta) >= 0

    def seed_value(self, key: SeveriKey) -> int | None:
        """Base-case value at upsilon = 0, or None when upsilon != 0."""
        m = key.model
        if m.upsilon(key.d, key.g, key.beta) != 0:
            return None
        if key.variant == ALL:
            if m.is_plane:
                ok = key.d.is_zero and key.g == 1 and key.alpha.is_zero and key.beta.is_zero
                return 1 if ok else 0
            k = key.d.b
            ok = (
                key.d.a == 0
                and k >= 0
                and key.g == 1 - k
                and key.beta.is_zero
                and key.alpha == k * e(1)
            )
            return 1 if ok else 0
        if m.is_plane:
            return 0
        ok = (
            key.d == DivClass(0, 1)
            and key.g == 0
            and key.alpha == e(1)
            and key.beta.is_zero
        )
        return 1 if ok else 0

    # -- term generators ---------------------------------------------------------

    def type1_terms(self, key: SeveriKey) -> list[tuple[int, SeveriKey]]:
        """One term per contact order in beta's support: k * N(alpha+e_k, beta-e_k)."""
        out = []
        for k, _ in key.beta.items():
            child = SeveriKey(
                key.model, key.d, key.g, key.alpha + e(k), key.beta - e(k), key.variant
            )
            assert key.model.upsilon(child.d, child.g, child.beta) == \
                key.model.upsilon(key.d, key.g, key.beta) - 1
            out.append((k, child))
        return out

    def type2_terms_all(self, key: SeveriKey) -> list[Type2TermAll]:
        """Residual terms of the reducible recursion, indexed by (alpha', beta', g')."""
        m = key.model
        residual = m.subtract_e(key.d)
        if not m.is_effective(residual):
            return []
        w = m.dot_e(residual)
        i_beta = key.beta.weight()
        ups = m.upsilon(key.d, key.g, key.beta)
        terms = []
        for alpha_p in _leq_seqs(key.alpha):
            budget = w - alpha_p.weight() - i_beta
            if budget < 0:
                continue
            for gamma in _weight_seqs(budget):
                beta_p = key.beta + gamma
                g_p = key.g - gamma.size() + 1
                assert m.upsilon(residual, g_p, beta_p) == ups - 1
                coeff = gamma.iexp() * key.alpha.binom(alpha_p) * beta_p.binom(key.beta)
                terms.append(Type2TermAll(alpha_p, beta_p, g_p, coeff))
        return terms

    def type2_splits_irr(self, key: SeveriKey) -> list[IrreducibleSplit]:
        """Every parts-multiset satisfying the splitting constraints, exactly once."""
        return self._enumerate_splits(key, prune_zero_parts=False)

    def _enumerate_splits(self, key: SeveriKey, prune_zero_parts: bool,
                          prune: bool | None = None, maxu: int | None = None) -> list[IrreducibleSplit]:
        m = key.model
        residual = m.subtract_e(key.d)
        ups = m.upsilon(key.d, key.g, key.beta)
        if residual.is_zero:
            # The limit curve is the boundary itself: legal exactly when no
            # unassigned contact survives and one point condition is consumed.
            if key.beta.is_zero and ups == 1:
                return [IrreducibleSplit((), 1)]
            return []
        if not m.is_effective(residual):
            return []
        candidates = self._split_candidates(
            m, residual, key.alpha, key.beta, ups - 1, prune_zero_parts, prune, maxu
        )
        splits: list[IrreducibleSplit] = []
        acc: list[SplitPart] = []

        # Multisets as non-increasing part chains: indices may repeat but
        # never decrease, so every multiset is produced exactly once.
        def extend(start, rem_class, alpha_cap, beta_need, ups_rem):
            if rem_class.is_zero:
                if beta_need.is_zero and ups_rem == 0:
                    splits.append(self._finish_split(tuple(acc)))
                return
            if ups_rem < 1:
                return
            for i in range(start, len(candidates)):
                p = candidates[i]
                if p.ups > ups_rem or not m.is_effective(rem_class - p.d):
                    continue
                if not (p.alpha <= alpha_cap and p.gamma <= beta_need):
                    continue
                acc.append(p)
                extend(i, rem_class - p.d, alpha_cap - p.alpha,
                       beta_need - p.gamma, ups_rem - p.ups)
                acc.pop()

        extend(0, residual, key.alpha, key.beta, ups - 1)
        return splits

    def _split_candidates(self, m, residual, alpha_full, beta_full, ups_budget,
                          prune_zero_parts, prune, maxu) -> list[SplitPart]:
        parts = []
        for c in part_classes(m, residual, min_dot=1):
            w = m.dot_e(c)
            lead = m.upsilon(c, 1, ZERO)  # -(K+E).c
            for alpha_p in _leq_seqs(alpha_full):
                left = w - alpha_p.weight()
                if left < 1:
                    continue  # the part must meet the boundary component
                for beta_p in _weight_seqs(left):
                    ups_min = lead + beta_p.size() - 1  # genus-0 upsilon
                    gammas = [gm for gm in _leq_seqs(beta_p.min_with(beta_full))
                              if gm != beta_p]
                    if not gammas:
                        continue
                    for ups_p in range(ups_min, ups_budget + 1):
                        g_p = ups_p - ups_min
                        if prune_zero_parts and self._count(
                            SeveriKey(m, c, g_p, alpha_p, beta_p, IRREDUCIBLE),
                            prune, maxu,
                        ) == 0:
                            continue
                        for gamma in gammas:
                            parts.append(SplitPart(c, g_p, alpha_p, beta_p, gamma, ups_p))
        parts.sort(key=SplitPart.sort_key, reverse=True)
        return parts

    @staticmethod
    def _finish_split(parts: tuple[SplitPart, ...]) -> IrreducibleSplit:
        sigma = 1
        run = 0
        prev = None
        for part in parts + (None,):
            if part == prev:
                run += 1
            else:
                for i in range(2, run + 1):
                    sigma *= i
                run = 1
            prev = part
        return IrreducibleSplit(parts, sigma)

    def term_value_irr(self, split: IrreducibleSplit, key: SeveriKey) -> int:
        """The exact value contributed by one splitting multiset."""
        return self._term_value_irr(split, key, self.prune_genus, self.max_upsilon)

    def _term_value_irr(self, split, key, prune, maxu) -> int:
        m = key.model
        ups = m.upsilon(key.d, key.g, key.beta)
        parts = split.parts
        total = seq_multinomial(key.alpha, [p.alpha for p in parts])
        total *= multinomial(ups - 1, [p.ups for p in parts])
        for p in parts:
            if total == 0:
                break
            total *= p.beta.binom(p.gamma) * (p.beta - p.gamma).iexp()
            total *= self._count(SeveriKey(m, p.d, p.g, p.alpha, p.beta, IRREDUCIBLE), prune, maxu)
        quot, rem = divmod(total, split.sigma)
        assert rem == 0, "symmetry factor must divide exactly"
        return quot

    # -- evaluation ---------------------------------------------------------------

    def count(self, key: SeveriKey, *, prune_genus: bool | None = None,
              max_upsilon=_UNSET) -> int:
        """The count for any key; 0 for non-admissible keys, never an exception
        except when a configured resource limit is exceeded."""
        prune = self.prune_genus if prune_genus is None else prune_genus
        maxu = self.max_upsilon if max_upsilon is _UNSET else max_upsilon
        return self._count(key, prune, maxu)

    def count_class(self, model: SurfaceModel, d: DivClass, g: int,
                    variant: str = ALL, alpha: TangencySeq = ZERO,
                    beta: TangencySeq | None = None, **opts) -> int:
        """Count with the table convention: omitted beta means all remaining
        boundary contacts are transverse and unassigned, beta = (D.E - I alpha) e_1."""
        if beta is None:
            left = model.dot_e(d) - alpha.weight()
            beta = left * e(1) if left > 0 else ZERO
        return self.count(SeveriKey(model, d, g, alpha, beta, variant), **opts)

    def _count(self, key: SeveriKey, prune: bool, maxu: int | None) -> int:
        memo = self._memo
        val = memo.get(key)
        if val is not None:
            self.hits += 1
            return val
        if not self.admissible(key):
            return 0
        m = key.model
        ups = m.upsilon(key.d, key.g, key.beta)
        if maxu is not None and ups > maxu:
            raise ResourceLimitError(
                f"upsilon {ups} exceeds the configured limit {maxu}"
            )
        if ups == 0:
            val = self.seed_value(key)
        elif prune and key.g > m.arithmetic_genus(key.d):
            val = 0
        else:
            val = 0
            for k, child in self.type1_terms(key):
                val += k * self._count(child, prune, maxu)
            if key.variant == ALL:
                residual = m.subtract_e(key.d)
                for term in self.type2_terms_all(key):
                    child = SeveriKey(m, residual, term.g_p, term.alpha_p, term.beta_p, ALL)
                    val += term.coeff * self._count(child, prune, maxu)
            else:
                for split in self._enumerate_splits(key, True, prune, maxu):
                    val += self._term_value_irr(split, key, prune, maxu)
        assert val >= 0
        self.computes += 1
        with self._lock:
            if self.max_memo_entries is not None and len(memo) >= self.max_memo_entries:
                raise ResourceLimitError(
                    f"memo table exceeds the configured limit {self.max_memo_entries}"
                )
            memo.setdefault(key, val)
        return val

    # -- introspection --------------------------------------------------------------

    def stats(self) -> dict[str, int]:
        return {"entries": len(self._memo), "hits": self.hits, "computes": self.computes}

    def memo_items(self) -> list[tuple[SeveriKey, int]]:
        return list(self._memo.items())

    def merge(self, entries: dict[SeveriKey, int]) -> int:
        """Adopt precomputed values; a conflicting value is corruption, not data."""
        added = 0
        with self._lock:
            for key, value in entries.items():
                old = self._memo.get(key)
                if old is None:
                    self._memo[key] = value
                    added += 1
                elif old != value:
                    raise ValueError(f"cache value conflict for {key}: {old} != {value}")
        return added

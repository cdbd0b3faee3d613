"""Genus-g Gromov-Witten invariants of Hirzebruch surfaces.

The invariants are deformation-invariant and F_n deforms to F_{n+2}, carrying
(E, F) to (E+F, F).  Point-insertion invariants of F_0 and F_1 are enumerative
and equal irreducible Severi degrees, so an arbitrary query reduces to:

1. strip fundamental-class insertions (zero away from the trivial case),
2. convert divisor insertions into intersection-number multipliers,
3. check the point count against the expected dimension -K.D + g - 1,
4. walk the class down to F_{n mod 2} and evaluate the irreducible count
   with all boundary contacts transverse and unassigned.

The only non-integer value in the theory is the degree-zero genus-one
invariant (gamma . K)/24, so results are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import IRREDUCIBLE, SeveriEngine, SeveriKey
from .seqcomb import ZERO, e
from .surface import SurfaceModel

FUNDAMENTAL = "fundamental"
DIVISOR = "divisor"
POINT = "point"


@dataclass(frozen=True)
class Insertion:
    """A cohomology-class insertion: fundamental class, divisor (E, F coords), or point."""

    kind: str
    divisor_ef: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in (FUNDAMENTAL, DIVISOR, POINT):
            raise ValueError(f"unknown insertion kind {self.kind!r}")
        if (self.kind == DIVISOR) != (self.divisor_ef is not None):
            raise ValueError("divisor insertions (and only those) carry a class")

    @property
    def codim(self) -> int:
        return {FUNDAMENTAL: 0, DIVISOR: 1, POINT: 2}[self.kind]


def fundamental() -> Insertion:
    return Insertion(FUNDAMENTAL)


def point() -> Insertion:
    return Insertion(POINT)


def divisor(a: int, b: int) -> Insertion:
    return Insertion(DIVISOR, (a, b))


@dataclass(frozen=True)
class GwQuery:
    """I_{g,D}(insertions) on F_n, with D = aE + bF given in (E, F) coordinates."""

    n: int
    d_ef: tuple[int, int]
    g: int
    insertions: tuple[Insertion, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("Hirzebruch index must be >= 0")
        if self.g < 0:
            raise ValueError("Gromov-Witten genus must be >= 0")


def pair_ef(n: int, d1: tuple[int, int], d2: tuple[int, int]) -> int:
    """Intersection pairing in (E, F) coordinates on F_n: E.E = -n, E.F = 1, F.F = 0."""
    (a1, b1), (a2, b2) = d1, d2
    return -n * a1 * a2 + a1 * b2 + a2 * b1


def canonical_ef(n: int) -> tuple[int, int]:
    """K = -2E - (n+2)F in (E, F) coordinates."""
    return (-2, -(n + 2))


def expected_points(n: int, d_ef: tuple[int, int], g: int) -> int:
    """-K.D + g - 1: the number of point insertions a nonzero invariant needs."""
    return -pair_ef(n, canonical_ef(n), d_ef) + g - 1


def reduce_class(n: int, d_ef: tuple[int, int]) -> tuple[int, tuple[int, int]]:
    """Carry aE + bF on F_n down to F_{n mod 2}: one step per deformation,
    aE + bF on F_{m+2} coming from aE + (b - a)F on F_m.

    The intersection pairing is preserved: both D.D and K.D are invariant
    (asserted)."""
    steps, m = divmod(n, 2)
    a, b = d_ef
    out = (a, b - steps * a)
    assert pair_ef(m, out, out) == pair_ef(n, d_ef, d_ef)
    assert pair_ef(m, canonical_ef(m), out) == pair_ef(n, canonical_ef(n), d_ef)
    return m, out


def _degree_zero(n: int, g: int, ins: tuple[Insertion, ...]) -> Fraction:
    # Constant maps: only the classical triple product and the elliptic
    # (gamma . K)/24 survive.
    if g == 0 and len(ins) == 3:
        if sum(i.codim for i in ins) != 2:
            return Fraction(0)
        divisors = [i for i in ins if i.kind == DIVISOR]
        if len(divisors) == 2:
            return Fraction(pair_ef(n, divisors[0].divisor_ef, divisors[1].divisor_ef))
        # one point and two fundamental classes
        return Fraction(1)
    if g == 1 and len(ins) == 1 and ins[0].kind == DIVISOR:
        return Fraction(pair_ef(n, ins[0].divisor_ef, canonical_ef(n)), 24)
    return Fraction(0)


def gw_invariant(engine: SeveriEngine, q: GwQuery) -> Fraction:
    """Evaluate the invariant exactly; integer-valued except in the D = 0,
    g = 1 divisor case."""
    if q.d_ef == (0, 0):
        return _degree_zero(q.n, q.g, q.insertions)
    if any(i.kind == FUNDAMENTAL for i in q.insertions):
        return Fraction(0)
    mult = 1
    points = 0
    for ins in q.insertions:
        if ins.kind == DIVISOR:
            mult *= pair_ef(q.n, ins.divisor_ef, q.d_ef)
        else:
            points += 1
    if points != expected_points(q.n, q.d_ef, q.g):
        return Fraction(0)
    m, d_ef = reduce_class(q.n, q.d_ef)
    model = SurfaceModel.hirzebruch(m)
    if d_ef == (1, 0):  # the boundary section itself is rigid and counts once
        return Fraction(mult)
    d = model.from_ef_basis(*d_ef)
    if not model.is_effective(d):
        return Fraction(0)
    w = model.dot_e(d)
    beta = w * e(1) if w > 0 else ZERO
    base = engine.count(SeveriKey(model, d, q.g, ZERO, beta, IRREDUCIBLE))
    return Fraction(mult * base)

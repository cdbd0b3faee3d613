"""Divisor-class arithmetic for the supported surface/boundary pairs.

Two models are supported:

* the Hirzebruch surface F_n with boundary E, the section of self-intersection
  -n.  Classes are stored as integer pairs (a, b) meaning a*S + b*F, where F is
  the fiber class and S = E + n*F (so S.S = n, S.F = 1, F.F = 0, E = S - n*F).
  The (E, F) basis is reached through explicit conversions only.
* the projective plane with a line L as boundary.  Classes are stored as
  (d, 0) meaning d*L.

All operations are pure functions over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .seqcomb import TangencySeq

HIRZEBRUCH = "hirzebruch"
PLANE = "plane"


@dataclass(frozen=True, order=True)
class DivClass:
    """Integer pair in the model's fixed basis: (a, b) = aS + bF, or (d, 0) = dL."""

    a: int
    b: int = 0

    def __add__(self, other: "DivClass") -> "DivClass":
        return DivClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivClass") -> "DivClass":
        return DivClass(self.a - other.a, self.b - other.b)

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0


ZERO_CLASS = DivClass(0, 0)


@dataclass(frozen=True)
class SurfaceModel:
    """Which (surface, boundary divisor) pair a computation lives on."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in (HIRZEBRUCH, PLANE):
            raise ValueError(f"unknown surface kind {self.kind!r}")
        if self.kind == PLANE and self.n != 0:
            raise ValueError("the plane model carries no n")
        if self.n < 0:
            raise ValueError("Hirzebruch index must be >= 0")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def hirzebruch(cls, n: int) -> "SurfaceModel":
        return cls(HIRZEBRUCH, n)

    @classmethod
    def plane_line(cls) -> "SurfaceModel":
        return cls(PLANE, 0)

    @property
    def is_plane(self) -> bool:
        return self.kind == PLANE

    def name(self) -> str:
        return "p2" if self.is_plane else f"f{self.n}"

    @classmethod
    def from_name(cls, name: str) -> "SurfaceModel":
        name = name.strip().lower()
        if name in ("p2", "plane"):
            return cls.plane_line()
        if name.startswith("f") and name[1:].isdigit():
            return cls.hirzebruch(int(name[1:]))
        raise ValueError(f"unknown surface {name!r} (expected f<n> or p2)")

    def _check(self, d: DivClass):
        if self.is_plane and d.b != 0:
            raise ValueError(f"{d} is not a plane class (dL stores (d, 0))")

    # -- intersection theory ---------------------------------------------------

    def intersect(self, d1: DivClass, d2: DivClass) -> int:
        """Symmetric bilinear pairing in the model's basis."""
        self._check(d1)
        self._check(d2)
        if self.is_plane:
            return d1.a * d2.a
        # (a1 S + b1 F).(a2 S + b2 F) with S.S = n, S.F = 1, F.F = 0
        return d1.a * d2.a * self.n + d1.a * d2.b + d1.b * d2.a

    def boundary_class(self) -> DivClass:
        """The class of the boundary divisor: E = S - nF, or L."""
        return DivClass(1, 0) if self.is_plane else DivClass(1, -self.n)

    def fiber_class(self) -> DivClass:
        if self.is_plane:
            raise ValueError("the plane has no fiber class")
        return DivClass(0, 1)

    def canonical(self) -> DivClass:
        """The canonical class: -2S + (n-2)F on F_n, -3L on the plane."""
        return DivClass(-3) if self.is_plane else DivClass(-2, self.n - 2)

    def dot_e(self, d: DivClass) -> int:
        """D.E, the total tangency budget of the class."""
        self._check(d)
        return d.a if self.is_plane else d.b

    def upsilon(self, d: DivClass, g: int, beta: TangencySeq) -> int:
        """-(K+E).D + |beta| + g - 1: the number of free point conditions."""
        self._check(d)
        if self.is_plane:
            lead = 2 * d.a
        else:
            lead = d.a * (self.n + 2) + d.b
        return lead + beta.size() + g - 1

    def is_effective(self, d: DivClass) -> bool:
        """Membership in the effective cone; the zero class counts as effective."""
        self._check(d)
        if self.is_plane:
            return d.a >= 0
        return d.a >= 0 and d.a * self.n + d.b >= 0

    def subtract_e(self, d: DivClass) -> DivClass:
        """D - E, the residual class after splitting off the boundary."""
        self._check(d)
        if self.is_plane:
            return DivClass(d.a - 1)
        return DivClass(d.a - 1, d.b + self.n)

    def arithmetic_genus(self, d: DivClass) -> int:
        """Adjunction: 1 + (D.D + K.D)/2.  Rejects non-effective classes."""
        if not self.is_effective(d):
            raise ValueError(f"{d} is not effective on {self.name()}")
        val = self.intersect(d, d) + self.intersect(self.canonical(), d)
        assert val % 2 == 0
        return 1 + val // 2

    # -- (E, F) basis conversions ----------------------------------------------

    def to_ef_basis(self, d: DivClass) -> tuple[int, int]:
        """aS + bF -> (a, a n + b) as a E + (a n + b) F.  Hirzebruch only."""
        if self.is_plane:
            raise ValueError("the plane has no (E, F) basis")
        return d.a, d.a * self.n + d.b

    def from_ef_basis(self, a: int, b: int) -> DivClass:
        """a E + b F -> aS + (b - a n)F.  Hirzebruch only."""
        if self.is_plane:
            raise ValueError("the plane has no (E, F) basis")
        return DivClass(a, b - a * self.n)

    # -- text forms --------------------------------------------------------------

    def format_class(self, d: DivClass, basis: str = "sf") -> str:
        self._check(d)
        if self.is_plane:
            return f"{d.a}L"
        if basis == "ef":
            a, b = self.to_ef_basis(d)
            letters = ("E", "F")
        elif basis == "sf":
            a, b = d.a, d.b
            letters = ("S", "F")
        else:
            raise ValueError(f"unknown basis {basis!r}")
        terms = []
        for coeff, letter in zip((a, b), letters):
            if coeff == 0:
                continue
            mag = "" if abs(coeff) == 1 else str(abs(coeff))
            sign = "-" if coeff < 0 else ("+" if terms else "")
            terms.append(f"{sign}{mag}{letter}")
        return "".join(terms) or "0"

    def parse_class(self, text: str, basis: str = "sf") -> DivClass:
        """Accepts ``a,b`` (interpreted in `basis`), ``aS+bF``, ``aE+bF``, ``dL`` or ``d``."""
        text = text.strip().replace(" ", "")
        if text == "0":
            return ZERO_CLASS
        if self.is_plane:
            if text.upper().endswith("L"):
                text = text[:-1]
            try:
                return DivClass(int(text))
            except ValueError as exc:
                raise ValueError(f"cannot parse plane class {text!r}") from exc
        if "," in text:
            parts = text.split(",")
            if len(parts) != 2:
                raise ValueError(f"cannot parse class {text!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"cannot parse class {text!r}") from exc
            return self.from_ef_basis(a, b) if basis == "ef" else DivClass(a, b)
        coeffs = _parse_symbolic(text)
        if "L" in coeffs:
            raise ValueError(f"{text!r} is a plane class, not a Hirzebruch one")
        first = coeffs.pop("S", None)
        if first is not None:
            return DivClass(first, coeffs.pop("F", 0))
        a = coeffs.pop("E", 0)
        return self.from_ef_basis(a, coeffs.pop("F", 0))


def _parse_symbolic(text: str) -> dict[str, int]:
    """Split ``2S+3F`` / ``-2E-F`` style class strings into letter -> coefficient."""
    out: dict[str, int] = {}
    token = ""
    for ch in text + "+":
        if ch in "+-" and token:
            _consume_token(token, out)
            token = ch if ch == "-" else ""
        elif ch != "+" or token:
            token += ch
    if token and token not in ("-",):
        _consume_token(token, out)
    return out


def _consume_token(token: str, out: dict[str, int]):
    letter = token[-1].upper()
    if letter not in "SEFL":
        raise ValueError(f"cannot parse class term {token!r}")
    mag = token[:-1]
    if mag in ("", "+"):
        coeff = 1
    elif mag == "-":
        coeff = -1
    else:
        try:
            coeff = int(mag)
        except ValueError as exc:
            raise ValueError(f"cannot parse class term {token!r}") from exc
    out[letter] = out.get(letter, 0) + coeff

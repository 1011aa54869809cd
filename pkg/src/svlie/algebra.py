"""The twisted Schrodinger-Virasoro Lie algebra as exact data.

Basis ``{L[n], Y[n], M[n], C : n in Z}`` over Gaussian rationals, with

    [L(n), L(m)] = (m - n) L(n+m) + delta(n+m, 0) * (n^3 - n)/12 * C
    [L(n), Y(m)] = (m - n/2) Y(n+m)
    [L(n), M(m)] = m M(n+m)
    [Y(n), Y(m)] = (m - n) M(n+m)
    [Y, M] = [M, M] = [., C] = 0

Elements, brackets and the nilpotent exponentials below are always exact;
windows only bound which test cases get enumerated, never the arithmetic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .scalar import Matrix, ONE, Scalar, ZERO, format_scalar, nullspace

__all__ = [
    "BasisVector",
    "Element",
    "Window",
    "L",
    "Y",
    "M",
    "C",
    "ZERO_ELEMENT",
    "single",
    "degree",
    "bracket",
    "bracket_basis",
    "exp_ad",
    "jacobi_residual",
    "centralizer_window",
    "format_element",
]

_KIND_ORDER = {"L": 0, "Y": 1, "M": 2, "C": 3}


@dataclass(frozen=True)
class BasisVector:
    """One of L[n], Y[n], M[n] or the central C (which carries no index)."""

    kind: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.kind == "C" and self.index != 0:
            raise ValueError("C carries no index")

    @property
    def degree(self) -> int:
        return 0 if self.kind == "C" else self.index

    def sort_key(self) -> tuple[int, int]:
        return (_KIND_ORDER[self.kind], self.index)

    def __str__(self) -> str:
        return "C" if self.kind == "C" else f"{self.kind}[{self.index}]"


def L(n: int) -> BasisVector:
    return BasisVector("L", n)


def Y(n: int) -> BasisVector:
    return BasisVector("Y", n)


def M(n: int) -> BasisVector:
    return BasisVector("M", n)


C = BasisVector("C")


def degree(b: BasisVector) -> int:
    """Gradation degree: the index for L/Y/M, zero for C."""
    return b.degree


class Element:
    """Finitely supported linear combination of basis vectors over Scalar.

    Kept zero-free, so structural equality is semantic equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        data: dict[BasisVector, Scalar] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for bv, coeff in items:
            coeff = Scalar.coerce(coeff)
            if not coeff:
                continue
            acc = data.get(bv)
            total = coeff if acc is None else acc + coeff
            if total:
                data[bv] = total
            elif acc is not None:
                del data[bv]
        self._terms = data

    @classmethod
    def _wrap(cls, clean: dict[BasisVector, Scalar]) -> "Element":
        out = object.__new__(cls)
        out._terms = clean
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, bv: BasisVector) -> Scalar:
        return self._terms.get(bv, ZERO)

    def terms(self) -> list[tuple[BasisVector, Scalar]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def support(self) -> set[BasisVector]:
        return set(self._terms)

    def homogeneous_component(self, n: int) -> "Element":
        return Element._wrap(
            {bv: cf for bv, cf in self._terms.items() if bv.degree == n}
        )

    def degrees(self) -> set[int]:
        return {bv.degree for bv in self._terms}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        data = dict(self._terms)
        for bv, cf in other._terms.items():
            acc = data.get(bv)
            total = cf if acc is None else acc + cf
            if total:
                data[bv] = total
            elif acc is not None:
                del data[bv]
        return Element._wrap(data)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element._wrap({bv: -cf for bv, cf in self._terms.items()})

    def __mul__(self, factor) -> "Element":
        factor = Scalar.coerce(factor)
        if not factor:
            return ZERO_ELEMENT
        return Element._wrap({bv: cf * factor for bv, cf in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<Element {format_element(self)}>"


ZERO_ELEMENT = Element()


def single(bv: BasisVector, coeff=1) -> Element:
    """The element ``coeff * bv``."""
    coeff = Scalar.coerce(coeff)
    return Element._wrap({bv: coeff}) if coeff else ZERO_ELEMENT


def format_element(x: Element) -> str:
    """Canonical text form: terms in basis order, unit coefficients elided."""
    if x.is_zero():
        return "0"
    pieces: list[str] = []
    for bv, cf in x.terms():
        negative = (cf.re < 0) if cf.re else (cf.im < 0)
        magnitude = -cf if negative else cf
        if magnitude == ONE:
            body = str(bv)
        else:
            text = format_scalar(magnitude)
            if "+" in text or "-" in text:
                text = f"({text})"
            body = f"{text}*{bv}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


@functools.lru_cache(maxsize=None)
def bracket_basis(a: BasisVector, b: BasisVector) -> Element:
    """Bracket of two basis vectors, straight from the structure constants."""
    ka, kb = a.kind, b.kind
    if ka == "C" or kb == "C":
        return ZERO_ELEMENT
    if ka != "L" and kb == "L":
        return -bracket_basis(b, a)
    n, m = a.index, b.index
    if ka == "L" and kb == "L":
        terms: list[tuple[BasisVector, Fraction]] = []
        if m != n:
            terms.append((L(n + m), Fraction(m - n)))
        if n + m == 0:
            central = Fraction(n**3 - n, 12)
            if central:
                terms.append((C, central))
        return Element(terms)
    if ka == "L" and kb == "Y":
        cf = Fraction(2 * m - n, 2)
        return Element([(Y(n + m), cf)]) if cf else ZERO_ELEMENT
    if ka == "L" and kb == "M":
        return Element([(M(n + m), m)]) if m else ZERO_ELEMENT
    if ka == "Y" and kb == "Y":
        return Element([(M(n + m), m - n)]) if m != n else ZERO_ELEMENT
    return ZERO_ELEMENT


def bracket(x: Element, y: Element) -> Element:
    """Bilinear extension of the basis bracket table."""
    acc: dict[BasisVector, Scalar] = {}
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            base = bracket_basis(a, b)
            if base.is_zero():
                continue
            scale = ca * cb
            if not scale:
                continue
            for bv, cf in base._terms.items():
                prev = acc.get(bv)
                total = scale * cf if prev is None else prev + scale * cf
                if total:
                    acc[bv] = total
                elif prev is not None:
                    del acc[bv]
    return Element._wrap(acc)


_HALF = Scalar(Fraction(1, 2))


def exp_ad(x: Element, target: Element) -> Element:
    """Apply exp(ad x) to ``target`` for x supported on Y and M terms.

    On that span ``(ad x)^3 = 0`` on the whole algebra, so the series is the
    exact polynomial ``target + [x, t] + [x, [x, t]]/2``.
    """
    for bv in x._terms:
        if bv.kind not in ("Y", "M"):
            raise ValueError(f"ad not nilpotent / not in inner radical: {bv}")
    first = bracket(x, target)
    second = bracket(x, first)
    return target + first + _HALF * second


def jacobi_residual(x: Element, y: Element, z: Element) -> Element:
    """[[x,y],z] + [[y,z],x] + [[z,x],y]; zero whenever the table is a Lie bracket."""
    return (
        bracket(bracket(x, y), z)
        + bracket(bracket(y, z), x)
        + bracket(bracket(z, x), y)
    )


@dataclass(frozen=True)
class Window:
    """Enumeration bound |index| <= radius for tests; never truncates arithmetic."""

    radius: int

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError("window radius must be at least 1")

    def vectors(self) -> tuple[BasisVector, ...]:
        out = [
            BasisVector(kind, n)
            for kind in ("L", "Y", "M")
            for n in range(-self.radius, self.radius + 1)
        ]
        out.append(C)
        return tuple(out)

    def contains(self, x: Element) -> bool:
        return all(abs(bv.index) <= self.radius for bv in x._terms)


def _normalized(e: Element) -> Element:
    lead = e.terms()[0][1]
    return e if lead == ONE else e * lead.inverse()


def centralizer_window(window: Window) -> list[Element]:
    """Exact basis of the in-window vectors commuting with every in-window generator."""
    gens = window.vectors()
    columns = {bv: i for i, bv in enumerate(gens)}
    rows: dict[tuple[BasisVector, BasisVector], list[Scalar]] = {}
    for bv, col in columns.items():
        for g in gens:
            for out_bv, cf in bracket_basis(bv, g)._terms.items():
                key = (g, out_bv)
                row = rows.get(key)
                if row is None:
                    row = rows[key] = [ZERO] * len(gens)
                row[col] = row[col] + cf
    ordered = sorted(rows, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
    kernel = nullspace(Matrix.from_rows([rows[k] for k in ordered]))
    basis = [_normalized(Element(zip(gens, vec))) for vec in kernel]
    return sorted(basis, key=lambda e: e.terms()[0][0].sort_key())

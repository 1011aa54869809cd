"""Exact Gaussian-rational scalars and a small dense exact linear solver.

Every coefficient in this package is a Gaussian rational ``a + b*i`` with
``a, b`` rational, kept in lowest terms by :class:`fractions.Fraction`.
Nothing here rounds: ``==`` is the only notion of equality, and the solver
below eliminates with exact pivots (first nonzero entry in column order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Scalar",
    "Matrix",
    "ParseError",
    "ZERO",
    "ONE",
    "I",
    "format_scalar",
    "parse_scalar",
    "scan_scalar",
    "scan_simple_scalar",
    "nullspace",
]


class ParseError(ValueError):
    """Syntax error in the scalar or element text codecs."""

    def __init__(self, offset: int, expected: str):
        super().__init__(f"syntax error at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational ``re + im*i``; immutable and always canonical."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a scalar")

    @staticmethod
    def _lift(value) -> "Scalar | None":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(Fraction(value))
        return None

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = Scalar._lift(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar._lift(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = Scalar._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = Scalar._lift(other)
        if other is None:
            return NotImplemented
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            raise TypeError("scalar exponents must be integers")
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = ONE
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(Fraction(0), Fraction(1))


def format_scalar(x: Scalar) -> str:
    """Canonical text form: ``parse_scalar(format_scalar(x)) == x`` exactly."""
    if x.is_zero():
        return "0"
    if not x.im:
        return str(x.re)
    imag = f"{abs(x.im)}i"
    if not x.re:
        return imag if x.im > 0 else f"-{imag}"
    sign = "+" if x.im > 0 else "-"
    return f"{x.re}{sign}{imag}"


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _scan_unsigned_fraction(text: str, pos: int) -> tuple[Fraction, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError(start, "digit")
    numerator = int(text[start:pos])
    slash = _skip_ws(text, pos)
    if slash < len(text) and text[slash] == "/":
        dstart = _skip_ws(text, slash + 1)
        dpos = dstart
        while dpos < len(text) and text[dpos].isdigit():
            dpos += 1
        if dpos == dstart:
            raise ParseError(dstart, "digit")
        denominator = int(text[dstart:dpos])
        if denominator == 0:
            raise ParseError(dstart, "nonzero denominator")
        return Fraction(numerator, denominator), dpos
    return Fraction(numerator), pos


def scan_scalar(text: str, pos: int = 0) -> tuple[Scalar, int]:
    """Scan one scalar starting at ``pos``; returns (value, end position).

    Accepted forms: ``p``, ``p/q``, ``p/q i``, ``p/q+r/s i``, ``p/q-r/s i``,
    each with an optional leading sign; denominator 1 may be omitted and
    whitespace between atoms is ignored.
    """
    pos = _skip_ws(text, pos)
    sign = 1
    if pos < len(text) and text[pos] in "+-":
        if text[pos] == "-":
            sign = -1
        pos = _skip_ws(text, pos + 1)
    first, pos = _scan_unsigned_fraction(text, pos)
    after = _skip_ws(text, pos)
    if after < len(text) and text[after] == "i":
        return Scalar(Fraction(0), sign * first), after + 1
    if after < len(text) and text[after] in "+-":
        sign2 = -1 if text[after] == "-" else 1
        second, pos = _scan_unsigned_fraction(text, _skip_ws(text, after + 1))
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != "i":
            raise ParseError(pos, "'i'")
        return Scalar(sign * first, sign2 * second), pos + 1
    return Scalar(sign * first), pos


def scan_simple_scalar(text: str, pos: int) -> tuple[Scalar, int]:
    """Scan an unsigned one-piece scalar ``p[/q][i]`` (no inner signs)."""
    value, pos = _scan_unsigned_fraction(text, pos)
    after = _skip_ws(text, pos)
    if after < len(text) and text[after] == "i":
        return Scalar(Fraction(0), value), after + 1
    return Scalar(value), pos


def parse_scalar(text: str) -> Scalar:
    """Parse a complete scalar string; rejects trailing input."""
    value, pos = scan_scalar(text, 0)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError(pos, "end of scalar")
    return value


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of scalars."""

    rows: int
    cols: int
    entries: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(row) for row in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged rows")
        entries = tuple(Scalar.coerce(v) for row in rows for v in row)
        return cls(nrows, ncols, entries)

    def at(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list[Scalar]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def mul_vector(self, vector) -> list[Scalar]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = ZERO
            base = i * self.cols
            for j, v in enumerate(vector):
                if v:
                    e = self.entries[base + j]
                    if e:
                        acc = acc + e * v
            out.append(acc)
        return out


def nullspace(m: Matrix) -> list[list[Scalar]]:
    """Exact basis of the kernel of ``m``; empty list iff the kernel is trivial.

    Gaussian elimination with the first nonzero pivot in column order; the
    returned vectors carry a 1 in their free coordinate, so they are
    linearly independent by construction.
    """
    work = m.row_lists()
    nrows, ncols = m.rows, m.cols
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, nrows):
            if work[k][c]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        row = work[r]
        if row[c] != ONE:
            inv = row[c].inverse()
            for j in range(c, ncols):
                if row[j]:
                    row[j] = row[j] * inv
        for k in range(r + 1, nrows):
            factor = work[k][c]
            if not factor:
                continue
            target = work[k]
            target[c] = ZERO
            for j in range(c + 1, ncols):
                rj = row[j]
                if rj:
                    target[j] = target[j] - factor * rj
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    pivot_set = set(pivot_cols)
    basis: list[list[Scalar]] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[free] = ONE
        for i in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[i]
            row = work[i]
            acc = ZERO
            for j in range(pc + 1, ncols):
                rj = row[j]
                if rj and vec[j]:
                    acc = acc + rj * vec[j]
            if acc:
                vec[pc] = -acc
        basis.append(vec)
    return basis

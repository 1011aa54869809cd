"""Derivation rules, the Leibniz checker, and windowed classification oracles.

A classified derivation is ``c1*R1 + c2*R2 + c3*R3 + ad(z)`` where the three
outer rules act by

    R1: L[n] -> M[n]          R2: L[n] -> n M[n]
    R3: Y[n] -> Y[n], M[n] -> 2 M[n]

and everything kills C.  The oracles below assemble exact linear systems
over window-bounded unknowns and solve them with the exact kernel solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .algebra import (
    BasisVector,
    C,
    Element,
    L,
    M,
    Window,
    Y,
    ZERO_ELEMENT,
    bracket,
    bracket_basis,
    format_element,
    single,
)
from .expr import parse_basis_vector, parse_element
from .scalar import Matrix, ONE, Scalar, ZERO, format_scalar, nullspace, parse_scalar

__all__ = [
    "DerivationError",
    "DerivationParams",
    "ClassifiedDerivation",
    "WindowMap",
    "apply_classified",
    "classified_window_map",
    "degree0_window_map",
    "leibniz_check",
    "classify_degree0",
    "decompose",
    "outer_independence_kernel",
    "equivariant_hom_nullity",
    "window_map_to_json",
    "window_map_from_json",
    "classified_to_json",
    "classified_from_json",
]


class DerivationError(ValueError):
    """A window map fails one of the derivation classification contracts."""


@dataclass(frozen=True)
class DerivationParams:
    """Degree-zero normal form: L[n] -> (d*n + d1) M[n], Y[n] -> g0 Y[n], M[n] -> 2 g0 M[n], C -> 0."""

    d: Scalar
    d1: Scalar
    g0: Scalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", Scalar.coerce(self.d))
        object.__setattr__(self, "d1", Scalar.coerce(self.d1))
        object.__setattr__(self, "g0", Scalar.coerce(self.g0))


@dataclass(frozen=True)
class ClassifiedDerivation:
    """Coefficients on the three outer rules plus an inner part ad(inner)."""

    c1: Scalar = ZERO
    c2: Scalar = ZERO
    c3: Scalar = ZERO
    inner: Element = ZERO_ELEMENT

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", Scalar.coerce(self.c1))
        object.__setattr__(self, "c2", Scalar.coerce(self.c2))
        object.__setattr__(self, "c3", Scalar.coerce(self.c3))


def _outer_image(c1: Scalar, c2: Scalar, c3: Scalar, bv: BasisVector) -> Element:
    if bv.kind == "L":
        return single(M(bv.index), c1 + c2 * bv.index)
    if bv.kind == "Y":
        return single(Y(bv.index), c3)
    if bv.kind == "M":
        return single(M(bv.index), 2 * c3)
    return ZERO_ELEMENT


def apply_classified(deriv: ClassifiedDerivation, x: Element) -> Element:
    """Linear extension of the classified rules plus the inner bracket action."""
    out = bracket(deriv.inner, x)
    for bv, cf in x.terms():
        image = _outer_image(deriv.c1, deriv.c2, deriv.c3, bv)
        if not image.is_zero():
            out = out + cf * image
    return out


@dataclass(frozen=True, eq=False)
class WindowMap:
    """Extensional linear map: one exact image per in-window basis vector."""

    window: Window
    images: Mapping[BasisVector, Element]

    def __post_init__(self) -> None:
        required = set(self.window.vectors())
        if set(self.images) != required:
            raise ValueError("window map must define exactly the in-window basis vectors")

    @classmethod
    def from_function(cls, radius: int, fn: Callable[[BasisVector], Element]) -> "WindowMap":
        window = Window(radius)
        return cls(window, {bv: fn(bv) for bv in window.vectors()})

    def image(self, bv: BasisVector) -> Element:
        try:
            return self.images[bv]
        except KeyError:
            raise ValueError(f"generator outside window: {bv}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindowMap):
            return NotImplemented
        return self.window == other.window and dict(self.images) == dict(other.images)


def classified_window_map(deriv: ClassifiedDerivation, radius: int) -> WindowMap:
    """The exact (untruncated) action of a classified derivation on a window."""
    return WindowMap.from_function(radius, lambda bv: apply_classified(deriv, single(bv)))


def degree0_window_map(params: DerivationParams, radius: int) -> WindowMap:
    """The map of the degree-zero normal form with the given parameters."""

    def image(bv: BasisVector) -> Element:
        if bv.kind == "L":
            return single(M(bv.index), params.d * bv.index + params.d1)
        if bv.kind == "Y":
            return single(Y(bv.index), params.g0)
        if bv.kind == "M":
            return single(M(bv.index), 2 * params.g0)
        return ZERO_ELEMENT

    return WindowMap.from_function(radius, image)


def leibniz_check(dmap: WindowMap) -> list[tuple[BasisVector, BasisVector, Element]]:
    """Violations of D[x,y] = [Dx,y] + [x,Dy] over comparable in-window pairs.

    A pair is compared only when [x,y] is supported inside the window and
    the images of x, y and of every term of [x,y] stay inside the window;
    pairs that escape are skipped, never guessed.
    """
    window = dmap.window
    gens = window.vectors()
    violations = []
    in_window_image = {bv: window.contains(dmap.image(bv)) for bv in gens}
    for i, x in enumerate(gens):
        for y in gens[i + 1 :]:
            if not (in_window_image[x] and in_window_image[y]):
                continue
            xy = bracket_basis(x, y)
            if not window.contains(xy):
                continue
            lhs = ZERO_ELEMENT
            comparable = True
            for bv, cf in xy.terms():
                if not in_window_image[bv]:
                    comparable = False
                    break
                lhs = lhs + cf * dmap.image(bv)
            if not comparable:
                continue
            rhs = bracket(dmap.image(x), single(y)) + bracket(single(x), dmap.image(y))
            residual = lhs - rhs
            if not residual.is_zero():
                violations.append((x, y, residual))
    return violations


def classify_degree0(dmap: WindowMap) -> DerivationParams:
    """Fit (d, d1, g0) of the degree-zero normal form and verify it everywhere.

    Raises DerivationError("not degree-0 into S: ...") when some image leaves
    the span of the same-index Y and M vectors, and ("not a derivation of the
    stated form: ...") when the fit read off L[0], L[1], Y[0] fails on any
    window generator (including C, whose image must vanish).
    """
    window = dmap.window
    for bv in window.vectors():
        if bv.kind == "C":
            continue
        for t in dmap.image(bv).support():
            if t.kind not in ("Y", "M") or t.index != bv.index:
                raise DerivationError(f"not degree-0 into S: {bv}")
    d1 = dmap.image(L(0)).coeff(M(0))
    d = dmap.image(L(1)).coeff(M(1)) - d1
    g0 = dmap.image(Y(0)).coeff(Y(0))
    params = DerivationParams(d, d1, g0)
    expected = degree0_window_map(params, window.radius)
    for bv in window.vectors():
        if dmap.image(bv) != expected.image(bv):
            raise DerivationError(f"not a derivation of the stated form: {bv}")
    return params


def decompose(dmap: WindowMap) -> ClassifiedDerivation:
    """Split a windowed derivation as outer coefficients plus ad(z).

    The nonzero-degree part of z is read off the image of L[0] (the degree-n
    component of a derivation applied to L[0] equals -n * z_n); the L[0] and
    Y[0] coefficients of z come from the residual image of L[1]; the central
    ambiguity of the inner representative is fixed by leaving the M[0] and C
    coefficients of z at zero.  Raises DerivationError("residual not in
    classified span: ...") when the reconstruction disagrees with the map on
    some window generator.
    """
    window = dmap.window
    if window.radius < 3:
        raise ValueError("decompose needs window radius >= 3")
    img_l0 = dmap.image(L(0))
    z = Element(
        [(bv, -cf / bv.degree) for bv, cf in img_l0.terms() if bv.degree != 0]
    )
    residual_l0 = img_l0 - bracket(z, single(L(0)))
    c1 = residual_l0.coeff(M(0))
    if residual_l0 != single(M(0), c1):
        raise DerivationError("residual not in classified span: L[0]")
    residual_l1 = dmap.image(L(1)) - bracket(z, single(L(1)))
    a = residual_l1.coeff(L(1))
    b = 2 * residual_l1.coeff(Y(1))
    c2 = residual_l1.coeff(M(1)) - c1
    z = z + Element([(L(0), a), (Y(0), b)])
    c3 = (dmap.image(Y(0)) - bracket(z, single(Y(0)))).coeff(Y(0))
    result = ClassifiedDerivation(c1, c2, c3, z)
    for bv in window.vectors():
        if dmap.image(bv) != apply_classified(result, single(bv)):
            raise DerivationError(f"residual not in classified span: {bv}")
    return result


def outer_independence_kernel(
    window: Window,
) -> list[tuple[Scalar, Scalar, Scalar, Element]]:
    """Exact kernel of ``c1*R1 + c2*R2 + c3*R3 = ad(z)`` with z in-window.

    Returns one (c1, c2, c3, z) tuple per kernel basis vector; the
    classification evidence is that every solution has c1 = c2 = c3 = 0
    and z central.
    """
    gens = window.vectors()
    ncols = 3 + len(gens)
    rows: dict[tuple[BasisVector, BasisVector], list[Scalar]] = {}

    def row_at(g: BasisVector, out_bv: BasisVector) -> list[Scalar]:
        key = (g, out_bv)
        row = rows.get(key)
        if row is None:
            row = rows[key] = [ZERO] * ncols
        return row

    for g in gens:
        for col, rule in enumerate(
            (
                _outer_image(ONE, ZERO, ZERO, g),
                _outer_image(ZERO, ONE, ZERO, g),
                _outer_image(ZERO, ZERO, ONE, g),
            )
        ):
            for out_bv, cf in rule.terms():
                row = row_at(g, out_bv)
                row[col] = row[col] + cf
        for zcol, zbv in enumerate(gens):
            for out_bv, cf in bracket_basis(zbv, g).terms():
                row = row_at(g, out_bv)
                row[3 + zcol] = row[3 + zcol] - cf
    ordered = sorted(rows, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
    kernel = nullspace(Matrix.from_rows([rows[k] for k in ordered]))
    out = []
    for vec in kernel:
        z = Element(zip(gens, vec[3:]))
        out.append((vec[0], vec[1], vec[2], z))
    return out


def equivariant_hom_nullity(window: Window) -> int:
    """Kernel dimension of the windowed equivariance constraints for maps
    sending Y-classes into the Virasoro part; the contract is 0.

    Unknowns are the in-window coefficients of f(Y[n]) = sum_k p[n,k] L[k]
    + c[n] C; for every in-window pair (m, n) with m+n also in-window the
    constraint f([L[m], Y[n]]) = [L[m], f(Y[n])] is expanded exactly, with
    out-of-window components of the codomain still constraining the
    in-window unknowns.
    """
    radius = window.radius
    if radius < 2:
        raise ValueError("equivariant_hom_nullity needs window radius >= 2")
    span = range(-radius, radius + 1)
    index: dict[tuple, int] = {}
    for n in span:
        for k in span:
            index[("p", n, k)] = len(index)
    for n in span:
        index[("c", n)] = len(index)

    rows: dict[tuple, dict[int, Scalar]] = {}

    def add(row_key: tuple, col: int, cf: Scalar) -> None:
        row = rows.setdefault(row_key, {})
        total = row.get(col, ZERO) + cf
        if total:
            row[col] = total
        elif col in row:
            del row[col]

    for m in span:
        for n in span:
            if abs(m + n) > radius:
                continue
            action = bracket_basis(L(m), Y(n)).coeff(Y(m + n))
            for k in span:
                for bv, cf in bracket_basis(L(m), L(k)).terms():
                    add((m, n, bv), index[("p", n, k)], cf)
            if action:
                for j in span:
                    add((m, n, L(j)), index[("p", m + n, j)], -action)
                add((m, n, C), index[("c", m + n)], -action)

    # Dedupe proportional rows before the dense solve; the system is large
    # but each raw row touches at most a handful of unknowns.
    seen: set[tuple] = set()
    dense_rows: list[list[Scalar]] = []
    for row_key in rows:
        row = rows[row_key]
        if not row:
            continue
        items = sorted(row.items())
        lead = items[0][1]
        shape = tuple((col, cf / lead) for col, cf in items)
        if shape in seen:
            continue
        seen.add(shape)
        dense = [ZERO] * len(index)
        for col, cf in items:
            dense[col] = cf
        dense_rows.append(dense)
    if not dense_rows:
        return len(index)
    return len(nullspace(Matrix.from_rows(dense_rows)))


def window_map_to_json(dmap: WindowMap) -> dict:
    """JSON form: {"radius": N, "images": {"L[1]": "<element expr>", ...}}."""
    images = {
        str(bv): format_element(dmap.image(bv))
        for bv in sorted(dmap.window.vectors(), key=lambda b: b.sort_key())
    }
    return {"radius": dmap.window.radius, "images": images}


def window_map_from_json(data: dict) -> WindowMap:
    radius = data["radius"]
    if not isinstance(radius, int):
        raise ValueError("radius must be an integer")
    raw = data["images"]
    images = {parse_basis_vector(key): parse_element(value) for key, value in raw.items()}
    return WindowMap(Window(radius), images)


def classified_to_json(deriv: ClassifiedDerivation) -> dict:
    return {
        "c1": format_scalar(deriv.c1),
        "c2": format_scalar(deriv.c2),
        "c3": format_scalar(deriv.c3),
        "inner": format_element(deriv.inner),
    }


def classified_from_json(data: dict) -> ClassifiedDerivation:
    return ClassifiedDerivation(
        parse_scalar(data["c1"]),
        parse_scalar(data["c2"]),
        parse_scalar(data["c3"]),
        parse_element(data["inner"]),
    )

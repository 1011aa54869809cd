"""Reproducible verification suites behind the CLI.

All randomness comes from SplitMix64 (documented below), so identical
(suite, radius, seed, cases) always produce identical reports on any
platform.  The ``lemma36-verdict`` suite audits, component by component, a
candidate closed form for the composition law against the generator-wise
oracle; the suite itself passes iff the shipped closed form matches the
oracle — candidate agreement is reported, never required.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (
    BasisVector,
    C,
    Element,
    L,
    M,
    Window,
    Y,
    centralizer_window,
    format_element,
    jacobi_residual,
    single,
)
from .autgroup import (
    AutomorphismParams,
    FiniteSupportSeq,
    apply,
    automorphism_window_map,
    compose,
    compose_oracle,
    factorize,
    identity,
    invert,
    params_to_json,
)
from .derivations import (
    ClassifiedDerivation,
    DerivationError,
    DerivationParams,
    WindowMap,
    apply_classified,
    classified_window_map,
    classify_degree0,
    decompose,
    degree0_window_map,
    equivariant_hom_nullity,
    leibniz_check,
    outer_independence_kernel,
)
from .scalar import ONE, Scalar, ZERO, format_scalar

__all__ = ["SUITES", "SplitMix64", "run_suite", "render_text"]

SUITES = (
    "jacobi",
    "center",
    "derivations",
    "hom-vanishing",
    "group-law",
    "lemma36-verdict",
    "all",
)

_MAX_WITNESSES = 3


class SplitMix64:
    """splitmix64: 64-bit state stepped by the golden-gamma constant.

    next() = mix(state += 0x9E3779B97F4A7C15) with the standard xor-shift
    multiplies; fixed here so reports are reproducible everywhere.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.next() % len(seq)]


def random_rational(rng: SplitMix64) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def random_scalar(rng: SplitMix64, nonzero: bool = False) -> Scalar:
    while True:
        re = random_rational(rng)
        im = random_rational(rng) if rng.randint(0, 2) == 0 else Fraction(0)
        value = Scalar(re, im)
        if value or not nonzero:
            return value


def random_seq(rng: SplitMix64, reach: int = 3) -> FiniteSupportSeq:
    positions = [p for p in range(-reach, reach + 1) if p != 0]
    chosen = {}
    for _ in range(rng.randint(0, 2)):
        chosen[rng.choice(positions)] = random_scalar(rng, nonzero=True)
    return FiniteSupportSeq.of(chosen)


def random_params(rng: SplitMix64) -> AutomorphismParams:
    return AutomorphismParams(
        b=random_seq(rng),
        c=random_seq(rng),
        i=rng.randint(0, 1),
        u=random_scalar(rng, nonzero=True),
        w=random_scalar(rng, nonzero=True),
        alpha=random_scalar(rng),
        beta=random_scalar(rng),
        gamma=random_scalar(rng),
    )


def random_shear(rng: SplitMix64) -> AutomorphismParams:
    return AutomorphismParams(
        alpha=random_scalar(rng), beta=random_scalar(rng), gamma=random_scalar(rng)
    )


def random_element(rng: SplitMix64, radius: int, max_terms: int = 3) -> Element:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        kind = rng.choice("LYM")
        terms.append((BasisVector(kind, rng.randint(-radius, radius)), random_scalar(rng)))
    return Element(terms)


def random_classified(rng: SplitMix64, radius: int) -> ClassifiedDerivation:
    return ClassifiedDerivation(
        random_scalar(rng),
        random_scalar(rng),
        random_scalar(rng),
        random_element(rng, radius),
    )


def random_degree0(rng: SplitMix64) -> DerivationParams:
    return DerivationParams(random_scalar(rng), random_scalar(rng), random_scalar(rng))


def _check(name: str, cases: int, witnesses: list[str]) -> dict:
    return {
        "name": name,
        "cases": cases,
        "violations": len(witnesses),
        "witnesses": witnesses[:_MAX_WITNESSES],
    }


def _jacobi_checks(radius: int) -> list[dict]:
    gens = Window(radius).vectors()
    elems = [single(bv) for bv in gens]
    witnesses = []
    count = 0
    for x in elems:
        for y in elems:
            for z in elems:
                count += 1
                if not jacobi_residual(x, y, z).is_zero():
                    witnesses.append(f"({x}, {y}, {z})")
    return [_check("jacobi-residual", count, witnesses)]


def _center_checks(radius: int) -> list[dict]:
    found = centralizer_window(Window(radius))
    expected = [single(M(0)), single(C)]
    witnesses = []
    if found != expected:
        witnesses.append("basis: " + ", ".join(format_element(e) for e in found))
    return [_check("centralizer-basis", 1, witnesses)]


def _derivation_checks(radius: int, seed: int, cases: int) -> list[dict]:
    checks = []
    unit_rules = [
        ("rule-l-to-m", ClassifiedDerivation(c1=ONE)),
        ("rule-l-to-nm", ClassifiedDerivation(c2=ONE)),
        ("rule-schrodinger-weight", ClassifiedDerivation(c3=ONE)),
    ]
    for name, deriv in unit_rules:
        bad = leibniz_check(classified_window_map(deriv, radius))
        checks.append(
            _check(f"leibniz-{name}", 1, [f"({x}, {y})" for x, y, _ in bad])
        )
    witnesses = []
    kernel = outer_independence_kernel(Window(max(3, radius)))
    for c1, c2, c3, z in kernel:
        central = all(bv in (M(0), C) for bv in z.support())
        if c1 or c2 or c3 or not central:
            witnesses.append(
                f"c1={format_scalar(c1)} c2={format_scalar(c2)} "
                f"c3={format_scalar(c3)} z={format_element(z)}"
            )
    checks.append(_check("outer-independence", len(kernel), witnesses))

    rng = SplitMix64(seed)
    wradius = max(3, radius)
    witnesses = []
    for case in range(cases):
        deriv = random_classified(rng, wradius)
        wmap = classified_window_map(deriv, wradius)
        try:
            back = decompose(wmap)
        except DerivationError as exc:
            witnesses.append(f"case {case}: {exc}")
            continue
        for bv in wmap.window.vectors():
            if apply_classified(back, single(bv)) != wmap.image(bv):
                witnesses.append(f"case {case}: action differs on {bv}")
                break
    checks.append(_check("decompose-roundtrip", cases, witnesses))

    witnesses = []
    for case in range(cases):
        params = random_degree0(rng)
        fitted = classify_degree0(degree0_window_map(params, wradius))
        if fitted != params:
            witnesses.append(f"case {case}: fitted {fitted} from {params}")
    checks.append(_check("classify-roundtrip", cases, witnesses))

    witnesses = []
    rejected_cases = 5
    for case in range(rejected_cases):
        c1 = random_scalar(rng, nonzero=True)

        def image(bv: BasisVector, c1=c1) -> Element:
            if bv.kind == "L":
                return single(Y(bv.index), c1 * bv.index)
            return Element()

        try:
            classify_degree0(WindowMap.from_function(wradius, image))
            witnesses.append(f"case {case}: accepted c1={format_scalar(c1)}")
        except DerivationError:
            pass
    checks.append(_check("classify-rejects-y-family", rejected_cases, witnesses))
    return checks


def _hom_checks(radius: int) -> list[dict]:
    nullity = equivariant_hom_nullity(Window(radius))
    witnesses = [] if nullity == 0 else [f"nullity={nullity}"]
    return [_check("hom-vanishing", 1, witnesses)]


def _ideal_violations(params: AutomorphismParams, radius: int) -> list[str]:
    out = []
    window = Window(radius)
    for bv in window.vectors():
        kinds = {t.kind for t in apply(params, single(bv)).support()}
        if bv.kind in ("Y", "M", "C") and "L" in kinds:
            out.append(f"L-term in image of {bv}")
        if bv.kind in ("M", "C") and "Y" in kinds:
            out.append(f"Y-term in image of {bv}")
    return out


def _group_law_checks(radius: int, seed: int, cases: int) -> list[dict]:
    checks = []
    rng = SplitMix64(seed)
    gens = Window(radius).vectors()

    witnesses = []
    pairs = [(random_params(rng), random_params(rng)) for _ in range(cases)]
    for case, (p, q) in enumerate(pairs):
        composed = compose(p, q)
        for bv in gens:
            if apply(composed, single(bv)) != apply(p, apply(q, single(bv))):
                witnesses.append(f"case {case}: differs on {bv}")
                break
    checks.append(_check("compose-matches-oracle-action", cases, witnesses))

    half = max(1, cases // 2)
    witnesses = []
    for case in range(half):
        p, q, r = random_params(rng), random_params(rng), random_params(rng)
        if compose(compose(p, q), r) != compose(p, compose(q, r)):
            witnesses.append(f"case {case}")
    checks.append(_check("associativity", half, witnesses))

    witnesses = []
    for case in range(half):
        p = random_params(rng)
        inv = invert(p)
        if compose(p, inv) != identity() or compose(inv, p) != identity():
            witnesses.append(f"case {case}")
    checks.append(_check("inverse-roundtrip", half, witnesses))

    witnesses = []
    for case in range(half):
        p = random_params(rng)
        if factorize(automorphism_window_map(p, max(3, radius))) != p:
            witnesses.append(f"case {case}")
    checks.append(_check("factorize-apply-identity", half, witnesses))

    witnesses = []
    for case, (p, q) in enumerate(pairs):
        expected = single(C) if p.i == 0 else -single(C)
        if apply(p, single(C)) != expected:
            witnesses.append(f"case {case}: central character")
        for msg in _ideal_violations(p, radius):
            witnesses.append(f"case {case}: {msg}")
            break
    checks.append(_check("central-character-and-ideals", cases, witnesses))
    return checks


def _seq_text(seq: FiniteSupportSeq) -> str:
    if seq.is_zero():
        return "{}"
    return "{" + ", ".join(f"{j}: {format_scalar(v)}" for j, v in seq.items()) + "}"


def _candidate_components(p: AutomorphismParams, q: AutomorphismParams) -> dict:
    """The candidate closed form under audit, evaluated component by component."""
    sp = -1 if p.i else 1
    w_q_inv = q.w.inverse()
    out = {
        "w": p.w * q.w,
        "i": (p.i + q.i) % 2,
        "u": (p.u if q.i == 0 else p.u.inverse()) * q.u,
        "gamma": p.gamma * w_q_inv * w_q_inv + q.gamma,
        "alpha": (p.alpha * w_q_inv + q.alpha) / 2,
        "beta": p.beta * w_q_inv * w_q_inv + q.alpha * q.alpha + q.beta + q.gamma,
    }
    b2: dict[int, Scalar] = {}
    for j in set(p.b.support()) | {sp * jq for jq in q.b.support()}:
        b2[j] = p.b.get(j) + sp * p.w * q.b.get(sp * j) * p.u ** (sp * j)
    out["b"] = FiniteSupportSeq.of(b2)
    c_keys = set(p.c.support()) | {sp * kq for kq in q.c.support()}
    c_keys |= {sp * jq for jq in q.b.support()}
    c_keys |= {j + sp * jq for j in p.b.support() for jq in q.b.support()}
    c2: dict[int, Scalar] = {}
    for k in c_keys:
        if k == 0:
            continue
        u_k = p.u ** (sp * k)
        total = (
            p.c.get(k)
            + sp * p.w * p.w * q.c.get(sp * k) * u_k
            + 2 * p.alpha * p.w * p.w * k * q.b.get(sp * k) * u_k
        )
        cross = ZERO
        for j in set(p.b.support()) | {sp * jq for jq in q.b.support()}:
            if j == 0:
                continue
            term = (
                p.u ** (sp * j) * q.b.get(sp * j) * p.b.get(k - j)
                - p.u ** (sp * (k - j)) * p.b.get(j) * q.b.get(sp * (k - j))
            )
            if term:
                cross = cross + Fraction(sp * (k - j) * (k - 2 * j), 2 * k) * p.w * term
        c2[k] = total - cross
    out["c"] = FiniteSupportSeq.of(c2)
    return out


_RELATION_FORMULAS = {
    "w": "w'' = w * w'",
    "i": "i'' = i + i' (mod 2)",
    "u": "u'' = u^((-1)^i') * u'",
    "gamma": "gamma'' = gamma / w'^2 + gamma'",
    "alpha": "alpha'' = (alpha / w' + alpha') / 2",
    "beta": "beta'' = beta / w'^2 + alpha'^2 + beta' + gamma'",
    "b": "b''_j = b_j + (-1)^i w u^((-1)^i j) b'_((-1)^i j)",
    "c": (
        "c''_k = c_k + (-1)^i w^2 u^((-1)^i k) c'_((-1)^i k)"
        " + 2 alpha k w^2 u^((-1)^i k) b'_((-1)^i k)"
        " - sum_j ((-1)^i w (k-j)(k-2j) / 2k)"
        " (u^((-1)^i j) b'_((-1)^i j) b_(k-j) - u^((-1)^i (k-j)) b_j b'_((-1)^i (k-j)))"
    ),
    "delta-product": "shear(a,b,g) . shear(a',b',g') = shear(a+a', b+b', g+g'+2aa')",
}


def _component_text(name: str, value) -> str:
    if name == "i":
        return str(value)
    if name in ("b", "c"):
        return _seq_text(value)
    return format_scalar(value)


def _curated_pairs() -> list[tuple[AutomorphismParams, AutomorphismParams]]:
    e = identity()
    shear_a = AutomorphismParams(alpha=ONE)
    shear_b = AutomorphismParams(beta=ONE)
    shear_g = AutomorphismParams(gamma=ONE)
    kind2 = AutomorphismParams(w=Scalar(Fraction(2)))
    deg2 = AutomorphismParams(u=Scalar(Fraction(2)))
    flip = AutomorphismParams(i=1)
    xi_b1 = AutomorphismParams(b={1: ONE})
    xi_bm1 = AutomorphismParams(b={-1: ONE})
    xi_b2 = AutomorphismParams(b={2: ONE})
    xi_c2 = AutomorphismParams(c={2: ONE})
    singles = [e, shear_a, shear_b, shear_g, kind2, deg2, flip, xi_b1, xi_c2]
    pairs = [(p, q) for p in singles for q in singles]
    pairs += [
        (xi_b1, xi_bm1),
        (xi_b1, xi_b2),
        (xi_b2, xi_bm1),
        (AutomorphismParams(b={1: ONE}, alpha=ONE), xi_bm1),
        (AutomorphismParams(b={1: ONE}, i=1, w=Scalar(Fraction(2))), xi_b2),
        (AutomorphismParams(b={-2: ONE}, u=Scalar(Fraction(3))), xi_b2),
    ]
    return pairs


def _lemma36_checks(radius: int, seed: int, cases: int) -> tuple[list[dict], list[dict]]:
    rng = SplitMix64(seed)
    pairs = _curated_pairs() + [
        (random_params(rng), random_params(rng)) for _ in range(cases)
    ]
    shear_pairs = [
        (AutomorphismParams(alpha=ONE), AutomorphismParams(alpha=ONE)),
        (AutomorphismParams(alpha=ONE, gamma=ONE), AutomorphismParams(beta=ONE)),
    ] + [(random_shear(rng), random_shear(rng)) for _ in range(max(1, cases // 4))]

    oracle_witnesses = []
    results: list[tuple] = []
    for p, q in pairs:
        oracle = compose_oracle(p, q, max(3, radius))
        if compose(p, q) != oracle:
            oracle_witnesses.append(f"p={params_to_json(p)} q={params_to_json(q)}")
        results.append((p, q, oracle))
    checks = [_check("compose-matches-oracle-params", len(pairs), oracle_witnesses)]

    relations = []
    for name in ("w", "i", "u", "gamma", "alpha", "beta", "b", "c"):
        witness = None
        for p, q, oracle in results:
            candidate = _candidate_components(p, q)[name]
            actual = getattr(oracle, name)
            if candidate != actual:
                witness = {
                    "p": params_to_json(p),
                    "q": params_to_json(q),
                    "printed": _component_text(name, candidate),
                    "oracle": _component_text(name, actual),
                }
                break
        relations.append(
            {
                "name": name,
                "formula": _RELATION_FORMULAS[name],
                "verdict": "AGREE" if witness is None else "DISAGREE",
                "witness": witness,
            }
        )

    witness = None
    for p, q in shear_pairs:
        oracle = compose_oracle(p, q, max(3, radius))
        predicted = (
            p.alpha + q.alpha,
            p.beta + q.beta,
            p.gamma + q.gamma + 2 * p.alpha * q.alpha,
        )
        if (oracle.alpha, oracle.beta, oracle.gamma) != predicted:
            witness = {
                "p": params_to_json(p),
                "q": params_to_json(q),
                "printed": ", ".join(format_scalar(v) for v in predicted),
                "oracle": ", ".join(
                    format_scalar(v) for v in (oracle.alpha, oracle.beta, oracle.gamma)
                ),
            }
            break
    relations.append(
        {
            "name": "delta-product",
            "formula": _RELATION_FORMULAS["delta-product"],
            "verdict": "AGREE" if witness is None else "DISAGREE",
            "witness": witness,
        }
    )
    return checks, relations


def run_suite(suite: str, radius: int = 4, seed: int = 0, cases: int = 100) -> dict:
    """Run one named suite; deterministic given (suite, radius, seed, cases)."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if cases < 1:
        raise ValueError("cases must be at least 1")
    checks: list[dict] = []
    relations: list[dict] | None = None
    if suite in ("jacobi", "all"):
        checks += _jacobi_checks(radius)
    if suite in ("center", "all"):
        checks += _center_checks(radius)
    if suite in ("derivations", "all"):
        checks += _derivation_checks(radius, seed, cases)
    if suite in ("hom-vanishing", "all"):
        checks += _hom_checks(max(2, radius))
    if suite in ("group-law", "all"):
        checks += _group_law_checks(radius, seed, cases)
    if suite in ("lemma36-verdict", "all"):
        verdict_checks, relations = _lemma36_checks(radius, seed, cases)
        checks += verdict_checks
    report = {
        "suite": suite,
        "radius": radius,
        "seed": seed,
        "cases": cases,
        "checks": checks,
        "violations": sum(c["violations"] for c in checks),
    }
    if relations is not None:
        report["relations"] = relations
    report["passed"] = report["violations"] == 0
    return report


def render_text(report: dict) -> str:
    lines = [
        f"suite {report['suite']} (radius={report['radius']}, "
        f"seed={report['seed']}, cases={report['cases']})"
    ]
    for check in report["checks"]:
        status = "ok" if check["violations"] == 0 else "FAIL"
        lines.append(
            f"  [{status}] {check['name']}: {check['cases']} cases, "
            f"{check['violations']} violations"
        )
        for witness in check["witnesses"]:
            lines.append(f"         witness: {witness}")
    for relation in report.get("relations", []):
        lines.append(f"  [{relation['verdict']}] {relation['name']}: {relation['formula']}")
        if relation["witness"] is not None:
            w = relation["witness"]
            lines.append(f"         printed {w['printed']}  oracle {w['oracle']}")
            lines.append(f"         at p={w['p']} q={w['q']}")
    lines.append("PASS" if report["passed"] else "FAIL")
    return "\n".join(lines)

"""The verification campaign: every checkable law as a registered suite.

Each suite draws its randomness from a seed derived from the campaign
seed and the suite id, so reports are deterministic given the
configuration and independent of execution order.  Counterexamples
serialize the offending operands for replay.

Suite ids follow a dotted scheme (grassmann.laws, spheres.closure.n=2,
ns.jacobi, ...); `registry` lists them for a configuration and
`run_campaign` executes them all into a JSON-ready report.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import GaussianRational, ONE, grat
from .grassmann import NotInvertible, Supernumber
from .superfield import (
    PoleAtPoint,
    RationalSuperfunction,
    SuperPoint,
    SuperPolynomial,
    THETA_MINUS,
    THETA_PLUS,
    apply_D,
    apply_D_minus,
    apply_D_plus,
)
from .superconformal import (
    CoordinateTriple,
    N1SuperanalyticMap,
    SuperconformalMap,
    from_n1,
    to_n1,
)
from . import spheres
from .spheres import (
    AutomorphismParams,
    MatrixGroupElement,
    NotInFamily,
    SphereAutomorphism,
    allowed_pole_check,
    conjugated_translation_coeffs,
    group_action,
    acts_identically,
    in_action_kernel,
    odd_translation,
    to_north,
    transition,
    transition_inverse,
)
from . import nsalgebra as ns
from . import matrixalgebra as msa
from .randgen import Sampler
from . import textio


class UsageError(Exception):
    """Unknown check id or invalid configuration."""


@dataclass
class CampaignConfig:
    generators: int = 6
    band: int = 3
    flow_order: int = 8
    n_range: tuple = tuple(range(-4, 5))
    samples: int = 25
    seed: int = 20100217
    timings: bool = False

    def validate(self):
        if self.generators < 4:
            raise UsageError("generators must be at least 4")
        if self.band < 1:
            raise UsageError("band must be at least 1")
        if not self.n_range:
            raise UsageError("n range must be nonempty")
        if self.samples < 1:
            raise UsageError("samples must be positive")


class Outcome:
    """Result of one suite run."""

    def __init__(self, samples=0):
        self.samples = samples
        self.failures = []
        self.discrepancies = []

    def fail(self, law_part, counterexample=None):
        self.failures.append({
            "law": law_part,
            "counterexample": counterexample,
        })

    def note_discrepancy(self, item):
        self.discrepancies.append(item)

    @property
    def status(self):
        if self.failures:
            return "fail"
        if self.discrepancies:
            return "discrepancies"
        return "pass"


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _suite_grassmann_laws(cfg, rng):
    out = Outcome(cfg.samples)
    L = cfg.generators
    s = Sampler(rng, L)
    one = Supernumber.one(L)
    for _ in range(cfg.samples):
        x = s.supernumber(6)
        y = s.supernumber(6)
        z = s.supernumber(6)
        if (x * y) * z != x * (y * z):
            out.fail("associativity", _sn_ce(x=x, y=y, z=z))
        if x * (y + z) != x * y + x * z:
            out.fail("distributivity", _sn_ce(x=x, y=y, z=z))
        xh = s.supernumber(4, parity=rng.randrange(2))
        yh = s.supernumber(4, parity=rng.randrange(2))
        sign = (-1) ** ((xh.parity() or 0) * (yh.parity() or 0))
        if xh * yh != (yh * xh).scale(sign):
            out.fail("supercommutativity", _sn_ce(x=xh, y=yh))
        if xh and yh and xh.parity() is not None and yh.parity() is not None:
            product = xh * yh
            if product and product.parity() != (xh.parity() + yh.parity()) % 2:
                out.fail("grading", _sn_ce(x=xh, y=yh))
        soul = x.soul()
        if not (soul ** (L + 1)).is_zero():
            out.fail("nilpotency", _sn_ce(x=x))
        body, rest = x.body_soul()
        if Supernumber.scalar(L, body) + rest != x:
            out.fail("body-soul split", _sn_ce(x=x))
        if body:
            inv = x.inverse()
            if x * inv != one or inv * x != one:
                out.fail("two-sided inverse", _sn_ce(x=x))
        else:
            try:
                x.inverse()
                out.fail("zero-body inversion accepted", _sn_ce(x=x))
            except NotInvertible:
                pass
        # functorial extension and restriction
        ext = x.extend(L + 2)
        if ext.restrict(L) != x:
            out.fail("restrict after extend", _sn_ce(x=x))
        if (x * y).extend(L + 2) != x.extend(L + 2) * y.extend(L + 2):
            out.fail("extension is multiplicative", _sn_ce(x=x, y=y))
    return out


def _sn_ce(**named):
    return {k: textio.supernumber_to_json(v) for k, v in named.items()}


def _rsf_ce(**named):
    return {k: textio.rsf_to_json(v) for k, v in named.items()}


def _suite_superfield_operators(cfg, rng):
    out = Outcome(cfg.samples)
    L = cfg.generators
    s = Sampler(rng, L)
    for _ in range(cfg.samples):
        F = s.rational_superfunction()
        if not apply_D_plus(apply_D_plus(F)).is_zero():
            out.fail("D+ squares to zero", _rsf_ce(F=F))
        if not apply_D_minus(apply_D_minus(F)).is_zero():
            out.fail("D- squares to zero", _rsf_ce(F=F))
        anti = apply_D_plus(apply_D_minus(F)) + apply_D_minus(apply_D_plus(F))
        if anti != F.diff_z() * grat(2):
            out.fail("anticommutator is twice d/dz", _rsf_ce(F=F))
        p = rng.randrange(2)
        q = rng.randrange(2)
        Fh = s.rational_superfunction(parity=p, max_terms=3)
        Gh = s.rational_superfunction(parity=q, max_terms=3)
        lhs = apply_D_plus(Fh * Gh)
        rhs = apply_D_plus(Fh) * Gh + (Fh * apply_D_plus(Gh)).scale_left(
            grat((-1) ** p))
        if lhs != rhs:
            out.fail("super-Leibniz rule", _rsf_ce(F=Fh, G=Gh))
        # evaluation is a homomorphism
        point = _safe_point(s, rng)
        F2 = s.rational_superfunction(max_terms=3, with_denominator=False)
        G2 = s.rational_superfunction(max_terms=3, with_denominator=False)
        if (F2 * G2).evaluate(point) != F2.evaluate(point) * G2.evaluate(point):
            out.fail("evaluation homomorphism", _rsf_ce(F=F2, G=G2))
        # substitution associativity on even affine-plus-nilpotent arguments
        w1 = _even_argument(s, rng)
        w2 = _even_argument(s, rng)
        thetas = (RationalSuperfunction.theta(L, THETA_PLUS),
                  RationalSuperfunction.theta(L, THETA_MINUS))
        inner = w2.substitute(w1, thetas)
        lhs = F.substitute(inner, thetas)
        rhs = F.substitute(w2, thetas).substitute(w1, thetas)
        if lhs != rhs:
            out.fail("substitution associativity", _rsf_ce(F=F, w1=w1, w2=w2))
        # operating commutes with extending the algebra
        bigger = F.extend(L + 2)
        if apply_D_plus(F).extend(L + 2) != apply_D_plus(bigger):
            out.fail("extension stability", _rsf_ce(F=F))
    return out


def _safe_point(s, rng):
    L = s.L
    body = grat(rng.randrange(1, 4))
    z = Supernumber.scalar(L, body) + s.soul(2, 0)
    return SuperPoint(z, (s.odd(1), s.odd(1)))


def _even_argument(s, rng):
    """alpha z + beta + theta terms, with invertible body slope."""
    L = s.L
    terms = {
        (1, 0): s.even_invertible(2, L - 2),
        (0, 0): s.supernumber(2, 0, L - 2),
        (0, 1 << THETA_PLUS): s.odd(1, L - 2),
        (0, 1 << THETA_MINUS): s.odd(1, L - 2),
        (0, (1 << THETA_PLUS) | (1 << THETA_MINUS)): s.soul(1, 0, L - 2),
    }
    return RationalSuperfunction(SuperPolynomial(L, 2, terms))


def _suite_superconformal_closure(cfg, rng):
    out = Outcome(cfg.samples)
    L = cfg.generators
    s = Sampler(rng, L)
    for i in range(cfg.samples):
        m1 = s.superconformal_map()
        m2 = s.superconformal_map()
        composite = m2.compose(m1)
        if not composite.check().ok:
            out.fail("composition stays superconformal",
                     {"m1": textio.map_to_json(m1), "m2": textio.map_to_json(m2)})
        if i % 4 == 0:
            # the derivations transform homogeneously of degree one
            G = s.rational_superfunction(max_terms=3, with_denominator=False)
            triple = m1.expand()
            images = (triple.plus, triple.minus)
            for sign, image in ((+1, triple.plus), (-1, triple.minus)):
                lhs = apply_D(G.substitute(triple.even, images), sign)
                factor = apply_D(image, sign)
                rhs = factor * apply_D(G, sign).substitute(triple.even, images)
                if lhs != rhs:
                    out.fail("derivation transform law",
                             {"m": textio.map_to_json(m1),
                              "G": textio.rsf_to_json(G)})
        if i % 5 == 0:
            m3 = s.superconformal_map()
            if m3.compose(m2).compose(m1) != m3.compose(m2.compose(m1)):
                out.fail("composition associativity",
                         {"m1": textio.map_to_json(m1),
                          "m2": textio.map_to_json(m2),
                          "m3": textio.map_to_json(m3)})
    return out


def _suite_superconformal_roundtrip(cfg, rng):
    out = Outcome(cfg.samples)
    L = cfg.generators
    s = Sampler(rng, L)
    for _ in range(cfg.samples):
        h = s.n1_map()
        m = from_n1(h)
        if not m.check().ok:
            out.fail("correspondence output is superconformal",
                     {"h": textio.n1_map_to_json(h)})
        if to_n1(m) != h:
            out.fail("N=1 -> N=2 -> N=1 roundtrip",
                     {"h": textio.n1_map_to_json(h)})
        if from_n1(to_n1(m)) != m:
            out.fail("N=2 -> N=1 -> N=2 roundtrip",
                     {"m": textio.map_to_json(m)})
    # the shifted-origin example: (z + theta, theta) maps to a
    # superconformal function that does not vanish at the origin
    z = RationalSuperfunction.z(L)
    one = RationalSuperfunction.one(L)
    zero = RationalSuperfunction.zero(L)
    h = N1SuperanalyticMap(z, one, zero, one)
    triple = from_n1(h).expand()
    tp = RationalSuperfunction.theta(L, THETA_PLUS)
    tm = RationalSuperfunction.theta(L, THETA_MINUS)
    half = grat(Fraction(1, 2))
    expected = CoordinateTriple(z + tp * half, tp, one * half + tm)
    if not (triple.even == expected.even and triple.plus == expected.plus
            and triple.minus == expected.minus):
        out.fail("shifted-origin example expansion", None)
    if to_n1(from_n1(h)) != h:
        out.fail("shifted-origin example roundtrip", None)
    return out


def _suite_spheres_transition(cfg, rng):
    out = Outcome()
    L = cfg.generators
    span = sorted(set(range(-6, 7)) | set(cfg.n_range))
    for n in span:
        t = transition(n, L)
        if not t.check().ok:
            out.fail(f"transition n={n} superconformal", None)
        h = to_n1(t)
        want_g = RationalSuperfunction.z_power(L, n - 1, coeff=GaussianRational(0, 1))
        ok = (h.f1 == RationalSuperfunction.z_power(L, -1)
              and h.xi.is_zero() and h.psi.is_zero() and h.g == want_g)
        if not ok:
            out.fail(f"N=1 image of transition n={n}", None)
        # double transition flips the odd signs; closed-form inverse inverts
        minus_one = RationalSuperfunction.from_constant(L, grat(-1))
        flip = SuperconformalMap(RationalSuperfunction.z(L), minus_one, minus_one)
        if t.compose(t) != flip:
            out.fail(f"transition squared n={n}", None)
        if t.compose(transition_inverse(n, L)) != SuperconformalMap.identity(L):
            out.fail(f"transition inverse n={n}", None)
        if n in (min(span), 0, max(span)) and t.invert() != transition_inverse(n, L):
            out.fail(f"generic inversion of transition n={n}", None)
        out.samples += 1
    return out


def _suite_spheres_closure(n):
    def run(cfg, rng):
        out = Outcome(cfg.samples)
        s = Sampler(rng, cfg.generators)
        for _ in range(cfg.samples):
            p1 = s.automorphism_params(n)
            p2 = s.automorphism_params(n)
            try:
                T1 = SphereAutomorphism.build(p1)
                T2 = SphereAutomorphism.build(p2)
            except spheres.InvalidParams as exc:
                out.fail("family member construction",
                         {"error": str(exc),
                          "p1": textio.params_to_json(p1),
                          "p2": textio.params_to_json(p2)})
                continue
            try:
                composite = T2.compose(T1)
            except NotInFamily as exc:
                out.fail("closure under composition",
                         {"error": str(exc),
                          "p1": textio.params_to_json(p1),
                          "p2": textio.params_to_json(p2)})
                continue
            rebuilt = SphereAutomorphism.build(composite.params)
            if rebuilt.southern != composite.southern:
                out.fail("recovered parameters rebuild the composite",
                         {"params": textio.params_to_json(composite.params)})
        # recovery is canonical: validating a rebuilt map is a fixed point
        p = s.automorphism_params(n)
        T = SphereAutomorphism.build(p)
        first = spheres.validate_map(T.southern, n)
        again = spheres.validate_map(SphereAutomorphism.build(first).southern, n)
        if first != again:
            out.fail("parameter recovery is canonical",
                     {"p": textio.params_to_json(p)})
        # inversion stays in the family
        inv = T.invert()
        if T.compose(inv).southern != SuperconformalMap.identity(cfg.generators):
            out.fail("inverse composes to the identity",
                     {"p": textio.params_to_json(p)})
        # a wrong shape is rejected
        if abs(n) >= 2:
            wrong = spheres.build_map(s.automorphism_params(n))
            bump = RationalSuperfunction.from_constant(
                cfg.generators, Supernumber.generator(cfg.generators, 1))
            if n >= 2:
                forged = SuperconformalMap(
                    wrong.f, wrong.g_plus, wrong.g_minus,
                    wrong.psi_plus + bump, wrong.psi_minus)
            else:
                forged = SuperconformalMap(
                    wrong.f, wrong.g_plus, wrong.g_minus,
                    wrong.psi_plus, wrong.psi_minus + bump)
            try:
                spheres.validate_map(forged, n)
                out.fail("shape violation accepted", None)
            except NotInFamily:
                pass
        return out

    return run


def _suite_spheres_north(n):
    def run(cfg, rng):
        out = Outcome(cfg.samples)
        s = Sampler(rng, cfg.generators)
        for _ in range(cfg.samples):
            p = s.automorphism_params(n)
            T = SphereAutomorphism.build(p)
            chart = to_north(T)
            if not chart.map.check().ok:
                out.fail("northern map superconformal",
                         {"p": textio.params_to_json(p)})
            pole_failures = allowed_pole_check(T, chart.map)
            if pole_failures:
                out.fail("northern poles confined to -a_B/b_B",
                         {"p": textio.params_to_json(p),
                          "failures": pole_failures})
            for name in chart.mismatches:
                out.note_discrepancy({
                    "component": name,
                    "p": textio.params_to_json(p),
                    "composed": textio.rsf_to_json(
                        chart.map.components()[name]),
                    "formula": textio.rsf_to_json(
                        chart.formula.components()[name]),
                })
        return out

    return run


def _suite_spheres_cover(parity):
    def run(cfg, rng):
        out = Outcome(cfg.samples)
        members = [n for n in cfg.n_range if n % 2 == parity]
        if not members:
            members = [parity]
        s = Sampler(rng, cfg.generators)
        for i in range(cfg.samples):
            n = members[i % len(members)]
            alpha = s.matrix_group_element()
            kernel_gen = MatrixGroupElement.identity(cfg.generators)\
                .negate_matrix(negate_eps=(parity == 0))
            wrong_gen = MatrixGroupElement.identity(cfg.generators)\
                .negate_matrix(negate_eps=(parity == 1))
            same = alpha.compose(kernel_gen)
            if not acts_identically(n, alpha, same):
                out.fail("kernel element acts trivially", {"n": n})
            if not in_action_kernel(n, alpha, same):
                out.fail("kernel membership predicate", {"n": n})
            other = alpha.compose(wrong_gen)
            if acts_identically(n, alpha, other):
                out.fail("only the stated kernel collapses", {"n": n})
            if in_action_kernel(n, alpha, other):
                out.fail("kernel predicate rejects the wrong sign", {"n": n})
            beta = s.matrix_group_element()
            if acts_identically(n, alpha, beta) != in_action_kernel(n, alpha, beta):
                out.fail("two-to-one correspondence", {"n": n})
        return out

    return run


def _suite_spheres_translations(n):
    def run(cfg, rng):
        out = Outcome(cfg.samples)
        s = Sampler(rng, cfg.generators)
        rank = abs(n) + 2
        L = cfg.generators
        zero = Supernumber.zero(L)
        for _ in range(cfg.samples):
            u = s.odd_vector(rank)
            v = s.odd_vector(rank)
            tu = odd_translation(n, u)
            tv = odd_translation(n, v)
            total = odd_translation(n, [a + b for a, b in zip(u, v)])
            if tu.compose(tv).southern != total.southern:
                out.fail("translations add",
                         {"u": [textio.supernumber_to_json(x) for x in u],
                          "v": [textio.supernumber_to_json(x) for x in v]})
            if tu.compose(tv).southern != tv.compose(tu).southern:
                out.fail("translations commute", None)
            alpha = s.matrix_group_element()
            conj = group_action(n, alpha).compose(tu).compose(
                group_action(n, alpha).invert())
            predicted = conjugated_translation_coeffs(n, alpha, u)
            got = conj.params.psi_minus if n >= 2 else conj.params.psi_plus
            if list(got) != list(predicted):
                out.fail("conjugation acts by the polynomial transform",
                         {"u": [textio.supernumber_to_json(x) for x in u]})
        # the stated rank: single-degree generators are independent members
        for k in range(rank):
            coeffs = [zero] * rank
            coeffs[k] = Supernumber.generator(L, 1)
            t = odd_translation(n, coeffs)
            tower = t.params.psi_minus if n >= 2 else t.params.psi_plus
            if [x for x in tower if x] != [Supernumber.generator(L, 1)]:
                out.fail("generator at each degree", {"degree": k})
        out.samples += rank
        return out

    return run


def _suite_ns_jacobi(cfg, rng):
    out = Outcome()
    violations = ns.jacobi_check(cfg.band)
    out.samples = (4 * (2 * cfg.band + 1) - 2 + 1) ** 3
    for k1, k2, k3, defect in violations[:10]:
        out.fail("super-Jacobi identity",
                 {"triple": [ns.key_str(k1), ns.key_str(k2), ns.key_str(k3)],
                  "defect": repr(defect)})
    return out


def _suite_ns_representation(cfg, rng):
    out = Outcome()
    violations = ns.representation_check(cfg.band)
    out.samples = len(ns.band_symbols(cfg.band)) ** 2
    for k1, k2 in violations[:10]:
        out.fail("central-charge-zero representation",
                 {"pair": [ns.key_str(k1), ns.key_str(k2)]})
    return out


def _suite_ns_subalgebras(cfg, rng):
    out = Outcome()
    span = sorted(set(range(-6, 7)) | set(cfg.n_range))
    for n in span:
        out.samples += 1
        bad = ns.closure_violations(n)
        if bad:
            out.fail(f"closure of the twist-{n} subalgebra", {"pairs": bad[:5]})
        basis = ns.subalgebra_basis(n)
        want_even, want_odd = ns.subalgebra_dimensions(n)
        evens = [e for e in basis if e.parity() == 0]
        odds = [e for e in basis if e.parity() == 1]
        if len(evens) != want_even or len(odds) != want_odd:
            out.fail(f"dimensions of the twist-{n} subalgebra",
                     {"got": (len(evens), len(odds))})
        coeffs = ns.span_coefficients(ns.NSElement.zero(), basis)
        if coeffs is None or any(c for c in coeffs):
            out.fail(f"basis solvability for twist {n}", None)
        if abs(n) >= 2:
            sigma_bad = ns.sigma_action_violations(n)
            if sigma_bad:
                out.fail(f"derivation table for twist {n}",
                         {"items": [(i, k, repr(g), repr(w))
                                    for i, k, g, w in sigma_bad[:5]]})
    return out


def _suite_matrix_osp(cfg, rng):
    return _table_outcome(msa.verify_table(msa.osp_table()),
                          pattern=[msa.osp_pattern_violations(m)
                                   for _, m in msa.osp_table()])


def _suite_matrix_p(cfg, rng):
    out = Outcome()
    for sign in (+1, -1):
        report = msa.verify_table(msa.p_table(sign))
        out.samples += report["size"] ** 2
        for item in report["mismatches"]:
            if item["expected"] in ("no central term", "bracket inside the span"):
                out.fail("source bracket consistency", item)
            else:
                out.note_discrepancy(item)
        if not report["injective"]:
            out.fail(f"injectivity of the twist {sign} table", None)
        for idx, (_, m) in enumerate(msa.p_table(sign)):
            if idx == 3:
                continue
            bad = msa.p_pattern_violations(m)
            if bad:
                out.fail("p-shape of an image matrix", {"index": idx, "broken": bad})
    return out


def _table_outcome(report, pattern=None):
    out = Outcome(report["size"] ** 2)
    for item in report["mismatches"]:
        if item["expected"] in ("no central term", "bracket inside the span"):
            out.fail("source bracket consistency", item)
        else:
            out.note_discrepancy(item)
    if not report["injective"]:
        out.fail("table injectivity", None)
    if pattern:
        for idx, bad in enumerate(pattern):
            if bad:
                out.fail("matrix shape constraint", {"index": idx, "broken": bad})
    return out


def _suite_matrix_semidirect(cfg, rng):
    out = Outcome()
    for n in (2, 3, -2, -3):
        sd = msa.GnSemidirect(n)
        report = sd.verify()
        out.samples += report["size"] ** 2
        for item in report["mismatches"]:
            if item["expected"] in ("no central term", "bracket inside the span"):
                out.fail("source bracket consistency", item)
            else:
                out.note_discrepancy(dict(item, n=n))
        # supertrace sanity on the osp side is covered separately; here the
        # abelian ideal must bracket to zero
        images = sd.basis_images()
        for i in range(4, len(images)):
            for j in range(4, len(images)):
                got = sd.bracket(images[i], images[j])
                if got.mat.rows != msa.Matrix.zero(2).rows or any(got.vector):
                    out.fail("abelian odd tower", {"pair": (i, j), "n": n})
    return out


def _expected_flow_rows(kind, n, order, L):
    """Taylor rows of the closed-form flows, built independently."""
    sp = SuperPolynomial
    x = sp.z_power(L, 1)
    phip = sp.theta(L, THETA_PLUS)
    phim = sp.theta(L, THETA_MINUS)
    zero = sp.zero(L, 2)
    one_rows = []
    if kind == "translate":
        one_rows = [(x, phip, phim), (sp.one(L), zero, zero)]
        one_rows += [(zero, zero, zero)] * (order - 1)
    elif kind == "scale":
        # (e^y x, e^{y/2} phi+, e^{y/2} phi-)
        ex = ns.exp_coefficient_series(1, order)
        eh = ns.exp_coefficient_series(Fraction(1, 2), order)
        one_rows = [
            (x.scale_left(ex[k]), phip.scale_left(eh[k]), phim.scale_left(eh[k]))
            for k in range(order + 1)
        ]
    elif kind == "charge":
        ex = ns.exp_coefficient_series(1, order)
        em = ns.exp_coefficient_series(-1, order)
        one_rows = [
            (x if k == 0 else zero,
             phip.scale_left(ex[k]), phim.scale_left(em[k]))
            for k in range(order + 1)
        ]
    elif kind == "special":
        # (x/(1-yx), phi+ (1-yx)^(n-1), phi- (1-yx)^(-n-1))
        one_rows = []
        for k in range(order + 1):
            xb = sp.z_power(L, k + 1)
            cp = _binom(n - 1, k) * Fraction((-1) ** k)
            cm = _binom(-n - 1, k) * Fraction((-1) ** k)
            one_rows.append((
                xb,
                sp.z_power(L, k).scale_left(grat(cp)) * phip if cp else zero,
                sp.z_power(L, k).scale_left(grat(cm)) * phim if cm else zero,
            ))
    elif kind == "shift":
        ex = ns.exp_coefficient_series(1, order)
        ep = ns.exp_coefficient_series(Fraction(1 - n, 2), order)
        em = ns.exp_coefficient_series(Fraction(1 + n, 2), order)
        one_rows = [
            (x.scale_left(ex[k]), phip.scale_left(ep[k]), phim.scale_left(em[k]))
            for k in range(order + 1)
        ]
    return one_rows


def _binom(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(a - i, i + 1)
    return out


def _flow_matches(series, expected):
    rows = series.rows + [(SuperPolynomial.zero(0, 2),) * 3] * (
        len(expected) - len(series.rows))
    for row, want in zip(rows, expected):
        for got, exp in zip(row, want):
            if got != exp:
                return False
    return True


def _suite_flows_closed_forms(cfg, rng):
    out = Outcome()
    order = cfg.flow_order
    e = ns.NSElement.basis
    sp = SuperPolynomial
    cases = [
        ("translation", e(ns.L(-1)), "translate", 0),
        ("dilation", e(ns.L(0)), "scale", 0),
        ("charge rotation", e(ns.J(0)), "charge", 0),
    ]
    for n in (-3, -1, 0, 1, 2, 4):
        cases.append((f"special conformal, twist {n}",
                      e(ns.L(1)) - e(ns.J(1)).scale(n), "special", n))
        cases.append((f"diagonal shift, twist {n}",
                      e(ns.L(0)) - e(ns.J(0)).scale(grat(Fraction(n, 2))),
                      "shift", n))
    for name, element, kind, n in cases:
        out.samples += 1
        series = ns.flow(element, order)
        if not _flow_matches(series, _expected_flow_rows(kind, n, order, 0)):
            out.fail(f"{name} flow", {"rows": [tuple(map(str, r))
                                               for r in series.rows[:3]]})
    # odd flows terminate after the linear row and match the closed maps
    L0 = 0
    x = sp.z_power(L0, 1)
    phip = sp.theta(L0, THETA_PLUS)
    phim = sp.theta(L0, THETA_MINUS)
    zero = sp.zero(L0, 2)
    for k in range(0, 4):
        out.samples += 2
        xk = sp.z_power(L0, k)
        pair = (1 << THETA_PLUS) | (1 << THETA_MINUS)
        plus_series = ns.flow(e(ns.Gp(2 * k - 1)))
        want_plus = [
            (x, phip, phim),
            (phim.scale_left(grat(-1)) * sp.z_power(L0, k),
             xk + (SuperPolynomial(L0, 2, {(k - 1, pair): grat(k)})
                   if k else zero),
             zero),
        ]
        if not _flow_matches(plus_series, want_plus):
            out.fail(f"raising flow at degree {k}", None)
        minus_series = ns.flow(e(ns.Gm(2 * k - 1)))
        want_minus = [
            (x, phip, phim),
            (phip.scale_left(grat(-1)) * sp.z_power(L0, k),
             zero,
             xk - (SuperPolynomial(L0, 2, {(k - 1, pair): grat(k)})
                   if k else zero)),
        ]
        if not _flow_matches(minus_series, want_minus):
            out.fail(f"lowering flow at degree {k}", None)
    return out


def _suite_flows_group(cfg, rng):
    out = Outcome()
    L = cfg.generators
    s = Sampler(rng, L)
    e = ns.NSElement.basis
    sa = Supernumber.scalar
    one = Supernumber.one(L)
    zero = Supernumber.zero(L)

    def soul_even():
        value = s.soul(2, 0, L - 2)
        return value

    def check_match(label, series, param, automorphism):
        triple = series.evaluate(param)
        expansion = automorphism.southern.expand(checked=False)
        got = tuple(RationalSuperfunction(c) for c in triple)
        want = (expansion.even, expansion.plus, expansion.minus)
        if any(g != w for g, w in zip(got, want)):
            out.fail(label, {"param": textio.supernumber_to_json(param)})
        out.samples += 1

    for n in sorted(set(cfg.n_range) | {0, 2, -2}):
        y = soul_even()
        # translations
        alpha = MatrixGroupElement(one, y, zero, one, one)
        check_match(f"translation flow vs action, twist {n}",
                    ns.flow(e(ns.L(-1)), cfg.flow_order), y,
                    group_action(n, alpha))
        # diagonal shift with a = d^{-1} = exp(y/2)
        a = _exp_soul(y, Fraction(1, 2))
        d = _exp_soul(y, Fraction(-1, 2))
        alpha = MatrixGroupElement(a, zero, zero, d, one)
        check_match(f"diagonal flow vs action, twist {n}",
                    ns.flow(e(ns.L(0)) - e(ns.J(0)).scale(grat(Fraction(n, 2))),
                            cfg.flow_order),
                    y, group_action(n, alpha))
        # charge rotation with eps = exp(y)
        alpha = MatrixGroupElement(one, zero, zero, one, _exp_soul(y, 1))
        check_match(f"charge flow vs action, twist {n}",
                    ns.flow(e(ns.J(0)), cfg.flow_order), y,
                    group_action(n, alpha))
        # lower-triangular flow
        alpha = MatrixGroupElement(one, zero, -y, one, one)
        check_match(f"special flow vs action, twist {n}",
                    ns.flow(e(ns.L(1)) - e(ns.J(1)).scale(n), cfg.flow_order),
                    y, group_action(n, alpha))
    for n in [m for m in sorted(set(cfg.n_range) | {2, -2}) if abs(m) >= 2]:
        for k in range(abs(n) + 2):
            xi = s.odd(1, L - 2)
            coeffs = [zero] * (abs(n) + 2)
            coeffs[k] = xi
            G = ns.Gm if n >= 2 else ns.Gp
            check_match(f"odd flow vs translation, twist {n} degree {k}",
                        ns.flow(e(G(2 * k - 1))), xi,
                        odd_translation(n, coeffs))
    return out


def _exp_soul(y, rate):
    """exp(rate*y) for a soul y, as a terminating series."""
    out = Supernumber.one(y.L)
    power = Supernumber.one(y.L)
    factor = grat(1)
    for k in range(1, y.L + 1):
        power = power * y
        if power.is_zero():
            break
        factor = factor * grat(Fraction(rate)) * grat(Fraction(1, k))
        out = out + power.scale(factor)
    return out


# ---------------------------------------------------------------------------
# registry and runner
# ---------------------------------------------------------------------------

_LAWS = {
    "grassmann.laws": "generator relations, grading, body/soul, inversion, functorial maps",
    "superfield.operators": "odd derivations square to zero and anticommute to twice d/dz; Leibniz; evaluation and substitution laws",
    "superconformal.closure": "superconformality survives composition; derivations transform homogeneously",
    "superconformal.roundtrip": "the N=1 correspondence is a two-sided inverse",
    "spheres.transition": "chart transitions are superconformal with the stated N=1 image",
    "spheres.closure.n={n}": "automorphism family closed under composition with exact parameter recovery",
    "spheres.north.n={n}": "northern chart agrees with the closed transformation formulas and pole constraint",
    "spheres.cover.even": "matrix action is two-to-one with kernel (-id, -id) for even twists",
    "spheres.cover.odd": "matrix action is two-to-one with kernel (-id, id) for odd twists",
    "spheres.translations.n={n}": "odd translations form an abelian group of rank |n|+2 with polynomial conjugation",
    "ns.jacobi": "super-Jacobi identity on the full index band",
    "ns.representation": "superderivations represent the algebra with central charge zero",
    "ns.subalgebras": "twist subalgebras close with the stated dimensions and derivation tables",
    "matrix.osp": "twist-0 basis maps isomorphically into osp(2|2)",
    "matrix.p": "twist +-1 bases map isomorphically into gl(1) + p(2|2)",
    "matrix.semidirect": "twist |n|>=2 algebras are (sl2 + gl1) acting on an abelian odd tower",
    "flows.closed-forms": "exponential flows reproduce their closed forms to the working order",
    "flows.group": "flows with nilpotent parameters specialize the sphere group action",
}


def registry(cfg):
    """Ordered mapping of check id to (law, runner) for a configuration."""
    cfg.validate()
    checks = {}
    checks["grassmann.laws"] = (_LAWS["grassmann.laws"], _suite_grassmann_laws)
    checks["superfield.operators"] = (
        _LAWS["superfield.operators"], _suite_superfield_operators)
    checks["superconformal.closure"] = (
        _LAWS["superconformal.closure"], _suite_superconformal_closure)
    checks["superconformal.roundtrip"] = (
        _LAWS["superconformal.roundtrip"], _suite_superconformal_roundtrip)
    checks["spheres.transition"] = (
        _LAWS["spheres.transition"], _suite_spheres_transition)
    for n in cfg.n_range:
        checks[f"spheres.closure.n={n}"] = (
            _LAWS["spheres.closure.n={n}"].replace("{n}", str(n)),
            _suite_spheres_closure(n))
    for n in cfg.n_range:
        checks[f"spheres.north.n={n}"] = (
            _LAWS["spheres.north.n={n}"].replace("{n}", str(n)),
            _suite_spheres_north(n))
    checks["spheres.cover.even"] = (
        _LAWS["spheres.cover.even"], _suite_spheres_cover(0))
    checks["spheres.cover.odd"] = (
        _LAWS["spheres.cover.odd"], _suite_spheres_cover(1))
    for n in sorted({m for m in set(cfg.n_range) | {2, -2} if abs(m) >= 2}):
        checks[f"spheres.translations.n={n}"] = (
            _LAWS["spheres.translations.n={n}"].replace("{n}", str(n)),
            _suite_spheres_translations(n))
    checks["ns.jacobi"] = (_LAWS["ns.jacobi"], _suite_ns_jacobi)
    checks["ns.representation"] = (
        _LAWS["ns.representation"], _suite_ns_representation)
    checks["ns.subalgebras"] = (_LAWS["ns.subalgebras"], _suite_ns_subalgebras)
    checks["matrix.osp"] = (_LAWS["matrix.osp"], _suite_matrix_osp)
    checks["matrix.p"] = (_LAWS["matrix.p"], _suite_matrix_p)
    checks["matrix.semidirect"] = (
        _LAWS["matrix.semidirect"], _suite_matrix_semidirect)
    checks["flows.closed-forms"] = (
        _LAWS["flows.closed-forms"], _suite_flows_closed_forms)
    checks["flows.group"] = (_LAWS["flows.group"], _suite_flows_group)
    return checks


def _run_one(cid, law, fn, cfg):
    rng = random.Random(f"{cfg.seed}:{cid}")
    start = time.perf_counter()
    outcome = fn(cfg, rng)
    elapsed = time.perf_counter() - start
    record = {
        "id": cid,
        "law": law,
        "status": outcome.status,
        "samples": outcome.samples,
        "failures": outcome.failures,
        "discrepancies": outcome.discrepancies,
    }
    if cfg.timings:
        record["elapsed_ms"] = round(elapsed * 1000, 3)
    return record


def _config_dict(cfg):
    return {
        "generators": cfg.generators,
        "band": cfg.band,
        "flow_order": cfg.flow_order,
        "n_range": list(cfg.n_range),
        "samples": cfg.samples,
        "seed": cfg.seed,
    }


def run_campaign(cfg):
    """Run every registered suite; deterministic for a fixed config."""
    checks = registry(cfg)
    records = [_run_one(cid, law, fn, cfg) for cid, (law, fn) in checks.items()]
    failed = sum(r["status"] == "fail" for r in records)
    noted = sum(r["status"] == "discrepancies" for r in records)
    return {
        "schema": 1,
        "config": _config_dict(cfg),
        "checks": records,
        "summary": {
            "total": len(records),
            "failed": failed,
            "with_discrepancies": noted,
            "status": "fail" if failed else "pass",
        },
    }


def check_single(cid, cfg):
    """Run one registered suite by id."""
    checks = registry(cfg)
    if cid not in checks:
        known = ", ".join(sorted(checks))
        raise UsageError(f"unknown check id {cid!r}; known ids: {known}")
    law, fn = checks[cid]
    record = _run_one(cid, law, fn, cfg)
    return {
        "schema": 1,
        "config": _config_dict(cfg),
        "checks": [record],
        "summary": {
            "total": 1,
            "failed": int(record["status"] == "fail"),
            "with_discrepancies": int(record["status"] == "discrepancies"),
            "status": "fail" if record["status"] == "fail" else "pass",
        },
    }


def report_bytes(report):
    return (json.dumps(report, indent=2, sort_keys=True) + "\n").encode()

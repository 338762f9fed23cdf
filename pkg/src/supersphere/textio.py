"""Text and JSON serialization.

Supernumbers use the grammar (EBNF in the README):

    3/2 + (0+1i)*z[1]z[2] - z[3]

Superpolynomials extend it with powers of the even variable and odd
variable symbols, one parenthesized supernumber coefficient per term:

    t+t-*(1 + z[1]z[2])*z^-2 + (3/2)*z

JSON forms carry exact rationals as strings; every container round-trips
through its matching parse function.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import GaussianRational, grat
from .grassmann import Supernumber, labels_from_mask, mask_from_labels
from .superfield import RationalSuperfunction, ScalarPoly, SuperPolynomial
from .superconformal import N1SuperanalyticMap, SuperconformalMap


class ParseError(ValueError):
    pass


_GEN = re.compile(r"z\[(\d+)\]")
_ZPOW = re.compile(r"z(?:\^(-?\d+))?$")


def _split_terms(text):
    """Split on top-level + and -, keeping signs."""
    terms = []
    depth = 0
    current = []
    sign = 1
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        # 't' guards the odd symbols t+ and t-; '^' guards z^-k exponents
        if depth == 0 and ch in "+-" and current and current[-1] not in "eE^*/(t":
            terms.append((sign, "".join(current).strip()))
            sign = 1 if ch == "+" else -1
            current = []
            continue
        if not current and ch in "+-" and depth == 0:
            sign = 1 if ch == "+" else -1
            continue
        current.append(ch)
    if "".join(current).strip():
        terms.append((sign, "".join(current).strip()))
    return terms


def parse_coefficient(text):
    text = text.strip()
    if not text:
        return grat(1)
    try:
        return GaussianRational.parse(text)
    except ValueError as exc:
        raise ParseError(f"bad coefficient {text!r}") from exc


def parse_supernumber(text, L):
    """Parse the textual supernumber grammar over L generators."""
    out = Supernumber.zero(L)
    for sign, term in _split_terms(text):
        if not term:
            raise ParseError("empty term")
        if "*" in term:
            coeff_text, _, mono_text = term.partition("*")
            coeff = parse_coefficient(coeff_text)
        elif term.startswith("z["):
            coeff, mono_text = grat(1), term
        else:
            coeff, mono_text = parse_coefficient(term), ""
        labels = []
        rest = mono_text.strip()
        while rest:
            m = _GEN.match(rest)
            if not m:
                raise ParseError(f"bad generator monomial: {mono_text!r}")
            labels.append(int(m.group(1)))
            rest = rest[m.end():]
        if sign < 0:
            coeff = -coeff
        out = out + Supernumber(L, {mask_from_labels(tuple(labels), L): coeff})
    return out


def format_supernumber(x):
    return str(x)


def parse_superpoly(text, L, n_odd=2):
    """Parse the superpolynomial grammar: [odd*](supernumber)[*z^k]."""
    names = ["t+", "t-"] if n_odd == 2 else ["t"]
    out = SuperPolynomial.zero(L, n_odd)
    for sign, term in _split_terms(text):
        mask = 0
        rest = term.strip()
        matched = True
        while matched:
            matched = False
            for bit, name in enumerate(names):
                if rest.startswith(name):
                    if mask & (1 << bit):
                        raise ParseError(f"repeated odd symbol in {term!r}")
                    mask |= 1 << bit
                    rest = rest[len(name):].lstrip("*").strip()
                    matched = True
                    break
        zexp = 0
        if not rest:
            coeff = Supernumber.one(L)
        elif rest.startswith("("):
            depth = 0
            for i, ch in enumerate(rest):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            coeff = parse_supernumber(rest[1:i], L)
            tail = rest[i + 1:].lstrip("*").strip()
            if tail:
                m = _ZPOW.match(tail)
                if not m:
                    raise ParseError(f"bad z power: {tail!r}")
                zexp = int(m.group(1) or 1)
        else:
            m = _ZPOW.match(rest)
            if m:
                zexp = int(m.group(1) or 1)
                coeff = Supernumber.one(L)
            elif "*" in rest:
                head, _, tail = rest.rpartition("*")
                m = _ZPOW.match(tail.strip())
                if m:
                    zexp = int(m.group(1) or 1)
                    coeff = parse_supernumber(head, L)
                else:
                    coeff = parse_supernumber(rest, L)
            else:
                coeff = parse_supernumber(rest, L)
        if sign < 0:
            coeff = -coeff
        out = out + SuperPolynomial(L, n_odd, {(zexp, mask): coeff})
    return out


def format_superpoly(p):
    return str(p)


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------


def rational_to_str(q):
    return str(q)


def supernumber_to_json(x):
    out = []
    for mask in sorted(x.terms, key=lambda m: (m.bit_count(), m)):
        c = x.terms[mask]
        out.append({
            "index": list(labels_from_mask(mask)),
            "re": str(c.re),
            "im": str(c.im),
        })
    return out


def supernumber_from_json(data, L):
    terms = {}
    for entry in data:
        mask = mask_from_labels(tuple(entry["index"]), L)
        terms[mask] = GaussianRational(Fraction(entry["re"]), Fraction(entry["im"]))
    return Supernumber(L, terms)


def superpoly_to_json(p):
    names = ["t+", "t-"] if p.n_odd == 2 else ["t"]
    out = []
    for (k, mask) in sorted(p.terms, key=lambda km: (km[1], km[0])):
        out.append({
            "z": k,
            "odd": [names[b] for b in range(p.n_odd) if mask & (1 << b)],
            "coeff": supernumber_to_json(p.terms[(k, mask)]),
        })
    return out


def superpoly_from_json(data, L, n_odd=2):
    names = {"t+": 0, "t-": 1} if n_odd == 2 else {"t": 0}
    terms = {}
    for entry in data:
        mask = 0
        for name in entry["odd"]:
            mask |= 1 << names[name]
        terms[(entry["z"], mask)] = supernumber_from_json(entry["coeff"], L)
    return SuperPolynomial(L, n_odd, terms)


def rsf_to_json(F):
    return {
        "num": superpoly_to_json(F.num),
        "den": {str(k): str(c) for k, c in sorted(F.den.coeffs.items())},
    }


def rsf_from_json(data, L, n_odd=2):
    num = superpoly_from_json(data["num"], L, n_odd)
    den = ScalarPoly({
        int(k): GaussianRational.parse(c) for k, c in data["den"].items()
    })
    return RationalSuperfunction(num, den)


def map_to_json(m):
    return {
        "L": m.L,
        "components": {
            name: rsf_to_json(comp) for name, comp in m.components().items()
        },
    }


def map_from_json(data):
    L = data["L"]
    comps = data["components"]
    return SuperconformalMap(
        rsf_from_json(comps["f"], L),
        rsf_from_json(comps["g+"], L),
        rsf_from_json(comps["g-"], L),
        rsf_from_json(comps["psi+"], L),
        rsf_from_json(comps["psi-"], L),
        coefficient_bound=False,
    )


def n1_map_to_json(h):
    return {
        "L": h.L,
        "components": {
            name: rsf_to_json(comp) for name, comp in h.components().items()
        },
    }


def n1_map_from_json(data):
    L = data["L"]
    comps = data["components"]
    return N1SuperanalyticMap(
        rsf_from_json(comps["f1"], L),
        rsf_from_json(comps["xi"], L),
        rsf_from_json(comps["psi"], L),
        rsf_from_json(comps["g"], L),
        coefficient_bound=False,
    )


def params_to_json(p):
    def sn(x):
        return None if x is None else supernumber_to_json(x)

    return {
        "n": p.n,
        "L": p.L,
        "a": sn(p.a), "b": sn(p.b), "c": sn(p.c), "d": sn(p.d),
        "eps": sn(p.eps),
        "eps_plus": sn(p.eps_plus),
        "eps_minus": sn(p.eps_minus),
        "psi_plus": [supernumber_to_json(x) for x in p.psi_plus],
        "psi_minus": [supernumber_to_json(x) for x in p.psi_minus],
    }


def params_from_json(data):
    from .spheres import AutomorphismParams

    L = data["L"]

    def sn(entry):
        return None if entry is None else supernumber_from_json(entry, L)

    return AutomorphismParams(
        data["n"],
        sn(data["a"]), sn(data["b"]), sn(data["c"]), sn(data["d"]),
        eps=sn(data["eps"]),
        eps_plus=sn(data["eps_plus"]),
        eps_minus=sn(data["eps_minus"]),
        psi_plus=[supernumber_from_json(x, L) for x in data["psi_plus"]],
        psi_minus=[supernumber_from_json(x, L) for x in data["psi_minus"]],
    )

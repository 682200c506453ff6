"""JSON documents: binary forms, decompositions, ground-truth sidecars.

Scalars travel as strings so nothing is ever rounded: rationals as
"p/q" (or "p"), prime-field elements as decimal integers.  Complex
balls serialize as {"re": ..., "im": ..., "rad": ...} where each part
is the *exact* decimal expansion of the underlying dyadic float; the
parser also accepts "p/q" strings there, which is how exact
decompositions (for `verify`) are written.
"""

import json
from fractions import Fraction

from .fields import PrimeField, QQ
from .forms import BinaryForm, BivariatePoly
from .numeric import Ball, NumericDecomposition
from .poly import Poly


class DocumentError(ValueError):
    """Malformed input document (maps to exit code 2 in the CLI)."""


def parse_field(spec):
    if spec is None or spec == "rational":
        return QQ
    if spec.startswith("prime:"):
        try:
            p = int(spec.split(":", 1)[1])
        except ValueError:
            raise DocumentError(f"bad prime modulus in field spec {spec!r}")
        try:
            return PrimeField(p)
        except ValueError as exc:
            raise DocumentError(str(exc))
    raise DocumentError(f"unknown field {spec!r} (use 'rational' or 'prime:p')")


def field_to_json(field):
    return f"prime:{field.p}" if isinstance(field, PrimeField) else "rational"


def _parse_scalar(field, x, where):
    try:
        return field.coerce(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad scalar {x!r} in {where}: {exc}")


def _scalar_list(field, xs, where):
    if not isinstance(xs, list):
        raise DocumentError(f"{where} must be a list")
    return [_parse_scalar(field, x, where) for x in xs]


def form_from_json(doc, field):
    if not isinstance(doc, dict):
        raise DocumentError("form document must be a JSON object")
    if "degree" not in doc:
        raise DocumentError("form document is missing 'degree'")
    D = doc["degree"]
    if not isinstance(D, int) or D < 1:
        raise DocumentError("'degree' must be a positive integer")
    has_raw = "coeffs" in doc
    has_norm = "normalized" in doc
    if has_raw == has_norm:
        raise DocumentError("exactly one of 'coeffs' or 'normalized' must be present")
    key = "coeffs" if has_raw else "normalized"
    values = _scalar_list(field, doc[key], key)
    if len(values) != D + 1:
        raise DocumentError(f"'{key}' must hold degree + 1 = {D + 1} entries")
    try:
        if has_raw:
            f = BinaryForm.from_monomial(field, values)
        else:
            f = BinaryForm(field, D, values, given="normalized")
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(str(exc))
    return f


def form_to_json(f):
    key = "coeffs" if f.given == "raw" else "normalized"
    values = f.monomial_coeffs() if f.given == "raw" else f.a
    return {"degree": f.D, key: [f.field.format(x) for x in values]}


def poly_to_json(p):
    return {"coeffs": [p.field.format(c) for c in p.coeffs]}


def poly_from_json(doc, field, where="polynomial"):
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise DocumentError(f"{where} must be an object with a 'coeffs' list")
    return Poly(field, _scalar_list(field, doc["coeffs"], where))


def dyadic_to_decimal(q):
    """Exact decimal string of a Fraction with power-of-two denominator."""
    q = Fraction(q)
    den = q.denominator
    k = den.bit_length() - 1
    if den != 1 << k:
        return f"{q.numerator}/{q.denominator}"
    if k == 0:
        return str(q.numerator)
    digits = abs(q.numerator) * 5 ** k
    s = str(digits).zfill(k + 1)
    out = s[:-k] + "." + s[-k:].rstrip("0")
    out = out.rstrip(".")
    return ("-" if q.numerator < 0 else "") + out


def decimal_to_fraction(s, where="value"):
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"bad numeric string {s!r} in {where}")


def _mpf_fraction(x):
    from .numeric import _mpf_to_fraction

    return _mpf_to_fraction(x)


def ball_to_json(b):
    return {
        "re": dyadic_to_decimal(_mpf_fraction(b.re)),
        "im": dyadic_to_decimal(_mpf_fraction(b.im)),
        "rad": dyadic_to_decimal(_mpf_fraction(b.rad)),
    }


def ball_from_json(doc, where="ball"):
    """A ball document, or a bare string for an exact real value."""
    if isinstance(doc, str):
        return (decimal_to_fraction(doc, where), Fraction(0)), Fraction(0)
    if not isinstance(doc, dict):
        raise DocumentError(f"{where} must be a ball object or an exact string")
    re = decimal_to_fraction(doc.get("re", "0"), where)
    im = decimal_to_fraction(doc.get("im", "0"), where)
    rad = decimal_to_fraction(doc.get("rad", "0"), where)
    return (re, im), rad


def decomposition_to_json(sd, nd=None):
    field = sd.field
    doc = {
        "field": field_to_json(field),
        "degree": sd.D,
        "rank": sd.rank,
        "border_rank": sd.border_rank,
        "unique": sd.unique,
        "N1": sd.N1,
        "N2": sd.N2,
        "Q": [field.format(c) for c in sd.Q.v],
        "T": [field.format(c) for c in sd.T.coeffs],
        "dQ": [field.format(c) for c in sd.dQ.coeffs],
        "Qx": [field.format(c) for c in sd.Qx.coeffs],
        "y_divides": sd.y_divides,
    }
    if sd.y_divides:
        doc["lambda_inf"] = field.format(sd.lambda_inf)
    if nd is not None:
        doc["numeric"] = {
            "requested_bits": nd.requested_bits,
            "working_precision": nd.working_precision,
            "residual_bound": dyadic_to_decimal(nd.residual_bound),
            "terms": [
                {
                    "lambda": ball_to_json(lam),
                    "alpha": ball_to_json(alpha),
                    "at_infinity": at_inf,
                }
                for lam, alpha, at_inf in nd.terms
            ],
        }
    return doc


def terms_from_json(doc):
    """Extract (lambda, alpha, at_infinity) triples with exact values.

    Accepts a decomposition document with a numeric block, or a bare
    {"terms": [...]} object.  Ball centers are taken as the term values.
    """
    if not isinstance(doc, dict):
        raise DocumentError("decomposition document must be a JSON object")
    block = doc.get("numeric", doc)
    terms_doc = block.get("terms")
    if not isinstance(terms_doc, list):
        raise DocumentError("document has no 'terms' list to verify")
    terms = []
    for i, t in enumerate(terms_doc):
        if not isinstance(t, dict) or "lambda" not in t:
            raise DocumentError(f"term {i} must be an object with 'lambda'")
        (lr, li), _ = ball_from_json(t["lambda"], f"terms[{i}].lambda")
        at_inf = bool(t.get("at_infinity", False))
        if at_inf:
            terms.append(((lr, li), (Fraction(0), Fraction(0)), True))
            continue
        if "alpha" not in t:
            raise DocumentError(f"term {i} needs 'alpha' (or at_infinity)")
        (ar, ai), _ = ball_from_json(t["alpha"], f"terms[{i}].alpha")
        terms.append(((lr, li), (ar, ai), False))
    return terms


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}")


def dump_json(doc, path=None):
    text = json.dumps(doc, indent=2, sort_keys=False)
    if path is None:
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")

"""JSON wire formats for algebras, multivectors, candidates, fields, matrices.

Coefficients travel as quadruples of decimal integer strings
[re_num, re_den, im_num, im_den]; rationals as [num, den] pairs.  Integer
JSON numbers are accepted on input for convenience.  Float-backend values
are rationalized (denominator-capped) before encoding, so everything that
is emitted re-parses exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .clifford import Algebra, Multivector, mask_from_indices, blade_indices
from .lie_ymp import Metric, SolutionCandidate
from .matrix_rep import CMatrix
from .field_series import PlaneWaveField
from .scalars import QQi

FLOAT_DENOMINATOR_CAP = 10**12


def _int_str(value) -> int:
    if isinstance(value, int):
        return value
    return int(str(value))


def rational_to_json(value: Fraction) -> list[str]:
    value = Fraction(value)
    return [str(value.numerator), str(value.denominator)]


def rational_from_json(data: Sequence) -> Fraction:
    if len(data) != 2:
        raise ValueError("rational must be a [numerator, denominator] pair")
    return Fraction(_int_str(data[0]), _int_str(data[1]))


def _coeff_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x).limit_denominator(FLOAT_DENOMINATOR_CAP)


def scalar_to_json(value) -> list[str]:
    if isinstance(value, QQi):
        re, im = value.re, value.im
    elif isinstance(value, complex):
        re, im = _coeff_fraction(value.real), _coeff_fraction(value.imag)
    else:
        re, im = Fraction(value), Fraction(0)
    return [
        str(re.numerator),
        str(re.denominator),
        str(im.numerator),
        str(im.denominator),
    ]


def scalar_from_json(data: Sequence) -> QQi:
    if len(data) != 4:
        raise ValueError("scalar must be a [re_num, re_den, im_num, im_den] quadruple")
    return QQi(
        Fraction(_int_str(data[0]), _int_str(data[1])),
        Fraction(_int_str(data[2]), _int_str(data[3])),
    )


def algebra_to_json(alg: Algebra) -> dict:
    return {"p": alg.p, "q": alg.q, "r": alg.r, "field": alg.field}


def algebra_from_json(data: dict) -> Algebra:
    return Algebra(
        p=int(data["p"]),
        q=int(data["q"]),
        r=int(data.get("r", 0)),
        field=str(data.get("field", "R")),
    )


def blade_key(mask: int) -> str:
    return ",".join(str(i) for i in blade_indices(mask))


def blade_mask_from_key(key: str, n: int) -> int:
    if key == "":
        return 0
    return mask_from_indices([int(part) for part in key.split(",")], n)


def multivector_to_json(mv: Multivector) -> dict:
    blades = {}
    for mask in sorted(mv.components(), key=lambda m: (m.bit_count(), m)):
        blades[blade_key(mask)] = scalar_to_json(mv.components()[mask])
    return {"blades": blades}


def multivector_from_json(alg: Algebra, data: dict) -> Multivector:
    comps = {}
    for key, quad in data.get("blades", {}).items():
        comps[blade_mask_from_key(key, alg.n)] = scalar_from_json(quad)
    return Multivector(alg, comps)


def metric_to_json(metric: Metric) -> dict:
    return {"p": metric.p, "q": metric.q}


def metric_from_json(data: dict) -> Metric:
    return Metric(p=int(data["p"]), q=int(data["q"]))


def candidate_to_json(c: SolutionCandidate) -> dict:
    if c.algebra is None:
        raise ValueError("only multivector candidates serialize to JSON")
    return {
        "algebra": algebra_to_json(c.algebra),
        "metric": metric_to_json(c.metric),
        "lambda": rational_to_json(c.lam),
        "theta": c.theta,
        "kappa": rational_to_json(c.kappa),
        "A": [multivector_to_json(a) for a in c.A],
    }


def candidate_from_json(data: dict) -> SolutionCandidate:
    alg = algebra_from_json(data["algebra"])
    metric = metric_from_json(data["metric"])
    theta = data.get("theta")
    if theta is not None:
        theta = int(theta)
    kappa = rational_from_json(data["kappa"]) if "kappa" in data else Fraction(1)
    return SolutionCandidate(
        metric=metric,
        A=[multivector_from_json(alg, item) for item in data["A"]],
        lam=rational_from_json(data["lambda"]),
        theta=theta,
        kappa=kappa,
        algebra=alg,
    )


def field_to_json(f: PlaneWaveField) -> dict:
    waves = []
    for k in sorted(f.waves):
        comps = f.waves[k]
        waves.append(
            {
                "k": [_rational_str(km) for km in k],
                "coeffs": [multivector_to_json(c) for c in comps],
            }
        )
    return {
        "algebra": algebra_to_json(f.algebra),
        "metric": metric_to_json(f.metric),
        "waves": waves,
    }


def _rational_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def field_from_json(data: dict, ncomp: int | None = None) -> PlaneWaveField:
    alg = algebra_from_json(data["algebra"])
    metric = metric_from_json(data["metric"])
    waves = {}
    for wave in data.get("waves", []):
        k = tuple(Fraction(str(v)) for v in wave["k"])
        comps = tuple(multivector_from_json(alg, c) for c in wave["coeffs"])
        waves[k] = comps
    if not waves:
        if ncomp is None:
            ncomp = metric.n
        return PlaneWaveField.zero(alg, metric, ncomp)
    first = next(iter(waves.values()))
    return PlaneWaveField(alg, metric, len(first), waves)


def cmatrix_to_json(m: CMatrix) -> list[list[list[str]]]:
    """Row-major: one quadruple per entry."""
    return [[scalar_to_json(v) for v in row] for row in m.rows]


def cmatrix_from_json(data: Sequence) -> CMatrix:
    return CMatrix([[scalar_from_json(v) for v in row] for row in data])

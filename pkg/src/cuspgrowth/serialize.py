"""JSON wire formats.

Conventions: exact rationals travel as "p/q" strings, integer matrices
as arrays of arrays of decimal strings (arbitrary precision preserved),
invariant-factor lists as arrays of decimal strings (integers accepted
on input).  Emitted documents are canonical: sorted keys, two-space
indent, trailing newline; reports round-trip byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .errors import ValidationError
from .lattice import AbelianHom, FiniteAbelianGroup, IntMatrix
from .towers import (
    HIRZEBRUCH,
    BaseSpace,
    CuspData,
    CTowerLevel,
    FibrationData,
    LevelReport,
    TowerReport,
    TowerSpec,
)
from .weights import IntStatus, PairWitness, WeightTuple, parse_fraction

#: JSON sentinel for a level with no applicable b1 bound.
UNBOUNDED = "UNBOUNDED_BY_METHOD"


def dumps_canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def fraction_to_json(x: Fraction) -> str:
    return str(x)


def weights_to_json(mu: WeightTuple) -> list[str]:
    return mu.as_strings()


def weights_from_json(data: Any) -> WeightTuple:
    if not isinstance(data, list) or any(not isinstance(x, str) for x in data):
        raise ValidationError(
            "a weight tuple must be a JSON array of 'p/q' strings (no floats)"
        )
    return WeightTuple(tuple(parse_fraction(x) for x in data))


def int_status_to_json(status: IntStatus) -> dict:
    def witness(w: PairWitness) -> dict:
        return {"i": w.i, "j": w.j, "value": fraction_to_json(w.value)}

    return {
        "verdict": status.verdict.value,
        "half_integral_witnesses": [witness(w) for w in status.half_witnesses],
        "fail_witnesses": [witness(w) for w in status.fail_witnesses],
    }


def _parse_int(x: Any, what: str) -> int:
    if isinstance(x, bool):
        raise ValidationError(f"{what}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError as exc:
            raise ValidationError(f"{what}: cannot parse integer from {x!r}") from exc
    raise ValidationError(f"{what}: expected an integer or decimal string, got {x!r}")


def matrix_to_json(m: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.entries]


def matrix_from_json(data: Any, cols: Optional[int] = None, what: str = "matrix") -> IntMatrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ValidationError(f"{what} must be a JSON array of arrays of decimal strings")
    rows = [tuple(_parse_int(x, what) for x in row) for row in data]
    if not rows and cols is None:
        raise ValidationError(f"{what} with no rows needs an explicit column count")
    return IntMatrix.from_rows(rows, cols)


def group_to_json(g: FiniteAbelianGroup) -> list[str]:
    return [str(d) for d in g.invariant_factors]


def group_from_json(data: Any) -> FiniteAbelianGroup:
    if not isinstance(data, list):
        raise ValidationError("invariant_factors must be a JSON array")
    return FiniteAbelianGroup.from_cyclic_factors(
        [_parse_int(x, "invariant_factors") for x in data]
    )


def hom_to_json(rho: AbelianHom) -> dict:
    return {
        "invariant_factors": group_to_json(rho.target),
        "images": matrix_to_json(rho.images),
    }


def hom_from_json(data: Any, ambient_rank: int) -> AbelianHom:
    if not isinstance(data, dict):
        raise ValidationError("each level must be an object with "
                              "invariant_factors and images")
    target = group_from_json(data.get("invariant_factors"))
    images = matrix_from_json(data.get("images"), cols=ambient_rank, what="images")
    return AbelianHom(target, images)


def base_to_json(base: BaseSpace) -> Any:
    if base is HIRZEBRUCH:
        return "hirzebruch"
    return {
        "rank": base.ambient_rank,
        "cusps": [
            {"name": c.name, "sublattice": matrix_to_json(c.sublattice)}
            for c in base.cusps
        ],
        "fibrations": [
            {
                "name": f.name,
                "kernel_sublattice": matrix_to_json(f.kernel_sublattice),
                "target_rank": f.target_rank,
                "fiber_genus": f.fiber_genus,
                "fiber_punctures": f.fiber_punctures,
            }
            for f in base.fibrations
        ],
    }


def base_from_json(data: Any) -> BaseSpace:
    if data == "hirzebruch":
        return HIRZEBRUCH
    if not isinstance(data, dict):
        raise ValidationError(
            "base must be the string 'hirzebruch' or an object with "
            "rank, cusps, and fibrations"
        )
    rank = _parse_int(data.get("rank"), "base rank")
    cusps = []
    for c in data.get("cusps", []):
        cusps.append(
            CuspData(str(c["name"]), matrix_from_json(c["sublattice"], cols=None,
                                                      what=f"cusp {c.get('name')}"))
        )
    fibrations = []
    for f in data.get("fibrations", []):
        fibrations.append(
            FibrationData(
                str(f["name"]),
                matrix_from_json(f["kernel_sublattice"], cols=None,
                                 what=f"fibration {f.get('name')}"),
                target_rank=_parse_int(f["target_rank"], "target_rank"),
                fiber_genus=_parse_int(f["fiber_genus"], "fiber_genus"),
                fiber_punctures=_parse_int(f["fiber_punctures"], "fiber_punctures"),
            )
        )
    return BaseSpace(rank, tuple(cusps), tuple(fibrations))


def tower_spec_to_json(spec: TowerSpec) -> dict:
    return {
        "base": base_to_json(spec.base),
        "levels": [hom_to_json(rho) for rho in spec.levels],
    }


def tower_spec_from_json(data: Any) -> TowerSpec:
    if not isinstance(data, dict):
        raise ValidationError("a tower spec must be a JSON object")
    base = base_from_json(data.get("base"))
    levels = tuple(
        hom_from_json(lv, base.ambient_rank) for lv in data.get("levels", [])
    )
    return TowerSpec(base, levels)


def level_report_to_json(report: LevelReport) -> dict:
    doc = {
        "degree": report.degree,
        "connected": report.connected,
        "cusp_multiplicities": dict(sorted(report.cusp_multiplicities.items())),
        "total_cusps": report.total_cusps,
        "b1_bound": report.b1_bound if report.b1_bound is not None else UNBOUNDED,
        "factoring_fibration": report.factoring_fibration,
    }
    if not report.connected:
        doc["note"] = "cover is disconnected; the total cusp count is only defined per component"
    return doc


def tower_report_to_json(report: TowerReport) -> dict:
    return {"levels": [level_report_to_json(lv) for lv in report.levels]}


def c_tower_report_to_json(levels: list[CTowerLevel]) -> dict:
    return {
        "levels": [
            {
                "level": lv.level,
                "degree": lv.degree,
                "b1_surface": lv.b1_surface,
                "total_cusps": lv.total_cusps,
            }
            for lv in levels
        ]
    }

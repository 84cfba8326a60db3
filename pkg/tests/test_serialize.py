import json

import pytest

from cuspgrowth import (
    HIRZEBRUCH,
    AbelianHom,
    FiniteAbelianGroup,
    IntMatrix,
    ValidationError,
    WeightTuple,
    analyze_tower,
    build_a_tower,
)
from cuspgrowth.serialize import (
    UNBOUNDED,
    base_from_json,
    base_to_json,
    dumps_canonical,
    level_report_to_json,
    matrix_from_json,
    matrix_to_json,
    tower_report_to_json,
    tower_spec_from_json,
    tower_spec_to_json,
    weights_from_json,
    weights_to_json,
)
from cuspgrowth.towers import analyze_level


class TestWeightsJson:
    def test_round_trip(self):
        mu = WeightTuple.parse("2/6,2/6,3/6,4/6,1/6")
        data = weights_to_json(mu)
        assert data == ["1/3", "1/3", "1/2", "2/3", "1/6"]
        assert weights_from_json(data).weights == mu.weights

    def test_no_floats_accepted(self):
        with pytest.raises(ValidationError, match="no floats"):
            weights_from_json([0.5, "1/2", "1/2", "1/2"])


class TestMatrixJson:
    def test_round_trip_with_big_entries(self):
        big = 10**40
        m = IntMatrix.from_rows([[big, -1], [0, 2]])
        data = matrix_to_json(m)
        assert data == [[str(big), "-1"], ["0", "2"]]
        assert matrix_from_json(data) == m

    def test_strings_preserve_precision_through_json(self):
        big = 2**200 + 1
        m = IntMatrix.from_rows([[big]])
        text = json.dumps(matrix_to_json(m))
        assert matrix_from_json(json.loads(text))[0, 0] == big

    def test_integers_accepted_on_input(self):
        assert matrix_from_json([[1, 2], [3, 4]])[1, 0] == 3

    def test_zero_rows_needs_width(self):
        with pytest.raises(ValidationError, match="column count"):
            matrix_from_json([])
        assert matrix_from_json([], cols=4).shape == (0, 4)


class TestTowerSpecJson:
    def test_builtin_base_round_trip(self):
        spec = build_a_tower(3, 2)
        doc = tower_spec_to_json(spec)
        assert doc["base"] == "hirzebruch"
        again = tower_spec_from_json(doc)
        assert again.base is HIRZEBRUCH
        assert again.levels == spec.levels

    def test_custom_base_round_trip(self):
        # The built-in base spelled out as an explicit custom object must
        # analyze identically to the "hirzebruch" shorthand.
        doc = tower_spec_to_json(build_a_tower(2, 1))
        explicit = {
            "base": {
                "rank": 4,
                "cusps": [
                    {"name": c.name, "sublattice": matrix_to_json(c.sublattice)}
                    for c in HIRZEBRUCH.cusps
                ],
                "fibrations": [
                    {
                        "name": f.name,
                        "kernel_sublattice": matrix_to_json(f.kernel_sublattice),
                        "target_rank": f.target_rank,
                        "fiber_genus": f.fiber_genus,
                        "fiber_punctures": f.fiber_punctures,
                    }
                    for f in HIRZEBRUCH.fibrations
                ],
            },
            "levels": doc["levels"],
        }
        spec = tower_spec_from_json(json.loads(json.dumps(explicit)))
        assert spec.base.ambient_rank == 4
        assert analyze_tower(spec).levels == analyze_tower(build_a_tower(2, 1)).levels

    def test_invariant_factors_accept_ints_and_strings(self):
        doc = {
            "base": "hirzebruch",
            "levels": [
                {"invariant_factors": [9], "images": [[1, 0, 0, 0]]},
                {"invariant_factors": ["9"], "images": [["1", "0", "0", "0"]]},
            ],
        }
        spec = tower_spec_from_json(doc)
        assert spec.levels[0] == spec.levels[1]

    def test_malformed_spec(self):
        with pytest.raises(ValidationError):
            tower_spec_from_json(["not", "an", "object"])
        with pytest.raises(ValidationError):
            tower_spec_from_json({"base": 17, "levels": []})


class TestReportJson:
    def test_level_report_fields(self):
        report = analyze_level(HIRZEBRUCH, AbelianHom.cyclic(9, (1, 0, 0, 0)))
        doc = level_report_to_json(report)
        assert doc["degree"] == 9
        assert doc["total_cusps"] == 12
        assert doc["b1_bound"] == 6
        assert doc["factoring_fibration"] == "proj1"
        assert list(doc["cusp_multiplicities"]) == sorted(doc["cusp_multiplicities"])

    def test_unbounded_sentinel(self):
        rho = AbelianHom(
            FiniteAbelianGroup((3,)), IntMatrix.from_rows([[1, 1, 1, 0]])
        )
        doc = level_report_to_json(analyze_level(HIRZEBRUCH, rho))
        assert doc["b1_bound"] == UNBOUNDED
        assert doc["factoring_fibration"] is None

    def test_disconnected_note(self):
        doc = level_report_to_json(
            analyze_level(HIRZEBRUCH, AbelianHom.cyclic(4, (2, 2, 0, 0)))
        )
        assert doc["total_cusps"] is None
        assert "disconnected" in doc["note"]

    def test_canonical_dump_is_stable(self):
        report = analyze_tower(build_a_tower(3, 2))
        text1 = dumps_canonical(tower_report_to_json(report))
        text2 = dumps_canonical(tower_report_to_json(analyze_tower(build_a_tower(3, 2))))
        assert text1 == text2
        assert text1.endswith("\n")


class TestBaseJson:
    def test_builtin_marker(self):
        assert base_to_json(HIRZEBRUCH) == "hirzebruch"
        assert base_from_json("hirzebruch") is HIRZEBRUCH

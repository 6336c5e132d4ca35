"""Character-table data model: parsing, validation, power maps, chains."""

import json

import pytest

from helixpq import chartab
from helixpq.chartab import (
    PAChain,
    TableError,
    check_chain_shape,
    parse_chain,
    parse_table,
    render_chain,
    render_table,
    trivial_chain,
    unit_character_value,
    validate,
)
from helixpq.cyclo import cyc_rational, root_of_unity

Z3 = {"conductor": 3, "terms": [[1, 1, 1]]}
Z3SQ = {"conductor": 3, "terms": [[2, 1, 1]]}


def cyclic3_table(**overrides):
    data = {
        "group_name": "C3",
        "order": 3,
        "completeness": "full",
        "classes": [
            {"name": "1a", "element_order": 1, "size": 1},
            {"name": "3a", "element_order": 3, "size": 1,
             "power_maps": {"2": "3b"}},
            {"name": "3b", "element_order": 3, "size": 1,
             "power_maps": {"2": "3a"}},
        ],
        "characters": [
            {"name": "triv", "degree": 1, "values": {"1a": 1, "3a": 1, "3b": 1}},
            {"name": "omega", "degree": 1, "values": {"1a": 1, "3a": Z3, "3b": Z3SQ}},
            {"name": "omega2", "degree": 1, "values": {"1a": 1, "3a": Z3SQ, "3b": Z3}},
        ],
    }
    data.update(overrides)
    return data


# --- parsing / rendering ----------------------------------------------------

def test_round_trip_preserves_everything():
    table = parse_table(cyclic3_table())
    again = parse_table(render_table(table))
    assert render_table(again) == render_table(table)
    assert json.dumps(render_table(table))  # JSON-serializable


def test_classes_sorted_by_order_then_name():
    table = parse_table(cyclic3_table(classes=[
        {"name": "3b", "element_order": 3},
        {"name": "1a", "element_order": 1},
        {"name": "3a", "element_order": 3},
    ], characters=[]))
    assert [c.name for c in table.classes] == ["1a", "3a", "3b"]


def test_duplicate_class_names_rejected():
    with pytest.raises(TableError, match="duplicate"):
        parse_table(cyclic3_table(classes=[
            {"name": "1a", "element_order": 1},
            {"name": "1a", "element_order": 1},
        ], characters=[]))


def test_power_map_to_unknown_class_rejected():
    bad = cyclic3_table()
    bad["classes"][1]["power_maps"] = {"2": "9z"}
    with pytest.raises(TableError, match="unknown class"):
        parse_table(bad)


def test_value_on_unknown_class_rejected():
    bad = cyclic3_table()
    bad["characters"][0]["values"]["5x"] = 1
    with pytest.raises(TableError, match="unknown class"):
        parse_table(bad)


def test_nonpositive_degree_rejected():
    bad = cyclic3_table()
    bad["characters"][0]["degree"] = 0
    with pytest.raises(TableError, match="degree"):
        parse_table(bad)


def test_composite_brauer_characteristic_rejected():
    bad = cyclic3_table()
    bad["characters"][0]["characteristic"] = 6
    with pytest.raises(TableError, match="characteristic"):
        parse_table(bad)


# --- validation -------------------------------------------------------------

def test_validate_accepts_good_table():
    report = validate(parse_table(cyclic3_table()))
    assert report.ok, report.problems
    assert "column-orthogonality" in report.checks_run


def test_validate_flags_degree_mismatch_at_identity():
    bad = cyclic3_table()
    bad["characters"][1]["values"]["1a"] = 7
    report = validate(parse_table(bad))
    assert not report.ok
    assert any("identity" in p or "degree" in p for p in report.problems)


def test_validate_flags_orthogonality_violation():
    bad = cyclic3_table()
    bad["characters"][1]["values"]["3b"] = 1  # no longer a character
    report = validate(parse_table(bad))
    assert not report.ok


def test_validate_flags_power_map_order_mismatch():
    bad = cyclic3_table()
    # order-3 class squaring into the identity is impossible
    bad["classes"][1]["power_maps"] = {"2": "1a"}
    report = validate(parse_table(bad))
    assert not report.ok
    assert any("power-map" in p for p in report.problems)


# --- lookups and power maps --------------------------------------------------

def test_classes_of_order_dividing():
    table = parse_table(cyclic3_table())
    assert [c.name for c in table.classes_of_order_dividing(3)] == ["3a", "3b"]
    assert [c.name for c in table.classes_of_order_dividing(3, include_identity=True)] \
        == ["1a", "3a", "3b"]
    assert table.classes_of_order_dividing(2) == []


def test_power_class_uses_stored_maps_and_inference():
    table = parse_table(cyclic3_table())
    assert table.power_class("3a", 2) == "3b"     # stored
    assert table.power_class("3a", 3) == "1a"     # kills the order
    assert table.power_class("3a", 4) == "3a"     # k = 1 mod o
    assert table.power_class("1a", 5) == "1a"


def test_power_class_unique_target_inference_and_ambiguity():
    data = {
        "group_name": "toy",
        "completeness": "partial",
        "classes": [
            {"name": "1a", "element_order": 1},
            {"name": "2a", "element_order": 2},
            {"name": "6a", "element_order": 6},
            {"name": "3a", "element_order": 3},
            {"name": "3b", "element_order": 3},
        ],
        "characters": [],
    }
    table = parse_table(data)
    # 6a^3 has order 2 and 2a is the only candidate
    assert table.power_class("6a", 3) == "2a"
    # 6a^2 has order 3 but two classes qualify and no map is stored
    assert table.power_class("6a", 2) is None


def test_unit_character_value_is_linear():
    table = parse_table(cyclic3_table())
    omega = table.character_by_name("omega")
    v = unit_character_value(omega, {"3a": 2, "3b": -1}, table)
    assert v == cyc_rational(2) * root_of_unity(3) - root_of_unity(3, 2)


# --- chains -------------------------------------------------------------------

def test_chain_round_trip_and_accessors():
    chain = PAChain(6, {
        2: {"2a": 1},
        3: {"3a": 0, "3b": 1},
        6: {"2a": -2, "3a": 2, "3b": 1},
    })
    assert chain.levels() == [2, 3, 6]
    assert chain.entry(6)["3a"] == 2
    assert not chain.is_nonnegative()
    rebuilt = parse_chain(json.dumps(render_chain(chain)))
    assert rebuilt.unit_order == 6 and rebuilt.entries == chain.entries
    assert chain.restricted(3).entries == {3: {"3a": 0, "3b": 1}}
    with pytest.raises(ValueError):
        chain.restricted(4)


def test_check_chain_shape_accepts_group_element_chain():
    table = parse_table(cyclic3_table())
    chain = trivial_chain(table, "3a")
    assert chain.unit_order == 3
    assert chain.entries == {3: {"3a": 1, "3b": 0}}
    check_chain_shape(table, chain)


def test_check_chain_shape_rejects_wrong_levels():
    table = parse_table(cyclic3_table())
    with pytest.raises(TableError, match="level"):
        check_chain_shape(table, PAChain(3, {}))


def test_check_chain_shape_rejects_bad_sum():
    table = parse_table(cyclic3_table())
    with pytest.raises(TableError, match="sum"):
        check_chain_shape(table, PAChain(3, {3: {"3a": 2, "3b": 1}}))


def test_check_chain_shape_rejects_identity_support():
    table = parse_table(cyclic3_table())
    with pytest.raises(TableError):
        check_chain_shape(table, PAChain(3, {3: {"1a": 1, "3a": 0, "3b": 0}}))


def test_trivial_chain_of_identity_is_empty():
    table = parse_table(cyclic3_table())
    chain = trivial_chain(table, "1a")
    assert chain.unit_order == 1 and chain.entries == {}
    check_chain_shape(table, chain)


# --- embedded datasets all parse and validate --------------------------------

def test_embedded_datasets_validate():
    from helixpq import datasets

    assert len(datasets.list_embedded()) == 8
    for name in datasets.list_embedded():
        table = datasets.load_embedded(name)
        report = validate(table)
        assert report.ok, (name, report.problems)


def test_unknown_embedded_name_rejected():
    from helixpq import datasets

    with pytest.raises(TableError, match="embedded"):
        datasets.load_embedded("nope")

"""Generated PSL(2,q)/PGL(2,q) tables: structure, known values, power maps."""

import pytest

from helixpq.chartab import render_table, validate
from helixpq.cyclo import cyc_rational, root_of_unity
from helixpq.psl2 import gen_brauer3, gen_table, resolve_params

SPOT = [("psl2", q) for q in (4, 5, 7, 9, 27)] + \
       [("pgl2", q) for q in (5, 7, 9, 27)]


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        resolve_params("psu3", 5)
    with pytest.raises(ValueError):
        resolve_params("psl2", 6)
    with pytest.raises(ValueError):
        resolve_params("psl2", 3)


@pytest.mark.parametrize("family,q", SPOT)
def test_generated_tables_validate(family, q):
    table = gen_table(family, q)
    report = validate(table)
    assert report.ok, report.problems


@pytest.mark.parametrize("family,q", SPOT)
def test_group_order_and_class_sizes(family, q):
    table = gen_table(family, q)
    d = 2 if (family == "psl2" and q % 2) else 1
    assert table.order == q * (q * q - 1) // d
    assert sum(c.size for c in table.classes) == table.order
    assert table.completeness == "full"


def _steinberg_expectation(cls, q):
    if cls.element_order == 1:
        return q
    if cls.size in (q * q - 1, (q * q - 1) // 2):
        return 0  # unipotent
    if cls.size in (q * (q + 1), q * (q + 1) // 2):
        return 1  # split torus
    if cls.size in (q * (q - 1), q * (q - 1) // 2):
        return -1  # nonsplit torus
    raise AssertionError(f"unclassifiable class {cls}")


@pytest.mark.parametrize("family,q", SPOT)
def test_steinberg_row(family, q):
    table = gen_table(family, q)
    st = table.character_by_name("st")
    assert st.degree == q
    for cls in table.classes:
        assert st.values[cls.name] == cyc_rational(
            _steinberg_expectation(cls, q)
        ), cls.name


def test_known_degree_multisets():
    # alternating/symmetric group isomorphisms pin these down
    cases = {
        ("psl2", 5): [1, 3, 3, 4, 5],             # A5
        ("psl2", 7): [1, 3, 3, 6, 7, 8],
        ("psl2", 9): [1, 5, 5, 8, 8, 9, 10],      # A6
        ("pgl2", 5): [1, 1, 4, 4, 5, 5, 6],       # S5
        ("pgl2", 7): [1, 1, 6, 6, 6, 7, 7, 8, 8],
    }
    for (family, q), degrees in cases.items():
        table = gen_table(family, q)
        assert sorted(ch.degree for ch in table.characters) == degrees, (family, q)


def test_even_q_psl_equals_pgl():
    a = render_table(gen_table("psl2", 8))
    b = render_table(gen_table("pgl2", 8))
    assert a["characters"] == b["characters"]
    assert a["classes"] == b["classes"]


def test_halved_pair_values_on_unipotent_classes():
    # the two degree-13 characters of PSL(2,27) take 1 + 3*z3 and 1 + 3*z3^2
    # on the two order-3 classes, in opposite assignments
    table = gen_table("psl2", 27)
    pair = [ch for ch in table.characters if ch.degree == 13]
    assert len(pair) == 2
    unis = [c.name for c in table.classes if c.element_order == 3]
    assert len(unis) == 2
    want = {cyc_rational(1) + cyc_rational(3) * root_of_unity(3),
            cyc_rational(1) + cyc_rational(3) * root_of_unity(3, 2)}
    seen = []
    for ch in pair:
        got = {ch.values[u] for u in unis}
        assert got == want, ch.name
        seen.append(tuple(ch.values[u] for u in unis))
    assert seen[0] == tuple(reversed(seen[1]))


def test_steinberg_value_on_nonsplit_psl2_32():
    table = gen_table("psl2", 32)
    st = table.character_by_name("st")
    three = [c for c in table.classes if c.element_order == 3]
    assert len(three) == 1
    assert st.values[three[0].name] == cyc_rational(-1)


def test_cube_map_on_order_13_classes_of_pgl2_27():
    # 3 has multiplicative order 3 mod 13, so cubing splits the six
    # order-13 split classes into two 3-cycles
    table = gen_table("pgl2", 27)
    names = [c.name for c in table.classes if c.element_order == 13]
    assert len(names) == 6
    image = {n: table.power_class(n, 3) for n in names}
    assert set(image.values()) == set(names)
    assert all(image[n] != n for n in names)
    for n in names:
        assert image[image[image[n]]] == n


def test_power_maps_cover_primes_of_group_order():
    table = gen_table("psl2", 7)  # order 168 = 2^3 * 3 * 7
    for cls in table.classes:
        for k in (2, 3, 4, 6, 7, 8, 12):
            assert table.power_class(cls.name, k) is not None, (cls.name, k)
    # squares mod 7 are {1,2,4}: squaring fixes each order-7 class,
    # cubing swaps the two
    assert table.power_class("7a", 2) == "7a"
    assert table.power_class("7a", 3) == "7b"
    assert table.power_class("7b", 3) == "7a"


def test_brauer3_shape():
    ch = gen_brauer3("pgl2", 9)
    assert ch.degree == 3 and ch.characteristic == 3
    table = gen_table("pgl2", 9, include_brauer3=True)
    got = table.character_by_name(ch.name)
    ident = table.identity_name()
    assert got.values[ident] == cyc_rational(3)
    for cls in table.classes:
        if cls.element_order % 3 == 0:
            assert cls.name not in got.values  # p-singular: undefined
        else:
            assert cls.name in got.values
    # split torus element with parameter 1: eigenvalues t, 1, 1/t
    z8 = root_of_unity(8)
    want = cyc_rational(1) + z8 + root_of_unity(8, 7)
    assert want in got.values.values()


def test_brauer3_rejected_for_odd_psl():
    with pytest.raises(ValueError):
        gen_table("psl2", 7, include_brauer3=True)


def test_generation_is_deterministic():
    assert render_table(gen_table("pgl2", 9)) == render_table(gen_table("pgl2", 9))

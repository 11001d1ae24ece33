"""Nullity structures as data: set categories, materialization, saturation."""

import pytest

from nullkan.fincat import EngineError, FinCategory, validate_category
from nullkan.nullity import (
    bar_null,
    base_nullity,
    carrier_functor,
    carrier_of,
    check_carrier_action,
    check_conullity_morphism,
    check_nullity_assignment,
    check_nullity_morphism,
    is_saturated,
    materialize_nullity_category,
    nullity_fiber_preorder,
    set_category,
    setmap_of,
)
from nullkan.order import (
    FiniteSet,
    SetMap,
    down_closure,
    full_nullity,
    proper_nullity,
    trivial_nullity,
)


@pytest.fixture
def loop():
    """One object with an involution."""
    cat = FinCategory(
        "loop",
        ("o",),
        [("id:o", "o", "o"), ("s", "o", "o")],
        {"o": "id:o"},
        {
            ("id:o", "id:o"): "id:o",
            ("id:o", "s"): "s",
            ("s", "id:o"): "s",
            ("s", "s"): "id:o",
        },
    )
    c = FiniteSet(("x0", "x1"))
    gamma = carrier_functor(
        "act",
        cat,
        {"o": c},
        {"id:o": SetMap.identity(c), "s": SetMap.from_dict(c, c, {"x0": "x1", "x1": "x0"})},
    )
    return cat, c, gamma


def test_set_category_sizes():
    c1, c2 = FiniteSet(("1",)), FiniteSet(("a", "b"))
    cat, obj_carrier, mor_map = set_category("S", [c1, c2])
    # 1 + 2 + 1 + 4 maps between the two carriers
    assert len(cat.objects) == 2
    assert len(cat.morphisms) == 8
    assert validate_category(cat).ok
    for (g, f), gf in cat.composition.items():
        if cat.cod(f) == cat.dom(g):
            assert mor_map[f].then(mor_map[g]).images == mor_map[gf].images


def test_materialized_sizes():
    for carrier, objs, mors in (
        (FiniteSet(()), 1, 1),
        (FiniteSet(("1",)), 2, 3),
        (FiniteSet(("a", "b")), 5, 62),
    ):
        m = materialize_nullity_category("N", [carrier])
        assert len(m.category.objects) == objs
        assert len(m.category.morphisms) == mors


def test_materialized_three_element_carrier():
    m = materialize_nullity_category("N3", [FiniteSet(("a", "b", "c"))])
    assert len(m.category.objects) == 19
    assert len(m.category.morphisms) == 5067


def test_materialized_lookups():
    c = FiniteSet(("a", "b"))
    m = materialize_nullity_category("N", [c])
    n = down_closure(c, [c.mask_of(["a"])])
    oid = m.object_of(n)
    assert m.structure[oid].masks == n.masks
    ident = m.morphism_of(oid, oid, SetMap.identity(c))
    assert m.category.is_identity(ident)
    swap = SetMap.from_dict(c, c, {"a": "b", "b": "a"})
    with pytest.raises(EngineError, match="not a nullity morphism"):
        m.morphism_of(oid, oid, swap)  # swap sends the null {a} to {b}


def test_materialize_carrier_cap():
    with pytest.raises(EngineError):
        materialize_nullity_category("big", [FiniteSet(tuple("abcd"))])


def test_fiber_preorder():
    p, families = nullity_fiber_preorder(FiniteSet(("a", "b")))
    assert len(p.objects) == 5
    assert len(p.morphisms) == 14  # inclusions among the five families
    assert validate_category(p).ok
    assert families["{}"] == frozenset({0})
    assert len(families) == 5


def test_carrier_action_checks(loop):
    cat, c, gamma = loop
    assert check_carrier_action(gamma).ok
    broken = carrier_functor(
        "broken",
        cat,
        {"o": c},
        {
            "id:o": SetMap.identity(c),
            "s": SetMap.from_dict(c, c, {"x0": "x1", "x1": "x1"}),  # s.s != id
        },
    )
    rep = check_carrier_action(broken)
    assert not rep.ok
    assert carrier_of(gamma, "o") == c
    assert setmap_of(gamma, "s").apply("x0") == "x1"


def test_nullity_assignment_functoriality(loop):
    cat, c, gamma = loop
    ok = check_nullity_assignment(gamma, {"o": proper_nullity(c)})
    assert ok.ok
    skew = {"o": down_closure(c, [c.mask_of(["x0"])])}
    rep = check_nullity_assignment(gamma, skew)
    assert not rep.ok
    w = rep.violations[0].as_dict()["witness"]
    assert w["morphism"] == "s"


def test_bar_and_saturation(loop):
    cat, c, gamma = loop
    skew = {"o": down_closure(c, [c.mask_of(["x0"])])}
    bar = bar_null(gamma, skew)
    assert bar["o"].masks == proper_nullity(c).masks
    assert not is_saturated(gamma, skew)
    assert is_saturated(gamma, {"o": proper_nullity(c)})
    assert is_saturated(gamma, {"o": trivial_nullity(c)})


def test_base_nullity_kinds():
    c = FiniteSet(("a", "b", "c"))
    assert base_nullity("trivial", c).is_trivial()
    assert base_nullity("proper", c).masks == proper_nullity(c).masks
    assert base_nullity("cardinality", c, k=1).masks == {0, 1, 2, 4}
    with pytest.raises(EngineError):
        base_nullity("nosuch", c)


def test_nullity_morphism_predicates():
    c = FiniteSet(("a", "b"))
    swap = SetMap.from_dict(c, c, {"a": "b", "b": "a"})
    assert check_nullity_morphism(swap, proper_nullity(c), proper_nullity(c))
    only_a = down_closure(c, [c.mask_of(["a"])])
    assert not check_nullity_morphism(swap, only_a, only_a)
    assert check_nullity_morphism(swap, only_a, full_nullity(c))
    # conullity asks for preimages of null sets to be null
    assert check_conullity_morphism(swap, only_a, down_closure(c, [c.mask_of(["b"])]))
    assert not check_conullity_morphism(swap, only_a, only_a)

"""Pointwise extensions of nullity diagrams along a functor."""

import pytest

from nullkan.fincat import (
    FunctorData,
    chain_preorder,
    discrete_category,
    identity_functor,
)
from nullkan.kan import (
    NonCocomplete,
    NullityDiagram,
    check_universal,
    fiber_category,
    left_kan,
    right_kan,
    slice_comma,
)
from nullkan.order import FiniteSet, SetMap, down_closure, trivial_nullity


@pytest.fixture
def two_points_over_chain():
    D = discrete_category("D", ["d0", "d1"])
    T = chain_preorder("T", ["t0", "t1"])
    K = FunctorData(
        "K", D, T, {"d0": "t0", "d1": "t1"},
        {"id:d0": "le:t0>t0", "id:d1": "le:t1>t1"},
    )
    c = FiniteSet(("a", "b"))
    values = {
        "d0": down_closure(c, [c.mask_of(["a"])]),
        "d1": down_closure(c, [c.mask_of(["b"])]),
    }
    carriers = {"t0": c, "t1": c}
    return K, NullityDiagram(D, values), carriers, c


def test_fiber_mode_singleton_fibers(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    L = left_kan(K, diag, carriers)
    assert L.extension["t0"].masks == diag.values["d0"].masks
    assert L.extension["t1"].masks == diag.values["d1"].masks
    assert L.path == {"t0": "fast", "t1": "fast"}
    R = right_kan(K, diag, carriers)
    assert R.extension["t0"].masks == diag.values["d0"].masks


def test_fiber_mode_union_and_conventions(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    collapse = FunctorData(
        "K2", K.source, K.target, {"d0": "t0", "d1": "t0"},
        {"id:d0": "le:t0>t0", "id:d1": "le:t0>t0"},
    )
    L = left_kan(collapse, diag, carriers)
    assert L.extension["t0"].masks == {0, 1, 2}  # union of the two values
    assert L.extension["t1"].is_trivial()  # empty fiber
    R = right_kan(collapse, diag, carriers)
    assert R.extension["t0"].is_trivial()  # intersection
    assert R.extension["t1"].is_full()  # empty fiber


def test_cross_check_agrees(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    L = left_kan(K, diag, carriers, cross_check=True)
    assert L.comparison_ok
    assert set(L.path.values()) == {"fast+brute"}


def test_universal_property_of_fiber_result(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    L = left_kan(K, diag, carriers)
    rep = check_universal(K, diag, L, target_carriers=carriers)
    assert rep.ok
    assert rep.checked["competitors"] > 0


def test_comma_mode_along_identity():
    T = chain_preorder("T", ["t0", "t1"])
    c = FiniteSet(("a",))
    diag = NullityDiagram(
        T,
        {"t0": trivial_nullity(c), "t1": down_closure(c, [1])},
        {m.name: SetMap.identity(c) for m in T.morphisms},
    )
    carriers = {"t0": c, "t1": c}
    for runner in (left_kan, right_kan):
        res = runner(identity_functor(T), diag, carriers, mode="comma")
        assert res.extension["t0"].masks == {0}
        assert res.extension["t1"].masks == {0, 1}
        assert set(res.path.values()) == {"brute"}


def test_comma_mode_requires_transports(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    with pytest.raises(Exception, match="transports"):
        left_kan(K, diag, carriers, mode="comma")


def test_comma_mode_reports_missing_colimit(two_points_over_chain):
    # a disconnected slice into the category of structures has no
    # universal cocone, and the brute path says so instead of guessing
    K, diag, carriers, c = two_points_over_chain
    with_tr = NullityDiagram(
        diag.source, diag.values,
        {"id:d0": SetMap.identity(c), "id:d1": SetMap.identity(c)},
    )
    with pytest.raises(NonCocomplete):
        left_kan(K, with_tr, carriers, mode="comma")


def test_slice_and_fiber_shapes(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    sl = slice_comma(K, "t1", "left")
    assert len(sl.category.objects) == 2  # d0 via t0<=t1 and d1 via id
    fc, incl = fiber_category(K, "t0")
    assert fc.objects == ("d0",)
    assert incl.on_obj("d0") == "d0"


def test_diagram_check(two_points_over_chain):
    K, diag, carriers, c = two_points_over_chain
    assert diag.check().ok
    missing = NullityDiagram(diag.source, {"d0": diag.values["d0"]})
    rep = missing.check()
    assert not rep.ok
    assert rep.violations[0].law == "diagram-value-missing"

"""Comma categories, their forgetfuls, and induced functors between them."""

import pytest

from nullkan.comma import (
    arrow_category,
    bang_functor,
    build_comma,
    check_right_inverse,
    comma_obj,
    const_functor,
    functor_inverse,
    induced_comma_functor,
    terminal_category,
)
from nullkan.fincat import (
    EngineError,
    FunctorData,
    chain_preorder,
    check_functor,
    compose_functors,
    functor_equal,
    identity_functor,
    validate_category,
)


def thin(name, src, tgt, obj_map):
    mor_map = {}
    for m in src.morphisms:
        mor_map[m.name] = tgt.hom(obj_map[m.dom], obj_map[m.cod])[0]
    return FunctorData(name, src, tgt, obj_map, mor_map)


@pytest.fixture
def c2():
    return chain_preorder("Y", ["y0", "y1"])


@pytest.fixture
def c3():
    return chain_preorder("X", ["x0", "x1", "x2"])


def test_terminal_category():
    star = terminal_category()
    assert star.objects == ("*",)
    assert star.morphisms[0].name == "id:*"
    assert validate_category(star).ok


def test_points_comma_recovers_the_category(c2):
    star = terminal_category()
    cc = build_comma(identity_functor(star), bang_functor(c2), "pts")
    assert len(cc.category.objects) == len(c2.objects)
    assert len(cc.category.morphisms) == len(c2.morphisms)
    assert validate_category(cc.category).ok
    inv = functor_inverse(cc.forget2)
    assert inv is not None
    assert functor_equal(compose_functors(cc.forget2, inv), identity_functor(c2))
    assert check_right_inverse(cc.forget2, inv)


def test_arrow_category_of_chain(c2):
    arr = arrow_category(c2)
    assert len(arr.category.objects) == len(c2.morphisms)
    assert validate_category(arr.category).ok
    assert check_functor(arr.forget1).ok
    assert check_functor(arr.forget2).ok
    assert arr.object_for("y0", "le:y0>y1", "y1") == comma_obj("y0", "le:y0>y1", "y1")


def test_comma_object_data(c3):
    arr = arrow_category(c3)
    top = arr.object_for("x0", "le:x0>x2", "x2")
    a, phi, b = arr.obj_data[top]
    assert (a, phi, b) == ("x0", "le:x0>x2", "x2")
    with pytest.raises(EngineError):
        arr.object_for("x2", "le:x0>x2", "x0")


def test_comma_morphism_marginals(c3):
    arr = arrow_category(c3)
    for m in arr.category.morphisms:
        f, g = arr.mor_data[m.name]
        assert arr.forget1.on_mor(m.name) == f
        assert arr.forget2.on_mor(m.name) == g


def test_build_comma_respects_bounds(c3):
    with pytest.raises(EngineError):
        build_comma(
            identity_functor(c3), identity_functor(c3), "tiny", max_objects=2
        )


def test_induced_functor_between_slices(c2, c3):
    # post-compose with a collapse X -> Y on the right leg
    collapse = thin("collapse", c3, c2, {"x0": "y0", "x1": "y0", "x2": "y1"})
    src = arrow_category(c3)
    dst = build_comma(collapse, collapse, "coll")
    t = induced_comma_functor(
        "both", identity_functor(c3), collapse, identity_functor(c3), src, dst
    )
    assert check_functor(t).ok
    # marginals commute with the triple
    assert functor_equal(
        compose_functors(dst.forget1, t), compose_functors(identity_functor(c3), src.forget1)
    )


def test_induced_functor_rejects_bad_square(c2, c3):
    incl = thin("incl", c2, c3, {"y0": "x0", "y1": "x2"})
    bot = thin("bot", c2, c3, {"y0": "x0", "y1": "x0"})
    src = arrow_category(c2)
    dst = arrow_category(c3)
    with pytest.raises(EngineError, match="left square fails"):
        induced_comma_functor("skew", incl, bot, incl, src, dst)


def test_const_functor(c3):
    star = terminal_category()
    at = const_functor(star, c3, "x1")
    assert check_functor(at).ok
    assert at.on_obj("*") == "x1"

"""Core finite-category layer: tables, functors, adjoint fragments, (co)limits."""

import pytest

from nullkan.fincat import (
    BudgetExceeded,
    EngineError,
    FinCategory,
    FunctorData,
    NatTransData,
    build_preorder,
    chain_preorder,
    check_functor,
    check_half_right_adjoint,
    check_natural,
    colimit,
    compose_functors,
    discrete_category,
    enumerate_functors,
    find_iso,
    find_nat_trans,
    find_retraction,
    find_section,
    functor_equal,
    identity_functor,
    limit,
    power_set_preorder,
    search_half_right_adjoint,
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


def test_chain_sizes(c3):
    # n-chain has n(n+1)/2 comparabilities
    assert len(c3.objects) == 3
    assert len(c3.morphisms) == 6
    assert validate_category(c3).ok


@pytest.mark.parametrize("n,mors", [(0, 1), (1, 3), (2, 9), (3, 27)])
def test_power_set_preorder_sizes(n, mors):
    # pairs s <= t in the boolean lattice: 3^n
    p = power_set_preorder(f"P{n}", [f"e{i}" for i in range(n)])
    assert len(p.objects) == 2**n
    assert len(p.morphisms) == mors
    assert validate_category(p).ok


def test_power_set_labels():
    p = power_set_preorder("P2", ["a", "b"])
    assert p.objects == ("{}", "{a}", "{b}", "{a,b}")


def test_build_preorder_rejects_nontransitive():
    with pytest.raises(EngineError, match="not transitive"):
        build_preorder(
            "bad",
            ["a", "b", "c"],
            [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")],
        )


def test_discrete_category():
    d = discrete_category("D", ["p", "q"])
    assert len(d.morphisms) == 2
    assert validate_category(d).ok
    assert d.hom("p", "q") == ()


def test_compose_and_hom(c3):
    assert c3.compose("le:x1>x2", "le:x0>x1") == "le:x0>x2"
    assert c3.hom("x0", "x2") == ("le:x0>x2",)
    assert c3.endos("x0") == ("le:x0>x0",)
    with pytest.raises(EngineError):
        c3.compose("le:x0>x1", "le:x1>x2")  # wrong order


def test_validate_catches_bad_composition(c3):
    broken = FinCategory(
        "broken",
        c3.objects,
        c3.morphisms,
        c3.identity,
        {**c3.composition, ("le:x1>x2", "le:x0>x1"): "le:x0>x1"},
    )
    rep = validate_category(broken)
    assert not rep.ok
    assert any(v.law in ("composition-endpoints", "associativity") for v in rep.violations)


def test_duplicate_morphism_name_rejected():
    with pytest.raises(EngineError, match="duplicate morphism"):
        FinCategory(
            "dup",
            ("x",),
            [("f", "x", "x"), ("f", "x", "x")],
            {"x": "f"},
            {("f", "f"): "f"},
        )


def test_functor_checks(c2, c3):
    f = thin("incl", c2, c3, {"y0": "x0", "y1": "x2"})
    assert check_functor(f).ok
    broken = FunctorData("broken", c2, c3, f.obj_map, {**f.mor_map, "le:y0>y1": "le:x0>x1"})
    assert not check_functor(broken).ok


def test_compose_functors_and_equality(c2, c3):
    f = thin("incl", c2, c3, {"y0": "x0", "y1": "x2"})
    g = thin("collapse", c3, c2, {"x0": "y0", "x1": "y0", "x2": "y1"})
    gf = compose_functors(g, f)
    assert functor_equal(gf, identity_functor(c2))
    assert not functor_equal(gf, thin("const", c2, c2, {"y0": "y0", "y1": "y0"}))


def test_enumerate_functors_counts(c2):
    # monotone self-maps of a 2-chain
    assert len(list(enumerate_functors(c2, c2))) == 3


def test_nat_trans_between_constants(c2, c3):
    lo = thin("lo", c2, c3, {"y0": "x0", "y1": "x0"})
    hi = thin("hi", c2, c3, {"y0": "x2", "y1": "x2"})
    up = find_nat_trans(lo, hi)
    assert up is not None
    assert check_natural(up).ok
    assert find_nat_trans(hi, lo) is None
    bad = NatTransData("bad", lo, hi, {"y0": "le:x0>x2", "y1": "le:x0>x0"})
    assert not check_natural(bad).ok


def test_find_nat_trans_budget(c3):
    p = identity_functor(c3)
    with pytest.raises(BudgetExceeded):
        find_nat_trans(p, p, budget=1)


def test_half_right_adjoints(c2, c3):
    surj = thin("surj", c3, c2, {"x0": "y0", "x1": "y0", "x2": "y1"})
    for kind in ("post", "pre"):
        found = search_half_right_adjoint(surj, kind)
        assert found is not None
        cand, nt = found
        assert check_half_right_adjoint(surj, cand, kind) is not None
    bot = thin("bot", c2, c2, {"y0": "y0", "y1": "y0"})
    top = thin("top", c2, c2, {"y0": "y1", "y1": "y1"})
    assert search_half_right_adjoint(bot, "post") is None
    assert search_half_right_adjoint(bot, "pre") is not None
    assert search_half_right_adjoint(top, "pre") is None
    assert search_half_right_adjoint(top, "post") is not None


def test_retraction_and_section(c2, c3):
    incl = thin("incl", c2, c3, {"y0": "x0", "y1": "x2"})
    r = find_retraction(incl)
    assert r is not None
    assert functor_equal(compose_functors(r, incl), identity_functor(c2))
    surj = thin("surj", c3, c2, {"x0": "y0", "x1": "y0", "x2": "y1"})
    sec = find_section(surj)
    assert sec is not None
    assert functor_equal(compose_functors(surj, sec), identity_functor(c2))
    assert find_section(thin("bot", c2, c2, {"y0": "y0", "y1": "y0"})) is None


def test_colimit_limit_of_chain(c3):
    ident = identity_functor(c3)
    co = colimit(ident)
    assert co.cone is not None and co.cone.tip == "x2"
    li = limit(ident)
    assert li.cone is not None and li.cone.tip == "x0"


def test_antichain_has_no_cocone():
    anti = build_preorder("anti", ["w0", "w1"], [("w0", "w0"), ("w1", "w1")])
    r = colimit(identity_functor(anti))
    assert r.cone is None
    assert r.reason == "no cocone"


def test_find_iso_in_two_cycle():
    cyc = build_preorder(
        "cyc", ["a", "b"], [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    )
    assert find_iso(cyc, "a", "b") == ("le:a>b", "le:b>a")
    assert find_iso(cyc, "a", "a") is not None
    c2 = chain_preorder("Y", ["y0", "y1"])
    assert find_iso(c2, "y0", "y1") is None

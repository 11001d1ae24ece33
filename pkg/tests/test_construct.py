"""The full lifting pipeline and the three theorem verifiers."""

import pytest

from nullkan.construct import (
    BUILTIN_NAMES,
    Setup,
    bar_base,
    build_comma_web,
    builtin_model,
    check_assumptions,
    direct_prevalence,
    find_pi_star_section,
    is_saturated_base,
    is_testable,
    main_null,
    run_pipeline,
    verify_extension,
    verify_invariance,
    verify_minimality,
)
from nullkan.fincat import BudgetExceeded, EngineError
from nullkan.nullity import carrier_of
from nullkan.order import down_closure, full_nullity, proper_nullity, trivial_nullity


def test_builtin_names():
    assert "f2_proper" in BUILTIN_NAMES
    assert len(BUILTIN_NAMES) == 6
    with pytest.raises(EngineError, match="unknown builtin"):
        builtin_model("nope")
    with pytest.raises(EngineError):
        builtin_model("injections_card_7")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_assumptions_hold_on_builtins(name):
    assert check_assumptions(builtin_model(name)).ok


def test_identity_model_lifts_proper():
    s = builtin_model("identity")
    n = main_null(s)
    assert n["o"].masks == proper_nullity(carrier_of(s.gamma, "o")).masks


def test_f2_trivial_lifts_trivial_everywhere():
    s = builtin_model("f2_trivial")
    n = main_null(s)
    assert all(v.is_trivial() for v in n.values())


def test_f2_proper_lifts_proper_everywhere():
    s = builtin_model("f2_proper")
    n = main_null(s)
    for V in s.main.objects:
        assert n[V].masks == proper_nullity(carrier_of(s.gamma, V)).masks


def test_injections_lift_full():
    for k in range(3):
        s = builtin_model(f"injections_card_{k}")
        n = main_null(s)
        for V in s.main.objects:
            assert n[V].is_full()


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_pipeline_matches_direct_prevalence(name):
    s = builtin_model(name)
    fast = main_null(s)
    slow = direct_prevalence(s)
    for V in s.main.objects:
        assert fast[V].masks == slow[V].masks


@pytest.mark.parametrize(
    "name,violations",
    [
        ("identity", 0),
        ("f2_trivial", 4),
        ("f2_proper", 0),
        ("injections_card_0", 722),
        ("injections_card_1", 624),
        ("injections_card_2", 360),
    ],
)
def test_comma_transport_violation_counts(name, violations):
    r = run_pipeline(builtin_model(name))
    assert len(r.comma_violations) == violations
    assert r.invariance.ok


def test_pipeline_cross_check():
    r = run_pipeline(builtin_model("f2_proper"), cross_check=True)
    assert r.main.comparison_ok
    assert r.probed.comparison_ok


def test_comma_web_shapes_and_memoization():
    s = builtin_model("f2_proper")
    w = build_comma_web(s)
    assert len(w.arrow_base.category.objects) == 3
    assert len(w.comma_main.category.objects) == 5
    assert len(w.comma_probe.category.objects) == 3
    assert build_comma_web(s) is w
    assert set(w.iota) >= {"iota1", "iota2", "iota3", "iota4", "iota5", "iota6", "iota7"}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_invariance_on_builtins(name):
    assert verify_invariance(builtin_model(name)).ok


def test_invariance_catches_broken_assignment():
    s = builtin_model("f2_trivial")
    computed = main_null(s)
    c = carrier_of(s.gamma, "F2^1")
    broken = dict(computed)
    broken["F2^1"] = down_closure(c, [c.mask_of(["0"])])
    rep = verify_invariance(s, broken)
    assert not rep.ok
    w = rep.violations[0].as_dict()["witness"]
    assert w["object"] == "F2^1"
    assert w["endomorphism"] == "s"
    assert w["null_set"] == "{0}"
    assert w["image"] == "{1}"


def test_saturation_of_builtins():
    assert is_saturated_base(builtin_model("identity"))
    assert is_saturated_base(builtin_model("f2_proper"))
    assert not is_saturated_base(builtin_model("f2_trivial"))
    assert not is_saturated_base(builtin_model("injections_card_0"))


def test_bar_closure_on_f2_trivial():
    s = builtin_model("f2_trivial")
    bar = bar_base(s)
    assert bar["F2^0"].is_trivial()
    assert bar["F2^1"].sorted_labels() == ["{}", "{1}"]


def test_minimality_on_covered_models():
    rep = verify_minimality(builtin_model("f2_trivial"))
    assert rep.ok
    assert rep.checked == {"candidates": 10, "admissible": 6}
    rep = verify_minimality(builtin_model("identity"))
    assert rep.ok
    assert rep.checked == {"candidates": 5, "admissible": 2}


def test_minimality_guard():
    with pytest.raises(BudgetExceeded):
        verify_minimality(builtin_model("f2_trivial"), guard=4)


def test_minimality_reports_smaller_candidate(idempotent_setup):
    rep = verify_minimality(idempotent_setup)
    assert not rep.ok
    w = rep.violations[0].as_dict()["witness"]
    assert w["object"] == "P0"
    assert w["null_set"] == "{u}"


def test_testability():
    s = builtin_model("f2_proper")
    n = main_null(s)
    assert is_testable(n, s, "F2^0")
    assert is_testable(n, s, "F2^1")
    c = carrier_of(s.gamma, "F2^1")
    inflated = dict(n)
    inflated["F2^1"] = full_nullity(c)
    assert is_testable(inflated, s, "F2^1")
    deflated = dict(n)
    deflated["F2^0"] = trivial_nullity(carrier_of(s.gamma, "F2^0"))
    assert is_testable(deflated, s, "F2^0")


def test_extension_on_identity_model():
    rep = verify_extension(builtin_model("identity"))
    assert rep.ok and rep.hypothesis_met
    assert all(v["status"] == "verified" for v in rep.items.values())
    assert rep.items["triangle_probe"]["section"] == "induced"


def test_extension_on_f2_proper_skips_blue_triangle():
    rep = verify_extension(builtin_model("f2_proper"))
    assert rep.ok and rep.hypothesis_met
    probe = rep.items["triangle_probe"]
    assert probe["status"] == "skipped"
    assert "no right inverse" in probe["reason"]
    assert rep.items["extension_equality"]["status"] == "verified"


def test_extension_hypothesis_unmet_on_f2_trivial():
    rep = verify_extension(builtin_model("f2_trivial"))
    assert not rep.hypothesis_met
    assert not rep.ok
    sat = rep.items["saturation"]
    assert sat["status"] == "unmet"
    assert sat["witness_object"] == "F2^1"
    assert sat["bar"] == ["{}", "{1}"]
    assert sat["base"] == ["{}"]


def test_pi_star_section_search():
    got, how = find_pi_star_section(builtin_model("identity"))
    assert got is not None and how == "induced"
    got, how = find_pi_star_section(builtin_model("f2_proper"))
    assert got is None and how == "absent"

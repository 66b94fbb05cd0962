"""Signatures, twistedness and winding numbers."""

import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hyperlog as hl
from hyperlog.errors import (
    AllRealLoop,
    HypothesisViolated,
    NotApplicable,
    TwistedLoop,
)
from hyperlog.winding import alternating_sum, reduce_signs

PI = math.pi


def test_reduce_signs_cancels_pairs():
    assert reduce_signs([1, 1]) == []
    assert reduce_signs([1, -1, -1, 1]) == []
    assert reduce_signs([1, -1, 1]) == [1, -1, 1]
    assert reduce_signs([-1, -1, 1]) == [1]


def test_alternating_sum_examples():
    # l counts from one: sum of sign_l (-1)^l
    assert alternating_sum([1]) == -1
    assert alternating_sum([1, -1]) == -2
    assert alternating_sum([1, 1]) == 0
    assert alternating_sum([-1, 1, -1]) == 3


@given(st.lists(st.sampled_from([1, -1]), max_size=40))
@settings(max_examples=200, deadline=None)
def test_cancellation_reduction_preserves_the_sum(signs):
    reduced = reduce_signs(signs)
    assert alternating_sum(signs) == alternating_sum(reduced)
    # a reduced sequence alternates, so the sum collapses to a product
    if reduced:
        assert alternating_sum(reduced) == -len(reduced) * reduced[0]


def test_circle_signatures():
    spec = hl.demo("slice_circle(i,1,1)").path
    sp = hl.sample_adaptive(spec)
    rep = hl.find_obstructions(sp, spec)
    assert hl.signature(rep) == 1
    assert hl.circular_signature(rep) == 2


def test_multi_turn_circle():
    res = hl.analyze_loop(hl.demo("slice_circle(i,1,3)").path)
    assert res.twisted is False
    assert res.winding == 3
    assert res.circular_signature == 6


def test_three_exp_windings_and_signatures():
    case = hl.demo("three_exp")
    bounce = hl.analyze_loop(case.path, case.directives["constant_i"])
    flip = hl.analyze_loop(case.path, case.directives["J_path"])
    assert (bounce.twisted, bounce.winding) == (False, 0)
    assert (flip.twisted, flip.winding) == (False, 1)
    assert bounce.circular_signature == 0
    assert flip.circular_signature == 2
    assert hl.c_homotopy_equivalent(bounce, flip) is False
    assert hl.c_homotopy_equivalent(bounce, bounce) is True


def test_lambda_loop_is_twisted():
    spec = hl.demo("lambda_loop").path
    assert hl.is_twisted(spec) is True
    with pytest.raises(TwistedLoop):
        hl.winding_number(spec)


def test_c_homotopy_needs_untwisted_loops():
    twisted = hl.analyze_loop(hl.demo("lambda_loop").path)
    plain = hl.analyze_loop(hl.demo("slice_circle(i,1,1)").path)
    with pytest.raises(NotApplicable):
        hl.c_homotopy_equivalent(twisted, plain)


def test_branch_changes_lambda():
    case = hl.demo("lambda_loop")
    got = hl.branch_change_report(case.path, case.basepoints["plus_one"])
    assert got == 1
    got = hl.branch_change_report(
        case.path,
        case.basepoints["minus_one"],
        initial_unit=np.array(case.initial_units["minus_one"])[1:],
    )
    assert got == 0


def test_branch_changes_gamma_copies():
    case = hl.demo("gamma1m_gamma2(3)")
    for copy, expected in case.expected["branch_change"].items():
        got = hl.branch_change_report(
            case.path,
            case.basepoints[copy],
            initial_unit=np.array(case.initial_units[copy])[1:],
        )
        assert got == expected, copy


def test_shadow_winding_direct():
    t = np.linspace(0.0, 2 * PI, 400)
    shadow = hl.companion.Shadow(t, np.cos(3 * t), np.sin(3 * t))
    assert hl.shadow_winding(shadow) == 3
    assert hl.shadow_winding(shadow.conjugate()) == -3


def test_all_real_loop_rejected():
    seg = hl.pathkit.TrigFn
    line = hl.pathkit.Line(
        0.0, 1.0, (1.0, 0.0, 0.0, 0.0), (2.0, 0.0, 0.0, 0.0)
    )
    back = hl.pathkit.Line(
        1.0, 2.0, (2.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0)
    )
    spec = hl.PathSpec(0.0, 2.0, (line, back), closed=True)
    with pytest.raises(AllRealLoop):
        hl.analyze_loop(spec)


def test_open_path_has_no_winding():
    with pytest.raises(HypothesisViolated):
        hl.analyze_loop(hl.demo("sigma_arc").path)


def test_loop_without_companion_reports_none():
    res = hl.analyze_loop(hl.demo("rocket_neg").path)
    assert res.twisted is None and res.winding is None


def test_twisted_loop_shadow_endpoints_are_conjugate():
    spec = hl.rotate_basepoint(hl.demo("lambda_loop").path, 0.3)
    sp = hl.sample_adaptive(spec)
    rep = hl.find_obstructions(sp, spec)
    units = hl.unit_field(sp, rep)
    shadow = hl.canonical_form(sp, units)
    assert shadow.x[-1] == pytest.approx(shadow.x[0], abs=1e-9)
    assert shadow.y[-1] == pytest.approx(-shadow.y[0], abs=1e-9)
    assert abs(shadow.y[0]) > 0.1


def test_untwisted_loop_shadows_close_up():
    spec = hl.rotate_basepoint(hl.demo("slice_circle(i,2,1)").path, 1.0)
    sp = hl.sample_adaptive(spec)
    rep = hl.find_obstructions(sp, spec)
    for sign in (1.0, -1.0):
        seed = np.array([sign, 0.0, 0.0])
        units = hl.unit_field(sp, rep, seed=seed)
        shadow = hl.canonical_form(sp, units)
        assert shadow.x[-1] == pytest.approx(shadow.x[0], abs=1e-9)
        assert shadow.y[-1] == pytest.approx(shadow.y[0], abs=1e-9)

"""Unit direction fields, companions, canonical forms and shadows."""

import math
from dataclasses import replace

import numpy as np
import pytest

import hyperlog as hl
from hyperlog.algebra import Hyper, ImaginaryUnit
from hyperlog.companion import _slerp
from hyperlog.errors import InitialMismatch, SliceMismatch

PI = math.pi


def sampled_and_report(name, closed=None, n0=64):
    spec = hl.demo(name).path
    if closed is not None:
        spec = replace(spec, closed=closed)
    try:
        sp = hl.sample_adaptive(spec, n0)
    except hl.errors.RefinementBudgetExceeded:
        sp = hl.sample_uniform(spec, 4097)
    return spec, sp, hl.find_obstructions(sp, spec)


def field_is_continuous(units):
    u = units / np.maximum(np.linalg.norm(units, axis=1, keepdims=True), 1e-30)
    dots = np.einsum("nd,nd->n", u[1:], u[:-1])
    return bool(np.all(dots > 0.0))


def test_slerp_endpoints_and_norms():
    u0 = np.array([1.0, 0.0, 0.0])
    u1 = np.array([0.0, 1.0, 0.0])
    out = _slerp(u0, u1, np.linspace(0.0, 1.0, 5))
    assert np.allclose(out[0], u0) and np.allclose(out[-1], u1)
    assert np.allclose(np.linalg.norm(out, axis=1), 1.0)


def test_slerp_antipodal_routes_through_a_perpendicular():
    u0 = np.array([1.0, 0.0, 0.0])
    out = _slerp(u0, -u0, np.linspace(0.0, 1.0, 9))
    assert np.allclose(out[0], u0) and np.allclose(out[-1], -u0)
    assert np.allclose(np.linalg.norm(out, axis=1), 1.0)
    assert field_is_continuous(out)


def test_circle_unit_field_is_constant():
    _spec, sp, rep = sampled_and_report("slice_circle(i,1,1)")
    units = hl.unit_field(sp, rep)
    assert field_is_continuous(units)
    assert np.allclose(units, [1.0, 0.0, 0.0], atol=1e-9)


def test_seed_flips_the_field():
    _spec, sp, rep = sampled_and_report("slice_circle(i,1,1)")
    units = hl.unit_field(sp, rep, seed=np.array([-1.0, 0.0, 0.0]))
    assert np.allclose(units, [-1.0, 0.0, 0.0], atol=1e-9)


def test_three_exp_directives_change_the_field():
    _spec, sp, rep = sampled_and_report("three_exp")
    bounce = hl.unit_field(sp, rep, ("bounce", "bounce"))
    flip = hl.unit_field(sp, rep, ("flip", "flip"))
    assert field_is_continuous(bounce) and field_is_continuous(flip)
    # both fields start out along +i on the big circle
    assert np.allclose(bounce[0], [1.0, 0.0, 0.0], atol=1e-6)
    assert np.allclose(flip[0], [1.0, 0.0, 0.0], atol=1e-6)
    # after the first run the bouncing field keeps its sign while the
    # flipping field reverses, as seen on the small circle
    n_small = int(np.searchsorted(sp.params, 3.5 * PI))
    assert float(np.dot(bounce[n_small], flip[n_small])) < 0.0


def test_companion_flags():
    _spec, sp, rep = sampled_and_report("slice_circle(i,1,1)")
    comp = hl.build_companion(sp, rep)
    assert comp.exists and comp.unique

    _spec, sp, rep = sampled_and_report("three_exp")
    comp = hl.build_companion(sp, rep)
    assert comp.exists and not comp.unique

    _spec, sp, rep = sampled_and_report("sigma_arc")
    comp = hl.build_companion(sp, rep)
    assert not comp.exists


def test_lift_companion_two_lifts():
    _spec, sp, rep = sampled_and_report("slice_circle(i,1,1)")
    comp = hl.build_companion(sp, rep)
    i_unit = ImaginaryUnit(Hyper([0.0, 1.0, 0.0, 0.0]))
    up = hl.lift_companion(comp, i_unit)
    down = hl.lift_companion(comp, -i_unit)
    assert np.allclose(up, -down)
    with pytest.raises(InitialMismatch):
        hl.lift_companion(comp, ImaginaryUnit(Hyper([0.0, 0.0, 1.0, 0.0])))


def test_canonical_form_reconstructs_the_path():
    spec, sp, rep = sampled_and_report("lambda_loop")
    units = hl.unit_field(sp, rep)
    shadow = hl.canonical_form(sp, units)
    rebuilt = shadow.x[:, None] * 0.0
    rebuilt = np.concatenate(
        [shadow.x[:, None], shadow.y[:, None] * units], axis=1
    )
    assert np.allclose(rebuilt, sp.values, atol=1e-8)


def test_canonical_form_rejects_wrong_field():
    _spec, sp, rep = sampled_and_report("lambda_loop")
    units = np.zeros((len(sp.params), 3))
    units[:, 2] = 1.0  # constant k, never tangent to the loop's slices
    with pytest.raises(SliceMismatch):
        hl.canonical_form(sp, units)


def test_shadow_conjugate_and_csv():
    _spec, sp, rep = sampled_and_report("slice_circle(i,1,1)")
    shadow = hl.shadow_of(sp, rep)
    conj = shadow.conjugate()
    assert np.allclose(conj.y, -shadow.y)
    text = shadow.to_csv()
    assert text.splitlines()[0] == "t,x,y"
    assert len(text.splitlines()) == len(sp.params) + 1


def test_circle_shadow_is_the_plane_circle():
    _spec, sp, rep = sampled_and_report("slice_circle(i,2,1)")
    shadow = hl.shadow_of(sp, rep)
    assert np.allclose(shadow.x, 2.0 * np.cos(sp.params), atol=1e-9)
    assert np.allclose(shadow.y, 2.0 * np.sin(sp.params), atol=1e-9)

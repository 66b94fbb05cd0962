"""Signatures, twistedness and winding numbers of loops.

The signature is the alternating sum of signs of the path values at its
flips; the circular version also counts a flip at the loop's basepoint.
A loop with a companion is twisted when the companion lift comes back
opposite to how it started; only untwisted loops have a well defined
winding number, which is checked against a direct planar winding count
of the shadow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .companion import canonical_form, unit_field, Shadow
from .errors import (
    AllRealLoop,
    HypothesisViolated,
    NotApplicable,
    NotLiftable,
    RefinementBudgetExceeded,
    StepTooLarge,
    TwistedLoop,
)
from .lifting import FALLBACK_SAMPLES, lift_path
from .obstruction import (
    BOUNCE,
    ENDPOINT_NOT_TAME,
    ENDPOINT_TAME,
    FLIP,
    NOT_TAME,
    SEMI_TAME,
    ObstructionReport,
    classify_interval,
    find_obstructions,
)
from .pathkit import (
    PathSpec,
    SampledPath,
    rotate_basepoint,
    sample_adaptive,
    sample_uniform,
)


def reduce_signs(signs) -> list:
    """Cancel adjacent equal pairs until the sequence alternates."""
    stack = []
    for s in signs:
        if stack and stack[-1] == s:
            stack.pop()
        else:
            stack.append(s)
    return stack


def alternating_sum(signs) -> int:
    """Sum of sign_l (-1)^l with l counted from one."""
    return sum(s * (-1) ** (l + 1) for l, s in enumerate(signs))


def _resolved_items(rep: ObstructionReport, directives=()):
    """Ordered (t, sign, kind, wrap) with run kinds resolved by directive."""
    items = []
    run_kind = {}
    for m, iv in enumerate(rep.intervals):
        d = directives[m] if m < len(directives) else None
        kind = classify_interval(iv, d)
        for r in iv.runs:
            run_kind[r.t0] = kind
    for c in rep.contacts:
        items.append((c.t, c.sign, c.kind, c.wrap))
    for r in rep.runs:
        items.append((r.t0, r.sign, run_kind.get(r.t0, BOUNCE), r.wrap))
    items.sort(key=lambda it: (it[3], it[0]))  # wrap item last
    return items


def flips_of(rep: ObstructionReport, directives=(), include_wrap=True):
    """Flip positions and signs in traversal order."""
    out = []
    for t, sign, kind, wrap in _resolved_items(rep, directives):
        if wrap and not include_wrap:
            continue
        if kind in (SEMI_TAME, NOT_TAME, ENDPOINT_NOT_TAME):
            raise HypothesisViolated(
                f"signature undefined: contact of kind {kind} at t={t}"
            )
        if kind == FLIP:
            out.append((t, sign, wrap))
    return out


def signature(rep: ObstructionReport, directives=()) -> int:
    """Alternating flip-sign sum, without any flip at the traversal end."""
    return alternating_sum([s for _t, s, _w in flips_of(rep, directives, False)])


def circular_signature(rep: ObstructionReport, directives=()) -> int:
    """Alternating flip-sign sum including a flip at the loop basepoint."""
    return alternating_sum([s for _t, s, _w in flips_of(rep, directives, True)])


def shadow_winding(shadow: Shadow) -> int:
    """Planar winding number of a closed shadow around the origin."""
    z = shadow.x + 1j * shadow.y
    if np.any(np.abs(z) == 0.0):
        raise HypothesisViolated("shadow passes through the origin")
    dphi = np.angle(z[1:] * np.conj(z[:-1]))
    if np.any(np.abs(dphi) >= math.pi - config.THETA_TOL):
        raise StepTooLarge("shadow rotates too fast between samples")
    total = float(np.sum(dphi)) / (2.0 * math.pi)
    w = round(total)
    if abs(total - w) > 1e-6:
        raise HypothesisViolated(
            f"shadow is not closed: winding residue {total - w:.3e}"
        )
    return int(w)


def _sample(spec: PathSpec, n0: int):
    try:
        return sample_adaptive(spec, n0), "adaptive"
    except RefinementBudgetExceeded:
        return sample_uniform(spec, FALLBACK_SAMPLES), "uniform_fallback"


@dataclass(frozen=True)
class WindingResult:
    twisted: bool | None
    signature: int | None
    circular_signature: int | None
    winding: int | None
    shadow_winding: int | None
    flips: tuple
    provenance: dict

    def to_json(self) -> dict:
        return {
            "twisted": self.twisted,
            "signature": self.signature,
            "circular_signature": self.circular_signature,
            "winding": self.winding,
            "shadow_winding": self.shadow_winding,
            "flips": [
                {"t": t, "sign": s, "wrap": w} for t, s, w in self.flips
            ],
            "provenance": self.provenance,
        }


def analyze_loop(
    spec: PathSpec, directives: tuple = (), n0: int = 64
) -> WindingResult:
    """Full loop analysis: signatures, twistedness, winding.

    Twistedness and the winding number are computed after re-rooting the
    loop at its sample farthest from the real axis, so that the
    companion lift starts and ends at an honest direction; signatures
    are reported in the loop's own parameterisation.
    """
    if not spec.closed:
        raise HypothesisViolated("winding analysis needs a closed path")
    sampled, sampling = _sample(spec, n0)
    rep = find_obstructions(sampled, spec)

    try:
        sig = signature(rep, directives)
        csig = circular_signature(rep, directives)
        flips = tuple(flips_of(rep, directives))
    except HypothesisViolated:
        sig = csig = None
        flips = ()

    prov = {
        "sampling": sampling,
        "directives": list(directives),
    }

    bad = (SEMI_TAME, NOT_TAME, ENDPOINT_NOT_TAME, ENDPOINT_TAME)
    companion_ok = all(c.kind not in bad for c in rep.contacts)
    im_norms = np.linalg.norm(sampled.values[:, 1:], axis=1)
    if float(np.max(im_norms)) <= config.EPS_REAL:
        raise AllRealLoop("loop lies in the real axis")
    if not companion_ok:
        return WindingResult(None, sig, csig, None, None, flips, prov)

    t_star = float(sampled.params[int(np.argmax(im_norms))])
    rot = rotate_basepoint(spec, t_star)
    rot_sampled, _ = _sample(rot, n0)
    rep_rot = find_obstructions(rot_sampled, rot)
    dir_rot = _transport_directives(spec, rep, directives, rot, rep_rot)
    units = unit_field(rot_sampled, rep_rot, dir_rot)
    twisted = float(np.dot(units[0], units[-1])) < 0.0
    prov["basepoint"] = t_star

    winding = sw = None
    if not twisted:
        shadow = canonical_form(rot_sampled, units)
        sw = shadow_winding(shadow)
        winding = abs(sw)
    return WindingResult(twisted, sig, csig, winding, sw, flips, prov)


def _transport_directives(spec, rep, directives, rot, rep_rot):
    """Re-key per-interval directives after re-rooting a loop."""
    if not directives:
        return ()
    period = spec.b - spec.a
    out = [None] * len(rep_rot.intervals)
    for m, iv in enumerate(rep.intervals):
        d = directives[m] if m < len(directives) else None
        if d is None:
            continue
        mid = 0.5 * (iv.t0 + iv.t1)
        if mid > spec.b:
            mid -= period
        mid_rot = mid if mid >= rot.a else mid + period
        for mm, ivr in enumerate(rep_rot.intervals):
            lo, hi = ivr.t0, ivr.t1
            if lo - 1e-9 <= mid_rot <= hi + 1e-9:
                out[mm] = d
                break
    return tuple(out)


def is_twisted(spec: PathSpec, directives: tuple = (), n0: int = 64) -> bool:
    """Whether the companion lift of a loop reverses over one traversal."""
    res = analyze_loop(spec, directives, n0)
    if res.twisted is None:
        raise HypothesisViolated("loop has no companion")
    return res.twisted


def winding_number(spec: PathSpec, directives: tuple = (), n0: int = 64) -> int:
    """Winding number of an untwisted loop; twisted loops raise."""
    res = analyze_loop(spec, directives, n0)
    if res.twisted is None:
        raise HypothesisViolated("loop has no companion")
    if res.twisted:
        raise TwistedLoop("winding number is undefined for a twisted loop")
    return res.winding


def branch_change_report(
    spec: PathSpec,
    basepoint: float,
    initial_unit=None,
    directives: tuple = (),
    n0: int = 64,
) -> int:
    """Net change of the argument over one traversal from a basepoint,
    in whole turns."""
    rot = rotate_basepoint(spec, basepoint)
    res = lift_path(rot, k0=0, initial_unit=initial_unit, directives=directives, n0=n0)
    if res.status != "ok":
        raise NotLiftable(res.t_fail, res.reason)
    change = (float(res.lift.arg[-1]) - float(res.lift.arg[0])) / (2.0 * math.pi)
    n = round(change)
    if abs(change - n) > 1e-6:
        raise HypothesisViolated(
            f"argument change {change!r} is not a whole number of turns"
        )
    return int(n)


def c_homotopy_equivalent(r1: WindingResult, r2: WindingResult) -> bool:
    """Whether two analyzed loops with companions can be deformed into
    each other together with their companions."""
    for r in (r1, r2):
        if r.twisted is None:
            raise NotApplicable("loop has no companion")
        if r.twisted:
            raise NotApplicable("twisted loops are out of scope here")
        if r.winding is None:
            raise NotApplicable("winding number unavailable")
    return r1.winding == r2.winding

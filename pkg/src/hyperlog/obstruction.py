"""Locating and classifying the contacts of a path with the real axis.

A sampled path is scanned for real values.  Isolated contacts become
Contact records with one-sided imaginary-direction limits; maximal real
sub-intervals become RealRun records.  Components of the path off the
axis whose flanking real values have opposite signs are the big arcs;
the gaps between consecutive big arcs are the axis intervals that drive
signatures and winding numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from . import config
from .errors import HypothesisViolated, ZeroOnPath
from .pathkit import PathSpec, SampledPath

FLIP = "flip"
BOUNCE = "bounce"
SEMI_TAME = "semi_tame"
NOT_TAME = "not_tame"
ENDPOINT_TAME = "endpoint_tame"
ENDPOINT_NOT_TAME = "endpoint_not_tame"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Contact:
    """An isolated parameter where the path value is real."""

    t: float
    value: float
    sign: int
    left_dir: tuple | None
    right_dir: tuple | None
    kind: str
    wrap: bool = False


@dataclass(frozen=True)
class RealRun:
    """A maximal positive-length parameter interval of real values.

    A run that wraps through the end of a closed path is stored with
    t1 > b; the piece beyond b is to be read modulo the period.
    """

    t0: float
    t1: float
    sign: int
    in_dir: tuple | None
    out_dir: tuple | None
    wrap: bool = False


@dataclass(frozen=True)
class AxisInterval:
    """A gap between consecutive big arcs, possibly of zero length."""

    t0: float
    t1: float
    sign: int
    in_dir: tuple | None
    out_dir: tuple | None
    kind: str
    non_unique: bool
    wrap: bool
    contacts: tuple
    runs: tuple


@dataclass(frozen=True)
class ObstructionReport:
    contacts: tuple
    runs: tuple
    big_arcs: tuple
    intervals: tuple
    tame: bool
    companion_unique: bool
    closed: bool


def _is_real_vec(v: np.ndarray) -> bool:
    return float(np.linalg.norm(v[1:])) <= config.eps_real_for(
        float(np.linalg.norm(v))
    )


def _unit(v: np.ndarray) -> np.ndarray:
    return v[1:] / np.linalg.norm(v[1:])


def one_sided_direction(
    spec: PathSpec, t: float, side: int, h0: float | None = None
) -> np.ndarray | None:
    """Limit of Im(gamma)/|Im(gamma)| as the parameter approaches t.

    side is +1 for the right limit and -1 for the left one.  The limit
    is chased along a halving sequence of offsets; it counts as found
    when three consecutive directions agree within the angle tolerance.
    Returns None when no limit emerges, as happens for directions that
    spin without settling.
    """
    span = spec.b - spec.a
    if h0 is None:
        h0 = 1e-3 * span
    lo, hi = spec.a, spec.b
    collected = []
    # the irrational scale keeps the probe offsets off resonances of
    # periodic direction fields, which a round dyadic ladder can hit
    h = h0 / math.sqrt(2.0)
    for _ in range(config.LIMIT_HALVINGS):
        tt = t + side * h
        h *= 0.5
        if tt < lo or tt > hi:
            continue
        v = spec.value(tt)
        if _is_real_vec(v):
            continue
        u = _unit(v)
        collected.append(u)
        if len(collected) >= 3:
            u1, u2, u3 = collected[-3], collected[-2], collected[-1]
            cos_tol = math.cos(config.THETA_TOL)
            if (
                float(np.dot(u1, u2)) >= cos_tol
                and float(np.dot(u2, u3)) >= cos_tol
                and float(np.dot(u1, u3)) >= cos_tol
            ):
                return u3
    return None


def classify_point(
    left_dir, right_dir, interior: bool = True, tol: float | None = None
) -> str:
    """Flip, bounce, semi-tame or not-tame from the two direction limits.

    For endpoint contacts of open paths only one side exists; those are
    endpoint_tame when the available limit exists.  The classification is
    symmetric in its two arguments.
    """
    if tol is None:
        tol = config.THETA_TOL
    if not interior:
        present = left_dir if left_dir is not None else right_dir
        return ENDPOINT_TAME if present is not None else ENDPOINT_NOT_TAME
    if left_dir is None or right_dir is None:
        return NOT_TAME
    d = float(np.dot(np.asarray(left_dir), np.asarray(right_dir)))
    if d >= math.cos(tol):
        return BOUNCE
    if d <= -math.cos(tol):
        return FLIP
    return SEMI_TAME


def classify_interval(interval: AxisInterval, directive: str | None = None) -> str:
    """Resolved kind of an axis interval.

    Positive-length intervals that contain real runs admit both a flip
    and a bounce continuation; the directive picks one, defaulting to
    bounce.
    """
    if interval.runs:
        if directive in (FLIP, BOUNCE):
            return directive
        if directive is not None:
            raise ValueError(f"unknown directive {directive!r}")
        return BOUNCE
    return interval.kind


def _bisect_real_edge(spec, t_real, t_nonreal, ptol):
    """Refine the boundary between real and non-real path values."""
    while abs(t_real - t_nonreal) > ptol:
        tm = 0.5 * (t_real + t_nonreal)
        if _is_real_vec(spec.value(tm)):
            t_real = tm
        else:
            t_nonreal = tm
    return t_real


def _localize_contact(spec, tl, tn, tr, ptol):
    """Pin down an isolated real contact inside (tl, tr), seeded at tn."""
    u_ref = _unit(spec.value(tn))

    def component(t):
        return float(np.dot(spec.value(t)[1:], u_ref))

    cl, cr = component(tl), component(tr)
    if cl * cr < 0:
        t_c = optimize.brentq(component, tl, tr, xtol=ptol)
    else:
        res = optimize.minimize_scalar(
            lambda t: float(np.linalg.norm(spec.value(t)[1:])),
            bounds=(tl, tr),
            method="bounded",
            options={"xatol": ptol},
        )
        t_c = float(res.x)
    v = spec.value(t_c)
    if float(np.linalg.norm(v[1:])) <= config.eps_real_for(float(np.linalg.norm(v))):
        return t_c
    return None


def _sign_of(x: float) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    raise ZeroOnPath("real contact with value zero")


def find_obstructions(sampled: SampledPath, spec: PathSpec) -> ObstructionReport:
    """Build the full obstruction report for a sampled path."""
    span = spec.b - spec.a
    ptol = 1e-12 * max(1.0, span)
    run_min = 1e-5 * span

    ts = sampled.params
    vals = sampled.values
    mags = np.linalg.norm(vals, axis=1)
    if np.any(mags <= config.EPS_REAL):
        raise ZeroOnPath("path passes through zero")
    ims = np.linalg.norm(vals[:, 1:], axis=1)
    real_flags = ims <= config.EPS_REAL * np.maximum(1.0, mags)

    n = len(ts)

    # --- raw real items from runs of real samples -------------------------
    items = []  # ("contact", t, value) or ("run", t0, t1, value)
    idx = 0
    while idx < n:
        if not real_flags[idx]:
            idx += 1
            continue
        j = idx
        while j + 1 < n and real_flags[j + 1]:
            j += 1
        t_lo = ts[idx]
        t_hi = ts[j]
        if idx > 0:
            t_lo = _bisect_real_edge(spec, ts[idx], ts[idx - 1], ptol)
        if j + 1 < n:
            t_hi = _bisect_real_edge(spec, ts[j], ts[j + 1], ptol)
        if t_hi - t_lo > run_min:
            items.append(("run", float(t_lo), float(t_hi)))
        else:
            t_c = 0.5 * (t_lo + t_hi)
            items.append(("contact", float(t_c), float(t_c)))
        idx = j + 1

    # --- contacts the grid only bracketed ---------------------------------
    known = [it[1] for it in items]
    for m in range(1, n - 1):
        if real_flags[m - 1] or real_flags[m] or real_flags[m + 1]:
            continue
        if not (ims[m] <= ims[m - 1] and ims[m] <= ims[m + 1]):
            continue
        if ims[m] > 1e-3 * max(1.0, mags[m]):
            continue
        t_c = _localize_contact(spec, ts[m - 1], ts[m], ts[m + 1], ptol)
        if t_c is None:
            continue
        if any(abs(t_c - tk) < 10 * run_min for tk in known):
            continue
        items.append(("contact", t_c, t_c))
        known.append(t_c)
    items.sort(key=lambda it: it[1])

    # --- wrap merging for closed paths ------------------------------------
    edge_tol = max(10 * ptol, 1e-9 * span)
    wrap_item = None
    if spec.closed and items:
        first, last = items[0], items[-1]
        starts_at_a = first[1] - spec.a <= edge_tol
        ends_at_b = (
            last[2] if last[0] == "run" else last[1]
        ) >= spec.b - edge_tol
        if starts_at_a and ends_at_b:
            if first is last:
                # a single run covering the whole domain: the loop is real
                pass
            else:
                items = items[1:-1]
                lo = last[1] if last[0] == "run" else last[1]
                hi_a_side = first[2] if first[0] == "run" else first[1]
                length = (spec.b - lo) + (hi_a_side - spec.a)
                if length > run_min:
                    wrap_item = ("run", float(lo), float(spec.b + (hi_a_side - spec.a)))
                else:
                    wrap_item = ("contact", float(spec.a), float(spec.a))
        elif starts_at_a and not ends_at_b:
            # re-tag the contact at a as the wrap contact
            if first[0] == "contact":
                items = items[1:]
                wrap_item = ("contact", float(first[1]), float(first[1]))
        elif ends_at_b and not starts_at_a:
            if last[0] == "contact":
                items = items[:-1]
                wrap_item = ("contact", float(spec.a), float(spec.a))

    # --- direction limits and classification ------------------------------
    def gap_to_prev(t):
        prev = [it for it in items if it[1] < t - edge_tol]
        if not prev:
            return math.inf
        p = prev[-1]
        return t - (p[2] if p[0] == "run" else p[1])

    def h0_for(t):
        others = [
            abs(t - it[1]) for it in items if abs(t - it[1]) > edge_tol
        ] + [
            abs(t - it[2]) for it in items if it[0] == "run" and abs(t - it[2]) > edge_tol
        ]
        nearest = min(others) if others else math.inf
        return min(1e-3 * span, nearest / 2.0) if math.isfinite(nearest) else 1e-3 * span

    def dir_at(t, side):
        u = one_sided_direction(spec, t, side, h0_for(t))
        return tuple(float(x) for x in u) if u is not None else None

    contacts = []
    runs = []
    for it in items:
        if it[0] == "contact":
            t_c = it[1]
            value = float(spec.value(t_c)[0])
            # a contact's real stretch is shorter than run_min, so its
            # localized parameter sits within run_min of a domain edge
            # whenever the stretch touches that edge
            at_a = t_c - spec.a <= run_min
            at_b = spec.b - t_c <= run_min
            left = None if at_a else dir_at(t_c, -1)
            right = None if at_b else dir_at(t_c, +1)
            interior = not (at_a or at_b) or spec.closed
            kind = classify_point(left, right, interior)
            contacts.append(
                Contact(t_c, value, _sign_of(value), left, right, kind)
            )
        else:
            t0, t1 = it[1], it[2]
            value = float(spec.value(0.5 * (t0 + t1))[0])
            in_dir = dir_at(t0, -1) if t0 - spec.a > edge_tol else None
            out_dir = dir_at(t1, +1) if spec.b - t1 > edge_tol else None
            runs.append(RealRun(t0, t1, _sign_of(value), in_dir, out_dir))

    if wrap_item is not None:
        if wrap_item[0] == "contact":
            value = float(spec.value(spec.a)[0])
            left = dir_at(spec.b, -1)
            right = dir_at(spec.a, +1)
            kind = classify_point(left, right, True)
            contacts.append(
                Contact(spec.a, value, _sign_of(value), left, right, kind, wrap=True)
            )
        else:
            t0, t1 = wrap_item[1], wrap_item[2]
            value = float(spec.value(min(0.5 * (t0 + spec.b), spec.b))[0])
            out_param = spec.a + (t1 - spec.b)
            in_dir = dir_at(t0, -1)
            out_dir = dir_at(out_param, +1)
            runs.append(RealRun(t0, t1, _sign_of(value), in_dir, out_dir, wrap=True))

    # --- big arcs ----------------------------------------------------------
    # ordered boundary list: (parameter, real value or None at domain ends)
    bounds = []
    for c in contacts:
        if not c.wrap:
            bounds.append((c.t, c.t, c.value))
    for r in runs:
        if not r.wrap:
            bounds.append((r.t0, r.t1, float(spec.value(0.5 * (r.t0 + min(r.t1, spec.b)))[0])))
    bounds.sort(key=lambda x: x[0])

    wrap_contact = next((c for c in contacts if c.wrap), None)
    wrap_run = next((r for r in runs if r.wrap), None)

    arcs = []  # (t_start, t_end, left_value|None, right_value|None)
    cursor = spec.a
    left_value = None
    if wrap_contact is not None:
        left_value = wrap_contact.value
    if wrap_run is not None:
        cursor = spec.a + (wrap_run.t1 - spec.b)
        left_value = float(spec.value(min(wrap_run.t0 + edge_tol, spec.b))[0])
    for t0, t1, value in bounds:
        if t0 - cursor > edge_tol:
            arcs.append((cursor, t0, left_value, value))
        cursor = t1
        left_value = value
    end = spec.b if (wrap_run is None) else wrap_run.t0
    if end - cursor > edge_tol:
        right_value = None
        if wrap_contact is not None:
            right_value = wrap_contact.value
        if wrap_run is not None:
            right_value = float(spec.value(max(wrap_run.t0 - edge_tol, spec.a))[0])
        arcs.append((cursor, end, left_value, right_value))

    if (
        spec.closed
        and wrap_contact is None
        and wrap_run is None
        and len(arcs) >= 2
        and arcs[0][0] <= spec.a + edge_tol
        and arcs[-1][1] >= spec.b - edge_tol
    ):
        first, last = arcs[0], arcs[-1]
        arcs = arcs[1:-1]
        arcs.append((last[0], spec.b + (first[1] - spec.a), last[2], first[3]))

    big_arcs = tuple(
        (a0, a1)
        for a0, a1, lv, rv in arcs
        if lv is not None and rv is not None and lv * rv < 0
    )

    # --- axis intervals between consecutive big arcs -----------------------
    def norm_param(t):
        if spec.closed and t > spec.b:
            return spec.a + (t - spec.b)
        return t

    period = spec.b - spec.a

    def in_gap(t, g0, g1):
        for tt in (t, t + period, t - period):
            if g0 - edge_tol <= tt <= g1 + edge_tol:
                return True
        return False

    intervals = []
    if big_arcs:
        pairs = list(zip(big_arcs, big_arcs[1:]))
        if spec.closed:
            pairs.append((big_arcs[-1], big_arcs[0]))
        for (a0, a1), (b0, b1) in pairs:
            g0 = norm_param(a1)
            g1 = b0 if b0 >= g0 - edge_tol else spec.b + (b0 - spec.a)
            wrap = g1 > spec.b + edge_tol or any(
                r.wrap for r in runs if in_gap(r.t0, g0, g1)
            ) or any(c.wrap for c in contacts if in_gap(c.t, g0, g1))
            inner_contacts = tuple(
                c for c in contacts if in_gap(c.t, g0, g1)
            )
            inner_runs = tuple(r for r in runs if in_gap(r.t0, g0, g1))
            if inner_contacts:
                sign = inner_contacts[0].sign
            elif inner_runs:
                sign = inner_runs[0].sign
            else:
                raise HypothesisViolated("axis interval without real contact")
            kinds = [c.kind for c in inner_contacts]
            if inner_runs:
                kind = UNRESOLVED
            elif any(k in (SEMI_TAME, NOT_TAME, ENDPOINT_NOT_TAME) for k in kinds):
                kind = UNRESOLVED
            else:
                flips = sum(1 for k in kinds if k == FLIP)
                kind = FLIP if flips % 2 == 1 else BOUNCE
            if inner_runs:
                in_dir = inner_runs[0].in_dir
                out_dir = inner_runs[-1].out_dir
            else:
                in_dir = inner_contacts[0].left_dir
                out_dir = inner_contacts[-1].right_dir
            intervals.append(
                AxisInterval(
                    g0, g1, sign, in_dir, out_dir, kind,
                    bool(inner_runs), wrap, inner_contacts, inner_runs,
                )
            )
        # keep the wrap interval last
        intervals.sort(key=lambda iv: (iv.wrap, iv.t0))

    bad_kinds = (SEMI_TAME, NOT_TAME, ENDPOINT_NOT_TAME)
    tame = not runs and all(c.kind not in bad_kinds for c in contacts)
    return ObstructionReport(
        contacts=tuple(contacts),
        runs=tuple(runs),
        big_arcs=big_arcs,
        intervals=tuple(intervals),
        tame=tame,
        companion_unique=not runs,
        closed=spec.closed,
    )


def report_to_json(rep: ObstructionReport) -> dict:
    def d(u):
        return list(u) if u is not None else None

    return {
        "closed": rep.closed,
        "tame": rep.tame,
        "companion_unique": rep.companion_unique,
        "contacts": [
            {
                "t": c.t,
                "value": c.value,
                "sign": c.sign,
                "left_dir": d(c.left_dir),
                "right_dir": d(c.right_dir),
                "kind": c.kind,
                "wrap": c.wrap,
            }
            for c in rep.contacts
        ],
        "runs": [
            {
                "t0": r.t0,
                "t1": r.t1,
                "sign": r.sign,
                "in_dir": d(r.in_dir),
                "out_dir": d(r.out_dir),
                "wrap": r.wrap,
            }
            for r in rep.runs
        ],
        "big_arcs": [list(a) for a in rep.big_arcs],
        "intervals": [
            {
                "t0": iv.t0,
                "t1": iv.t1,
                "sign": iv.sign,
                "kind": iv.kind,
                "non_unique": iv.non_unique,
                "wrap": iv.wrap,
            }
            for iv in rep.intervals
        ],
    }

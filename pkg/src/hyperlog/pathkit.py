"""Piecewise path descriptions, path algebra, sampling, and file formats.

A path is a list of contiguous segments over a shared parameter interval.
Every segment evaluates as a function of the global parameter t, using the
anchors it was built with, so restricting a segment to a sub-interval never
changes its values.  Shifts and reversals are expressed with a lightweight
reparameterisation wrapper instead of per-kind rewriting.
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from . import config
from .algebra import Hyper
from .errors import (
    EndpointMismatch,
    OutOfDomain,
    RefinementBudgetExceeded,
    ZeroOnPath,
)


def _vec(x, dim=4) -> np.ndarray:
    if isinstance(x, Hyper):
        return x.coeffs.copy()
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        out = np.zeros(dim)
        out[0] = float(a)
        return out
    return a.copy()


# ---------------------------------------------------------------------------
# scalar coordinate functions for in-slice curves


@dataclass(frozen=True)
class PolyFn:
    """Polynomial in the global parameter, highest coefficient first."""

    coeffs: tuple

    def __call__(self, t):
        return np.polyval(np.asarray(self.coeffs), t)

    def to_json(self):
        return {"kind": "poly", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class TrigFn:
    """a0 + sum a_m cos(m t) + b_m sin(m t) with integer frequencies."""

    a0: float
    cos_terms: tuple  # pairs (m, amplitude)
    sin_terms: tuple

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, self.a0)
        for m, a in self.cos_terms:
            out = out + a * np.cos(m * t)
        for m, b in self.sin_terms:
            out = out + b * np.sin(m * t)
        return out

    def to_json(self):
        return {
            "kind": "trig",
            "a0": self.a0,
            "cos": [list(p) for p in self.cos_terms],
            "sin": [list(p) for p in self.sin_terms],
        }


def _fn_from_json(d):
    if d["kind"] == "poly":
        return PolyFn(tuple(float(c) for c in d["coeffs"]))
    if d["kind"] == "trig":
        return TrigFn(
            float(d["a0"]),
            tuple((int(m), float(a)) for m, a in d["cos"]),
            tuple((int(m), float(a)) for m, a in d["sin"]),
        )
    raise ValueError(f"unknown coordinate function kind {d['kind']!r}")


# ---------------------------------------------------------------------------
# segments


@dataclass(frozen=True)
class SliceArc:
    """center + radius (cos th + unit sin th), th affine over the anchors."""

    ta: float
    tb: float
    unit: tuple
    angle_a: float
    angle_b: float
    center: float = 0.0
    radius: float = 1.0
    anchor_a: float = None
    anchor_b: float = None

    def __post_init__(self):
        if self.anchor_a is None:
            object.__setattr__(self, "anchor_a", self.ta)
            object.__setattr__(self, "anchor_b", self.tb)

    @property
    def dim(self):
        return len(self.unit)

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        s = (ts - self.anchor_a) / (self.anchor_b - self.anchor_a)
        th = self.angle_a + s * (self.angle_b - self.angle_a)
        out = np.outer(self.radius * np.sin(th), np.asarray(self.unit))
        out[:, 0] += self.center + self.radius * np.cos(th)
        return out


@dataclass(frozen=True)
class Arc:
    """center + drift s + cos_vec cos th + sin_vec sin th.

    th runs affinely over the anchors and s is the anchor-relative
    fraction in [0, 1]; the drift term covers spirals such as the
    slowly sinking meridian curves.
    """

    ta: float
    tb: float
    center: tuple
    cos_vec: tuple
    sin_vec: tuple
    angle_a: float
    angle_b: float
    drift: tuple = None
    anchor_a: float = None
    anchor_b: float = None

    def __post_init__(self):
        if self.anchor_a is None:
            object.__setattr__(self, "anchor_a", self.ta)
            object.__setattr__(self, "anchor_b", self.tb)
        if self.drift is None:
            object.__setattr__(self, "drift", tuple(0.0 for _ in self.center))

    @property
    def dim(self):
        return len(self.center)

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        s = (ts - self.anchor_a) / (self.anchor_b - self.anchor_a)
        th = self.angle_a + s * (self.angle_b - self.angle_a)
        out = np.outer(np.cos(th), np.asarray(self.cos_vec))
        out += np.outer(np.sin(th), np.asarray(self.sin_vec))
        out += np.outer(s, np.asarray(self.drift))
        out += np.asarray(self.center)
        return out


@dataclass(frozen=True)
class Line:
    """Straight segment from p0 (at anchor_a) to p1 (at anchor_b)."""

    ta: float
    tb: float
    p0: tuple
    p1: tuple
    anchor_a: float = None
    anchor_b: float = None

    def __post_init__(self):
        if self.anchor_a is None:
            object.__setattr__(self, "anchor_a", self.ta)
            object.__setattr__(self, "anchor_b", self.tb)

    @property
    def dim(self):
        return len(self.p0)

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        s = (ts - self.anchor_a) / (self.anchor_b - self.anchor_a)
        p0 = np.asarray(self.p0)
        p1 = np.asarray(self.p1)
        return np.outer(1.0 - s, p0) + np.outer(s, p1)


@dataclass(frozen=True)
class SliceCurve:
    """x(t) + unit y(t) with scalar coordinate functions in a fixed slice."""

    ta: float
    tb: float
    unit: tuple
    x_fn: object
    y_fn: object

    @property
    def dim(self):
        return len(self.unit)

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        x = np.asarray(self.x_fn(ts), dtype=float)
        y = np.asarray(self.y_fn(ts), dtype=float)
        out = np.outer(y, np.asarray(self.unit))
        out[:, 0] += x
        return out


@dataclass(frozen=True)
class Samples:
    """Piecewise-linear interpolation through given sample values."""

    ta: float
    tb: float
    ts: tuple
    points: tuple  # rows of coefficient vectors

    @property
    def dim(self):
        return len(self.points[0])

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        grid = np.asarray(self.ts)
        pts = np.asarray(self.points)
        out = np.empty((ts.shape[0], pts.shape[1]))
        for c in range(pts.shape[1]):
            out[:, c] = np.interp(ts, grid, pts[:, c])
        return out


@dataclass(frozen=True)
class Rocket:
    """cos(pi - 2 pi s) + s(1-s)(i cos(2 pi / s) + j sin(2 pi / s)).

    s is the anchor-relative fraction; the imaginary direction spins
    without limit as s -> 0+, which is the standard example of a contact
    with the real axis that has no one-sided direction.
    """

    ta: float
    tb: float
    anchor_a: float = None
    anchor_b: float = None

    def __post_init__(self):
        if self.anchor_a is None:
            object.__setattr__(self, "anchor_a", self.ta)
            object.__setattr__(self, "anchor_b", self.tb)

    @property
    def dim(self):
        return 4

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        s = (ts - self.anchor_a) / (self.anchor_b - self.anchor_a)
        out = np.zeros((s.shape[0], 4))
        out[:, 0] = np.cos(math.pi - 2.0 * math.pi * s)
        amp = s * (1.0 - s)
        with np.errstate(divide="ignore", invalid="ignore"):
            phase = np.where(s > 0.0, 2.0 * math.pi / np.where(s > 0.0, s, 1.0), 0.0)
        out[:, 1] = amp * np.cos(phase)
        out[:, 2] = amp * np.sin(phase)
        return out


@dataclass(frozen=True)
class NegConj:
    """The reflection t -> -conj(gamma(t)) of an inner segment."""

    ta: float
    tb: float
    inner: object

    @property
    def dim(self):
        return self.inner.dim

    def values(self, ts):
        v = self.inner.values(ts)
        out = v.copy()
        out[:, 0] = -out[:, 0]
        return out


@dataclass(frozen=True)
class Reparam:
    """Evaluate the inner segment at alpha t + beta."""

    ta: float
    tb: float
    inner: object
    alpha: float
    beta: float

    @property
    def dim(self):
        return self.inner.dim

    def values(self, ts):
        ts = np.asarray(ts, dtype=float)
        return self.inner.values(self.alpha * ts + self.beta)


def _reparam(seg, alpha, beta, ta, tb):
    """Wrap a segment, flattening nested reparameterisations."""
    if isinstance(seg, Reparam):
        return Reparam(
            ta, tb, seg.inner, seg.alpha * alpha, seg.alpha * beta + seg.beta
        )
    return Reparam(ta, tb, seg, alpha, beta)


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class PathSpec:
    """A contiguous piecewise path on [a, b], possibly closed."""

    a: float
    b: float
    segments: tuple
    closed: bool = False

    def __post_init__(self):
        if not self.segments:
            raise ValueError("a path needs at least one segment")
        span = self.b - self.a
        if span <= 0:
            raise ValueError("domain must have positive length")
        tol = 1e-9 * max(1.0, span)
        segs = self.segments
        if abs(segs[0].ta - self.a) > tol or abs(segs[-1].tb - self.b) > tol:
            raise EndpointMismatch("segments do not cover the domain")
        for left, right in zip(segs, segs[1:]):
            if abs(left.tb - right.ta) > tol:
                raise EndpointMismatch("segments are not contiguous")
            vl = left.values(np.array([left.tb]))[0]
            vr = right.values(np.array([right.ta]))[0]
            scale = max(1.0, float(np.linalg.norm(vl)))
            if float(np.linalg.norm(vl - vr)) > 1e-9 * scale:
                raise EndpointMismatch("segments do not join continuously")
        if self.closed:
            va = segs[0].values(np.array([self.a]))[0]
            vb = segs[-1].values(np.array([self.b]))[0]
            scale = max(1.0, float(np.linalg.norm(va)))
            if float(np.linalg.norm(va - vb)) > 1e-9 * scale:
                raise EndpointMismatch("closed path does not return to its start")

    @property
    def dim(self):
        return self.segments[0].dim

    def _segment_for(self, t: float):
        starts = [s.ta for s in self.segments]
        n = bisect.bisect_right(starts, t) - 1
        n = min(max(n, 0), len(self.segments) - 1)
        return self.segments[n]

    def value(self, t: float) -> np.ndarray:
        tol = 1e-12 * max(1.0, self.b - self.a)
        if t < self.a - tol or t > self.b + tol:
            raise OutOfDomain(f"t={t} outside [{self.a}, {self.b}]")
        t = min(max(t, self.a), self.b)
        return self._segment_for(t).values(np.array([t]))[0]

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.empty((ts.shape[0], self.dim))
        for n, t in enumerate(ts):
            out[n] = self.value(float(t))
        return out

    def evaluate(self, t: float) -> Hyper:
        return Hyper(self.value(t))


def evaluate(path: PathSpec, t: float) -> Hyper:
    return path.evaluate(t)


def concat(p1: PathSpec, p2: PathSpec, closed: bool = False) -> PathSpec:
    """Join p2 after p1, shifting its parameter interval to start at p1.b."""
    v1 = p1.value(p1.b)
    v2 = p2.value(p2.a)
    if float(np.linalg.norm(v1 - v2)) > 1e-9 * max(1.0, float(np.linalg.norm(v1))):
        raise EndpointMismatch("paths do not join: endpoint values differ")
    offset = p1.b - p2.a
    segs = list(p1.segments)
    for s in p2.segments:
        segs.append(_reparam(s, 1.0, -offset, s.ta + offset, s.tb + offset))
    return PathSpec(p1.a, p1.b + (p2.b - p2.a), tuple(segs), closed)


def reverse(p: PathSpec) -> PathSpec:
    """The same trace walked backwards, over the same parameter interval."""
    c = p.a + p.b
    segs = tuple(
        _reparam(s, -1.0, c, c - s.tb, c - s.ta) for s in reversed(p.segments)
    )
    return PathSpec(p.a, p.b, segs, p.closed)


def repeat(p: PathSpec, m: int) -> PathSpec:
    """m copies of a closed path laid end to end."""
    if not p.closed:
        raise EndpointMismatch("only closed paths can be repeated")
    if m < 1:
        raise ValueError("repeat count must be positive")
    out = replace(p, closed=False)
    one = replace(p, closed=False)
    for _ in range(m - 1):
        out = concat(out, one)
    return replace(out, closed=True)


def reflect_negconj(p: PathSpec) -> PathSpec:
    """Apply q -> -conj(q) to every value of the path."""
    segs = []
    for s in p.segments:
        if isinstance(s, NegConj):
            segs.append(s.inner)
        else:
            segs.append(NegConj(s.ta, s.tb, s))
    return replace(p, segments=tuple(segs))


def subpath(p: PathSpec, t0: float, t1: float) -> PathSpec:
    """Restriction of the path to [t0, t1]."""
    span = p.b - p.a
    tol = 1e-12 * max(1.0, span)
    if t0 < p.a - tol or t1 > p.b + tol or t1 - t0 <= tol:
        raise OutOfDomain("subpath bounds outside the domain")
    segs = []
    for s in p.segments:
        lo = max(s.ta, t0)
        hi = min(s.tb, t1)
        if hi - lo > tol:
            segs.append(replace(s, ta=lo, tb=hi))
    return PathSpec(t0, t1, tuple(segs), False)


def rotate_basepoint(p: PathSpec, t_star: float) -> PathSpec:
    """Re-root a closed path at parameter t_star, keeping its orientation."""
    if not p.closed:
        raise EndpointMismatch("only closed paths can be re-rooted")
    tol = 1e-12 * max(1.0, p.b - p.a)
    if abs(t_star - p.a) <= tol or abs(t_star - p.b) <= tol:
        return p
    tail = subpath(p, t_star, p.b)
    head = subpath(p, p.a, t_star)
    return concat(tail, head, closed=True)


# ---------------------------------------------------------------------------
# JSON format


_SEGMENT_KINDS = {}


def _register(kind, cls, to_json, from_json):
    _SEGMENT_KINDS[kind] = (cls, to_json, from_json)


def _common(seg):
    return {"ta": seg.ta, "tb": seg.tb}


def segment_to_json(seg) -> dict:
    for kind, (cls, enc, _dec) in _SEGMENT_KINDS.items():
        if type(seg) is cls:
            d = {"kind": kind}
            d.update(_common(seg))
            d.update(enc(seg))
            return d
    raise ValueError(f"unserialisable segment type {type(seg).__name__}")


def segment_from_json(d: dict):
    kind = d["kind"]
    if kind not in _SEGMENT_KINDS:
        raise ValueError(f"unknown segment kind {kind!r}")
    _cls, _enc, dec = _SEGMENT_KINDS[kind]
    return dec(d)


_register(
    "slice_arc",
    SliceArc,
    lambda s: {
        "unit": list(s.unit),
        "angle_a": s.angle_a,
        "angle_b": s.angle_b,
        "center": s.center,
        "radius": s.radius,
        "anchor_a": s.anchor_a,
        "anchor_b": s.anchor_b,
    },
    lambda d: SliceArc(
        d["ta"], d["tb"], tuple(d["unit"]), d["angle_a"], d["angle_b"],
        d.get("center", 0.0), d.get("radius", 1.0),
        d.get("anchor_a"), d.get("anchor_b"),
    ),
)
_register(
    "arc",
    Arc,
    lambda s: {
        "center": list(s.center),
        "cos_vec": list(s.cos_vec),
        "sin_vec": list(s.sin_vec),
        "angle_a": s.angle_a,
        "angle_b": s.angle_b,
        "drift": list(s.drift),
        "anchor_a": s.anchor_a,
        "anchor_b": s.anchor_b,
    },
    lambda d: Arc(
        d["ta"], d["tb"], tuple(d["center"]), tuple(d["cos_vec"]),
        tuple(d["sin_vec"]), d["angle_a"], d["angle_b"],
        tuple(d["drift"]) if d.get("drift") is not None else None,
        d.get("anchor_a"), d.get("anchor_b"),
    ),
)
_register(
    "line",
    Line,
    lambda s: {
        "p0": list(s.p0),
        "p1": list(s.p1),
        "anchor_a": s.anchor_a,
        "anchor_b": s.anchor_b,
    },
    lambda d: Line(
        d["ta"], d["tb"], tuple(d["p0"]), tuple(d["p1"]),
        d.get("anchor_a"), d.get("anchor_b"),
    ),
)
_register(
    "slice_curve",
    SliceCurve,
    lambda s: {
        "unit": list(s.unit),
        "x_fn": s.x_fn.to_json(),
        "y_fn": s.y_fn.to_json(),
    },
    lambda d: SliceCurve(
        d["ta"], d["tb"], tuple(d["unit"]),
        _fn_from_json(d["x_fn"]), _fn_from_json(d["y_fn"]),
    ),
)
_register(
    "samples",
    Samples,
    lambda s: {"ts": list(s.ts), "points": [list(p) for p in s.points]},
    lambda d: Samples(
        d["ta"], d["tb"], tuple(d["ts"]), tuple(tuple(p) for p in d["points"])
    ),
)
_register(
    "rocket",
    Rocket,
    lambda s: {"anchor_a": s.anchor_a, "anchor_b": s.anchor_b},
    lambda d: Rocket(d["ta"], d["tb"], d.get("anchor_a"), d.get("anchor_b")),
)
_register(
    "negconj",
    NegConj,
    lambda s: {"inner": segment_to_json(s.inner)},
    lambda d: NegConj(d["ta"], d["tb"], segment_from_json(d["inner"])),
)
_register(
    "reparam",
    Reparam,
    lambda s: {
        "inner": segment_to_json(s.inner),
        "alpha": s.alpha,
        "beta": s.beta,
    },
    lambda d: Reparam(
        d["ta"], d["tb"], segment_from_json(d["inner"]), d["alpha"], d["beta"]
    ),
)


def path_to_json(p: PathSpec) -> dict:
    return {
        "domain": [p.a, p.b],
        "closed": p.closed,
        "segments": [segment_to_json(s) for s in p.segments],
    }


def path_from_json(d: dict) -> PathSpec:
    a, b = d["domain"]
    return PathSpec(
        float(a),
        float(b),
        tuple(segment_from_json(s) for s in d["segments"]),
        bool(d.get("closed", False)),
    )


def path_to_json_str(p: PathSpec) -> str:
    return json.dumps(path_to_json(p), indent=2, sort_keys=True)


def path_from_json_str(s: str) -> PathSpec:
    return path_from_json(json.loads(s))


# ---------------------------------------------------------------------------
# sampling


@dataclass(frozen=True)
class SampledPath:
    """Parameter grid and path values; values[n] is never zero."""

    params: np.ndarray
    values: np.ndarray

    @property
    def dim(self):
        return self.values.shape[1]

    def hyper(self, n: int) -> Hyper:
        return Hyper(self.values[n])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["t", "re"] + [f"im{c}" for c in range(1, self.dim)]
        w.writerow(header)
        for t, row in zip(self.params, self.values):
            w.writerow([repr(float(t))] + [repr(float(x)) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SampledPath":
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array([[float(x) for x in r] for r in rows[1:]])
        return cls(data[:, 0], data[:, 1:])


def sample_uniform(spec: PathSpec, n: int) -> SampledPath:
    ts = np.linspace(spec.a, spec.b, n)
    vals = spec.values(ts)
    mags = np.linalg.norm(vals, axis=1)
    if np.any(mags <= config.EPS_REAL):
        raise ZeroOnPath("path passes through zero")
    return SampledPath(ts, vals)


def sample_adaptive(spec: PathSpec, n0: int = 64) -> SampledPath:
    """Refine a uniform grid until the path is geometrically resolved.

    An interval is split while the imaginary direction rotates more than
    the step tolerance, the modulus changes by more than ten percent, or
    the interval looks like it brackets a contact with the real axis and
    is still longer than a millionth of the domain.  Exceeding the depth
    budget raises, carrying the partial samples and the offending
    brackets, which is the designed failure mode for paths whose
    direction oscillates without limit near the axis.
    """
    span = spec.b - spec.a
    h_cross = span * 1e-6
    h_floor = span * 2.0 ** -40
    cos_step = math.cos(config.THETA_STEP)

    cache: dict[float, np.ndarray] = {}

    def val(t: float) -> np.ndarray:
        v = cache.get(t)
        if v is None:
            v = spec.value(t)
            if float(np.linalg.norm(v)) <= config.EPS_REAL:
                raise ZeroOnPath(f"path value vanishes near t={t}")
            cache[t] = v
        return v

    def is_real(v: np.ndarray) -> bool:
        return float(np.linalg.norm(v[1:])) <= config.eps_real_for(
            float(np.linalg.norm(v))
        )

    def needs_split(tl, tm, tr):
        vl, vm, vr = val(tl), val(tm), val(tr)
        rl, rm, rr = is_real(vl), is_real(vm), is_real(vr)
        length = tr - tl
        if rl and rm and rr:
            return False, False
        iml = float(np.linalg.norm(vl[1:]))
        imm = float(np.linalg.norm(vm[1:]))
        imr = float(np.linalg.norm(vr[1:]))
        if rl or rm or rr or imm < 0.3 * min(iml, imr):
            return length > h_cross, True
        mags = [float(np.linalg.norm(v)) for v in (vl, vm, vr)]
        if max(mags) / min(mags) > 1.1:
            return True, False
        ul = vl[1:] / iml
        um = vm[1:] / imm
        ur = vr[1:] / imr
        # compare both halves: an endpoint-only test can alias against
        # direction fields that rotate through full turns between nodes
        d1 = float(np.dot(ul, um))
        d2 = float(np.dot(um, ur))
        if min(abs(d1), abs(d2)) >= cos_step:
            if d1 < 0.0 and d2 < 0.0:
                return True, False
            if d1 < 0.0 or d2 < 0.0:
                # a clean reversal of the direction is an axis crossing,
                # not rotation; refine it only down to the crossing scale
                return length > h_cross, True
            return False, False
        return True, False

    ts_out = [spec.a]
    unresolved = []
    grid = np.linspace(spec.a, spec.b, n0 + 1)
    stack = [
        (float(grid[n]), float(grid[n + 1]), 0)
        for n in range(n0 - 1, -1, -1)
    ]
    max_unresolved = 32
    while stack:
        tl, tr, depth = stack.pop()
        tm = 0.5 * (tl + tr)
        if tr - tl <= h_floor or len(unresolved) >= max_unresolved:
            ts_out.append(tr)
            continue
        split, _crossing = needs_split(tl, tm, tr)
        if not split:
            ts_out.append(tr)
            continue
        if depth >= config.D_MAX:
            unresolved.append((tl, tr))
            ts_out.append(tr)
            continue
        stack.append((tm, tr, depth + 1))
        stack.append((tl, tm, depth + 1))

    ts = np.array(ts_out)
    vals = np.array([val(t) for t in ts])
    sampled = SampledPath(ts, vals)
    if unresolved:
        raise RefinementBudgetExceeded(
            f"refinement budget exhausted on {len(unresolved)} bracket(s), "
            f"first near t={unresolved[0][0]!r}",
            sampled=sampled,
            unresolved=unresolved,
        )
    return sampled

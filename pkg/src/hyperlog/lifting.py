"""Continuous logarithms along paths.

A lift is built from a continuous unit field U along the path: read
off the planar curve
z = x + i y with y the component of the imaginary part along U, unwrap
the argument of z, and assemble log|gamma| + U arg.  Flips, bounces and
real runs all come out of the unit-field propagation; the branch index
on each piece is recovered as floor(arg / pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import config
from .companion import unit_field
from .errors import (
    HypothesisViolated,
    InitialMismatch,
    MissingInitialUnit,
    RefinementBudgetExceeded,
    StepTooLarge,
)
from .obstruction import (
    ENDPOINT_NOT_TAME,
    FLIP,
    NOT_TAME,
    SEMI_TAME,
    ObstructionReport,
    classify_interval,
    find_obstructions,
)
from .pathkit import PathSpec, SampledPath, sample_adaptive, sample_uniform

FALLBACK_SAMPLES = 4097


@dataclass(frozen=True)
class LogLift:
    """Sampled continuous logarithm of a path.

    values[n] = log|gamma| + units[n] * arg[n]; branch_trace lists
    (t_start, t_end, k) for the branch index between obstructions.
    """

    params: np.ndarray
    values: np.ndarray
    arg: np.ndarray
    units: np.ndarray
    k0: int
    branch_trace: tuple

    @property
    def final_branch(self) -> int:
        """Branch index after the last obstruction.

        The last trace piece can be a sliver when the path ends exactly
        on the real axis, where the argument sits on a branch boundary;
        slivers are skipped.
        """
        span = float(self.params[-1] - self.params[0])
        for lo, hi, k in reversed(self.branch_trace):
            if hi - lo > 1e-6 * span:
                return k
        return int(self.branch_trace[-1][2])

    def to_csv(self) -> str:
        dim = self.values.shape[1]
        header = ["t"] + [f"c{c}" for c in range(dim)] + ["k"]
        ks = np.floor(self.arg / math.pi).astype(int)
        lines = [",".join(header)]
        for n, t in enumerate(self.params):
            row = [repr(float(t))] + [repr(float(x)) for x in self.values[n]]
            row.append(str(int(ks[n])))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LiftResult:
    status: str  # "ok" or "fails_at"
    lift: LogLift | None = None
    t_fail: float | None = None
    reason: str | None = None
    closed_lift: bool | None = None
    sampling: str = "adaptive"


def exp_rows(values: np.ndarray) -> np.ndarray:
    """Row-wise exponential of lift samples."""
    x = values[:, 0]
    yv = values[:, 1:]
    yn = np.linalg.norm(yv, axis=1)
    ex = np.exp(x)
    out = np.empty_like(values)
    out[:, 0] = ex * np.cos(yn)
    factor = np.where(yn > 0.0, np.sin(yn) / np.where(yn > 0.0, yn, 1.0), 1.0)
    out[:, 1:] = (ex * factor)[:, None] * yv
    return out


def verify_lift(lift: LogLift, sampled: SampledPath) -> float:
    """Largest relative deviation of exp(lift) from the path samples."""
    model = exp_rows(lift.values)
    resid = np.linalg.norm(model - sampled.values, axis=1)
    scale = np.maximum(1.0, np.linalg.norm(sampled.values, axis=1))
    return float(np.max(resid / scale))


def terminal_branch(k0: int, sigma: int) -> int:
    """Branch index after the last obstruction, from the start branch
    and the signature of the path."""
    return k0 + (-1) ** (k0 % 2) * sigma


def _seed_and_start_arg(sampled, k0, initial_unit):
    """Starting unit field sign and starting argument value."""
    v0 = sampled.values[0]
    mag = float(np.linalg.norm(v0))
    imn = float(np.linalg.norm(v0[1:]))
    init_vec = None
    if initial_unit is not None:
        init_vec = np.asarray(
            initial_unit.value.coeffs[1:]
            if hasattr(initial_unit, "value")
            else initial_unit,
            dtype=float,
        )
        n = float(np.linalg.norm(init_vec))
        if abs(n - 1.0) > 1e-9:
            raise InitialMismatch("initial unit must have unit norm")
    if imn > config.eps_real_for(mag):
        raw = v0[1:] / imn
        seed = raw if k0 % 2 == 0 else -raw
        if init_vec is not None:
            d = float(np.dot(init_vec, raw))
            if abs(d) < math.cos(config.THETA_TOL):
                raise InitialMismatch(
                    "initial unit is not parallel to the path direction"
                )
            seed = raw if d > 0 else -raw
        y0 = float(np.dot(v0[1:], seed))
        theta0 = math.atan2(y0, float(v0[0]))
        arg0 = theta0 + 2.0 * math.pi * ((k0 + 1) // 2)
        return seed, arg0
    # real start
    if float(v0[0]) > 0:
        arg0 = 2.0 * math.pi * ((k0 + 1) // 2)
    else:
        arg0 = (2.0 * (k0 // 2) + 1.0) * math.pi
    if abs(arg0) > 1e-12 and init_vec is None:
        raise MissingInitialUnit(
            "a lift from a real start with nonzero argument needs an initial unit"
        )
    return init_vec, arg0


def _branch_trace(rep: ObstructionReport, params, arg, a, b):
    """Branch index per piece between consecutive obstruction parameters."""
    cuts = {a, b}
    for c in rep.contacts:
        cuts.add(min(max(c.t, a), b))
    for r in rep.runs:
        cuts.add(min(max(r.t0, a), b))
        cuts.add(min(max(r.t1, a), b))
    edges = sorted(cuts)
    trace = []
    for lo, hi in zip(edges, edges[1:]):
        if hi - lo <= 1e-12 * max(1.0, b - a):
            continue
        mid = 0.5 * (lo + hi)
        n = int(np.searchsorted(params, mid))
        n = min(max(n, 0), len(params) - 1)
        k = int(math.floor(arg[n] / math.pi))
        if trace and trace[-1][2] == k:
            trace[-1] = (trace[-1][0], hi, k)
        else:
            trace.append((lo, hi, k))
    return tuple(trace)


def lift_path(
    spec: PathSpec,
    rep: ObstructionReport | None = None,
    k0: int = 0,
    initial_unit=None,
    directives: tuple = (),
    n0: int = 64,
) -> LiftResult:
    """Continuous logarithm of a path starting on branch k0.

    The result reports failure (rather than raising) when the path has a
    contact without the direction limits needed to carry a nonzero
    argument across; errors about unusable inputs do raise.
    """
    sampling = "adaptive"
    try:
        sampled = sample_adaptive(spec, n0)
    except RefinementBudgetExceeded:
        sampled = sample_uniform(spec, FALLBACK_SAMPLES)
        sampling = "uniform_fallback"
    if rep is None or rep.closed:
        rep = find_obstructions(sampled, replace(spec, closed=False))

    seed, arg0 = _seed_and_start_arg(sampled, k0, initial_unit)
    units = unit_field(sampled, rep, directives, seed)

    if seed is not None:
        im_norms = np.linalg.norm(sampled.values[:, 1:], axis=1)
        off_axis = im_norms > config.EPS_REAL
        if np.any(off_axis):
            first = int(np.argmax(off_axis))
            # at a real start the field can only leave along the path's
            # own direction; a sideways initial unit has no continuation
            if float(np.dot(seed, units[first])) < math.cos(
                config.THETA_TOL
            ) and first > 0:
                raise InitialMismatch(
                    "initial unit is not parallel to the outgoing direction"
                )

    x = sampled.values[:, 0]
    y = np.einsum("nd,nd->n", sampled.values[:, 1:], units)
    z = x + 1j * y
    dphi = np.angle(z[1:] * np.conj(z[:-1]))
    if np.any(np.abs(dphi) >= math.pi - config.THETA_TOL):
        worst = int(np.argmax(np.abs(dphi)))
        raise StepTooLarge(
            f"argument step {abs(dphi[worst]):.3f} rad near t={sampled.params[worst]!r}"
        )
    arg = np.empty(len(z))
    arg[0] = arg0
    arg[1:] = arg0 + np.cumsum(dphi)

    # contacts without usable direction limits only admit zero argument
    bad = (SEMI_TAME, NOT_TAME, ENDPOINT_NOT_TAME)
    for c in rep.contacts:
        if c.kind not in bad:
            continue
        n = int(np.searchsorted(sampled.params, c.t))
        n = min(max(n, 0), len(sampled.params) - 1)
        if int(round(arg[n] / math.pi)) != 0:
            return LiftResult(
                status="fails_at", t_fail=c.t, reason=c.kind, sampling=sampling
            )

    mags = np.linalg.norm(sampled.values, axis=1)
    values = np.empty_like(sampled.values)
    values[:, 0] = np.log(mags)
    values[:, 1:] = units * arg[:, None]

    lift = LogLift(
        params=sampled.params,
        values=values,
        arg=arg,
        units=units,
        k0=k0,
        branch_trace=_branch_trace(rep, sampled.params, arg, spec.a, spec.b),
    )
    closed_lift = None
    if spec.closed:
        gap = float(np.linalg.norm(values[-1] - values[0]))
        closed_lift = gap <= config.TOL_LIFT * max(
            1.0, float(np.linalg.norm(values[0]))
        )
    return LiftResult(
        status="ok", lift=lift, closed_lift=closed_lift, sampling=sampling
    )


def closed_nontame_liftable(
    spec: PathSpec, rep: ObstructionReport | None = None, n0: int = 64
) -> bool:
    """Whether a closed path whose only bad contacts sit on the positive
    reals admits a closed continuous logarithm.

    The criterion is that the signature of every piece between
    consecutive bad contacts lies in {0, -1}.  Bad contacts off the
    positive real axis violate the hypotheses, as does a path with no
    bad contact at all (use lift_path for those).
    """
    if not spec.closed:
        raise HypothesisViolated("the criterion applies to closed paths")
    if rep is None:
        try:
            sampled = sample_adaptive(spec, n0)
        except RefinementBudgetExceeded as e:
            sampled = e.sampled if e.sampled is not None else sample_uniform(
                spec, FALLBACK_SAMPLES
            )
        rep = find_obstructions(sampled, spec)
    bad = (SEMI_TAME, NOT_TAME)
    xs = sorted(c.t for c in rep.contacts if c.kind in bad)
    if not xs:
        raise HypothesisViolated("no bad contact; the path is tame enough")
    for c in rep.contacts:
        if c.kind in bad and c.value <= 0:
            raise HypothesisViolated(
                "bad contact away from the positive reals"
            )

    # resolved flips in cyclic order, with the wrap interval last
    flips = []
    for iv in rep.intervals:
        if classify_interval(iv) == FLIP:
            flips.append((iv.t0, iv.sign, iv.wrap))
    period = spec.b - spec.a

    def seg_signature(lo, hi):
        span = (hi - lo) % period
        if span == 0.0:
            span = period  # a single bad contact: the piece is the whole loop
        placed = []
        for t0, sign, wrap in flips:
            t = spec.a if wrap else t0
            rel = (t - lo) % period
            if 0.0 < rel < span:
                placed.append((rel, sign))
        placed.sort()
        return sum(sign * (-1) ** (l + 1) for l, (_rel, sign) in enumerate(placed))

    if len(xs) == 1:
        segs = [(xs[0], xs[0])]
    else:
        segs = list(zip(xs, xs[1:])) + [(xs[-1], xs[0])]
    return all(seg_signature(lo, hi) in (0, -1) for lo, hi in segs)

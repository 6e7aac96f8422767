"""Rate-region builders: each theorem-style bound becomes an explicit list of
linear constraints over rate coordinates, with membership tests, vertex
enumeration, boundary sweeps, and the Gaussian max-min secrecy curves.

Coordinate spaces:
  ("R1", "R2", "Re1", "Re2")  two private equivocations (confidential-message models)
  ("R1", "R2", "Re")          one wiretapper equivocation (MAC-WT models)
  ("R1", "R2")                secrecy regions
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AxisError,
    DomainError,
    InfeasibleRateError,
    MarkovViolationError,
)
from .info_core import (
    GaussianMacParams,
    JointTable,
    TransitionKernel,
    binary_entropy,
    half_log1p_ratio,
    mutual_information,
)

MARKOV_TOL = 1e-10
MEMBERSHIP_SLACK = 1e-9

CM_SPACE = ("R1", "R2", "Re1", "Re2")
WT_SPACE = ("R1", "R2", "Re")
SECRECY_SPACE = ("R1", "R2")


@dataclass(frozen=True)
class RatePoint:
    """Named nonnegative rate coordinates in bits per channel use."""

    coords: dict[str, float]

    def __post_init__(self):
        for name, value in self.coords.items():
            if value < 0.0:
                raise DomainError(f"rate coordinate {name}={value} must be >= 0")

    def vector(self, space: tuple[str, ...]) -> np.ndarray:
        if set(self.coords) != set(space):
            raise AxisError(
                f"point coordinates {sorted(self.coords)} do not match "
                f"space {space}"
            )
        return np.array([self.coords[n] for n in space])


@dataclass(frozen=True)
class LinearConstraint:
    """coeffs . r <= bound over named rate coordinates."""

    coeffs: dict[str, float]
    bound: float
    label: str = ""

    def __post_init__(self):
        if not any(c != 0.0 for c in self.coeffs.values()):
            raise DomainError("constraint needs at least one nonzero coefficient")
        if not math.isfinite(self.bound):
            raise DomainError("constraint bound must be finite")

    def row(self, space: tuple[str, ...]) -> np.ndarray:
        return np.array([self.coeffs.get(n, 0.0) for n in space])


@dataclass(frozen=True)
class ConstraintRegion:
    """Conjunction of linear constraints; convex by construction."""

    space: tuple[str, ...]
    constraints: tuple[LinearConstraint, ...]
    flagged_empty: bool = False

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        a = np.array([c.row(self.space) for c in self.constraints])
        b = np.array([c.bound for c in self.constraints])
        return a, b


@dataclass(frozen=True)
class RegionUnion:
    """Union of same-space constraint regions."""

    members: tuple[ConstraintRegion, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        spaces = {m.space for m in self.members}
        if len(spaces) > 1:
            raise AxisError(f"union members span multiple spaces: {spaces}")

    @property
    def space(self) -> tuple[str, ...]:
        return self.members[0].space if self.members else ()


@dataclass(frozen=True)
class PowerSplit:
    """Private-power fractions (alpha, beta) in [0, 1]."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0 or not 0.0 <= self.beta <= 1.0:
            raise DomainError("alpha and beta must lie in [0, 1]")


@dataclass(frozen=True)
class FrontierCurve:
    """Sampled curve (R2, value) with strictly increasing R2."""

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self):
        r2 = [s[0] for s in self.samples]
        if any(b <= a for a, b in zip(r2, r2[1:])):
            raise DomainError("R2 samples must be strictly increasing")
        if any(s[1] < 0.0 for s in self.samples):
            raise DomainError("curve values must be >= 0")


def _nonneg_constraints(space) -> list[LinearConstraint]:
    return [
        LinearConstraint({n: -1.0}, 0.0, label=f"{n}>=0") for n in space
    ]


def _region(space, constraints, flagged_empty=False) -> ConstraintRegion:
    return ConstraintRegion(
        tuple(space), tuple(constraints) + tuple(_nonneg_constraints(space)),
        flagged_empty=flagged_empty,
    )


def degradedness_residual(joint: JointTable, pivot: str, tail) -> float:
    """Max deviation of p(tail | pivot, rest) from p(tail | pivot) over cells
    where p(rest, pivot) > 0; zero iff rest -> pivot -> tail is Markov."""
    tail = tuple(tail)
    rest = tuple(n for n in joint.axis_names if n != pivot and n not in tail)
    full = joint.marginal(rest + (pivot,) + tail)
    n_tail = len(tail)
    tail_axes = tuple(range(full.ndim - n_tail, full.ndim))
    denom = full.sum(axis=tail_axes, keepdims=True)
    cond_full = np.divide(full, denom, out=np.zeros_like(full), where=denom > 0)
    pt = joint.marginal((pivot,) + tail)
    pt_denom = pt.sum(axis=tuple(range(1, pt.ndim)), keepdims=True)
    cond_pivot = np.divide(pt, pt_denom, out=np.zeros_like(pt), where=pt_denom > 0)
    cond_pivot = cond_pivot.reshape((1,) * len(rest) + cond_pivot.shape)
    diff = np.abs(cond_full - cond_pivot)
    mask = np.broadcast_to(denom > 0, diff.shape)
    return float(diff[mask].max()) if mask.any() else 0.0


def require_degraded(joint: JointTable, pivot: str, tail, tol=MARKOV_TOL):
    res = degradedness_residual(joint, pivot, tail)
    if res > tol:
        raise MarkovViolationError(
            f"chain rest -> {pivot} -> {tail} violated, residual {res:.3e}"
        )


# ---------------------------------------------------------------------------
# Degraded MAC with confidential messages (discrete, two equivocations)
# ---------------------------------------------------------------------------

def _cm_terms(joint: JointTable) -> dict[str, float]:
    require_degraded(joint, "Y", ("Y1", "Y2"))
    return {
        "a": mutual_information(joint, ("X1",), ("Y",), ("X2",)),
        "b": mutual_information(joint, ("X2",), ("Y",), ("X1",)),
        "c": mutual_information(joint, ("X1", "X2"), ("Y",)),
        "d": mutual_information(joint, ("X1",), ("Y2",), ("X2",)),
        "e": mutual_information(joint, ("X2",), ("Y1",), ("X1",)),
    }


def _cm_region_from_terms(t: dict[str, float], bound: str) -> ConstraintRegion:
    a, b, c, d, e = t["a"], t["b"], t["c"], t["d"], t["e"]
    cons = [
        LinearConstraint({"R1": 1.0}, a, "R1<=I(X1;Y|X2)"),
        LinearConstraint({"R2": 1.0}, b, "R2<=I(X2;Y|X1)"),
        LinearConstraint({"R1": 1.0, "R2": 1.0}, c, "R1+R2<=I(X1,X2;Y)"),
        LinearConstraint({"Re1": 1.0, "R1": -1.0}, 0.0, "Re1<=R1"),
        LinearConstraint({"Re2": 1.0, "R2": -1.0}, 0.0, "Re2<=R2"),
        LinearConstraint({"Re1": 1.0}, max(0.0, a - d), "Re1 cap"),
        LinearConstraint({"Re2": 1.0}, max(0.0, b - e), "Re2 cap"),
    ]
    if bound == "inner":
        cons += [
            LinearConstraint(
                {"Re1": 1.0, "Re2": 1.0}, max(0.0, c - d - e), "Re1+Re2 cap"
            ),
            LinearConstraint({"Re1": 1.0, "R2": 1.0}, c - d, "Re1+R2 cap"),
            LinearConstraint({"Re2": 1.0, "R1": 1.0}, c - e, "Re2+R1 cap"),
        ]
    elif bound != "outer":
        raise DomainError(f"bound must be 'inner' or 'outer', got {bound!r}")
    return _region(CM_SPACE, cons)


def cm_inner(joint: JointTable) -> ConstraintRegion:
    """Achievable (R1, R2, Re1, Re2) region of the degraded two-user model."""
    return _cm_region_from_terms(_cm_terms(joint), "inner")


def cm_outer(joint: JointTable) -> ConstraintRegion:
    """Converse (R1, R2, Re1, Re2) region; a superset of cm_inner's."""
    return _cm_region_from_terms(_cm_terms(joint), "outer")


def substitute(
    region: ConstraintRegion,
    mapping: dict[str, dict[str, float]],
    new_space,
    clamp_bounds: bool = False,
) -> ConstraintRegion:
    """Substitute coordinates linearly (old -> combo of new), merge duplicate
    rows keeping the tightest bound, and drop vacuous rows.

    A row whose coefficients all vanish is dropped when satisfiable; when its
    bound is negative (contradiction) the result is flagged empty.
    """
    new_space = tuple(new_space)
    merged: dict[tuple, tuple[float, str]] = {}
    empty = region.flagged_empty
    for con in region.constraints:
        coeffs: dict[str, float] = {}
        for name, c in con.coeffs.items():
            for tgt, w in mapping.get(name, {name: 1.0}).items():
                coeffs[tgt] = coeffs.get(tgt, 0.0) + c * w
        coeffs = {n: c for n, c in coeffs.items() if c != 0.0}
        bound = max(0.0, con.bound) if clamp_bounds else con.bound
        if not coeffs:
            if bound < -MEMBERSHIP_SLACK:
                empty = True
            continue
        key = tuple(sorted(coeffs.items()))
        if key not in merged or bound < merged[key][0]:
            merged[key] = (bound, con.label)
    cons = [
        LinearConstraint(dict(key), bound, label)
        for key, (bound, label) in merged.items()
    ]
    return ConstraintRegion(new_space, tuple(cons), flagged_empty=empty)


_CM_SECRECY_MAP = {"Re1": {"R1": 1.0}, "Re2": {"R2": 1.0}}
_WT_SECRECY_MAP = {"Re": {"R1": 1.0, "R2": 1.0}}


def cm_secrecy(joint: JointTable, bound: str) -> ConstraintRegion:
    """Perfect-secrecy (R1, R2) region: substitute Re1=R1, Re2=R2."""
    parent = cm_inner(joint) if bound == "inner" else cm_outer(joint)
    return substitute(parent, _CM_SECRECY_MAP, SECRECY_SPACE, clamp_bounds=True)


# ---------------------------------------------------------------------------
# Gaussian model
# ---------------------------------------------------------------------------

def _gaussian_terms(params: GaussianMacParams, split: PowerSplit) -> dict[str, float]:
    p, a, b = params, split.alpha, split.beta
    return {
        "r1": half_log1p_ratio(a * p.P1, p.N0),
        "r2": half_log1p_ratio(b * p.P2, p.N0),
        "sum_a": half_log1p_ratio(
            p.P1 + p.P2 + 2.0 * math.sqrt((1.0 - a) * p.P1 * p.P2), p.N0
        ),
        "sum_b": half_log1p_ratio(
            p.P1 + p.P2 + 2.0 * math.sqrt((1.0 - b) * p.P1 * p.P2), p.N0
        ),
        "w1": half_log1p_ratio(a * p.P1, p.N0 + p.N2),
        "w2": half_log1p_ratio(b * p.P2, p.N0 + p.N1),
    }


def gaussian_cm_region(
    params: GaussianMacParams, split: PowerSplit, bound: str
) -> ConstraintRegion:
    """One member (fixed power split) of the Gaussian capacity-equivocation
    union; 12 constraints for the inner bound, 8 for the outer."""
    t = _gaussian_terms(params, split)
    cons = [
        LinearConstraint({"R1": 1.0}, t["r1"], "R1 cap"),
        LinearConstraint({"R2": 1.0}, t["r2"], "R2 cap"),
        LinearConstraint({"R1": 1.0, "R2": 1.0}, t["sum_a"], "sum cap (alpha)"),
        LinearConstraint({"R1": 1.0, "R2": 1.0}, t["sum_b"], "sum cap (beta)"),
        LinearConstraint({"Re1": 1.0, "R1": -1.0}, 0.0, "Re1<=R1"),
        LinearConstraint({"Re2": 1.0, "R2": -1.0}, 0.0, "Re2<=R2"),
        LinearConstraint({"Re1": 1.0}, max(0.0, t["r1"] - t["w1"]), "Re1 cap"),
        LinearConstraint({"Re2": 1.0}, max(0.0, t["r2"] - t["w2"]), "Re2 cap"),
    ]
    if bound == "inner":
        cons += [
            LinearConstraint(
                {"Re1": 1.0, "Re2": 1.0},
                max(0.0, t["sum_a"] - t["w1"] - t["w2"]),
                "Re1+Re2 cap (alpha)",
            ),
            LinearConstraint(
                {"Re1": 1.0, "Re2": 1.0},
                max(0.0, t["sum_b"] - t["w1"] - t["w2"]),
                "Re1+Re2 cap (beta)",
            ),
            LinearConstraint(
                {"Re1": 1.0, "R2": 1.0}, t["sum_a"] - t["w1"], "Re1+R2 cap"
            ),
            LinearConstraint(
                {"Re2": 1.0, "R1": 1.0}, t["sum_b"] - t["w2"], "Re2+R1 cap"
            ),
        ]
    elif bound != "outer":
        raise DomainError(f"bound must be 'inner' or 'outer', got {bound!r}")
    return _region(CM_SPACE, cons)


def gaussian_cm_secrecy(
    params: GaussianMacParams, split: PowerSplit, bound: str
) -> ConstraintRegion:
    parent = gaussian_cm_region(params, split, bound)
    return substitute(parent, _CM_SECRECY_MAP, SECRECY_SPACE, clamp_bounds=True)


def _beta_rate(params: GaussianMacParams, beta: float) -> float:
    return half_log1p_ratio(beta * params.P2, params.N0) - half_log1p_ratio(
        beta * params.P2, params.N0 + params.N1
    )


def gaussian_beta_star(r2: float, params: GaussianMacParams, tol=1e-10) -> float:
    """The power fraction at which user 2's secure rate equals r2, by bisection."""
    if r2 < 0.0:
        raise DomainError(f"R2 must be >= 0, got {r2}")
    top = _beta_rate(params, 1.0)
    if r2 > top:
        raise InfeasibleRateError(
            f"R2={r2} exceeds the maximum secure rate {top} for user 2"
        )
    # Monotonicity guard: the bracketing function must increase on a coarse grid.
    probe = [_beta_rate(params, x) for x in np.linspace(0.0, 1.0, 9)]
    if any(b < a - 1e-12 for a, b in zip(probe, probe[1:])):
        raise InfeasibleRateError("secure-rate function is not increasing in beta")
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = _beta_rate(params, mid)
        if abs(val - r2) <= tol:
            return mid
        if val < r2:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    if abs(_beta_rate(params, mid) - r2) > tol:
        raise InfeasibleRateError(f"bisection did not reach residual {tol}")
    return mid


def _curve_min_terms(
    params: GaussianMacParams, bound: str, r2: float, beta_star: float, alpha
):
    """Vectorized min over the bracketed expressions, one value per alpha."""
    p = params
    alpha = np.asarray(alpha, dtype=float)
    t1 = 0.5 * np.log2(1.0 + alpha * p.P1 / p.N0) - 0.5 * np.log2(
        1.0 + alpha * p.P1 / (p.N0 + p.N2)
    )
    sum_a = 0.5 * np.log2(
        1.0 + (p.P1 + p.P2 + 2.0 * np.sqrt((1.0 - alpha) * p.P1 * p.P2)) / p.N0
    )
    sum_b = half_log1p_ratio(
        p.P1 + p.P2 + 2.0 * math.sqrt((1.0 - beta_star) * p.P1 * p.P2), p.N0
    )
    if bound == "inner":
        w1 = 0.5 * np.log2(1.0 + alpha * p.P1 / (p.N0 + p.N2))
        w2 = half_log1p_ratio(beta_star * p.P2, p.N0 + p.N1)
        t2 = sum_a - w1 - w2 - r2
        t3 = sum_b - w1 - w2 - r2
    elif bound == "outer":
        t2 = sum_a - r2
        t3 = np.full_like(t1, sum_b - r2)
    else:
        raise DomainError(f"bound must be 'inner' or 'outer', got {bound!r}")
    return np.minimum(t1, np.minimum(t2, t3))


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_refine(f, lo: float, hi: float, iters: int = 60):
    """Golden-section maximization of f on [lo, hi]; returns (x, f(x))."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def gaussian_secrecy_curve(
    params: GaussianMacParams,
    bound: str,
    r2_grid,
    alpha_points: int = 512,
) -> FrontierCurve:
    """Secrecy rate of user 1 as a function of R2: max over alpha of the min of
    the bound's bracketed terms, negative minima clamped to 0."""
    r2_grid = [float(r) for r in r2_grid]
    if not r2_grid:
        raise DomainError("R2 grid must be nonempty")
    alphas = np.linspace(0.0, 1.0, alpha_points)
    samples = []
    for r2 in r2_grid:
        bstar = gaussian_beta_star(r2, params)
        vals = _curve_min_terms(params, bound, r2, bstar, alphas)
        best = int(np.argmax(vals))  # first (smallest alpha) on ties
        lo = alphas[max(best - 1, 0)]
        hi = alphas[min(best + 1, alpha_points - 1)]
        _, refined = _golden_refine(
            lambda a: float(_curve_min_terms(params, bound, r2, bstar, [a])[0]),
            lo,
            hi,
        )
        samples.append((r2, max(0.0, max(float(vals[best]), refined))))
    return FrontierCurve(tuple(samples))


# ---------------------------------------------------------------------------
# Binary (AND main channel, BSC eavesdropping) closed forms
# ---------------------------------------------------------------------------

def binary_cm_region(p: float, q: float, bound: str) -> ConstraintRegion:
    """Capacity-equivocation bound for the binary two-user model; the printed
    constraints carry no dependence on the input biases, so the union over
    them is a single region."""
    if not 0.0 <= p <= 0.5 or not 0.0 <= q <= 0.5:
        raise DomainError("crossover probabilities must lie in [0, 1/2]")
    hp, hq = binary_entropy(p), binary_entropy(q)
    cons = [
        LinearConstraint({"R1": 1.0}, 1.0, "R1<=1"),
        LinearConstraint({"R2": 1.0}, 1.0, "R2<=1"),
        LinearConstraint({"R1": 1.0, "R2": 1.0}, 1.0, "R1+R2<=1"),
        LinearConstraint({"Re1": 1.0, "R1": -1.0}, 0.0, "Re1<=R1"),
        LinearConstraint({"Re2": 1.0, "R2": -1.0}, 0.0, "Re2<=R2"),
        LinearConstraint({"Re1": 1.0}, hq, "Re1<=h(q)"),
        LinearConstraint({"Re2": 1.0}, hp, "Re2<=h(p)"),
    ]
    if bound == "inner":
        cons += [
            LinearConstraint(
                {"Re1": 1.0, "Re2": 1.0},
                max(0.0, hp + hq - 1.0),
                "Re1+Re2<=h(p)+h(q)-1",
            ),
            LinearConstraint({"Re1": 1.0, "R2": 1.0}, hq, "Re1+R2<=h(q)"),
            LinearConstraint({"Re2": 1.0, "R1": 1.0}, hp, "Re2+R1<=h(p)"),
        ]
    elif bound != "outer":
        raise DomainError(f"bound must be 'inner' or 'outer', got {bound!r}")
    return _region(CM_SPACE, cons)


def binary_cm_secrecy(p: float, q: float, bound: str) -> ConstraintRegion:
    return substitute(
        binary_cm_region(p, q, bound), _CM_SECRECY_MAP, SECRECY_SPACE,
        clamp_bounds=True,
    )


def binary_macwt_coop_region(p: float) -> ConstraintRegion:
    """Exact (R1, R2, Re) region of the binary degraded wiretap model with
    cooperating encoders."""
    if not 0.0 <= p <= 0.5:
        raise DomainError("crossover probability must lie in [0, 1/2]")
    hp = binary_entropy(p)
    cons = [
        LinearConstraint({"R1": 1.0}, 1.0, "R1<=1"),
        LinearConstraint({"R2": 1.0}, 1.0, "R2<=1"),
        LinearConstraint({"R1": 1.0, "R2": 1.0}, 1.0, "R1+R2<=1"),
        LinearConstraint({"Re": 1.0, "R1": -1.0, "R2": -1.0}, 0.0, "Re<=R1+R2"),
        LinearConstraint({"Re": 1.0}, hp, "Re<=h(p)"),
    ]
    return _region(WT_SPACE, cons)


def binary_macwt_coop_secrecy(p: float) -> ConstraintRegion:
    return substitute(
        binary_macwt_coop_region(p), _WT_SECRECY_MAP, SECRECY_SPACE,
        clamp_bounds=True,
    )


def binary_macwt_noncoop_secrecy(p: float, bound: str) -> ConstraintRegion:
    """Secrecy region of the binary degraded wiretap model with independent
    encoders; the achievable and converse derivations describe the same set."""
    if not 0.0 <= p <= 0.5:
        raise DomainError("crossover probability must lie in [0, 1/2]")
    hp = binary_entropy(p)
    if bound == "inner":
        cons = [
            LinearConstraint({"R1": 1.0}, hp, "R1<=h(p)"),
            LinearConstraint({"R2": 1.0}, hp, "R2<=h(p)"),
            LinearConstraint({"R1": 1.0, "R2": 1.0}, hp, "R1+R2<=h(p)"),
        ]
    elif bound == "outer":
        cons = [
            LinearConstraint({"R1": 1.0}, 1.0, "R1<=1"),
            LinearConstraint({"R2": 1.0}, 1.0, "R2<=1"),
            LinearConstraint({"R1": 1.0, "R2": 1.0}, hp, "R1+R2<=h(p)"),
        ]
    else:
        raise DomainError(f"bound must be 'inner' or 'outer', got {bound!r}")
    return _region(SECRECY_SPACE, cons)


# ---------------------------------------------------------------------------
# General MAC wiretap channel (cooperative encoders, auxiliary variables)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MacWiretapChannel:
    """Memoryless channel q(y, z | x1, x2), stored as an array of shape
    (|X1|, |X2|, |Y|, |Z|)."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 4:
            raise AxisError("channel array must have shape (|X1|,|X2|,|Y|,|Z|)")
        if np.any(probs < 0.0):
            raise DomainError("negative channel entry")
        sums = probs.sum(axis=(2, 3))
        if np.any(np.abs(sums - 1.0) > 1e-12):
            raise DomainError("channel rows must each sum to 1")
        probs = probs.copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_kernels(
        cls, main: TransitionKernel, degrading: TransitionKernel
    ) -> "MacWiretapChannel":
        """Compose p(y|x1,x2) with p(z|y); the result is degraded by
        construction."""
        probs = main.probs[..., None] * degrading.probs[None, None, :, :]
        return cls(probs)

    @property
    def shape(self):
        return self.probs.shape


@dataclass(frozen=True)
class AuxiliaryModel:
    """Auxiliary joint (U, U1, U2, V, X1, X2) feeding a wiretap channel, with
    the chain (U, U1, U2) -> V -> (X1, X2) -> (Y, Z)."""

    joint: JointTable
    channel: MacWiretapChannel

    def __post_init__(self):
        names = self.joint.axis_names
        if names != ("U", "U1", "U2", "V", "X1", "X2"):
            raise AxisError(
                f"auxiliary joint must have axes (U, U1, U2, V, X1, X2), got {names}"
            )
        sizes = dict(self.joint.axes)
        k1, k2 = self.channel.shape[0], self.channel.shape[1]
        if sizes["X1"] != k1 or sizes["X2"] != k2:
            raise AxisError("input alphabets of joint and channel differ")
        kx = k1 * k2
        caps = {"U": kx + 1, "U1": kx, "U2": kx, "V": (kx + 1) ** 2 * k1 ** 2 * k2 ** 2}
        for name, cap in caps.items():
            if sizes[name] > cap:
                raise DomainError(
                    f"alphabet of {name} is {sizes[name]}, cardinality cap is {cap}"
                )
        require_degraded(self.joint, "V", ("X1", "X2"))

    def full_joint(self) -> JointTable:
        """Joint over (U, U1, U2, V, X1, X2, Y, Z)."""
        _, _, ky, kz = self.channel.shape
        probs = (
            self.joint.probs[..., None, None]
            * self.channel.probs[None, None, None, None, :, :, :, :]
        )
        axes = self.joint.axes + (("Y", ky), ("Z", kz))
        return JointTable(axes, probs)


def macwt_coop_region(model: AuxiliaryModel, degraded: bool) -> ConstraintRegion:
    """(R1, R2, Re) bound for cooperating encoders at a fixed auxiliary joint;
    the degraded variant uses the unconditional equivocation cap."""
    full = model.full_joint()
    if degraded:
        require_degraded(full, "Y", ("Z",))
        re_cap = mutual_information(full, ("V",), ("Y",)) - mutual_information(
            full, ("V",), ("Z",)
        )
    else:
        re_cap = mutual_information(full, ("V",), ("Y",), ("U",)) - (
            mutual_information(full, ("V",), ("Z",), ("U",))
        )
    cons = [
        LinearConstraint(
            {"R1": 1.0}, mutual_information(full, ("V",), ("Y",), ("U2",)),
            "R1<=I(V;Y|U2)",
        ),
        LinearConstraint(
            {"R2": 1.0}, mutual_information(full, ("V",), ("Y",), ("U1",)),
            "R2<=I(V;Y|U1)",
        ),
        LinearConstraint(
            {"R1": 1.0, "R2": 1.0}, mutual_information(full, ("V",), ("Y",)),
            "R1+R2<=I(V;Y)",
        ),
        LinearConstraint({"Re": 1.0, "R1": -1.0, "R2": -1.0}, 0.0, "Re<=R1+R2"),
        LinearConstraint({"Re": 1.0}, max(0.0, re_cap), "Re cap"),
    ]
    return _region(WT_SPACE, cons)


def macwt_coop_secrecy(model: AuxiliaryModel, degraded: bool) -> ConstraintRegion:
    return substitute(
        macwt_coop_region(model, degraded), _WT_SECRECY_MAP, SECRECY_SPACE,
        clamp_bounds=True,
    )


def _sample_conditional(rng, n_rows: int, n_cols: int, deterministic: bool):
    if deterministic:
        cond = np.zeros((n_rows, n_cols))
        cond[np.arange(n_rows), rng.integers(0, n_cols, size=n_rows)] = 1.0
        return cond
    return rng.dirichlet(np.ones(n_cols), size=n_rows)


def macwt_coop_search(
    channel: MacWiretapChannel,
    trials: int,
    seed: int,
    degraded: bool = False,
    v_cap: int = 16,
    aux_cap: int | None = None,
) -> RegionUnion:
    """Randomized search over auxiliary joints; returns the union of the
    per-trial regions, with the best achievable secrecy sum in `meta`.

    Each trial samples the marginal of V and the conditionals along the chain
    from flat Dirichlet laws; with probability 1/2 the conditional is replaced
    by a deterministic function, which is where sharp optima usually live.
    """
    k1, k2, _, _ = channel.shape
    kx = k1 * k2
    nv = min(v_cap, (kx + 1) ** 2 * k1 ** 2 * k2 ** 2)
    nu = 1 if degraded else min(aux_cap or kx + 1, kx + 1)
    nu12 = min(aux_cap or kx, kx)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    members = []
    best = {"secrecy_sum": 0.0, "trial": None, "deterministic": None}
    pair_index = np.arange(kx)
    for t in range(trials):
        det = bool(rng.integers(0, 2))
        p_v = rng.dirichlet(np.ones(nv))
        if det:
            pick = pair_index[rng.integers(0, kx, size=nv)]
            p_x_given_v = np.zeros((nv, kx))
            p_x_given_v[np.arange(nv), pick] = 1.0
        else:
            p_x_given_v = rng.dirichlet(np.ones(kx), size=nv)
        p_u = _sample_conditional(rng, nv, nu, det) if nu > 1 else np.ones((nv, 1))
        p_u1 = _sample_conditional(rng, nv, nu12, det)
        p_u2 = _sample_conditional(rng, nv, nu12, det)
        # joint over (U, U1, U2, V, X1, X2) with U, U1, U2 cond. independent given V
        probs = (
            p_u.T[:, None, None, :, None]
            * p_u1.T[None, :, None, :, None]
            * p_u2.T[None, None, :, :, None]
            * (p_v[:, None] * p_x_given_v)[None, None, None, :, :]
        ).reshape(nu, nu12, nu12, nv, k1, k2)
        joint = JointTable(
            (("U", nu), ("U1", nu12), ("U2", nu12), ("V", nv), ("X1", k1), ("X2", k2)),
            probs,
        )
        region = macwt_coop_region(AuxiliaryModel(joint, channel), degraded)
        members.append(region)
        caps = {c.label: c.bound for c in region.constraints}
        secrecy_sum = min(
            caps["R1<=I(V;Y|U2)"] + caps["R2<=I(V;Y|U1)"],
            caps["R1+R2<=I(V;Y)"],
            caps["Re cap"],
        )
        if secrecy_sum > best["secrecy_sum"]:
            best = {"secrecy_sum": secrecy_sum, "trial": t, "deterministic": det}
    return RegionUnion(tuple(members), meta=dict(best))


# ---------------------------------------------------------------------------
# Degraded MAC wiretap channel with independent encoders
# ---------------------------------------------------------------------------

def _noncoop_joint(p_x1, p_x2, channel: TransitionKernel, degrading: TransitionKernel):
    from .info_core import cascade_degrade, lift_inputs

    joint = cascade_degrade(lift_inputs(p_x1, p_x2, channel), degrading)
    require_degraded(joint, "Y", ("Z",))
    return joint


def _noncoop_terms(joint: JointTable) -> dict[str, float]:
    return {
        "iy1": mutual_information(joint, ("X1",), ("Y",)),
        "iy1c": mutual_information(joint, ("X1",), ("Y",), ("X2",)),
        "iy2": mutual_information(joint, ("X2",), ("Y",)),
        "iy2c": mutual_information(joint, ("X2",), ("Y",), ("X1",)),
        "iy": mutual_information(joint, ("X1", "X2"), ("Y",)),
        "iz1": mutual_information(joint, ("X1",), ("Z",)),
        "iz1c": mutual_information(joint, ("X1",), ("Z",), ("X2",)),
        "iz2": mutual_information(joint, ("X2",), ("Z",)),
        "iz2c": mutual_information(joint, ("X2",), ("Z",), ("X1",)),
        "iz": mutual_information(joint, ("X1", "X2"), ("Z",)),
    }


def macwt_noncoop_inner(p_x1, p_x2, channel, degrading) -> RegionUnion:
    """The four-member achievable union for independent encoders; members with
    contradictory two-sided bounds are kept but flagged empty."""
    t = _noncoop_terms(_noncoop_joint(p_x1, p_x2, channel, degrading))
    sum_cap = LinearConstraint({"R1": 1.0, "R2": 1.0}, t["iy"], "R1+R2<=I(X1,X2;Y)")
    re_le_sum = LinearConstraint(
        {"Re": 1.0, "R1": -1.0, "R2": -1.0}, 0.0, "Re<=R1+R2"
    )
    re_joint = LinearConstraint(
        {"Re": 1.0}, max(0.0, t["iy"] - t["iz"]), "Re<=I(X1,X2;Y)-I(X1,X2;Z)"
    )

    def two_sided(name, lo, hi, lo_label, hi_label):
        return [
            LinearConstraint({name: -1.0}, -lo, lo_label),
            LinearConstraint({name: 1.0}, hi, hi_label),
        ], lo > hi + MEMBERSHIP_SLACK

    l1 = _region(
        WT_SPACE,
        [
            LinearConstraint({"R1": 1.0}, t["iy1"] - t["iz1"], "R1<=I(X1;Y)-I(X1;Z)"),
            LinearConstraint({"R2": 1.0}, t["iy2c"], "R2<=I(X2;Y|X1)"),
            sum_cap,
            re_le_sum,
            LinearConstraint(
                {"Re": 1.0, "R1": -1.0},
                t["iy2c"] - t["iz2c"],
                "Re<=I(X2;Y|X1)-I(X2;Z|X1)+R1",
            ),
        ],
    )
    l2 = _region(
        WT_SPACE,
        [
            LinearConstraint({"R1": 1.0}, t["iy1c"], "R1<=I(X1;Y|X2)"),
            LinearConstraint({"R2": 1.0}, t["iy2"] - t["iz2"], "R2<=I(X2;Y)-I(X2;Z)"),
            sum_cap,
            re_le_sum,
            LinearConstraint(
                {"Re": 1.0, "R2": -1.0},
                t["iy1c"] - t["iz1c"],
                "Re<=I(X1;Y|X2)-I(X1;Z|X2)+R2",
            ),
        ],
    )
    c3a, e3a = two_sided(
        "R1", t["iy1"] - t["iz1"], t["iy1"], "R1>=I(X1;Y)-I(X1;Z)", "R1<=I(X1;Y)"
    )
    c3b, e3b = two_sided(
        "R2",
        t["iy2c"] - t["iz2c"],
        t["iy2c"],
        "R2>=I(X2;Y|X1)-I(X2;Z|X1)",
        "R2<=I(X2;Y|X1)",
    )
    l3 = _region(
        WT_SPACE, c3a + c3b + [sum_cap, re_le_sum, re_joint], flagged_empty=e3a or e3b
    )
    c4a, e4a = two_sided(
        "R1",
        t["iy1c"] - t["iz1c"],
        t["iy1c"],
        "R1>=I(X1;Y|X2)-I(X1;Z|X2)",
        "R1<=I(X1;Y|X2)",
    )
    c4b, e4b = two_sided(
        "R2", t["iy2"] - t["iz2"], t["iy2"], "R2>=I(X2;Y)-I(X2;Z)", "R2<=I(X2;Y)"
    )
    l4 = _region(
        WT_SPACE, c4a + c4b + [sum_cap, re_le_sum, re_joint], flagged_empty=e4a or e4b
    )
    return RegionUnion((l1, l2, l3, l4))


def macwt_noncoop_outer(p_x1, p_x2, channel, degrading) -> ConstraintRegion:
    t = _noncoop_terms(_noncoop_joint(p_x1, p_x2, channel, degrading))
    cons = [
        LinearConstraint({"R1": 1.0}, t["iy1c"], "R1<=I(X1;Y|X2)"),
        LinearConstraint({"R2": 1.0}, t["iy2c"], "R2<=I(X2;Y|X1)"),
        LinearConstraint({"R1": 1.0, "R2": 1.0}, t["iy"], "R1+R2<=I(X1,X2;Y)"),
        LinearConstraint({"Re": 1.0, "R1": -1.0, "R2": -1.0}, 0.0, "Re<=R1+R2"),
        LinearConstraint(
            {"Re": 1.0}, max(0.0, t["iy"] - t["iz"]), "Re<=I(X1,X2;Y)-I(X1,X2;Z)"
        ),
    ]
    return _region(WT_SPACE, cons)


def noncoop_secrecy(region_or_union):
    """Substitute Re = R1 + R2 into a (R1, R2, Re) region or union."""
    if isinstance(region_or_union, RegionUnion):
        return RegionUnion(
            tuple(
                substitute(m, _WT_SECRECY_MAP, SECRECY_SPACE, clamp_bounds=True)
                for m in region_or_union.members
            ),
            meta=dict(region_or_union.meta),
        )
    return substitute(
        region_or_union, _WT_SECRECY_MAP, SECRECY_SPACE, clamp_bounds=True
    )


# ---------------------------------------------------------------------------
# Membership, vertices, boundary sweeps
# ---------------------------------------------------------------------------

def membership(point: RatePoint, region, slack: float = MEMBERSHIP_SLACK) -> bool:
    """True iff the point satisfies every constraint within +slack; for a
    union, membership in any member suffices."""
    if isinstance(region, RegionUnion):
        return any(membership(point, m, slack) for m in region.members)
    x = point.vector(region.space)
    a, b = region.matrix()
    return bool(np.all(a @ x <= b + slack))


def binding_constraint(point: RatePoint, region: ConstraintRegion, slack=MEMBERSHIP_SLACK):
    """Label of the most-violated constraint, or None if the point is a member."""
    x = point.vector(region.space)
    a, b = region.matrix()
    excess = a @ x - b
    worst = int(np.argmax(excess))
    if excess[worst] <= slack:
        return None
    return region.constraints[worst].label


def vertices(region: ConstraintRegion, tol: float = 1e-9) -> np.ndarray:
    """All vertices of the polytope, by enumerating d-subsets of constraints.
    Only intended for the small (<= 4-D) regions built here."""
    a, b = region.matrix()
    d = len(region.space)
    found = []
    for rows in itertools.combinations(range(len(b)), d):
        sub = a[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[list(rows)])
        if np.all(a @ x <= b + tol):
            if not any(np.allclose(x, v, atol=tol) for v in found):
                found.append(x)
    return np.array(found) if found else np.empty((0, d))


def r1_max(region, r2: float, slack: float = MEMBERSHIP_SLACK):
    """Largest R1 with (R1, r2) in the 2-D region, or None if r2 is infeasible."""
    if isinstance(region, RegionUnion):
        vals = [r1_max(m, r2, slack) for m in region.members if not m.flagged_empty]
        vals = [v for v in vals if v is not None]
        return max(vals) if vals else None
    if region.space != SECRECY_SPACE:
        raise AxisError(f"boundary sweep needs space {SECRECY_SPACE}")
    if region.flagged_empty:
        return None
    upper, lower = math.inf, 0.0
    for con in region.constraints:
        a1 = con.coeffs.get("R1", 0.0)
        a2 = con.coeffs.get("R2", 0.0)
        if a1 > 0.0:
            upper = min(upper, (con.bound - a2 * r2) / a1)
        elif a1 < 0.0:
            lower = max(lower, (con.bound - a2 * r2) / a1)
        elif a2 * r2 > con.bound + slack:
            return None
    if not math.isfinite(upper):
        raise DomainError("region does not bound R1 from above")
    if upper < lower - slack:
        return None
    return max(0.0, upper)


def frontier_sweep(regions, r2_grid) -> list[tuple[float, float]]:
    """Upper boundary R1_max(R2) of a 2-D region (or union, or iterable of
    regions treated as a union); infeasible R2 values are skipped."""
    if isinstance(regions, (ConstraintRegion, RegionUnion)):
        regions = [regions]
    regions = list(regions)
    rows = []
    for r2 in r2_grid:
        vals = [r1_max(r, float(r2)) for r in regions]
        vals = [v for v in vals if v is not None]
        if vals:
            rows.append((float(r2), max(vals)))
    return rows

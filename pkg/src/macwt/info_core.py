"""Exact finite-alphabet probability tables and entropy/mutual-information
computations, plus the closed-form Gaussian rate helper.

All logarithms are base 2; rates, entropies and equivocations are in bits.
The convention 0*log(0) = 0 is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AxisError, DomainError, InternalConsistencyError, ResourceCapError

# Dense tables only; refuse anything bigger than this many cells.
MAX_CELLS = 2 ** 24

# Mutual informations this far below zero are float noise and clamp to 0;
# anything more negative is a bug.
MI_CLAMP = 1e-10

PROB_ATOL = 1e-12


def binary_entropy(p: float) -> float:
    """Entropy in bits of a Bernoulli(p) source; h(0) = h(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability must be in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))


def inverse_binary_entropy(t: float, tol: float = 1e-12) -> float:
    """The unique p in [0, 1/2] with binary_entropy(p) = t, by bisection."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"entropy must be in [0, 1] bits, got {t}")
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < t:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def half_log1p_ratio(signal: float, noise: float) -> float:
    """(1/2) * log2(1 + signal/noise), the Gaussian rate term in bits."""
    if signal < 0.0:
        raise DomainError(f"signal power must be >= 0, got {signal}")
    if noise <= 0.0:
        raise DomainError(f"noise power must be > 0, got {noise}")
    return float(0.5 * np.log2(1.0 + signal / noise))


@dataclass(frozen=True)
class GaussianMacParams:
    """Powers and noise variances of the Gaussian two-user model (linear scale)."""

    P1: float
    P2: float
    N0: float
    N1: float
    N2: float

    def __post_init__(self):
        for name in ("P1", "P2", "N0", "N1", "N2"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class JointTable:
    """Dense joint probability table over named finite axes.

    `axes` is an ordered tuple of (name, size); `probs` has one dimension per
    axis, in order. Cells are nonnegative and sum to 1.
    """

    axes: tuple[tuple[str, int], ...]
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        axes = tuple((str(n), int(k)) for n, k in self.axes)
        object.__setattr__(self, "axes", axes)
        names = [n for n, _ in axes]
        if len(set(names)) != len(names):
            raise AxisError(f"duplicate axis names in {names}")
        probs = np.asarray(self.probs, dtype=float)
        if probs.size > MAX_CELLS:
            raise ResourceCapError(
                f"table has {probs.size} cells, cap is {MAX_CELLS}"
            )
        if probs.shape != tuple(k for _, k in axes):
            raise AxisError(
                f"table shape {probs.shape} does not match axes {axes}"
            )
        if np.any(probs < 0.0):
            raise DomainError("negative probability cell")
        if abs(probs.sum() - 1.0) > PROB_ATOL:
            raise DomainError(f"cells sum to {probs.sum()}, not 1")
        probs = probs.copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.axes)

    def axis_index(self, name: str) -> int:
        try:
            return self.axis_names.index(name)
        except ValueError:
            raise AxisError(f"unknown axis {name!r}; have {self.axis_names}") from None

    def marginal(self, keep: tuple[str, ...] | list[str]) -> np.ndarray:
        """Marginal array over `keep` axes, in the order given."""
        keep = tuple(keep)
        drop = tuple(i for i, n in enumerate(self.axis_names) if n not in keep)
        for n in keep:
            self.axis_index(n)
        arr = self.probs.sum(axis=drop) if drop else self.probs
        kept_order = [n for n in self.axis_names if n in keep]
        perm = [kept_order.index(n) for n in keep]
        return np.transpose(arr, perm) if perm else arr

    def marginal_table(self, keep) -> "JointTable":
        keep = tuple(keep)
        sizes = dict(self.axes)
        return JointTable(tuple((n, sizes[n]) for n in keep), self.marginal(keep))


@dataclass(frozen=True)
class TransitionKernel:
    """Conditional table p(output | inputs) over named finite axes."""

    input_axes: tuple[tuple[str, int], ...]
    output_axis: tuple[str, int]
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        in_axes = tuple((str(n), int(k)) for n, k in self.input_axes)
        out_axis = (str(self.output_axis[0]), int(self.output_axis[1]))
        object.__setattr__(self, "input_axes", in_axes)
        object.__setattr__(self, "output_axis", out_axis)
        names = [n for n, _ in in_axes] + [out_axis[0]]
        if len(set(names)) != len(names):
            raise AxisError(f"duplicate axis names in {names}")
        probs = np.asarray(self.probs, dtype=float)
        want = tuple(k for _, k in in_axes) + (out_axis[1],)
        if probs.shape != want:
            raise AxisError(f"kernel shape {probs.shape}, expected {want}")
        if np.any(probs < 0.0):
            raise DomainError("negative kernel entry")
        row_sums = probs.sum(axis=-1)
        if np.any(np.abs(row_sums - 1.0) > PROB_ATOL):
            raise DomainError("kernel rows must each sum to 1")
        probs = probs.copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)


def _entropy_of(arr: np.ndarray) -> float:
    p = arr[arr > 0.0]
    return float(-(p * np.log2(p)).sum())


def entropy(table: JointTable, over, given=()) -> float:
    """H(over | given) in bits."""
    over, given = tuple(over), tuple(given)
    if set(over) & set(given):
        raise AxisError("`over` and `given` must be disjoint")
    for n in over + given:
        table.axis_index(n)
    h_all = _entropy_of(table.marginal(over + given))
    if not given:
        return h_all
    return h_all - _entropy_of(table.marginal(given))


def mutual_information(table: JointTable, a, b, given=()) -> float:
    """I(a; b | given) in bits, with tiny float-noise negatives clamped to 0."""
    a, b, given = tuple(a), tuple(b), tuple(given)
    if (set(a) & set(b)) or (set(a) & set(given)) or (set(b) & set(given)):
        raise AxisError("axis sets a, b, given must be pairwise disjoint")
    mi = entropy(table, a, given) - entropy(table, a, b + given)
    if mi < 0.0:
        if mi < -MI_CLAMP:
            raise InternalConsistencyError(
                f"mutual information {mi} is too negative to be float noise"
            )
        mi = 0.0
    return mi


def lift_inputs(
    p_x1: np.ndarray, p_x2: np.ndarray, kernel: TransitionKernel
) -> JointTable:
    """Joint over (X1, X2, out) from independent input marginals and a kernel
    with input axes (X1, X2)."""
    p_x1 = np.asarray(p_x1, dtype=float)
    p_x2 = np.asarray(p_x2, dtype=float)
    if len(kernel.input_axes) != 2:
        raise AxisError("kernel must have exactly two input axes")
    (n1, k1), (n2, k2) = kernel.input_axes
    if p_x1.shape != (k1,) or p_x2.shape != (k2,):
        raise AxisError(
            f"marginal shapes {p_x1.shape}, {p_x2.shape} do not match kernel "
            f"alphabets ({k1},), ({k2},)"
        )
    probs = p_x1[:, None, None] * p_x2[None, :, None] * kernel.probs
    axes = ((n1, k1), (n2, k2), kernel.output_axis)
    return JointTable(axes, probs)


def cascade_degrade(joint: JointTable, kernel: TransitionKernel) -> JointTable:
    """Extend `joint` with a new axis generated from one existing axis through
    `kernel`, so that (rest) -> input-axis -> new-axis is an exact Markov chain."""
    if len(kernel.input_axes) != 1:
        raise AxisError("degrading kernel must have exactly one input axis")
    (in_name, in_size) = kernel.input_axes[0]
    out_name, out_size = kernel.output_axis
    if out_name in joint.axis_names:
        raise AxisError(f"axis {out_name!r} already present in joint")
    idx = joint.axis_index(in_name)
    if joint.axes[idx][1] != in_size:
        raise AxisError(
            f"kernel input alphabet {in_size} does not match axis "
            f"{in_name!r} of size {joint.axes[idx][1]}"
        )
    # p(..., y, ..., out) = p(..., y, ...) * k(out | y)
    shape = [1] * joint.probs.ndim + [out_size]
    shape[idx] = in_size
    probs = joint.probs[..., None] * kernel.probs.reshape(shape)
    return JointTable(joint.axes + ((out_name, out_size),), probs)


def bsc_kernel(p: float, in_name: str = "Y", out_name: str = "Z") -> TransitionKernel:
    """Binary symmetric channel with crossover probability p."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"crossover probability must be in [0, 1], got {p}")
    probs = np.array([[1.0 - p, p], [p, 1.0 - p]])
    return TransitionKernel(((in_name, 2),), (out_name, 2), probs)


def binary_and_kernel(out_name: str = "Y") -> TransitionKernel:
    """Deterministic Y = X1 AND X2 channel."""
    probs = np.zeros((2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            probs[x1, x2, x1 & x2] = 1.0
    return TransitionKernel((("X1", 2), ("X2", 2)), (out_name, 2), probs)

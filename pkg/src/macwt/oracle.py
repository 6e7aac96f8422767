"""Independent brute-force verifiers.

These checks recompute identities, closed forms, region inclusions, and
per-block equivocations from first principles (full enumeration, generic
table arithmetic) and compare against the main code paths. They are not
imported by those paths.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .coding_sim import (
    SimConfig,
    block_equivocation,
    build_codebooks,
    encode,
    transmit,
)
from .errors import AxisError, DomainError, ResourceCapError
from .info_core import (
    GaussianMacParams,
    JointTable,
    binary_and_kernel,
    binary_entropy,
    bsc_kernel,
    cascade_degrade,
    lift_inputs,
    mutual_information,
)
from .regions import (
    PowerSplit,
    RatePoint,
    binary_cm_region,
    cm_inner,
    cm_outer,
    gaussian_cm_region,
    macwt_noncoop_inner,
    macwt_noncoop_outer,
    membership,
    vertices,
)


@dataclass(frozen=True)
class CheckReport:
    name: str
    instances: int
    max_residual: float
    tolerance: float
    passed: bool
    note: str = ""

    def __post_init__(self):
        if self.max_residual < 0.0:
            raise DomainError("residual must be >= 0")

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        note = f" ({self.note})" if self.note else ""
        return (
            f"{self.name} instances={self.instances} "
            f"max_residual={self.max_residual:.3e} {status}{note}"
        )


def _report(name, instances, residual, tol, note="") -> CheckReport:
    if instances == 0:
        return CheckReport(name, 0, 0.0, tol, True, note="no instances")
    return CheckReport(name, instances, residual, tol, residual <= tol, note)


def _random_joint(rng, sizes: tuple[int, ...], names: tuple[str, ...]) -> JointTable:
    probs = rng.dirichlet(np.ones(int(np.prod(sizes)))).reshape(sizes)
    return JointTable(tuple(zip(names, sizes)), probs)


def csiszar_sum_check(
    n: int, alphabet: int = 2, instances: int = 100, seed: int = 0
) -> CheckReport:
    """Telescoping identity between prefix/suffix conditional informations:
    sum_i I(Z_i; Y^{i-1} | Z_{i+1}^n) = sum_i I(Y_i; Z_{i+1}^n | Y^{i-1}),
    on random joint laws over (Y^n, Z^n)."""
    if n > 4 or alphabet > 3:
        raise DomainError("check limited to n <= 4 and alphabet <= 3")
    ynames = tuple(f"Y{i}" for i in range(1, n + 1))
    znames = tuple(f"Z{i}" for i in range(1, n + 1))
    worst = 0.0
    for k in range(instances):
        rng = np.random.default_rng([seed, k])
        joint = _random_joint(rng, (alphabet,) * (2 * n), ynames + znames)
        lhs = sum(
            mutual_information(
                joint, (znames[i],), ynames[:i], znames[i + 1:]
            )
            for i in range(n)
        )
        rhs = sum(
            mutual_information(
                joint, (ynames[i],), znames[i + 1:], ynames[:i]
            )
            for i in range(n)
        )
        worst = max(worst, abs(lhs - rhs))
    return _report("csiszar_sum", instances, worst, 1e-9)


def _and_bsc_joint(alpha, beta, p, q) -> JointTable:
    """(X1, X2, Y, Y1, Y2): AND main channel, independent BSC degradings with
    crossovers q (user 1's view of the other message, Y1) and p (Y2)."""
    joint = lift_inputs(
        np.array([alpha, 1.0 - alpha]),
        np.array([beta, 1.0 - beta]),
        binary_and_kernel(),
    )
    joint = cascade_degrade(joint, bsc_kernel(q, "Y", "Y1"))
    return cascade_degrade(joint, bsc_kernel(p, "Y", "Y2"))


def binary_formula_check(
    instances: int = 100, seed: int = 0, params=None
) -> CheckReport:
    """Closed forms of the binary AND model against generic table arithmetic:
    I(X1;Y|X2) = (1-beta) h(alpha), I(X1,X2;Y) = h(P(Y=0)), and the two
    degrading-difference expressions. alpha = P(X1=0), beta = P(X2=0)."""
    worst = 0.0
    if params is not None:
        cases = [tuple(params)]
    else:
        rng = np.random.default_rng(seed)
        cases = [
            (rng.random(), rng.random(), 0.5 * rng.random(), 0.5 * rng.random())
            for _ in range(instances)
        ]
    for alpha, beta, p, q in cases:
        joint = _and_bsc_joint(alpha, beta, p, q)
        h = binary_entropy
        y0 = alpha + beta - alpha * beta  # P(Y = 0) under the AND channel
        checks = [
            (mutual_information(joint, ("X1",), ("Y",), ("X2",)),
             (1.0 - beta) * h(alpha)),
            (mutual_information(joint, ("X2",), ("Y",), ("X1",)),
             (1.0 - alpha) * h(beta)),
            (mutual_information(joint, ("X1", "X2"), ("Y",)), h(y0)),
            (mutual_information(joint, ("X2",), ("Y",), ("X1",))
             - mutual_information(joint, ("X2",), ("Y1",), ("X1",)),
             (1.0 - alpha) * (h(beta) + h(q) - h(beta + q - 2.0 * beta * q))),
            (mutual_information(joint, ("X1",), ("Y",), ("X2",))
             - mutual_information(joint, ("X1",), ("Y2",), ("X2",)),
             (1.0 - beta) * (h(alpha) + h(p) - h(alpha + p - 2.0 * alpha * p))),
        ]
        worst = max(worst, max(abs(a - b) for a, b in checks))
    return _report("binary_formulas", len(cases), worst, 1e-12)


def markov_degraded_check(joint: JointTable, tol: float = 1e-10) -> CheckReport:
    """Max over supported (x1, x2, y) cells of |p(z|x1,x2,y) - p(z|y)|."""
    for name in ("X1", "X2", "Y", "Z"):
        if name not in joint.axis_names:
            raise AxisError(f"joint lacks axis {name!r}")
    full = joint.marginal(("X1", "X2", "Y", "Z"))
    denom = full.sum(axis=3, keepdims=True)
    cond = np.divide(full, denom, out=np.zeros_like(full), where=denom > 0)
    yz = joint.marginal(("Y", "Z"))
    y = yz.sum(axis=1, keepdims=True)
    cond_y = np.divide(yz, y, out=np.zeros_like(yz), where=y > 0)
    diff = np.abs(cond - cond_y[None, None, :, :])
    mask = np.broadcast_to(denom > 0, diff.shape)
    residual = float(diff[mask].max()) if mask.any() else 0.0
    return _report("markov_degraded", 1, residual, tol)


def _sample_region_points(region, rng, interior: int = 8):
    """Vertices plus random convex combinations of them."""
    verts = vertices(region)
    points = [v for v in verts]
    if len(verts) >= 2:
        for _ in range(interior):
            lam = rng.dirichlet(np.ones(len(verts)))
            points.append(lam @ verts)
    space = region.space
    return [
        RatePoint({n: max(0.0, float(x)) for n, x in zip(space, pt)})
        for pt in points
    ]


def _inclusion_violations(inner, outer, rng) -> int:
    regions = inner.members if hasattr(inner, "members") else [inner]
    bad = 0
    for member in regions:
        if getattr(member, "flagged_empty", False):
            continue
        for pt in _sample_region_points(member, rng):
            if not membership(pt, outer):
                bad += 1
    return bad


def region_inclusion_check(
    family: str, samples: int = 100, seed: int = 0
) -> CheckReport:
    """Samples inner-region points (vertices plus interior) and asserts outer
    membership, over random parameters of the given model family."""
    rng = np.random.default_rng(seed)
    violations = 0
    if family == "binary-CM":
        for _ in range(samples):
            p, q = 0.5 * rng.random(2)
            violations += _inclusion_violations(
                binary_cm_region(p, q, "inner"), binary_cm_region(p, q, "outer"),
                rng,
            )
    elif family == "discrete-CM":
        for _ in range(samples):
            joint = _and_bsc_joint(
                rng.random(), rng.random(), 0.5 * rng.random(), 0.5 * rng.random()
            )
            violations += _inclusion_violations(
                cm_inner(joint), cm_outer(joint), rng
            )
    elif family == "gaussian-CM":
        params = GaussianMacParams(100.0, 200.0, 1.0, 1.0, 1.0)
        for _ in range(samples):
            split = PowerSplit(rng.random(), rng.random())
            violations += _inclusion_violations(
                gaussian_cm_region(params, split, "inner"),
                gaussian_cm_region(params, split, "outer"),
                rng,
            )
    elif family == "noncoop-WT":
        for _ in range(samples):
            a, b = rng.random(2)
            p = 0.5 * rng.random()
            args = (
                np.array([a, 1.0 - a]),
                np.array([b, 1.0 - b]),
                binary_and_kernel(),
                bsc_kernel(p),
            )
            violations += _inclusion_violations(
                macwt_noncoop_inner(*args), macwt_noncoop_outer(*args), rng
            )
    else:
        raise DomainError(f"unknown model family {family!r}")
    return _report(
        f"region_inclusion[{family}]", samples, float(violations), 0.0,
        note="violations counted as residual",
    )


def exhaustive_equivocation(config: SimConfig, codebooks):
    """Exact per-observation entropies and their mean, by enumerating every
    (message pair, within-bin choice, noise word) outcome.

    Returns (expectation, {z-tuple: H(W1, W2 | Z=z)}).
    """
    if config.mode != "non-cooperative":
        raise DomainError("the exhaustive oracle covers non-cooperative mode")
    b1, b2 = codebooks["x1"], codebooks["x2"]
    total_words = len(b1.words) + len(b2.words)
    if config.n > 3 or config.m1 > 2 or config.m2 > 2 or total_words > 8:
        raise ResourceCapError(
            "exhaustive oracle limited to N <= 3, 2 messages/user, 8 codewords"
        )
    n, p = config.n, config.p
    prior = 1.0 / (config.m1 * config.m2)
    # p(w1, w2, z) by direct summation over all discrete outcomes
    dist: dict[tuple, dict[tuple[int, int], float]] = {}
    for w1, w2 in itertools.product(range(config.m1), range(config.m2)):
        mem1, mem2 = b1.bin_members(w1), b2.bin_members(w2)
        for i1, i2 in itertools.product(mem1, mem2):
            y = b1.words[i1] & b2.words[i2]
            pick = prior / (len(mem1) * len(mem2))
            for noise in itertools.product((0, 1), repeat=n):
                noise = np.array(noise)
                w = noise.sum()
                pz = (p ** w) * ((1.0 - p) ** (n - w))
                if pz == 0.0:
                    continue
                z = tuple((y ^ noise).tolist())
                dist.setdefault(z, {})
                key = (w1, w2)
                dist[z][key] = dist[z].get(key, 0.0) + pick * pz
    expectation = 0.0
    per_z = {}
    for z, law in dist.items():
        pz = sum(law.values())
        post = np.array(list(law.values())) / pz
        hz = float(-(post * np.log2(post)).sum())
        per_z[z] = hz
        expectation += pz * hz
    return expectation, per_z


def exhaustive_equivocation_check(config: SimConfig) -> CheckReport:
    """Compares coding_sim.block_equivocation per observation against the
    full-enumeration oracle, and its Monte-Carlo average against the oracle
    expectation within 3 standard errors."""
    books = build_codebooks(config, np.random.default_rng([config.seed, 0, 0]))
    expectation, per_z = exhaustive_equivocation(config, books)
    worst = 0.0
    for z, hz in per_z.items():
        got = block_equivocation(np.array(z), config, books)
        worst = max(worst, abs(got - hz))
    note = ""
    mc_ok = True
    if config.trials > 0:
        vals = np.zeros(config.trials)
        rng_msgs = [np.random.default_rng([config.seed, 1, t]) for t in range(config.trials)]
        for t, rng in enumerate(rng_msgs):
            w1 = int(rng.integers(0, config.m1))
            w2 = int(rng.integers(0, config.m2))
            x1, x2 = encode(w1, w2, config, books, rng)
            _, z = transmit(x1, x2, config.p, rng)
            vals[t] = block_equivocation(z, config, books)
        se = vals.std(ddof=1) / math.sqrt(config.trials) if config.trials > 1 else 0.0
        gap = abs(vals.mean() - expectation)
        mc_ok = gap <= 3.0 * se + 1e-12
        note = f"mc_gap={gap:.3e} 3se={3 * se:.3e}"
    report = _report("exhaustive_equivocation", 1 + config.trials, worst, 1e-12, note)
    if not mc_ok:
        report = CheckReport(
            report.name, report.instances, report.max_residual,
            report.tolerance, False, note=report.note + " mc-out-of-band",
        )
    return report

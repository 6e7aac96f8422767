"""Command-line front end: channel-spec ingestion, region/curve computation,
simulation, verification, and byte-stable CSV emission.

Spec files are flat `key = value` documents (with `#` comments); explicit
transition tables appear as `kernel: <name> <dim sizes...>` followed by the
row-major entries. All data goes to standard output, diagnostics to standard
error. Exit codes: 0 success/member, 1 verification failure/non-member,
2 input error, 3 infeasibility, 4 resource cap.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .coding_sim import SimConfig, run_simulation
from .errors import (
    DomainError,
    InfeasibleRateError,
    MacwtError,
    MarkovViolationError,
    ResourceCapError,
)
from .info_core import (
    GaussianMacParams,
    TransitionKernel,
    binary_and_kernel,
    bsc_kernel,
    cascade_degrade,
    lift_inputs,
)
from .regions import (
    MacWiretapChannel,
    PowerSplit,
    RatePoint,
    RegionUnion,
    binary_cm_region,
    binary_cm_secrecy,
    binary_macwt_coop_region,
    binary_macwt_coop_secrecy,
    binary_macwt_noncoop_secrecy,
    binding_constraint,
    cm_inner,
    cm_outer,
    cm_secrecy,
    frontier_sweep,
    gaussian_beta_star,
    gaussian_cm_region,
    gaussian_cm_secrecy,
    gaussian_secrecy_curve,
    macwt_coop_search,
    macwt_noncoop_inner,
    macwt_noncoop_outer,
    membership,
    noncoop_secrecy,
    substitute,
    SECRECY_SPACE,
)
from . import oracle

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_CAP = 4

MODELS = (
    "degraded-mac-cm",
    "gaussian-cm",
    "binary-cm",
    "macwt-coop",
    "macwt-coop-degraded",
    "macwt-noncoop",
    "binary-macwt-coop",
    "binary-macwt-noncoop",
)

_ALLOWED_KEYS = {
    "degraded-mac-cm": {"alpha", "beta", "p", "q"},
    "gaussian-cm": {"P1", "P2", "N0", "N1", "N2", "alpha", "beta"},
    "binary-cm": {"p", "q"},
    "macwt-coop": {"p", "trials", "seed", "v_cap"},
    "macwt-coop-degraded": {"p", "trials", "seed", "v_cap"},
    "macwt-noncoop": {"alpha", "beta", "p"},
    "binary-macwt-coop": {"p"},
    "binary-macwt-noncoop": {"p", "alpha", "beta"},
}

_ALLOWED_KERNELS = {
    "degraded-mac-cm": {"main", "degrading1", "degrading2"},
    "macwt-coop": {"main", "degrading"},
    "macwt-coop-degraded": {"main", "degrading"},
    "macwt-noncoop": {"main", "degrading"},
}


class SpecError(DomainError):
    """Malformed or invalid channel-spec file."""


def fmt(x: float) -> str:
    """12 significant digits, lowercase exponent; the byte-stable contract."""
    return format(float(x), ".12g")


def parse_spec(path: str) -> dict:
    """Parse a channel-spec file into {'model', 'params', 'kernels'}."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc}") from None
    params: dict[str, float] = {}
    kernels: dict[str, np.ndarray] = {}
    model = None
    lines = raw.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        if line.startswith("kernel:"):
            head = line[len("kernel:"):].split()
            if len(head) < 2:
                raise SpecError(f"bad kernel header: {line!r}")
            name = head[0]
            try:
                shape = tuple(int(t) for t in head[1:])
            except ValueError:
                raise SpecError(f"non-integer kernel shape in {line!r}") from None
            need = int(np.prod(shape))
            values: list[float] = []
            while len(values) < need and i < len(lines):
                body = lines[i].split("#", 1)[0].strip()
                i += 1
                if not body:
                    continue
                try:
                    values.extend(float(t) for t in body.split())
                except ValueError:
                    raise SpecError(f"non-numeric kernel entry in {body!r}") from None
            if len(values) != need:
                raise SpecError(
                    f"kernel {name!r} needs {need} entries, got {len(values)}"
                )
            kernels[name] = np.array(values).reshape(shape)
            continue
        if "=" not in line:
            raise SpecError(f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "model":
            if value not in MODELS:
                raise SpecError(f"unknown model {value!r}")
            model = value
        else:
            try:
                params[key] = float(value)
            except ValueError:
                raise SpecError(f"non-numeric value for {key!r}: {value!r}") from None
    if model is None:
        raise SpecError("spec file does not declare a model")
    unknown = set(params) - _ALLOWED_KEYS[model]
    if unknown:
        raise SpecError(f"unknown keys for model {model}: {sorted(unknown)}")
    bad_kernels = set(kernels) - _ALLOWED_KERNELS.get(model, set())
    if bad_kernels:
        raise SpecError(f"unknown kernels for model {model}: {sorted(bad_kernels)}")
    return {"model": model, "params": params, "kernels": kernels}


def _input_marginals(params):
    alpha = params.get("alpha", 0.5)
    beta = params.get("beta", 0.5)
    return np.array([alpha, 1.0 - alpha]), np.array([beta, 1.0 - beta])


def _main_kernel(spec) -> TransitionKernel:
    if "main" in spec["kernels"]:
        probs = spec["kernels"]["main"]
        return TransitionKernel(
            (("X1", probs.shape[0]), ("X2", probs.shape[1])),
            ("Y", probs.shape[2]),
            probs,
        )
    return binary_and_kernel()


def _degrading_kernel(spec, name="degrading", out="Z", default_p=None):
    if name in spec["kernels"]:
        probs = spec["kernels"][name]
        return TransitionKernel((("Y", probs.shape[0]),), (out, probs.shape[1]), probs)
    if default_p is None:
        raise SpecError(f"model {spec['model']} needs kernel {name!r} or key 'p'")
    return bsc_kernel(default_p, "Y", out)


def _cm_joint(spec):
    p_x1, p_x2 = _input_marginals(spec["params"])
    joint = lift_inputs(p_x1, p_x2, _main_kernel(spec))
    q = spec["params"].get("q")
    p = spec["params"].get("p")
    joint = cascade_degrade(joint, _degrading_kernel(spec, "degrading1", "Y1", q))
    return cascade_degrade(joint, _degrading_kernel(spec, "degrading2", "Y2", p))


def _gaussian_params(params) -> GaussianMacParams:
    try:
        return GaussianMacParams(
            params["P1"], params["P2"], params["N0"], params["N1"], params["N2"]
        )
    except KeyError as exc:
        raise SpecError(f"gaussian-cm spec missing key {exc}") from None


def _wiretap_channel(spec, default_p) -> MacWiretapChannel:
    return MacWiretapChannel.from_kernels(
        _main_kernel(spec), _degrading_kernel(spec, "degrading", "Z", default_p)
    )


def build_region(spec, bound: str, secrecy: bool):
    """Region (or union) for `cmd_region`/`cmd_point`: the secrecy-substituted
    set when requested, otherwise the full-dimensional equivocation region."""
    model, params = spec["model"], spec["params"]
    if model == "binary-cm":
        p, q = params.get("p", 0.0), params.get("q", 0.0)
        return binary_cm_secrecy(p, q, bound) if secrecy else binary_cm_region(p, q, bound)
    if model == "degraded-mac-cm":
        joint = _cm_joint(spec)
        if secrecy:
            return cm_secrecy(joint, bound)
        return cm_inner(joint) if bound == "inner" else cm_outer(joint)
    if model == "gaussian-cm":
        split = PowerSplit(params.get("alpha", 1.0), params.get("beta", 1.0))
        gp = _gaussian_params(params)
        if secrecy:
            return gaussian_cm_secrecy(gp, split, bound)
        return gaussian_cm_region(gp, split, bound)
    if model == "binary-macwt-coop":
        p = params.get("p", 0.0)
        return binary_macwt_coop_secrecy(p) if secrecy else binary_macwt_coop_region(p)
    if model == "binary-macwt-noncoop":
        if not secrecy:
            raise SpecError(
                "binary-macwt-noncoop ships closed-form secrecy regions only; "
                "pass --secrecy or use macwt-noncoop with explicit inputs"
            )
        return binary_macwt_noncoop_secrecy(params.get("p", 0.0), bound)
    if model == "macwt-noncoop":
        p_x1, p_x2 = _input_marginals(params)
        args = (
            p_x1, p_x2, _main_kernel(spec),
            _degrading_kernel(spec, "degrading", "Z", params.get("p")),
        )
        reg = macwt_noncoop_inner(*args) if bound == "inner" else macwt_noncoop_outer(*args)
        return noncoop_secrecy(reg) if secrecy else reg
    if model in ("macwt-coop", "macwt-coop-degraded"):
        channel = _wiretap_channel(spec, params.get("p"))
        union = macwt_coop_search(
            channel,
            trials=int(params.get("trials", 2000)),
            seed=int(params.get("seed", 0)),
            degraded=(model == "macwt-coop-degraded"),
            v_cap=int(params.get("v_cap", 16)),
        )
        return noncoop_secrecy(union) if secrecy else union
    raise SpecError(f"model {model} not supported here")


def _zero_equivocation_slice(region):
    """Project a higher-dimensional region to (R1, R2) by pinning every
    equivocation coordinate to 0 (which only relaxes the constraints)."""
    mapping = {"Re": {}, "Re1": {}, "Re2": {}}
    if isinstance(region, RegionUnion):
        return RegionUnion(
            tuple(
                substitute(m, mapping, SECRECY_SPACE) for m in region.members
            ),
            meta=dict(region.meta),
        )
    return substitute(region, mapping, SECRECY_SPACE)


def _parse_grid(text: str, upper_cb):
    """A grid flag is either an integer count (uniform over the feasible
    range) or an explicit comma-separated list of values."""
    text = text.strip()
    if not text:
        raise SpecError("empty grid")
    if "," not in text and "." not in text and text.isdigit():
        count = int(text)
        if count < 1:
            raise SpecError("grid count must be >= 1")
        upper = upper_cb()
        # unique keeps the CSV's strictly-increasing R2 contract when the
        # feasible range is degenerate
        return [float(x) for x in np.unique(np.linspace(0.0, upper, count))]
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise SpecError(f"bad grid {text!r}") from None
    if not values:
        raise SpecError("empty grid")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise SpecError("grid values must be strictly increasing")
    return values


def _r2_upper(region) -> float:
    """Largest feasible R2 of a 2-D region or union (taking R1 = 0)."""
    members = region.members if isinstance(region, RegionUnion) else [region]
    best = 0.0
    for m in members:
        if m.flagged_empty:
            continue
        cap = float("inf")
        for con in m.constraints:
            a2 = con.coeffs.get("R2", 0.0)
            if a2 > 0.0 and con.coeffs.get("R1", 0.0) >= 0.0:
                cap = min(cap, con.bound / a2)
        if np.isfinite(cap):
            best = max(best, cap)
    return best


def cmd_curve(args) -> int:
    spec = parse_spec(args.spec)
    if spec["model"] != "gaussian-cm":
        raise SpecError("cmd_curve requires a gaussian-cm spec")
    params = _gaussian_params(spec["params"])

    def feasible_top():
        from .regions import _beta_rate

        return _beta_rate(params, 1.0)

    grid = _parse_grid(args.r2_grid, feasible_top)
    alpha_points = int(args.alpha_grid)
    bounds = ("inner", "outer") if args.bound == "both" else (args.bound,)
    curves = {
        b: gaussian_secrecy_curve(params, b, grid, alpha_points) for b in bounds
    }
    header = "R2," + ",".join(f"C_{b}" for b in bounds)
    lines = [header]
    for idx, r2 in enumerate(grid):
        row = [fmt(r2)] + [fmt(curves[b].samples[idx][1]) for b in bounds]
        lines.append(",".join(row))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_region(args) -> int:
    spec = parse_spec(args.spec)
    region = build_region(spec, args.bound, args.secrecy)
    if region.space != SECRECY_SPACE:
        region = _zero_equivocation_slice(region)
    grid = _parse_grid(args.sweep_grid, lambda: _r2_upper(region))
    rows = frontier_sweep(region, grid)
    lines = ["R2,R1_max"] + [f"{fmt(r2)},{fmt(r1)}" for r2, r1 in rows]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_point(args) -> int:
    spec = parse_spec(args.spec)
    try:
        values = [float(t) for t in args.point.split(",")]
    except ValueError:
        raise SpecError(f"malformed point {args.point!r}") from None
    if len(values) == 2:
        names = ("R1", "R2")
    elif len(values) == 3:
        names = ("R1", "R2", "Re")
    elif len(values) == 4:
        names = ("R1", "R2", "Re1", "Re2")
    else:
        raise SpecError("point must have 2, 3, or 4 coordinates")
    point = RatePoint(dict(zip(names, values)))
    region = build_region(spec, args.bound, secrecy=(len(values) == 2))
    if membership(point, region):
        sys.stdout.write("member\n")
        return EXIT_OK
    if isinstance(region, RegionUnion):
        sys.stdout.write("non-member\n")
    else:
        label = binding_constraint(point, region)
        sys.stdout.write(f"non-member: violates {label}\n")
    return EXIT_FAIL


def cmd_simulate(args) -> int:
    spec = parse_spec(args.spec)
    model, params = spec["model"], spec["params"]
    if model == "binary-macwt-coop":
        mode = "cooperative"
    elif model == "binary-macwt-noncoop":
        mode = "non-cooperative"
    else:
        raise SpecError("cmd_simulate requires a binary-macwt-coop or "
                        "binary-macwt-noncoop spec")
    config = SimConfig(
        n=args.N,
        r1=args.R1,
        r2=args.R2,
        gamma=args.gamma,
        mode=args.mode or mode,
        p=params.get("p", 0.0),
        alpha=params.get("alpha", 0.5),
        beta=params.get("beta", 0.5),
        trials=args.trials,
        seed=args.seed,
    )
    report = run_simulation(config)
    out = [
        f"mode: {config.mode}",
        f"blocklength: {config.n}",
        f"realized_r1: {fmt(report.realized_r1)}",
        f"realized_r2: {fmt(report.realized_r2)}",
        f"trials: {report.trials}",
    ]
    if report.empty:
        out.append("estimates: none (no trials)")
    else:
        lo, hi = report.pe_interval
        out += [
            f"pe: {fmt(report.pe)}",
            f"pe_wilson95: [{fmt(lo)}, {fmt(hi)}]",
            f"delta_hat: {fmt(report.delta_hat)}",
            f"delta_se: {fmt(report.delta_se)}",
        ]
    out += [
        f"codebook_policy: {report.codebook_policy}",
        f"sampling_note: {report.sampling_note}",
    ]
    sys.stdout.write("\n".join(out) + "\n")
    if args.per_trial and not report.empty:
        rows = ["trial,decoded_correct,block_equivocation"]
        for t in range(report.trials):
            rows.append(
                f"{t},{int(report.correct[t])},{fmt(report.equivocations[t])}"
            )
        sys.stdout.write("\n".join(rows) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    n_inst = args.instances
    if args.suite in ("all", "csiszar"):
        half = max(n_inst // 2, 0)
        reports.append(oracle.csiszar_sum_check(2, 2, half, args.seed))
        reports.append(oracle.csiszar_sum_check(3, 2, n_inst - half, args.seed + 1))
    if args.suite in ("all", "binary"):
        reports.append(oracle.binary_formula_check(n_inst, args.seed))
    if args.suite in ("all", "inclusion"):
        scaled = max(n_inst // 4, 1) if n_inst else 0
        for family in ("binary-CM", "discrete-CM", "gaussian-CM", "noncoop-WT"):
            reports.append(oracle.region_inclusion_check(family, scaled, args.seed))
    if args.suite in ("all", "equivocation"):
        config = SimConfig(
            n=2, r1=0.5, r2=0.5, p=0.3, trials=min(n_inst * 10, 2000), seed=args.seed
        )
        reports.append(oracle.exhaustive_equivocation_check(config))
    for rep in reports:
        sys.stdout.write(rep.line() + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macwt",
        description="Rate regions and random-binning simulation for two-user "
        "channels with confidential messages and wiretappers.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for interface stability; execution is sequential and "
        "outputs never depend on this value",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_curve = sub.add_parser("curve", help="Gaussian secrecy-capacity curves as CSV")
    p_curve.add_argument("spec")
    p_curve.add_argument("--r2-grid", default="200")
    p_curve.add_argument("--alpha-grid", default="512")
    p_curve.add_argument("--bound", choices=("inner", "outer", "both"), default="both")
    p_curve.set_defaults(func=cmd_curve)

    p_region = sub.add_parser("region", help="boundary R1_max(R2) of a region as CSV")
    p_region.add_argument("spec")
    p_region.add_argument("--sweep-grid", default="201")
    p_region.add_argument("--bound", choices=("inner", "outer"), default="inner")
    p_region.add_argument("--secrecy", action="store_true")
    p_region.set_defaults(func=cmd_region)

    p_point = sub.add_parser("point", help="membership verdict for a rate point")
    p_point.add_argument("spec")
    p_point.add_argument("--point", required=True, help="comma-separated coordinates")
    p_point.add_argument("--bound", choices=("inner", "outer"), default="inner")
    p_point.set_defaults(func=cmd_point)

    p_sim = sub.add_parser("simulate", help="random-binning Monte-Carlo run")
    p_sim.add_argument("spec")
    p_sim.add_argument("--N", type=int, required=True)
    p_sim.add_argument("--R1", type=float, required=True)
    p_sim.add_argument("--R2", type=float, required=True)
    p_sim.add_argument("--gamma", type=float, default=0.0)
    p_sim.add_argument("--trials", type=int, default=1000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--mode", choices=("cooperative", "non-cooperative"))
    p_sim.add_argument("--per-trial", action="store_true")
    p_sim.set_defaults(func=cmd_simulate)

    p_verify = sub.add_parser("verify", help="run the brute-force check suites")
    p_verify.add_argument(
        "--suite",
        choices=("all", "csiszar", "binary", "inclusion", "equivocation"),
        default="all",
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--instances", type=int, default=100)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InfeasibleRateError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecError, DomainError, MarkovViolationError, MacwtError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def console_entry():  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

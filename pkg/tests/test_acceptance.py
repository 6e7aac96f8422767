"""Acceptance gate: nine end-to-end criteria, each printing one pass/fail
line (run pytest with -s to see them on success)."""

import time

import numpy as np

from macwt.cli import EXIT_OK, main
from macwt.coding_sim import SimConfig, block_equivocation, build_codebooks, run_simulation
from macwt.info_core import (
    GaussianMacParams,
    binary_and_kernel,
    binary_entropy,
    bsc_kernel,
    half_log1p_ratio,
    inverse_binary_entropy,
)
from macwt.oracle import (
    binary_formula_check,
    csiszar_sum_check,
    exhaustive_equivocation,
    region_inclusion_check,
)
from macwt.regions import (
    MacWiretapChannel,
    binary_cm_secrecy,
    binary_macwt_coop_region,
    binary_macwt_noncoop_secrecy,
    gaussian_beta_star,
    gaussian_secrecy_curve,
    macwt_coop_search,
    vertices,
)

H_03 = 0.88129089923069261822  # frozen extended-precision h(0.3)


def _verdict(num: int, desc: str, ok: bool, elapsed: float, limit: float):
    in_time = elapsed < limit
    status = "PASS" if (ok and in_time) else "FAIL"
    print(f"acceptance {num} [{desc}]: {status} ({elapsed:.2f}s / limit {limit:.0f}s)")
    assert ok, f"criterion {num} failed its checks"
    assert in_time, f"criterion {num} exceeded {limit}s ({elapsed:.2f}s)"


def _region_rows(spec_path, bound, grid):
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(
            ["region", str(spec_path), "--secrecy", "--bound", bound,
             "--sweep-grid", grid]
        )
    assert code == EXIT_OK
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "R2,R1_max"
    return [tuple(float(t) for t in ln.split(",")) for ln in lines[1:]]


def test_acceptance_1_binary_cm_boundaries(tmp_path):
    t0 = time.perf_counter()
    p = inverse_binary_entropy(0.8)
    q = inverse_binary_entropy(0.6)
    spec = tmp_path / "cm.spec"
    spec.write_text(f"model = binary-cm\np = {p!r}\nq = {q!r}\n")
    grid = ",".join(str(x) for x in np.arange(0.0, 0.81, 0.05))
    ok = True
    inner = _region_rows(spec, "inner", grid)
    for r2, r1 in inner:
        ok &= abs(r1 - max(0.0, 0.4 - r2)) < 1e-9
    ok &= max(r2 for r2, _ in inner) <= 0.4 + 1e-9  # rows stop where infeasible
    outer = _region_rows(spec, "outer", grid)
    for r2, r1 in outer:
        ok &= abs(r1 - min(0.6, 1.0 - r2)) < 1e-9
    ok &= abs(max(r2 for r2, _ in outer) - 0.8) < 1e-9  # clipped at R2 <= h(p)
    _verdict(1, "binary CM secrecy boundaries", ok, time.perf_counter() - t0, 1.0)


def test_acceptance_2_binary_cm_collapse_at_half():
    t0 = time.perf_counter()
    mac_vertices = {(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)}
    ok = True
    for bound in ("inner", "outer"):
        verts = vertices(binary_cm_secrecy(0.5, 0.5, bound))
        got = {tuple(np.round(v, 12)) for v in verts}
        ok &= got == mac_vertices
    _verdict(2, "binary CM collapse at p=q=1/2", ok, time.perf_counter() - t0, 1.0)


def test_acceptance_3_gaussian_curves():
    t0 = time.perf_counter()
    base = GaussianMacParams(100.0, 200.0, 1.0, 1.0, 1.0)
    top = half_log1p_ratio(200.0, 1.0) - half_log1p_ratio(200.0, 2.0)
    grid = np.linspace(0.0, top, 200)
    ok = True
    prev = {"inner": None, "outer": None}
    for n1, n2 in ((1.0, 1.0), (4.0, 4.0), (16.0, 16.0)):
        params = GaussianMacParams(100.0, 200.0, 1.0, n1, n2)
        for bound in ("inner", "outer"):
            curve = gaussian_secrecy_curve(params, bound, grid, 512)
            vals = np.array([s[1] for s in curve.samples])
            if bound == "inner":
                inner_vals = vals
            else:
                ok &= bool(np.all(inner_vals <= vals + 1e-9))
            if prev[bound] is not None:
                ok &= bool(np.all(vals >= prev[bound] - 1e-9))  # noise enlarges
            prev[bound] = vals
        for r2 in grid:
            bstar = gaussian_beta_star(float(r2), params)
            f = half_log1p_ratio(bstar * 200.0, 1.0) - half_log1p_ratio(
                bstar * 200.0, 1.0 + n1
            )
            ok &= abs(f - r2) <= 1e-10
    _verdict(3, "Gaussian secrecy curves", ok, time.perf_counter() - t0, 10.0)


def test_acceptance_4_binary_macwt_regions():
    t0 = time.perf_counter()
    region = binary_macwt_coop_region(0.3)
    re_cap = next(c.bound for c in region.constraints if c.label == "Re<=h(p)")
    ok = abs(re_cap - H_03) < 1e-9
    vi = vertices(binary_macwt_noncoop_secrecy(0.3, "inner"))
    vo = vertices(binary_macwt_noncoop_secrecy(0.3, "outer"))
    si = sorted(tuple(np.round(v, 12)) for v in vi)
    so = sorted(tuple(np.round(v, 12)) for v in vo)
    ok &= si == so
    ok &= all(
        max(abs(a - b) for a, b in zip(x, y)) < 1e-12 for x, y in zip(si, so)
    )
    _verdict(4, "binary MAC-WT closed forms", ok, time.perf_counter() - t0, 1.0)


def test_acceptance_5_cooperative_search():
    t0 = time.perf_counter()
    channel = MacWiretapChannel.from_kernels(binary_and_kernel(), bsc_kernel(0.3))
    union = macwt_coop_search(channel, trials=10_000, seed=0, degraded=True, v_cap=16)
    best = union.meta["secrecy_sum"]
    ok = abs(best - binary_entropy(0.3)) <= 0.02 and best <= binary_entropy(0.3) + 1e-9
    _verdict(5, "auxiliary search rediscovers h(p)", ok, time.perf_counter() - t0, 60.0)


def test_acceptance_6_simulator_half_noise(tmp_path):
    import io
    from contextlib import redirect_stdout

    t0 = time.perf_counter()
    spec = tmp_path / "wt.spec"
    spec.write_text("model = binary-macwt-noncoop\np = 0.5\n")
    ok = True
    for n in (4, 8):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(
                ["simulate", str(spec), "--N", str(n), "--R1", "0.4", "--R2",
                 "0.3", "--trials", "60", "--seed", "3"]
            )
        ok &= code == EXIT_OK
        fields = dict(
            ln.split(": ", 1) for ln in buf.getvalue().strip().split("\n")
            if ": " in ln
        )
        target = float(fields["realized_r1"]) + float(fields["realized_r2"])
        ok &= abs(float(fields["delta_hat"]) - target) < 1e-12
        ok &= float(fields["delta_se"]) == 0.0
        rep = run_simulation(
            SimConfig(n=n, r1=0.4, r2=0.3, p=0.5, trials=60, seed=3)
        )
        ok &= np.ptp(rep.equivocations) == 0.0 and rep.delta_se == 0.0
    _verdict(6, "simulator exact at p=1/2", ok, time.perf_counter() - t0, 5.0)


def test_acceptance_7_simulator_vs_exhaustive_oracle():
    t0 = time.perf_counter()
    config = SimConfig(
        n=2, r1=0.5, r2=0.5, p=0.3, exponent1=1.0, exponent2=1.0,
        trials=10_000, seed=12,
    )
    books = build_codebooks(config, np.random.default_rng([config.seed, 0, 0]))
    expectation, per_z = exhaustive_equivocation(config, books)
    ok = True
    for z, hz in per_z.items():
        got = block_equivocation(np.array(z), config, books)
        ok &= abs(got - hz) <= 1e-12
    rep = run_simulation(config)
    se = rep.equivocations.std(ddof=1) / np.sqrt(config.trials)
    ok &= abs(rep.equivocations.mean() - expectation) <= 3.0 * se + 1e-12
    _verdict(7, "simulator vs exhaustive oracle", ok, time.perf_counter() - t0, 30.0)


def test_acceptance_8_identity_suite():
    t0 = time.perf_counter()
    ok = True
    for n, seed in ((2, 0), (3, 1)):
        rep = csiszar_sum_check(n, alphabet=2, instances=100, seed=seed)
        ok &= rep.passed and rep.max_residual <= 1e-9
    rep = binary_formula_check(instances=100, seed=2)
    ok &= rep.passed and rep.max_residual <= 1e-12
    rep = region_inclusion_check("binary-CM", samples=100, seed=3)
    ok &= rep.passed and rep.max_residual == 0.0
    rep = region_inclusion_check("gaussian-CM", samples=64, seed=4)
    ok &= rep.passed and rep.max_residual == 0.0
    _verdict(8, "identity and inclusion suite", ok, time.perf_counter() - t0, 30.0)


def test_acceptance_9_reproducibility(tmp_path):
    import io
    from contextlib import redirect_stdout

    t0 = time.perf_counter()
    cm = tmp_path / "cm.spec"
    cm.write_text("model = binary-cm\np = 0.3\nq = 0.2\n")
    g = tmp_path / "g.spec"
    g.write_text(
        "model = gaussian-cm\nP1 = 100\nP2 = 200\nN0 = 1\nN1 = 1\nN2 = 1\n"
    )
    wt = tmp_path / "wt.spec"
    wt.write_text("model = binary-macwt-noncoop\np = 0.3\n")
    commands = [
        ["region", str(cm), "--secrecy", "--sweep-grid", "33"],
        ["curve", str(g), "--r2-grid", "10", "--alpha-grid", "64"],
        ["simulate", str(wt), "--N", "6", "--R1", "0.5", "--R2", "0.25",
         "--trials", "40", "--seed", "7", "--per-trial"],
    ]
    ok = True
    for cmd in commands:
        outs = []
        for threads in ("1", "8"):
            buf = io.StringIO()
            with redirect_stdout(buf):
                code = main(["--threads", threads] + cmd)
            ok &= code == EXIT_OK
            outs.append(buf.getvalue())
        ok &= outs[0] == outs[1] and len(outs[0]) > 0
    _verdict(9, "byte-identical reproducibility", ok, time.perf_counter() - t0, 30.0)

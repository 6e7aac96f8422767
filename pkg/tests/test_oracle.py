import numpy as np
import pytest

from macwt.coding_sim import SimConfig, block_equivocation, build_codebooks
from macwt.errors import AxisError, DomainError, ResourceCapError
from macwt.info_core import (
    JointTable,
    binary_and_kernel,
    bsc_kernel,
    cascade_degrade,
    lift_inputs,
)
from macwt.oracle import (
    binary_formula_check,
    csiszar_sum_check,
    exhaustive_equivocation,
    exhaustive_equivocation_check,
    markov_degraded_check,
    region_inclusion_check,
)


def test_csiszar_trivial_cases():
    # n=1: both telescoping sums have empty conditioning windows
    rep = csiszar_sum_check(1, alphabet=2, instances=5, seed=0)
    assert rep.passed and rep.max_residual < 1e-12
    with pytest.raises(DomainError):
        csiszar_sum_check(5)


def test_csiszar_random_instances():
    for n in (2, 3):
        rep = csiszar_sum_check(n, alphabet=2, instances=50, seed=n)
        assert rep.passed
        assert rep.max_residual <= 1e-9
    rep3 = csiszar_sum_check(2, alphabet=3, instances=20, seed=9)
    assert rep3.passed


def test_csiszar_deterministic_in_seed():
    a = csiszar_sum_check(2, 2, 30, seed=4)
    b = csiszar_sum_check(2, 2, 30, seed=4)
    assert a.max_residual == b.max_residual


def test_binary_formula_edges():
    # beta = 1: X2 = 0 forces Y = 0, so I(X1;Y|X2) = 0
    rep = binary_formula_check(params=(0.3, 1.0, 0.2, 0.1))
    assert rep.passed
    rep2 = binary_formula_check(params=(0.5, 0.0, 0.2, 0.1))
    assert rep2.passed


def test_binary_formula_random():
    rep = binary_formula_check(instances=50, seed=1)
    assert rep.passed
    assert rep.max_residual <= 1e-12


def test_markov_degraded_check():
    joint = lift_inputs(
        np.array([0.4, 0.6]), np.array([0.7, 0.3]), binary_and_kernel()
    )
    good = cascade_degrade(joint, bsc_kernel(0.25, "Y", "Z"))
    rep = markov_degraded_check(good)
    assert rep.passed and rep.max_residual <= 1e-14
    # Z copies X1 directly: not degraded through Y
    bad = cascade_degrade(joint, bsc_kernel(0.0, "X1", "Z"))
    rep_bad = markov_degraded_check(bad)
    assert not rep_bad.passed
    assert rep_bad.max_residual >= 0.1
    with pytest.raises(AxisError):
        markov_degraded_check(joint)


def test_markov_check_deterministic_function_passes():
    # Y deterministic in (X1, X2) and Z = Y
    joint = lift_inputs(
        np.array([0.5, 0.5]), np.array([0.5, 0.5]), binary_and_kernel()
    )
    ident = cascade_degrade(joint, bsc_kernel(0.0, "Y", "Z"))
    assert markov_degraded_check(ident).passed


def test_region_inclusion_families():
    for family in ("binary-CM", "discrete-CM", "gaussian-CM", "noncoop-WT"):
        rep = region_inclusion_check(family, samples=8, seed=3)
        assert rep.passed, family
        assert rep.max_residual == 0.0
    with pytest.raises(DomainError):
        region_inclusion_check("unknown", 1, 0)


def test_exhaustive_equivocation_trivial_values():
    # p = 0.5: the wiretap word carries nothing
    cfg = SimConfig(n=2, r1=0.5, r2=0.5, p=0.5, seed=0)
    books = build_codebooks(cfg, np.random.default_rng([0, 0, 0]))
    expect, per_z = exhaustive_equivocation(cfg, books)
    assert abs(expect - 2.0) < 1e-12
    assert all(abs(h - 2.0) < 1e-12 for h in per_z.values())


def test_exhaustive_equivocation_matches_sim():
    cfg = SimConfig(n=2, r1=0.5, r2=0.5, p=0.3, trials=500, seed=8)
    rep = exhaustive_equivocation_check(cfg)
    assert rep.passed
    assert rep.max_residual <= 1e-12


def test_exhaustive_equivocation_cap():
    cfg = SimConfig(n=3, r1=1.0, r2=1.0, p=0.3)
    books = build_codebooks(cfg, np.random.default_rng(0))
    with pytest.raises(ResourceCapError):
        exhaustive_equivocation(cfg, books)


def test_report_line_format():
    rep = csiszar_sum_check(2, 2, 3, seed=0)
    line = rep.line()
    assert line.startswith("csiszar_sum instances=3 max_residual=")
    assert line.endswith("pass")
    vacuous = csiszar_sum_check(2, 2, 0, seed=0)
    assert vacuous.passed and "no instances" in vacuous.line()

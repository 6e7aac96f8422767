import math

import numpy as np
import pytest

from macwt.coding_sim import (
    Codebook,
    SimConfig,
    block_equivocation,
    build_codebooks,
    decode_map,
    encode,
    run_simulation,
    transmit,
)
from macwt.errors import DomainError, ResourceCapError


def _books(config, seed=0):
    return build_codebooks(config, np.random.default_rng([seed, 0, 0]))


def test_config_validation():
    with pytest.raises(DomainError):
        SimConfig(n=0, r1=0.5, r2=0.5)
    with pytest.raises(DomainError):
        SimConfig(n=2, r1=-0.1, r2=0.5)
    with pytest.raises(DomainError):
        SimConfig(n=2, r1=0.5, r2=0.5, mode="weird")
    cfg = SimConfig(n=4, r1=0.5, r2=0.5)
    assert cfg.m1 == 4 and cfg.m2 == 4
    assert abs(cfg.realized_r1 - 0.5) < 1e-15


def test_zero_rate_gives_single_bin():
    cfg = SimConfig(n=1, r1=0.0, r2=0.0)
    books = _books(cfg)
    assert books["x1"].n_bins == 1
    assert len(books["x1"].bin_members(0)) == len(books["x1"].words)


def test_round_robin_bins_balanced():
    cfg = SimConfig(n=4, r1=0.5, r2=0.25, exponent1=0.75, exponent2=0.75)
    books = _books(cfg)
    b1 = books["x1"]
    assert b1.n_bins == 4
    counts = b1.bin_counts()
    assert counts.max() - counts.min() <= 1
    assert counts.sum() == len(b1.words)
    for b in range(b1.n_bins):
        assert np.all(b1.bin_of[b1.bin_members(b)] == b)


def test_codebook_deterministic_in_seed():
    cfg = SimConfig(n=6, r1=0.5, r2=0.5, seed=42)
    a = _books(cfg, seed=42)
    b = _books(cfg, seed=42)
    c = _books(cfg, seed=43)
    assert np.array_equal(a["x1"].words, b["x1"].words)
    assert not np.array_equal(a["x1"].words, c["x1"].words)


def test_codebook_cell_cap():
    cfg = SimConfig(n=24, r1=1.0, r2=0.0)
    with pytest.raises(ResourceCapError):
        _books(cfg)


def test_encode_stays_in_bin_and_is_uniform():
    cfg = SimConfig(n=4, r1=0.25, r2=0.25, exponent1=1.0, exponent2=0.5)
    books = _books(cfg)
    b1 = books["x1"]
    members = b1.bin_members(1)
    member_words = {tuple(b1.words[i]) for i in members}
    rng = np.random.default_rng(7)
    counts = {w: 0 for w in member_words}
    draws = 10_000
    for _ in range(draws):
        x1, _ = encode(1, 0, cfg, books, rng)
        counts[tuple(x1)] += 1
    # within-bin choice should be uniform: 3 sigma binomial band per word
    k = len(member_words)
    expect = draws / k
    sigma = math.sqrt(draws * (1 / k) * (1 - 1 / k))
    for c in counts.values():
        assert abs(c - expect) <= 3.5 * sigma
    with pytest.raises(DomainError):
        encode(99, 0, cfg, books, rng)


def test_cooperative_encode_deterministic_tracks():
    # default V law carries (x1, x2) in its two bits; bin size 1 makes the
    # whole encoding deterministic
    cfg = SimConfig(
        n=3, r1=1.0 / 3, r2=1.0 / 3, mode="cooperative", exponent1=2.0 / 3
    )
    books = _books(cfg)
    book = books["v"]
    assert book.bin_counts().max() == 1
    rng = np.random.default_rng(2)
    v = book.words[book.bin_members(0)[0]]
    x1, x2 = encode(0, 0, cfg, books, rng)
    assert np.array_equal(x1, (v >= 2).astype(int))
    assert np.array_equal(x2, (v % 2 == 1).astype(int))
    assert np.array_equal(x1 & x2, (v == 3).astype(int))


def test_transmit():
    rng = np.random.default_rng(0)
    x1 = np.array([1, 1, 0, 1])
    x2 = np.array([1, 0, 1, 1])
    y, z = transmit(x1, x2, 0.0, rng)
    assert np.array_equal(y, [1, 0, 0, 1])
    assert np.array_equal(z, y)
    y_all_ones, _ = transmit(np.ones(4, dtype=int), x2, 0.0, rng)
    assert np.array_equal(y_all_ones, x2)
    with pytest.raises(DomainError):
        transmit(x1, x2[:3], 0.1, rng)


def test_transmit_full_noise_scrambles():
    rng = np.random.default_rng(3)
    y_all = []
    z_all = []
    for _ in range(2000):
        y, z = transmit(np.ones(5, dtype=int), np.ones(5, dtype=int), 0.5, rng)
        y_all.extend(y)
        z_all.extend(z)
    # z is an unbiased coin regardless of y
    assert abs(np.mean(z_all) - 0.5) < 0.03


def test_decode_lexicographic_tie_break():
    cfg = SimConfig(n=2, r1=0.5, r2=0.5)
    words1 = np.zeros((2, 2), dtype=int)  # identical codewords: total tie
    words2 = np.ones((2, 2), dtype=int)
    books = {"x1": Codebook(words1, 2), "x2": Codebook(words2, 2)}
    assert decode_map(np.array([0, 0]), cfg, books) == (0, 0)


def test_decode_recovers_unique_pair():
    cfg = SimConfig(n=2, r1=0.5, r2=0.5)
    words1 = np.array([[1, 1], [1, 0]])
    words2 = np.array([[1, 1], [0, 1]])
    books = {"x1": Codebook(words1, 2), "x2": Codebook(words2, 2)}
    for w1 in range(2):
        for w2 in range(2):
            y = words1[w1] & words2[w2]
            assert decode_map(y, cfg, books) == (w1, w2)


def test_block_equivocation_extremes():
    words1 = np.array([[1, 1], [1, 0]])
    words2 = np.array([[1, 1], [0, 1]])
    books = {"x1": Codebook(words1, 2), "x2": Codebook(words2, 2)}
    # p = 0.5: z is pure noise, the posterior is the uniform prior
    cfg = SimConfig(n=2, r1=0.5, r2=0.5, p=0.5)
    for z in ([0, 0], [0, 1], [1, 0], [1, 1]):
        assert abs(block_equivocation(np.array(z), cfg, books) - 2.0) < 1e-12
    # p = 0 with injective codeword pairs: z reveals everything
    cfg0 = SimConfig(n=2, r1=0.5, r2=0.5, p=0.0)
    assert block_equivocation(np.array([1, 1]), cfg0, books) == 0.0


def test_equivocation_bounds_and_monotonicity_in_p():
    means = []
    ses = []
    for p in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5):
        cfg = SimConfig(n=6, r1=1.0 / 3, r2=1.0 / 3, p=p, trials=300, seed=17)
        rep = run_simulation(cfg)
        cap = math.log2(cfg.m1 * cfg.m2) + 1.0
        assert np.all(rep.equivocations >= -1e-12)
        assert np.all(rep.equivocations <= cap + 1e-9)
        means.append(rep.delta_hat)
        ses.append(rep.delta_se)
    for i in range(len(means) - 1):
        slack = 2.0 * (ses[i] + ses[i + 1])
        assert means[i + 1] >= means[i] - slack


def test_run_simulation_report_and_determinism():
    cfg = SimConfig(n=4, r1=0.5, r2=0.25, p=0.3, trials=100, seed=5)
    a = run_simulation(cfg)
    b = run_simulation(cfg)
    assert np.array_equal(a.correct, b.correct)
    assert np.array_equal(a.equivocations, b.equivocations)
    assert 0.0 <= a.pe <= 1.0
    lo, hi = a.pe_interval
    assert lo <= a.pe <= hi
    assert a.delta_hat >= 0.0
    assert "i.i.d." in a.sampling_note


def test_run_simulation_zero_trials_flagged():
    rep = run_simulation(SimConfig(n=4, r1=0.5, r2=0.5, trials=0))
    assert rep.empty
    assert rep.pe is None and rep.delta_hat is None


def test_half_noise_exactness():
    for n in (4, 8):
        cfg = SimConfig(n=n, r1=0.5, r2=0.25, p=0.5, trials=40, seed=2)
        rep = run_simulation(cfg)
        target = rep.realized_r1 + rep.realized_r2
        assert rep.delta_hat == pytest.approx(target, abs=1e-12)
        assert np.ptp(rep.equivocations) == 0.0
        assert rep.delta_se == 0.0


def test_error_rate_improves_with_blocklength():
    # rates strictly inside the AND-channel region at uniform inputs, with
    # codeword counts matching the message counts (no wiretap padding), so
    # errors come from codeword collisions only and fade with blocklength
    pes = {}
    for n in (4, 12):
        cfg = SimConfig(
            n=n, r1=0.25, r2=0.25, exponent1=0.25, exponent2=0.25,
            trials=400, seed=23,
        )
        pes[n] = run_simulation(cfg).pe
    assert pes[12] < pes[4]

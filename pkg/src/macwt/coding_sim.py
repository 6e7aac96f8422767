"""Monte-Carlo random-binning codes over the binary AND main channel with a
binary-symmetric wiretap, at desk-scale blocklengths.

The legitimate channel is Y_i = X1_i AND X2_i (noiseless); the wiretapper sees
Z_i = Y_i XOR Bernoulli(p). Codewords are sampled i.i.d. per letter from the
configured input law (not from a typical set; identical asymptotics, unbiased
at tiny N, and the deviation is recorded in every report). Decoding is exact
joint MAP, which with a noiseless main channel reduces to a consistency
search. Per-block equivocation H(W1, W2 | Z^N = z) is computed exactly by
Bayesian marginalization over the codebook.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceCapError
from .info_core import (
    JointTable,
    binary_and_kernel,
    lift_inputs,
    mutual_information,
)

# Total stored codeword letters (and enumerated codeword pairs) per run.
CELL_CAP = 2 ** 22

_WILSON_Z = 1.959963984540054  # two-sided 95%


def _message_count(n: int, rate: float) -> int:
    count = round(2.0 ** (n * rate))
    return max(1, int(count))


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one simulation run.

    `alpha` and `beta` are P(X1 = 0) and P(X2 = 0) for the non-cooperative
    scheme. The cooperative scheme draws a V codeword instead, from `v_law`,
    and emits channel inputs through the per-letter kernels `x1_given_v` and
    `x2_given_v` (defaults: V uniform on 4 symbols carrying the (x1, x2) pair
    in its two bits).

    Codeword-count exponents (bits/use) are explicit because the achievability
    argument keys them to mutual-information terms of the input law; by
    default they are I(X1;Y|X2) - gamma and I(X2;Y) - gamma (non-cooperative)
    or I(V;Y) - gamma (cooperative), never below the message rate.
    """

    n: int
    r1: float
    r2: float
    gamma: float = 0.0
    mode: str = "non-cooperative"
    p: float = 0.0
    alpha: float = 0.5
    beta: float = 0.5
    v_law: tuple[float, ...] = (0.25, 0.25, 0.25, 0.25)
    x1_given_v: tuple[tuple[float, ...], ...] = (
        (1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 1.0),
    )
    x2_given_v: tuple[tuple[float, ...], ...] = (
        (1.0, 0.0), (0.0, 1.0), (1.0, 0.0), (0.0, 1.0),
    )
    exponent1: float | None = None
    exponent2: float | None = None
    trials: int = 0
    seed: int = 0
    regen_every: int | None = None  # codebook refresh period; None = one book

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"blocklength must be >= 1, got {self.n}")
        if self.r1 < 0.0 or self.r2 < 0.0 or self.gamma < 0.0:
            raise DomainError("rates and gamma must be >= 0")
        if self.mode not in ("cooperative", "non-cooperative"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"crossover probability must be in [0, 1], got {self.p}")
        for name in ("alpha", "beta"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise DomainError(f"{name} must be in [0, 1]")
        if self.trials < 0:
            raise DomainError("trials must be >= 0")
        if self.regen_every is not None and self.regen_every < 1:
            raise DomainError("regen_every must be >= 1")

    @property
    def m1(self) -> int:
        return _message_count(self.n, self.r1)

    @property
    def m2(self) -> int:
        return _message_count(self.n, self.r2)

    @property
    def realized_r1(self) -> float:
        return math.log2(self.m1) / self.n

    @property
    def realized_r2(self) -> float:
        return math.log2(self.m2) / self.n

    def input_law_joint(self) -> JointTable:
        """Joint law of one channel use under this config's inputs."""
        if self.mode == "non-cooperative":
            p_x1 = np.array([self.alpha, 1.0 - self.alpha])
            p_x2 = np.array([self.beta, 1.0 - self.beta])
            return lift_inputs(p_x1, p_x2, binary_and_kernel())
        p_v = np.asarray(self.v_law, dtype=float)
        k1 = np.asarray(self.x1_given_v, dtype=float)
        k2 = np.asarray(self.x2_given_v, dtype=float)
        if k1.shape != (p_v.size, 2) or k2.shape != (p_v.size, 2):
            raise DomainError("x1_given_v / x2_given_v must be (|V|, 2) rows")
        probs = np.zeros((p_v.size, 2, 2, 2))
        for x1 in range(2):
            for x2 in range(2):
                probs[:, x1, x2, x1 & x2] = p_v * k1[:, x1] * k2[:, x2]
        return JointTable((("V", p_v.size), ("X1", 2), ("X2", 2), ("Y", 2)), probs)

    def default_exponents(self) -> tuple[float, float]:
        """(exp1, exp2) in bits/use; exp2 is unused in cooperative mode."""
        joint = self.input_law_joint()
        if self.mode == "non-cooperative":
            e1 = mutual_information(joint, ("X1",), ("Y",), ("X2",)) - self.gamma
            e2 = mutual_information(joint, ("X2",), ("Y",)) - self.gamma
        else:
            e1 = mutual_information(joint, ("V",), ("Y",)) - self.gamma
            e2 = 0.0
        return e1, e2


@dataclass(frozen=True)
class Codebook:
    """Random codebook with a round-robin bin map.

    `words` holds one codeword per row (symbols over `alphabet`); codeword k
    belongs to bin k mod n_bins, so bin sizes differ by at most one.
    """

    words: np.ndarray = field(repr=False)
    n_bins: int
    alphabet: int = 2

    def __post_init__(self):
        words = np.asarray(self.words)
        if words.ndim != 2:
            raise DomainError("codeword table must be 2-D")
        if self.n_bins < 1 or len(words) < self.n_bins:
            raise DomainError(
                f"{len(words)} codewords cannot fill {self.n_bins} bins"
            )
        words = words.copy()
        words.flags.writeable = False
        object.__setattr__(self, "words", words)

    @property
    def bin_of(self) -> np.ndarray:
        return np.arange(len(self.words)) % self.n_bins

    def bin_members(self, b: int) -> np.ndarray:
        if not 0 <= b < self.n_bins:
            raise DomainError(f"bin {b} out of range [0, {self.n_bins})")
        return np.arange(b, len(self.words), self.n_bins)

    def bin_counts(self) -> np.ndarray:
        m, nb = len(self.words), self.n_bins
        return m // nb + (np.arange(nb) < m % nb)


@dataclass(frozen=True)
class TrialResult:
    decoded_correct: bool
    block_equivocation: float


@dataclass(frozen=True)
class SimulationReport:
    config: SimConfig
    realized_r1: float
    realized_r2: float
    trials: int
    pe: float | None
    pe_interval: tuple[float, float] | None
    delta_hat: float | None
    delta_se: float | None
    correct: np.ndarray = field(repr=False)
    equivocations: np.ndarray = field(repr=False)
    codebook_policy: str = ""
    sampling_note: str = (
        "codewords drawn i.i.d. per letter from the input law, "
        "not from a typical set"
    )

    @property
    def empty(self) -> bool:
        return self.trials == 0


def _codeword_count(n: int, exponent: float, n_bins: int) -> int:
    return max(n_bins, _message_count(n, max(exponent, 0.0)))


def _check_cap(total_letters: int):
    if total_letters > CELL_CAP:
        raise ResourceCapError(
            f"codebook needs {total_letters} cells, cap is {CELL_CAP}"
        )


def _sample_words(rng, count: int, n: int, law) -> np.ndarray:
    law = np.asarray(law, dtype=float)
    cum = np.cumsum(law)
    u = rng.random((count, n))
    return (u[..., None] > cum[None, None, :-1]).sum(axis=-1).astype(np.int64)


def build_codebooks(config: SimConfig, rng) -> dict[str, Codebook]:
    """Draw the run's codebook(s); deterministic given the rng state.

    Non-cooperative mode returns {"x1": ..., "x2": ...} with 2^{N R1} and
    2^{N R2} bins; cooperative mode returns {"v": ...} with 2^{N (R1+R2)} bins
    (bin index w1 * M2 + w2).
    """
    n = config.n
    e1, e2 = config.default_exponents()
    if config.exponent1 is not None:
        e1 = config.exponent1
    if config.exponent2 is not None:
        e2 = config.exponent2
    if config.mode == "non-cooperative":
        c1 = _codeword_count(n, max(e1, config.realized_r1), config.m1)
        c2 = _codeword_count(n, max(e2, config.realized_r2), config.m2)
        _check_cap((c1 + c2) * n)
        law1 = [config.alpha, 1.0 - config.alpha]
        law2 = [config.beta, 1.0 - config.beta]
        return {
            "x1": Codebook(_sample_words(rng, c1, n, law1), config.m1),
            "x2": Codebook(_sample_words(rng, c2, n, law2), config.m2),
        }
    n_bins = config.m1 * config.m2
    cv = _codeword_count(n, max(e1, config.realized_r1 + config.realized_r2), n_bins)
    _check_cap(cv * n)
    words = _sample_words(rng, cv, n, config.v_law)
    return {"v": Codebook(words, n_bins, alphabet=len(config.v_law))}


def encode(w1: int, w2: int, config: SimConfig, codebooks, rng):
    """Stochastic encoding: a uniform codeword from the message's bin; in
    cooperative mode the V word is then pushed through the per-letter input
    kernels. Returns (x1_word, x2_word)."""
    if not 0 <= w1 < config.m1 or not 0 <= w2 < config.m2:
        raise DomainError(f"message pair ({w1}, {w2}) out of range")
    if config.mode == "non-cooperative":
        b1 = codebooks["x1"].bin_members(w1)
        b2 = codebooks["x2"].bin_members(w2)
        x1 = codebooks["x1"].words[b1[rng.integers(0, len(b1))]]
        x2 = codebooks["x2"].words[b2[rng.integers(0, len(b2))]]
        return x1.copy(), x2.copy()
    book = codebooks["v"]
    members = book.bin_members(w1 * config.m2 + w2)
    v = book.words[members[rng.integers(0, len(members))]]
    k1 = np.asarray(config.x1_given_v, dtype=float)
    k2 = np.asarray(config.x2_given_v, dtype=float)
    x1 = (rng.random(config.n) >= k1[v, 0]).astype(np.int64)
    x2 = (rng.random(config.n) >= k2[v, 0]).astype(np.int64)
    return x1, x2


def transmit(x1, x2, p: float, rng):
    """y = x1 AND x2 bitwise; z = y XOR i.i.d. Bernoulli(p)."""
    x1 = np.asarray(x1)
    x2 = np.asarray(x2)
    if x1.shape != x2.shape:
        raise DomainError(f"length mismatch: {x1.shape} vs {x2.shape}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"crossover probability must be in [0, 1], got {p}")
    y = x1 & x2
    z = y ^ (rng.random(y.shape) < p).astype(np.int64)
    return y, z


def _pair_scores_noncoop(word: np.ndarray, config: SimConfig, codebooks, p: float):
    """Posterior scores over message pairs given the wiretap observation
    `word` through BSC(p); p=0 gives the noiseless-main-channel case."""
    b1, b2 = codebooks["x1"], codebooks["x2"]
    if len(b1.words) * len(b2.words) > CELL_CAP:
        raise ResourceCapError("codeword-pair enumeration exceeds the cell cap")
    n = config.n
    merged = b1.words[:, None, :] & b2.words[None, :, :]
    d = (merged != word[None, None, :]).sum(axis=-1)
    like = np.float_power(p, d) * np.float_power(1.0 - p, n - d)
    cnt1 = b1.bin_counts().astype(float)
    cnt2 = b2.bin_counts().astype(float)
    weight = like / (cnt1[b1.bin_of][:, None] * cnt2[b2.bin_of][None, :])
    scores = np.zeros((b1.n_bins, b2.n_bins))
    np.add.at(scores, (b1.bin_of[:, None], b2.bin_of[None, :]), weight)
    return scores


def _pair_scores_coop(word: np.ndarray, config: SimConfig, codebooks, p: float):
    book = codebooks["v"]
    k1 = np.asarray(config.x1_given_v, dtype=float)
    k2 = np.asarray(config.x2_given_v, dtype=float)
    # p(y=1 | v) = p(x1=1|v) p(x2=1|v); then one BSC step to the observation
    py1 = k1[:, 1] * k2[:, 1]
    p_obs = np.stack(
        [(1.0 - py1) * (1.0 - p) + py1 * p, (1.0 - py1) * p + py1 * (1.0 - p)],
        axis=1,
    )
    like = np.prod(p_obs[book.words, word[None, :]], axis=1)
    weight = like / book.bin_counts()[book.bin_of]
    flat = np.zeros(book.n_bins)
    np.add.at(flat, book.bin_of, weight)
    return flat.reshape(config.m1, config.m2)


def _pair_scores(word, config, codebooks, p):
    if config.mode == "non-cooperative":
        return _pair_scores_noncoop(word, config, codebooks, p)
    return _pair_scores_coop(word, config, codebooks, p)


def decode_map(y, config: SimConfig, codebooks) -> tuple[int, int]:
    """Exact joint MAP from the legitimate observation; ties broken by the
    lexicographically smallest (w1, w2)."""
    scores = _pair_scores(np.asarray(y), config, codebooks, 0.0)
    flat = int(np.argmax(scores))  # first maximum = lexicographic winner
    return flat // config.m2, flat % config.m2


def block_equivocation(z, config: SimConfig, codebooks) -> float:
    """Exact H(W1, W2 | Z^N = z) in bits for the realized codebook."""
    scores = _pair_scores(np.asarray(z), config, codebooks, config.p)
    total = scores.sum()
    if total <= 0.0:
        # the observation has zero likelihood under every pair (only possible
        # at p=0); the conditional law is undefined, return the prior entropy
        return math.log2(config.m1 * config.m2)
    post = scores.ravel() / total
    post = post[post > 0.0]
    return float(-(post * np.log2(post)).sum())


def _wilson_interval(k: int, n: int) -> tuple[float, float]:
    z = _WILSON_Z
    phat = k / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return max(0.0, center - half), min(1.0, center + half)


def run_simulation(config: SimConfig) -> SimulationReport:
    """Run `config.trials` independent trials and aggregate.

    Each trial draws a fresh uniform message pair, encodes, transmits,
    decodes, and evaluates the exact block equivocation of the wiretap word.
    The codebook is regenerated every `regen_every` trials (default: one
    codebook for the whole run). Randomness comes from per-purpose derived
    streams of `seed`, so results do not depend on execution order.
    """
    regen = config.regen_every or max(config.trials, 1)
    policy = f"codebook regenerated every {regen} trials"
    correct = np.zeros(config.trials, dtype=bool)
    equivs = np.zeros(config.trials)
    books = None
    for t in range(config.trials):
        if t % regen == 0:
            books = build_codebooks(
                config, np.random.default_rng([config.seed, 0, t // regen])
            )
        rng = np.random.default_rng([config.seed, 1, t])
        w1 = int(rng.integers(0, config.m1))
        w2 = int(rng.integers(0, config.m2))
        x1, x2 = encode(w1, w2, config, books, rng)
        y, z = transmit(x1, x2, config.p, rng)
        correct[t] = decode_map(y, config, books) == (w1, w2)
        equivs[t] = block_equivocation(z, config, books)
    if config.trials == 0:
        return SimulationReport(
            config, config.realized_r1, config.realized_r2, 0,
            None, None, None, None, correct, equivs, codebook_policy=policy,
        )
    errors = int(config.trials - correct.sum())
    delta = equivs / config.n
    if config.trials > 1 and not np.all(delta == delta[0]):
        se = float(delta.std(ddof=1) / math.sqrt(config.trials))
    else:
        # bitwise-identical samples have exactly zero spread; np.std would
        # report rounding noise from the mean subtraction
        se = 0.0
    return SimulationReport(
        config,
        config.realized_r1,
        config.realized_r2,
        config.trials,
        errors / config.trials,
        _wilson_interval(errors, config.trials),
        float(delta.mean()),
        se,
        correct,
        equivs,
        codebook_policy=policy,
    )

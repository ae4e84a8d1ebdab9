"""Monte Carlo growth of Jordan types of random unitriangular matrices.

Three engines:

* ``chain``  — samples the exact induced Markov chain on Jordan types for the
  Haar measure.  One box is added per step; the column is read off a
  geometric variable (the count of leading zero base-q digits of the random
  stream), which reproduces the column law t^(rho'_j) - t^(rho'_{j-1})
  exactly.
* ``matrix`` — grows an explicit unitriangular matrix one uniform column at a
  time and classifies each new column against the image filtration of the
  strictly-triangular part, maintained incrementally and revalidated from
  scratch every 64 steps.
* ``markov`` — grows a type path under any central measure via the exact
  conditional law c_{rho,sigma}(q) M_sigma / M_rho.

Randomness is a counter-based deterministic generator: block i of the stream
for (trial, step) is blake2b(key = seed as 8 little-endian bytes,
data = trial || step || i, each 8 little-endian bytes, digest 64 bytes).
Identical (seed, trial, step) always yields identical draws, so trials may
be partitioned across workers in any way without changing results.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Optional

from . import gflinalg, measures
from .gflinalg import VALIDATED_FAST_COUNTS
from .measures import CentralMeasure, DeadBranchError
from .partitions import Partition, conjugate, covers_up, validate_partition
from .symfun import SpecEntry, ThomaSpec


class CounterRng:
    """Deterministic keyed stream; see the module docstring for the exact
    byte-level definition."""

    def __init__(self, seed: int):
        self.seed = seed
        self._key = seed.to_bytes(8, "little", signed=False)

    def block(self, trial: int, step: int, index: int) -> bytes:
        data = (
            trial.to_bytes(8, "little")
            + step.to_bytes(8, "little")
            + index.to_bytes(8, "little")
        )
        return hashlib.blake2b(data, key=self._key, digest_size=64).digest()

    def byte_stream(self, trial: int, step: int):
        index = 0
        while True:
            for b in self.block(trial, step, index):
                yield b
            index += 1

    def bit_stream(self, trial: int, step: int):
        for byte in self.byte_stream(trial, step):
            for k in range(8):
                yield (byte >> k) & 1

    def digit_stream(self, trial: int, step: int, q: int):
        """Uniform base-q digits by byte rejection."""
        if q == 2:
            yield from self.bit_stream(trial, step)
            return
        limit = (256 // q) * q
        for byte in self.byte_stream(trial, step):
            if byte < limit:
                yield byte % q

    def leading_zero_count(self, trial: int, step: int, q: int, cap: int) -> int:
        """Number of leading zero digits of the base-q stream, capped."""
        z = 0
        for d in self.digit_stream(trial, step, q):
            if d or z >= cap:
                return z
            z += 1
        raise AssertionError("unreachable")

    def uniform_below(self, trial: int, step: int, bound: int) -> int:
        """Uniform integer in [0, bound) by bit rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        bits = (bound - 1).bit_length() or 1
        acc = 0
        have = 0
        for bit in self.bit_stream(trial, step):
            acc |= bit << have
            have += 1
            if have == bits:
                if acc < bound:
                    return acc
                acc = 0
                have = 0
        raise AssertionError("unreachable")

    def uniform_vector(self, trial: int, step: int, n: int, q: int) -> tuple[int, ...]:
        gen = self.digit_stream(trial, step, q)
        return tuple(next(gen) for _ in range(n))


# ---------------------------------------------------------------------------
# growth engines
# ---------------------------------------------------------------------------


def chain_haar_step(cols: list[int], z: int) -> int:
    """Add one box given the geometric draw z; returns the column index.

    The box goes to the first column j with cols[j-1] <= z, which happens
    with probability t^(cols_j) - t^(cols_{j-1}) as required.
    """
    for j, c in enumerate(cols):
        if c <= z:
            cols[j] += 1
            return j + 1
    cols.append(1)
    return len(cols)


@dataclass
class MatrixGrowthState:
    """Explicit matrix path (q = 2 bit-packed rows; generic rows otherwise)."""

    q: int
    n: int = 0
    cols: list[int] = field(default_factory=list)  # conjugate of the type
    rows: list = field(default_factory=list)  # strictly upper part xi
    images: list = field(default_factory=list)  # images[k-1] = basis of Im xi^k
    steps_since_refresh: int = 0

    @property
    def rho(self) -> Partition:
        return conjugate(tuple(self.cols))


def _gf2_matvec(rows: list[int], v: int, n: int) -> int:
    out = 0
    for i in range(n):
        if (rows[i] & v).bit_count() & 1:
            out |= 1 << i
    return out


class _Gf2Basis:
    def __init__(self):
        self.pivots: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        while v:
            low = v & -v
            if low not in self.pivots:
                return v
            v ^= self.pivots[low]
        return 0

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def insert(self, v: int) -> None:
        r = self.reduce(v)
        if r:
            self.pivots[r & -r] = r

    def vectors(self):
        return list(self.pivots.values())

    @property
    def dim(self):
        return len(self.pivots)


class _GenericBasis:
    def __init__(self, ctx):
        self.ctx = ctx
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if p < len(v) and v[p]:
                f = v[p]
                padded = row + [0] * (len(v) - len(row))
                v = [self.ctx.sub(x, self.ctx.mul(f, y)) for x, y in zip(v, padded)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def insert(self, v) -> None:
        r = self.reduce(v)
        for p, x in enumerate(r):
            if x:
                inv = self.ctx.inv(x)
                self.rows.append([self.ctx.mul(inv, y) for y in r])
                self.pivots.append(p)
                return

    def vectors(self):
        return [list(r) for r in self.rows]

    @property
    def dim(self):
        return len(self.rows)


def matrix_haar_step(state: MatrixGrowthState, rng: CounterRng, trial: int, step: int) -> int:
    """One uniform-column growth step; returns the box column.

    The new column b is classified by j = min k with xi^(k-1) b in Im(xi^k);
    afterwards every image basis absorbs its power vector and the matrix is
    extended.  Every 64 steps the filtration is rebuilt from scratch and
    compared, as an exact revalidation of the incremental updates.
    """
    q, n = state.q, state.n
    if q == 2:
        bits = rng.uniform_vector(trial, step, n, 2)
        b = 0
        for i, x in enumerate(bits):
            if x:
                b |= 1 << i
        j = _classify_gf2(state, b)
        _extend_gf2(state, b)
    else:
        b = rng.uniform_vector(trial, step, n, q)
        j = _classify_generic(state, b)
        _extend_generic(state, b)
    if j <= len(state.cols):
        state.cols[j - 1] += 1
    else:
        state.cols.append(1)
    state.n += 1
    state.steps_since_refresh += 1
    if state.steps_since_refresh >= 64:
        _refresh(state)
        state.steps_since_refresh = 0
    return j


def _classify_gf2(state: MatrixGrowthState, b: int) -> int:
    v = b
    k = 1
    while True:
        basis = state.images[k - 1] if k - 1 < len(state.images) else None
        inside = (v == 0) if basis is None else basis.contains(v)
        if inside:
            j = k
            break
        v = _gf2_matvec(state.rows, v, state.n)
        k += 1
    # absorb the power vectors into the filtration
    v = b
    k = 1
    while v:
        while len(state.images) < k:
            state.images.append(_Gf2Basis())
        state.images[k - 1].insert(v)
        v = _gf2_matvec(state.rows, v, state.n)
        k += 1
    return j


def _extend_gf2(state: MatrixGrowthState, b: int) -> None:
    n = state.n
    for i in range(n):
        if (b >> i) & 1:
            state.rows[i] |= 1 << n
    state.rows.append(0)


def _classify_generic(state: MatrixGrowthState, b) -> int:
    ctx = gflinalg.field(state.q)
    v = list(b)
    k = 1
    while True:
        basis = state.images[k - 1] if k - 1 < len(state.images) else None
        inside = not any(v) if basis is None else basis.contains(v)
        if inside:
            j = k
            break
        v = [_dot(ctx, row, v) for row in state.rows]
        k += 1
    v = list(b)
    k = 1
    while any(v):
        while len(state.images) < k:
            state.images.append(_GenericBasis(ctx))
        state.images[k - 1].insert(v)
        v = [_dot(ctx, row, v) for row in state.rows]
        k += 1
    return j


def _dot(ctx, row, v):
    acc = 0
    for x, y in zip(row, v):
        if x and y:
            acc = ctx.add(acc, ctx.mul(x, y))
    return acc


def _extend_generic(state: MatrixGrowthState, b) -> None:
    for i in range(state.n):
        state.rows[i] = state.rows[i] + [b[i]]
    state.rows = [row for row in state.rows]
    state.rows.append([0] * (state.n + 1))


def _refresh(state: MatrixGrowthState) -> None:
    """Rebuild the image filtration from matrix powers and assert equality."""
    n = state.n
    if state.q == 2:
        power = list(state.rows)
        fresh = []
        while True:
            basis = _Gf2Basis()
            for col in range(n):
                vec = 0
                for i in range(n):
                    if (power[i] >> col) & 1:
                        vec |= 1 << i
                basis.insert(vec)
            if basis.dim == 0:
                break
            fresh.append(basis)
            power = [_gf2_matvec_rows(state.rows, row, n) for row in power]
        _assert_same_filtration(state.images, fresh)
    else:
        ctx = gflinalg.field(state.q)
        power = [list(r) for r in state.rows]
        fresh = []
        while True:
            basis = _GenericBasis(ctx)
            for col in range(n):
                basis.insert([power[i][col] for i in range(n)])
            if basis.dim == 0:
                break
            fresh.append(basis)
            power = [[_dot(ctx, state.rows[i], [p[j] for p in power]) for j in range(n)] for i in range(n)]
        _assert_same_filtration(state.images, fresh)
    state.images = [b for b in state.images if b.dim]


def _gf2_matvec_rows(rows: list[int], row_vec: int, n: int) -> int:
    # row_vec * rows (row-vector times matrix): combine rows by set bits
    out = 0
    i = 0
    v = row_vec
    while v:
        if v & 1:
            out ^= rows[i]
        v >>= 1
        i += 1
    return out


def _assert_same_filtration(incremental, fresh) -> None:
    live = [b for b in incremental if b.dim]
    assert len(live) == len(fresh), "filtration depth drifted"
    for inc, ref in zip(live, fresh):
        assert inc.dim == ref.dim, "filtration rank drifted"
        for v in ref.vectors():
            assert inc.contains(v), "filtration span drifted"


def markov_step(rho: Partition, meas: CentralMeasure, rng: CounterRng, trial: int, step: int,
                counts: str = "brute") -> Partition:
    """One exact conditional growth step under a central measure."""
    rho = validate_partition(rho)
    m_rho = _measure_cylinder(meas, rho)
    if m_rho == 0:
        raise DeadBranchError(f"zero-probability cylinder at {rho}")
    q = int(meas.ground.q)
    cts = (
        gflinalg.extension_counts(rho, q)
        if counts == "brute"
        else gflinalg.extension_counts_closed(rho, q)
    )
    sigmas = []
    probs = []
    for sigma in covers_up(rho):
        c = cts.get(sigma, 0)
        if not c:
            continue
        p = Fraction(c) * _measure_cylinder(meas, sigma) / m_rho
        if p:
            sigmas.append(sigma)
            probs.append(p)
    total = sum(probs, Fraction(0))
    assert total == 1, f"conditional law sums to {total} at {rho}"
    denom = 1
    for p in probs:
        denom = denom * p.denominator // _gcd(denom, p.denominator)
    draw = rng.uniform_below(trial, step, denom)
    acc = 0
    for sigma, p in zip(sigmas, probs):
        acc += p.numerator * (denom // p.denominator)
        if draw < acc:
            return sigma
    raise AssertionError("unreachable")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _measure_cylinder(meas: CentralMeasure, rho: Partition) -> Fraction:
    if measures.fast_route_available(meas.label):
        return measures.cylinder_prob_fast(meas, rho)
    return measures.cylinder_prob(meas, rho)


# ---------------------------------------------------------------------------
# frequency laws and reports
# ---------------------------------------------------------------------------


def expected_frequency_multiset(spec: ThomaSpec, t: Fraction, k_max: int) -> list[Fraction]:
    """Sorted prefix of the merged geometric alpha lists (row-frequency
    targets); beta targets are the beta values themselves."""
    if any(e.geometric for e in spec.alphas):
        raise ValueError("expected atom alphas")
    values: list[Fraction] = []
    t = Fraction(t)
    for e in spec.alphas:
        term = (1 - t) * e.value
        for _ in range(k_max):
            if not term:
                break
            values.append(term)
            term *= t
    values.sort(reverse=True)
    return values[:k_max]


def beta_targets(spec: ThomaSpec, k_max: int) -> list[Fraction]:
    return [e.value for e in spec.betas[:k_max]]


@dataclass
class SamplerConfig:
    mode: str = "haar"  # "haar" or "measure"
    engine: str = "chain"  # haar: "chain" or "matrix"; measure: "markov"
    q: int = 2
    n_max: int = 400
    trials: int = 200
    seed: int = 42
    k_max: int = 8
    snapshot_every: int = 0  # 0: auto
    spec: Optional[ThomaSpec] = None
    convention: str = measures.DEFAULT_CONVENTION
    fast_counts: bool = False  # allow closed-form counts beyond validated range
    store_trajectories: bool = False
    threads: int = 1
    matrix_n_limit: int = 600  # memory/time guard for the explicit-matrix engine

    def resolved_snapshot(self) -> int:
        return self.snapshot_every or max(1, self.n_max // 50)


@dataclass
class TrialRecord:
    trial: int
    final_rows: tuple[int, ...]
    final_cols: tuple[int, ...]
    snapshots: list[tuple[int, tuple[int, ...]]]  # (n, cols at n)


@dataclass
class FrequencyReport:
    config: SamplerConfig
    counts_source: str
    records: list[TrialRecord]

    def _freqs(self, kind: str) -> list[list[float]]:
        n = self.config.n_max
        out = []
        for rec in self.records:
            lam = rec.final_rows if kind == "rows" else rec.final_cols
            out.append([(lam[k] / n if k < len(lam) else 0.0) for k in range(self.config.k_max)])
        return out

    def means_and_se(self, kind: str) -> tuple[list[float], list[float]]:
        data = self._freqs(kind)
        trials = len(data)
        means = [sum(col) / trials for col in zip(*data)]
        ses = []
        for k, col in enumerate(zip(*data)):
            mu = means[k]
            var = sum((x - mu) ** 2 for x in col) / (trials - 1) if trials > 1 else 0.0
            ses.append(sqrt(var / trials))
        return means, ses

    def targets(self) -> dict:
        if self.config.mode == "haar":
            spec = ThomaSpec(alphas=(SpecEntry(Fraction(1)),))
        else:
            spec = self.config.spec
        t = Fraction(1, self.config.q)
        return {
            "rows": [str(x) for x in expected_frequency_multiset(spec, t, self.config.k_max)],
            "cols": [str(x) for x in beta_targets(spec, self.config.k_max)],
        }

    def gate(self, k_se: int = 4, k_abs: int = 2, abs_tol: float = 0.02) -> dict:
        """Statistical verdicts: mean row frequencies within 3 standard
        errors of the targets for k <= k_se, and within abs_tol for
        k <= k_abs."""
        means, ses = self.means_and_se("rows")
        t = Fraction(1, self.config.q)
        spec = ThomaSpec(alphas=(SpecEntry(Fraction(1)),)) if self.config.mode == "haar" else self.config.spec
        targets = expected_frequency_multiset(spec, t, self.config.k_max)
        rows = []
        ok = True
        for k in range(max(k_se, k_abs)):
            target = float(targets[k]) if k < len(targets) else 0.0
            diff = abs(means[k] - target)
            within_se = diff <= 3 * ses[k] if k < k_se else None
            within_abs = diff <= abs_tol if k < k_abs else None
            if within_se is False or within_abs is False:
                ok = False
            rows.append(
                {
                    "k": k + 1,
                    "mean": means[k],
                    "se": ses[k],
                    "target": target,
                    "within_3se": within_se,
                    "within_abs": within_abs,
                }
            )
        return {"ok": ok, "rows": rows}

    def to_dict(self) -> dict:
        means_r, se_r = self.means_and_se("rows")
        means_c, se_c = self.means_and_se("cols")
        doc = {
            "mode": self.config.mode,
            "engine": self.config.engine,
            "q": self.config.q,
            "n": self.config.n_max,
            "trials": self.config.trials,
            "seed": self.config.seed,
            "counts_source": self.counts_source,
            "row_freq_means": means_r,
            "row_freq_se": se_r,
            "col_freq_means": means_c,
            "col_freq_se": se_c,
            "targets": self.targets(),
        }
        if self.config.store_trajectories:
            doc["trajectories"] = [
                {
                    "trial": rec.trial,
                    "snapshots": [
                        {"n": n, "cols": list(cols)} for n, cols in rec.snapshots
                    ],
                }
                for rec in self.records
            ]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def trajectories_csv(self) -> str:
        lines = ["trial,n,k,row_over_n,col_over_n"]
        for rec in self.records:
            for n, cols in rec.snapshots:
                rows = conjugate(cols)
                for k in range(self.config.k_max):
                    r = rows[k] / n if k < len(rows) else 0.0
                    c = cols[k] / n if k < len(cols) else 0.0
                    lines.append(f"{rec.trial},{n},{k + 1},{r},{c}")
        return "\n".join(lines) + "\n"


def _run_single_trial(config: SamplerConfig, rng: CounterRng, trial: int,
                      meas: Optional[CentralMeasure], counts: str) -> TrialRecord:
    every = config.resolved_snapshot()
    snapshots: list[tuple[int, tuple[int, ...]]] = []
    if config.mode == "haar" and config.engine == "chain":
        cols: list[int] = []
        for step in range(1, config.n_max + 1):
            cap = (cols[0] if cols else 0) + 1
            z = rng.leading_zero_count(trial, step, config.q, cap)
            chain_haar_step(cols, z)
            if step % every == 0 or step == config.n_max:
                snapshots.append((step, tuple(cols)))
        final_cols = tuple(cols)
    elif config.mode == "haar" and config.engine == "matrix":
        state = MatrixGrowthState(q=config.q)
        for step in range(1, config.n_max + 1):
            matrix_haar_step(state, rng, trial, step)
            if step % every == 0 or step == config.n_max:
                snapshots.append((step, tuple(state.cols)))
        final_cols = tuple(state.cols)
    elif config.mode == "measure":
        rho: Partition = ()
        for step in range(1, config.n_max + 1):
            rho = markov_step(rho, meas, rng, trial, step, counts=counts)
            if step % every == 0 or step == config.n_max:
                snapshots.append((step, conjugate(rho)))
        final_cols = conjugate(rho)
    else:
        raise ValueError(f"unknown mode/engine {config.mode}/{config.engine}")
    return TrialRecord(
        trial=trial,
        final_rows=conjugate(final_cols),
        final_cols=final_cols,
        snapshots=snapshots,
    )


def run_trials(config: SamplerConfig, trial_indices: list[int]) -> list[TrialRecord]:
    """Run the given trials; results depend only on (seed, trial, step)."""
    rng = CounterRng(config.seed)
    meas = None
    counts = "brute"
    if config.mode == "haar" and config.engine == "matrix" and config.n_max > config.matrix_n_limit:
        raise ValueError(
            f"matrix engine limited to n <= {config.matrix_n_limit}; "
            f"use the chain engine or raise matrix_n_limit"
        )
    if config.mode == "measure":
        if config.spec is None:
            raise ValueError("measure mode needs a spec")
        from .symfun import GroundParams

        meas = measures.characteristic_measure(
            config.spec, GroundParams(config.q), config.convention
        )
        validated = VALIDATED_FAST_COUNTS.get(config.q, 0)
        if config.n_max > validated:
            if not config.fast_counts:
                raise ValueError(
                    f"n_max {config.n_max} exceeds the exhaustively validated "
                    f"extension-count range ({validated} at q={config.q}); "
                    f"pass fast_counts=True to use the closed form"
                )
            counts = "closed"
        else:
            counts = "brute" if config.n_max <= 8 else "closed"
    return [_run_single_trial(config, rng, t, meas, counts) for t in trial_indices]


def merge_records(parts: list[list[TrialRecord]]) -> list[TrialRecord]:
    merged = [rec for chunk in parts for rec in chunk]
    merged.sort(key=lambda r: r.trial)
    return merged


def run_lln(config: SamplerConfig) -> FrequencyReport:
    """Full run; deterministic given (config, seed), trial-partitionable."""
    indices = list(range(config.trials))
    if config.threads > 1:
        chunks = [indices[i :: config.threads] for i in range(config.threads)]
        try:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=config.threads) as pool:
                parts = list(pool.map(run_trials, [config] * len(chunks), chunks))
        except Exception:
            parts = [run_trials(config, chunk) for chunk in chunks]
        records = merge_records(parts)
    else:
        records = run_trials(config, indices)
    counts_source = "exact"
    if config.mode == "measure":
        validated = VALIDATED_FAST_COUNTS.get(config.q, 0)
        counts_source = (
            "fast-path counts (closed form beyond validated range)"
            if config.n_max > validated and config.fast_counts
            else "brute-force-validated counts"
        )
    return FrequencyReport(config=config, counts_source=counts_source, records=records)

"""Central measures on infinite unitriangular matrices over F_q.

A central measure assigns to each n x n unitriangular corner h a cylinder
probability depending only on the Jordan type rho of h.  The measures built
here come from Thoma points (alpha; beta): the cylinder probability is

    M_rho = q^(-n(n-1)/2) * t^(-n(rho)) * (1-t)^(-n) * Q_rho(expanded point; t)

with t = 1/q, n = |rho|, Q the Hall-Littlewood Q function, and q^(-n(n-1)/2)
the mass a single level-n cylinder carries under the Haar measure.  The
"expanded point" replaces atoms by geometric families; which side of
(alpha; beta) is expanded is a per-measure convention, because the source
formulas disagree.  The shipped default is ``expand-alpha``, the unique
convention that passes exact coherence, Haar recovery and two-route equality
on the beta-free adjudication corpus (see docs/convention_adjudication.md);
``expand-both`` extends it to mixed points and is the one that matches the
independent r-function route on every point, which the tests assert.

The same number has an independent second route: q^(-n(n-1)/2) times the
r-function of the unexpanded point (a Kostka-Foulkes sum against Schur
values).  Exact equality of the two routes is a shipped test, not an
assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import gflinalg, symfun
from .partitions import (
    Partition,
    check_degree,
    enumerate_partitions,
    n_stat,
    partition_index,
    validate_partition,
)
from .symfun import GroundParams, ThomaSpec

CONVENTIONS = ("expand-alpha", "expand-beta", "expand-none", "expand-both")
DEFAULT_CONVENTION = "expand-alpha"


class NegativeCylinderError(ValueError):
    """Signals a convention/point mismatch; values are never clamped."""


class DeadBranchError(ValueError):
    """A conditional step was requested from a zero-probability cylinder."""


def expand_spec(spec: ThomaSpec, convention: str) -> ThomaSpec:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    out = spec
    if convention in ("expand-alpha", "expand-both"):
        out = symfun.geometric_merge(out)
    if convention in ("expand-beta", "expand-both"):
        out = symfun.geometric_merge_beta(out)
    return out


@dataclass
class CentralMeasure:
    """A central measure with memoized exact cylinder probabilities."""

    label: ThomaSpec
    ground: GroundParams
    convention: str = DEFAULT_CONVENTION
    eval_spec: ThomaSpec = None
    memo: dict[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.label.require_normalized()
        if self.eval_spec is None:
            self.eval_spec = expand_spec(self.label, self.convention)

    def cylinder(self, rho: Partition) -> Fraction:
        return cylinder_prob(self, rho)


def characteristic_measure(
    spec: ThomaSpec, ground: GroundParams, convention: str = DEFAULT_CONVENTION
) -> CentralMeasure:
    """The central measure attached to a Thoma point by geometric expansion."""
    return CentralMeasure(label=spec, ground=ground, convention=convention)


def _level_factor(q: Fraction, n: int) -> Fraction:
    return Fraction(1) / Fraction(q) ** (n * (n - 1) // 2)


def cylinder_prob(meas: CentralMeasure, rho: Partition) -> Fraction:
    """Exact probability of one level-n cylinder of Jordan type rho."""
    rho = validate_partition(rho)
    if rho in meas.memo:
        return meas.memo[rho]
    n = sum(rho)
    check_degree(n)
    t = meas.ground.t
    value = _level_factor(meas.ground.q, n) * _q_over_normalization(rho, meas.eval_spec, t)
    if value < 0:
        raise NegativeCylinderError(
            f"negative cylinder value {value} at rho={rho}; "
            f"the convention {meas.convention!r} does not fit this point"
        )
    meas.memo[rho] = value
    return value


def _q_over_normalization(rho: Partition, spec, t: Fraction) -> Fraction:
    """t^(-n(rho)) (1-t)^(-n) Q_rho(spec; t), the Haar-relative density."""
    n = sum(rho)
    if n == 0:
        return Fraction(1)
    mat = symfun.hl_q_in_p(n, t)
    i = partition_index(n)[rho]
    pv = symfun.power_values(spec, t, n)
    total = Fraction(0)
    for j, sig in enumerate(enumerate_partitions(n)):
        c = mat[i][j]
        if c:
            prod = Fraction(1)
            for p in sig:
                prod *= pv[p - 1]
            total += c * prod
    return total / (t ** n_stat(rho) * (1 - t) ** n)


def characteristic_cylinder_via_r(spec: ThomaSpec, rho: Partition, ground: GroundParams) -> Fraction:
    """Second route to the same cylinder probability, through the r-function
    of the unexpanded point."""
    rho = validate_partition(rho)
    n = sum(rho)
    return _level_factor(ground.q, n) * symfun.r_function(rho, spec, ground.t)


# ---------------------------------------------------------------------------
# coherence and normalization checks
# ---------------------------------------------------------------------------


@dataclass
class CoherenceViolation:
    rho: Partition
    lhs: Fraction
    rhs: Fraction


@dataclass
class CoherenceReport:
    n_max: int
    q: int
    counts_source: str
    checked: int
    violations: list[CoherenceViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def _extension_counts(rho: Partition, q: int, source: str) -> dict[Partition, int]:
    if source == "brute":
        return gflinalg.extension_counts(rho, q)
    if source == "closed":
        return gflinalg.extension_counts_closed(rho, q)
    raise ValueError(f"unknown counts source {source!r}")


def check_coherence(meas: CentralMeasure, n_max: int, counts: str = "brute") -> CoherenceReport:
    """Exact check of M_rho = sum over covers sigma of c_{rho,sigma} M_sigma
    for every rho of size below n_max."""
    q = int(meas.ground.q)
    violations = []
    checked = 0
    for n in range(0, n_max):
        for rho in enumerate_partitions(n):
            lhs = cylinder_prob(meas, rho)
            cts = _extension_counts(rho, q, counts)
            rhs = sum(
                (Fraction(c) * cylinder_prob(meas, sigma) for sigma, c in cts.items()),
                Fraction(0),
            )
            checked += 1
            if lhs != rhs:
                violations.append(CoherenceViolation(rho, lhs, rhs))
    return CoherenceReport(n_max, q, counts, checked, violations)


@dataclass
class NormalizationReport:
    n: int
    q: int
    total: Fraction
    counts_source: str

    @property
    def ok(self) -> bool:
        return self.total == 1


def unitriangular_type_counts(n: int, q: int, method: str = "auto") -> dict[Partition, int]:
    """N_rho(q) for rho of size n.

    "brute" enumerates all q^(n(n-1)/2) matrices; "recursion" folds the
    brute-force extension counts level by level (each level-(n+1) matrix is
    the extension of a unique corner); "auto" picks brute where it is cheap.
    """
    if method == "auto":
        method = "brute" if (q == 2 and n <= 5) or (q == 3 and n <= 4) or n <= 3 else "recursion"
    if method == "brute":
        return gflinalg.count_unitriangular_by_type(n, q)
    counts: dict[Partition, int] = {(): 1}
    for level in range(n):
        nxt: dict[Partition, int] = {}
        for rho, mult in counts.items():
            for sigma, c in gflinalg.extension_counts(rho, q).items():
                nxt[sigma] = nxt.get(sigma, 0) + mult * c
        counts = nxt
    return counts


def check_normalization(meas: CentralMeasure, n: int, counts: str = "auto") -> NormalizationReport:
    """Exact verdict on sum over rho of N_rho(q) M_rho = 1 at level n."""
    q = int(meas.ground.q)
    type_counts = unitriangular_type_counts(n, q, counts)
    total = sum(
        (Fraction(c) * cylinder_prob(meas, rho) for rho, c in type_counts.items()),
        Fraction(0),
    )
    return NormalizationReport(n, q, total, counts)


# ---------------------------------------------------------------------------
# fast cylinder route for low-width points (used by the growth sampler)
# ---------------------------------------------------------------------------


def fast_route_available(spec: ThomaSpec) -> bool:
    """True when cylinder values can be computed without degree-capped
    symmetric-function matrices: at most two alpha atoms and nothing else,
    or a single beta atom and nothing else."""
    if spec.gamma != 0:
        return False
    if any(e.geometric for e in spec.alphas + spec.betas):
        return False
    if not spec.betas and len(spec.alphas) <= 2:
        return True
    if not spec.alphas and len(spec.betas) == 1:
        return True
    return False


def r_function_fast(rho: Partition, spec: ThomaSpec, q: Fraction) -> Fraction:
    """r-function of a low-width point via invariant-subspace counts.

    For alpha atoms (a, b): r_rho = sum over two-part nu of
    psi^nu_rho(q) m_nu(a, b), where psi counts invariant subspaces.  For a
    single beta atom b: b^n q^(n(n-1)/2) on the one-column type, else 0.
    """
    rho = validate_partition(rho)
    n = sum(rho)
    if n == 0:
        return Fraction(1)
    if not spec.betas:
        atoms = [e.value for e in spec.alphas]
        if len(atoms) == 1:
            return atoms[0] ** n
        a, b = atoms
        total = Fraction(0)
        for k in range(0, n // 2 + 1):
            psi = Fraction(gflinalg.invariant_subspace_count(rho, k, int(q)))
            if n - k == k:
                m_nu = a**k * b**k
            else:
                m_nu = a ** (n - k) * b**k + a**k * b ** (n - k)
            total += psi * m_nu
        return total
    b = spec.betas[0].value
    if rho == tuple([1] * n):
        return b**n * Fraction(q) ** (n * (n - 1) // 2)
    return Fraction(0)


def cylinder_prob_fast(meas: CentralMeasure, rho: Partition) -> Fraction:
    """Cylinder probability through the fast r route (no degree cap)."""
    if not fast_route_available(meas.label):
        raise ValueError("fast route needs <= 2 alpha atoms or a single beta atom")
    rho = validate_partition(rho)
    if rho in meas.memo:
        return meas.memo[rho]
    n = sum(rho)
    value = _level_factor(meas.ground.q, n) * r_function_fast(rho, meas.label, meas.ground.q)
    if value < 0:
        raise NegativeCylinderError(f"negative cylinder value at {rho}")
    meas.memo[rho] = value
    return value

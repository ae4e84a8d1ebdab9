"""Exact symmetric-function engine at a fixed rational deformation parameter.

Bases: monomial, Schur, power sum, Hall-Littlewood P and Q.  Every
coefficient is a ``Fraction``; the parameter t is a fixed rational (in the
finite-field applications t = 1/q), never a symbolic variable.  Transition
matrices are built once per degree (and per t where relevant), indexed by the
reverse-lexicographic partition list, and are triangular with unit diagonal
wherever dominance theory says they must be.

Evaluation points are ``ThomaSpec`` objects: finite lists of atom or
geometric-family coordinates (alpha; beta) plus a gamma that feeds only the
first power sum.  A geometric entry with mass a stands for the sequence
(1-t)a, (1-t)ta, (1-t)t^2 a, ...; its power sums have the closed form
(1-t)^m a^m / (1-t^m), so no truncation is ever involved.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence, Union

from .partitions import (
    Partition,
    Tableau,
    check_degree,
    enumerate_partitions,
    enumerate_ssyt,
    kostka_number,
    n_stat,
    partition_index,
    validate_partition,
)

Rational = Union[int, Fraction]

BASES = ("monomial", "schur", "powersum", "hlP", "hlQ")


# ---------------------------------------------------------------------------
# ground parameters and evaluation points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroundParams:
    """The pair (q, t) with t = 1/q and q > 1 rational."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q <= 1:
            raise ValueError("q must exceed 1")

    @property
    def t(self) -> Fraction:
        return 1 / self.q


@dataclass(frozen=True)
class SpecEntry:
    value: Fraction
    geometric: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise ValueError("entry values must be nonnegative")


def _canonical_entries(entries) -> tuple[SpecEntry, ...]:
    out = []
    for e in entries:
        if isinstance(e, SpecEntry):
            out.append(e)
        elif isinstance(e, tuple):
            out.append(SpecEntry(Fraction(e[0]), bool(e[1])))
        else:
            out.append(SpecEntry(Fraction(e), False))
    # weakly decreasing values within each kind
    atoms = sorted((e for e in out if not e.geometric), key=lambda e: e.value, reverse=True)
    geos = sorted((e for e in out if e.geometric), key=lambda e: e.value, reverse=True)
    return tuple(atoms) + tuple(geos)


@dataclass(frozen=True)
class ThomaSpec:
    """Evaluation point (alpha; beta; gamma) with exact rational masses.

    The mass of an entry is its ``value`` whether or not it is geometric
    (a geometric family's masses sum back to the value).  ``gamma``
    contributes to p_1 only.
    """

    alphas: tuple[SpecEntry, ...] = ()
    betas: tuple[SpecEntry, ...] = ()
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alphas", _canonical_entries(self.alphas))
        object.__setattr__(self, "betas", _canonical_entries(self.betas))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")

    @property
    def mass(self) -> Fraction:
        return (
            sum((e.value for e in self.alphas), Fraction(0))
            + sum((e.value for e in self.betas), Fraction(0))
            + self.gamma
        )

    def require_normalized(self) -> None:
        if self.mass != 1:
            raise ValueError(f"spec mass {self.mass} != 1")

    def power_sum(self, m: int, t: Rational) -> Fraction:
        """p_m at this point: alpha atoms a^m, beta atoms -(-b)^m, geometric
        entries by the closed form, gamma into p_1 only."""
        if m < 1:
            raise ValueError("m must be >= 1")
        t = Fraction(t)
        total = Fraction(0)
        if m == 1:
            total += self.gamma
        for e in self.alphas:
            if e.geometric:
                total += (1 - t) ** m * e.value**m / (1 - t**m)
            else:
                total += e.value**m
        for e in self.betas:
            if e.geometric:
                total -= (1 - t) ** m * (-e.value) ** m / (1 - t**m)
            else:
                total -= (-e.value) ** m
        return total


@dataclass(frozen=True)
class PowerFunctional:
    """Evaluation functional E_d with p_m(E_d) = p_{md} of a base point.

    The base parameter t is bound at construction; the t argument of
    ``power_sum`` is ignored (callers typically pass t^d).
    """

    base: "EvalPoint"
    d: int
    base_t: Fraction

    def power_sum(self, m: int, t: Rational = None) -> Fraction:  # noqa: ARG002
        return self.base.power_sum(m * self.d, self.base_t)


EvalPoint = Union[ThomaSpec, PowerFunctional]


def power_sum_value(spec: EvalPoint, m: int, t: Rational) -> Fraction:
    return spec.power_sum(m, t)


def power_substitution(spec: EvalPoint, d: int, t: Rational) -> PowerFunctional:
    """The power substitution sending p_m to p_{md}, realized as a functional."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return PowerFunctional(spec, d, Fraction(t))


def geometric_merge(spec: ThomaSpec) -> ThomaSpec:
    """Replace every alpha atom by the geometric family of the same mass."""
    if any(e.geometric for e in spec.alphas):
        raise ValueError("alpha already contains geometric entries")
    return ThomaSpec(
        alphas=tuple(SpecEntry(e.value, True) for e in spec.alphas),
        betas=spec.betas,
        gamma=spec.gamma,
    )


def geometric_merge_beta(spec: ThomaSpec) -> ThomaSpec:
    """Replace every beta atom by the geometric family of the same mass."""
    if any(e.geometric for e in spec.betas):
        raise ValueError("beta already contains geometric entries")
    return ThomaSpec(
        alphas=spec.alphas,
        betas=tuple(SpecEntry(e.value, True) for e in spec.betas),
        gamma=spec.gamma,
    )


# ---------------------------------------------------------------------------
# spec files
# ---------------------------------------------------------------------------


def _fraction_to_str(x: Fraction) -> str:
    return str(x)


def _fraction_from_str(s) -> Fraction:
    return Fraction(s)


def spec_to_dict(spec: ThomaSpec, q: Rational | None = None) -> dict:
    doc = {
        "alphas": [{"value": _fraction_to_str(e.value), "geometric": e.geometric} for e in spec.alphas],
        "betas": [{"value": _fraction_to_str(e.value), "geometric": e.geometric} for e in spec.betas],
        "gamma": _fraction_to_str(spec.gamma),
    }
    if q is not None:
        doc["q"] = _fraction_to_str(Fraction(q))
    return doc


def spec_from_dict(doc: Mapping) -> tuple[ThomaSpec, Fraction | None]:
    def entries(key):
        return tuple(
            SpecEntry(_fraction_from_str(e["value"]), bool(e.get("geometric", False)))
            for e in doc.get(key, ())
        )

    spec = ThomaSpec(entries("alphas"), entries("betas"), _fraction_from_str(doc.get("gamma", "0")))
    q = _fraction_from_str(doc["q"]) if "q" in doc else None
    return spec, q


def save_spec(path, spec: ThomaSpec, q: Rational | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec, q), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_spec(path) -> tuple[ThomaSpec, Fraction | None]:
    with open(path, encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# charge and Kostka-Foulkes
# ---------------------------------------------------------------------------


def reading_word(t: Tableau) -> tuple[int, ...]:
    """Rows read right to left, top row first."""
    word: list[int] = []
    for row in t:
        word.extend(reversed(row))
    return tuple(word)


def _standard_charge(letters: Sequence[int], positions: Sequence[int]) -> int:
    """Charge of a standard subword given as (letter, position-in-word) pairs."""
    pos = {letter: p for letter, p in zip(letters, positions)}
    index = 0
    total = 0
    for r in range(2, len(letters) + 1):
        if pos[r] < pos[r - 1]:
            index += 1
        total += index
    return total


def charge(t: Tableau) -> int:
    """Charge of a semistandard tableau with partition content.

    The reading word is decomposed into standard subwords by the circular
    rule: take the rightmost 1, then for each next letter the first
    occurrence strictly to the right of the current one, wrapping to the
    leftmost occurrence when none remains; the charge is the sum of the
    subword charges.  Pinned by: one-row tableaux of content rho have charge
    n(rho), the superstandard tableau of any shape has charge 0, and the full
    transition matrices match the brute-force symmetrization oracle.
    """
    word = list(reading_word(t))
    content: dict[int, int] = {}
    for v in word:
        content[v] = content.get(v, 0) + 1
    letters = sorted(content)
    if letters != list(range(1, len(letters) + 1)) or any(
        content[i] < content[i + 1] for i in range(1, len(letters))
    ):
        raise ValueError("charge requires partition content")

    total = 0
    alive = list(range(len(word)))
    while alive:
        max_letter = max(word[i] for i in alive)
        chosen: list[int] = []
        cursor = None
        for letter in range(1, max_letter + 1):
            cand = [i for i in alive if word[i] == letter and i not in chosen]
            if cursor is None:
                pick = max(cand)
            else:
                right = [i for i in cand if i > cursor]
                pick = min(right) if right else min(cand)
            chosen.append(pick)
            cursor = pick
        chosen_sorted = sorted(chosen)
        total += _standard_charge([word[i] for i in chosen_sorted], chosen_sorted)
        alive = [i for i in alive if i not in set(chosen)]
    return total


@lru_cache(maxsize=None)
def _charges(shape: Partition, content: Partition) -> tuple[int, ...]:
    return tuple(charge(t) for t in enumerate_ssyt(shape, content))


def kostka_foulkes_entry(shape: Partition, content: Partition, t: Rational) -> Fraction:
    t = Fraction(t)
    return sum((t**c for c in _charges(shape, content)), Fraction(0))


@lru_cache(maxsize=None)
def kostka_numbers(n: int) -> tuple[tuple[int, ...], ...]:
    """The degree-n Kostka matrix K[lam][mu] in reverse-lex indexing."""
    check_degree(n)
    parts = enumerate_partitions(n)
    return tuple(
        tuple(kostka_number(lam, mu) for mu in parts) for lam in parts
    )


CACHE_ENV_VAR = "HALLQ_CACHE_DIR"
CACHE_FORMAT = "hallq-matrix-cache-v1"


def _cache_path(kind: str, n: int, t: Fraction) -> Path | None:
    root = os.environ.get(CACHE_ENV_VAR)
    if not root:
        return None
    tag = f"{t.numerator}_{t.denominator}"
    return Path(root) / f"{kind}-n{n}-t{tag}.json"


def _cache_load(kind: str, n: int, t: Fraction):
    path = _cache_path(kind, n, t)
    if path is None or not path.exists():
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("format") != CACHE_FORMAT or doc.get("n") != n or doc.get("t") != str(t):
            return None
        return tuple(tuple(Fraction(x) for x in row) for row in doc["rows"])
    except (OSError, ValueError, KeyError):
        return None


def _cache_store(kind: str, n: int, t: Fraction, rows) -> None:
    path = _cache_path(kind, n, t)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {
            "format": CACHE_FORMAT,
            "kind": kind,
            "n": n,
            "t": str(t),
            "rows": [[str(x) for x in row] for row in rows],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
    except OSError:
        pass


@lru_cache(maxsize=None)
def kostka_foulkes(n: int, t: Fraction) -> tuple[tuple[Fraction, ...], ...]:
    """The degree-n Kostka-Foulkes matrix at exact rational t.

    Cached in memory per (n, t); persisted under the directory named by the
    HALLQ_CACHE_DIR environment variable when it is set.
    """
    check_degree(n)
    t = Fraction(t)
    cached = _cache_load("kostka-foulkes", n, t)
    if cached is not None:
        return cached
    parts = enumerate_partitions(n)
    rows = tuple(
        tuple(kostka_foulkes_entry(lam, mu, t) for mu in parts) for lam in parts
    )
    _cache_store("kostka-foulkes", n, t, rows)
    return rows


# ---------------------------------------------------------------------------
# transition matrices
# ---------------------------------------------------------------------------


def _m_times_p(coeffs: dict[Partition, Fraction], r: int) -> dict[Partition, Fraction]:
    """Multiply a monomial-basis element by the power sum p_r."""
    out: dict[Partition, Fraction] = {}
    for mu, c in coeffs.items():
        values = set(mu) | {0}
        for v in values:
            if v == 0:
                nu = tuple(sorted(mu + (r,), reverse=True))
            else:
                lst = list(mu)
                lst.remove(v)
                nu = tuple(sorted(lst + [v + r], reverse=True))
            mult = nu.count(v + r)
            out[nu] = out.get(nu, Fraction(0)) + c * mult
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def p_in_m(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows: p_rho expanded in monomials, degree n."""
    check_degree(n)
    parts = enumerate_partitions(n)
    idx = partition_index(n)
    rows = []
    for rho in parts:
        acc: dict[Partition, Fraction] = {(): Fraction(1)}
        for r in rho:
            acc = _m_times_p(acc, r)
        row = [Fraction(0)] * len(parts)
        for mu, c in acc.items():
            row[idx[mu]] = c
        rows.append(tuple(row))
    return tuple(rows)


def _invert(matrix: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@lru_cache(maxsize=None)
def m_in_p(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows: m_mu expanded in power sums (inverse of p_in_m)."""
    return _invert(p_in_m(n))


@lru_cache(maxsize=None)
def s_in_m(n: int) -> tuple[tuple[Fraction, ...], ...]:
    K = kostka_numbers(n)
    return tuple(tuple(Fraction(x) for x in row) for row in K)


@lru_cache(maxsize=None)
def s_in_p(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return _mat_mul(s_in_m(n), m_in_p(n))


def _mat_mul(a, b):
    size = len(a)
    cols = range(len(b[0]))
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(size) if a[i][k]), Fraction(0)) for j in cols)
        for i in range(size)
    )


def b_coefficient(lam: Partition, t: Rational) -> Fraction:
    """b_lam(t) = prod over part multiplicities m of (1-t)(1-t^2)...(1-t^m)."""
    t = Fraction(t)
    out = Fraction(1)
    mult: dict[int, int] = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    for m in mult.values():
        for k in range(1, m + 1):
            out *= 1 - t**k
    return out


@lru_cache(maxsize=None)
def hl_transition(n: int, t: Fraction) -> tuple:
    """(P-in-monomial, Q-in-monomial, b coefficients) at degree n, rational t.

    Solves s = K(t) P by back substitution; K(t) is unit upper triangular in
    the reverse-lex indexing, which is asserted.
    """
    check_degree(n)
    t = Fraction(t)
    if t == 1:
        raise ValueError("t = 1 not allowed (Q normalization degenerates)")
    parts = enumerate_partitions(n)
    size = len(parts)
    K = kostka_foulkes(n, t)
    for i in range(size):
        assert K[i][i] == 1, "Kostka-Foulkes diagonal must be 1"
        for j in range(i):
            assert K[i][j] == 0, "Kostka-Foulkes must be upper triangular"
    S = s_in_m(n)
    P = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size - 1, -1, -1):
        row = list(S[i])
        for j in range(i + 1, size):
            if K[i][j]:
                c = K[i][j]
                row = [x - c * y for x, y in zip(row, P[j])]
        P[i] = row
    b = tuple(b_coefficient(lam, t) for lam in parts)
    Q = tuple(tuple(b[i] * x for x in P[i]) for i in range(size))
    return tuple(tuple(r) for r in P), Q, b


@lru_cache(maxsize=None)
def hl_q_in_p(n: int, t: Fraction) -> tuple[tuple[Fraction, ...], ...]:
    """Q-in-powersum transition, disk-cached like the Kostka-Foulkes matrix."""
    cached = _cache_load("hl-q-in-p", n, Fraction(t))
    if cached is not None:
        return cached
    _, Q, _ = hl_transition(n, t)
    rows = _mat_mul(Q, m_in_p(n))
    _cache_store("hl-q-in-p", n, Fraction(t), rows)
    return rows


# ---------------------------------------------------------------------------
# vectors and evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymFuncVec:
    """A degree-homogeneous symmetric function in a named basis."""

    degree: int
    basis: str
    coeffs: tuple[tuple[Partition, Fraction], ...]
    t: Fraction = Fraction(0)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        norm = tuple(
            (validate_partition(lam), Fraction(c)) for lam, c in self.coeffs if c
        )
        for lam, _ in norm:
            if sum(lam) != self.degree:
                raise ValueError("coefficient index of wrong degree")
        object.__setattr__(self, "coeffs", norm)
        object.__setattr__(self, "t", Fraction(self.t))

    def coeff_map(self) -> dict[Partition, Fraction]:
        return dict(self.coeffs)


def basis_vec(basis: str, lam, t: Rational = 0) -> SymFuncVec:
    lam = validate_partition(lam)
    return SymFuncVec(sum(lam), basis, ((lam, Fraction(1)),), Fraction(t))


def to_power_sums(f: SymFuncVec) -> SymFuncVec:
    """Exact change of basis into power sums."""
    n = f.degree
    check_degree(n)
    parts = enumerate_partitions(n)
    idx = partition_index(n)
    if f.basis == "powersum":
        return f
    if f.basis == "monomial":
        mat = m_in_p(n)
    elif f.basis == "schur":
        mat = s_in_p(n)
    elif f.basis in ("hlP", "hlQ"):
        P, Q, _ = hl_transition(n, f.t)
        base = P if f.basis == "hlP" else Q
        mat = _mat_mul(base, m_in_p(n))
    out = [Fraction(0)] * len(parts)
    for lam, c in f.coeffs:
        row = mat[idx[lam]]
        for j in range(len(parts)):
            if row[j]:
                out[j] += c * row[j]
    return SymFuncVec(n, "powersum", tuple((parts[j], out[j]) for j in range(len(parts)) if out[j]))


def power_values(spec: EvalPoint, t: Rational, n: int) -> tuple[Fraction, ...]:
    """(p_1, ..., p_n) at the evaluation point."""
    return tuple(spec.power_sum(m, t) for m in range(1, n + 1))


def evaluate(f: SymFuncVec, spec: EvalPoint, t: Rational | None = None) -> Fraction:
    """Evaluate a symmetric function at a ThomaSpec (or functional), exactly.

    ``t`` defaults to the vector's own parameter; it only matters for
    geometric entries of the spec.
    """
    if t is None:
        t = f.t
    g = to_power_sums(f)
    if g.degree == 0:
        return sum((c for _, c in g.coeffs), Fraction(0))
    pv = power_values(spec, t, g.degree)
    total = Fraction(0)
    for rho, c in g.coeffs:
        prod = Fraction(1)
        for part in rho:
            prod *= pv[part - 1]
        total += c * prod
    return total


def schur_values(spec: EvalPoint, t: Rational, n: int) -> tuple[Fraction, ...]:
    """s_lam at the point, for all lam of degree n in reverse-lex order."""
    if n == 0:
        return (Fraction(1),)
    pv = power_values(spec, t, n)
    mat = s_in_p(n)
    parts = enumerate_partitions(n)
    vals = []
    for i in range(len(parts)):
        total = Fraction(0)
        for j, rho in enumerate(parts):
            c = mat[i][j]
            if c:
                prod = Fraction(1)
                for part in rho:
                    prod *= pv[part - 1]
                total += c * prod
        vals.append(total)
    return tuple(vals)


def monomial_values(spec: EvalPoint, t: Rational, n: int) -> tuple[Fraction, ...]:
    """m_nu at the point, for all nu of degree n in reverse-lex order."""
    if n == 0:
        return (Fraction(1),)
    pv = power_values(spec, t, n)
    mat = m_in_p(n)
    parts = enumerate_partitions(n)
    vals = []
    for i in range(len(parts)):
        total = Fraction(0)
        for j, rho in enumerate(parts):
            c = mat[i][j]
            if c:
                prod = Fraction(1)
                for part in rho:
                    prod *= pv[part - 1]
                total += c * prod
        vals.append(total)
    return tuple(vals)


def r_function(rho: Partition, spec: EvalPoint, t: Rational) -> Fraction:
    """t^(-n(rho)) * sum over lam of K_{lam,rho}(t) s_lam(spec).

    This is the unipotent-class character value of the point; it equals 1
    for every rho when the point is the single alpha atom 1.
    """
    rho = validate_partition(rho)
    n = sum(rho)
    check_degree(n)
    t = Fraction(t)
    if n == 0:
        return Fraction(1)
    parts = enumerate_partitions(n)
    j = partition_index(n)[rho]
    K = kostka_foulkes(n, t)
    svals = schur_values(spec, t, n)
    total = Fraction(0)
    for i in range(len(parts)):
        if K[i][j]:
            total += K[i][j] * svals[i]
    return total / t ** n_stat(rho)

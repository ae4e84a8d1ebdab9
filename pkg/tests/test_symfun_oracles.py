"""Independent oracles for the symmetric-function engine.

The charge-based transition matrices are checked against brute-force
symmetrization; evaluation through power sums is checked against truncated
direct evaluation of the monomial expansion and against the hook expansion
of two-alphabet Schur functions.
"""

import random
from fractions import Fraction as F
from itertools import combinations_with_replacement

import pytest

from hallq.hloracle import hl_p_in_monomial_brute
from hallq.partitions import conjugate, enumerate_partitions
from hallq.symfun import (
    SpecEntry,
    ThomaSpec,
    basis_vec,
    evaluate,
    hl_transition,
    monomial_values,
    power_values,
    s_in_m,
    schur_values,
)

HALF = F(1, 2)
THIRD = F(1, 3)


@pytest.mark.parametrize("t", [HALF, THIRD])
def test_hl_transition_matches_symmetrization_small(t):
    for n in range(1, 5):
        P, _, _ = hl_transition(n, t)
        assert P == hl_p_in_monomial_brute(n, t)


@pytest.mark.parametrize("t", [HALF, THIRD])
def test_hl_transition_matches_symmetrization_degree5(t):
    P, _, _ = hl_transition(5, t)
    assert P == hl_p_in_monomial_brute(5, t)


def _monomial_direct(mu, xs):
    """m_mu at an explicit variable list, by dynamic programming over
    sub-multisets of mu."""
    from functools import lru_cache

    mu = tuple(mu)

    @lru_cache(maxsize=None)
    def rec(i, used):
        if not used:
            return F(1)
        if i == len(xs):
            return F(0)
        total = rec(i + 1, used)
        for v in set(used):
            rest = list(used)
            rest.remove(v)
            total += rec(i + 1, tuple(rest)) * xs[i] ** v
        return total

    return rec(0, tuple(sorted(mu)))


def test_monomial_values_match_direct_evaluation_atoms():
    xs = (F(1, 2), F(1, 3), F(1, 12), F(1, 12))
    spec = ThomaSpec(alphas=tuple(SpecEntry(x) for x in xs))
    for n in range(1, 6):
        vals = monomial_values(spec, HALF, n)
        for i, mu in enumerate(enumerate_partitions(n)):
            assert vals[i] == _monomial_direct(mu, xs), mu


def test_schur_values_match_direct_evaluation_atoms():
    xs = (F(2, 5), F(2, 5), F(1, 5))
    spec = ThomaSpec(alphas=tuple(SpecEntry(x) for x in xs))
    for n in range(1, 6):
        K = s_in_m(n)
        mvals = [
            _monomial_direct(mu, xs) for mu in enumerate_partitions(n)
        ]
        svals = schur_values(spec, HALF, n)
        for i in range(len(mvals)):
            direct = sum((K[i][j] * mvals[j] for j in range(len(mvals))), F(0))
            assert svals[i] == direct


def test_geometric_evaluation_matches_truncation():
    spec = ThomaSpec(alphas=(SpecEntry(F(2, 3), True), SpecEntry(F(1, 3))))
    t = HALF
    terms = [F(1, 3)] + [(1 - t) * t**j * F(2, 3) for j in range(60)]
    for n in range(1, 5):
        for mu in enumerate_partitions(n):
            exact = float(evaluate(basis_vec("monomial", mu), spec, t))
            approx = float(_monomial_direct(mu, tuple(terms)))
            assert abs(exact - approx) < 1e-12, mu


def _h_values(atoms, k_max):
    out = [F(1)]
    for k in range(1, k_max + 1):
        total = F(0)
        for combo in combinations_with_replacement(atoms, k):
            prod = F(1)
            for x in combo:
                prod *= x
            total += prod
        out.append(total)
    return out


def _skew_schur_atoms(sigma, tau, atoms):
    """Jacobi-Trudi determinant det(h_{sigma_i - tau_j - i + j})."""
    size = len(sigma)
    h = _h_values(atoms, sum(sigma) + size)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            k = sigma[i] - (tau[j] if j < len(tau) else 0) - i + j
            row.append(h[k] if 0 <= k < len(h) else F(0))
        rows.append(row)
    # exact determinant by expansion (size <= 4)
    def det(m):
        if len(m) == 1:
            return m[0][0]
        total = F(0)
        for j in range(len(m)):
            if m[0][j] == 0:
                continue
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
        return total

    return det(rows) if rows else F(1)


def test_two_alphabet_schur_hook_expansion():
    """s_lam(alpha; beta) equals the sum over mu inside lam of
    s_mu(alpha) s_{lam'/mu'}(beta), both sides exact."""
    alphas = (F(1, 2), F(1, 4))
    betas = (F(1, 8), F(1, 8))
    spec = ThomaSpec(
        alphas=tuple(SpecEntry(a) for a in alphas),
        betas=tuple(SpecEntry(b) for b in betas),
    )
    for n in range(1, 5):
        for lam in enumerate_partitions(n):
            via_p = evaluate(basis_vec("schur", lam), spec, HALF)
            lam_c = conjugate(lam)
            total = F(0)
            for m in range(n + 1):
                for mu in enumerate_partitions(m):
                    if len(mu) > len(lam) or any(
                        mu[i] > lam[i] for i in range(len(mu))
                    ):
                        continue
                    s_mu = _skew_schur_atoms(mu, (), alphas) if mu else F(1)
                    skew = _skew_schur_atoms(lam_c, conjugate(mu), betas) if lam_c else F(1)
                    total += s_mu * skew
            assert via_p == total, lam


def test_power_values_prefix_consistency():
    spec = ThomaSpec(alphas=(SpecEntry(F(1, 2), True), SpecEntry(F(1, 2))))
    pv = power_values(spec, HALF, 8)
    assert pv[0] == 1
    for m in range(1, 9):
        assert pv[m - 1] == spec.power_sum(m, HALF)


def test_random_specs_power_route_vs_monomial_route():
    rng = random.Random(9)
    for _ in range(20):
        cuts = sorted(rng.randint(1, 23) for _ in range(2))
        masses = [F(cuts[0], 24), F(cuts[1] - cuts[0], 24), F(24 - cuts[1], 24)]
        masses = [m for m in masses if m]
        spec = ThomaSpec(alphas=tuple(SpecEntry(m) for m in masses))
        xs = tuple(m for m in masses)
        for n in range(1, 5):
            vals = monomial_values(spec, HALF, n)
            for i, mu in enumerate(enumerate_partitions(n)):
                assert vals[i] == _monomial_direct(mu, xs)

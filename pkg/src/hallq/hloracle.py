"""Brute-force Hall-Littlewood P polynomials by explicit symmetrization.

Independent oracle: P_lam in n = |lam| variables is computed from the
defining alternant

    P_lam = (1/v_lam(t)) * sum over w in S_n of
            sign(w) * w(x^lam * prod_{i<j} (x_i - t x_j)) / Vandermonde

with exact polynomial arithmetic over Fractions.  Never used on the main
code path; tests compare the charge-based transition matrices against it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .partitions import Partition, enumerate_partitions, partition_index

Poly = dict[tuple[int, ...], Fraction]


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, Fraction(0)) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def _poly_add_inplace(a: Poly, b: Poly, scale: Fraction) -> None:
    for e, c in b.items():
        v = a.get(e, Fraction(0)) + scale * c
        if v:
            a[e] = v
        elif e in a:
            del a[e]


def _divide_by_binomial(a: Poly, i: int, j: int, nvars: int) -> Poly:
    """Exact division by (x_i - x_j)."""
    out: Poly = {}
    rem = dict(a)
    while rem:
        # leading term in lex order
        e = max(rem)
        c = rem[e]
        if e[i] == 0:
            raise ArithmeticError("not divisible")
        q = list(e)
        q[i] -= 1
        qe = tuple(q)
        out[qe] = out.get(qe, Fraction(0)) + c
        # subtract c * x^qe * (x_i - x_j)
        t1 = tuple(x + (1 if k == i else 0) for k, x in enumerate(qe))
        t2 = tuple(x + (1 if k == j else 0) for k, x in enumerate(qe))
        for term, sgn in ((t1, c), (t2, -c)):
            v = rem.get(term, Fraction(0)) - sgn
            if v:
                rem[term] = v
            else:
                rem.pop(term, None)
    return out


def _t_product(nvars: int, t: Fraction) -> Poly:
    prod: Poly = {(0,) * nvars: Fraction(1)}
    for i in range(nvars):
        for j in range(i + 1, nvars):
            term: Poly = {}
            e1 = [0] * nvars
            e1[i] = 1
            e2 = [0] * nvars
            e2[j] = 1
            term[tuple(e1)] = Fraction(1)
            term[tuple(e2)] = -t
            prod = _poly_mul(prod, term)
    return prod


def _sign(perm: tuple[int, ...]) -> int:
    sgn = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sgn = -sgn
    return sgn


def _v_factor(lam: Partition, nvars: int, t: Fraction) -> Fraction:
    """v_lam(t) = prod over i >= 0 of prod_{k<=m_i} (1-t^k)/(1-t), with m_0
    the number of zero parts among the nvars variables."""
    mult: dict[int, int] = {0: nvars - len(lam)}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    out = Fraction(1)
    for m in mult.values():
        for k in range(1, m + 1):
            out *= (1 - t**k) / (1 - t)
    return out


def hl_p_brute(lam: Partition, t: Fraction) -> Poly:
    """P_lam(x_1..x_n; t) with n = |lam| variables, as an exact polynomial."""
    n = sum(lam)
    nvars = max(n, 1)
    t = Fraction(t)
    tprod = _t_product(nvars, t)
    exps = tuple(lam) + (0,) * (nvars - len(lam))
    acc: Poly = {}
    for perm in permutations(range(nvars)):
        # w(x^lam * tprod): permute variable indices by w
        mono = [0] * nvars
        for pos, e in enumerate(exps):
            mono[perm[pos]] = e
        shifted: Poly = {}
        for e, c in tprod.items():
            pe = [0] * nvars
            for pos, val in enumerate(e):
                pe[perm[pos]] = val
            key = tuple(p + m for p, m in zip(pe, mono))
            shifted[key] = shifted.get(key, Fraction(0)) + c
        _poly_add_inplace(acc, shifted, Fraction(_sign(perm)))
    # divide by the Vandermonde prod_{i<j} (x_i - x_j)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            acc = _divide_by_binomial(acc, i, j, nvars)
    v = _v_factor(lam, nvars, t)
    return {e: c / v for e, c in acc.items()}


def poly_to_monomial_coeffs(poly: Poly, n: int) -> dict[Partition, Fraction]:
    """Collect a symmetric polynomial in >= n variables into m_mu coefficients."""
    out: dict[Partition, Fraction] = {}
    for e, c in poly.items():
        mu = tuple(sorted((x for x in e if x), reverse=True))
        if sum(mu) != n:
            raise ValueError("inhomogeneous polynomial")
        if mu not in out:
            out[mu] = c
        elif out[mu] != c:
            raise ValueError(f"not symmetric at {mu}")
    return out


def hl_p_in_monomial_brute(n: int, t: Fraction) -> tuple[tuple[Fraction, ...], ...]:
    """Rows P_lam in the monomial basis, computed by symmetrization."""
    parts = enumerate_partitions(n)
    idx = partition_index(n)
    rows = []
    for lam in parts:
        coeffs = poly_to_monomial_coeffs(hl_p_brute(lam, t), n)
        row = [Fraction(0)] * len(parts)
        for mu, c in coeffs.items():
            row[idx[mu]] = c
        rows.append(tuple(row))
    return tuple(rows)

"""Schubert cells of Grassmannians over F_q, at finite truncation.

A subspace E of F_q^N is classified against the principal flag
V_1 < V_2 < ... (V_i = first i coordinates) by its 0/1 symbol
eps_i = dim(E n V_i) - dim(E n V_{i-1}).  The cell of a symbol is a Borel
orbit of size q^d with d = sum_j (p_j - j) over the positions p_1 < p_2 < ...
of the 1s; the declared cell dimension follows the absolute convention
sum_i i*eps_i, which exceeds d by k(k+1)/2 for k ones (worked example in the
docstring of ``affine_dimension``).  Ratios of cell sizes only see the
difference of dimensions, so both conventions give the same cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .gflinalg import all_subspaces
from .partitions import gaussian_binomial


@dataclass(frozen=True)
class SchubertSymbol:
    """Finite 0/1 word plus the constant tail it is understood to continue
    with ("zeros" or "ones")."""

    word: tuple[int, ...]
    tail: str = "zeros"

    def __post_init__(self):
        if any(x not in (0, 1) for x in self.word):
            raise ValueError("symbol entries must be 0 or 1")
        if self.tail not in ("zeros", "ones"):
            raise ValueError("tail policy must be 'zeros' or 'ones'")

    @property
    def ones(self) -> int:
        return sum(self.word)


def cell_dimension(eps: SchubertSymbol):
    """Absolute dimension sum_i i*eps_i (1-based); infinite for an all-ones
    tail."""
    if eps.tail == "ones":
        return inf
    return sum((i + 1) * x for i, x in enumerate(eps.word))


def affine_dimension(eps: SchubertSymbol) -> int:
    """Dimension of the cell as an affine space over F_q at this truncation:
    sum (p_j - j) over 1-positions p_1 < p_2 < ...

    Worked example: (0,1,1) has ones at positions 2,3, absolute dimension
    2 + 3 = 5, affine dimension (2-1) + (3-2) = 2, and indeed the cell of
    (0,1,1) in Gr_2(F_q^3) has q^2 elements.
    """
    if eps.tail == "ones":
        raise ValueError("affine dimension undefined for an all-ones tail")
    dim = 0
    j = 0
    for i, x in enumerate(eps.word):
        if x:
            j += 1
            dim += (i + 1) - j
    return dim


def _aligned(eps: SchubertSymbol, eps2: SchubertSymbol) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if eps.tail != eps2.tail:
        raise ValueError("symbols have different tail policies")
    fill = 1 if eps.tail == "ones" else 0
    n = max(len(eps.word), len(eps2.word))
    a = eps.word + (fill,) * (n - len(eps.word))
    b = eps2.word + (fill,) * (n - len(eps2.word))
    return a, b


def cocycle(eps: SchubertSymbol, eps2: SchubertSymbol, q) -> Fraction:
    """Measure ratio q^(sum i (eps_i - eps'_i)) between congruent cells."""
    a, b = _aligned(eps, eps2)
    if sum(a) != sum(b):
        raise ValueError("symbols with different 1-counts are not congruent")
    exponent = sum((i + 1) * (x - y) for i, (x, y) in enumerate(zip(a, b)))
    return Fraction(q) ** exponent


def symbol_of_subspace(space: frozenset, n: int) -> SchubertSymbol:
    """Symbol of a subspace given as its full vector set in F_q^n."""
    dims = []
    size = 1
    for i in range(1, n + 1):
        count = sum(1 for v in space if all(x == 0 for x in v[i:]))
        dims.append(count)
    word = []
    prev = 1
    for c in dims:
        # dims are q-powers; a jump by factor q is a 1 in the symbol
        word.append(1 if c > prev else 0)
        prev = c
    return SchubertSymbol(tuple(word))


def enumerate_schubert_cells(n: int, k: int, q: int) -> dict[SchubertSymbol, int]:
    """Partition of all k-subspaces of F_q^n into cells, with sizes."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    cells: dict[SchubertSymbol, int] = {}
    for space, d in all_subspaces(n, q):
        if d != k:
            continue
        sym = symbol_of_subspace(space, n)
        cells[sym] = cells.get(sym, 0) + 1
    return cells


def grassmann_mass(n: int, alpha1, alpha2, q) -> Fraction:
    """Total mass sum_m C(n,m)_q alpha1^m alpha2^(n-m)."""
    alpha1, alpha2 = Fraction(alpha1), Fraction(alpha2)
    if alpha1 < 0 or alpha2 < 0:
        raise ValueError("weights must be nonnegative")
    return sum(
        (gaussian_binomial(n, m, q) * alpha1**m * alpha2 ** (n - m) for m in range(n + 1)),
        Fraction(0),
    )


def pascal_q_paths(n: int, k: int, q) -> Fraction:
    """Weighted path count to the vertex with n-k horizontal and k vertical
    steps; vertical edges in column j carry multiplicity q^j.  Equals the
    Gaussian binomial, which the tests assert."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    q = Fraction(q)
    # D[h][v]: h horizontal steps, v vertical steps
    h_max, v_max = n - k, k
    d = [[Fraction(0)] * (v_max + 1) for _ in range(h_max + 1)]
    d[0][0] = Fraction(1)
    for h in range(h_max + 1):
        for v in range(v_max + 1):
            if h == 0 and v == 0:
                continue
            acc = Fraction(0)
            if h > 0:
                acc += d[h - 1][v]
            if v > 0:
                acc += q**h * d[h][v - 1]
            d[h][v] = acc
    return d[h_max][v_max]


def bernoulli_symbol_measure(alpha, prefix: tuple[int, ...]) -> Fraction:
    """Product-measure probability of a symbol cylinder: alpha per 1 and
    1-alpha per 0."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    out = Fraction(1)
    for x in prefix:
        if x not in (0, 1):
            raise ValueError("prefix entries must be 0 or 1")
        out *= alpha if x else 1 - alpha
    return out

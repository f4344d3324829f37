"""Shortest independent coefficient vectors for a channel's Gram matrix.

The optimal coefficient set consists of integer vectors realizing the
successive minima of the lattice whose Gram matrix is G: sort every candidate
inside a sphere by a^T G a and greedily keep vectors that are exactly
(rationally) independent of those already kept.

Enumeration is a depth-first Fincke-Pohst walk on the Cholesky factor of G.
An LLL-reduced basis is computed first: the largest reduced-vector norm upper
bounds the last successive minimum, so the search sphere can be shrunk far
below the positive-rate radius without changing the result.  LLL is also
exposed on its own as the fast suboptimal fallback when an enumeration budget
is exhausted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import GramMatrix, RationalSpan, cholesky

__all__ = [
    "BudgetExceeded",
    "OptimalSet",
    "canonicalize",
    "candidate_bound",
    "successive_minima",
    "lll_reduce",
]

DEFAULT_BUDGET = 10_000_000

# relative slack for sphere inclusion tests on floating-point radii
_RADIUS_SLACK = 1e-9


class BudgetExceeded(RuntimeError):
    """Raised when enumeration visits more nodes than the caller allowed."""


def canonicalize(a) -> np.ndarray:
    """Sign-normalize an integer vector so its first nonzero entry is positive.

    A vector and its negation give identical rates, so one representative per
    pair is enough.
    """
    arr = np.asarray(a, dtype=np.int64).copy()
    nz = np.nonzero(arr)[0]
    if nz.size == 0:
        raise ValueError("zero vector has no canonical form")
    if arr[nz[0]] < 0:
        arr = -arr
    return arr


def candidate_bound(gains, snr: float, b_sq=None) -> float:
    """Squared-norm bound below which integer vectors can yield positive rate.

    Returns 1 + snr*||h||^2 for a plain MAC, or 1 + snr * g^T B g with squared
    weights ``b_sq``.
    """
    gains = np.asarray(gains, dtype=float)
    if b_sq is None:
        b_sq = np.ones_like(gains)
    else:
        b_sq = np.asarray(b_sq, dtype=float)
    return 1.0 + snr * float(gains @ (b_sq * gains))


@dataclass(frozen=True)
class OptimalSet:
    """Ordered independent coefficient vectors with nondecreasing noise norms.

    ``norms[m]`` is a^T G a for ``vectors[m]``.  With ``method='exhaustive'``
    the norms are exactly the squared successive minima of the lattice; with
    ``method='lll'`` they are upper bounds.  The set is empty when no vector
    achieves positive rate.
    """

    vectors: tuple[tuple[int, ...], ...]
    norms: tuple[float, ...]
    method: str

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def matrix(self) -> np.ndarray:
        """Vectors stacked as rows, best (smallest norm) first."""
        return np.array(self.vectors, dtype=np.int64)


def _enumerate_half_sphere(chol_upper: np.ndarray, radius_sq: float, budget: int) -> list[tuple[int, ...]]:
    """All nonzero integer a with ||Q a||^2 <= radius_sq, one per {a, -a} pair.

    ``chol_upper`` is upper triangular, so coordinates are fixed from the last
    index downward; whenever every fixed coordinate is zero the current one is
    restricted to be nonnegative, which keeps exactly the representative whose
    last nonzero entry is positive.  Every integer tried at any level counts
    against ``budget``.  Pure-Python recursion: the candidate volume, not
    numpy dispatch, should dominate.
    """
    q = [[float(x) for x in row] for row in np.asarray(chol_upper)]
    k = len(q)
    slack = _RADIUS_SLACK * radius_sq
    a = [0] * k
    found: list[tuple[int, ...]] = []
    nodes = 0

    def descend(level: int, remaining: float, tail_zero: bool) -> None:
        nonlocal nodes
        row = q[level]
        diag = row[level]
        acc = 0.0
        for j in range(level + 1, k):
            acc += row[j] * a[j]
        center = -acc / diag
        half_width = math.sqrt(remaining if remaining > 0.0 else 0.0) / diag
        lo = math.ceil(center - half_width - 1e-12)
        hi = math.floor(center + half_width + 1e-12)
        if tail_zero and lo < 0:
            lo = 0
        nodes += max(0, hi - lo + 1)
        if nodes > budget:
            raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
        for v in range(lo, hi + 1):
            step = diag * (v - center)
            cost = step * step
            if cost > remaining + slack:
                continue
            a[level] = v
            if level == 0:
                if not (tail_zero and v == 0):
                    found.append(tuple(a))
            else:
                descend(level - 1, remaining - cost, tail_zero and v == 0)
        a[level] = 0

    descend(k - 1, radius_sq, True)
    return found


def _independent_of(selected: list[tuple[int, ...]], vec: tuple[int, ...], dim: int) -> bool:
    """Exact integer test that ``vec`` extends the span of ``selected``.

    Fast paths cover the common shapes (parallel test against one vector,
    3x3 determinant); anything else falls back to exact rational reduction.
    """
    m = len(selected)
    if m == 0:
        return True
    if m == 1:
        s = selected[0]
        for i in range(dim):
            si = s[i]
            vi = vec[i]
            for j in range(i + 1, dim):
                if si * vec[j] - vi * s[j] != 0:
                    return True
        return False
    if m == 2 and dim == 3:
        (a1, a2, a3), (b1, b2, b3) = selected
        v1, v2, v3 = vec
        det = (
            a1 * (b2 * v3 - b3 * v2)
            - a2 * (b1 * v3 - b3 * v1)
            + a3 * (b1 * v2 - b2 * v1)
        )
        return det != 0
    span = RationalSpan(dim)
    for s in selected:
        span.try_add(s)
    return span.try_add(vec)


def successive_minima(gram: GramMatrix, budget: int = DEFAULT_BUDGET) -> OptimalSet:
    """Optimal coefficient set: K independent vectors with minimal G-norms.

    Candidates are ranked by a^T G a and ties are broken lexicographically on
    the canonicalized entries, so the output is deterministic.  Returns an
    empty set when even the shortest lattice vector has a^T G a >= snr, i.e.
    no combination has positive rate.  Raises BudgetExceeded when the
    enumeration tree grows past ``budget`` nodes; callers may fall back to
    ``lll_reduce``.
    """
    g = gram.entries
    k = gram.dim
    chol = cholesky(gram)

    # The worst LLL basis norm bounds the last successive minimum, so the
    # sphere needs no dependence on snr and stays small at high snr.
    lll = lll_reduce(chol)
    radius_sq = max(lll.norms) * (1.0 + _RADIUS_SLACK)

    candidates = _enumerate_half_sphere(chol.T, radius_sq, budget)
    cand = np.array(candidates, dtype=np.int64)
    # canonical sign: flip rows whose first nonzero entry is negative
    first_nonzero = (cand != 0).argmax(axis=1)
    signs = np.sign(cand[np.arange(cand.shape[0]), first_nonzero])
    cand *= signs[:, None]
    norms = np.einsum("ij,ij->i", cand @ g, cand)
    order = np.lexsort(tuple(cand[:, col] for col in range(k - 1, -1, -1)) + (norms,))

    if norms[order[0]] >= gram.snr:
        return OptimalSet(vectors=(), norms=(), method="exhaustive")

    vectors: list[tuple[int, ...]] = []
    out_norms: list[float] = []
    for idx in order:
        vec = tuple(int(x) for x in cand[idx])
        if _independent_of(vectors, vec, k):
            vectors.append(vec)
            out_norms.append(float(norms[idx]))
            if len(vectors) == k:
                break
    if len(vectors) != k:
        raise AssertionError("search sphere missed a successive minimum")
    return OptimalSet(vectors=tuple(vectors), norms=tuple(out_norms), method="exhaustive")


def _lll_coords(basis: np.ndarray, delta: float) -> np.ndarray:
    """LLL-reduce the columns of ``basis``; return integer coordinates U.

    The reduced basis is basis @ U with U unimodular.  Standard size
    reduction plus Lovasz condition with parameter ``delta``.
    """
    b = basis.astype(float).copy()
    k = b.shape[1]
    u = np.eye(k, dtype=np.int64)

    ortho = np.zeros_like(b)
    mu = np.zeros((k, k))

    def update_gs(start: int) -> None:
        for i in range(start, k):
            ortho[:, i] = b[:, i]
            for j in range(i):
                denom = float(ortho[:, j] @ ortho[:, j])
                mu[i, j] = float(b[:, i] @ ortho[:, j]) / denom if denom > 0 else 0.0
                ortho[:, i] -= mu[i, j] * ortho[:, j]

    update_gs(0)
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            if abs(mu[i, j]) > 0.5:
                r = round(mu[i, j])
                b[:, i] -= r * b[:, j]
                u[:, i] -= r * u[:, j]
                update_gs(i)
        lhs = float(ortho[:, i] @ ortho[:, i])
        rhs = (delta - mu[i, i - 1] ** 2) * float(ortho[:, i - 1] @ ortho[:, i - 1])
        if lhs >= rhs:
            i += 1
        else:
            b[:, [i - 1, i]] = b[:, [i, i - 1]]
            u[:, [i - 1, i]] = u[:, [i, i - 1]]
            update_gs(i - 1)
            i = max(i - 1, 1)
    return u


def lll_reduce(basis: np.ndarray, delta: float = 0.99) -> OptimalSet:
    """Suboptimal coefficient set from an LLL-reduced lattice basis.

    ``basis`` is the lower-triangular Cholesky factor of the Gram matrix; the
    columns of its transpose span the lattice.  The returned norms upper
    bound the squared successive minima, hence the rates derived from them
    lower bound the optimal computation rates.
    """
    basis = np.asarray(basis, dtype=float)
    k = basis.shape[0]
    if basis.shape != (k, k):
        raise ValueError("basis must be square")
    if np.linalg.matrix_rank(basis) != k:
        raise ValueError("basis must be full rank")
    if not (0.25 < delta <= 1.0):
        raise ValueError("delta must lie in (1/4, 1]")

    gram = basis @ basis.T
    coords = _lll_coords(basis.T, delta)
    scored = []
    for col in range(k):
        vec = canonicalize(coords[:, col])
        scored.append((float(vec @ gram @ vec), tuple(int(x) for x in vec)))
    scored.sort()
    return OptimalSet(
        vectors=tuple(vec for _, vec in scored),
        norms=tuple(norm for norm, _ in scored),
        method="lll",
    )

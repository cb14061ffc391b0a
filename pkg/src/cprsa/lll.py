"""Exact LLL reduction of integer lattices, with a unimodular certificate.

Two arithmetic backends drive the reduction:

* the reference backend keeps all Gram-Schmidt data as exact integers
  (classical integral LLL with lambda/d bookkeeping);

* the accelerated backend keeps Gram-Schmidt data in 192-bit floating
  point (MPFR via gmpy2, far above the 113-bit floor this needs),
  recomputed per visit from an exactly maintained Gram matrix, while all
  basis and transform updates stay exact integers.

An accelerated reduction is finished by running the reference backend on
its output, so the returned basis always satisfies the exact size-reduction
and Lovasz conditions regardless of which backend did the bulk of the work.
Cryptanalytic lattice entries run to thousands of bits, so the integer work
rides on GMP (gmpy2.mpz) internally; the public interface speaks plain ints.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpz, mpfr

DEFAULT_PRECISION = 192

LOVASZ_NUM = 3
LOVASZ_DEN = 4


class RankDeficiencyError(ValueError):
    def __init__(self, row: int):
        super().__init__(f"input basis is rank deficient at row {row}")
        self.row = row


class PrecisionFailure(RuntimeError):
    """Accelerated backend could not resolve a decision; caller retries exactly."""


def _dot(u, v):
    total = mpz(0)
    for x, y in zip(u, v):
        total += x * y
    return total


# ---------------------------------------------------------------------------
# reference backend: integral LLL (exact lambda/d Gram-Schmidt data)
# ---------------------------------------------------------------------------

def _lll_exact(b, H):
    """Reduce rows of b in place; H tracks the unimodular transform."""
    n = len(b)
    d = [mpz(0)] * (n + 1)
    d[0] = mpz(1)
    lam = [[mpz(0)] * n for _ in range(n)]
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise RankDeficiencyError(0)
    kmax = 0

    def gso_row(k):
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for m in range(j):
                u = (d[m + 1] * u - lam[k][m] * lam[j][m]) // d[m]
            if j < k:
                lam[k][j] = u
            elif u == 0:
                raise RankDeficiencyError(k)
            else:
                d[k + 1] = u

    def red(k, l):
        two = 2 * lam[k][l]
        if abs(two) <= d[l + 1]:
            return
        q = (two + d[l + 1]) // (2 * d[l + 1])
        bk, bl = b[k], b[l]
        for i in range(len(bk)):
            bk[i] -= q * bl[i]
        hk, hl = H[k], H[l]
        for i in range(len(hk)):
            hk[i] -= q * hl[i]
        lam[k][l] -= q * d[l + 1]
        lk, ll = lam[k], lam[l]
        for i in range(l):
            lk[i] -= q * ll[i]

    k = 1
    while k < n:
        if k > kmax:
            gso_row(k)
            kmax = k
        red(k, k - 1)
        if LOVASZ_DEN * d[k + 1] * d[k - 1] < \
                LOVASZ_NUM * d[k] * d[k] - LOVASZ_DEN * lam[k][k - 1] ** 2:
            b[k], b[k - 1] = b[k - 1], b[k]
            H[k], H[k - 1] = H[k - 1], H[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            lmb = lam[k][k - 1]
            newd = (d[k - 1] * d[k + 1] + lmb * lmb) // d[k]
            for i in range(k + 1, kmax + 1):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - lmb * t) // d[k]
                lam[i][k - 1] = (newd * t + lmb * lam[i][k]) // d[k + 1]
            d[k] = newd
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1


# ---------------------------------------------------------------------------
# accelerated backend: MPFR Gram-Schmidt over an exact Gram matrix
# ---------------------------------------------------------------------------

def _lll_fast(b, H, prec):
    """Schnorr-Euchner iteration; decisions in mpfr, updates exact.

    The Gram matrix of the current basis is maintained exactly, and the
    floating Gram-Schmidt row of the working index is rebuilt from it on
    every visit.  Oversized reduction coefficients are applied in several
    passes (each strips about `prec` bits), so no rounding decision ever
    relies on catastrophically cancelled data.
    """
    n = len(b)
    G = [[mpz(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            G[i][j] = G[j][i] = _dot(b[i], b[j])
    r = [None] * n
    mu = [[None] * n for _ in range(n)]
    half_plus = mpfr("0.50390625")  # 1/2 + 2^-8 slack against fp fuzz
    threshold = mpfr(LOVASZ_NUM) / LOVASZ_DEN

    def gso_row(k):
        muk = mu[k]
        Gk = G[k]
        for j in range(k):
            s = mpfr(Gk[j])
            muj = mu[j]
            for m in range(j):
                s -= muj[m] * muk[m] * r[m]
            muk[j] = s / r[j]
        s = mpfr(Gk[k])
        for m in range(k):
            s -= muk[m] * muk[m] * r[m]
        if s <= 0:
            raise PrecisionFailure(f"nonpositive projected norm at row {k}")
        r[k] = s

    def apply_red(k, j, q):
        bk, bj = b[k], b[j]
        for i in range(len(bk)):
            bk[i] -= q * bj[i]
        hk, hj = H[k], H[j]
        for i in range(len(hk)):
            hk[i] -= q * hj[i]
        Gk, Gj = G[k], G[j]
        gkj = Gk[j]
        gjj = Gj[j]
        for i in range(n):
            Gk[i] -= q * Gj[i]
        Gk[k] -= q * (gkj - q * gjj)  # second-order term of <bk-q*bj, bk-q*bj>
        for i in range(n):
            G[i][k] = Gk[i]

    def reduce_against(k, js):
        for _round in range(prec):
            gso_row(k)
            applied = False
            for j in js:
                q = int(gmpy2.rint(mu[k][j]))
                if q == 0:
                    continue
                applied = True
                apply_red(k, j, mpz(q))
                qf = mpfr(q)
                muj = mu[j]
                muk = mu[k]
                for i in range(j):
                    muk[i] -= qf * muj[i]
                muk[j] -= qf
            if not applied:
                return
            if all(abs(mu[k][j]) < half_plus for j in js):
                return
        raise PrecisionFailure(f"size reduction did not settle at row {k}")

    if G[0][0] == 0:
        raise RankDeficiencyError(0)
    r[0] = mpfr(G[0][0])
    k = 1
    while k < n:
        reduce_against(k, (k - 1,))
        m = mu[k][k - 1]
        if r[k] < (threshold - m * m) * r[k - 1]:
            b[k], b[k - 1] = b[k - 1], b[k]
            H[k], H[k - 1] = H[k - 1], H[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            k = max(k - 1, 1)
            if k == 1:
                r[0] = mpfr(G[0][0])
        else:
            if k >= 2:
                reduce_against(k, range(k - 2, -1, -1))
            k += 1


# ---------------------------------------------------------------------------
# public interface
# ---------------------------------------------------------------------------

@dataclass
class ReducedBasis:
    """LLL output: reduced row vectors plus the unimodular transform.

    transform @ input == vectors and |det transform| = 1, so both matrices
    generate the same lattice.
    """

    vectors: list
    transform: list

    def norm_sq(self, i: int) -> int:
        return sum(x * x for x in self.vectors[i])


def lll_reduce(rows, method: str = "auto", precision: int = DEFAULT_PRECISION,
               polish: bool = True) -> ReducedBasis:
    """LLL-reduce an integer basis given as equal-length integer rows.

    method "exact" runs the integral reference backend, "fast" the floating
    backend, "auto" picks by problem size.  polish=True (default) re-runs a
    fast reduction through the exact backend, certifying the exact reduction
    conditions.  Raises RankDeficiencyError on dependent rows.
    """
    n = len(rows)
    if n == 0:
        return ReducedBasis([], [])
    width = len(rows[0])
    if any(len(row) != width for row in rows) or n > width:
        raise ValueError("basis must be rows of equal length, at most one per column")
    b = [[mpz(x) for x in row] for row in rows]
    H = [[mpz(1) if i == j else mpz(0) for j in range(n)] for i in range(n)]
    if method == "auto":
        maxbits = max((abs(x).bit_length() for row in b for x in row), default=0)
        method = "exact" if n <= 12 and maxbits <= 64 else "fast"
    if method == "exact":
        _lll_exact(b, H)
    elif method == "fast":
        old_prec = gmpy2.get_context().precision
        gmpy2.get_context().precision = precision
        try:
            _lll_fast(b, H, precision)
        except PrecisionFailure:
            b = [[mpz(x) for x in row] for row in rows]
            H = [[mpz(1) if i == j else mpz(0) for j in range(n)] for i in range(n)]
            _lll_exact(b, H)
        else:
            if polish:
                _lll_exact(b, H)
        finally:
            gmpy2.get_context().precision = old_prec
    else:
        raise ValueError(f"unknown method {method!r}")
    return ReducedBasis(vectors=[[int(x) for x in row] for row in b],
                        transform=[[int(x) for x in row] for row in H])


# ---------------------------------------------------------------------------
# exact checkers (used by the attack pipeline and the test suite)
# ---------------------------------------------------------------------------

def gram_matrix(rows):
    m = [[mpz(x) for x in row] for row in rows]
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            out[i][j] = out[j][i] = int(_dot(m[i], m[j]))
    return out


def det_bareiss(mat) -> int:
    """Exact determinant of a square integer matrix (fraction-free)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [[mpz(x) for x in row] for row in mat]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for rr in range(k + 1, n):
                if m[rr][k]:
                    m[k], m[rr] = m[rr], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = mpz(0)
        prev = m[k][k]
    return sign * int(m[n - 1][n - 1])


def certificate_ok(original, reduced: ReducedBasis) -> bool:
    """transform @ original == vectors, entry for entry."""
    orig = [[mpz(x) for x in row] for row in original]
    n = len(reduced.vectors)
    for i in range(n):
        urow = reduced.transform[i]
        acc = [mpz(0)] * len(orig[0])
        for t in range(n):
            c = urow[t]
            if c:
                c = mpz(c)
                row = orig[t]
                for j in range(len(acc)):
                    acc[j] += c * row[j]
        if [int(x) for x in acc] != reduced.vectors[i]:
            return False
    return True


def transform_is_unimodular(reduced: ReducedBasis) -> bool:
    return abs(det_bareiss(reduced.transform)) == 1


def lemma1_holds(reduced: ReducedBasis, det_abs: int) -> bool:
    """Exact check of the reduced-basis norm guarantee.

    The i-th reduced vector of an omega-dimensional lattice satisfies
    ||v_i|| <= 2^(omega(omega-1)/(4(omega+1-i))) * det^(1/(omega+1-i));
    raising both sides to the power 4(omega+1-i) clears every fractional
    exponent, so the comparison runs on integers only.
    """
    omega = len(reduced.vectors)
    two_pow = mpz(1) << (omega * (omega - 1))
    det4 = mpz(det_abs) ** 4
    for i in range(1, omega + 1):
        m = omega + 1 - i
        if mpz(reduced.norm_sq(i - 1)) ** (2 * m) > two_pow * det4:
            return False
    return True


def is_size_reduced_and_lovasz(vectors) -> bool:
    """Exact verification of both LLL output conditions via integral GSO."""
    n = len(vectors)
    if n == 0:
        return True
    rows = [[mpz(x) for x in row] for row in vectors]
    d = [mpz(0)] * (n + 1)
    d[0] = mpz(1)
    lam = [[mpz(0)] * n for _ in range(n)]
    for k in range(n):
        for j in range(k + 1):
            u = _dot(rows[k], rows[j])
            for m in range(j):
                u = (d[m + 1] * u - lam[k][m] * lam[j][m]) // d[m]
            if j < k:
                lam[k][j] = u
            elif u == 0:
                raise RankDeficiencyError(k)
            else:
                d[k + 1] = u
    for k in range(1, n):
        for j in range(k):
            if 2 * abs(lam[k][j]) > d[j + 1]:
                return False
        if LOVASZ_DEN * d[k + 1] * d[k - 1] < \
                LOVASZ_NUM * d[k] * d[k] - LOVASZ_DEN * lam[k][k - 1] ** 2:
            return False
    return True

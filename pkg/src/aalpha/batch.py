"""Vectorised A_alpha-polynomials for many graphs of one order.

Each graph's polynomial is computed modulo two primes just below 2**28:
power sums tr(M^k) of the integer matrices M = a*D + (1-a)*A at a = 0..n,
Newton's identities for the characteristic coefficients, and interpolation in
alpha through a precomputed inverse Vandermonde matrix.  The residues are
combined by CRT and lifted to the symmetric range.

The lift is exact because every coefficient of det(xI - A - alpha*L) is bounded
in absolute value by prod_i (1 + 3*d_i) (Leibniz expansion with absolute
coefficient sums per row), which is checked against half the modulus.
"""

from __future__ import annotations

import numpy as np

PRIMES = (268435399, 268435367)
MODULUS = PRIMES[0] * PRIMES[1]
# keeps every int64 sum of n*n products of residues below 2**63 and M^ceil(n/2) below 2**53
MAX_BATCH_ORDER = 11


class FastPathError(ArithmeticError):
    pass


def _inverse_vandermonde_mod(n: int, p: int) -> np.ndarray:
    """V^-1 mod p for V[a, k] = a^k, a, k = 0..n (Gauss-Jordan over GF(p))."""
    size = n + 1
    aug = [[pow(a, k, p) for k in range(size)] + [int(i == a) for i in range(size)]
           for a in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(v - f * w) % p for v, w in zip(aug[r], aug[col])]
    return np.array([row[size:] for row in aug], dtype=np.int64)


_VINV_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _vinv(n: int, p: int) -> np.ndarray:
    key = (n, p)
    if key not in _VINV_CACHE:
        _VINV_CACHE[key] = _inverse_vandermonde_mod(n, p)
    return _VINV_CACHE[key]


def _half_powers(adj: np.ndarray, deg: np.ndarray, a: int) -> list[np.ndarray]:
    """M, M^2, ..., M^ceil(n/2) for M = a*D + (1-a)*A, as exact integers held in float64.

    Entries of M^k are bounded by rho^k with rho <= a*(n-1) + (a-1)*(n-1); for
    n <= 11 that stays far below 2**53, so BLAS products are exact.
    """
    n = adj.shape[1]
    M = adj * float(1 - a)
    idx = np.arange(n)
    M[:, idx, idx] = deg * float(a)
    powers = [M]
    for _ in range(2, (n + 1) // 2 + 1):
        powers.append(np.matmul(powers[-1], M))
    return powers


def _charpoly_values_mod(powers: list[np.ndarray], p: int) -> np.ndarray:
    """c_0..c_n (c_j multiplies x^(n-j)) modulo p from the half powers of a symmetric M."""
    B, n, _ = powers[0].shape
    # signed residues |r| <= p/2, computed in floating point where P is exact
    res = [None] + [(P - np.rint(P * (1.0 / p)) * p).astype(np.int64) for P in powers]
    # tr(M^(i+j)) = sum(M^i * M^j) because M^j is symmetric
    s = np.empty((B, n + 1), dtype=np.int64)
    for k in range(1, n + 1):
        i = k // 2
        j = k - i
        if i == 0:
            s[:, k] = np.trace(res[1], axis1=1, axis2=2) % p
        else:
            s[:, k] = np.einsum("bij,bij->b", res[i], res[j]) % p
    # Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i ; c_k = (-1)^k e_k
    e = np.zeros((B, n + 1), dtype=np.int64)
    e[:, 0] = 1
    for k in range(1, n + 1):
        acc = np.zeros(B, dtype=np.int64)
        for i in range(1, k + 1):
            term = e[:, k - i] * s[:, i] % p
            acc = (acc + term) if i % 2 else (acc - term)
        e[:, k] = acc % p * pow(k, -1, p) % p
    signs = np.array([(-1) ** k for k in range(n + 1)], dtype=np.int64)
    return e * signs % p


def coefficient_table(adj: np.ndarray) -> np.ndarray:
    """Exact alpha-coefficients for a stack of adjacency matrices.

    ``adj`` has shape (B, n, n) with 0/1 entries.  Returns an int64 array
    ``T`` of shape (B, n+1, n+1) with ``T[b, j, k]`` the coefficient of
    alpha^k in c_j, i.e. in the coefficient of x^(n-j).
    """
    adj = np.asarray(adj, dtype=np.int64)
    B, n, n2 = adj.shape
    if n != n2:
        raise ValueError("adjacency stack must be square")
    if n > MAX_BATCH_ORDER:
        raise FastPathError(f"batched path supports n <= {MAX_BATCH_ORDER}")
    deg = adj.sum(axis=2)
    bound = np.prod((1 + 3 * deg).astype(object), axis=1) if B else np.array([])
    if B and max(bound) * 2 >= MODULUS:
        raise FastPathError("coefficient bound exceeds the CRT modulus")
    adjf = adj.astype(np.float64)
    degf = deg.astype(np.float64)
    vals = {p: [] for p in PRIMES}
    for a in range(n + 1):
        powers = _half_powers(adjf, degf, a)
        for p in PRIMES:
            vals[p].append(_charpoly_values_mod(powers, p))
    residues = []
    for p in PRIMES:
        # coefficients[b, j, k] = sum_a Vinv[k, a] * vals[b, a, j]
        residues.append(np.einsum("ka,baj->bjk", _vinv(n, p), np.stack(vals[p], axis=1)) % p)
    r1, r2 = residues
    p1, p2 = PRIMES
    t = (r2 - r1) % p2 * pow(p1, -1, p2) % p2
    x = r1 + p1 * t
    return np.where(x > MODULUS // 2, x - MODULUS, x)


def adjacency_from_graph6(records: np.ndarray, n: int) -> np.ndarray:
    """Decode a (B, L) uint8 array of equal-length graph6 records for order ``n`` (n <= 62).

    Records must already be validated (see :func:`validate_records`).
    """
    start = 1
    nbits = n * (n - 1) // 2
    six = (records[:, start:].astype(np.uint8) - 63)
    bits = np.unpackbits(six[:, :, None], axis=2)[:, :, 2:].reshape(len(records), -1)[:, :nbits]
    adj = np.zeros((len(records), n, n), dtype=np.int64)
    iu, ju = _column_major_upper(n)
    adj[:, iu, ju] = bits
    adj[:, ju, iu] = bits
    return adj


def _column_major_upper(n: int):
    iu, ju = [], []
    for j in range(1, n):
        for i in range(j):
            iu.append(i)
            ju.append(j)
    return np.array(iu, dtype=np.intp), np.array(ju, dtype=np.intp)


def validate_records(records: np.ndarray, n: int) -> np.ndarray:
    """Indices of rows that are not well-formed graph6 records of order ``n``."""
    nbits = n * (n - 1) // 2
    ok = (records >= 63).all(axis=1) & (records <= 126).all(axis=1)
    ok &= records[:, 0] == n + 63
    if nbits % 6 and records.shape[1] > 1:
        pad = (1 << (6 - nbits % 6)) - 1
        ok &= ((records[:, -1].astype(np.int64) - 63) & pad) == 0
    return np.flatnonzero(~ok)

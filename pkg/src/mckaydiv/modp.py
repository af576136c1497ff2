"""Exact linear algebra and polynomial root finding over a prime field F_q.

Matrices are int64 numpy arrays with entries in [0, q).  Products of two
reduced entries must fit in int64 together with a sum over one dimension,
hence the bound on q.
"""

from __future__ import annotations

import random

import numpy as np

MAX_FIELD_PRIME = 1 << 25


def _check(q: int) -> None:
    if not 2 < q < MAX_FIELD_PRIME:
        raise ValueError(f"field prime {q} outside supported range")


def inv(a: int, q: int) -> int:
    return pow(int(a), -1, q)


def rref(M: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    _check(q)
    R = np.array(M, dtype=np.int64) % q
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] * inv(R[r, c], q) % q
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % q
        pivots.append(c)
        r += 1
    return R[:r], pivots


def nullspace(M: np.ndarray, q: int) -> np.ndarray:
    """Basis of {y : M y = 0} as the rows of the returned array."""
    R, pivots = rref(M, q)
    n = M.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = (-R[i, f]) % q
    return basis


def charpoly(A: np.ndarray, q: int) -> np.ndarray:
    """Characteristic polynomial of a square matrix, coefficients low degree first.

    Reduces to upper Hessenberg form by similarity, then runs the usual
    three-term style recurrence over the leading principal blocks.
    """
    _check(q)
    H = np.array(A, dtype=np.int64) % q
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.nonzero(H[m:, m - 1])[0]
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        u = H[m + 1:, m - 1] * inv(H[m, m - 1], q) % q
        if not u.any():
            continue
        H[m + 1:] = (H[m + 1:] - np.outer(u, H[m])) % q
        H[:, m] = (H[:, m] + H[:, m + 1:] @ u) % q
    polys = [np.array([1], dtype=np.int64)]
    for m in range(n):
        prev = polys[-1]
        new = np.zeros(m + 2, dtype=np.int64)
        new[1:] = prev
        new[:-1] = (new[:-1] - H[m, m] * prev) % q
        t = 1
        for i in range(m - 1, -1, -1):
            t = t * int(H[i + 1, i]) % q
            if t == 0:
                break
            c = int(H[i, m]) * t % q
            if c:
                pi = polys[i]
                new[: len(pi)] = (new[: len(pi)] - c * pi) % q
        polys.append(new)
    return polys[-1]


# -- polynomials as int64 arrays, low degree first ---------------------------

def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: int(nz[-1]) + 1] if nz.size else a[:0]


def _polymod(a: np.ndarray, f: np.ndarray, q: int) -> np.ndarray:
    a = _trim(a % q).copy()
    df = len(f) - 1
    lead_inv = inv(f[-1], q)
    fm = f * lead_inv % q
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d]
        if c:
            a[d - df: d + 1] = (a[d - df: d + 1] - c * fm) % q
    return _trim(a[:df])


def _polymulmod(a: np.ndarray, b: np.ndarray, f: np.ndarray, q: int) -> np.ndarray:
    if not len(a) or not len(b):
        return a[:0]
    return _polymod(np.convolve(a, b) % q, f, q)


def _polypowmod(base: np.ndarray, e: int, f: np.ndarray, q: int) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = _polymod(base, f, q)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, q)
        e >>= 1
        if e:
            base = _polymulmod(base, base, f, q)
    return result


def _polygcd(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    a, b = _trim(a % q), _trim(b % q)
    while len(b):
        a, b = b, _polymod(a, b, q)
    return a * inv(a[-1], q) % q


def _sub(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return _trim(out % q)


def roots(f: np.ndarray, q: int, seed: int = 0) -> list[int]:
    """Distinct roots in F_q of ``f``, sorted.

    Cantor-Zassenhaus: keep the split part gcd(f, x^q - x), then separate
    its linear factors with random shifts; the seed only affects speed.
    """
    f = _trim(np.array(f, dtype=np.int64) % q)
    if len(f) <= 1:
        return []
    x = np.array([0, 1], dtype=np.int64)
    g = _polygcd(f, _sub(_polypowmod(x, q, f, q), x, q), q)
    rng = random.Random(seed)
    out: list[int] = []
    stack = [g]
    half = (q - 1) // 2
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d == 0:
            continue
        if d == 1:
            out.append(int(-h[0] * inv(h[1], q) % q))
            continue
        while True:
            delta = rng.randrange(q)
            w = _sub(_polypowmod(np.array([delta, 1], dtype=np.int64), half, h, q), np.array([1]), q)
            if not len(w):
                continue
            s = _polygcd(h, w, q)
            if 0 < len(s) - 1 < d:
                break
        stack.append(s)
        stack.append(_polydiv_exact(h, s, q))
    return sorted(out)


def _polydiv_exact(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    a = a.copy()
    db = len(b) - 1
    binv = inv(b[-1], q)
    quot = np.zeros(len(a) - db, dtype=np.int64)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * binv % q
        quot[d - db] = c
        if c:
            a[d - db: d + 1] = (a[d - db: d + 1] - c * b) % q
    return quot

"""Prime-field arithmetic on int64 numpy arrays.

All helpers keep intermediate products below 2**63, so moduli are limited to
``MAX_MODULUS``; dot products are split into chunks short enough that their
partial sums cannot overflow either.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_MODULUS = 1 << 31
_INT64_MAX = (1 << 63) - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def prev_prime(n: int) -> int:
    """Largest prime strictly smaller than ``n``."""
    c = n - 1
    while c >= 2 and not is_prime(c):
        c -= 1
    if c < 2:
        raise ValueError("no prime below 2")
    return c


@njit(cache=True)
def _pow_mod(x, e, p):
    r = 1
    x %= p
    while e:
        if e & 1:
            r = r * x % p
        x = x * x % p
        e >>= 1
    return r


@njit(cache=True)
def _minors(cols, sets, p):
    nf, m, _ = cols.shape
    ns = sets.shape[0]
    out = np.zeros((ns, nf), dtype=np.int64)
    a = np.empty((m, m), dtype=np.int64)
    for s in range(ns):
        for j in range(nf):
            for r in range(m):
                for c in range(m):
                    a[r, c] = cols[j, r, sets[s, c]]
            det = 1
            for c in range(m):
                piv = -1
                for r in range(c, m):
                    if a[r, c] != 0:
                        piv = r
                        break
                if piv < 0:
                    det = 0
                    break
                if piv != c:
                    for x in range(c, m):
                        a[c, x], a[piv, x] = a[piv, x], a[c, x]
                    det = p - det
                det = det * a[c, c] % p
                inv = _pow_mod(a[c, c], p - 2, p)
                for r in range(c + 1, m):
                    f = a[r, c] * inv % p
                    if f == 0:
                        continue
                    for x in range(c + 1, m):
                        v = a[r, x] - f * a[c, x] % p
                        a[r, x] = v + p if v < 0 else v
            out[s, j] = det % p
    return out


class PrimeField:
    def __init__(self, modulus: int):
        if not is_prime(modulus):
            raise ValueError(f"{modulus} is not prime")
        if modulus >= MAX_MODULUS:
            raise ValueError(f"modulus {modulus} too large for int64 kernels")
        self.p = modulus
        self._chunk = max(1, _INT64_MAX // ((modulus - 1) ** 2 or 1))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(x, self.p - 2, self.p)

    def pow_vec(self, base: np.ndarray, exponent: int) -> np.ndarray:
        result = np.ones_like(base)
        b = base % self.p
        e = exponent
        while e:
            if e & 1:
                result = result * b % self.p
            b = b * b % self.p
            e >>= 1
        return result

    def inv_vec(self, x: np.ndarray) -> np.ndarray:
        """Elementwise inverse; zeros map to zero."""
        return self.pow_vec(x, self.p - 2)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """``a @ b mod p`` for int64 arrays (broadcasting like ``np.matmul``)."""
        k = a.shape[-1]
        if k <= self._chunk:
            return np.matmul(a, b) % self.p
        out = None
        for s in range(0, k, self._chunk):
            part = np.matmul(a[..., s : s + self._chunk], b[..., s : s + self._chunk, :]) % self.p
            out = part if out is None else (out + part) % self.p
        return out

    def vandermonde(self, rows: int, nodes: np.ndarray) -> np.ndarray:
        """``rows x len(nodes)`` matrix with entry ``nodes[j] ** i``."""
        out = np.empty((rows, len(nodes)), dtype=np.int64)
        cur = np.ones(len(nodes), dtype=np.int64)
        x = np.asarray(nodes, dtype=np.int64) % self.p
        for i in range(rows):
            out[i] = cur
            cur = cur * x % self.p
        return out

    def det_batch(self, mats: np.ndarray) -> np.ndarray:
        """Determinants of a stack of square matrices, shape ``(B, m, m)``."""
        a = np.array(mats, dtype=np.int64) % self.p
        nb, m, _ = a.shape
        det = np.ones(nb, dtype=np.int64)
        if m == 0:
            return det
        rows = np.arange(nb)
        for c in range(m):
            nz = a[:, c:, c] != 0
            has = nz.any(axis=1)
            piv = c + nz.argmax(axis=1)
            swap = has & (piv != c)
            if swap.any():
                s = rows[swap]
                ps = piv[swap]
                top = a[s, c, :].copy()
                a[s, c, :] = a[s, ps, :]
                a[s, ps, :] = top
                det[s] = (self.p - det[s]) % self.p
            pv = a[:, c, c]
            det = det * pv % self.p
            if c + 1 == m:
                break
            factors = a[:, c + 1 :, c] * self.inv_vec(pv)[:, None] % self.p
            a[:, c + 1 :, c:] = (
                a[:, c + 1 :, c:] - factors[:, :, None] * a[:, None, c, c:] % self.p
            ) % self.p
        return det

    def minors(self, cols: np.ndarray, sets: np.ndarray) -> np.ndarray:
        """``out[s, j] = det(cols[j][:, sets[s]])`` for ``cols`` of shape ``(F, m, n)``."""
        cols = np.ascontiguousarray(cols, dtype=np.int64) % self.p
        sets = np.ascontiguousarray(sets, dtype=np.int64)
        return _minors(cols, sets, self.p)


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis over a prime field."""

    def __init__(self, field: PrimeField, dim: int):
        self.field = field
        self.dim = dim
        self.rows = np.zeros((0, dim), dtype=np.int64)
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.field.p
        if not self.pivots:
            return v
        coeffs = v[self.pivots]
        return (v - self.field.matmul(coeffs[None, :], self.rows)[0]) % self.field.p

    def add(self, v: np.ndarray) -> bool:
        """Insert ``v`` if it is independent of the basis; report whether it was."""
        p = self.field.p
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = r * self.field.inv(int(r[c])) % p
        if self.pivots:
            col = self.rows[:, c].copy()
            self.rows = (self.rows - col[:, None] * r[None, :] % p) % p
        self.rows = np.vstack([self.rows, r[None, :]])
        self.pivots.append(c)
        return True

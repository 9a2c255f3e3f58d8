"""Exact finite-field arithmetic on numpy integer arrays.

Elements of GF(p) are the integers ``0..p-1``.  Elements of GF(p^k) are encoded
as integers ``sum c_i p^i`` (coefficient vectors of polynomials modulo a fixed
irreducible), and multiplied through log/antilog tables.

For GF(2^16) the modulus is ``x^16 + x^5 + x^3 + x + 1``.  ``x`` is not a
primitive element for that modulus, so the tables are generated from the
smallest primitive element in the integer encoding (``x + 1``).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 32003

# Fixed moduli, as coefficient lists from x^0 upwards (monic, leading 1 included).
_PUBLISHED_MODULI = {
    (2, 16): (1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
}

_MAX_TABLE_SIZE = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(characteristic ** extension_degree)."""

    characteristic: int = DEFAULT_PRIME
    extension_degree: int = 1

    def __post_init__(self):
        if not is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if self.extension_degree < 1:
            raise ValueError("extension degree must be >= 1")
        if self.characteristic ** self.extension_degree > _MAX_TABLE_SIZE and self.extension_degree > 1:
            raise ValueError("extension fields larger than 2^22 elements are not supported")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"P"`` or ``"P:K"`` (e.g. ``"32003"``, ``"2:16"``)."""
        parts = str(text).strip().split(":")
        if len(parts) not in (1, 2) or not all(p.strip().isdigit() for p in parts):
            raise ValueError(f"bad field spec {text!r}; expected P or P:K")
        p = int(parts[0])
        k = int(parts[1]) if len(parts) == 2 else 1
        return cls(p, k)

    @property
    def size(self) -> int:
        return self.characteristic**self.extension_degree

    @property
    def prime_subfield(self) -> "FieldSpec":
        return FieldSpec(self.characteristic, 1)

    def __str__(self) -> str:
        if self.extension_degree == 1:
            return str(self.characteristic)
        return f"{self.characteristic}:{self.extension_degree}"

    def to_json(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "extension_degree": self.extension_degree,
            "size": self.size,
        }


def as_field_spec(field) -> FieldSpec:
    if field is None:
        return FieldSpec()
    if isinstance(field, FieldSpec):
        return field
    if isinstance(field, int):
        return FieldSpec(field, 1)
    return FieldSpec.parse(field)


class GF:
    """Vectorised arithmetic for one finite field.

    Use :func:`get_field` rather than constructing directly; instances cache
    their tables.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.characteristic
        self.k = spec.extension_degree
        self.q = spec.size
        if self.k == 1:
            self._exp = self._log = None
            # float64 matmul is exact while K * (p-1)^2 < 2^53
            self._chunk = (2**53 - 1) // max((self.p - 1) ** 2, 1)
        else:
            self.modulus = _modulus_for(self.p, self.k)
            self._exp, self._log = _log_tables(self.p, self.k, self.modulus)
            self._chunk = 0

    def __repr__(self) -> str:
        return f"GF({self.spec})"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # -- elementwise ---------------------------------------------------------
    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64)

    def from_int(self, x):
        """Image of integer(s) under Z -> GF(q)."""
        return np.mod(np.asarray(x, dtype=np.int64), self.p)

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, -1)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        return self._digitwise(np.zeros_like(a), a, -1)

    def _digitwise(self, a, b, sign):
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.k):
            da = (a // scale) % self.p
            db = (b // scale) % self.p
            out += ((da + sign * db) % self.p) * scale
            scale *= self.p
        return out

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        zero = (a == 0) | (b == 0)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where(zero, 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            if a.ndim == 0:
                return np.int64(pow(int(a), -1, self.p))
            return np.array([pow(int(x), -1, self.p) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # -- matrices ------------------------------------------------------------
    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        m, kk = A.shape
        kk2, n = B.shape
        if kk != kk2:
            raise ValueError("shape mismatch")
        if m == 0 or n == 0 or kk == 0:
            return np.zeros((m, n), dtype=np.int64)
        if self.k == 1:
            if self._chunk >= 1:
                out = np.zeros((m, n), dtype=np.int64)
                Af = A.astype(np.float64)
                Bf = B.astype(np.float64)
                for s in range(0, kk, self._chunk):
                    part = Af[:, s : s + self._chunk] @ Bf[s : s + self._chunk, :]
                    out = (out + np.mod(part, self.p).astype(np.int64)) % self.p
                return out
            prod = A.astype(object) @ B.astype(object)
            return np.mod(prod, self.p).astype(np.int64)
        out = np.zeros((m, n), dtype=np.int64)
        for t in range(kk):
            col = A[:, t]
            if not col.any():
                continue
            out = self.add(out, self.mul(col[:, None], B[t][None, :]))
        return out


@functools.lru_cache(maxsize=None)
def get_field(spec) -> GF:
    return GF(as_field_spec(spec))


# -- table construction for GF(p^k) -----------------------------------------
def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists a, b modulo the monic ``modulus`` over GF(p)."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for t in range(k + 1):
                prod[deg - k + t] = (prod[deg - k + t] - c * modulus[t]) % p
    out = prod[:k] + [0] * max(0, k - len(prod))
    return out


def _encode(coeffs, p):
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v, p, k):
    out = []
    for _ in range(k):
        out.append(v % p)
        v //= p
    return out


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _clmulmod2(a: int, b: int, mod: int, k: int) -> int:
    """Product in GF(2)[x]/(mod) with polynomials packed into ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= mod
    return r


def _mulmod(a, b, modulus, p, k):
    if p == 2:
        return _clmulmod2(a, b, _encode(modulus, 2), k)
    return _encode(_poly_mulmod(_decode(a, p, k), _decode(b, p, k), modulus, p), p)


def _powmod(a: int, e: int, modulus, p, k) -> int:
    r = 1
    while e:
        if e & 1:
            r = _mulmod(r, a, modulus, p, k)
        a = _mulmod(a, a, modulus, p, k)
        e >>= 1
    return r


def _is_primitive(g: int, modulus, p, k) -> bool:
    """g generates the multiplicative group (also certifies irreducibility)."""
    q1 = p**k - 1
    if _powmod(g, q1, modulus, p, k) != 1:
        return False
    return all(_powmod(g, q1 // r, modulus, p, k) != 1 for r in _prime_factors(q1))


def _modulus_for(p, k):
    if (p, k) in _PUBLISHED_MODULI:
        return list(_PUBLISHED_MODULI[(p, k)])
    # smallest monic polynomial (in the integer encoding) for which x is primitive;
    # x is encoded as the integer p
    for tail in range(p**k):
        coeffs = _decode(tail, p, k) + [1]
        if coeffs[0] and _is_primitive(p, coeffs, p, k):
            return coeffs
    raise ValueError(f"no primitive polynomial found for GF({p}^{k})")


@functools.lru_cache(maxsize=None)
def _log_tables_cached(p, k, modulus):
    modulus = list(modulus)
    q = p**k
    gen = next((c for c in range(2, q) if _is_primitive(c, modulus, p, k)), None)
    if gen is None:
        raise ValueError("modulus is not irreducible")
    exp = np.zeros(2 * (q - 1), dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    a = 1
    for i in range(q - 1):
        exp[i] = a
        log[a] = i
        a = _mulmod(a, gen, modulus, p, k)
    exp[q - 1 :] = exp[: q - 1]
    return exp, log


def _log_tables(p, k, modulus):
    return _log_tables_cached(p, k, tuple(modulus))

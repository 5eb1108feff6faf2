"""Truncated Laurent series in q over the integers or over Z/3^K.

A :class:`Series` stores the coefficients of q^n for ``start <= n < prec``
as a dense numpy array.  ``prec`` is exclusive: the series is known modulo
q^prec.  Every operation propagates precision pessimistically, so a result
never claims a coefficient its inputs do not determine.

Products use Kronecker substitution: both operands are packed into one big
integer, multiplied with GMP, and unpacked.  This keeps 30k-term products
well under a second.
"""

from __future__ import annotations

import builtins
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import gmpy2
import numpy as np

__all__ = [
    "CoeffRing",
    "EXACT",
    "Series",
    "add",
    "mul",
    "invert",
    "pow",
    "pow_by_recurrence",
    "substitute_q_power",
    "u_operator",
    "val3",
    "reduce_mod",
]

# largest K with (3^K)^2 < 2^63, so residues multiply safely inside int64
_INT64_K_MAX = 19


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient ring: exact integers, or integers modulo 3^K."""

    kind: str = "exact"
    K: int | None = None

    def __post_init__(self):
        if self.kind == "exact":
            if self.K is not None:
                raise ValueError("exact ring takes no K")
        elif self.kind == "mod3k":
            if self.K is None or self.K < 1:
                raise ValueError(f"Mod3K needs K >= 1, got {self.K}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def mod3k(cls, K: int) -> "CoeffRing":
        return cls("mod3k", K)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def modulus(self) -> int | None:
        return None if self.K is None else 3**self.K

    @property
    def dtype(self):
        if self.K is not None and self.K <= _INT64_K_MAX:
            return np.int64
        return object

    def reduce(self, c: int) -> int:
        c = int(c)
        return c if self.K is None else c % self.modulus

    def is_unit(self, c: int) -> bool:
        c = self.reduce(c)
        if self.K is None:
            return c in (1, -1)
        return c % 3 != 0

    def inverse(self, c: int) -> int:
        if not self.is_unit(c):
            raise ZeroDivisionError(f"{c} is not a unit in {self}")
        c = self.reduce(c)
        return c if self.K is None else builtins.pow(c, -1, self.modulus)

    def array(self, values: Iterable[int]) -> np.ndarray:
        vals = [self.reduce(v) for v in values]
        arr = np.empty(len(vals), dtype=self.dtype)
        arr[:] = vals
        return arr

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Bring an array into canonical form for this ring (a new array)."""
        if self.K is None:
            out = np.empty(len(arr), dtype=object)
            out[:] = [int(v) for v in arr]
            return out
        M = self.modulus
        if self.dtype is np.int64 and arr.dtype == np.int64:
            return arr % M
        out = np.empty(len(arr), dtype=self.dtype)
        out[:] = [int(v) % M for v in arr]
        return out

    def __str__(self):
        return "ZZ" if self.K is None else f"Z/3^{self.K}"


EXACT = CoeffRing()


# ---------------------------------------------------------------------------
# Kronecker-substitution kernel


def _pack_unsigned(arr: np.ndarray, slot: int) -> int:
    if arr.dtype == np.int64 and slot <= 8:
        buf = np.zeros((len(arr), 8), dtype=np.uint8)
        buf[:] = arr.astype("<u8").view(np.uint8).reshape(len(arr), 8)
        return int.from_bytes(buf[:, :slot].tobytes(), "little")
    return int.from_bytes(
        b"".join(int(c).to_bytes(slot, "little") for c in arr), "little"
    )


def _pack_signed(arr: np.ndarray, slot: int) -> int:
    pos = np.where(arr > 0, arr, 0)
    neg = np.where(arr < 0, -arr, 0)
    return _pack_unsigned(pos, slot) - _pack_unsigned(neg, slot)


def _unpack(value: int, count: int, slot: int, ring: CoeffRing) -> np.ndarray:
    raw = value.to_bytes(count * slot, "little")
    if ring.dtype is np.int64 and slot <= 8:
        buf = np.zeros((count, 8), dtype=np.uint8)
        buf[:, :slot] = np.frombuffer(raw, dtype=np.uint8).reshape(count, slot)
        digits = buf.view("<u8").reshape(count)
        return (digits % np.uint64(ring.modulus)).astype(np.int64)
    M = ring.modulus
    vals = [int.from_bytes(raw[i * slot:(i + 1) * slot], "little") for i in range(count)]
    out = np.empty(count, dtype=ring.dtype)
    out[:] = vals if M is None else [v % M for v in vals]
    return out


def _max_abs(arr: np.ndarray) -> int:
    if len(arr) == 0:
        return 0
    if arr.dtype == np.int64:
        return int(np.abs(arr).max())
    return max(abs(int(v)) for v in arr)


def _mul_trunc(a: np.ndarray, b: np.ndarray, n: int, ring: CoeffRing) -> np.ndarray:
    """First ``n`` coefficients of the product of coefficient arrays a, b."""
    a = a[:n]
    b = b[:n]
    n = min(n, len(a) + len(b) - 1)
    if n <= 0 or len(a) == 0 or len(b) == 0:
        return np.zeros(max(n, 0), dtype=ring.dtype)
    terms = min(len(a), len(b))
    bound = terms * _max_abs(a) * _max_abs(b)
    if bound == 0:
        return np.zeros(n, dtype=ring.dtype)
    if ring.is_exact:
        slot = (bound.bit_length() + 1 + 7) // 8
        A = _pack_signed(a, slot)
        B = _pack_signed(b, slot)
    else:
        slot = (bound.bit_length() + 7) // 8
        A = _pack_unsigned(a, slot)
        B = _pack_unsigned(b, slot)
    P = int(gmpy2.mpz(A) * gmpy2.mpz(B))
    if ring.is_exact:
        half = 1 << (8 * slot - 1)
        # Offsetting every digit by 2^(s-1) makes all digits nonnegative.
        total = len(a) + len(b) - 1
        offset = int.from_bytes((half.to_bytes(slot, "little")) * total, "little")
        P += offset
        P &= (1 << (8 * slot * n)) - 1
        out = _unpack(P, n, slot, ring)
        return np.array([int(v) - half for v in out], dtype=object)
    P &= (1 << (8 * slot * n)) - 1
    return _unpack(P, n, slot, ring)


def _inverse_trunc(a: np.ndarray, n: int, ring: CoeffRing) -> np.ndarray:
    """Newton iteration for 1/a mod q^n; a[0] must be a unit."""
    g = ring.array([ring.inverse(a[0])])
    length = 1
    while length < n:
        length = min(2 * length, n)
        e = _mul_trunc(a, g, length, ring)
        e = ring.normalize(-e)
        e[0] = ring.reduce(e[0] + 2)
        g = ring.normalize(_mul_trunc(g, e, length, ring))
    return g


# ---------------------------------------------------------------------------


class Series:
    """Truncated Laurent series ``sum_{start <= n < prec} c_n q^n + O(q^prec)``.

    After construction the coefficient at ``start`` is nonzero, unless the
    series is zero to its precision, in which case ``coeffs`` is empty and
    ``start == prec``.  Instances are immutable.
    """

    __slots__ = ("ring", "start", "prec", "coeffs")

    def __init__(self, ring: CoeffRing, start: int, prec: int, coeffs):
        arr = ring.normalize(np.asarray(coeffs, dtype=object if ring.is_exact else None))
        arr = arr[: max(prec - start, 0)]
        nz = np.flatnonzero(arr)
        if len(nz) == 0:
            start, arr = prec, arr[:0]
        else:
            first = int(nz[0])
            start, arr = start + first, arr[first:]
        arr.flags.writeable = False
        self.ring = ring
        self.start = start
        self.prec = prec
        self.coeffs = arr

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_dict(cls, ring: CoeffRing, terms: Mapping[int, int], prec: int) -> "Series":
        terms = {e: c for e, c in terms.items() if e < prec}
        if not terms:
            return cls.zero(ring, prec)
        lo = min(terms)
        vals = [0] * (prec - lo)
        for e, c in terms.items():
            vals[e - lo] += c
        return cls(ring, lo, prec, ring.array(vals))

    @classmethod
    def from_list(cls, ring: CoeffRing, coeffs, start: int = 0, prec: int | None = None) -> "Series":
        coeffs = list(coeffs)
        if prec is None:
            prec = start + len(coeffs)
        coeffs = coeffs[: max(prec - start, 0)]
        coeffs += [0] * (prec - start - len(coeffs))
        return cls(ring, start, prec, ring.array(coeffs))

    @classmethod
    def zero(cls, ring: CoeffRing, prec: int) -> "Series":
        return cls(ring, prec, prec, ring.array([]))

    @classmethod
    def one(cls, ring: CoeffRing, prec: int) -> "Series":
        return cls.monomial(ring, 0, prec)

    @classmethod
    def monomial(cls, ring: CoeffRing, exp: int, prec: int, coeff: int = 1) -> "Series":
        return cls.from_dict(ring, {exp: coeff}, prec)

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def ord(self) -> int | None:
        """Exponent of the lowest nonzero term; None for the zero series."""
        return None if self.is_zero else self.start

    @property
    def lead(self) -> int:
        if self.is_zero:
            raise ValueError("zero series has no leading coefficient")
        return int(self.coeffs[0])

    def __getitem__(self, n: int) -> int:
        if n >= self.prec:
            raise IndexError(f"coefficient of q^{n} unknown (prec {self.prec})")
        if n < self.start:
            return 0
        return int(self.coeffs[n - self.start])

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of q^lo .. q^(hi-1) as an array (hi <= prec)."""
        if hi > self.prec:
            raise IndexError(f"window up to {hi} exceeds prec {self.prec}")
        out = np.zeros(max(hi - lo, 0), dtype=self.ring.dtype)
        if self.is_zero or hi <= lo:
            return out
        a = max(lo, self.start)
        b = min(hi, self.start + len(self.coeffs))
        if a < b:
            out[a - lo:b - lo] = self.coeffs[a - self.start:b - self.start]
        return out

    def to_dict(self) -> dict[int, int]:
        return {self.start + i: int(c) for i, c in enumerate(self.coeffs) if c}

    def coefficients(self, lo: int | None = None, hi: int | None = None) -> list[int]:
        lo = self.start if lo is None else lo
        hi = self.prec if hi is None else hi
        return [int(c) for c in self.window(lo, hi)]

    def truncate(self, prec: int) -> "Series":
        if prec >= self.prec:
            return self
        return Series(self.ring, self.start, prec, self.coeffs)

    def shift(self, k: int) -> "Series":
        """Multiply by q^k."""
        return Series(self.ring, self.start + k, self.prec + k, self.coeffs)

    def first_difference(self, other: "Series") -> int | None:
        """Lowest exponent where self and other differ within both precisions."""
        d = self - other
        return d.ord

    def agrees(self, other: "Series") -> bool:
        return self.first_difference(other) is None

    def __repr__(self):
        if self.is_zero:
            return f"O(q^{self.prec})"
        terms = [(self.start + i, int(c)) for i in np.flatnonzero(self.coeffs)[:9] for c in [self.coeffs[i]]]
        head = [f"{c}*q^{e}" for e, c in terms[:8]]
        more = " + ..." if len(terms) > 8 else ""
        return " + ".join(head) + more + f" + O(q^{self.prec})"

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "Series"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            self._check_ring(other)
            return other
        if isinstance(other, (int, np.integer)):
            return Series.monomial(self.ring, 0, self.prec, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        lo = min(self.start, other.start, prec)
        arr = self.window(lo, prec) + other.window(lo, prec)
        return Series(self.ring, lo, prec, arr)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.ring, self.start, self.prec, -self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Series":
        c = self.ring.reduce(c)
        if self.ring.dtype is np.int64:
            return Series(self.ring, self.start, self.prec, (self.coeffs * c) % self.ring.modulus)
        return Series(self.ring, self.start, self.prec, self.coeffs * c)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        if not isinstance(other, Series):
            return NotImplemented
        self._check_ring(other)
        prec = min(self.start + other.prec, other.start + self.prec)
        start = self.start + other.start
        if self.is_zero or other.is_zero:
            return Series.zero(self.ring, prec)
        n = prec - start
        arr = _mul_trunc(self.coeffs, other.coeffs, n, self.ring)
        return Series(self.ring, start, prec, arr)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Series":
        return pow(self, e)

    def invert(self) -> "Series":
        return invert(self)


# ---------------------------------------------------------------------------
# module-level operations


def add(f: Series, g: Series) -> Series:
    return f + g


def mul(f: Series, g: Series) -> Series:
    return f * g


def invert(f: Series) -> Series:
    """Multiplicative inverse; the leading coefficient must be a unit."""
    if f.is_zero:
        raise ZeroDivisionError("cannot invert a series that is zero to its precision")
    if not f.ring.is_unit(f.lead):
        raise ZeroDivisionError(f"leading coefficient {f.lead} is not a unit in {f.ring}")
    n = f.prec - f.start
    g = _inverse_trunc(f.coeffs, n, f.ring)
    return Series(f.ring, -f.start, -f.start + n, g)


def pow(f: Series, e: int) -> Series:  # noqa: A001 - mirrors the operation name
    if e < 0:
        return pow(invert(f), -e)
    if e == 0:
        return Series.one(f.ring, max(f.prec - f.start, 1))
    result = None
    base = f
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


def pow_by_recurrence(f: Series, e: int) -> Series:
    """f^e over the integers via the recurrence from q (f^e)' = e q f' f^(e-1).

    O(n^2); the leading coefficient must be +-1.  Exists mainly as an
    independent route for checking :func:`pow`.
    """
    if not f.ring.is_exact:
        raise ValueError("the derivative recurrence divides by n; use the exact ring")
    if f.is_zero or f.lead not in (1, -1):
        raise ZeroDivisionError("derivative recurrence needs a +-1 leading coefficient")
    sign = f.lead
    a = [int(c) * sign for c in f.coeffs]
    n = len(a)
    g = [1] + [0] * (n - 1)
    for k in range(1, n):
        acc = 0
        for j in range(1, k + 1):
            if a[j]:
                acc += (e * j - (k - j)) * a[j] * g[k - j]
        g[k] = acc // k
    lead_sign = sign ** abs(e)
    start = e * f.start
    return Series(f.ring, start, start + n, f.ring.array([lead_sign * c for c in g]))


def substitute_q_power(f: Series, m: int) -> Series:
    """f(q^m)."""
    if m <= 0:
        raise ValueError(f"substitution exponent must be positive, got {m}")
    if f.is_zero:
        return Series.zero(f.ring, m * f.prec)
    if m == 1:
        return f
    n = len(f.coeffs)
    arr = np.zeros((n - 1) * m + 1, dtype=f.ring.dtype)
    arr[::m] = f.coeffs
    return Series(f.ring, m * f.start, m * f.prec, arr)


def u_operator(f: Series, m: int) -> Series:
    """U_m: coefficient n of the result is coefficient m*n of f."""
    if m <= 0:
        raise ValueError(f"U_m needs m >= 1, got {m}")
    prec = -((-f.prec) // m)
    if f.is_zero:
        return Series.zero(f.ring, prec)
    start = -((-f.start) // m)
    offset = m * start - f.start
    arr = f.coeffs[offset::m]
    return Series(f.ring, start, prec, arr)


def val3(x: int) -> int | float:
    """3-adic valuation of an integer; inf for 0."""
    x = int(x)
    if x == 0:
        return math.inf
    return int(gmpy2.remove(gmpy2.mpz(x), 3)[1])


def reduce_mod(f: Series, K: int) -> Series:
    """Image of f in Z/3^K (f over the integers, or over Z/3^K' with K' >= K)."""
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if f.ring.K is not None and f.ring.K < K:
        raise RingMismatchError(f"cannot reduce from {f.ring} to Z/3^{K}")
    ring = CoeffRing.mod3k(K)
    return Series(ring, f.start, f.prec, np.array([int(c) for c in f.coeffs], dtype=object))


def lift(f: Series) -> Series:
    """Representatives in [0, 3^K) of a Z/3^K series, as an integer series."""
    return Series(EXACT, f.start, f.prec, np.array([int(c) for c in f.coeffs], dtype=object))

"""Eta quotients, q-Pochhammer products, and the named generators.

``EtaQuotient`` is a formal product of eta(n*tau)^e; it expands as
q^(sum n*e/24) times a power series with constant term 1.  ``PochProduct``
is a product of (sign*q^b; q^c)_inf^e with an optional q-power prefactor.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .series import EXACT, CoeffRing, Series, substitute_q_power

__all__ = [
    "EtaQuotient",
    "PochProduct",
    "EtaParseError",
    "euler_product",
    "expand_eta",
    "expand_poch",
    "named_generator",
    "GENERATORS",
    "GENERATOR_NAMES",
]


class EtaParseError(ValueError):
    pass


@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(n tau)^e over ``factors`` = ((n, e), ...)."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for n, _ in self.factors:
            if n < 1:
                raise ValueError(f"eta index must be positive, got {n}")

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse comma-separated ``n:e`` pairs, e.g. ``12:4,2:2,6:-2,4:-4``."""
        factors = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split(":")
            if len(parts) != 2:
                raise EtaParseError(f"expected n:e, got {chunk!r}")
            try:
                n, e = int(parts[0].strip()), int(parts[1].strip())
            except ValueError:
                raise EtaParseError(f"non-integer in {chunk!r}") from None
            if n < 1:
                raise EtaParseError(f"eta index must be positive in {chunk!r}")
            factors.append((n, e))
        if not factors:
            raise EtaParseError("empty eta quotient")
        return cls(tuple(factors))

    def __str__(self):
        return ",".join(f"{n}:{e}" for n, e in self.factors)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.factors + other.factors)

    def q_order(self) -> Fraction:
        return Fraction(sum(n * e for n, e in self.factors), 24)

    def scaled(self, m: int) -> "EtaQuotient":
        """The quotient at m*tau: every index multiplied by m."""
        return EtaQuotient(tuple((m * n, e) for n, e in self.factors))

    def exponents(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for n, e in self.factors:
            out[n] = out.get(n, 0) + e
        return {n: e for n, e in out.items() if e}


@dataclass(frozen=True)
class PochProduct:
    """q^shift * prod (sign*q^b; q^c)_inf^e over ``factors`` = ((sign, b, c, e), ...).

    (a; q^c)_inf is prod_{m >= 0} (1 - a q^(c m)), so each factor contributes
    prod_{m >= 0} (1 - sign q^(b + c m))^e.
    """

    factors: tuple[tuple[int, int, int, int], ...]
    shift: int = 0

    def __post_init__(self):
        for sign, b, c, _ in self.factors:
            if sign not in (1, -1):
                raise ValueError(f"sign must be +-1, got {sign}")
            if b < 0 or c < 1:
                raise ValueError(f"need b >= 0 and c >= 1, got b={b}, c={c}")


# ---------------------------------------------------------------------------


def euler_product(ring: CoeffRing, prec: int) -> Series:
    """(q; q)_inf by the pentagonal number theorem."""
    vals = [0] * max(prec, 0)
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= prec:
            break
        vals[g1] += sign
        if k and g2 < prec:
            vals[g2] += sign
        k += 1
    return Series(ring, 0, prec, ring.array(vals))


def expand_eta(eq: EtaQuotient, ring: CoeffRing = EXACT, prec: int = 100) -> Series:
    """q-expansion of an eta quotient, exact modulo q^prec."""
    order = eq.q_order()
    if order.denominator != 1:
        raise ValueError(f"q-prefactor {order} is not an integer")
    order = int(order)
    n = prec - order  # length of the power-series part
    if n <= 0:
        return Series.zero(ring, prec)
    powers: dict[int, Series] = {}
    result = Series.one(ring, n)
    for idx, e in sorted(eq.exponents().items()):
        length = -(-n // idx)
        if e not in powers or powers[e].prec < length:
            powers[e] = euler_product(ring, length) ** e
        result = result * substitute_q_power(powers[e].truncate(length), idx)
    return result.truncate(n).shift(order)


def _binomial_product(ring: CoeffRing, sign: int, b: int, c: int, n: int) -> np.ndarray:
    """Coefficients of prod_{m>=0, b+cm>=1} (1 - sign q^(b+cm)) mod q^n."""
    arr = np.zeros(n, dtype=ring.dtype)
    arr[0] = 1
    M = ring.modulus
    j = b if b > 0 else b + c
    while j < n:
        # multiply by (1 - sign q^j); the right side is evaluated before assignment
        arr[j:] = arr[j:] - sign * arr[:-j]
        if M is not None:
            arr[j:] %= M
        j += c
    return arr


def expand_poch(pp: PochProduct, ring: CoeffRing = EXACT, prec: int = 100) -> Series:
    """q-expansion of a Pochhammer product by sparse binomial multiplication."""
    n = prec - pp.shift
    if n <= 0:
        return Series.zero(ring, prec)
    result = Series.one(ring, n)
    for sign, b, c, e in pp.factors:
        if e == 0:
            continue
        base = Series(ring, 0, n, _binomial_product(ring, sign, b, c, n))
        if b == 0:
            # the m = 0 factor is the constant 1 - sign
            const = 1 - sign
            if e < 0 and not ring.is_unit(const):
                raise ZeroDivisionError(
                    f"(sign*q^0; q^{c}) has constant factor {const}, not invertible in {ring}"
                )
            base = base * const
        result = result * base**e
    return result.shift(pp.shift)


# ---------------------------------------------------------------------------
# named generators

GENERATORS: dict[str, EtaQuotient] = {
    "t": EtaQuotient(((12, 4), (2, 2), (6, -2), (4, -4))),
    "y": EtaQuotient(((4, 3), (3, 1), (12, -1), (1, -3))),
    "p0": EtaQuotient(((12, 4), (3, 12), (2, 8), (6, -8), (4, -12), (1, -4))),
    "p1": EtaQuotient(((12, 2), (3, 6), (2, 4), (6, -4), (4, -6), (1, -2))),
    "A": EtaQuotient(((9, 9), (4, 2), (2, 5), (36, -2), (18, -5), (1, -9))),
    "B": EtaQuotient(((9, 1), (2, 2), (18, -2), (1, -1))),
}

# the two eta-quotient summands of L0 (L0 = first + 24 + 4 * second)
L0_TERMS: tuple[EtaQuotient, EtaQuotient] = (
    EtaQuotient(((12, 5), (3, 1), (2, 8), (24, -2), (8, -2), (6, -4), (4, -3), (1, -3))),
    EtaQuotient(((24, 2), (8, 2), (3, 1), (2, 10), (12, -1), (6, -2), (4, -9), (1, -3))),
)

# Prefactors linking the odd and even levels of the tower to the cphi6
# subsequences: level = weight * sum cphi6(3^a n + lambda_a) q^n.
WEIGHTS: dict[str, PochProduct] = {
    "weight_odd": PochProduct(
        ((1, 1, 1, 1), (1, 3, 3, 9), (1, 2, 2, -2), (1, 6, 6, -5), (1, 12, 12, -2)),
        shift=-1,
    ),
    "weight_even": PochProduct(
        ((1, 1, 1, 9), (1, 3, 3, 1), (1, 2, 2, -5), (1, 4, 4, -2), (1, 6, 6, -2)),
    ),
}

GENERATOR_NAMES = tuple(GENERATORS) + ("L0",) + tuple(WEIGHTS)

_cache: dict[tuple[str, CoeffRing], Series] = {}
_cache_lock = threading.Lock()


def _expand_named(name: str, ring: CoeffRing, prec: int) -> Series:
    if name in GENERATORS:
        return expand_eta(GENERATORS[name], ring, prec)
    if name in WEIGHTS:
        return expand_poch(WEIGHTS[name], ring, prec)
    if name == "L0":
        first, second = (expand_eta(q, ring, prec) for q in L0_TERMS)
        return first + 24 + second * 4
    raise KeyError(f"unknown generator {name!r}; known: {', '.join(GENERATOR_NAMES)}")


def named_generator(name: str, ring: CoeffRing = EXACT, prec: int = 100) -> Series:
    """Cached expansion of a named generator, exact modulo q^prec."""
    key = (name, ring)
    cached = _cache.get(key)
    if cached is not None and cached.prec >= prec:
        return cached.truncate(prec)
    with _cache_lock:
        cached = _cache.get(key)
        if cached is not None and cached.prec >= prec:
            return cached.truncate(prec)
        series = _expand_named(name, ring, prec)
        _cache[key] = series
    return series


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()

"""Sparse Laurent polynomials with exact integer coefficients.

Used for polynomials in the generator t (and, in a couple of places, in y).
A polynomial may carry a degree cap: terms above the cap are dropped and the
polynomial is flagged as truncated.  Truncated products stay correct below
the cap only when the other factor has no negative exponents, which is
enforced.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .series import Series, val3

__all__ = ["TPoly"]


def _min_cap(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TPoly:
    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs: Mapping[int, int] | None = None, cap: int | None = None):
        items = {} if coeffs is None else coeffs
        self.cap = cap
        self.coeffs = {
            int(e): int(c) for e, c in items.items() if c and (cap is None or e <= cap)
        }

    @classmethod
    def from_factored(cls, terms: Iterable[tuple[int, int, int]]) -> "TPoly":
        """Build from (c, k, e) triples meaning c * 3^k * t^e."""
        out: dict[int, int] = {}
        for c, k, e in terms:
            out[e] = out.get(e, 0) + c * 3**k
        return cls(out)

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "TPoly":
        return cls({e: c})

    # -- inspection ---------------------------------------------------------

    @property
    def truncated(self) -> bool:
        return self.cap is not None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_exp(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    @property
    def max_exp(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def __getitem__(self, e: int) -> int:
        if self.cap is not None and e > self.cap:
            raise IndexError(f"t^{e} lies above the truncation cap {self.cap}")
        return self.coeffs.get(e, 0)

    def items(self):
        return sorted(self.coeffs.items())

    def to_dict(self) -> dict[int, int]:
        return dict(self.items())

    def valuations(self) -> dict[int, int | float]:
        return {e: val3(c) for e, c in self.items()}

    def with_cap(self, cap: int | None) -> "TPoly":
        return TPoly(self.coeffs, _min_cap(self.cap, cap))

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.coeffs == other.coeffs and self.cap == other.cap
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.cap))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"{c}*t^{e}" for e, c in self.items())
        if self.cap is not None:
            body += f" + O(t^{self.cap + 1})"
        return f"TPoly({body})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = TPoly({0: other})
        if not isinstance(other, TPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TPoly(out, _min_cap(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return TPoly({e: -c for e, c in self.coeffs.items()}, self.cap)

    def __sub__(self, other):
        if isinstance(other, int):
            other = TPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TPoly({e: c * other for e, c in self.coeffs.items()}, self.cap)
        if not isinstance(other, TPoly):
            return NotImplemented
        for left, right in ((self, other), (other, self)):
            if left.cap is not None and right.coeffs and right.min_exp < 0:
                raise ValueError("a truncated polynomial times negative powers of t is not determined")
        cap = _min_cap(
            None if self.cap is None else self.cap + (other.min_exp or 0),
            None if other.cap is None else other.cap + (self.min_exp or 0),
        )
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if cap is not None and e > cap:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return TPoly(out, cap)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = TPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "TPoly":
        """Multiply by t^k."""
        return TPoly({e + k: c for e, c in self.coeffs.items()},
                     None if self.cap is None else self.cap + k)

    def evaluate(self, x: Series, prec: int | None = None) -> Series:
        """Substitute a series for the variable; negative powers use 1/x."""
        if self.truncated:
            raise ValueError("cannot evaluate a truncated polynomial exactly")
        ring = x.ring
        if not self.coeffs:
            return Series.zero(ring, x.prec if prec is None else prec)
        lo, hi = self.min_exp, self.max_exp
        # Horner in x over exponents lo..hi, then multiply by x^lo
        acc = None
        for e in range(hi, lo - 1, -1):
            c = self.coeffs.get(e, 0)
            if acc is None:
                # a constant is exact; give it enough room not to limit precision
                acc = Series.monomial(ring, 0, x.prec - x.start + 1, c)
            else:
                acc = acc * x + c
        result = acc * x**lo if lo else acc
        return result if prec is None else result.truncate(prec)

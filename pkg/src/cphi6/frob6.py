"""6-colored generalized Frobenius partitions: generating function, oracles,
and direct congruence scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .etaq import PochProduct, euler_product, expand_poch
from .report import Report, timed
from .series import EXACT, CoeffRing, Series, invert, substitute_q_power

__all__ = [
    "CphiTable",
    "cphi6_series",
    "cphi6_oracle_andrews",
    "cphi6_enumerate",
    "lambda_alpha",
    "theorem_modulus_exponent",
    "check_theorem",
    "check_known_congruences",
    "PHI",
    "PSI",
]

# phi(q) = (-q; q^2)^2 (q^2; q^2),  psi(q) = (-q; q^2) (q^4; q^4)
PHI = PochProduct(((-1, 1, 2, 2), (1, 2, 2, 1)))
PSI = PochProduct(((-1, 1, 2, 1), (1, 4, 4, 1)))

ENUMERATE_MAX = 8


class PrecisionShortfall(ValueError):
    pass


@dataclass(frozen=True)
class CphiTable:
    ring: CoeffRing
    values: tuple[int, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if n >= len(self.values):
            raise PrecisionShortfall(f"cphi6({n}) requested but table has {len(self.values)} terms")
        return self.values[n]

    def as_series(self) -> Series:
        return Series.from_list(self.ring, self.values)


def cphi6_series(ring: CoeffRing = EXACT, N: int = 100) -> CphiTable:
    """First N values of cphi6 from the theta-function form of the generating function:

        (phi^3(q) phi(q^2) phi(q^6) + 24 q psi^3(q) psi(q^2) psi(q^3)
            + 4 q^2 phi^3(q) psi(q^4) psi(q^12)) / (q; q)_inf^6
    """
    if N <= 0:
        raise ValueError(f"N must be positive, got {N}")
    phi = expand_poch(PHI, ring, N)
    psi = expand_poch(PSI, ring, N)
    phi3 = phi**3

    def at(f: Series, m: int) -> Series:
        return substitute_q_power(f, m).truncate(N)

    first = phi3 * at(phi, 2) * at(phi, 6)
    second = (psi**3 * at(psi, 2) * at(psi, 3)).shift(1).truncate(N) * 24
    third = (phi3 * at(psi, 4) * at(psi, 12)).shift(2).truncate(N) * 4
    numerator = first + second + third
    gf = numerator * invert(euler_product(ring, N) ** 6)
    return CphiTable(ring, tuple(gf.coefficients(0, N)))


def _andrews_theta(k: int, N: int) -> list[int]:
    """Coefficients of sum over Z^(k-1) of q^Q(m), Q = sum m_i^2 + sum_{i<j} m_i m_j, up to q^N."""
    dim = k - 1
    if dim == 0:
        return [1] + [0] * N
    # Q(m) = m^T G m with G = (I + J)/2, whose eigenvalues are 1/2 and k/2,
    # so Q(m) >= |m|^2 / 2 and every |m_i| <= sqrt(2N).
    smallest_eigenvalue = Fraction(1, 2)
    bound = math.isqrt(int(N / smallest_eigenvalue))
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * dim), indexing="ij", sparse=True)
    sq = sum(g * g for g in grids)
    lin = sum(grids)
    Q = (sq + lin * lin) // 2
    Q = np.broadcast_to(Q, (len(axis),) * dim).ravel()
    Q = Q[Q <= N]
    counts = np.bincount(Q, minlength=N + 1)
    return [int(c) for c in counts[: N + 1]]


def cphi6_oracle_andrews(N_small: int, k: int = 6) -> CphiTable:
    """cphi_k(n) for n <= N_small from Andrews' lattice-sum generating function."""
    theta = Series.from_list(EXACT, _andrews_theta(k, N_small))
    gf = theta * invert(euler_product(EXACT, N_small + 1) ** k)
    return CphiTable(EXACT, tuple(gf.coefficients(0, N_small + 1)))


def _rows(r: int, budget: int, colors: int, below: tuple[int, int] | None):
    """Yield the weight of every strictly decreasing sequence of r (value, color)
    entries, each entry below ``below``, with total value at most ``budget``."""
    if r == 0:
        yield 0
        return
    top = budget if below is None else min(budget, below[0])
    for v in range(top, -1, -1):
        for c in range(colors - 1, -1, -1):
            entry = (v, c)
            if below is not None and entry >= below:
                continue
            for rest in _rows(r - 1, budget - v, colors, entry):
                yield v + rest


def cphi6_enumerate(n: int, colors: int = 6) -> int:
    """Count colored generalized Frobenius symbols of n by brute force (n <= 8)."""
    if n > ENUMERATE_MAX:
        raise ValueError(f"enumeration is capped at n <= {ENUMERATE_MAX}")
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    for r in range(1, n + 1):
        budget = n - r
        weights: dict[int, int] = {}
        for w in _rows(r, budget, colors, None):
            weights[w] = weights.get(w, 0) + 1
        for w1, c1 in weights.items():
            total += c1 * weights.get(budget - w1, 0)
    return total


def lambda_alpha(alpha: int) -> int:
    """Offset of the residue class 3^alpha n + lambda_alpha in the main congruence."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if alpha % 2:
        return (3**alpha + 1) // 4
    return (3 ** (alpha + 1) + 1) // 4


def theorem_modulus_exponent(alpha: int) -> int:
    return alpha // 2 + 2


def check_theorem(alpha_max: int, n_max: int, K_guard: int | None = None,
                  table: CphiTable | None = None) -> Report:
    """Scan cphi6(3^a n + lambda_a) = 0 mod 3^(floor(a/2)+2) for a <= alpha_max, n <= n_max."""
    need = theorem_modulus_exponent(alpha_max)
    if K_guard is None:
        K_guard = need + 2
    if K_guard < need:
        raise ValueError(f"K_guard={K_guard} below the largest modulus exponent {need}")
    top = 3**alpha_max * n_max + lambda_alpha(alpha_max)
    report = Report("theorem")
    with timed(report):
        if table is None:
            table = cphi6_series(CoeffRing.mod3k(K_guard), top + 1)
        if len(table) <= top:
            raise PrecisionShortfall(f"need cphi6 up to {top}, table has {len(table)} terms")
        for alpha in range(1, alpha_max + 1):
            lam = lambda_alpha(alpha)
            e = theorem_modulus_exponent(alpha)
            mod = 3**e
            bad = [n for n in range(n_max + 1) if table[3**alpha * n + lam] % mod]
            report.add(
                f"theorem-alpha{alpha}",
                f"cphi6({3**alpha}n+{lam}) = 0 mod 3^{e} for 0 <= n <= {n_max}",
                f"main congruence, alpha={alpha}",
                not bad,
                None if not bad else f"n={bad[0]} (failures: {len(bad)})",
            )
    return report


KNOWN_FAMILIES = (
    # (id, step, offset, exponent)
    ("3n+2", 3, 2, 3),
    ("9n+7", 9, 7, 3),
    ("19683n+11482", 19683, 11482, 7),
    ("59049n+44287", 59049, 44287, 7),
)


def check_known_congruences(n_max: int = 500, big_terms: dict[str, int] | None = None,
                            K: int = 9) -> Report:
    """Literature congruences: the two mod-27 families for n <= n_max, and the
    two mod-3^7 families for the first ``big_terms[id]`` values of n."""
    if big_terms is None:
        big_terms = {"19683n+11482": 2, "59049n+44287": 1}
    counts = {"3n+2": n_max + 1, "9n+7": n_max + 1, **big_terms}
    report = Report("known")
    with timed(report):
        top = max(step * (counts[fid] - 1) + off
                  for fid, step, off, _ in KNOWN_FAMILIES if counts.get(fid, 0) > 0)
        table = cphi6_series(CoeffRing.mod3k(K), top + 1)
        for fid, step, off, e in KNOWN_FAMILIES:
            count = counts.get(fid, 0)
            if count <= 0:
                continue
            mod = 3**e
            bad = [n for n in range(count) if table[step * n + off] % mod]
            report.add(
                f"known-{fid}",
                f"cphi6({fid}) = 0 mod 3^{e} for 0 <= n < {count}",
                f"known congruence cphi6({fid})",
                not bad,
                None if not bad else f"n={bad[0]}",
            )
    return report


def enumerate_table(n_max: int) -> list[int]:
    return [cphi6_enumerate(n) for n in range(n_max + 1)]

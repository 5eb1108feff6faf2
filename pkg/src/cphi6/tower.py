"""The U_A / U_B tower, its modular-equation data, the fundamental arrays
a(k, m, n) and b(k, m, n), the tower coefficients d_n, and the 3-adic checks.

Shapes used throughout (y = 1/(1-3t)):

    U_A(p1 y^m t^k) = y^(3m+8) p0 sum_n a(k, m, n) t^n
    U_B(p0 y^m t^k) = y^(3m)   p1 sum_n b(k, m, n) t^n
    L_(2s-1) = p0 y^(3^(2s)-1)   sum_n d_n t^n
    L_(2s)   = p1 y^(3^(2s+1)-3) sum_n d_n t^n
"""

from __future__ import annotations

import json
import logging
import math
import os
import threading
from fractions import Fraction
from dataclasses import dataclass, field
from pathlib import Path

from . import tables
from .etaq import named_generator
from .frob6 import cphi6_series, lambda_alpha
from .report import Report, timed
from .series import EXACT, CoeffRing, Series, invert, substitute_q_power, u_operator, val3
from .tpoly import TPoly

log = logging.getLogger(__name__)

__all__ = [
    "ModEqCoeffs",
    "modeq_coeffs",
    "apply_UA",
    "apply_UB",
    "L_series",
    "verify_modeq_t",
    "verify_modeq_y",
    "modeq_residual",
    "three_term_recurrence_check",
    "FundArrays",
    "array_a",
    "array_b",
    "y_exponent",
    "level_shape",
    "d_coeffs_symbolic",
    "d_coeffs_qseries",
    "d_levels",
    "check_main_lemma",
    "check_divisibility_recurrences",
    "check_array_bounds",
    "check_L_cphi_link",
    "check_modeq",
    "check_L1",
    "check_cross_route",
    "PrecisionShortfall",
]


class PrecisionShortfall(ValueError):
    pass


# ---------------------------------------------------------------------------
# modular-equation coefficients

A_POLYS: dict[int, TPoly] = {
    0: TPoly({1: -1}),
    1: TPoly({2: 3}),
    2: TPoly({3: -9, 1: 6}),
}
# polynomials in y
B_POLYS: dict[int, TPoly] = {
    0: TPoly({3: -1}),
    1: TPoly({3: 8, 2: -3, 1: -3, 0: 1}),
    2: TPoly({3: -16, 2: 12, 1: 3, 0: -2}),
}


def _s_exponent(j: int, l: int) -> int:
    return (2 * l + j) // 3


def derive_s_table(a_polys: dict[int, TPoly] = A_POLYS) -> dict[tuple[int, int], int]:
    """s(j, l) with a_j(t) = sum_{l=1..3} s(j, l) 3^floor((2l+j)/3) t^l."""
    table = {}
    for j, poly in a_polys.items():
        for e in poly.coeffs:
            if not 1 <= e <= 3:
                raise ValueError(f"a_{j} has a t^{e} term outside l = 1..3")
        for l in (1, 2, 3):
            c = poly.coeffs.get(l, 0)
            q, r = divmod(c, 3 ** _s_exponent(j, l))
            if r:
                raise ValueError(f"3^{_s_exponent(j, l)} does not divide the t^{l} coefficient of a_{j}")
            table[j, l] = q
    return table


def derive_b_rewrite(j: int, b_polys: dict[int, TPoly] = B_POLYS) -> tuple[int, TPoly]:
    """Write b_j(y) = y^d g(t) with d = 9 - 3j, using y = 1/(1-3t).

    y^i = y^d (1-3t)^(d-i), so g = sum_i c_i (1-3t)^(d-i).
    """
    d = 9 - 3 * j
    one_minus_3t = TPoly({0: 1, 1: -3})
    g = TPoly()
    for i, c in b_polys[j].items():
        if i > d:
            raise ValueError(f"b_{j} has degree above {d}")
        g = g + one_minus_3t ** (d - i) * c
    return d, g


@dataclass(frozen=True)
class ModEqCoeffs:
    a: dict[int, TPoly]
    b: dict[int, TPoly]
    b_rewrite: dict[int, tuple[int, TPoly]]
    s_table: dict[tuple[int, int], int]

    def a_from_s(self, j: int) -> TPoly:
        return TPoly({l: self.s_table[j, l] * 3 ** _s_exponent(j, l) for l in (1, 2, 3)})

    def rewrite_consistent(self, j: int) -> bool:
        """y^d g_j(t) == b_j(y) at y = 1/(1-3t), checked in exact rationals at
        more points than the degree of the cleared-denominator identity."""
        d, g = self.b_rewrite[j]
        for t in range(-8, 9):
            y = Fraction(1, 1 - 3 * t)
            lhs = y**d * sum(c * Fraction(t) ** e for e, c in g.items())
            if lhs != sum(c * y**i for i, c in self.b[j].items()):
                return False
        return True


def modeq_coeffs() -> ModEqCoeffs:
    return ModEqCoeffs(
        a=dict(A_POLYS),
        b=dict(B_POLYS),
        b_rewrite={j: derive_b_rewrite(j) for j in range(3)},
        s_table=derive_s_table(),
    )


# ---------------------------------------------------------------------------
# U_A, U_B and the tower

_SHIFT = {"A": -3, "B": -1}


def _apply(f: Series, name: str) -> Series:
    s = _SHIFT[name]
    # generator precision chosen so that the product precision is set by f
    gen_prec = max(f.prec + s - f.start, s + 1)
    return u_operator(named_generator(name, f.ring, gen_prec) * f, 3)


def apply_UA(f: Series) -> Series:
    return _apply(f, "A")


def apply_UB(f: Series) -> Series:
    return _apply(f, "B")


def _input_prec(level: int, out_prec: int) -> int:
    # U_3 of (G f) reaches out_prec iff G f reaches 3*out_prec - 2
    shift = _SHIFT["A" if level % 2 else "B"]
    return 3 * out_prec - 2 - shift


_L_cache: dict[tuple[int, CoeffRing], Series] = {}
_L_lock = threading.Lock()


def L_series(alpha: int, ring: CoeffRing = EXACT, prec: int = 50) -> Series:
    """L_alpha as a q-series modulo q^prec."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    cached = _L_cache.get((alpha, ring))
    if cached is not None and cached.prec >= prec:
        return cached.truncate(prec)
    precs = [prec]
    for level in range(alpha, 0, -1):
        precs.append(_input_prec(level, precs[-1]))
    precs.reverse()
    L = named_generator("L0", ring, precs[0])
    for level in range(1, alpha + 1):
        L = apply_UA(L) if level % 2 else apply_UB(L)
    if L.prec < prec:
        raise PrecisionShortfall(f"L_{alpha} reached prec {L.prec} < {prec}")
    with _L_lock:
        _L_cache[alpha, ring] = L
    return L.truncate(prec)


def y_exponent(alpha: int) -> int:
    """Power of y in L_alpha, from the recursion f(1)=8, f(s)=3f(s-1) (+8 if s odd)."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    f = 8
    for s in range(2, alpha + 1):
        f = 3 * f + (8 if s % 2 else 0)
    closed = 3 ** (alpha + 1) - (1 if alpha % 2 else 3)
    if f != closed:
        raise AssertionError(f"y exponent recursion {f} != closed form {closed} at {alpha}")
    return f


def level_shape(alpha: int) -> tuple[str, int, int]:
    """(weight name, y exponent, lowest t exponent) of L_alpha."""
    if alpha == 0:
        return "one", 0, -1
    if alpha % 2:
        return "p0", y_exponent(alpha), -1
    return "p1", y_exponent(alpha), 0


# ---------------------------------------------------------------------------
# modular equations as q-series identities


def _polys_at(polys: dict[int, TPoly], x: Series, prec: int) -> dict[int, Series]:
    return {j: p.evaluate(x, prec) for j, p in polys.items()}


def modeq_residual(which: str, prec: int, polys: dict[int, TPoly] | None = None) -> Series:
    """X^3 + c_2 X^2 + c_1 X + c_0 at X = g(q), coefficients evaluated at g(q^3).

    Shifting tau -> 3 tau sends the root g((tau+0)/3) to g(tau) and the
    coefficients c_j(g(tau)) to c_j(g(3 tau)), so the residual must vanish.
    """
    if which == "t":
        polys = A_POLYS if polys is None else polys
    elif which == "y":
        polys = B_POLYS if polys is None else polys
    else:
        raise ValueError(f"unknown modular equation {which!r}")
    X = named_generator(which, EXACT, prec)
    X3 = substitute_q_power(X, 3).truncate(prec)
    c = _polys_at(polys, X3, prec)
    X2 = X * X
    return X2 * X + c[2] * X2 + c[1] * X + c[0]


def verify_modeq_t(prec: int = 300, a_polys: dict[int, TPoly] | None = None) -> bool:
    r = modeq_residual("t", prec, a_polys)
    return r.is_zero and r.prec >= prec


def verify_modeq_y(prec: int = 300, b_polys: dict[int, TPoly] | None = None) -> bool:
    r = modeq_residual("y", prec, b_polys)
    return r.is_zero and r.prec >= prec


def u3_identities(prec: int = 200) -> dict[str, int | None]:
    """First differing exponent (None if none) of U_3(t) = 3t^3 - 2t and U_3(1/t) = t."""
    t = named_generator("t", EXACT, 3 * prec + 3)
    out = {}
    lhs = u_operator(t, 3).truncate(prec)
    out["U3(t)"] = lhs.first_difference(TPoly({3: 3, 1: -2}).evaluate(t, prec))
    lhs = u_operator(invert(t), 3).truncate(prec)
    out["U3(1/t)"] = lhs.first_difference(t.truncate(prec))
    if lhs.prec < prec:
        raise PrecisionShortfall("U_3(1/t) short of requested precision")
    return out


def three_term_recurrence_check(u: Series, j: int, prec: int, variable: str = "t") -> bool:
    """U_3(u g^(j+3)) == -sum_i c_i(g) U_3(u g^(j+i)) with g = t (c = a) or g = y (c = b)."""
    if variable not in ("t", "y"):
        raise ValueError(f"variable must be 't' or 'y', got {variable!r}")
    polys = A_POLYS if variable == "t" else B_POLYS
    extra = 3 * abs(j) + 12
    need = 3 * prec + extra - min(u.start, 0)
    g = named_generator(variable, EXACT, need)
    if u.is_zero:
        return True

    def U(e: int) -> Series:
        return u_operator(u * g**e, 3)

    lhs = U(j + 3)
    gp = named_generator(variable, EXACT, prec + 8)
    rhs = sum((-polys[i].evaluate(gp) * U(j + i) for i in range(3)), Series.zero(EXACT, lhs.prec))
    diff = (lhs - rhs).truncate(prec)
    if diff.prec < prec:
        raise PrecisionShortfall(f"three-term check reached prec {diff.prec} < {prec}")
    return diff.is_zero


# ---------------------------------------------------------------------------
# fundamental arrays


def ord_bound(array: str, k: int) -> int:
    """Lowest n with possibly nonzero entry: ceil((k-3)/3) for a, ceil((k-1)/3) for b."""
    return -((-(k - (3 if array == "a" else 1))) // 3)


def val_bound(array: str, k: int, n: int) -> int:
    """Lower bound for the 3-adic valuation of the (k, *, n) entry."""
    return (2 * n - k + (3 if array == "a" else 2)) // 3


@dataclass
class _Entry:
    poly: TPoly
    provenance: str


@dataclass
class FundArrays:
    """Memoized a(k, m, n), b(k, m, n) for k >= -1, m >= 0, built from the 18 base
    relations by the three-term recurrences in k (via a_j) and m (via b_j)."""

    cache_path: Path | None = None
    violations: list[tuple[str, int, int, int, str]] = field(default_factory=list)

    def __post_init__(self):
        self._store: dict[tuple[str, int, int], _Entry] = {}
        self._lock = threading.RLock()
        self._g = {j: derive_b_rewrite(j)[1] for j in range(3)}
        if self.cache_path is not None:
            self.cache_path = Path(self.cache_path)
            if self.cache_path.exists():
                self.load(self.cache_path)

    # -- construction -------------------------------------------------------

    def _get(self, array: str, k: int, m: int, cap: int) -> TPoly | None:
        entry = self._store.get((array, k, m))
        if entry is None:
            return None
        if entry.poly.cap is not None and entry.poly.cap < cap:
            return None
        return entry.poly.with_cap(cap)

    def _put(self, array: str, k: int, m: int, poly: TPoly, provenance: str) -> None:
        old = self._store.get((array, k, m))
        if old is not None and (old.poly.cap is None or (poly.cap is not None and old.poly.cap >= poly.cap)):
            return
        self._check(array, k, m, poly)
        self._store[array, k, m] = _Entry(poly, provenance)

    def _check(self, array: str, k: int, m: int, poly: TPoly) -> None:
        low = ord_bound(array, k)
        for n, c in poly.items():
            if n < low:
                self.violations.append((array, k, m, n, "order"))
            elif val3(c) < val_bound(array, k, n):
                self.violations.append((array, k, m, n, "valuation"))

    def poly(self, array: str, k: int, m: int, cap: int) -> TPoly:
        """sum_n X(k, m, n) t^n truncated above t^cap (X = a or b)."""
        if array not in ("a", "b"):
            raise ValueError(f"array must be 'a' or 'b', got {array!r}")
        if k < -1:
            raise ValueError(f"k = {k} < -1: downward extension is not implemented")
        if m < 0:
            raise ValueError(f"m must be >= 0, got {m}")
        with self._lock:
            hit = self._get(array, k, m, cap)
            if hit is not None:
                return hit
            if k <= 1:
                self._build_m_chain(array, k, m, cap)
            else:
                self._build_k_chain(array, k, m, cap)
            return self._get(array, k, m, cap)

    def _build_m_chain(self, array: str, k: int, m: int, cap: int) -> None:
        for mm in range(0, m + 1):
            if self._get(array, k, mm, cap) is not None:
                continue
            if mm <= 2:
                self._put(array, k, mm, tables.base_poly(array, mm, k).with_cap(cap), "appendix-base")
                continue
            acc = TPoly(cap=cap)
            for j in range(3):
                acc = acc - self._g[j] * self._get(array, k, mm - 3 + j, cap)
            self._put(array, k, mm, acc, "m-recurrence")

    def _build_k_chain(self, array: str, k: int, m: int, cap: int) -> None:
        for kk in (-1, 0, 1):
            if self._get(array, kk, m, cap) is None:
                self._build_m_chain(array, kk, m, cap)
        for kk in range(2, k + 1):
            if self._get(array, kk, m, cap) is not None:
                continue
            acc = TPoly(cap=cap)
            for j in range(3):
                acc = acc - A_POLYS[j] * self._get(array, kk - 3 + j, m, cap)
            self._put(array, kk, m, acc, "k-recurrence")

    # -- access -------------------------------------------------------------

    def value(self, array: str, k: int, m: int, n: int) -> int:
        return self.poly(array, k, m, max(n, 0))[n]

    def values(self, array: str, k: int, m: int, n_range) -> list[int]:
        n_range = list(n_range)
        p = self.poly(array, k, m, max(max(n_range), 0))
        return [p[n] for n in n_range]

    def provenance(self, array: str, k: int, m: int) -> str | None:
        entry = self._store.get((array, k, m))
        return None if entry is None else entry.provenance

    # -- persistence --------------------------------------------------------

    def to_json(self) -> list[dict]:
        out = []
        for (array, k, m), entry in sorted(self._store.items()):
            out.append({
                "array": array,
                "k": k,
                "m": m,
                "n_max": entry.poly.cap,
                "provenance": entry.provenance,
                "values": {str(n): str(c) for n, c in entry.poly.items()},
            })
        return out

    def save(self, path: Path | None = None) -> Path:
        path = Path(path or self.cache_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self.to_json()))
        os.replace(tmp, path)
        return path

    def load(self, path: Path) -> None:
        records = json.loads(Path(path).read_text())
        with self._lock:
            for rec in records:
                poly = TPoly({int(n): int(c) for n, c in rec["values"].items()}, rec.get("n_max"))
                self._put(rec["array"], int(rec["k"]), int(rec["m"]), poly,
                          rec.get("provenance", "cache"))
        log.debug("loaded %d array records from %s", len(records), path)


_default_arrays: FundArrays | None = None


def default_arrays() -> FundArrays:
    global _default_arrays
    if _default_arrays is None:
        cache_dir = os.environ.get("CPHI6_CACHE_DIR")
        path = Path(cache_dir) / "arrays.json" if cache_dir else None
        _default_arrays = FundArrays(path)
    return _default_arrays


def array_a(k: int, m: int, n_range, arrays: FundArrays | None = None) -> list[int]:
    return (arrays or default_arrays()).values("a", k, m, n_range)


def array_b(k: int, m: int, n_range, arrays: FundArrays | None = None) -> list[int]:
    return (arrays or default_arrays()).values("b", k, m, n_range)


# ---------------------------------------------------------------------------
# tower coefficients


def _level0_in_p1_basis(cap: int) -> dict[int, int]:
    """Coefficients of L0 / p1 = (t^-1 + 27 + 3t + 9t^2) (1+t)^-2 up to t^cap."""
    inv_sq = TPoly({j: (-1) ** j * (j + 1) for j in range(cap + 2)}, cap + 1)
    return (tables.L0_POLY.shift(1) * inv_sq).shift(-1).with_cap(cap).to_dict()


def _next_level(prev: dict[int, int], level: int, n_top: int, arrays: FundArrays) -> dict[int, int]:
    """d^(level)_n for n <= n_top from d^(level-1)."""
    m = y_exponent(level - 1) if level > 1 else 0
    if level % 2:
        array, n_lo, k_lo, k_span = "a", -1, 0, 3
    else:
        array, n_lo, k_lo, k_span = "b", 0, -1, 1
    if level == 1:
        k_lo = -1  # L0 / p1 starts at t^-1
    support = [k for k, c in prev.items() if c]
    out = {}
    polys: dict[int, TPoly] = {}
    for n in range(n_lo, n_top + 1):
        acc = 0
        for k in support:
            if k < k_lo or k > 3 * n + k_span:
                continue
            if k not in polys:
                polys[k] = arrays.poly(array, k, m, n_top)
            acc += prev[k] * polys[k][n]
        out[n] = acc
    return out


def _demands(alpha: int, n_max: int) -> dict[int, int]:
    demand = {alpha: n_max}
    for level in range(alpha, 0, -1):
        demand[level - 1] = 3 * demand[level] + (3 if level % 2 else 1)
    return demand


def d_levels(alpha_max: int, n_max: int, arrays: FundArrays | None = None,
             seed: str = "auto") -> dict[int, dict[int, int]]:
    """d^(i)_n for 1 <= i <= alpha_max, each level to the depth the top level needs.

    ``seed`` picks the start: "L0" derives level 1 from L0 / p1 through the
    arrays; "L1" starts from the tabulated L1 polynomial; "auto" uses L0 when
    only level 1 is requested and L1 otherwise (level 1 from L0 needs every
    a(k, 0, n) with k up to 3n+3, which explodes for deep towers).
    """
    if alpha_max < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha_max}")
    arrays = arrays or default_arrays()
    demand = _demands(alpha_max, n_max)
    if seed == "auto":
        seed = "L0" if alpha_max == 1 else "L1"
    levels: dict[int, dict[int, int]] = {}
    if seed == "L0":
        level0 = _level0_in_p1_basis(demand[0])
        levels[1] = _next_level(level0, 1, demand[1], arrays)
    elif seed == "L1":
        poly = tables.L1_POLY
        levels[1] = {n: poly.coeffs.get(n, 0) for n in range(-1, max(demand[1], poly.max_exp) + 1)}
    else:
        raise ValueError(f"unknown seed {seed!r}")
    for level in range(2, alpha_max + 1):
        levels[level] = _next_level(levels[level - 1], level, demand[level], arrays)
    return levels


def d_coeffs_symbolic(alpha: int, n_max: int, arrays: FundArrays | None = None,
                      seed: str = "auto") -> dict[int, int]:
    """d^(alpha)_n, n <= n_max, from the coefficient recurrences over the arrays."""
    levels = d_levels(alpha, n_max, arrays, seed)
    lo = level_shape(alpha)[2]
    return {n: levels[alpha].get(n, 0) for n in range(lo, n_max + 1)}


def d_coeffs_qseries(alpha: int, n_max: int, prec: int | None = None) -> dict[int, int]:
    """d^(alpha)_n, n <= n_max, by expanding L_alpha and peeling powers of t."""
    from .reduce import to_yt_form

    weight, y_exp, lo = level_shape(alpha)
    prec = n_max + 1 if prec is None else max(prec, n_max + 1)
    L = L_series(alpha, EXACT, prec)
    result = to_yt_form(L, y_exp, weight, max_deg=n_max, min_exp=lo)
    if result.complete is False and result.residual_ord <= n_max:
        raise AssertionError(f"peeling L_{alpha} stopped early at q^{result.residual_ord}")
    return {n: result.poly.coeffs.get(n, 0) for n in range(lo, n_max + 1)}


# ---------------------------------------------------------------------------
# checks


def lemma_bound(level: int, n: int) -> int:
    """Claimed lower bound for val3(d^(level)_n)."""
    alpha = (level + 1) // 2
    if n == 0:
        return alpha + 2
    return (2 * n + 5) // 3 + alpha


def check_main_lemma(alpha_max: int = 4, n_max: int = 30, arrays: FundArrays | None = None) -> Report:
    report = Report("lemma")
    with timed(report):
        levels = d_levels(alpha_max, n_max, arrays)
        for level in range(1, alpha_max + 1):
            d = levels[level]
            lo = level_shape(level)[2]
            kind = "odd" if level % 2 else "even"
            bad = [n for n in sorted(d) if n >= lo and n != 0 and val3(d[n]) < lemma_bound(level, n)]
            report.add(
                f"lemma-L{level}-general",
                f"val3(d^({level})_n) >= floor((2n+5)/3) + {(level + 1) // 2} "
                f"for {lo} <= n <= {max(d)}, n != 0",
                f"main lemma ({kind} bound)",
                not bad,
                None if not bad else f"n={bad[0]}, val3={val3(d[bad[0]])}",
            )
            v0 = val3(d.get(0, 0))
            report.add(
                f"lemma-L{level}-special",
                f"val3(d^({level})_0) = {v0} >= {lemma_bound(level, 0)}",
                f"main lemma ({kind} special bound)",
                v0 >= lemma_bound(level, 0),
                None if v0 >= lemma_bound(level, 0) else f"val3={v0}",
            )
            # the weakest bound over n must equal the congruence exponent
            weakest = min(lemma_bound(level, n) for n in range(lo, 3))
            target = level // 2 + 2
            observed = min((val3(c) for c in d.values() if c), default=math.inf)
            ok = weakest == target and observed >= target
            report.add(
                f"lemma-L{level}-linkage",
                f"min bound {weakest} = congruence exponent {target}; observed min val3 {observed}",
                "main lemma implies main congruence",
                ok,
                None if ok else f"weakest={weakest}, observed={observed}",
            )
    return report


def check_divisibility_recurrences(m_max: int = 100, arrays: FundArrays | None = None) -> Report:
    """Scalar recurrences for b(-1, m, 0), a(0, m, 0), a(1, m, 0) and their divisibility by 3."""
    arrays = arrays or default_arrays()
    report = Report("divisibility")
    with timed(report):
        b = [arrays.value("b", -1, m, 0) for m in range(m_max + 1)]
        a0 = [arrays.value("a", 0, m, 0) for m in range(m_max + 1)]
        a0m = [arrays.value("a", 0, m, -1) for m in range(m_max + 1)]
        a1 = [arrays.value("a", 1, m, 0) for m in range(m_max + 1)]
        for name, seq, base in (("b(-1,m,0)", b, tables.BASE_B_M1),
                                ("a(0,m,0)", a0, tables.BASE_A_0),
                                ("a(1,m,0)", a1, tables.BASE_A_1)):
            ok = tuple(seq[:3]) == base
            report.add(f"base-{name}", f"{name} for m=0,1,2 is {base}", "base values",
                       ok, None if ok else f"got {tuple(seq[:3])}")
        bad_b = [m for m in range(3, m_max + 1) if b[m] != b[m - 3] - 3 * b[m - 2] + 3 * b[m - 1]]
        bad_a1 = [m for m in range(3, m_max + 1) if a1[m] != a1[m - 3] - 3 * a1[m - 2] + 3 * a1[m - 1]]
        bad_a0 = [m for m in range(3, m_max + 1)
                  if a0[m] != (a0[m - 3] - 18 * a0m[m - 3] - 3 * a0[m - 2] + 9 * a0m[m - 2]
                               + 3 * a0[m - 1] + 36 * a0m[m - 1])]
        for name, bad in (("b(-1,m,0)", bad_b), ("a(0,m,0)", bad_a0), ("a(1,m,0)", bad_a1)):
            report.add(f"recurrence-{name}", f"scalar recurrence for {name}, 3 <= m <= {m_max}",
                       "divisibility recurrence", not bad, None if not bad else f"m={bad[0]}")
        for name, seq in (("b(-1,m,0)", b), ("a(0,m,0)", a0), ("a(1,m,0)", a1)):
            bad = [m for m, v in enumerate(seq) if v % 3]
            report.add(f"div3-{name}", f"3 | {name} for 0 <= m <= {m_max}",
                       "divisibility by 3", not bad, None if not bad else f"m={bad[0]}")
    return report


def check_array_bounds(k_max: int = 10, m_max: int = 30, n_max: int = 15,
                       arrays: FundArrays | None = None) -> Report:
    """Order and valuation bounds on every a(k, m, n), b(k, m, n) with -1 <= k <= k_max,
    0 <= m <= m_max, n <= n_max."""
    arrays = arrays or default_arrays()
    report = Report("arrays")
    with timed(report):
        for array in ("a", "b"):
            order_bad, val_bad, count = [], [], 0
            for m in range(m_max + 1):
                for k in range(-1, k_max + 1):
                    p = arrays.poly(array, k, m, n_max)
                    low = ord_bound(array, k)
                    for n, c in p.items():
                        count += 1
                        if n < low:
                            order_bad.append((k, m, n))
                        elif val3(c) < val_bound(array, k, n):
                            val_bad.append((k, m, n))
            vb = "(2n-k+3)/3" if array == "a" else "(2n-k+2)/3"
            report.add(f"{array}-order", f"{array}(k,m,n) = 0 below its order bound ({count} entries)",
                       f"array {array} order bound", not order_bad,
                       None if not order_bad else f"(k,m,n)={order_bad[0]}")
            report.add(f"{array}-valuation", f"val3({array}(k,m,n)) >= floor({vb})",
                       f"array {array} valuation bound", not val_bad,
                       None if not val_bad else f"(k,m,n)={val_bad[0]}")
    return report


def check_L_cphi_link(level: int, terms: int = 120) -> Report:
    """L_level / weight == sum cphi6(3^level n + lambda_level) q^n to ``terms`` terms."""
    if level < 1:
        raise ValueError("level must be >= 1")
    report = Report(f"L{level}-cphi6")
    with timed(report):
        weight_name = "weight_odd" if level % 2 else "weight_even"
        L = L_series(level, EXACT, terms)
        w = named_generator(weight_name, EXACT, terms + 2)
        lhs = (L * invert(w)).truncate(terms)
        step, lam = 3**level, lambda_alpha(level)
        table = cphi6_series(EXACT, step * (terms - 1) + lam + 1)
        rhs = Series.from_list(EXACT, [table[step * n + lam] for n in range(terms)])
        diff = lhs.first_difference(rhs)
        ok = diff is None and lhs.prec >= terms
        report.add(f"L{level}-cphi6", f"L_{level} = weight * sum cphi6({step}n+{lam}) q^n, {terms} terms",
                   "tower level vs cphi6 subsequence", ok,
                   None if ok else f"q^{diff}" if diff is not None else f"prec {lhs.prec}")
    return report


def check_modeq(prec: int = 300, recurrence_prec: int = 40) -> Report:
    """Modular equations, U_3 identities, coefficient bookkeeping and the three-term recurrences."""
    report = Report("modeq")
    with timed(report):
        coeffs = modeq_coeffs()
        report.add("modeq-t", f"t-equation residual vanishes to q^{prec}", "cubic equation for t",
                   verify_modeq_t(prec))
        report.add("modeq-y", f"y-equation residual vanishes to q^{prec}", "cubic equation for y",
                   verify_modeq_y(prec))
        for name, diff in u3_identities(min(prec, 200)).items():
            report.add(f"u3-{name}", f"{name} identity to q^{min(prec, 200)}", "U_3 identities",
                       diff is None, None if diff is None else f"q^{diff}")
        for j in range(3):
            ok = coeffs.a_from_s(j) == coeffs.a[j]
            report.add(f"s-table-a{j}", f"a_{j} = sum_l s({j},l) 3^floor((2l+{j})/3) t^l",
                       "s(j, l) reconstruction", ok)
            ok = coeffs.rewrite_consistent(j) and coeffs.b_rewrite[j][1] == tables.B_REWRITE_TABULATED[j]
            report.add(f"b-rewrite-{j}", f"b_{j}(1/(1-3t)) (1-3t)^{coeffs.b_rewrite[j][0]} "
                       "equals the tabulated rewrite", "b_j rewrite in t", ok)
        ok = coeffs.b_rewrite[1][1] != tables.B1_REWRITE_VARIANT
        report.add("b-rewrite-1-variant", "the alternative expansion of b_1 is not the rewrite",
                   "b_1 rewrite variants", ok)
        P = recurrence_prec
        big = 3 * P + 40
        t = named_generator("t", EXACT, big)
        y = named_generator("y", EXACT, big)
        t_inv = invert(t)
        for gen, m in (("p1", 0), ("p1", 2), ("p0", 0), ("p0", 1)):
            u = named_generator(gen, EXACT, big) * y**m
            for variable, j, base in (("t", -1, u), ("t", 1, u), ("y", 0, u * t_inv), ("y", 1, u * t)):
                ok = three_term_recurrence_check(base, j, P, variable)
                report.add(f"three-term-{variable}-{gen}y{m}-{j}",
                           f"three-term recurrence in {variable} for {gen} y^{m}, shift {j}",
                           f"three-term recurrence in {variable}", ok)
    return report


def check_L1(prec: int = 60) -> Report:
    from .reduce import to_yt_form

    report = Report("L1")
    with timed(report):
        res = to_yt_form(L_series(1, EXACT, prec), y_exponent(1), "p0")
        ok = res.complete and res.poly == tables.L1_POLY
        report.add("L1-peel", f"L_1 peels to p0 y^8 (tabulated polynomial), slack {res.slack}",
                   "L_1 in (y, t) form", ok, None if ok else f"complete={res.complete}")
        d = d_coeffs_symbolic(1, 12, seed="L0")
        ok = all(d[n] == tables.L1_POLY.coeffs.get(n, 0) for n in d)
        report.add("L1-from-L0", "arrays applied to L0 / p1 give the same L_1 coefficients (n <= 12)",
                   "L_1 from L_0 by the coefficient recurrence", ok)
    return report


def check_cross_route(alpha_max: int = 3, n_max: int = 20) -> Report:
    report = Report("cross-route")
    with timed(report):
        for alpha in range(1, alpha_max + 1):
            s = d_coeffs_symbolic(alpha, n_max)
            q = d_coeffs_qseries(alpha, n_max)
            bad = [n for n in s if s[n] != q.get(n)]
            report.add(f"cross-route-L{alpha}",
                       f"d^({alpha})_n from arrays = from peeled q-series, n <= {n_max}",
                       "tower coefficients, two routes", not bad,
                       None if not bad else f"n={bad[0]}")
    return report

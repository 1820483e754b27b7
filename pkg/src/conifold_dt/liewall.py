"""Wall-crossing in the Lie algebra spanned by symbols c_v, and its series form.

The bracket is ``[c_v, c_w] = (-1)^chi(v,w) chi(v,w) c_{v+w}`` on lattice
classes.  A :class:`LieVector` stores *index* triples and converts to classes
at bracket time, so the same triples label both Lie elements and series terms.

Three routes compute one wall crossing:

* :func:`conjugate_dt` -- iterated brackets ``f + sum ad_E^m(f) / m!``;
* :func:`cross_wall_expand` with ``method="sum"`` -- the explicit sum over
  compositions of the rank shift;
* :func:`cross_wall_closed` -- the multiplicative substitution on ``z^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .lattice import ChargeIndex, euler_pairing, to_class
from .series import (
    Series,
    Window,
    WindowError,
    exp_trunc,
    format_rational,
    int_pow,
    substitute_z,
)


class NonTerminatingError(ValueError):
    pass


class WindowTooNarrowError(WindowError):
    def __init__(self, message: str, required_x_min: int | None = None):
        super().__init__(message)
        self.required_x_min = required_x_min


RankWindow = tuple[int, int]


class LieVector:
    """Finitely supported element of the completed Lie algebra, truncated in rank."""

    __slots__ = ("terms", "rank_window")

    def __init__(self, terms: Mapping[ChargeIndex, object] | Iterable = (), rank_window: RankWindow = (-8, 8)):
        lo, hi = rank_window
        if lo > hi:
            raise WindowError(f"empty rank window {rank_window}")
        self.rank_window = (int(lo), int(hi))
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[ChargeIndex, Fraction] = {}
        for v, c in items:
            if not isinstance(v, ChargeIndex):
                v = ChargeIndex(*v)
            if not lo <= v.r <= hi:
                continue
            c = clean.get(v, Fraction(0)) + Fraction(c)
            if c:
                clean[v] = c
            else:
                clean.pop(v, None)
        self.terms = clean

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieVector):
            return NotImplemented
        return self.rank_window == other.rank_window and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{c}*c{v}" for v, c in sorted(self.terms.items()))
        return f"LieVector([{body}], rank_window={self.rank_window})"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, v: ChargeIndex) -> Fraction:
        return self.terms.get(v, Fraction(0))

    def _check(self, other: "LieVector") -> None:
        if self.rank_window != other.rank_window:
            raise WindowError(f"rank window mismatch: {self.rank_window} vs {other.rank_window}")

    def __add__(self, other: "LieVector") -> "LieVector":
        self._check(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            out[v] = out.get(v, 0) + c
        return LieVector(out, self.rank_window)

    def __neg__(self) -> "LieVector":
        return LieVector({v: -c for v, c in self.terms.items()}, self.rank_window)

    def __sub__(self, other: "LieVector") -> "LieVector":
        return self + (-other)

    def scale(self, c) -> "LieVector":
        c = Fraction(c)
        return LieVector({v: c * a for v, a in self.terms.items()}, self.rank_window)

    def with_rank_window(self, rank_window: RankWindow) -> "LieVector":
        return LieVector(self.terms, rank_window)

    def to_json(self) -> list[dict]:
        return [
            {"index": v.to_dict(), "c": format_rational(c)}
            for v, c in sorted(self.terms.items(), key=lambda t: (t[0].n, t[0].beta, t[0].r))
        ]

    @classmethod
    def from_json(cls, doc: list, rank_window: RankWindow | None = None) -> "LieVector":
        terms = [(ChargeIndex.from_dict(t["index"]), Fraction(str(t["c"]))) for t in doc]
        if rank_window is None:
            ranks = [v.r for v, _ in terms] or [0]
            rank_window = (min(ranks), max(ranks))
        return cls(terms, rank_window)


def bracket(a: LieVector, b: LieVector) -> LieVector:
    a._check(b)
    return _bracket_into(a.terms, b.terms, a.rank_window)


def _bracket_into(a_terms, b_terms, rank_window: RankWindow) -> LieVector:
    lo, hi = rank_window
    out: dict[ChargeIndex, Fraction] = {}
    for v, cv in a_terms.items():
        clv = to_class(v)
        for w, cw in b_terms.items():
            r = v.r + w.r
            if not lo <= r <= hi:
                continue
            chi = euler_pairing(clv, to_class(w))
            if chi:
                u = v + w
                sign = -1 if chi % 2 else 1
                out[u] = out.get(u, 0) + sign * chi * cv * cw
    return LieVector(out, rank_window)


def make_ek(k: int, r_max: int, rank_window: RankWindow | None = None) -> LieVector:
    """``sum_{r=1}^{r_max} c_{((-1)^k r, 0, 0)} / r^2``: the O_X[-k] contributions."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    sign = -1 if k % 2 else 1
    if rank_window is None:
        rank_window = (-r_max, r_max)
    return LieVector(
        {ChargeIndex(sign * r, 0, 0): Fraction(1, r * r) for r in range(1, r_max + 1)},
        rank_window,
    )


def _check_terminates(e: LieVector) -> None:
    signs = {(v.r > 0) - (v.r < 0) for v in e.terms}
    if 0 in signs:
        bad = next(v for v in e.terms if v.r == 0)
        raise NonTerminatingError(
            f"conjugating element has a rank-zero term at {bad}; ad-powers never leave the rank window"
        )
    if len(signs) > 1:
        raise NonTerminatingError("conjugating element mixes positive and negative ranks")


def conjugate_dt(f: LieVector, e: LieVector, hall: bool = False) -> LieVector:
    """``f + sum_{m>=1} w_m ad_e^m(f)`` with ``w_m = 1/m!``.

    With ``hall=True`` the weights are ``(-1)^m / m!``, the form taken by the
    same identity before pushing it through ``eps -> -DT c``.
    """
    if not e:
        return f
    _check_terminates(e)
    # e keeps its own terms; only results are truncated to f's rank window
    total = f
    term = f
    m = 0
    # every ad_e shifts rank by at least 1 in a fixed direction
    limit = f.rank_window[1] - f.rank_window[0] + 1
    while True:
        m += 1
        term = _bracket_into(e.terms, term.terms, f.rank_window)
        if not term:
            return total
        if m > limit:
            raise NonTerminatingError("ad-powers failed to leave the rank window")
        w = Fraction(1, math.factorial(m))
        if hall and m % 2:
            w = -w
        total = total + term.scale(w)


@dataclass(frozen=True)
class WallSpec:
    k: int

    @property
    def parity(self) -> int:
        return self.k % 2


@lru_cache(maxsize=None)
def _composition_weight(total: int, parts: int) -> Fraction:
    """Sum over compositions r_1 + ... + r_parts = total (r_i >= 1) of prod 1/r_i."""
    if parts == 0:
        return Fraction(1 if total == 0 else 0)
    if total < parts:
        return Fraction(0)
    return sum(
        (_composition_weight(total - j, parts - 1) / j for j in range(1, total - parts + 2)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def expand_weight(n: int, k: int, shift: int) -> Fraction:
    """Coefficient taking rank r0 to rank ``r0 + (-1)^k * shift`` across wall k on a z^n slice."""
    total = Fraction(0)
    for m in range(1, shift + 1):
        sign = (-1) ** ((n * shift + m * (k + 1)) % 2)
        total += sign * Fraction(n**m, math.factorial(m)) * _composition_weight(shift, m)
    return total


def _slices(dt: LieVector) -> dict[tuple[int, int], dict[int, Fraction]]:
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for v, c in dt.terms.items():
        out.setdefault((v.beta, v.n), {})[v.r] = c
    return out


def cross_wall_expand(dt: LieVector, wall: WallSpec | int, method: str = "sum") -> LieVector:
    """Cross wall ``k`` at the level of individual invariants.

    ``method="sum"`` evaluates the explicit composition sum slice by slice;
    ``method="bch"`` conjugates by :func:`make_ek` sized to the rank window.
    """
    k = wall.k if isinstance(wall, WallSpec) else int(wall)
    lo, hi = dt.rank_window
    if method == "bch":
        width = hi - lo
        if width < 1:
            return dt
        return conjugate_dt(dt, make_ek(k, width))
    if method != "sum":
        raise ValueError(f"unknown method {method!r}")
    direction = -1 if k % 2 else 1
    out: dict[ChargeIndex, Fraction] = {}
    for (beta, n), ranks in _slices(dt).items():
        for r in range(lo, hi + 1):
            value = ranks.get(r, Fraction(0))
            if n:
                for r0, c in ranks.items():
                    shift = (r - r0) * direction
                    if shift >= 1:
                        value += expand_weight(n, k, shift) * c
            if value:
                out[ChargeIndex(r, beta, n)] = value
    return LieVector(out, dt.rank_window)


# -- series side ---------------------------------------------------------------


def lie_from_series(s: Series, rank_window: RankWindow | None = None) -> LieVector:
    if rank_window is None:
        rank_window = (s.window.x_min, s.window.x_max)
    return LieVector({ChargeIndex(x, y, z): c for (x, y, z), c in s.items()}, rank_window)


def series_from_lie(v: LieVector, window: Window) -> Series:
    return Series(window, {(u.r, u.beta, u.n): c for u, c in v.terms.items()})


def _factor_window(s: Series, extra: int) -> Window:
    low = s.x_valuation()
    low = s.window.x_min if low is None else low
    return Window(-extra - 1, s.window.x_max - low + extra + 1, 0)


def _wall_factor(n: int, k: int, inverse: bool, fw: Window, euler: bool = False) -> Series:
    sign = 1 if euler else -((-1) ** (n % 2))
    base = Series.x_poly(fw, {0: 1, 1: sign})  # 1 - (-1)^n x, or 1 + x
    odd = k % 2 == 1
    power = n
    shift = 0
    if odd:
        power, shift = -n, n
    if inverse:
        power, shift = -power, -shift
    return int_pow(base, power).shift((shift, 0, 0))


def _factor_valuation(n: int, k: int, inverse: bool) -> int:
    if k % 2 == 0:
        return 0
    return -n if inverse else n


def required_x_min(s: Series, k: int, inverse: bool = False) -> int:
    """Smallest x exponent the crossed series can reach."""
    low = s.window.x_min
    for (x, _, z), _c in s.items():
        low = min(low, x + _factor_valuation(z, k, inverse))
    return low


def _cross(s: Series, k: int, inverse: bool, euler: bool) -> Series:
    need = required_x_min(s, k, inverse)
    if need < s.window.x_min:
        raise WindowTooNarrowError(
            f"crossing wall {k} pushes terms down to x^{need}; window needs x_min <= {need}",
            required_x_min=need,
        )
    zs = {e[2] for e in s.terms}
    fw = _factor_window(s, max((abs(n) for n in zs), default=0))
    cache: dict[int, Series] = {}

    def g(n: int) -> Series:
        if n not in cache:
            cache[n] = _wall_factor(n, k, inverse, fw, euler)
        return cache[n]

    return substitute_z(s, g)


def cross_wall_closed(s: Series, wall: WallSpec | int, inverse: bool = False) -> Series:
    """Apply ``z^n -> (1-(-1)^n x)^n z^n`` (k even) or ``x^n z^n / (1-(-1)^n x)^n`` (k odd).

    ``inverse=True`` undoes the crossing.  Odd-wall factors are expanded in
    ascending powers of x.
    """
    k = wall.k if isinstance(wall, WallSpec) else int(wall)
    return _cross(s, k, inverse, euler=False)


def cross_wall_euler(s: Series, wall: WallSpec | int, inverse: bool = False) -> Series:
    """Behrend-free variant: ``z^n -> (1+x)^n z^n`` or ``x^n z^n / (1+x)^n``."""
    k = wall.k if isinstance(wall, WallSpec) else int(wall)
    return _cross(s, k, inverse, euler=True)


def cross_series_lie(s: Series, wall: WallSpec | int, method: str = "bch", inverse: bool = False) -> Series:
    """Cross a wall through the Lie algebra, rank window = the series' x-range."""
    k = wall.k if isinstance(wall, WallSpec) else int(wall)
    v = lie_from_series(s)
    if inverse:
        lo, hi = v.rank_window
        out = conjugate_dt(v, -make_ek(k, max(hi - lo, 1)))
    else:
        out = cross_wall_expand(v, k, method=method)
    return series_from_lie(out, s.window)


# -- the exp identity behind the closed form -----------------------------------


@dataclass
class CheckResult:
    ok: bool
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _first_diff(a: Series, b: Series) -> str:
    d = a.diff(b)
    if not d:
        return ""
    e, left, right = d[0]
    return f"first difference at x^{e[0]} y^{e[1]} z^{e[2]}: {left} != {right}"


def lemma_ass_check(n: int, k_parity: str | int, order: int) -> CheckResult:
    """Check ``exp(sum_r (-1)^(k+1) n/r ((-1)^n x)^((-1)^k r))`` against its closed form.

    Even k is compared directly with ``(1-(-1)^n x)^n``.  For odd k the
    exponent runs over ``x^(-r)``; that sum is expanded in ``w = 1/x`` and
    compared with ``(1 - (-1)^n w)^(-n)``, and the ascending-x closed forms
    are checked to multiply to ``x^n``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if isinstance(k_parity, str):
        k = {"even": 0, "odd": 1}[k_parity]
    else:
        k = int(k_parity) % 2
    s = (-1) ** (n % 2)
    w = Window(0, order, 0)
    # for odd k the variable below is w = 1/x
    arg = Series.x_poly(w, {r: Fraction((-1) ** (k + 1) * n, r) * s**r for r in range(1, order + 1)})
    lhs = exp_trunc(arg)
    base = Series.x_poly(w, {0: 1, 1: -s})
    if k == 0:
        rhs = int_pow(base, n)
        return CheckResult(lhs == rhs, _first_diff(lhs, rhs), {"series": lhs})
    direct = int_pow(base, -n)
    wide = Window(-order, order + abs(n), 0)
    even_form = _wall_factor(n, 0, False, wide)
    odd_form = _wall_factor(n, 1, False, wide)
    product = Series(Window(-order, order, 0), (even_form * odd_form).terms)
    target = Series.monomial(product.window, (n, 0, 0))
    ok_direct = lhs == direct
    ok_product = product == target
    detail = "; ".join(
        msg for msg in (
            _first_diff(lhs, direct) and "inverse-direction sum: " + _first_diff(lhs, direct),
            _first_diff(product, target) and "product identity: " + _first_diff(product, target),
        ) if msg
    )
    return CheckResult(ok_direct and ok_product, detail, {"series": lhs, "product": product})

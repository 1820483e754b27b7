"""Sparse trivariate Laurent series over the rationals.

A :class:`Series` holds finitely many terms ``c * x^i y^j z^k`` inside a
:class:`Window`.  Everything outside the window has been truncated away, so a
series is a finite picture of a formal object.  Truncation is from above in
every variable: the x-adic convention is that nothing lives below ``x_min``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Exponent = tuple[int, int, int]


class WindowError(ValueError):
    """Raised when operands live in different windows or a query leaves the window."""


class NotInvertibleError(ValueError):
    pass


class NilpotencyError(ValueError):
    """Raised when exp/log cannot be certified to terminate inside the window."""


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(value)


def format_rational(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Window:
    x_min: int
    x_max: int
    y_max: int
    z_min: int = 0
    z_max: int = 0

    def __post_init__(self):
        if self.x_min > self.x_max:
            raise WindowError(f"x_min={self.x_min} > x_max={self.x_max}")
        if self.z_min > self.z_max:
            raise WindowError(f"z_min={self.z_min} > z_max={self.z_max}")
        if self.y_max < 0:
            raise WindowError("y_max must be non-negative")

    def contains(self, e: Exponent) -> bool:
        x, y, z = e
        return (
            self.x_min <= x <= self.x_max
            and 0 <= y <= self.y_max
            and self.z_min <= z <= self.z_max
        )

    def to_dict(self) -> dict[str, int]:
        return {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "y_max": self.y_max,
            "z_min": self.z_min,
            "z_max": self.z_max,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, int]) -> "Window":
        return cls(
            x_min=int(d["x_min"]),
            x_max=int(d["x_max"]),
            y_max=int(d["y_max"]),
            z_min=int(d.get("z_min", 0)),
            z_max=int(d["z_max"]),
        )


def _canonical_key(e: Exponent):
    x, y, z = e
    return (z, y, x)


class Series:
    """Immutable windowed Laurent series in x, y, z with rational coefficients."""

    __slots__ = ("window", "_terms", "_hash")

    def __init__(self, window: Window, terms: Mapping[Exponent, object] | Iterable = ()):
        self.window = window
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = (int(e[0]), int(e[1]), int(e[2]))
            if e[1] < 0:
                raise WindowError(f"negative y exponent in {e}")
            if not window.contains(e):
                continue
            c = to_rational(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, window: Window, terms: dict[Exponent, Fraction]) -> "Series":
        # trusted constructor: terms already in window, nonzero
        obj = cls.__new__(cls)
        obj.window = window
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, window: Window) -> "Series":
        return cls._raw(window, {})

    @classmethod
    def one(cls, window: Window) -> "Series":
        return cls.monomial(window, (0, 0, 0), 1)

    @classmethod
    def monomial(cls, window: Window, e: Exponent, c=1) -> "Series":
        return cls(window, {e: c})

    @classmethod
    def x_poly(cls, window: Window, coeffs: Mapping[int, object]) -> "Series":
        return cls(window, {(i, 0, 0): c for i, c in coeffs.items()})

    # -- basic access -----------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e: Exponent) -> Fraction:
        """Exact coefficient of ``x^e[0] y^e[1] z^e[2]``.

        Raises :class:`WindowError` for exponents outside the window, since
        those coefficients were truncated away and are not known to be zero.
        """
        e = tuple(int(v) for v in e)
        if not self.window.contains(e):
            raise WindowError(f"exponent {e} lies outside window {self.window}")
        return self._terms.get(e, Fraction(0))

    def support(self) -> list[Exponent]:
        return sorted(self._terms, key=_canonical_key)

    def x_valuation(self) -> int | None:
        if not self._terms:
            return None
        return min(e[0] for e in self._terms)

    def z_slices(self) -> dict[int, dict[tuple[int, int], Fraction]]:
        out: dict[int, dict[tuple[int, int], Fraction]] = {}
        for (x, y, z), c in self._terms.items():
            out.setdefault(z, {})[(x, y)] = c
        return out

    def slice(self, y: int, z: int) -> dict[int, Fraction]:
        """The x-polynomial multiplying ``y^y z^z``."""
        return {e[0]: c for e, c in self._terms.items() if e[1] == y and e[2] == z}

    def x_slice(self, x: int) -> dict[tuple[int, int], Fraction]:
        return {(e[1], e[2]): c for e, c in self._terms.items() if e[0] == x}

    def restrict(self, window: Window) -> "Series":
        return Series(window, self._terms)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.window == other.window and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.window, frozenset(self._terms.items())))
        return self._hash

    def diff(self, other: "Series") -> list[tuple[Exponent, Fraction, Fraction]]:
        """Exponents where the two series disagree, in canonical order."""
        keys = set(self._terms) | set(other._terms)
        out = []
        for e in sorted(keys, key=_canonical_key):
            a = self._terms.get(e, Fraction(0))
            b = other._terms.get(e, Fraction(0))
            if a != b:
                out.append((e, a, b))
        return out

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Series") -> None:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.window != other.window:
            raise WindowError(f"window mismatch: {self.window} vs {other.window}")

    def __add__(self, other):
        if not isinstance(other, Series):
            return self + Series.one(self.window).scale(other)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Series._raw(self.window, out)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.window, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        c = to_rational(c)
        if not c:
            return Series.zero(self.window)
        return Series._raw(self.window, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._check(other)
        w = self.window
        out: dict[Exponent, Fraction] = {}
        for (ax, ay, az), ac in self._terms.items():
            for (bx, by, bz), bc in other._terms.items():
                e = (ax + bx, ay + by, az + bz)
                if e[0] > w.x_max or e[1] > w.y_max or e[2] > w.z_max:
                    continue
                if e[0] < w.x_min or e[2] < w.z_min:
                    continue
                out[e] = out.get(e, 0) + ac * bc
        return Series._raw(w, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        return int_pow(self, e)

    def shift(self, e: Exponent) -> "Series":
        """Multiply by the monomial ``x^e[0] y^e[1] z^e[2]``."""
        dx, dy, dz = e
        return Series(self.window, {(x + dx, y + dy, z + dz): c for (x, y, z), c in self._terms.items()})

    def __repr__(self) -> str:
        return f"Series({self.window}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def _inverse(a: Series) -> Series:
    if a.is_zero():
        raise NotInvertibleError("zero series has no inverse")
    w = a.window
    v = a.x_valuation()
    leads = [(e, c) for e, c in a.items() if e[0] == v]
    if len(leads) != 1:
        raise NotInvertibleError(
            f"leading x^{v} part has {len(leads)} terms; need a single monomial"
        )
    (lx, ly, lz), lc = leads[0]
    if ly or lz:
        raise NotInvertibleError(
            f"leading monomial x^{lx} y^{ly} z^{lz} must be a pure power of x"
        )
    inv_lead = {(-lx, 0, 0): 1 / lc}
    # u = a / lead - 1 has strictly positive x-degree
    u_terms = {(x - lx, y, z): c / lc for (x, y, z), c in a.items() if x != lx}
    big = Window(min(w.x_min, 0), w.x_max + abs(lx), w.y_max, w.z_min, w.z_max)
    u = Series(big, u_terms)
    # 1/(1+u) = sum (-u)^j, terminates since x-degree grows
    total = Series.one(big)
    power = Series.one(big)
    neg_u = -u
    while True:
        power = power * neg_u
        if power.is_zero():
            break
        total = total + power
    return Series(w, (total * Series(big, inv_lead)).terms)


def int_pow(a: Series, e: int) -> Series:
    """``a**e``; negative ``e`` needs a single-monomial x-leading term."""
    e = int(e)
    if e < 0:
        return int_pow(_inverse(a), -e)
    result = Series.one(a.window)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def _certify_nilpotent(a: Series) -> None:
    # Some non-negative grading must give every term positive weight; the
    # weight is bounded above on the window, so powers eventually vanish.
    gradings = [(0, 1, 1), (1, 0, 0), (1, 1, 1), (0, 0, 1), (0, 1, 0)]
    if a.window.z_min < 0:
        gradings = [g for g in gradings if g[2] == 0] + [(1, 1, 0)]
    for g in gradings:
        if all(g[0] * x + g[1] * y + g[2] * z >= 1 for (x, y, z), _ in a.items()):
            return
    for (x, y, z), c in sorted(a.items(), key=lambda t: _canonical_key(t[0])):
        if y + max(z, 0) <= 0 and x <= 0:
            raise NilpotencyError(f"term {c} x^{x} y^{y} z^{z} is not nilpotent in the window")
    bad = min(a.items(), key=lambda t: t[0][1] + t[0][2])
    raise NilpotencyError(f"no grading certifies nilpotency; offending term {bad[1]} at {bad[0]}")


def exp_trunc(a: Series) -> Series:
    if a.window.contains((0, 0, 0)) and a.coefficient((0, 0, 0)):
        raise NilpotencyError(f"exp needs zero constant term, got {a.coefficient((0, 0, 0))}")
    _certify_nilpotent(a)
    total = Series.one(a.window)
    power = Series.one(a.window)
    m = 0
    while True:
        m += 1
        power = (power * a).scale(Fraction(1, m))
        if power.is_zero():
            return total
        total = total + power


def log_trunc(a: Series) -> Series:
    u = a - Series.one(a.window)
    if u.window.contains((0, 0, 0)) and u.coefficient((0, 0, 0)):
        raise NilpotencyError("log needs constant term 1")
    _certify_nilpotent(u)
    total = Series.zero(a.window)
    power = Series.one(a.window)
    m = 0
    while True:
        m += 1
        power = power * u
        if power.is_zero():
            return total
        total = total + power.scale(Fraction((-1) ** (m - 1), m))


def substitute_z(a: Series, g: Callable[[int], Series]) -> Series:
    """Replace each ``z^n`` by ``z^n * g(n)`` where ``g(n)`` is a series in x.

    ``g(n)`` may live in any window but must involve only x; the result is
    re-truncated to the window of ``a``.
    """
    w = a.window
    out: dict[Exponent, Fraction] = {}
    for n, slab in a.z_slices().items():
        factor = g(n)
        fx = {}
        for (x, y, z), c in factor.items():
            if y or z:
                raise ValueError(f"substitution factor for z^{n} involves y or z")
            fx[x] = c
        for (x, y), c in slab.items():
            for dx, fc in fx.items():
                ex = x + dx
                if w.x_min <= ex <= w.x_max:
                    e = (ex, y, n)
                    out[e] = out.get(e, 0) + c * fc
    return Series._raw(w, {e: c for e, c in out.items() if c})


def coefficient(a: Series, e: Exponent) -> Fraction:
    return a.coefficient(e)


# -- interchange --------------------------------------------------------------


def encode(a: Series) -> dict:
    return {
        "window": a.window.to_dict(),
        "terms": [
            {"x": x, "y": y, "z": z, "c": format_rational(a._terms[(x, y, z)])}
            for (x, y, z) in a.support()
        ],
    }


def decode(doc: Mapping) -> Series:
    window = Window.from_dict(doc["window"])
    terms: dict[Exponent, Fraction] = {}
    for t in doc["terms"]:
        e = (int(t["x"]), int(t["y"]), int(t["z"]))
        if not window.contains(e):
            raise WindowError(f"term {e} outside declared window")
        terms[e] = terms.get(e, Fraction(0)) + Fraction(str(t["c"]))
    return Series(window, terms)


def dumps(a: Series) -> str:
    return json.dumps(encode(a), indent=None, separators=(",", ":"))


def loads(text: str) -> Series:
    return decode(json.loads(text))


def _mono(x: int, y: int, z: int) -> str:
    parts = []
    for name, p in (("x", x), ("y", y), ("z", z)):
        if p == 1:
            parts.append(name)
        elif p:
            parts.append(f"{name}^{p}" if p > 0 else f"{name}^({p})")
    return "*".join(parts)


def render(a: Series) -> str:
    """Human readable polynomial, canonical (z, y, x) ascending order."""
    if a.is_zero():
        return "0"
    chunks = []
    for e in a.support():
        c = a._terms[e]
        mono = _mono(*e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def binomial_poly(window: Window, a: int, n: int) -> Series:
    """``(1 + a*x)**n`` for ``n >= 0`` by the binomial theorem."""
    return Series.x_poly(window, {j: math.comb(n, j) * a**j for j in range(n + 1)})

"""Worked families: D0-D6 states and the local (-1,-1)-curve.

Seeds and closed-form chamber series, the two product identities they
satisfy, and a classifier for semistable objects of a given class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .lattice import ChargeIndex
from .liewall import CheckResult, WindowTooNarrowError, cross_wall_closed
from .series import Series, Window, int_pow, log_trunc


class Family(str, Enum):
    D0D6 = "d0d6"
    CONIFOLD = "conifold"


class Sector(str, Enum):
    PHI_EQ_1 = "phi-eq-1"
    LOWER = "lower"  # 0 < phi < 1/2
    UPPER = "upper"  # 1/2 <= phi < 1


@dataclass(frozen=True)
class ChamberSeriesSpec:
    family: Family
    k: int
    sector: Sector = Sector.PHI_EQ_1
    a: int | None = None
    chi: int | None = None

    def __post_init__(self):
        family = Family(self.family)
        sector = Sector(self.sector)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "sector", sector)
        if family is Family.D0D6:
            if self.chi is None:
                raise ValueError("d0d6 series need chi")
            if sector is not Sector.PHI_EQ_1:
                raise ValueError("d0d6 series live at phi = 1")
        else:
            if self.a is None:
                raise ValueError("conifold series need the wall parameter a")
            if sector is Sector.PHI_EQ_1:
                raise ValueError("conifold series need a lower or upper phase sector")


def divisor_weight(n: int) -> Fraction:
    """``sum_{m | n} 1/m^2``."""
    return sum((Fraction(1, m * m) for m in range(1, n + 1) if n % m == 0), Fraction(0))


def _binomial_factor(n: int) -> dict[int, int]:
    # (1 - (-1)^n x)^n for n >= 0
    s = -((-1) ** (n % 2))
    return {j: math.comb(n, j) * s**j for j in range(n + 1)}


def d0d6_seed(chi: int, w: Window) -> Series:
    """Chamber -1 at phi = 1: ``-chi * sum_n (sum_{m|n} 1/m^2) z^n``."""
    if w.z_max < 1:
        raise ValueError("window must reach z^1")
    return Series(w, {(0, 0, n): -chi * divisor_weight(n) for n in range(1, w.z_max + 1)})


def _require_x(w: Window, low: int, what: str) -> None:
    if low < w.x_min:
        raise WindowTooNarrowError(f"{what} reaches x^{low}; window needs x_min <= {low}", low)


def _chamber_split(k: int, plain_odd: bool) -> tuple[bool, int]:
    """(is the chamber plain?, exponent multiplier j with x^(j*n))."""
    if plain_odd:
        # plain at 2j-1, factored at 2j
        return (k % 2 == 1, (k + 1) // 2 if k % 2 else k // 2)
    # plain at 2j, factored at 2j+1
    return (k % 2 == 0, k // 2)


def _family_terms(k: int, plain_odd: bool, support, w: Window, what: str) -> Series:
    """Assemble ``sum c_n x^{j n} [(1-(-1)^n x)^n] y^b z^n`` over (b, n, c_n) in support."""
    plain, j = _chamber_split(k, plain_odd)
    terms: dict[tuple[int, int, int], Fraction] = {}
    for b, n, c in support:
        base = j * n
        _require_x(w, base, what)
        poly = {0: 1} if plain else _binomial_factor(n)
        for dx, pc in poly.items():
            e = (base + dx, b, n)
            terms[e] = terms.get(e, 0) + c * pc
    return Series(w, terms)


def d0d6_closed(spec: ChamberSeriesSpec, w: Window) -> Series:
    if spec.family is not Family.D0D6:
        raise ValueError("not a d0d6 spec")
    support = [(0, n, -spec.chi * divisor_weight(n)) for n in range(1, w.z_max + 1)]
    return _family_terms(spec.k, True, support, w, f"d0d6 chamber {spec.k}")


def _conifold_support(a: int, w: Window):
    if a == 0:
        return []
    out = []
    for m in range(1, w.y_max + 1):
        n = m * a
        if w.z_min <= n <= w.z_max:
            out.append((m, n, Fraction(1, m * m)))
    return out


def conifold_seed(spec: ChamberSeriesSpec, w: Window) -> Series:
    """The plain series ``sum_m x^0 y^m z^(ma) / m^2`` in its seed chamber.

    The seed chamber is -1 for the lower sector and 0 for the upper one.
    """
    seed_k = -1 if spec.sector is Sector.LOWER else 0
    return conifold_closed(ChamberSeriesSpec(Family.CONIFOLD, seed_k, spec.sector, a=spec.a), w)


def conifold_seed_chamber(sector: Sector | str) -> int:
    return -1 if Sector(sector) is Sector.LOWER else 0


def conifold_closed(spec: ChamberSeriesSpec, w: Window) -> Series:
    """Closed-form chamber series for the (-1,-1)-curve.

    Lower sector: plain in chambers 2j-1, factored in 2j.  Upper sector:
    plain in chambers 2j, factored in 2j+1.  Terms sit at z^(m a), y^m.
    """
    if spec.family is not Family.CONIFOLD:
        raise ValueError("not a conifold spec")
    if spec.a is None:
        raise ValueError("no wall at this phase")
    plain_odd = spec.sector is Sector.LOWER
    return _family_terms(spec.k, plain_odd, _conifold_support(spec.a, w), w, f"conifold chamber {spec.k}")


def closed_series(spec: ChamberSeriesSpec, w: Window) -> Series:
    if spec.family is Family.D0D6:
        return d0d6_closed(spec, w)
    return conifold_closed(spec, w)


def seed_series(spec: ChamberSeriesSpec, w: Window) -> tuple[int, Series]:
    """(seed chamber, seed series) for the family of ``spec``."""
    if spec.family is Family.D0D6:
        return -1, d0d6_seed(spec.chi, w)
    return conifold_seed_chamber(spec.sector), conifold_seed(spec, w)


def iterate_walls(s: Series, start: int, target: int, cross=cross_wall_closed) -> Series:
    """Carry a chamber-``start`` series to chamber ``target`` one wall at a time.

    Undoing an odd wall divides by ``x^n``, which pulls the truncation edge
    down into the window; the work is done with enough headroom above
    ``x_max`` that the returned coefficients are exact.
    """
    w = s.window
    downward_odd = sum(1 for j in range(target + 1, start + 1) if j % 2)
    pad = downward_odd * max(abs(w.z_min), abs(w.z_max))
    work = Window(w.x_min, w.x_max + pad, w.y_max, w.z_min, w.z_max)
    s = Series(work, s.terms)
    k = start
    while k < target:
        k += 1
        s = cross(s, k)
    while k > target:
        s = cross(s, k, inverse=True)
        k -= 1
    return Series(w, s.terms)


# -- identities ----------------------------------------------------------------


def log_macmahon_neg(order: int, chi: int = 1) -> dict[int, Fraction]:
    """Coefficients of ``chi * log M(-z)`` via ``sum_{n,j} n (-z)^(n j) / j``."""
    out: dict[int, Fraction] = {}
    for n in range(1, order + 1):
        for j in range(1, order // n + 1):
            e = n * j
            out[e] = out.get(e, Fraction(0)) + Fraction(n * (-1) ** (e % 2), j)
    return {e: chi * c for e, c in out.items() if c}


def verify_macmahon(chi: int, order: int) -> CheckResult:
    if order < 1:
        raise ValueError("order must be >= 1")
    w = Window(0, 1, 0, 0, order)
    dt0 = d0d6_closed(ChamberSeriesSpec(Family.D0D6, 0, chi=chi), w)
    lhs = {e[2]: c for e, c in dt0.items() if e[0] == 1}
    rhs = log_macmahon_neg(order, chi)
    for n in range(1, order + 1):
        left, right = lhs.get(n, Fraction(0)), rhs.get(n, Fraction(0))
        if left != right:
            return CheckResult(False, f"z^{n}: rank-one slice {left} != chi*log M(-z) {right}")
    return CheckResult(True, "", {"coefficients": lhs})


def stable_pairs_log(order_y: int, order_z: int) -> Series:
    """``log prod_{m>=1} (1 - (-1)^m y z^m)^m`` by multiplying out and taking log."""
    w = Window(0, 0, order_y, 0, order_z)
    prod = Series.one(w)
    for m in range(1, order_z + 1):
        factor = Series(w, {(0, 0, 0): 1, (0, 1, m): -((-1) ** (m % 2))})
        prod = prod * int_pow(factor, m)
    return log_trunc(prod)


def rank_one_conifold_sum(order_y: int, order_z: int, sector: Sector | str = Sector.LOWER) -> Series:
    """Sum over walls a >= 1 of the x^1 slice of the chamber-0 conifold series."""
    w = Window(0, 1, order_y, 0, order_z)
    out = Series.zero(Window(0, 0, order_y, 0, order_z))
    for a in range(1, order_z + 1):
        s = conifold_closed(ChamberSeriesSpec(Family.CONIFOLD, 0, sector, a=a), w)
        out = out + Series(out.window, {(0, e[1], e[2]): c for e, c in s.items() if e[0] == 1})
    return out


def verify_stable_pairs(order_y: int, order_z: int) -> CheckResult:
    if order_y < 1 or order_z < 1:
        raise ValueError("orders must be >= 1")
    lhs = rank_one_conifold_sum(order_y, order_z)
    rhs = stable_pairs_log(order_y, order_z)
    d = lhs.diff(rhs)
    if d:
        e, left, right = d[0]
        return CheckResult(False, f"y^{e[1]} z^{e[2]}: conifold sum {left} != log product {right}")
    return CheckResult(True, "", {"series": lhs})


# -- classification ------------------------------------------------------------


class ObjectKind(str, Enum):
    ZERO_DIM_SHIFT = "zero-dim-sheaf-shift"
    STRUCTURE_SHEAF_POWER = "structure-sheaf-power"
    TWO_TERM_COMPLEX = "two-term-complex"
    SHEAF_EXTENSION = "sheaf-extension"


class Relation(str, Enum):
    T_BELOW_PHI = "t-below-phi"
    T_ABOVE_PHI = "t-above-phi"
    PHI1_BELOW = "phi-eq-1-below"
    PHI1_ABOVE = "phi-eq-1-above"


def h0_p1(d: int) -> int:
    return max(d + 1, 0)


def h1_p1(d: int) -> int:
    return max(-d - 1, 0)


@dataclass(frozen=True)
class ObjectDescription:
    kind: ObjectKind
    r: int = 0
    m: int = 0
    a: int | None = None
    length: int | None = None
    constraint: dict = field(default_factory=dict, compare=False, hash=False)

    def describe(self) -> str:
        if self.kind is ObjectKind.ZERO_DIM_SHIFT:
            return f"length-{self.length} zero-dimensional sheaf, shifted by [-1]"
        if self.kind is ObjectKind.STRUCTURE_SHEAF_POWER:
            return f"O_X^{self.r} shifted"
        if self.constraint.get("pure"):
            shift = "[-1]" if self.kind is ObjectKind.TWO_TERM_COMPLEX else ""
            return f"O_C({self.a - 1})^{self.m}{shift}"
        if self.kind is ObjectKind.TWO_TERM_COMPLEX:
            target = f"O_C({self.a - 1})^{self.m}" if self.a is not None else f"F (length {self.length})"
            bound = self.constraint.get("bound")
            return (
                f"two-term complex O_X^{self.r} -> {target}, H^0(s) injective "
                f"(r={self.r} <= {bound})"
            )
        return (
            f"sheaf extension 0 -> O_C({self.a - 1})^{self.m} -> E -> O_X^{self.r} -> 0, "
            f"C^{self.r} -> H^1 injective (r={self.r} <= {self.constraint.get('bound')})"
        )


def classify_semistable(
    relation: Relation | str,
    sector: Sector | str | None,
    cls: ChargeIndex,
    a: int | None = None,
) -> list[ObjectDescription]:
    """Semistable objects of index class ``cls`` on one side of a wall.

    ``sector`` is accepted for bookkeeping; the shape of the objects is
    fixed by the sign of ``a`` (a >= 1: complexes into O_C(a-1), a <= 0:
    extensions by O_C(a-1)).  An empty list means no semistable object.
    """
    relation = Relation(relation)
    r, beta, n = cls.r, cls.beta, cls.n

    if relation is Relation.PHI1_BELOW:
        if r == 0 and beta == 0 and n >= 1:
            return [ObjectDescription(ObjectKind.ZERO_DIM_SHIFT, length=n)]
        return []

    if relation is Relation.PHI1_ABOVE:
        if beta != 0 or n < 1 or r < 0:
            return []
        if r == 0:
            return [ObjectDescription(ObjectKind.ZERO_DIM_SHIFT, length=n)]
        if r > n:
            return []
        return [
            ObjectDescription(
                ObjectKind.TWO_TERM_COMPLEX, r=r, length=n,
                constraint={"injective": "H^0(s): C^r -> H^0(F)", "bound": n},
            )
        ]

    if a is None:
        raise ValueError("conifold classification needs the wall parameter a")
    m = beta
    if m < 1 or n != m * a:
        return []
    d = a - 1
    if relation is Relation.T_BELOW_PHI:
        if r != 0:
            return []
        # the r = 0 degenerations: O_C(a-1)^m[-1] or O_C(a-1)^m itself
        kind = ObjectKind.TWO_TERM_COMPLEX if a >= 1 else ObjectKind.SHEAF_EXTENSION
        return [ObjectDescription(kind, r=0, m=m, a=a, constraint={"bound": 0, "pure": True})]

    # t above phi
    if a >= 1:
        bound = m * h0_p1(d)
        if not 0 <= r <= bound:
            return []
        return [
            ObjectDescription(
                ObjectKind.TWO_TERM_COMPLEX, r=r, m=m, a=a,
                constraint={"injective": "H^0(s): C^r -> H^0(O_C(a-1))^m", "bound": bound, "h0": h0_p1(d)},
            )
        ]
    # a <= 0: extensions 0 -> O_C(a-1)^m -> E -> O_X^r -> 0, seen with flipped rank
    bound = m * h1_p1(d)
    rank = -r
    if not 0 <= rank <= bound:
        return []
    return [
        ObjectDescription(
            ObjectKind.SHEAF_EXTENSION, r=rank, m=m, a=a,
            constraint={"injective": "C^r -> H^1(O_C(a-1))^m", "bound": bound, "h1": h1_p1(d)},
        )
    ]

"""Central charges along the loop around the conifold point, and chamber bookkeeping.

Chamber indices are exact integers and the loop parameter ``t`` is an exact
rational.  Floats only appear in the charge values and in the covering
projection ``t -> exp(i pi t)``; no float decides which chamber we are in.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .lattice import ChargeIndex


@dataclass(frozen=True)
class ChargeParams:
    z0: complex
    B: float = 0.0
    omega: float = 1.0
    # overall factor on the H_2 + H_0 part, picked up under the C-action
    rotation: complex = 1 + 0j

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "rotation", complex(self.rotation))

    def to_dict(self) -> dict:
        return {
            "z0": [self.z0.real, self.z0.imag],
            "B": self.B,
            "omega": self.omega,
            "rotation": [self.rotation.real, self.rotation.imag],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChargeParams":
        rot = d.get("rotation", [1.0, 0.0])
        return cls(complex(*d["z0"]), float(d.get("B", 0.0)), float(d.get("omega", 1.0)), complex(*rot))


@dataclass(frozen=True)
class ChamberPoint:
    k: int
    t: Fraction

    def __post_init__(self):
        t = Fraction(self.t)
        object.__setattr__(self, "t", t)
        if not self.k < t <= self.k + 1:
            raise ValueError(f"t={t} is not in ({self.k}, {self.k + 1}]")

    def __str__(self) -> str:
        return f"U_{self.k} @ t={self.t.numerator}/{self.t.denominator}"

    def projection(self) -> complex:
        return cmath.exp(1j * math.pi * float(self.t))


@dataclass(frozen=True)
class PhaseDirection:
    """The ray through ``p + q i``; ``tan(pi phi) = q / p``."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError("zero direction")
        if self.q < 0:
            raise ValueError("q must be non-negative")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"direction ({self.p}, {self.q}) is not primitive")

    @classmethod
    def through(cls, p: int, q: int) -> "PhaseDirection":
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    def phase(self) -> float:
        return math.atan2(self.q, self.p) / math.pi


def eval_charge(u: ChargeParams, v: ChargeIndex) -> complex:
    """Central charge of the class ``(r, -beta, -n)`` counted by index ``v``."""
    if v.beta == 0 and v.n == 0:
        return v.r * u.z0
    # class (-beta, -n) in H_2 + H_0: n' - (B + i omega) beta' with n' = -n, beta' = -beta
    return u.rotation * (-v.n + complex(u.B, u.omega) * v.beta)


def chamber_of(t) -> int:
    """The integer k with ``t`` in ``(k, k+1]``."""
    t = Fraction(t)
    return math.ceil(t) - 1


def gamma_point(t) -> tuple[ChamberPoint, ChargeParams]:
    t = Fraction(t)
    cp = ChamberPoint(chamber_of(t), t)
    return cp, ChargeParams(cp.projection(), 0.0, 1.0)


def wall_parameters(phi: PhaseDirection) -> list[int]:
    """Integers ``a`` with ``-a + i`` on the ray of ``phi`` (at most one)."""
    if phi.q == 0:
        raise ValueError("real phase: walls degenerate")
    # (-a, 1) = lam * (p, q), lam > 0  =>  lam = 1/q, a = -p/q
    if phi.p % phi.q:
        return []
    return [-phi.p // phi.q]


def c_action(lam: complex, u: ChargeParams, shift=Fraction(0)):
    """Act by ``lam`` in C: charges times ``exp(-i pi lam)``, slicing shifted by ``Re lam``.

    Returns the new parameters and the accumulated phase shift.
    """
    lam = complex(lam)
    factor = cmath.exp(-1j * math.pi * lam)
    re = Fraction(lam.real).limit_denominator(10**9)
    params = ChargeParams(u.z0 * factor, u.B, u.omega, u.rotation * factor)
    return params, Fraction(shift) + re


def deck_transform(cp: ChamberPoint, steps: int) -> ChamberPoint:
    """The twist by O_X moves a chamber point two chambers along the loop."""
    return ChamberPoint(cp.k + 2 * steps, cp.t + 2 * steps)

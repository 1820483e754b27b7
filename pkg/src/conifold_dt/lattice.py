"""Charge lattice H^0 + H_2 + H_0 with H^2 = Z, so every class is an integer triple.

Two conventions coexist and are easy to mix up:

* a *lattice class* ``cl = (r, beta, n)`` is the Chern data of an object;
* an *index triple* ``(r, beta, n)`` labels the invariant counting objects of
  class ``(r, -beta, -n)``.  Series exponents are index triples.

:func:`to_class` / :func:`to_index` convert between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True, order=True)
class ChargeIndex:
    r: int
    beta: int
    n: int

    def __add__(self, other: "ChargeIndex") -> "ChargeIndex":
        return ChargeIndex(self.r + other.r, self.beta + other.beta, self.n + other.n)

    def __neg__(self) -> "ChargeIndex":
        return ChargeIndex(-self.r, -self.beta, -self.n)

    def __sub__(self, other: "ChargeIndex") -> "ChargeIndex":
        return self + (-other)

    def scale(self, k: int) -> "ChargeIndex":
        return ChargeIndex(k * self.r, k * self.beta, k * self.n)

    def astuple(self) -> tuple[int, int, int]:
        return (self.r, self.beta, self.n)

    def to_dict(self) -> dict[str, int]:
        return {"r": self.r, "beta": self.beta, "n": self.n}

    @classmethod
    def from_dict(cls, d: Mapping[str, int]) -> "ChargeIndex":
        return cls(int(d["r"]), int(d["beta"]), int(d["n"]))

    def __str__(self) -> str:
        return f"({self.r},{self.beta},{self.n})"


def filtration_level(v: ChargeIndex) -> int:
    """0 for classes in H^0 (pure rank), 1 otherwise."""
    return 0 if v.beta == 0 and v.n == 0 else 1


def to_class(v: ChargeIndex) -> ChargeIndex:
    return ChargeIndex(v.r, -v.beta, -v.n)


def to_index(cl: ChargeIndex) -> ChargeIndex:
    return ChargeIndex(cl.r, -cl.beta, -cl.n)


def euler_pairing(v: ChargeIndex, w: ChargeIndex) -> int:
    return v.r * w.n - w.r * v.n


def seidel_thomas(v: ChargeIndex, steps: int = 1) -> ChargeIndex:
    """Action of the twist by O_X on a lattice class: ``(r, b, n) -> (r - n, b, n)``."""
    return ChargeIndex(v.r - steps * v.n, v.beta, v.n)


def seidel_thomas_index(v: ChargeIndex, steps: int = 1) -> ChargeIndex:
    """The same twist seen on index triples, ``(r, b, n) -> (r + n, b, n)``.

    On generating series this is the substitution ``z -> x z``.
    """
    return to_index(seidel_thomas(to_class(v), steps))


def _phase_split(phi) -> tuple[int, Fraction]:
    phi = Fraction(phi)
    m = math.ceil(phi) - 1
    return m, phi - m


def normalize_phase_index(v: ChargeIndex, phi) -> tuple[ChargeIndex, Fraction]:
    """Write ``phi = m + phi0`` with ``0 < phi0 <= 1`` and flip ``v`` by ``(-1)^m``."""
    m, phi0 = _phase_split(phi)
    return (v if m % 2 == 0 else -v), phi0

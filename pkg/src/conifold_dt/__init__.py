"""Exact DT-type generating series of D0-D2-D6 states around the conifold point."""

from .lattice import ChargeIndex, euler_pairing, normalize_phase_index, seidel_thomas
from .liewall import (
    LieVector,
    WallSpec,
    bracket,
    conjugate_dt,
    cross_wall_closed,
    cross_wall_euler,
    cross_wall_expand,
    lemma_ass_check,
    make_ek,
)
from .series import Series, Window, decode, encode, exp_trunc, int_pow, log_trunc, substitute_z

__all__ = [
    "ChargeIndex",
    "LieVector",
    "Series",
    "WallSpec",
    "Window",
    "bracket",
    "conjugate_dt",
    "cross_wall_closed",
    "cross_wall_euler",
    "cross_wall_expand",
    "decode",
    "encode",
    "euler_pairing",
    "exp_trunc",
    "int_pow",
    "lemma_ass_check",
    "log_trunc",
    "make_ek",
    "normalize_phase_index",
    "seidel_thomas",
    "substitute_z",
]

"""Numerical K-theory classes on split del Pezzo models.

A class is stored as ``(rank, c1, c2)``.  All pairings go through the doubled
second Chern character ``2 ch2 = c1^2 - 2 c2`` so that every intermediate value
is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .piclat import DivisorClass, LatticeError, SurfaceModel, canonical_class, intersect


class NonIntegralChernData(LatticeError):
    pass


@dataclass(frozen=True)
class KClass:
    rank: int
    c1: DivisorClass
    c2: int

    def to_dict(self) -> dict:
        return {"rank": self.rank, "c1": self.c1.to_list(), "c2": self.c2}

    @classmethod
    def from_dict(cls, d: dict) -> "KClass":
        return cls(int(d["rank"]), DivisorClass(tuple(d["c1"])), int(d["c2"]))


def ch2x2(S: SurfaceModel, E: KClass) -> int:
    return intersect(S, E.c1, E.c1) - 2 * E.c2


def from_chern_character(S: SurfaceModel, rank: int, c1: DivisorClass, twice_ch2: int) -> KClass:
    twice_c2 = intersect(S, c1, c1) - twice_ch2
    if twice_c2 % 2:
        raise NonIntegralChernData(f"c2 = {twice_c2}/2 is not an integer")
    return KClass(rank, c1, twice_c2 // 2)


def euler_pairing(S: SurfaceModel, E: KClass, F: KClass) -> int:
    K = canonical_class(S)
    twice = (
        2 * E.rank * F.rank
        + E.rank * ch2x2(S, F)
        + F.rank * ch2x2(S, E)
        - 2 * intersect(S, E.c1, F.c1)
        - intersect(S, K, F.c1 * E.rank - E.c1 * F.rank)
    )
    if twice % 2:
        raise AssertionError(f"half-integral Euler pairing {twice}/2")
    return twice // 2


def chi(S: SurfaceModel, E: KClass) -> int:
    """chi(O, E)."""
    return euler_pairing(S, line_bundle(S.zero()), E)


def line_bundle(D: DivisorClass) -> KClass:
    return KClass(1, D, 0)


def structure_sheaf_of_curve(S: SurfaceModel, C: DivisorClass) -> KClass:
    """[O_C] = [O] - [O(-C)]."""
    return add(S, line_bundle(S.zero()), scale(S, line_bundle(-C), -1))


def zero_class(S: SurfaceModel) -> KClass:
    return KClass(0, S.zero(), 0)


def add(S: SurfaceModel, E: KClass, F: KClass) -> KClass:
    return KClass(E.rank + F.rank, E.c1 + F.c1, E.c2 + F.c2 + intersect(S, E.c1, F.c1))


direct_sum = add


def scale(S: SurfaceModel, E: KClass, n: int) -> KClass:
    """``n`` times the class, for any integer ``n`` (virtual when n < 0)."""
    return from_chern_character(S, n * E.rank, E.c1 * n, n * ch2x2(S, E))


def negate(S: SurfaceModel, E: KClass) -> KClass:
    return scale(S, E, -1)


def subtract(S: SurfaceModel, E: KClass, F: KClass) -> KClass:
    return add(S, E, negate(S, F))


def multiple(S: SurfaceModel, E: KClass, m: int) -> KClass:
    if m < 1:
        raise LatticeError(f"multiplicity must be >= 1, got {m}")
    return KClass(m * E.rank, E.c1 * m, m * E.c2 + comb(m, 2) * intersect(S, E.c1, E.c1))


def twist(S: SurfaceModel, E: KClass, D: DivisorClass) -> KClass:
    r = E.rank
    # r(r-1)/2 is C(r, 2) extended polynomially to virtual ranks
    c2 = E.c2 + (r - 1) * intersect(S, E.c1, D) + r * (r - 1) // 2 * intersect(S, D, D)
    return KClass(r, E.c1 + D * r, c2)


def dual(E: KClass) -> KClass:
    return KClass(E.rank, -E.c1, E.c2)


def derived_c2(S: SurfaceModel, rank: int, c1: DivisorClass) -> int:
    """The c2 forced by chi(E, E) = 1, i.e. 2 ch2 = (1 + c1^2 - r^2) / r."""
    if rank <= 0:
        raise NonIntegralChernData(f"rank must be positive, got {rank}")
    num = 1 + intersect(S, c1, c1) - rank * rank
    if num % rank:
        raise NonIntegralChernData(f"2 ch2 = {num}/{rank} is not an integer for rank {rank}, c1^2 = {intersect(S, c1, c1)}")
    return from_chern_character(S, rank, c1, num // rank).c2


def exceptional_bundle(S: SurfaceModel, rank: int, c1: DivisorClass) -> KClass:
    return KClass(rank, c1, derived_c2(S, rank, c1))


def coordinates(S: SurfaceModel, E: KClass) -> list[int]:
    """Integral coordinates ``(rank, c1, chi(O, E))`` of the numerical K-group."""
    return [E.rank, *E.c1.coords, chi(S, E)]


def same_up_to_sign(S: SurfaceModel, E: KClass, F: KClass) -> bool:
    return E == F or E == negate(S, F)

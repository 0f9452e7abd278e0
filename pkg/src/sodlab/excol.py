"""Exceptional collections, blocks and mutations on numerical K-classes.

Mutations carry no shift bookkeeping: the cone of ``Hom(E, F) (x) E -> F``
has class ``[F] - chi(E, F) [E]`` wherever the cohomology of the Hom complex
sits, so the formulas below hold for any pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from . import intlin
from .numk import KClass, add, coordinates, euler_pairing, scale, twist
from .piclat import DivisorClass, LatticeError, SurfaceModel, canonical_class


class InvalidBlock(LatticeError):
    pass


@dataclass(frozen=True)
class RankOnly:
    """A member whose Chern data is not fully known: rank, maybe c1, a name."""

    rank: int
    c1: DivisorClass | None = None
    name: str = ""

    def to_dict(self) -> dict:
        return {"rank": self.rank, "c1": None if self.c1 is None else self.c1.to_list(), "c2": None}


Member = Union[KClass, RankOnly]


@dataclass(frozen=True)
class BlockMeta:
    etale_degree: int
    brauer_label: str = "0"


@dataclass
class MarkedCollection:
    surface: SurfaceModel
    classes: list[Member]
    block_bounds: list[tuple[int, int]] | None = None
    descent_meta: list[BlockMeta] | None = None
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.classes)
        if self.block_bounds is None:
            self.block_bounds = [(i, i + 1) for i in range(n)]
        pos = 0
        for lo, hi in self.block_bounds:
            if lo != pos or hi < lo:
                raise InvalidBlock(f"block bounds {self.block_bounds} do not partition [0, {n})")
            pos = hi
        if pos != n:
            raise InvalidBlock(f"block bounds {self.block_bounds} do not partition [0, {n})")
        if self.descent_meta is None:
            self.descent_meta = [BlockMeta(hi - lo) for lo, hi in self.block_bounds]
        if len(self.descent_meta) != len(self.block_bounds):
            raise InvalidBlock("one descent record per block is required")

    @classmethod
    def from_blocks(cls, S: SurfaceModel, blocks: Sequence[Sequence[Member]], **kw) -> "MarkedCollection":
        classes, bounds, pos = [], [], 0
        for b in blocks:
            classes.extend(b)
            bounds.append((pos, pos + len(b)))
            pos += len(b)
        return cls(S, classes, bounds, **kw)

    @property
    def blocks(self) -> list[list[Member]]:
        return [self.classes[lo:hi] for lo, hi in self.block_bounds]

    @property
    def complete(self) -> bool:
        return all(isinstance(c, KClass) for c in self.classes)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface.name,
            "classes": [c.to_dict() for c in self.classes],
            "block_bounds": [list(b) for b in self.block_bounds],
            "descent_meta": [{"etale_degree": m.etale_degree, "brauer_label": m.brauer_label} for m in self.descent_meta],
            "labels": list(self.labels),
        }


@dataclass
class SodReport:
    is_numerically_exceptional: list[bool | None]
    backward_orthogonal: bool
    block_internal_orthogonal: bool
    length_ok: bool
    gram: list[list[int | None]]
    basis_det: int | str
    complete: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return (
            all(x is not False for x in self.is_numerically_exceptional)
            and self.backward_orthogonal
            and self.block_internal_orthogonal
            and self.length_ok
            and (not self.complete or self.basis_det in (1, -1))
        )

    def to_dict(self) -> dict:
        return {
            "is_numerically_exceptional": self.is_numerically_exceptional,
            "backward_orthogonal": self.backward_orthogonal,
            "block_internal_orthogonal": self.block_internal_orthogonal,
            "length_ok": self.length_ok,
            "gram": self.gram,
            "basis_det": self.basis_det,
            "complete": self.complete,
            "failures": self.failures,
            "all_pass": self.all_pass,
        }


def left_mutate(S: SurfaceModel, E: KClass, F: KClass) -> KClass:
    return add(S, F, scale(S, E, -euler_pairing(S, E, F)))


def right_mutate(S: SurfaceModel, E: KClass, F: KClass) -> KClass:
    return add(S, E, scale(S, F, -euler_pairing(S, E, F)))


def is_block(S: SurfaceModel, block: Sequence[KClass]) -> bool:
    for i, a in enumerate(block):
        if euler_pairing(S, a, a) != 1:
            return False
        for b in block[i + 1:]:
            if euler_pairing(S, a, b) or euler_pairing(S, b, a):
                return False
    return True


def mutate_block(S: SurfaceModel, block: Sequence[KClass], F: KClass, direction: str = "left") -> KClass:
    """Mutate ``F`` through a whole block; ``left`` moves it to the left of the block."""
    if direction not in ("left", "right"):
        raise LatticeError(f"direction must be left or right, got {direction!r}")
    if not is_block(S, block):
        raise InvalidBlock("block members are not pairwise completely orthogonal exceptional classes")
    out = F
    for E in block:
        coeff = euler_pairing(S, E, F) if direction == "left" else euler_pairing(S, F, E)
        out = add(S, out, scale(S, E, -coeff))
    for order in (list(block), list(reversed(block))):
        it = F
        for E in order:
            it = left_mutate(S, E, it) if direction == "left" else right_mutate(S, it, E)
        if it != out:
            raise AssertionError("block mutation differs from iterated mutation")
    return out


def serre_twist(S: SurfaceModel, E: KClass) -> KClass:
    return twist(S, E, canonical_class(S))


def _pair(S, a, b):
    if isinstance(a, KClass) and isinstance(b, KClass):
        return euler_pairing(S, a, b)
    return None


def verify_sod(collection: MarkedCollection) -> SodReport:
    S = collection.surface
    cl = collection.classes
    n = len(cl)
    gram = [[_pair(S, a, b) for b in cl] for a in cl]
    failures = []
    exc = [None if gram[i][i] is None else gram[i][i] == 1 for i in range(n)]
    for i, ok in enumerate(exc):
        if ok is False:
            failures.append(f"chi(V{i}, V{i}) = {gram[i][i]}")
    backward = True
    for i in range(n):
        for j in range(i):
            if gram[i][j] not in (0, None):
                backward = False
                failures.append(f"chi(V{i}, V{j}) = {gram[i][j]} (backward)")
    internal = True
    for lo, hi in collection.block_bounds:
        for i in range(lo, hi):
            for j in range(lo, hi):
                if i != j and gram[i][j] not in (0, None):
                    internal = False
                    failures.append(f"chi(V{i}, V{j}) = {gram[i][j]} inside a block")
    target = 12 - S.degree
    length_ok = n == target
    if not length_ok:
        failures.append(f"length {n}, expected {target}")
    complete = collection.complete
    if complete and length_ok:
        basis_det: int | str = intlin.det([coordinates(S, c) for c in cl])
        if basis_det not in (1, -1):
            failures.append(f"basis determinant {basis_det}")
    else:
        basis_det = "undefined (incomplete Chern data)" if not complete else "undefined (not a full collection)"
    if not complete:
        failures.append("incomplete Chern data: only rank and length bookkeeping for partial members")
    return SodReport(exc, backward, internal, length_ok, gram, basis_det, complete, failures)


def span_coordinates(S: SurfaceModel, classes: Sequence[KClass]) -> list[list[int]]:
    return [coordinates(S, c) for c in classes]


def same_lattice(S: SurfaceModel, A: Sequence[KClass], B: Sequence[KClass]) -> bool:
    """Same sublattice of the numerical K-group, with the Smith invariants as a cross-check."""
    ca, cb = span_coordinates(S, A), span_coordinates(S, B)
    same = intlin.same_row_span(ca, cb)
    if same and intlin.invariant_factors(ca) != intlin.invariant_factors(cb):
        raise AssertionError("equal spans with different Smith invariants")
    return same

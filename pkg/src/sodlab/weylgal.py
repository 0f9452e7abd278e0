"""Roots of K-perp, Weyl reflections, orbits and invariant combinations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

from . import intlin
from .piclat import DivisorClass, LatticeError, SurfaceModel, UnsupportedQuery, canonical_class, intersect

DEFAULT_ORBIT_CAP = 10**6


class NotARoot(LatticeError):
    pass


class OrbitOverflow(LatticeError):
    pass


def is_root(S: SurfaceModel, a: DivisorClass) -> bool:
    return intersect(S, a, a) == -2 and intersect(S, a, canonical_class(S)) == 0


def simple_roots(S: SurfaceModel) -> list[DivisorClass]:
    if S.kind != "blowup":
        raise UnsupportedQuery("simple roots are only provided for blow-up models")
    out = [S.L(i) - S.L(i + 1) for i in range(1, S.r)]
    if S.r >= 3:
        out.append(S.H - S.L(1) - S.L(2) - S.L(3))
    return out


def reflect(S: SurfaceModel, D: DivisorClass, alpha: DivisorClass) -> DivisorClass:
    if not is_root(S, alpha):
        raise NotARoot(f"{alpha.to_list()} is not a root")
    return D + alpha * intersect(S, D, alpha)


def orbit(S: SurfaceModel, D: DivisorClass, gens: Sequence[DivisorClass] | None = None,
          cap: int = DEFAULT_ORBIT_CAP) -> list[DivisorClass]:
    """Closure of ``{D}`` under the reflections in ``gens`` (default: simple roots)."""
    gens = simple_roots(S) if gens is None else list(gens)
    seen = {D}
    todo = deque([D])
    while todo:
        x = todo.popleft()
        for a in gens:
            y = reflect(S, x, a)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise OrbitOverflow(f"orbit exceeds {cap} elements")
                todo.append(y)
    return sorted(seen, key=lambda d: d.coords)


def root_closure(S: SurfaceModel, cap: int = DEFAULT_ORBIT_CAP) -> list[DivisorClass]:
    """All roots reachable from the simple roots by simple reflections."""
    seen: set[DivisorClass] = set()
    for a in simple_roots(S):
        if a not in seen:
            seen.update(orbit(S, a, cap=cap))
    return sorted(seen, key=lambda d: d.coords)


@dataclass(frozen=True)
class Permutation:
    """Permutation of the L_i: ``images[i-1]`` is the index L_i is sent to."""

    images: tuple[int, ...]

    def apply(self, S: SurfaceModel, D: DivisorClass) -> DivisorClass:
        c = list(D.coords)
        out = c[:]
        for i, j in enumerate(self.images, start=1):
            out[j] = c[i]
        return DivisorClass(tuple(out))


@dataclass(frozen=True)
class LatticeMap:
    """An explicit integer matrix acting on column coordinate vectors."""

    matrix: tuple[tuple[int, ...], ...]

    def apply(self, S: SurfaceModel, D: DivisorClass) -> DivisorClass:
        return DivisorClass(tuple(intlin.matvec([list(r) for r in self.matrix], list(D.coords))))


Generator = Union[DivisorClass, Permutation, LatticeMap]


def apply_generator(S: SurfaceModel, g: Generator, D: DivisorClass) -> DivisorClass:
    if isinstance(g, DivisorClass):
        return reflect(S, D, g)
    return g.apply(S, D)


def generator_matrix(S: SurfaceModel, g: Generator) -> list[list[int]]:
    cols = [apply_generator(S, g, S.basis(i)).to_list() for i in range(S.picard_rank)]
    return intlin.transpose(cols)


@dataclass
class InvariantWitness:
    x: list[int]
    invariant: DivisorClass
    total_rank: int
    kernel_rank: int

    def to_dict(self) -> dict:
        return {"x": self.x, "invariant": self.invariant.to_list(), "total_rank": self.total_rank,
                "kernel_rank": self.kernel_rank}


def invariant_combination(S: SurfaceModel, classes: Sequence[DivisorClass], ranks: Sequence[int] | None,
                          group_gens: Sequence[Generator]) -> InvariantWitness | None:
    """A nonzero ``x`` with ``sum x_i classes_i`` fixed by every generator, or None.

    The returned ``x`` is the first row of the Hermite basis of the solution
    lattice, made primitive with positive leading entry.
    """
    if not classes:
        raise LatticeError("need at least one class")
    ranks = list(ranks) if ranks is not None else [1] * len(classes)
    A = intlin.transpose([c.to_list() for c in classes])  # picard_rank x k
    rows: list[list[int]] = []
    for g in group_gens:
        G = generator_matrix(S, g)
        GA = intlin.matmul(G, A)
        rows.extend([[ga - a for ga, a in zip(r1, r2)] for r1, r2 in zip(GA, A)])
    # drop combinations that vanish identically: they are not witnesses
    ker = intlin.kernel(rows, ncols=len(classes)) if rows else [
        [int(i == j) for i in range(len(classes))] for j in range(len(classes))]
    useful = [v for v in ker if any(intlin.matvec(A, v))]
    if not useful:
        return None
    x = intlin.primitive(useful[0])
    inv = DivisorClass(tuple(intlin.matvec(A, x)))
    return InvariantWitness(x, inv, sum(a * r for a, r in zip(x, ranks)), len(ker))

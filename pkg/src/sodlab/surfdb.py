"""Invariant tables for del Pezzo surfaces of degree 9, 8, 6, 5 and the gcd-of-c2 index.

Each row stores the printed (rank, c2) columns of the two nontrivial block
generators together with a split model: a list of ``(divisor, multiplicity)``
line bundles over the separable closure.  The stored columns are checked
against that model through :mod:`sodlab.numk`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Sequence

from .numk import KClass, add, line_bundle, multiple, zero_class
from .piclat import BlowupP2, LatticeError, Quadric, SurfaceModel

TABLES = ("dp9", "dp8", "dp6", "dp5")


class UnknownRow(LatticeError):
    pass


@dataclass(frozen=True)
class BundleRecord:
    algebra_label: str
    center_degree: int
    algebra_index: int
    c2: int
    rank: int
    split: tuple[tuple[str, int], ...]
    period: int | None = None

    def to_dict(self) -> dict:
        d = {
            "algebra_label": self.algebra_label,
            "center_degree": self.center_degree,
            "algebra_index": self.algebra_index,
            "c2": self.c2,
            "rank": self.rank,
            "split": [[s, m] for s, m in self.split],
        }
        if self.period is not None:
            d["period"] = self.period
        return d


@dataclass(frozen=True)
class SurfaceCase:
    table: str
    row: str
    index: int
    picard_rank: int
    bundles: tuple[BundleRecord, BundleRecord]
    geometric_note: str
    anisotropic_quadric: bool = False

    @property
    def degree(self) -> int:
        return int(self.table[2:])

    def model(self) -> SurfaceModel:
        return _MODELS[self.table]()

    def to_dict(self) -> dict:
        return {
            "table": self.table,
            "row": self.row,
            "degree": self.degree,
            "index": self.index,
            "picard_rank": self.picard_rank,
            "bundles": [b.to_dict() for b in self.bundles],
            "geometric_note": self.geometric_note,
        }


_MODELS = {
    "dp9": lambda: BlowupP2(0),
    "dp8": Quadric,
    "dp6": lambda: BlowupP2(3),
    "dp5": lambda: BlowupP2(4),
}

# split shapes
_P2_1 = (("H", 1),)
_P2_2 = (("2H", 1),)
_Q_SPIN2 = (("H1", 2), ("H2", 2))
_Q_SPIN1 = (("H1", 1), ("H2", 1))


def _q_o11(m):
    return (("H1+H2", m),)


def _dp6_v1(a, b, c):
    return (("H-L1", a), ("H-L2", b), ("H-L3", c))


def _dp6_v2(m):
    return (("H", m), ("2H-L1-L2-L3", m))


def _b(label, z, ind, c2, rk, split, per=None):
    return BundleRecord(label, z, ind, c2, rk, split, per)


_ROWS: list[SurfaceCase] = [
    SurfaceCase("dp9", "9.1", 3, 1, (_b("A", 1, 3, 3, 3, (("H", 3),)), _b("A^-1", 1, 3, 12, 3, (("2H", 3),))),
                "Severi-Brauer surface SB(A), nonsplit"),
    SurfaceCase("dp9", "9.2", 1, 1, (_b("k", 1, 1, 0, 1, _P2_1), _b("k", 1, 1, 0, 1, _P2_2)),
                "P^2"),
    SurfaceCase("dp8", "8.1", 4, 1, (_b("C0", 2, 2, 4, 4, _Q_SPIN2), _b("A", 1, 4, 12, 4, _q_o11(4), 2)),
                "S in SB(A)"),
    SurfaceCase("dp8", "8.2", 4, 2, (_b("BxB'", 2, 2, 4, 4, _Q_SPIN2), _b("B(x)B'", 1, 4, 12, 4, _q_o11(4), 2)),
                "SB(B) x SB(B')"),
    SurfaceCase("dp8", "8.3", 2, 1, (_b("C0", 2, 2, 4, 4, _Q_SPIN2), _b("A", 1, 2, 2, 2, _q_o11(2), 2)),
                "S in SB(A)"),
    SurfaceCase("dp8", "8.4", 2, 1, (_b("C0", 2, 2, 4, 4, _Q_SPIN2), _b("k", 1, 1, 0, 1, _q_o11(1), 1)),
                "anisotropic quadric in P^3", anisotropic_quadric=True),
    SurfaceCase("dp8", "8.5", 2, 2, (_b("BxB'", 2, 2, 4, 4, _Q_SPIN2), _b("B(x)B'", 1, 2, 2, 2, _q_o11(2), 2)),
                "SB(B) x SB(B')"),
    SurfaceCase("dp8", "8.6", 2, 2, (_b("BxB", 2, 2, 4, 4, _Q_SPIN2), _b("k", 1, 1, 0, 1, _q_o11(1), 1)),
                "SB(B) x SB(B)"),
    SurfaceCase("dp8", "8.7", 2, 2, (_b("Bxk", 2, 2, 4, 4, _Q_SPIN2), _b("B", 1, 2, 2, 2, _q_o11(2), 2)),
                "SB(B) x P^1"),
    SurfaceCase("dp8", "8.8", 1, 1, (_b("l", 2, 1, 1, 2, _Q_SPIN1), _b("k", 1, 1, 0, 1, _q_o11(1), 1)),
                "isotropic quadric in P^3 with nonsplit discriminant"),
    SurfaceCase("dp8", "8.9", 1, 2, (_b("k^2", 2, 1, 1, 2, _Q_SPIN1), _b("k", 1, 1, 0, 1, _q_o11(1), 1)),
                "P^1 x P^1"),
    SurfaceCase("dp6", "6.1", 6, 1, (_b("Q", 3, 2, 12, 6, _dp6_v1(2, 2, 2)), _b("B", 2, 3, 24, 6, _dp6_v2(3))),
                "S in R_{K/k} SB(B)"),
    SurfaceCase("dp6", "6.2", 3, 1, (_b("L", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("B", 2, 3, 24, 6, _dp6_v2(3))),
                "S in R_{K/k} SB(B)"),
    SurfaceCase("dp6", "6.3", 3, 2, (_b("L", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("AxA^-1", 2, 3, 24, 6, _dp6_v2(3))),
                "S in SB(A) x SB(A^-1)"),
    SurfaceCase("dp6", "6.4", 2, 1, (_b("Q", 3, 2, 12, 6, _dp6_v1(2, 2, 2)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.5", 2, 2, (_b("Q''xQ'", 3, 2, 12, 6, _dp6_v1(2, 2, 2)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.6", 2, 2, (_b("kxQ'", 3, 2, 8, 5, _dp6_v1(1, 2, 2)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.7", 2, 3, (_b("Q'xQ''xQ'''", 3, 2, 12, 6, _dp6_v1(2, 2, 2)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.8", 2, 3, (_b("kxQ'xQ'", 3, 2, 8, 5, _dp6_v1(1, 2, 2)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.9", 1, 1, (_b("L", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.10", 1, 2, (_b("kxL'", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.11", 1, 2, (_b("L", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("k^2", 2, 1, 2, 2, _dp6_v2(1))),
                "S in P^2 x P^2"),
    SurfaceCase("dp6", "6.12", 1, 3, (_b("k^3", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("K", 2, 1, 2, 2, _dp6_v2(1))),
                "S in R_{K/k} P^2"),
    SurfaceCase("dp6", "6.13", 1, 3, (_b("kxL'", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("k^2", 2, 1, 2, 2, _dp6_v2(1))),
                "S in P^2 x P^2"),
    SurfaceCase("dp6", "6.14", 1, 4, (_b("k^3", 3, 1, 3, 3, _dp6_v1(1, 1, 1)), _b("k^2", 2, 1, 2, 2, _dp6_v2(1))),
                "S in P^2 x P^2"),
    # V1 is an extension of O(H) by O(-K-H); V2 = O(H) + sum O(L_i - K - H)
    SurfaceCase("dp5", "5.1", 1, 1,
                (_b("k", 1, 1, 2, 2, (("H", 1), ("2H-L1-L2-L3-L4", 1))),
                 _b("l", 5, 1, 20, 5, (("H", 1), ("2H-L2-L3-L4", 1), ("2H-L1-L3-L4", 1),
                                        ("2H-L1-L2-L4", 1), ("2H-L1-L2-L3", 1)))),
                "quintic del Pezzo surface in P^5"),
]

_ALIASES = {
    ("dp9", "nonsplit"): "9.1", ("dp9", "sb"): "9.1",
    ("dp9", "split"): "9.2", ("dp9", "p2"): "9.2",
    ("dp5", ""): "5.1", ("dp5", "-"): "5.1", ("dp5", "—"): "5.1",
}

# theorem exceptions for the two-block gcd clause
MOREOVER_EXCEPTIONS = ("5.1", "6.1", "8.4")


def _norm_table(table: str) -> str:
    t = str(table).strip().lower()
    if t.isdigit():
        t = "dp" + t
    if t not in TABLES:
        raise UnknownRow(f"unknown table {table!r}; expected one of {', '.join(TABLES)}")
    return t


def all_cases() -> list[SurfaceCase]:
    return list(_ROWS)


def surface_case(table: str, row: str | None = None) -> SurfaceCase:
    t = _norm_table(table)
    key = "" if row is None else str(row).strip()
    key = _ALIASES.get((t, key.lower()), key)
    if "." not in key and key:
        key = f"{t[2:]}.{key}"
    for c in _ROWS:
        if c.table == t and c.row == key:
            return c
    raise UnknownRow(f"no row {row!r} in table {t}")


def split_class(S: SurfaceModel, split: Sequence[tuple[str, int]]) -> KClass:
    out = zero_class(S)
    for text, m in split:
        for _ in range(m):
            out = add(S, out, line_bundle(S.parse(text)))
    return out


def block_generators(case: SurfaceCase) -> tuple[KClass, KClass, KClass]:
    """``(V0, V1, V2)`` over the split model; V0 is the canonical line bundle."""
    S = case.model()
    return (line_bundle(S.K), split_class(S, case.bundles[0].split), split_class(S, case.bundles[1].split))


@dataclass(frozen=True)
class RecomputeResult:
    row: str
    stored: tuple[tuple[int, int], tuple[int, int]]
    recomputed: tuple[tuple[int, int], tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.stored == self.recomputed

    def to_dict(self) -> dict:
        return {"row": self.row, "stored": [list(x) for x in self.stored],
                "recomputed": [list(x) for x in self.recomputed], "ok": self.ok}


def recompute(case: SurfaceCase) -> RecomputeResult:
    _, v1, v2 = block_generators(case)
    stored = tuple((b.rank, b.c2) for b in case.bundles)
    return RecomputeResult(case.row, stored, ((v1.rank, v1.c2), (v2.rank, v2.c2)))


def _gcd_all(values: Sequence[int]) -> int:
    # gcd(a, 0) = a, and gcd of all zeros is 0
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def c2_values(case: SurfaceCase, multiplicities: Sequence[int]) -> list[int]:
    if len(multiplicities) != 3 or any(int(m) < 1 for m in multiplicities):
        raise LatticeError(f"multiplicities must be three integers >= 1, got {list(multiplicities)}")
    S = case.model()
    return [multiple(S, V, int(m)).c2 for V, m in zip(block_generators(case), multiplicities)]


def index_from_c2(case: SurfaceCase, multiplicities: Sequence[int]) -> int:
    return _gcd_all(c2_values(case, multiplicities))


def multiplicity_order(m_max: int):
    """Tuples in ``[1, m_max]^3`` with m0 varying fastest."""
    for m2, m1, m0 in product(range(1, m_max + 1), repeat=3):
        yield (m0, m1, m2)


def find_multiplicities(case: SurfaceCase, m_max: int = 4) -> tuple[int, int, int] | None:
    if m_max < 1:
        raise LatticeError("m_max must be at least 1")
    for m in multiplicity_order(m_max):
        if index_from_c2(case, m) == case.index:
            return m
    return None


@dataclass(frozen=True)
class MoreoverCheck:
    row: str
    exception: bool
    two_block_gcd: int
    index: int
    in_scope: bool
    reason: str

    @property
    def holds(self) -> bool:
        return self.two_block_gcd == self.index

    def to_dict(self) -> dict:
        return {"row": self.row, "exception": self.exception, "two_block_gcd": self.two_block_gcd,
                "index": self.index, "holds": self.holds, "in_scope": self.in_scope, "reason": self.reason}


def moreover_check(case: SurfaceCase) -> MoreoverCheck:
    """The two-block clause: gcd(c2(V1), c2(V2)) = ind(S) outside the listed exceptions.

    ``in_scope`` is False for rows of Picard rank above one and for rows where
    both printed c2 vanish (gcd(0, 0) = 0 cannot equal an index).
    """
    g = _gcd_all([b.c2 for b in case.bundles])
    exc = case.row in MOREOVER_EXCEPTIONS
    if exc:
        reason = "listed exception"
    elif case.picard_rank > 1:
        reason = "Picard rank > 1"
    elif g == 0:
        reason = "both c2 vanish"
    else:
        reason = ""
    return MoreoverCheck(case.row, exc, g, case.index, not reason, reason)


def index_report(case: SurfaceCase, m_max: int = 4) -> dict:
    m = find_multiplicities(case, m_max)
    out = case.to_dict()
    out["recompute"] = recompute(case).to_dict()
    out["witness"] = None if m is None else list(m)
    out["witness_c2"] = None if m is None else c2_values(case, m)
    out["index_from_c2"] = None if m is None else index_from_c2(case, m)
    out["moreover"] = moreover_check(case).to_dict()
    return out


def export_json(cases: Sequence[SurfaceCase] | None = None) -> str:
    cases = all_cases() if cases is None else cases
    return json.dumps([c.to_dict() for c in cases], indent=2, sort_keys=True)

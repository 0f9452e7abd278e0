"""Type II links between non-rational del Pezzo surfaces, expanded on the resolution.

A link ``S <- X -> S'`` blows up a closed point of degree ``d`` on each side.
On ``X`` the two bases ``(sigma^* w_S, E)`` and ``(tau^* w_S', F)`` of the
rank 2 lattice they span are related by an integral involution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from . import intlin
from .excol import MarkedCollection, verify_sod
from .numk import line_bundle
from .piclat import BlowupP2, DivisorClass, LatticeError, Quadric, SurfaceModel, exceptional_lines, intersect


class UnknownLink(LatticeError):
    pass


class LinkIdentityFailure(LatticeError):
    pass


class NoConsistentAssignment(LatticeError):
    pass


# ------------------------------------------------------ homaloidal systems


@dataclass(frozen=True)
class HomaloidalSystem:
    n: int
    mults: tuple[int, ...]

    def __post_init__(self):
        if self.n <= 0 or any(m <= 0 for m in self.mults):
            raise LatticeError("degree and multiplicities must be positive")
        if 3 * self.n - 3 != sum(self.mults) or self.n ** 2 - 1 != sum(m * m for m in self.mults):
            raise LatticeError(f"({self.n}; {self.mults}) is not homaloidal")

    def divisor(self, S: SurfaceModel, order: tuple[int, ...] | None = None) -> DivisorClass:
        """``nH - sum m_i L_{order[i]}`` on a blow-up with at least ``len(mults)`` points."""
        order = order or tuple(range(1, len(self.mults) + 1))
        D = S.H * self.n
        for m, i in zip(self.mults, order):
            D = D - S.L(i) * m
        return D

    def to_dict(self) -> dict:
        return {"n": self.n, "mults": list(self.mults)}


def degree_bound(r: int) -> int:
    """Largest ``n`` with ``9(n-1) <= r(n+1)``."""
    if r >= 9:
        raise LatticeError("the bound needs r <= 8")
    return (9 + r) // (9 - r)


def _descending(r: int, total: int, squares: int, cap: int):
    if r == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    for m in range(min(cap, total - (r - 1)), 0, -1):
        if m * m + (r - 1) > squares or m * r < total:
            continue
        for rest in _descending(r - 1, total - m, squares - m * m, m):
            yield (m,) + rest


def homaloidal_systems(r: int) -> list[HomaloidalSystem]:
    if not 1 <= r <= 8:
        raise LatticeError("r must be between 1 and 8")
    out = []
    for n in range(1, degree_bound(r) + 1):
        for mults in _descending(r, 3 * n - 3, n * n - 1, n):
            out.append(HomaloidalSystem(n, mults))
    return sorted(out, key=lambda h: (-h.n, h.mults))


def homaloidal_brute_force(r: int, n_max: int = 9) -> list[HomaloidalSystem]:
    """Every descending ``m`` with ``1 <= m_i <= n <= n_max``, filtered by the two equations."""
    from itertools import combinations_with_replacement

    out = []
    for n in range(1, n_max + 1):
        for ms in combinations_with_replacement(range(n, 0, -1), r):
            if 3 * n - 3 == sum(ms) and n * n - 1 == sum(m * m for m in ms):
                out.append(HomaloidalSystem(n, tuple(ms)))
    return sorted(out, key=lambda h: (-h.n, h.mults))


# --------------------------------------------------------------- matrices

SIGN = ((1, 0), (0, -1))

TABLE = {
    (9, 3): ((2, 1), (-3, -2)),
    (9, 6): ((5, 4), (-6, -5)),
    (8, 4): ((3, 2), (-4, -3)),
    (6, 2): ((2, 1), (-3, -2)),
    (6, 3): ((3, 2), (-4, -3)),
}


def _m(A):
    return [list(r) for r in A]


@dataclass
class LinkMatrix:
    deg_surface: int
    deg_point: int
    m: list[list[int]]  # as printed
    involution: list[list[int]]  # columns: coordinates of sigma^* w and E in (tau^* w', F)

    @property
    def det(self) -> int:
        return intlin.det(self.m)

    @property
    def is_involution(self) -> bool:
        return intlin.matmul(self.m, self.m) == [[1, 0], [0, 1]]

    @property
    def conjugate(self) -> bool:
        return intlin.matmul(intlin.matmul(_m(SIGN), self.involution), _m(SIGN)) == self.m

    def to_dict(self) -> dict:
        return {
            "deg_surface": self.deg_surface,
            "deg_point": self.deg_point,
            "m": self.m,
            "involution": self.involution,
            "det": self.det,
            "squares_to_identity": self.is_involution,
            "conjugate_by_sign": self.conjugate,
        }


def _key(deg_surface: int, deg_point: int) -> tuple[int, int]:
    key = (int(deg_surface), int(deg_point))
    if key not in TABLE:
        raise UnknownLink(f"no link M_{{{key[0]},{key[1]}}}; known: {sorted(TABLE)}")
    return key


def link_matrix(deg_surface: int, deg_point: int) -> LinkMatrix:
    key = _key(deg_surface, deg_point)
    T = _m(TABLE[key])
    inv = intlin.matmul(intlin.matmul(_m(SIGN), T), _m(SIGN))
    return LinkMatrix(key[0], key[1], T, inv)


def coordinates_in(S: SurfaceModel, v: DivisorClass, a: DivisorClass, b: DivisorClass) -> tuple[int, int]:
    A = intlin.transpose([a.to_list(), b.to_list()])
    sol = intlin.solve(A, v.to_list())
    if sol.empty or not sol.unique:
        raise LinkIdentityFailure(f"{v.to_list()} is not in the span of the link basis")
    return tuple(sol.particular)


# --------------------------------------------------------------- models


def line_name(S: SurfaceModel, C: DivisorClass) -> str:
    c = C.to_list()
    r = S.r
    if c[0] == 0:
        return f"L{c.index(1)}"
    if c[0] == 1:
        i, j = [k for k in range(1, r + 1) if c[k] == -1]
        return f"L{i},{j}"
    if c[0] == 2:
        missing = [k for k in range(1, r + 1) if c[k] == 0]
        return "D" if not missing else f"D{missing[0]}"
    return "C" + ",".join(map(str, c))


@dataclass
class LinkModel:
    X: SurfaceModel
    sigma_omega: DivisorClass
    E: DivisorClass
    E_parts: list[DivisorClass]


def _model(key: tuple[int, int]) -> LinkModel:
    ds, d = key
    if ds == 9:
        X = BlowupP2(d)
        parts = [X.L(i) for i in range(1, d + 1)]
        return LinkModel(X, X.H * -3, X.L_sum(range(1, d + 1)), parts)
    if ds == 8:
        X = BlowupP2(5)  # the quadric is Bl_{p1,p2} P2 with the line through them contracted
        h = X.parse("2H-L1-L2")
        parts = [X.parse("H-L1-L2"), X.L(3), X.L(4), X.L(5)]
        E = parts[0] + parts[1] + parts[2] + parts[3]
        return LinkModel(X, h * -2, E, parts)
    X = BlowupP2(3 + d)
    parts = [X.L(i) for i in range(4, 4 + d)]
    return LinkModel(X, X.parse("-3H+L1+L2+L3"), X.L_sum(range(4, 4 + d)), parts)


def _disjoint(S, cls) -> bool:
    return all(intersect(S, a, b) == 0 for a, b in combinations(cls, 2))


@dataclass
class Candidate:
    G: DivisorClass
    system: HomaloidalSystem | None
    lines: list[DivisorClass]
    assignment: list[DivisorClass] | None

    def to_dict(self, S) -> dict:
        return {
            "G": self.G.to_list(),
            "system": None if self.system is None else self.system.to_dict(),
            "consistent": self.assignment is not None,
            "assignment": None if self.assignment is None else [c.to_list() for c in self.assignment],
            "names": None if self.assignment is None else [line_name(S, c) for c in self.assignment],
        }


def _line_order(S, C):
    c = C.to_list()
    missing = [k for k in range(1, S.r + 1) if c[k] == 0] if c[0] == 2 else []
    through = [k for k in range(1, S.r + 1) if c[k] < 0]
    return (c[0], missing, through)


def _deg6_candidates(key, X, tau_omega, F) -> list[Candidate]:
    """Homaloidal systems on the 3+d points, with the d-subset of F-lines forced by the matrix."""
    d = key[1]
    lines = exceptional_lines(X)
    out = []
    seen = set()
    for h in homaloidal_systems(X.r):
        for order in permutations(range(1, X.r + 1)):
            G = h.divisor(X, order)
            if G in seen:
                continue
            seen.add(G)
            orth = sorted((c for c in lines if intersect(X, G, c) == 0), key=lambda c: _line_order(X, c))
            found = None
            for sub in combinations(orth, d):
                rest = [c for c in orth if c not in sub]
                tot = sub[0]
                for c in sub[1:]:
                    tot = tot + c
                if tot != F or not _disjoint(X, sub) or len(rest) != 3:
                    continue
                if G * -3 + rest[0] + rest[1] + rest[2] == tau_omega:
                    found = rest + list(sub)
                    break
            out.append(Candidate(G, h, orth, found))
    return out


@dataclass
class LinkExpansion:
    key: tuple[int, int]
    X: SurfaceModel
    sigma_omega: DivisorClass
    E: DivisorClass
    tau_omega: DivisorClass
    F: DivisorClass
    G: DivisorClass
    F_parts: list[DivisorClass]
    derived: list[list[int]]
    matrix: LinkMatrix
    identities: dict[str, bool]
    printed_identities: dict[str, bool] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return f"M{self.key[0]},{self.key[1]}"

    def to_dict(self) -> dict:
        return {
            "link": self.name,
            "surface": self.X.name,
            "basis": self.X.basis_labels,
            "sigma_omega": self.sigma_omega.to_list(),
            "E": self.E.to_list(),
            "tau_omega": self.tau_omega.to_list(),
            "F": self.F.to_list(),
            "G": self.G.to_list(),
            "F_parts": [c.to_list() for c in self.F_parts],
            "F_names": [line_name(self.X, c) for c in self.F_parts],
            "derived_matrix": self.derived,
            "table_matrix": self.matrix.m,
            "identities": self.identities,
            "printed_identities": self.printed_identities,
        }


def expand_link(deg_surface: int, deg_point: int) -> LinkExpansion:
    key = _key(deg_surface, deg_point)
    M = link_matrix(*key)
    mod = _model(key)
    X = mod.X
    K = X.K
    inv = M.involution
    # [tau^* w', F] = [sigma^* w, E] . inv, because inv squares to the identity
    tau_omega = mod.sigma_omega * inv[0][0] + mod.E * inv[1][0]
    F = mod.sigma_omega * inv[0][1] + mod.E * inv[1][1]
    ids: dict[str, bool] = {}
    printed: dict[str, bool] = {}
    ids["E = K_X - sigma^* w_S"] = mod.E == K - mod.sigma_omega
    ids["components of E are disjoint exceptional lines"] = _disjoint(X, mod.E_parts) and all(
        intersect(X, c, c) == -1 and intersect(X, c, K) == -1 for c in mod.E_parts)
    if key[0] == 9:
        G = X.H * 0 - tau_omega
        if any(v % 3 for v in G.to_list()):
            raise LinkIdentityFailure("tau^* w' is not divisible by 3")
        G = DivisorClass(tuple(v // 3 for v in G.to_list()))
        parts = sorted((c for c in exceptional_lines(X) if intersect(X, c, G) == 0), key=lambda c: _line_order(X, c))
        if key[1] == 3:
            ids["G = 2H-L1-L2-L3"] = G == X.parse("2H-L1-L2-L3")
            ids["G + K_X = -H"] = G + K == -X.H
        else:
            ids["G = 5H-2(L1+...+L6)"] = G == X.H * 5 - X.L_sum(range(1, 7)) * 2
            ids["G + 2K_X = -H"] = G + K * 2 == -X.H
            ids["G has all multiplicities equal"] = len(set(G.to_list()[1:])) == 1
    elif key[0] == 8:
        if any(v % 2 for v in tau_omega.to_list()):
            raise LinkIdentityFailure("tau^* w' is not divisible by 2")
        G = DivisorClass(tuple(-v // 2 for v in tau_omega.to_list()))
        lines = [c for c in exceptional_lines(X) if intersect(X, c, tau_omega) == 0]
        parts = next((list(s) for s in combinations(lines, 4) if _disjoint(X, s) and sum_classes(X, s) == F), [])
        h = X.parse("2H-L1-L2")
        ids["tau^* O(1) = 4H-L1-L2-2L3-2L4-2L5"] = G == X.parse("4H-L1-L2-2L3-2L4-2L5")
        ids["tau^* O(1) + 2K_X = -sigma^* O(1)"] = G + K * 2 == -h
        ids["(tau^* O(1))^2 = 2"] = intersect(X, G, G) == 2
        printed["sigma^* O(1) = tau^* O(1) + 2K_X"] = h == G + K * 2
    else:
        cands = _deg6_candidates(key, X, tau_omega, F)
        good = [c for c in cands if c.assignment is not None]
        if not good:
            raise LinkIdentityFailure(f"{key}: no homaloidal system fits the matrix")
        chosen = _preferred(key, X, good)
        G = chosen.G
        parts = chosen.assignment[3:]
        allF = chosen.assignment
        if key[1] == 2:
            ids["G = 3H-L1-L2-L3-L4-2L5"] = G == X.parse("3H-L1-L2-L3-L4-2L5")
            ids["F_i = H-L_i-L5 for i <= 4"] = all(allF[i - 1] == X.H - X.L(i) - X.L(5) for i in range(1, 5))
            ids["F5 = 2H-L1-L2-L3-L4-L5"] = allF[4] == X.parse("2H-L1-L2-L3-L4-L5")
            ids["3G-F1-F2-F3 = 6H-2L1-2L2-2L3-3L4-3L5"] = (
                G * 3 - allF[0] - allF[1] - allF[2] == X.parse("6H-2L1-2L2-2L3-3L4-3L5"))
            ids["F4+F5 = 3H-L1-L2-L3-2L4-2L5"] = allF[3] + allF[4] == X.parse("3H-L1-L2-L3-2L4-2L5")
        else:
            from .catalog import dp6_relations

            _, G36, F36 = dp6_relations("deg3")
            ids["G = 5H-2(E1+...+E6)"] = G == G36
            ids["F_i = 2H - sum_{j != i+3} E_j, F_{i+3} = 2H - sum_{j != i} E_j"] = allF == F36
            ids["3G-F1-F2-F3 = 9H-3L1-3L2-3L3-4L4-4L5-4L6"] = (
                G * 3 - allF[0] - allF[1] - allF[2] == X.parse("9H-3L1-3L2-3L3-4L4-4L5-4L6"))
            ids["F4+F5+F6 = 6H-2L1-2L2-2L3-3L4-3L5-3L6"] = (
                allF[3] + allF[4] + allF[5] == X.parse("6H-2L1-2L2-2L3-3L4-3L5-3L6"))
        ids["tau^* w' = -3G + F1 + F2 + F3"] = tau_omega == G * -3 + allF[0] + allF[1] + allF[2]
    ids["components of F are disjoint exceptional lines"] = bool(parts) and _disjoint(X, parts) and all(
        intersect(X, c, c) == -1 and intersect(X, c, K) == -1 for c in parts)
    ids["F is the sum of its components"] = bool(parts) and sum_classes(X, parts) == F
    ids["F = K_X - tau^* w'"] = F == K - tau_omega
    ids["deg(S) = deg(S')"] = intersect(X, mod.sigma_omega, mod.sigma_omega) == intersect(
        X, tau_omega, tau_omega) == key[0]
    derived = [list(coordinates_in(X, mod.sigma_omega, tau_omega, F)), list(coordinates_in(X, mod.E, tau_omega, F))]
    derived = intlin.transpose(derived)
    ids["derived matrix squares to identity"] = intlin.matmul(derived, derived) == [[1, 0], [0, 1]]
    ids["derived matrix has det -1"] = intlin.det(derived) == -1
    ids["table matrix = diag(1,-1) . derived . diag(1,-1)"] = intlin.matmul(
        intlin.matmul(_m(SIGN), derived), _m(SIGN)) == M.m
    bad = [k for k, v in ids.items() if not v]
    if bad:
        raise LinkIdentityFailure(f"M{key[0]},{key[1]}: " + "; ".join(bad))
    return LinkExpansion(key, X, mod.sigma_omega, mod.E, tau_omega, F, G, parts, derived, M, ids, printed)


def sum_classes(S: SurfaceModel, cls) -> DivisorClass:
    tot = S.zero()
    for c in cls:
        tot = tot + c
    return tot


def _preferred(key, X, good: list[Candidate]) -> Candidate:
    # fix the labelling: for d = 2 the double point is the last one, for d = 3 F_{i+3} = D_i
    if key[1] == 2:
        pick = [c for c in good if c.G == X.parse("3H-L1-L2-L3-L4-2L5")]
    else:
        pick = [c for c in good if c.G == X.H * 5 - X.L_sum(range(1, 7)) * 2]
    return pick[0] if pick else good[0]


@dataclass
class Classification:
    key: tuple[int, int]
    X: SurfaceModel
    candidates: list[Candidate]
    chosen: Candidate

    @property
    def assignment(self) -> dict[str, str]:
        return {f"F{i}": line_name(self.X, c) for i, c in enumerate(self.chosen.assignment, start=1)}

    def to_dict(self) -> dict:
        return {
            "link": f"M{self.key[0]},{self.key[1]}",
            "assignment": self.assignment,
            "classes": {f"F{i}": c.to_list() for i, c in enumerate(self.chosen.assignment, start=1)},
            "G": self.chosen.G.to_list(),
            "consistent_systems": [c.to_dict(self.X) for c in self.candidates if c.assignment is not None],
            "set_aside": self.set_aside,
            "rejected_systems": len([c for c in self.candidates if c.assignment is None]),
        }

    @property
    def set_aside(self) -> list[dict]:
        """Lattice-consistent systems other than the chosen one, with the reason they are not used."""
        out = []
        for c in self.candidates:
            if c.assignment is None or c is self.chosen:
                continue
            if c.system is not None and len(set(c.system.mults)) > 1 and self.key == (6, 3):
                why = "composite of two quadratic transformations: S would not be minimal"
            else:
                why = "relabelling of the chosen system"
            out.append({"G": c.G.to_list(), "reason": why})
        return out


def classify_f_classes(deg_surface: int, deg_point: int) -> Classification:
    """Name the exceptional curves F_i of the link among the lines of the resolution.

    Only the degree 6 links carry a homaloidal choice; for the others the F_i
    are read off the expansion directly.
    """
    key = _key(deg_surface, deg_point)
    exp = expand_link(*key)
    X = exp.X
    if key[0] != 6:
        cand = Candidate(exp.G, _system_of(exp), exp.F_parts, exp.F_parts)
        return Classification(key, X, [cand], cand)
    cands = _deg6_candidates(key, X, exp.tau_omega, exp.F)
    good = [c for c in cands if c.assignment is not None]
    if not good:
        raise NoConsistentAssignment(f"M{key[0]},{key[1]}: no consistent assignment")
    chosen = _preferred(key, X, good)
    for c in chosen.assignment:
        if intersect(X, c, c) != -1 or intersect(X, c, X.K) != -1:
            raise NoConsistentAssignment("assigned class is not an exceptional line")
    return Classification(key, X, cands, chosen)


def _system_of(exp: LinkExpansion):
    c = exp.G.to_list()
    if exp.key[0] == 9:
        return HomaloidalSystem(c[0], tuple(sorted((-v for v in c[1:]), reverse=True)))
    return None


# --------------------------------------------------- other link types


@dataclass(frozen=True)
class LinkTypeRecord:
    link_type: str
    setting: str
    shape: tuple[str, ...]
    relations: tuple[str, ...]
    note: str

    def to_dict(self) -> dict:
        return {"link_type": self.link_type, "setting": self.setting, "shape": list(self.shape),
                "relations": list(self.relations), "note": self.note}


OTHER_LINKS = [
    LinkTypeRecord("I", "degree 8 involution surface with a point of degree 2",
                   ("Db(k)", "Db(k,A)", "Db(k,C0)"),
                   ("H = G - L1 - L2", "E = L1 + L2", "w = -2G + L1 + L2"),
                   "the blow-up is a conic bundle over C = SB(A'); A and A' are Brauer equivalent"),
    LinkTypeRecord("I", "degree 4 del Pezzo surface with a rational point",
                   ("Db(k)", "Db(k)", "...", "Db(P1,C0)"), (),
                   "the Clifford algebras of the pencil and of the conic bundle are Morita equivalent"),
    LinkTypeRecord("II", "degree 8 conic bundle, point of degree d in {2, 4}",
                   ("Db(k)", "Db(k,alpha)", "Db(k,beta)", "Db(k,alpha+beta)"),
                   ("F = F'", "E = d Sigma' - E'", "-K_S = -K_S' + d F' + 2E'", "Sigma = Sigma' - E'"),
                   "tensoring by O(-E') matches the last two components"),
    LinkTypeRecord("III", "blow-down", (), (), "the target is not minimal; handled by the blow-up formula"),
    LinkTypeRecord("IV", "C x C' with both projections",
                   ("Db(k)", "Db(k,alpha)", "Db(k,alpha')", "Db(k,alpha+alpha')"), (),
                   "the two conic bundle structures give decompositions with equivalent components"),
]


def hirzebruch_check(n: int) -> dict:
    """Numerical check of ``<O, O(F), O(Sigma), O(Sigma+F)>`` on F_0 and F_1."""
    if n == 0:
        S = Quadric()
        Fib, Sig = S.parse("H2"), S.parse("H1")
    elif n == 1:
        S = BlowupP2(1)
        Fib, Sig = S.parse("H-L1"), S.parse("L1")
    else:
        raise LatticeError("only F_0 and F_1 have a del Pezzo model here")
    col = MarkedCollection(S, [line_bundle(c) for c in (S.zero(), Fib, Sig, Sig + Fib)])
    rep = verify_sod(col)
    return {"n": n, "surface": S.name, "all_pass": rep.all_pass, "basis_det": rep.basis_det}

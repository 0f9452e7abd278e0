import json

import numpy as np
import pytest

from sodlab import descent
from sodlab.descent import (CASES, NO_GENERATOR, OMEGA_IN_BLOCK, POSSIBLE, SIMULTANEOUS, THEOREM_CASES,
                            TwistProblem, UnknownCase, check_case, primitive_box, search_witnesses,
                            solve_fixed_coefficients)
from sodlab.piclat import BlowupP2, LatticeError

EXPECTED = {
    "degree4": SIMULTANEOUS, "degree3i": OMEGA_IN_BLOCK, "degree3ii": NO_GENERATOR, "degree2i": NO_GENERATOR,
    "degree2ii": SIMULTANEOUS, "degree2iii": NO_GENERATOR, "degree1i": NO_GENERATOR, "degree1ii": NO_GENERATOR,
    "degree1iii": NO_GENERATOR, "degree1iv": NO_GENERATOR,
}


def deg4_E():
    return descent._problem(CASES["degree4"], "E")


def test_ten_cases():
    assert sorted(THEOREM_CASES) == sorted(EXPECTED)


@pytest.mark.parametrize("case", sorted(EXPECTED))
def test_conclusions(case):
    assert check_case(case, 12).conclusion == EXPECTED[case]


def test_case_names_normalize():
    assert check_case("Degree 3(i)", 6).case_id == "degree3i"
    with pytest.raises(UnknownCase):
        check_case("degree7", 6)


def test_degree4_family_verbatim():
    rep = check_case("degree4", 12)
    S = BlowupP2(5)
    seen = 0
    for w in rep.witnesses:
        a, b = w.x
        if a + b == 1:
            assert w.M == S.L(4) * -a + S.L(5) * (a - 1) and w.r == 0
            seen += 1
    assert seen >= 12
    assert all(rep.identities.values())


def test_solve_fixed_examples():
    P = deg4_E()
    S = P.surface
    sol = solve_fixed_coefficients(P, [2, -1])
    M, r = sol.particular
    assert r == 0 and M == S.L(4) * -2 + S.L(5)
    assert sol.kernel == []
    assert solve_fixed_coefficients(P, [1, 1]).empty
    zero = solve_fixed_coefficients(P, [0, 0])
    assert zero.particular[0].is_zero() and zero.particular[1] == 0
    assert len(zero.kernel) >= 1


def test_solve_fixed_respects_equation():
    P = deg4_E()
    for x in ([3, -2], [-4, 5], [7, -6]):
        sol = solve_fixed_coefficients(P, x)
        M, r = sol.particular
        assert P.residual(x, M, r).is_zero()


def test_search_examples():
    rep = check_case("degree3ii", 12)
    assert len(rep.witness_x) == 0 and rep.conclusion == NO_GENERATOR
    rep = check_case("degree1iii", 12)
    assert len(rep.witness_x) == 0
    cert = [c for c in rep.certificates if c["kind"] == "unit-divisibility"][0]
    assert cert["holds"]
    ctrl = check_case("degree9", 3)
    assert ctrl.conclusion == POSSIBLE
    w = ctrl.witnesses[0]
    assert w.x == (1,) and w.r == 0 and w.M == BlowupP2(0).parse("-H")


def test_degree3i_and_2iii_examples():
    rep = check_case("degree3i", 12)
    assert rep.conclusion == OMEGA_IN_BLOCK and rep.blocks["G"]["omega_members"]
    assert check_case("degree2iii", 12).conclusion == NO_GENERATOR


def test_degree2i_flags_analogy():
    assert check_case("degree2i", 6).analogy


def test_witnesses_reverify():
    rep = check_case("degree2ii", 6)
    P = rep.problem
    for w in rep.witnesses[:200]:
        assert P.residual(w.x, w.M, w.r).is_zero()


def test_omega_shift_is_bijection():
    rep = search_witnesses(deg4_E(), 8)
    P = rep.problem
    K = P.surface.K
    for w in rep.witnesses:
        s = sum(a * rk for a, rk in zip(w.x, P.ranks))
        # M -> M + w moves r by s, and M -> M - w moves it back
        assert P.residual(w.x, w.M + K, w.r + s).is_zero()
        assert P.residual(w.x, w.M - K, w.r - s).is_zero()


def test_monotone_in_bound():
    for case, block in (("degree4", "E"), ("degree2ii", "F")):
        P = descent._problem(CASES[case], block)
        small = {(w.x, w.M, w.r) for w in search_witnesses(P, 4).witnesses}
        big = {(w.x, w.M, w.r) for w in search_witnesses(P, 8).witnesses}
        assert small <= big and len(big) > len(small)


@pytest.mark.parametrize("case", sorted(EXPECTED))
def test_fast_and_snf_paths_agree(case):
    for block in CASES[case].blocks:
        P = descent._problem(CASES[case], block)
        a = search_witnesses(P, 3, method="fast")
        b = search_witnesses(P, 3, method="snf")
        assert {w.x for w in a.witnesses} == {w.x for w in b.witnesses}


def test_primitive_box():
    vecs = np.concatenate(list(primitive_box(2, 2)))
    assert len(vecs) == len({tuple(v) for v in vecs})
    for v in vecs:
        nz = v[v != 0]
        assert nz[0] > 0 and np.gcd.reduce(np.abs(v)) == 1
    # compare against a direct filter of the whole box
    brute = {tuple(v) for v in np.array(np.meshgrid(*[range(-2, 3)] * 2)).T.reshape(-1, 2)
             if np.gcd.reduce(np.abs(v)) == 1 and v[v != 0][0] > 0}
    assert {tuple(v) for v in vecs} == brute


def test_problem_validation():
    S = BlowupP2(5)
    with pytest.raises(LatticeError):
        TwistProblem(S, [], "a1=0")
    with pytest.raises(LatticeError):
        TwistProblem(S, [(1, S.H)], "a9=0")
    with pytest.raises(LatticeError):
        TwistProblem(S, [(1, S.H)], "b=0")


def test_scenario_roundtrip(tmp_path):
    data = {"surface": "BlowupP2(5)", "block": [{"rank": 1, "c1": "L4"}, {"rank": 1, "c1": "L5"}],
            "normalization": "a1=0", "bound": 5}
    p = tmp_path / "s.json"
    p.write_text(json.dumps(data))
    out = descent.run_scenario(str(p), max_witnesses=3)
    assert out["witness_count"] > 0 and len(out["witnesses"]) == 3
    assert out == descent.run_scenario(data, max_witnesses=3)

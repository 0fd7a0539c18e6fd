import pytest

import gammahc


def test_dual_numbers_hh():
    hh = gammahc.hochschild("Z", ["x"], ["x^2"], 3)
    assert [g["text"] for g in hh] == [g["text"] for g in gammahc.oracle_hochschild("Z", ["x"], ["x^2"], 3)]
    assert hh[0]["free_rank"] == 2 and hh[0]["torsion"] == []


def test_shukla_z_mod_p():
    hh = gammahc.hochschild("Z", [], ["3"], 4)
    assert [g["torsion"] for g in hh] == [[3], [], [3], [], [3]]
    assert all(g["free_rank"] == 0 for g in hh)


def test_cyclic_matches_oracle():
    hc = gammahc.cyclic("Z", ["x"], ["x^2"], 3)
    oracle = gammahc.oracle_cyclic("Z", ["x"], ["x^2"], 3)
    assert [g["text"] for g in hc["total"]] == [g["text"] for g in oracle]


def test_hodge_layers_sum_to_total():
    h = gammahc.hodge_layers("Z", ["x"], ["x^2"], 3)
    assert h["total"] == gammahc.hochschild("Z", ["x"], ["x^2"], 3)
    assert set(h["layers"][2]) <= {0, 1, 2}


def test_witness():
    r = gammahc.witness("Z", 2)
    assert r["cycle"] and not r["boundary"] and r["delta_beta_is_minus_p_gamma"]
    with pytest.raises(gammahc.GammaError, match="UnitP"):
        gammahc.witness("Q", 2)


def test_smith():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    U, S, V = gammahc.smith(m)
    prod = [[sum(U[i][k] * m[k][l] * V[l][j] for k in range(3) for l in range(3)) for j in range(3)] for i in range(3)]
    assert prod == S
    assert [S[i][i] for i in range(3)] == [2, 6, 12]


def test_big_integers_round_trip():
    U, S, V = gammahc.smith([[10**30]])
    assert S == [[10**30]]


def test_run_job():
    result, code = gammahc.run_job("ring Z\nvars x\nrel x^2\n", "compare", 2)
    assert code == 0
    assert result["errors"] == {}
    bad, code = gammahc.run_job("vars x\nrel x^^2\n")
    assert code == 2 and bad["errors"]["name"] == "ParseError"


def test_errors_are_python_exceptions():
    with pytest.raises(gammahc.GammaError, match="NotQuasiMonic"):
        gammahc.hochschild("Z", ["x"], ["2*x^2"], 2)

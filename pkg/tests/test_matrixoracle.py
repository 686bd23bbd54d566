import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superflag import Family, Root, Weight, build_roots, phi_sets
from superflag.classify import enumerate_flag_types, odd_codimension
from superflag.matrixoracle import OracleRefused, codim_oracle, oracle_bounds, realize, stabilizer_phi
from superflag.parabolic import DEFAULT
from superflag.realform import TauAction, catalog, lookup

from conftest import ft


def test_a21_matrix_units():
    model = realize(Family.A(2, 1))
    assert len(model.entries) == 6
    for _, M in model.entries:
        assert sum(v != 0 for row in M for v in row) == 1


def test_d21_counts_match_roots():
    model = realize(Family.D(2, 1))
    roots = build_roots(Family.D(2, 1))
    assert {r for r, _ in model.entries} == set(roots)
    assert sum(r.is_even for r in roots) == 6 and sum(r.is_odd for r in roots) == 8


def test_q2_has_four_matrices():
    assert len(realize(Family("Q", 2)).entries) == 4


def test_stabilizer_equals_phi_a21():
    fam, d = Family.A(2, 1), ft("1|0")
    assert stabilizer_phi(fam, d) == phi_sets(fam, DEFAULT, d)


def test_stabilizer_borel_upper_triangular():
    fam = Family.A(3, 0)
    ph = stabilizer_phi(fam, ft("1|0,2|0"))
    assert {tuple(a.weight.x) for a in ph.phi} == {(1, -1, 0), (1, 0, -1), (0, 1, -1)}


def test_b11_isotropic_line():
    ph = stabilizer_phi(Family.B(1, 1), ft("1|0"))
    assert Root(Weight((-1,), (-1,)), "odd") not in ph.phi
    assert Root(Weight((1,), (1,)), "odd") in ph.phi


def test_su_type_tau_total_zero():
    fam = Family.A(2, 2)
    rf = lookup(fam, "su:1,1|1,1")
    assert rf.tau == TauAction.minus_id(2, 2)
    assert all(codim_oracle(fam, rf, d)[0] == 0 for d in enumerate_flag_types(fam))


def test_psl_real_codim_agrees():
    fam = Family.A(2, 2)
    rf = lookup(fam, "sl_R")
    assert codim_oracle(fam, rf, ft("1|1"))[1] == odd_codimension(fam, rf, ft("1|1"))[1]


def test_oracle_refuses_out_of_bound(monkeypatch):
    monkeypatch.setenv("SUPERFLAG_ORACLE_BOUNDS", "A=2")
    assert oracle_bounds()["A"] == 2
    with pytest.raises(OracleRefused):
        realize(Family.A(2, 1))


def test_default_bounds():
    assert oracle_bounds() == {"A": 6, "B": 4, "C": 4, "D": 4, "P": 4, "Q": 4}


SMALL = [Family.A(2, 1), Family.A(1, 2), Family.B(1, 1), Family.C(2), Family.D(2, 1), Family.P(3), Family("Q", 3)]


@given(st.sampled_from(SMALL), st.data())
def test_oracle_equivalence_sampled(fam, data):
    d = data.draw(st.sampled_from(enumerate_flag_types(fam)))
    for rf in catalog(fam):
        assert stabilizer_phi(fam, d, rf.convention) == phi_sets(fam, rf.convention, d)

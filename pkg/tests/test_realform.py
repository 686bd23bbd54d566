import pytest
from hypothesis import given
from hypothesis import strategies as st

from superflag import Family, Root, Weight, apply_tau, associated_real_form, build_roots, catalog, lookup
from superflag.realform import TauAction, catalog_keys, even_partners

FAMS = [Family.A(2, 1), Family.A(2, 2), Family.A(3, 2), Family.A(3, 3), Family.B(1, 1), Family.B(2, 1),
        Family.C(2), Family.D(2, 1), Family.D(3, 1), Family.P(3), Family.P(4), Family("Q", 3)]


def test_su_minus_id():
    rf = lookup(Family.A(3, 2), "su:1,2|1,1")
    assert rf.name == "su(1,2|1,1)"
    assert rf.tau == TauAction.minus_id(3, 2)


def test_0pq_swaps_x_and_y():
    rf = lookup(Family.A(3, 3), "0pq")
    w = Weight((1, 2, 3), (4, 5, 6))
    assert rf.tau(w) == Weight((4, 5, 6), (1, 2, 3))


def test_uspi_fixes_odd_root():
    rf = lookup(Family.A(2, 2), "uspi")
    a = Root(Weight((1, 0), (-1, 0)), "odd")
    assert apply_tau(rf.tau, a) == a


def test_sl_r_reversal():
    rf = lookup(Family.A(3, 1), "sl_R")
    assert rf.tau(Weight((1, -1, 0), (0,))) == Weight((0, -1, 1), (0,))


def test_tau_zero():
    for fam in FAMS:
        for rf in catalog(fam):
            assert rf.tau(Weight.zero(*fam.dims)).is_zero()


def test_associated_real_forms():
    fam = Family.A(3, 2)
    assert associated_real_form(lookup(fam, "ev_su:1,2|1,1")).key == "su:1,2|1,1"
    assert associated_real_form(lookup(Family.A(3, 3), "ev_sl_C")).key == "0pq"
    assert even_partners(lookup(Family.A(2, 2), "uspi")) == []
    assert associated_real_form(lookup(fam, "su:1,2|1,1")) is None  # not an even real form


def test_osp_oo_signature_alias():
    fam = Family.D(2, 1)
    assert lookup(fam, "osp_oo:1,3") == lookup(fam, "osp_oo:0,1")
    assert lookup(Family.C(2), "osp_oo:0,0").key == "osp11"


def test_unknown_key():
    with pytest.raises(KeyError):
        lookup(Family.A(2, 2), "nope")
    assert "sl_R" in catalog_keys(Family.A(2, 2))


@given(st.sampled_from(FAMS), st.data())
def test_tau_is_root_involution(fam, data):
    rf = data.draw(st.sampled_from(catalog(fam)))
    assert rf.tau.is_involution()
    sigma = set(build_roots(fam))
    assert {apply_tau(rf.tau, a) for a in sigma} == sigma

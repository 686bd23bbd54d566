import pytest
from hypothesis import given
from hypothesis import strategies as st

from superflag import Exceptional, Family, FlagType, build_roots, symmetry_profile, validate_flag_type
from superflag.algebra import EXCEPTIONAL_NAMES, is_chain, parse_family
from superflag.classify import enumerate_flag_types

from conftest import ft


def test_a21_root_count():
    roots = build_roots(Family.A(2, 1))
    # the 6 off-diagonal units of a 3x3 matrix: 2 inside gl(2), 4 odd
    assert len(roots) == 6
    assert sum(r.is_even for r in roots) == 2
    assert sum(r.is_odd for r in roots) == 4


def _p_odd_brute(n):
    """Weights of the odd blocks of p(n): Y skew (x_i + x_j, i < j... as lower), Z symmetric."""
    out = set()
    for i in range(n):
        for j in range(i, n):  # symmetric block: i <= j
            w = [0] * n
            w[i] += 1
            w[j] += 1
            out.add(tuple(w))
        for j in range(i + 1, n):  # skew block: i < j
            w = [0] * n
            w[i] -= 1
            w[j] -= 1
            out.add(tuple(w))
    return out


def test_p3_roots():
    roots = build_roots(Family.P(3))
    assert sum(r.is_even for r in roots) == 6
    odd = {tuple(r.weight.x) for r in roots if r.is_odd}
    assert len([r for r in roots if r.is_odd]) == 9
    assert odd == _p_odd_brute(3)


def test_q2_roots():
    roots = build_roots(Family("Q", 2))
    assert {(tuple(r.weight.x), r.parity) for r in roots} == {((1, -1), "both"), ((-1, 1), "both")}


@pytest.mark.parametrize("kind,params,n_even,n_odd", [
    ("A", "3,2", 3 * 2 + 2 * 1, 2 * 3 * 2),
    ("B", "1,1", 2 + 2, 4 + 2),  # +-x1, +-2y1 even; +-x1+-y1, +-y1 odd
    ("D", "2,1", 4 + 2, 8),
    ("C", "2", 2 * 2 * 2, 2 * 2 * 2),  # sp(4) has 8 roots; odd +-x1+-y_j
])
def test_root_counts(kind, params, n_even, n_odd):
    roots = build_roots(parse_family(kind, params))
    assert (sum(r.is_even for r in roots), sum(r.is_odd for r in roots)) == (n_even, n_odd)


def test_roots_closed_under_negation():
    # P is the exception: its odd roots are not symmetric
    for fam in (Family.A(2, 2), Family.B(2, 1), Family.C(2), Family.D(3, 1), Family("Q", 3)):
        ws = {(r.weight, r.parity) for r in build_roots(fam)}
        assert {(-w, p) for w, p in ws} == ws


def test_symmetry_profiles():
    p = symmetry_profile(Family.A(3, 1), ft("1|0,2|1"))
    assert p.even_sym
    p = symmetry_profile(Family.A(2, 2), ft("1|1"))
    assert p.pi_sym and p.odd_sym and p.even_sym
    p = symmetry_profile(Family.A(2, 2), ft("1|0"))
    assert not p.even_sym and p.even_symmetrizable
    assert is_chain(sorted({(1, 0), (2 - 1, 2 - 0)}))


def test_validation():
    v = validate_flag_type(Family.A(2, 2), ft("1|0,0|1"))
    assert not v.ok and "not a chain in the product order" in v.violations
    v = validate_flag_type(Family("Q", 3), ft("1|0"))
    assert not v.ok and any("d0 != d1" in s for s in v.violations)
    assert validate_flag_type(Family.P(4), ft("2|2")).ok
    assert not validate_flag_type(Family.A(2, 1), ft("2|1")).ok  # full space
    assert not validate_flag_type(Family.A(2, 1), FlagType(())).ok


def test_family_params():
    assert parse_family("C", "3") == Family.C(3)
    with pytest.raises(ValueError):
        Family("Z", 1)
    with pytest.raises(ValueError):
        Family.D(1, 1)
    assert "E7" in EXCEPTIONAL_NAMES
    Exceptional("E7")


@given(st.sampled_from([Family.A(2, 1), Family.A(2, 2), Family.B(1, 1), Family.C(2), Family.D(2, 1), Family.P(3)]),
       st.data())
def test_enumerated_types_are_valid_chains(fam, data):
    d = data.draw(st.sampled_from(enumerate_flag_types(fam)))
    assert validate_flag_type(fam, d).ok
    assert is_chain(d.steps)
    assert FlagType.parse(str(d)) == d

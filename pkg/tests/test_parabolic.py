from hypothesis import given
from hypothesis import strategies as st

from superflag import Family, FlagType, Root, Weight, build_roots, phi_sets, xi_from_flag
from superflag.classify import enumerate_flag_types
from superflag.parabolic import DEFAULT, FlagConvention, regular_refinement

from conftest import ft

FAMS = [Family.A(2, 1), Family.A(2, 2), Family.A(3, 1), Family.B(1, 1), Family.B(2, 1), Family.C(2),
        Family.D(2, 1), Family.D(3, 1), Family.P(3), Family("Q", 3)]


def _xi_count(fam, delta):
    """Type A: xi(x_i) = #steps (endpoint included) with d0 >= i."""
    steps = list(delta.steps) + [fam.endpoint]
    x = [sum(a >= i for a, _ in steps) for i in range(1, fam.n + 1)]
    y = [sum(b >= j for _, b in steps) for j in range(1, fam.m + 1)]
    return Weight(x, y)


def r(x, y, parity):
    return Root(Weight(x, y), parity)


def test_xi_a21():
    assert xi_from_flag(Family.A(2, 1), ft("1|0")) == Weight((2, 1), (1,))


def test_xi_matches_count_type_a():
    for fam in (Family.A(2, 1), Family.A(3, 2)):
        for d in enumerate_flag_types(fam):
            assert xi_from_flag(fam, d) == _xi_count(fam, d)


def test_xi_osp_is_lagrangian_count():
    # osp steps stop at the Lagrangian n|m; no endpoint term
    assert xi_from_flag(Family.B(2, 1), ft("1|0")) == Weight((1, 0), (0,))


def test_phi_a21_membership():
    ph = phi_sets(Family.A(2, 1), DEFAULT, ft("1|0"))
    assert r((-1, 0), (1,), "odd") not in ph.phi
    assert r((0, -1), (1,), "odd") in ph.phi


def test_complete_even_flag_regular():
    fam = Family.A(3, 0)
    ph = phi_sets(fam, DEFAULT, ft("1|0,2|0"))
    assert not ph.phi_r
    assert len(ph.phi) == 3  # upper triangular


def test_osp_raising_part_always_in_phi():
    for fam in (Family.B(2, 1), Family.C(2), Family.D(3, 1)):
        n, m = fam.dims
        for d in enumerate_flag_types(fam):
            ph = phi_sets(fam, DEFAULT, d)
            for i in range(n):
                for j in range(i + 1, n):
                    x = [0] * n
                    x[i] = x[j] = 1
                    assert r(x, [0] * m, "even") in ph.phi


def test_regular_refinement_is_regular():
    for fam in FAMS[:-2]:
        for d in enumerate_flag_types(fam)[:10]:
            xi = regular_refinement(fam, d)
            assert all(a.weight.evaluate(xi) != 0 for a in build_roots(fam))


@given(st.sampled_from(FAMS), st.booleans(), st.data())
def test_phi_partition(fam, rev, data):
    d = data.draw(st.sampled_from(enumerate_flag_types(fam)))
    conv = FlagConvention(reverse_y=rev)
    ph = phi_sets(fam, conv, d)
    sigma = set(build_roots(fam))
    ph.check(sigma)
    # Levi part is closed under negation, nilradical meets its negative nowhere
    assert all(-a in ph.phi_r for a in ph.phi_r)
    assert not any(-a in ph.phi for a in ph.phi_n)

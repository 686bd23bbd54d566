import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superflag import Family, FlagType, Root, Weight, build_roots, inner, phi_sets
from superflag.dft import (CATALOG, DFTCase, apply_word, dft_case, dft_injectivity_sufficient, dft_report,
                           distinguished_flag, dominant, dominant_dot_conjugate, even_weyl_group, genericity,
                           integral_dominant, is_typical, longest_word, pair, reflect, relative_roots,
                           relative_weights, rho, type_II_double_transform, w0_dot, weyl_length)
from superflag.parabolic import DEFAULT

from conftest import ft

A21 = Family.A(2, 1)
ints = st.integers(-6, 6)


def w(x, y=()):
    return Weight(x, y)


def half_sum(ws, dims):
    tot = Weight.zero(*dims)
    for v in ws:
        tot = tot + v
    return tot.scale(F(1, 2))


# ---------------------------------------------------------------- rho


def test_rho_a21_distinguished():
    ps = rho(A21, distinguished_flag(A21))
    assert distinguished_flag(A21) == ft("1|0,2|0")
    # Sigma+ by hand: x1-x2 even; x1-y1, x2-y1 odd
    assert ps.rho0 == half_sum([w((1, -1), (0,))], (2, 1)) == w((F(1, 2), F(-1, 2)), (0,))
    assert ps.rho1 == half_sum([w((1, 0), (-1,)), w((0, 1), (-1,))], (2, 1)) == w((F(1, 2), F(1, 2)), (-1,))
    assert ps.rho == w((0, -1), (1,))


def test_rho_b11():
    ps = rho(Family.B(1, 1), ft("1|0,1|1"))
    assert {(a.weight, a.parity) for a in ps.positive} == {
        (w((1,), (0,)), "even"), (w((0,), (2,)), "even"),
        (w((0,), (1,)), "odd"), (w((1,), (1,)), "odd"), (w((1,), (-1,)), "odd")}
    assert ps.rho0 == w((F(1, 2),), (1,))
    assert ps.rho1 == w((1,), (F(1, 2),))


def test_rho_rejects_non_regular_and_pq():
    with pytest.raises(ValueError, match="not regular"):
        rho(A21, ft("1|0"))
    with pytest.raises(ValueError):
        rho(Family.P(3), ft("1|0"))


@given(st.permutations(range(3)))
def test_rho_order_independent(perm):
    ps = rho(A21, distinguished_flag(A21))
    pos = [ps.positive[i] for i in perm]
    assert half_sum([a.weight for a in pos if a.parity == "even"], (2, 1)) == ps.rho0


# ---------------------------------------------------------------- typicality


@given(st.lists(ints, min_size=3, max_size=3))
def test_type_a_anisotropic_typical_always(v):
    assert is_typical(A21, w(v[:2], v[2:]))


def test_b_zero_atypical():
    assert not is_typical(Family.B(1, 1), Weight.zero(1, 1))


@given(st.lists(ints, min_size=3, max_size=3))
def test_standard_typicality_brute(v):
    lam = w(v[:2], v[2:])
    ps = rho(A21, distinguished_flag(A21))
    shifted = lam + ps.rho
    odd = [w((1, 0), (-1,)), w((0, 1), (-1,)), w((-1, 0), (1,)), w((0, -1), (1,))]
    brute = all(shifted.x[0] * g.x[0] + shifted.x[1] * g.x[1] - shifted.y[0] * g.y[0] != 0 for g in odd)
    assert is_typical(A21, lam, "standard_isotropic", ps) == brute


# ---------------------------------------------------------------- genericity


def test_wall_not_gamma_plus():
    ps = rho(A21, distinguished_flag(A21))
    # lam - 0 lies on the wall of x1 - x2
    assert not genericity(A21, w((3, 3), (0,)), ps).gamma_plus


def test_large_dominant_generic():
    ps = rho(A21, distinguished_flag(A21))
    # N = 4 found by search; the odd subset sums shift x1-x2 pairings by at most 1
    for N in (4, 10):
        g = genericity(A21, w((N, 0), (0,)), ps)
        assert g.gamma_plus and g.gamma_tilde and g.generic
    assert not genericity(A21, w((1, 0), (0,)), ps).gamma_plus


@given(st.lists(ints, min_size=3, max_size=3))
def test_tilde_implies_plus(v):
    ps = rho(A21, distinguished_flag(A21))
    g = genericity(A21, w(v[:2], v[2:]), ps)
    assert not g.gamma_tilde or g.gamma_plus
    assert not g.generic or g.gamma_tilde


# ---------------------------------------------------------------- relative weights


def _brute_relative(elems, s, dims):
    ev = [a.weight for a in elems if a.parity == "even"]
    od = [a.weight for a in elems if a.parity != "even"]
    out = set()
    for k in range(s + 1):
        for a in range(k + 1):
            for E in itertools.combinations(ev, a):
                for O in itertools.combinations_with_replacement(od, k - a):
                    tot = Weight.zero(*dims)
                    for v in E + O:
                        tot = tot + v
                    out.add(tot)
    return out


def _a21_borel():
    ph = phi_sets(A21, DEFAULT, distinguished_flag(A21))
    sigma0 = {a for a in build_roots(A21) if a.parity == "even"}
    return ph, sigma0


def test_relative_weights_small_s():
    ph, sigma0 = _a21_borel()
    assert relative_weights(ph, sigma0, 0) == {Weight.zero(2, 1)}
    rel = relative_roots(ph, sigma0)
    assert relative_weights(ph, sigma0, 1) == {a.weight for a in rel} | {Weight.zero(2, 1)}
    assert all(Root(-a.weight, a.parity) in ph.phi for a in rel)


@pytest.mark.parametrize("s,card", [(0, 1), (1, 3), (2, 6), (3, 10)])
def test_relative_weights_cardinality(s, card):
    ph, sigma0 = _a21_borel()
    got = relative_weights(ph, sigma0, s)
    assert got == _brute_relative(relative_roots(ph, sigma0), s, (2, 1))
    assert len(got) == card


def test_relative_weights_limit(monkeypatch):
    ph, sigma0 = _a21_borel()
    monkeypatch.setenv("SUPERFLAG_DFT_MAX_S", "2")
    with pytest.raises(ValueError, match="exceeds the bound 2"):
        relative_weights(ph, sigma0, 3)
    with pytest.raises(ValueError):
        relative_weights(ph, sigma0, -1)


# ---------------------------------------------------------------- Weyl group


def test_dot_identity_and_wall():
    ps = rho(A21, distinguished_flag(A21))
    lam = w((3, 0), (0,))
    d = dominant_dot_conjugate(A21, lam, ps)
    assert (d.singular, d.w_length, d.Lambda) == (False, 0, lam)
    # lam + rho = (1, 1 | 1) lies on the x1 = x2 wall
    assert dominant_dot_conjugate(A21, w((1, 2), (0,)), ps).singular


def test_weyl_group_orders():
    assert len(even_weyl_group(A21)) == 2
    assert len(even_weyl_group(Family.B(1, 1))) == 4
    assert len(even_weyl_group(Family.D(2, 1))) == 8  # W(D2) x W(C1)
    assert len(even_weyl_group(Family.C(2))) == 8


def _brute_dot(fam, lam, ps):
    v = lam + ps.rho
    hits = [(g, g(v)) for g in even_weyl_group(fam)
            if all(pair(g(v), a.weight) > 0 for a in ps.even)]
    if not hits:
        return None
    (g, top), = hits
    return weyl_length(g, ps.even), top - ps.rho


@given(st.sampled_from([(A21, "1|0,2|0"), (Family.A(3, 1), "1|0,2|0,3|0"), (Family.B(1, 1), "1|0,1|1"),
                        (Family.C(2), "1|0,1|1,1|2"), (Family.D(2, 1), "0|1,1|1,2|1")]), st.data())
def test_dot_conjugate_brute(case, data):
    fam, d = case
    ps = rho(fam, ft(d))
    n, m = fam.dims
    lam = w(data.draw(st.lists(ints, min_size=n, max_size=n)), data.draw(st.lists(ints, min_size=m, max_size=m)))
    got = dominant_dot_conjugate(fam, lam, ps)
    want = _brute_dot(fam, lam, ps)
    if want is None:
        assert got.singular
    else:
        assert (got.w_length, got.Lambda) == want


def test_longest_word_length():
    ps = rho(Family.C(2), ft("1|0,1|1,1|2"))
    word = longest_word(ps.even, (1, 2))
    assert len(word) == len(ps.even) == 4
    assert apply_word(word, ps.rho0) == -ps.rho0


def test_reflect_involutive():
    a = w((0,), (2,))
    mu = w((3,), (5,))
    assert reflect(reflect(mu, a), a) == mu
    assert reflect(a, a) == -a


# ---------------------------------------------------------------- cases


def test_catalog_builds():
    for name, fam in CATALOG:
        case = dft_case(name, fam)
        assert isinstance(case, DFTCase)
        assert case.r_plus_k <= case.sigma_k


def test_case_errors():
    with pytest.raises(ValueError, match="uncatalogued"):
        dft_case("usp:2")
    with pytest.raises(ValueError, match="needs a family"):
        dft_case("g0")
    with pytest.raises(ValueError):
        dft_case("g0", Family("Q", 3))


def test_typical_levi_enforced():
    # the distinguished A(2|1) Borel keeps no Levi; the flag 1|1 keeps x1 - y1 in the Levi of M
    with pytest.raises(ValueError, match="typical Levi"):
        dft_case("su:1,1|1,1", delta=ft("1|1"))


def test_parities():
    assert dft_case("son2_sp22m:1,1").cycle_parity == "type_II"
    assert dft_case("son2_sp22m:2,1").cycle_parity == "type_I"
    assert dft_case("cartan:su:2,1|1,1").cycle_parity == "purely_even"


def test_injectivity_examples():
    case = dft_case("su:1,1|1,0")
    assert not dft_injectivity_sufficient(case, Weight.zero(2, 1), 2)
    assert dft_injectivity_sufficient(case, w((-3, -5), (4,)), 2, "even")
    with pytest.raises(ValueError):
        dft_injectivity_sufficient(case, Weight.zero(2, 1), 2, "odd")


def test_purely_even_s0_classical():
    case = dft_case("cartan:su:2,1|1,1")
    rng = random.Random(1)
    n, m = case.fam.dims
    for _ in range(50):
        lam = w([rng.randint(-5, 5) for _ in range(n)], [rng.randint(-5, 5) for _ in range(m)])
        classical = all(pair(lam + case.rho_k, g.weight) < 0 for g in case.r_plus_k)
        assert dft_injectivity_sufficient(case, lam, 0) == classical


def test_large_negative_shift_injective():
    for name, fam in CATALOG:
        case = dft_case(name, fam)
        if not case.r_plus_k:
            continue
        direction = case.k_positive.rho0 + case.positive.rho0.scale(F(1, 10))
        lam = direction.scale(-40)
        assert dft_injectivity_sufficient(case, lam, 1, "even"), name


TYPE_II = [dft_case("son2_sp22m:1,1"), dft_case("son_sp22m:3,1"), dft_case("son_sp22m:1,1")]


@given(st.sampled_from(TYPE_II), st.data())
def test_double_iff_conjunction(case, data):
    n, m = case.fam.dims
    lam = w(data.draw(st.lists(ints, min_size=n, max_size=n)), data.draw(st.lists(ints, min_size=m, max_size=m)))
    t = type_II_double_transform(case, lam)
    atyp = any(inner(lam, g.weight) == 0 for g in case.k_odd if inner(g.weight, g.weight) != 0)
    dom = integral_dominant(w0_dot(case, lam), case.k_positive.even)
    assert (t.kind == "double") == (atyp and dom)
    if not atyp:
        assert t.kind == "single"


def test_double_occurs():
    case = TYPE_II[1]
    rng = random.Random(0)
    n, m = case.fam.dims
    kinds = set()
    for _ in range(400):
        lam = w([rng.randint(-4, 4) for _ in range(n)], [rng.randint(-4, 4) for _ in range(m)])
        kinds.add(type_II_double_transform(case, lam).kind)
    assert kinds == {"single", "double"}


def test_type_ii_only():
    with pytest.raises(ValueError):
        type_II_double_transform(dft_case("su:1,1|1,0"), Weight.zero(2, 1))


def test_report_keys():
    rep = dft_report(TYPE_II[0], Weight.zero(*TYPE_II[0].fam.dims), 1)
    assert {"injective_sufficient", "injective_sufficient_even", "typical_anisotropic", "typical_isotropic",
            "genericity", "dominant_conjugate", "type_II_transform"} <= set(rep)
    with pytest.raises(ValueError):
        dft_report(TYPE_II[0], Weight.zero(1, 1), 1)


@given(st.sampled_from(CATALOG), st.data())
def test_dominant_shift_antitone(entry, data):
    case = dft_case(*entry)
    n, m = case.fam.dims
    lam = w(data.draw(st.lists(ints, min_size=n, max_size=n)), data.draw(st.lists(ints, min_size=m, max_size=m)))
    mu = w(data.draw(st.lists(st.integers(0, 4), min_size=n, max_size=n)),
           data.draw(st.lists(st.integers(0, 4), min_size=m, max_size=m)))
    if not dominant(case, mu):
        return
    for g in ("all", "even"):
        if dft_injectivity_sufficient(case, lam, 1, g):
            assert dft_injectivity_sufficient(case, lam - mu, 1, g)

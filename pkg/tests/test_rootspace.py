from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from superflag import Family, FlagType, Root, Weight, build_roots, graded_sum, inner, phi_sets
from superflag.classify import vanishes_on_cartan
from superflag.parabolic import DEFAULT
from superflag.rootspace import fmt_rational

rats = st.fractions(min_value=-50, max_value=50, max_denominator=6)


@st.composite
def weight_pairs(draw):
    n, m = draw(st.integers(1, 3)), draw(st.integers(0, 3))
    w = lambda: Weight(draw(st.lists(rats, min_size=n, max_size=n)), draw(st.lists(rats, min_size=m, max_size=m)))
    return w(), w(), w()


def test_form_signs():
    x1, y1 = Weight((1,), (0,)), Weight((0,), (1,))
    assert inner(x1, x1) == 1
    assert inner(y1, y1) == -1


def test_type_a_odd_roots_isotropic():
    d = Weight((1,), (-1,))
    # 1*1 on x minus (-1)(-1) on y
    assert inner(d, d) == 1 * 1 - (-1) * (-1) == 0
    for fam in (Family.A(2, 1), Family.A(3, 2)):
        assert all(inner(r.weight, r.weight) == 0 for r in build_roots(fam) if r.is_odd)


def test_graded_sum_empty():
    assert graded_sum([], (2, 1)).is_zero()


def test_graded_sum_q_cancels():
    fam = Family("Q", 3)
    assert graded_sum(build_roots(fam), fam.dims).is_zero()


def test_psl_projective_space_complement_vanishes_on_cartan():
    for n in (2, 3):
        fam = Family.A(n, n)
        ph = phi_sets(fam, DEFAULT, FlagType.parse("1|0"))
        s = graded_sum(ph.phi_c, fam.dims)
        assert s == Weight([1] * n, [-1] * n)  # the supertrace
        assert vanishes_on_cartan(fam, s)


def test_fmt_rational_canonical():
    assert fmt_rational(Fraction(4, 2)) == "2"
    assert fmt_rational(Fraction(-1, 2)) == "-1/2"


def test_dimension_mismatch_rejected():
    import pytest

    with pytest.raises(ValueError):
        Weight((1,), ()) + Weight((1, 2), ())


def test_root_parity_checked():
    import pytest

    with pytest.raises(ValueError):
        Root(Weight((1,)), "sideways")


@given(weight_pairs())
def test_inner_symmetric_bilinear(t):
    a, b, c = t
    assert inner(a, b) == inner(b, a)
    assert inner(a + b, c) == inner(a, c) + inner(b, c)
    assert inner(a.scale(3), b) == 3 * inner(a, b)


@given(weight_pairs())
def test_weight_group_and_json(t):
    a, b, _ = t
    assert a + b == b + a
    assert (a - a).is_zero()
    assert Weight.from_json(a.to_json()) == a

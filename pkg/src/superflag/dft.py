"""Weight-level data for the Double Fibration Transform.

Rho vectors, typicality, genericity, the relative-forms weight set, the
sufficient-negativity injectivity test and dot-action Weyl descents.  The
cycle data (K-roots, stabilizer roots) is tabulated per case; nothing here
implements the Cartan involution itself.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Family, FlagType, build_roots, require_valid, validate_flag_type
from .parabolic import PhiSets, phi_sets, xi_from_flag, DEFAULT
from .realform import TauAction
from .rootspace import Root, Weight, inner, sort_roots

HALF = Fraction(1, 2)


def _require_weyl(fam: Family):
    if fam.kind in "PQ":
        raise ValueError(f"{fam}: Weyl data for P and Q is not catalogued")


def pair(mu: Weight, gamma: Weight) -> Fraction:
    """Coroot pairing for anisotropic gamma, the plain form for isotropic gamma."""
    g = inner(gamma, gamma)
    return inner(mu, gamma) if g == 0 else 2 * inner(mu, gamma) / g


def _half_sum(roots, dims) -> Weight:
    total = Weight.zero(*dims)
    for r in roots:
        total = total + r.weight
    return total.scale(HALF)


# ---------------------------------------------------------------- positive systems


@dataclass(frozen=True)
class PositiveSystem:
    fam: Family
    xi: Weight
    positive: tuple[Root, ...]
    rho0: Weight
    rho1: Weight

    @property
    def rho(self) -> Weight:
        return self.rho0 - self.rho1

    @property
    def even(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive if r.parity == "even")

    @property
    def odd(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive if r.parity == "odd")

    def restrict(self, roots) -> "PositiveSystem":
        """The positive system cut down to a root subsystem."""
        keep = frozenset(roots)
        pos = tuple(r for r in self.positive if r in keep)
        dims = self.fam.dims
        return PositiveSystem(
            self.fam, self.xi, pos,
            _half_sum((r for r in pos if r.parity == "even"), dims),
            _half_sum((r for r in pos if r.parity == "odd"), dims),
        )

    def to_json(self) -> dict:
        return {
            "family": self.fam.label(),
            "xi": self.xi.to_json(),
            "rho0": self.rho0.to_json(),
            "rho1": self.rho1.to_json(),
            "rho": self.rho.to_json(),
        }


def distinguished_flag(fam: Family) -> FlagType:
    """Full flag of the distinguished Borel (a single odd simple root)."""
    _require_weyl(fam)
    n, m = fam.dims
    if fam.kind == "A":
        steps = [(i, 0) for i in range(1, n + 1)] + [(n, j) for j in range(1, m)]
    elif fam.kind == "C":
        steps = [(1, 0)] + [(1, j) for j in range(1, m + 1)]
    else:
        steps = [(0, j) for j in range(1, m + 1)] + [(i, m) for i in range(1, n + 1)]
    return FlagType(tuple(s for s in steps if s != fam.endpoint or fam.is_osp))


def rho(fam: Family, borel: FlagType | Weight) -> PositiveSystem:
    """Sigma+ = {alpha : alpha(xi) > 0} for the level functional of a full flag."""
    _require_weyl(fam)
    xi = borel if isinstance(borel, Weight) else xi_from_flag(fam, borel, DEFAULT)
    sigma = build_roots(fam)
    flat = [a for a in sigma if a.weight.evaluate(xi) == 0]
    if flat:
        raise ValueError(f"{borel} is not regular: {flat[0]} vanishes on it")
    pos = tuple(sort_roots(a for a in sigma if a.weight.evaluate(xi) > 0))
    return PositiveSystem(
        fam, xi, pos,
        _half_sum((r for r in pos if r.parity == "even"), fam.dims),
        _half_sum((r for r in pos if r.parity == "odd"), fam.dims),
    )


# ---------------------------------------------------------------- typicality


def is_typical(fam: Family, lam: Weight, variant: str = "anisotropic",
               positive: PositiveSystem | None = None, odd_roots=None) -> bool:
    """anisotropic: <lam, g> != 0 on anisotropic odd g.
    standard_isotropic: <lam + rho, g> != 0 on isotropic odd g.
    ``odd_roots`` restricts the test to a subalgebra's odd roots."""
    _require_weyl(fam)
    if lam.dims != fam.dims:
        raise ValueError(f"weight has lengths {lam.dims}, {fam} expects {fam.dims}")
    odd = [a for a in (odd_roots if odd_roots is not None else build_roots(fam)) if a.parity == "odd"]
    if variant == "anisotropic":
        return all(inner(lam, g.weight) != 0 for g in odd if inner(g.weight, g.weight) != 0)
    if variant == "standard_isotropic":
        ps = positive or rho(fam, distinguished_flag(fam))
        shifted = lam + ps.rho
        return all(inner(shifted, g.weight) != 0 for g in odd if inner(g.weight, g.weight) == 0)
    raise ValueError(f"unknown typicality variant {variant!r}")


# ---------------------------------------------------------------- genericity


def simple_roots(pos_even) -> tuple[Root, ...]:
    """Indecomposable elements of a positive even system."""
    pos = list(pos_even)
    sums = {a.weight + b.weight for a, b in itertools.combinations(pos, 2)}
    return tuple(a for a in pos if a.weight not in sums)


def _subset_sums(weights, dims) -> frozenset:
    out = {Weight.zero(*dims)}
    for w in weights:
        out |= {s + w for s in out}
    return frozenset(out)


def _chamber(mu: Weight, simple) -> tuple[int, ...] | None:
    signs = []
    for a in simple:
        p = pair(mu, a.weight)
        if p == 0:
            return None
        signs.append(1 if p > 0 else -1)
    return tuple(signs)


def _same_chamber(points, simple) -> bool:
    seen = None
    for mu in points:
        c = _chamber(mu, simple)
        if c is None or (seen is not None and c != seen):
            return False
        seen = c
    return True


@dataclass(frozen=True)
class Genericity:
    gamma_plus: bool
    gamma_tilde: bool
    generic: bool

    def to_json(self):
        return {"gamma_plus": self.gamma_plus, "gamma_tilde": self.gamma_tilde, "generic": self.generic}


def genericity(fam: Family, lam: Weight, positive: PositiveSystem) -> Genericity:
    dims = fam.dims
    simple = simple_roots(positive.even)
    g_plus = _subset_sums([a.weight for a in positive.odd], dims)
    g_tilde = _subset_sums([a.weight for a in build_roots(fam) if a.parity == "odd"], dims)
    tilde_ok = lambda mu: _same_chamber((mu - g for g in g_tilde), simple)
    plus = _same_chamber((lam - g for g in g_plus), simple)
    return Genericity(plus, tilde_ok(lam), all(tilde_ok(lam - g) for g in g_plus))


# ---------------------------------------------------------------- relative forms


def _max_s() -> int:
    return int(os.environ.get("SUPERFLAG_DFT_MAX_S", "6"))


def relative_estimate(n_even: int, n_odd: int, s: int) -> int:
    """Upper bound on the number of multisets behind relative_weights."""
    return sum(math.comb(n_even, a) * math.comb(n_odd + b - 1, b) if n_odd or b == 0 else 0
               for a in range(s + 1) for b in range(s + 1 - a))


def relative_roots(phi_p: PhiSets, phi_j) -> tuple[Root, ...]:
    phi_j = frozenset(phi_j)
    return tuple(sort_roots(Root(-a.weight, a.parity) for a in phi_p.phi if a not in phi_j))


def relative_weights(phi_p: PhiSets, phi_j, s: int, max_s: int | None = None) -> frozenset:
    """Sums of at most s negated relative roots; even ones at most once."""
    elems = relative_roots(phi_p, phi_j)
    limit = _max_s() if max_s is None else max_s
    if s < 0:
        raise ValueError("s must be non-negative")
    even = [a.weight for a in elems if a.parity == "even"]
    odd = [a.weight for a in elems if a.parity != "even"]
    if s > limit:
        est = relative_estimate(len(even), len(odd), s)
        raise ValueError(f"s = {s} exceeds the bound {limit} (up to {est} multisets)")
    dims = next(iter(phi_p.phi | phi_p.phi_c)).weight.dims
    states = {(Weight.zero(*dims), 0)}
    for w in even:
        states |= {(v + w, c + 1) for v, c in states if c < s}
    for w in odd:
        frontier = states
        for _ in range(s):
            frontier = {(v + w, c + 1) for v, c in frontier if c < s}
            if not frontier:
                break
            states |= frontier
    return frozenset(v for v, _ in states)


# ---------------------------------------------------------------- Weyl group


def reflect(mu: Weight, alpha: Weight) -> Weight:
    return mu - alpha.scale(pair(mu, alpha))


def _descend(v: Weight, pos_even) -> tuple[tuple[Weight, ...], Weight]:
    """Reflect in simple roots until v pairs non-negatively with all of them."""
    simple = [a.weight for a in simple_roots(pos_even)]
    word: list[Weight] = []
    while True:
        bad = next((a for a in simple if pair(v, a) < 0), None)
        if bad is None:
            return tuple(word), v
        v = reflect(v, bad)
        word.append(bad)


def apply_word(word, mu: Weight) -> Weight:
    for a in word:
        mu = reflect(mu, a)
    return mu


@dataclass(frozen=True)
class DotConjugate:
    singular: bool
    w_length: int | None = None
    Lambda: Weight | None = None

    def to_json(self):
        if self.singular:
            return {"singular": True}
        return {"singular": False, "w_length": self.w_length, "Lambda": self.Lambda.to_json()}


def dominant_dot_conjugate(fam: Family, lam: Weight, positive: PositiveSystem,
                           rho_vec: Weight | None = None) -> DotConjugate:
    """The w with w(lam + rho) strictly dominant; Lambda = w(lam + rho) - rho."""
    _require_weyl(fam)
    r = positive.rho if rho_vec is None else rho_vec
    v = lam + r
    if any(pair(v, a.weight) == 0 for a in positive.even):
        return DotConjugate(True)
    word, top = _descend(v, positive.even)
    return DotConjugate(False, len(word), top - r)


def even_weyl_group(fam: Family) -> list[TauAction]:
    """Every element of the even Weyl group as a signed permutation."""
    _require_weyl(fam)
    n, m = fam.dims

    def signed(block, size, signs_ok):
        for perm in itertools.permutations(range(1, size + 1)):
            for signs in itertools.product((1, -1), repeat=size):
                if signs_ok(signs):
                    yield tuple((s, block, p) for s, p in zip(signs, perm))

    def plain(block, size):
        for perm in itertools.permutations(range(1, size + 1)):
            yield tuple((1, block, p) for p in perm)

    all_signs = lambda s: True
    if fam.kind == "A":
        xs, ys = list(plain("x", n)), list(plain("y", m))
    elif fam.kind == "B":
        xs, ys = list(signed("x", n, all_signs)), list(signed("y", m, all_signs))
    elif fam.kind == "C":
        xs, ys = [((1, "x", 1),)], list(signed("y", m, all_signs))
    else:
        even_flips = lambda s: s.count(-1) % 2 == 0
        xs, ys = list(signed("x", n, even_flips)), list(signed("y", m, all_signs))
    return [TauAction(x, y) for x in xs for y in ys]


def weyl_length(w: TauAction, pos_even) -> int:
    pos = {a.weight for a in pos_even}
    return sum(1 for a in pos if w(a) not in pos)


def longest_word(pos_even, dims) -> tuple[Weight, ...]:
    """Reduced word of the longest element: the descent carrying -rho0 to rho0."""
    r0 = _half_sum(pos_even, dims)
    word, top = _descend(-r0, pos_even)
    assert top == r0
    return word


# ---------------------------------------------------------------- cases

PARITIES = ("purely_even", "type_I", "type_II")


@dataclass(frozen=True)
class DFTCase:
    name: str
    fam: Family
    rf: str
    delta: FlagType
    cycle_parity: str
    sigma_k: frozenset
    phi_j: frozenset
    r_plus_k: frozenset
    positive: PositiveSystem
    rho_k: Weight
    gamma_sigma: Root | None = None

    def __post_init__(self):
        assert self.cycle_parity in PARITIES
        assert self.r_plus_k <= self.sigma_k
        if self.cycle_parity == "purely_even":
            assert all(a.parity == "even" for a in self.sigma_k)

    @property
    def k_positive(self) -> PositiveSystem:
        return self.positive.restrict(self.sigma_k)

    @property
    def k_odd(self) -> tuple[Root, ...]:
        return tuple(sort_roots(a for a in self.sigma_k if a.parity == "odd"))

    def to_json(self) -> dict:
        return {
            "case": self.name,
            "family": self.fam.label(),
            "real_form": self.rf,
            "delta": self.delta.to_json(),
            "cycle_parity": self.cycle_parity,
            "rho_k": self.rho_k.to_json(),
            "gamma_sigma": self.gamma_sigma.to_json() if self.gamma_sigma else None,
            "r_plus_k": [a.to_json() for a in sort_roots(self.r_plus_k)],
        }


def _osp_family(k0: int, m: int) -> Family:
    if k0 % 2:
        return Family.B((k0 - 1) // 2, m)
    if k0 == 2:
        return Family.C(m)
    return Family.D(k0 // 2, m)


def _support(a: Root) -> set:
    return {("x", i) for i, c in enumerate(a.weight.x, 1) if c} | {("y", j) for j, c in enumerate(a.weight.y, 1) if c}


def _short(a: Root) -> bool:
    cs = [c for c in a.weight.coords() if c]
    return len(cs) == 1 and abs(cs[0]) == 1


def _within(sigma, block, keep=lambda a: True):
    return {a for a in sigma if _support(a) <= block and keep(a)}


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace("|", ",").split(",") if t.strip()]


def _case_data(name: str, fam: Family | None):
    """(family, real form name, parity, Sigma(k), gamma_sigma) for a case name."""
    head, _, rest = name.partition(":")
    X = lambda *idx: {("x", i) for i in idx}
    Y = lambda *idx: {("y", j) for j in idx}
    even = lambda a: a.parity == "even"
    if head == "g0":
        if fam is None:
            raise ValueError("case g0 needs a family")
        _require_weyl(fam)
        return fam, "compact even real form", "purely_even", {a for a in build_roots(fam) if even(a)}, None
    if head == "su":
        p, q, r, s = _ints(rest)
        f = Family.A(p + q, r + s)
        b1, b2 = X(*range(1, p + 1)) | Y(*range(1, r + 1)), X(*range(p + 1, p + q + 1)) | Y(*range(r + 1, r + s + 1))
        sig = build_roots(f)
        return f, f"su({p},{q}|{r},{s})", "type_I", _within(sig, b1) | _within(sig, b2), None
    if head == "cartan":
        sub, _, rest = rest.partition(":")
        if sub == "su":
            f, rf, _, sk, _ = _case_data("su:" + rest, None)
            return f, rf, "purely_even", {a for a in sk if even(a)}, None
        if sub == "ospstar":
            n, r, s = _ints(rest)
            f = _osp_family(2 * n, r + s)
            sig = build_roots(f)
            xs = {a for a in sig if even(a) and _support(a) <= X(*range(1, n + 1)) and sum(a.weight.x) == 0}
            ys = _within(sig, Y(*range(1, r + 1)), even) | _within(sig, Y(*range(r + 1, r + s + 1)), even)
            return f, f"so*({2 * n})+sp({2 * r},{2 * s})", "purely_even", xs | ys, None
    if head == "sostar":
        n, m = _ints(rest)
        f = _osp_family(2 * n, m)
        sk = {a for a in build_roots(f) if sum(a.weight.coords()) == 0}
        return f, f"so*({2 * n})+sp({2 * m};R)", "type_I", sk, None
    if head in ("son2_sp22m", "son2_sp2m", "son_sp22m"):
        N, m = _ints(rest)
        if N < 1:
            raise ValueError("N must be positive")
        if head == "son2_sp22m":
            # Osp(N|2) x Osp(2|2m) inside Osp(N+2|2m+2)
            f = _osp_family(N + 2, m + 1)
            s1 = X(*range(2, f.n + 1)) | Y(1)
            s2 = X(1) | Y(*range(2, m + 2))
            parity = "type_II" if N % 2 else "type_I"
            rf = f"so({N},2)+sp(2,{2 * m})"
        elif head == "son2_sp2m":
            # SO(N) x Osp(2|2m) inside Osp(N+2|2m)
            f = _osp_family(N + 2, m)
            s1 = X(*range(2, f.n + 1))
            s2 = X(1) | Y(*range(1, m + 1))
            parity = "type_I"
            rf = f"so({N},2)+sp({2 * m})"
        else:
            # Osp(N|2) x Sp(2m) inside Osp(N|2m+2)
            f = _osp_family(N, m + 1)
            s1 = X(*range(1, f.n + 1)) | Y(1)
            s2 = Y(*range(2, m + 2))
            parity = "type_II" if N % 2 else "type_I"
            rf = f"so({N})+sp(2,{2 * m})"
        sig = build_roots(f)
        if head == "son2_sp2m":
            k1 = _within(sig, s1, even)
        else:
            k1 = _within(sig, s1)
        k2 = _within(sig, s2, (lambda a: not _short(a)) if head != "son_sp22m" else even)
        gs = None
        if parity == "type_II":
            gs = Root(Weight.unit(f.n, f.m, "y", 1, 2), "even")
        return f, rf, parity, k1 | k2, gs
    raise ValueError(f"uncatalogued DFT case {name!r}; known: {', '.join(CASE_PATTERNS)}")


CASE_PATTERNS = (
    "g0", "su:p,q|r,s", "cartan:su:p,q|r,s", "cartan:ospstar:n,r,s",
    "sostar:n,m", "son2_sp22m:N,m", "son2_sp2m:N,m", "son_sp22m:N,m",
)

# one small instance per pattern; used by the acceptance sweep
CATALOG = (
    ("g0", Family.A(2, 1)), ("g0", Family.B(1, 1)),
    ("su:1,1|1,0", None), ("su:1,1|1,1", None), ("cartan:su:2,1|1,1", None),
    ("cartan:ospstar:2,1,1", None), ("sostar:2,1", None),
    ("son2_sp22m:1,1", None), ("son2_sp22m:2,1", None),
    ("son2_sp2m:1,1", None), ("son_sp22m:3,1", None), ("son_sp22m:1,1", None),
)


def x_first_flag(fam: Family) -> FlagType | None:
    """1|0, ..., n|0, n|1, ..., n|m when that is a valid full flag."""
    n, m = fam.dims
    steps = tuple((i, 0) for i in range(1, n + 1)) + tuple((n, j) for j in range(1, m + 1))
    cand = FlagType(tuple(st for st in steps if st != fam.endpoint or fam.is_osp))
    if not validate_flag_type(fam, cand).ok or not _is_full(fam, cand):
        return None
    return cand


def default_delta(fam: Family, parity: str) -> FlagType:
    """Type II cycles get the distinguished Borel, where atypical double
    transforms occur.  Elsewhere the x-first flag, whose dominant cone on
    the cycle roots is wide; the distinguished one if that is invalid."""
    if parity == "type_II":
        return distinguished_flag(fam)
    return x_first_flag(fam) or distinguished_flag(fam)


def dft_case(name: str, fam: Family | None = None, delta: FlagType | None = None) -> DFTCase:
    f, rf, parity, sk, gs = _case_data(name.strip(), fam)
    delta = delta or default_delta(f, parity)
    require_valid(f, delta)
    ps = rho(f, delta) if _is_full(f, delta) else rho(f, _refine(f, delta))
    ph = phi_sets(f, DEFAULT, delta)
    sk = frozenset(sk)
    levi_odd = [a for a in ph.phi_r & sk if a.parity == "odd" and inner(a.weight, a.weight) == 0]
    if levi_odd:
        raise ValueError(f"M does not have typical Levi part: {levi_odd[0]} lies in it")
    kp = ps.restrict(sk)
    rho_k = kp.rho0 if parity == "purely_even" else kp.rho
    return DFTCase(name, f, rf, delta, parity, sk, sk, frozenset(ph.phi_n & sk), ps, rho_k, gs)


def _is_full(fam, delta) -> bool:
    xi = xi_from_flag(fam, delta, DEFAULT)
    return all(a.weight.evaluate(xi) != 0 for a in build_roots(fam))


def _refine(fam, delta):
    from .parabolic import regular_refinement

    return regular_refinement(fam, delta, DEFAULT)


# ---------------------------------------------------------------- injectivity


def _typical_in_k(case: DFTCase, mu: Weight) -> bool:
    return is_typical(case.fam, mu, "anisotropic", odd_roots=case.k_odd)


@lru_cache(maxsize=256)
def _case_weights(case: DFTCase, s: int) -> tuple[Weight, ...]:
    return tuple(sorted(relative_weights(case_phi(case), case.phi_j, s)))


def dft_injectivity_sufficient(case: DFTCase, lam: Weight, s: int, gammas: str = "all") -> bool:
    """<lam + beta + rho_k, g> < 0 for every beta in M and g in r+ cap k.

    gammas="even" keeps only the even g, the ones that fix the cohomological
    degree on the cycle.  The full test can be unsatisfiable: with y-first
    Borels the isotropic y +- x and the coroot of 2y pull in opposite ways.
    """
    if gammas not in ("all", "even"):
        raise ValueError("gammas must be 'all' or 'even'")
    M = _case_weights(case, s)
    gs = [g.weight for g in case.r_plus_k if gammas == "all" or g.parity == "even"]
    for beta in M:
        shifted = lam + beta + case.rho_k
        if any(pair(shifted, g) >= 0 for g in gs):
            return False
        if case.cycle_parity == "type_II":
            if not _typical_in_k(case, lam + beta) and pair(shifted, case.gamma_sigma.weight) < 0:
                return False
    return True


def case_phi(case: DFTCase) -> PhiSets:
    return phi_sets(case.fam, DEFAULT, case.delta)


def dominant(case: DFTCase, mu: Weight, strict: bool = False) -> bool:
    """Pairs (strictly) positively with every positive root of the cycle."""
    ps = [pair(mu, a.weight) for a in case.k_positive.positive]
    return all(p > 0 for p in ps) if strict else all(p >= 0 for p in ps)


# ---------------------------------------------------------------- type II


def integral_dominant(mu: Weight, pos_even) -> bool:
    ps = [pair(mu, a.weight) for a in simple_roots(pos_even)]
    return all(p.denominator == 1 and p >= 0 for p in ps)


@dataclass(frozen=True)
class Transform:
    kind: str  # "single" | "double"
    Lambda: Weight
    twisted_dual: bool = False

    def to_json(self):
        return {"kind": self.kind, "Lambda": self.Lambda.to_json(), "twisted_dual": self.twisted_dual}


def w0_dot(case: DFTCase, lam: Weight) -> Weight:
    kp = case.k_positive
    word = longest_word(kp.even, case.fam.dims)
    return apply_word(word, lam + case.rho_k) - case.rho_k


def type_II_double_transform(case: DFTCase, lam: Weight) -> Transform:
    if case.cycle_parity != "type_II":
        raise ValueError(f"{case.name} is not a type II cycle")
    kp = case.k_positive
    w0l = w0_dot(case, lam)
    # sigma w0 . lam = sigma(w0 lam') - rho_k with lam' = lam + rho_k
    Lam = reflect(w0l + case.rho_k, case.gamma_sigma.weight) - case.rho_k
    double = not _typical_in_k(case, lam) and integral_dominant(w0l, kp.even)
    return Transform("double" if double else "single", Lam, double)


def dft_report(case: DFTCase, lam: Weight, s: int) -> dict:
    if lam.dims != case.fam.dims:
        raise ValueError(f"weight has lengths {lam.dims}, {case.fam} expects {case.fam.dims}")
    ps = case.positive
    out = {
        "case": case.to_json(),
        "lambda": lam.to_json(),
        "s": s,
        "injective_sufficient": dft_injectivity_sufficient(case, lam, s),
        "injective_sufficient_even": dft_injectivity_sufficient(case, lam, s, "even"),
        "typical_anisotropic": is_typical(case.fam, lam, "anisotropic"),
        "typical_isotropic": is_typical(case.fam, lam, "standard_isotropic", positive=ps),
        "genericity": genericity(case.fam, lam, ps).to_json(),
        "dominant_conjugate": dominant_dot_conjugate(case.fam, lam, ps).to_json(),
    }
    if case.cycle_parity == "type_II":
        out["type_II_transform"] = type_II_double_transform(case, lam).to_json()
    return out

"""Root sets of the parabolic stabilizing the standard adapted flag of type delta."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Family, FlagType, build_roots, require_valid
from .rootspace import Root, Weight, sort_roots


@dataclass(frozen=True)
class FlagConvention:
    """reverse_y: the odd basis vectors enter the flag as f_m, f_{m-1}, ..."""

    reverse_y: bool = False


DEFAULT = FlagConvention()


@dataclass(frozen=True)
class PhiSets:
    phi: frozenset
    phi_r: frozenset
    phi_n: frozenset
    phi_c: frozenset

    def check(self, sigma) -> None:
        sigma = frozenset(sigma)
        assert self.phi_r | self.phi_n == self.phi and not (self.phi_r & self.phi_n)
        assert self.phi | self.phi_c == sigma and not (self.phi & self.phi_c)

    def to_json(self) -> dict:
        return {
            name: [r.to_json() for r in sort_roots(getattr(self, name))]
            for name in ("phi", "phi_r", "phi_n", "phi_c")
        }


def xi_from_flag(fam: Family, delta: FlagType, convention: FlagConvention = DEFAULT) -> Weight:
    """Level functional: xi(x_i) counts steps with d0 >= i, likewise for y.

    Type A and Q count the endpoint as a step (it shifts xi uniformly).
    osp flags do not: n|m is an honest Lagrangian step there, and the
    ambient endpoint lies outside the isotropic range.
    """
    if fam.kind == "P":
        raise RuntimeError("P(n) has no level functional; use phi_sets")
    require_valid(fam, delta)
    steps = list(delta.steps)
    if not fam.is_osp:
        steps.append(fam.endpoint)
    n, m = fam.dims
    xs = [sum(1 for a, _ in steps if a >= i) for i in range(1, n + 1)]
    if fam.kind == "Q":
        return Weight(xs, ())
    ys = [sum(1 for _, b in steps if b >= j) for j in range(1, m + 1)]
    if convention.reverse_y:
        ys = ys[::-1]
    return Weight(xs, ys)


def _split(sigma, phi, opposite_in_phi) -> PhiSets:
    phi = frozenset(phi)
    phi_r = frozenset(a for a in phi if opposite_in_phi(a))
    return PhiSets(phi, phi_r, phi - phi_r, frozenset(sigma) - phi)


def _p_member(alpha: Root, steps, n: int) -> bool:
    """Index rules for P(n) with odd basis reversed.

    A step a|b is span(e_1..e_a, f_n..f_{n-b+1}).  The even root x_i - x_j
    sends e_j to e_i and f_i to f_j; x_i + x_j sends f_j to e_i and f_i to e_j;
    -(x_i + x_j) sends e_j to f_i and e_i to f_j.
    """
    w = [int(c) for c in alpha.weight.x]
    pos = [i for i, c in enumerate(w, 1) for _ in range(max(c, 0))]
    neg = [i for i, c in enumerate(w, 1) for _ in range(max(-c, 0))]
    for a, b in steps:
        e_in = lambda i: i <= a
        f_in = lambda i: i > n - b
        if len(pos) == 1 and len(neg) == 1:
            i, j = pos[0], neg[0]
            if (e_in(j) and not e_in(i)) or (f_in(i) and not f_in(j)):
                return False
        elif len(pos) == 2:
            i, j = pos
            if (f_in(j) and not e_in(i)) or (f_in(i) and not e_in(j)):
                return False
        else:
            i, j = neg
            if (e_in(j) and not f_in(i)) or (e_in(i) and not f_in(j)):
                return False
    return True


@lru_cache(maxsize=8192)
def phi_sets(fam: Family, convention: FlagConvention, delta: FlagType) -> PhiSets:
    sigma = build_roots(fam)
    if fam.kind == "P":
        require_valid(fam, delta)
        phi = {a for a in sigma if _p_member(a, delta.steps, fam.n)}
        weights = {a.weight for a in phi}
        return _split(sigma, phi, lambda a: (-a.weight) in weights)
    xi = xi_from_flag(fam, delta, convention)
    phi = [a for a in sigma if a.weight.evaluate(xi) >= 0]
    return _split(sigma, phi, lambda a: a.weight.evaluate(xi) == 0)


def regular_refinement(fam: Family, delta: FlagType, convention: FlagConvention = DEFAULT) -> Weight:
    """A regular functional whose positive roots refine Phi(delta)."""
    xi = xi_from_flag(fam, delta, convention)
    n, m = fam.dims
    # distinct positive tie-breakers, all well below one level step
    t = [Fraction(2 * (n + m - i) + 2, 4 * (n + m) + 4) for i in range(n + m)]
    return Weight(
        [c + t[i] / 2 for i, c in enumerate(xi.x)],
        [c + t[n + j] / 2 for j, c in enumerate(xi.y)],
    )

"""Global holomorphic superfunctions on flag supermanifolds and flag domains.

Results are symbolic: an exterior algebra of some rank, possibly tensored with
the (never materialized) function space of a hermitian base factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Family, FlagType, build_roots, require_valid
from .classify import odd_codimension
from .parabolic import phi_sets
from .realform import RealForm, apply_tau, lookup

KINDS = ("constants", "exterior", "base_tensor_exterior", "base_only")
BASE_KINDS = ("cycle", "hermitian", "mixed:1", "mixed:2")


@dataclass(frozen=True)
class H0Descriptor:
    kind: str
    k: int = 0
    base_marker: str | None = None
    note: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown H0 kind {self.kind!r}")
        if self.kind == "exterior" and self.k == 0:
            object.__setattr__(self, "kind", "constants")
        if (self.kind == "constants") != (self.k == 0 and self.base_marker is None):
            raise ValueError("constants iff k = 0 and no base marker")

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "base_marker": self.base_marker, "note": self.note}

    def __str__(self):
        ext = f"Λ C^{self.k}"
        return {
            "constants": "C",
            "exterior": ext,
            "base_tensor_exterior": f"H0({self.base_marker}, F) ⊗ {ext}",
            "base_only": f"H0({self.base_marker}, F)",
        }[self.kind]


CONSTANTS = H0Descriptor("constants")


def exterior(k: int, note: str | None = None) -> H0Descriptor:
    return H0Descriptor("exterior", k, None, note) if k else CONSTANTS


def _tensor(k: int, marker: str) -> H0Descriptor:
    return H0Descriptor("base_tensor_exterior", k, marker) if k else H0Descriptor("base_only", 0, marker)


# ---------------------------------------------------------------- Z(delta)


def h0_flag_supermanifold(fam: Family, delta: FlagType) -> H0Descriptor:
    require_valid(fam, delta)
    n, m = fam.dims
    if fam.kind == "A":
        return exterior(n * m) if (n, 0) in delta or (0, m) in delta else CONSTANTS
    if fam.is_osp:
        return exterior(2 * m) if fam.kind == "C" and (1, 0) in delta else CONSTANTS
    if fam.kind == "P":
        if (n, 0) in delta:
            return exterior(n * (n + 1) // 2)
        if (0, n) in delta or (0, n - 1) in delta:
            return exterior(n * (n - 1) // 2)
    return CONSTANTS


# ---------------------------------------------------------------- conditions I, II


def _dbar(steps, j: int, by: int) -> int:
    """min of the other coordinate over steps whose ``by`` coordinate reaches j."""
    return min(s[1 - by] for s in steps if s[by] >= j)


def condition_I(fam: Family, delta: FlagType) -> bool:
    """No root x_i - y_j survives in Phi and its sl_R image.

    Checked as dbar0(j) + dbar0(m-j+1) <= n with the endpoint n|m appended.
    """
    _require_A(fam, delta)
    n, m = fam.dims
    steps = list(delta.steps) + [(n, m)]
    return all(_dbar(steps, j, 1) + _dbar(steps, m - j + 1, 1) <= n for j in range(1, m + 1))


def condition_II(fam: Family, delta: FlagType) -> bool:
    _require_A(fam, delta)
    n, m = fam.dims
    steps = list(delta.steps) + [(n, m)]
    return all(_dbar(steps, i, 0) + _dbar(steps, n - i + 1, 0) <= m for i in range(1, n + 1))


def _require_A(fam: Family, delta: FlagType):
    if fam.kind != "A":
        raise ValueError(f"conditions I and II are defined for type A, not {fam}")
    require_valid(fam, delta)


def _odd_both(fam: Family, rf: RealForm, delta: FlagType):
    """Odd roots of p and tau p."""
    ph = phi_sets(fam, rf.convention, delta)
    return [a for a in ph.phi if a.is_odd and apply_tau(rf.tau, a) in ph.phi]


def condition_roots(fam: Family, delta: FlagType, which: str) -> bool:
    """Root-level twin of conditions I ("I": x - y block) and II ("II": y - x block)."""
    _require_A(fam, delta)
    sign = 1 if which == "I" else -1
    hit = [a for a in _odd_both(fam, lookup(fam, "sl_R"), delta) if sign * sum(a.weight.x) > 0]
    return not hit


def osp11_root_rank(fam: Family, rf: RealForm, delta: FlagType) -> int:
    """m for each graded half (+x_1 or -x_1 odd roots) missing from Phi and tau Phi."""
    both = _odd_both(fam, rf, delta)
    halves = [any(a.weight.x[0] == s for a in both) for s in (1, -1)]
    return fam.m * halves.count(False)


# ---------------------------------------------------------------- flag domains


def hermitian_capable(rf: RealForm) -> tuple[str, ...]:
    """Base kinds other than "cycle" that occur for this real form."""
    key = rf.key.removeprefix("ev_")
    if rf.table_key == "su":
        return ("hermitian", "mixed:1")
    if rf.table_key == "q_unitary":
        return ("hermitian",)
    if not rf.fam.is_osp:
        return ()
    if key.startswith("ospstar"):
        # Sp(2r,2s) is never hermitian
        return ("hermitian", "mixed:1") if rf.fam.kind == "D" else ()
    out: tuple[str, ...] = ()
    if key == "sostar":
        out = ("hermitian", "mixed:1") if rf.fam.kind == "D" else ()
    elif 2 in rf.params:
        out = ("hermitian", "mixed:1")
    return out + ("mixed:2",)


def _l1_zero(fam, rf, delta) -> bool:
    return not _odd_both(fam, rf, delta)


def _half_odd(fam: Family) -> int:
    return sum(1 for a in build_roots(fam) if a.is_odd) // 2


def h0_flag_domain(fam: Family, rf: RealForm | str, delta: FlagType, base_kind: str = "cycle") -> H0Descriptor:
    if isinstance(rf, str):
        rf = lookup(fam, rf)
    if base_kind not in BASE_KINDS:
        raise ValueError(f"base kind must be one of {BASE_KINDS}")
    require_valid(fam, delta)
    _, odd = odd_codimension(fam, rf, delta)
    if odd:
        raise ValueError(f"{rf.key} orbit in Z({delta}) does not have maximal odd dimension")
    if base_kind != "cycle" and base_kind not in hermitian_capable(rf):
        raise ValueError(f"base kind {base_kind} does not occur for {rf.key}")
    if base_kind == "cycle":
        return _cycle(fam, rf, delta)
    if base_kind == "hermitian":
        return _hermitian(fam, rf)
    return _mixed(fam, rf, delta, int(base_kind[-1]))


def _cycle(fam: Family, rf: RealForm, delta: FlagType) -> H0Descriptor:
    n, m = fam.dims
    key = rf.table_key
    if key in ("uspi", "P", "q_rev", "q_unitary"):
        return CONSTANTS
    if key == "sl_R":
        one, two = condition_I(fam, delta), condition_II(fam, delta)
        if one and two:
            return exterior(n * m)
        if one or two:
            assert n * m % 2 == 0, "an open orbit satisfying condition I or II has nm even"
            return exterior(n * m // 2, note="condition I" if one else "condition II")
        return CONSTANTS
    if _l1_zero(fam, rf, delta):
        return exterior(_half_odd(fam), note="l_1 = 0")
    if key in ("su", "0pq"):
        if (n, 0) in delta or (0, m) in delta:
            return exterior(n * m, note="restricted from Z")
        return CONSTANTS
    # osp: only the ambient dimension 2 carries odd functions
    if fam.kind != "C":
        return CONSTANTS
    if key == "osp_oo":
        if (0, m) in delta:
            return exterior(2 * m)
        if (1, m) in delta:
            return exterior(m)
        return CONSTANTS
    return exterior(2 * m, note="restricted from Z") if (1, 0) in delta else CONSTANTS


def _hermitian(fam: Family, rf: RealForm) -> H0Descriptor:
    marker = "D_0"
    key = rf.key.removeprefix("ev_")
    if rf.table_key == "su":
        p, q, r, s = rf.params
        return _tensor(q * r + p * s, marker)
    if rf.table_key == "q_unitary":
        p, q = rf.params
        return _tensor(p * q, marker)
    if key.startswith("ospstar") or key == "sostar":
        return _tensor(fam.n * fam.m, marker)
    return _tensor(2 * fam.m, marker)


def _mixed(fam: Family, rf: RealForm, delta: FlagType, factor: int) -> H0Descriptor:
    n, m = fam.dims
    marker = f"D_{factor}"
    key = rf.key.removeprefix("ev_")
    if rf.table_key == "su":
        p, q = rf.params[:2]
        lo, hi = (p, 0) in delta, (p, m) in delta
        k = n * m if lo and hi else p * m if lo else q * m if hi else 0
        return _tensor(k, marker)
    if factor == 2:
        if fam.kind == "B":
            return _tensor(0, marker)
        return _tensor(n * m if (0, m) in delta else 0, marker)
    if key.startswith("ospstar") or key == "sostar":
        return _tensor(n * m if (n, 0) in delta else 0, marker)
    return _tensor(2 * m if (2, 0) in delta else 0, marker)

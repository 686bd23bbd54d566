"""Codimension, maximal odd dimension, weak and strong measurability.

Each verdict is computed twice: from the root sets Phi and tau, and from the
symmetry conditions on delta that the classification tables prescribe.  The
two must agree.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .algebra import Exceptional, Family, FlagType, build_roots, is_chain, leq, symmetry_profile, validate_flag_type
from .parabolic import PhiSets, phi_sets
from .realform import RealForm, apply_tau, lookup
from .rootspace import Weight, graded_sum

FIELDS = ("max_odd_dim", "base_measurable", "berezinian_invariant", "strongly_measurable")


@dataclass(frozen=True)
class Verdicts:
    max_odd_dim: bool | None = None
    base_measurable: bool | None = None
    berezinian_invariant: bool | None = None
    strongly_measurable: bool | None = None


@dataclass(frozen=True)
class ClassificationRecord:
    family: str
    real_form: str
    delta: str
    total_codim: int | None
    odd_codim: int | None
    max_odd_dim: bool | None
    base_measurable: bool | None
    berezinian_invariant: bool | None
    strongly_measurable: bool | None
    table_prediction: Verdicts
    agreement: bool
    mismatches: tuple[str, ...] = ()
    marker: str | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["mismatches"] = list(self.mismatches)
        return d


class TableMismatch(AssertionError):
    pass


# ---------------------------------------------------------------- enumeration

ENUM_DEFAULTS = {"A": 7, "B": 5, "C": 5, "D": 5, "P": 6, "Q": 8}


def enumeration_bounds() -> dict[str, int]:
    bounds = dict(ENUM_DEFAULTS)
    env = os.environ.get("SUPERFLAG_ENUM_BOUNDS", "")
    for item in filter(None, (s.strip() for s in env.split(","))):
        key, val = item.split("=")
        for k in key.strip().upper():
            bounds[k] = int(val)
    return bounds


def _grid(fam: Family) -> list[tuple[int, int]]:
    e0, e1 = fam.endpoint
    pts = [(a, b) for a in range(e0 + 1) for b in range(e1 + 1)]
    pts = [p for p in pts if p != (0, 0) and (fam.is_osp or p != (e0, e1))]
    if fam.kind == "Q":
        pts = [p for p in pts if p[0] == p[1]]
    return sorted(pts, key=lambda p: (p[0] + p[1], p))


def count_chains(fam: Family) -> int:
    pts = _grid(fam)
    memo: dict = {}

    def above(p):
        if p not in memo:
            memo[p] = 1 + sum(above(q) for q in pts if leq(p, q) and q != p)
        return memo[p]

    return sum(above(p) for p in pts)


@lru_cache(maxsize=None)
def enumerate_flag_types(fam: Family) -> tuple[FlagType, ...]:
    rank = fam.n if fam.kind in "PQ" else fam.rank
    if rank > enumeration_bounds()[fam.kind]:
        raise RuntimeError(f"{fam} exceeds the enumeration bound; it has {count_chains(fam)} chains")
    pts = _grid(fam)
    out: list[tuple] = []

    def grow(chain):
        out.append(tuple(chain))
        for q in pts:
            if leq(chain[-1], q) and q != chain[-1]:
                grow(chain + [q])

    for p in pts:
        grow([p])
    deltas = [FlagType(c) for c in sorted(out)]
    return tuple(d for d in deltas if validate_flag_type(fam, d).ok)


# ---------------------------------------------------------------- root level


def _tau_image(rf: RealForm, roots) -> frozenset:
    return frozenset(apply_tau(rf.tau, a) for a in roots)


def odd_codimension(fam: Family, rf: RealForm, delta: FlagType) -> tuple[int, int]:
    """Roots outside Phi and tau Phi (total, odd).

    Counted on the complement rather than on Phi^n: the two differ for P(n),
    where Sigma is not closed under negation.
    """
    _require_rf(fam, rf)
    ph = phi_sets(fam, rf.convention, delta)
    both = ph.phi_c & _tau_image(rf, ph.phi_c)
    return len(both), sum(1 for a in both if a.is_odd)


def _strong_test(fam: Family, rf: RealForm, ph: PhiSets, roots) -> bool:
    roots = frozenset(roots)
    if fam.kind == "P":
        t_r = _tau_image(rf, ph.phi_r & roots)
        t_n = _tau_image(rf, ph.phi_n & roots)
        return t_r == ph.phi_r & roots and t_n == ph.phi_c & _tau_image(rf, roots)
    return all((a in ph.phi) == (apply_tau(rf.tau, -a) in ph.phi) for a in roots)


def is_strongly_measurable(fam: Family, rf: RealForm, delta: FlagType) -> bool | None:
    """None when the orbit is not open (odd codimension > 0)."""
    _, odd = odd_codimension(fam, rf, delta)
    if odd:
        return None
    return _strong_test(fam, rf, phi_sets(fam, rf.convention, delta), build_roots(fam))


def is_weakly_measurable(fam: Family, rf: RealForm, delta: FlagType) -> bool | None:
    _, odd = odd_codimension(fam, rf, delta)
    if odd:
        return None
    ph = phi_sets(fam, rf.convention, delta)
    keep = ph.phi & _tau_image(rf, ph.phi)
    rest = [a for a in build_roots(fam) if a not in keep]
    return vanishes_on_cartan(fam, graded_sum(rest, fam.dims))


def trace_functional(fam: Family) -> Weight | None:
    """The functional that is identically zero on the Cartan subalgebra.

    sl(n|m) has supertrace zero; P(n) and Q(n) have trace zero on the x-block.
    osp has none.
    """
    n, m = fam.dims
    if fam.kind == "A":
        return Weight([1] * n, [-1] * m)
    if fam.kind in "PQ":
        return Weight([1] * n, ())
    return None


def vanishes_on_cartan(fam: Family, w: Weight) -> bool:
    if w.is_zero():
        return True
    t = trace_functional(fam)
    if t is None:
        return False
    c = w.x[0] if w.x else w.y[0]
    return w == t.scale(c)


def is_base_measurable(fam: Family, rf: RealForm, delta: FlagType) -> bool:
    ph = phi_sets(fam, rf.convention, delta)
    return _strong_test(fam, rf, ph, [a for a in build_roots(fam) if a.is_even])


def root_verdicts(fam: Family, rf: RealForm, delta: FlagType) -> tuple[int, int, Verdicts]:
    _require_rf(fam, rf)
    return _root_verdicts(fam, RealForm("", "", rf.kind, fam, rf.tau, rf.convention), delta)


@lru_cache(maxsize=65536)
def _root_verdicts(fam: Family, rf: RealForm, delta: FlagType) -> tuple[int, int, Verdicts]:
    """Depends on rf only through tau and the flag convention."""
    total, odd = odd_codimension(fam, rf, delta)
    open_ = odd == 0
    return total, odd, Verdicts(
        open_,
        is_base_measurable(fam, rf, delta),
        is_weakly_measurable(fam, rf, delta) if open_ else None,
        is_strongly_measurable(fam, rf, delta) if open_ else None,
    )


# ---------------------------------------------------------------- table level


def _base_classical(steps, n, m) -> bool:
    d0 = {a for a, _ in steps} - {0, n}
    d1 = {b for _, b in steps} - {0, m}
    return all(n - d in d0 for d in d0) and all(m - d in d1 for d in d1)


def projective_line(fam: Family, delta: FlagType) -> bool:
    """Z = P(C^{n|n}): the flag of a single even line."""
    return delta.steps == ((1, 0),)


def _p_open(fam: Family, delta: FlagType) -> bool:
    """Pi-symmetry, plus the self-mirror step k+1|k when n = 2k+1.

    That step is invisible to the fixed odd roots: -2x_{k+1} is not a root.
    """
    n = fam.n
    centre = ((n + 1) // 2, n // 2) if n % 2 else None
    return all(a == b or (a, b) == centre for a, b in delta.steps)


def _p_centre_only(fam: Family, delta: FlagType) -> bool:
    n = fam.n
    return n % 2 == 1 and delta.steps == (((n + 1) // 2, n // 2),)


def amendment(fam: Family, rf: RealForm, delta: FlagType) -> str | None:
    """Where the prediction departs from the literal table entry, say so."""
    if rf.table_key != "P" or fam.n % 2 == 0:
        return None
    k = fam.n // 2
    if _p_centre_only(fam, delta):
        return f"centre step {k + 1}|{k}: open and weakly but not strongly measurable (table: Pi, weak '-')"
    if _p_open(fam, delta) and not symmetry_profile(fam, delta).pi_sym:
        return f"centre step {k + 1}|{k}: open although not Pi-symmetric (table: Pi)"
    return None


def _osp_oo_prediction(fam: Family, delta: FlagType) -> Verdicts:
    n, m = fam.dims
    steps = delta.steps
    open_ = not any(a == n and b < m for a, b in steps)
    lag = (n, m) in steps
    strong = (not lag) or (n - 1, m) in steps or n == 1 and (0, m) in steps
    weak = strong
    if lag:
        idx = steps.index((n, m))
        pred = steps[idx - 1] if idx else (0, 0)
        weak = weak or any(pred == (n - d - 1, m - d) for d in range(1, min(n - 1, m) + 1))
    d0 = {a for a, _ in steps}
    base = n not in d0 or (n - 1) in d0 or n == 1
    return Verdicts(open_, base, weak if open_ else None, strong if open_ else None)


def table_prediction(fam: Family, rf: RealForm, delta: FlagType) -> Verdicts:
    key = rf.table_key
    if key in ("su", "osp_trivial", "q_unitary"):
        return Verdicts(True, True, True, True)
    if key == "osp_oo":
        return _osp_oo_prediction(fam, delta)
    prof = symmetry_profile(fam, delta)
    n, m = fam.endpoint
    if key == "sl_R":
        open_ = prof.even_symmetrizable
        strong = prof.even_sym
        # only sufficient conditions are known beyond strong measurability
        weak = True if strong or (fam.psl and (prof.pi_sym or projective_line(fam, delta))) else None
        base = _base_classical(delta.steps, n, m)
    elif key == "0pq":
        open_ = prof.odd_symmetrizable
        strong = prof.odd_sym
        weak = True if strong or prof.pi_sym else None
        base = None
    elif key == "uspi":
        open_ = prof.pi_sym
        strong = weak = True
        base = True if open_ else None
    elif key == "P":
        open_ = _p_open(fam, delta)
        strong = fam.n % 2 == 0 and (fam.n // 2, fam.n // 2) in delta
        weak = strong or _p_centre_only(fam, delta)
        base = None
    elif key == "q_rev":
        open_ = True
        strong = prof.even_sym
        weak = True
        base = strong
    else:
        raise KeyError(f"no table row for {key!r}")
    return Verdicts(open_, base, weak if open_ else None, strong if open_ else None)


# ---------------------------------------------------------------- assembly

ALWAYS = Verdicts(True, True, True, True)
EXCEPTIONAL_OOS = "requires sigma(J) = J"


def _require_rf(fam: Family, rf: RealForm):
    if rf.fam != fam:
        raise ValueError(f"real form {rf.key} is catalogued for {rf.fam}, not {fam}")


def _compare(root: Verdicts, pred: Verdicts) -> tuple[str, ...]:
    bad = []
    for f in FIELDS:
        p, r = getattr(pred, f), getattr(root, f)
        if p is not None and p != r:
            bad.append(f"{f}: roots say {r}, table says {p}")
    return tuple(bad)


def classify(fam: Family | Exceptional, rf: RealForm | str | None, delta: FlagType) -> ClassificationRecord:
    if isinstance(fam, Exceptional):
        base = fam.delegate()
        if base is not None:
            return classify(base, rf, delta)
        if fam.name == "E6" and str(rf) in ("E6_C4", "E6_F4"):
            v = Verdicts()
            return ClassificationRecord(fam.name, str(rf), str(delta), None, None, None, None, None, None,
                                        v, True, (), EXCEPTIONAL_OOS)
        a = ALWAYS
        return ClassificationRecord(fam.name, str(rf or "any"), str(delta), None, None, a.max_odd_dim,
                                    a.base_measurable, a.berezinian_invariant, a.strongly_measurable,
                                    a, True, (), "always")
    if isinstance(rf, str):
        rf = lookup(fam, rf)
    _require_rf(fam, rf)
    total, odd, root = root_verdicts(fam, rf, delta)
    pred = table_prediction(fam, rf, delta)
    bad = _compare(root, pred)
    return ClassificationRecord(
        fam.label(), rf.key, str(delta), total, odd, root.max_odd_dim, root.base_measurable,
        root.berezinian_invariant, root.strongly_measurable, pred, not bad, bad,
        amendment(fam, rf, delta),
    )


def table(fam: Family, rf: RealForm | str, bound: int | None = None, strict: bool = True):
    """Classify every delta with at most ``bound`` steps."""
    if isinstance(rf, str):
        rf = lookup(fam, rf)
    rows = []
    for delta in enumerate_flag_types(fam):
        if bound is not None and len(delta) > bound:
            continue
        rec = classify(fam, rf, delta)
        if strict and not rec.agreement:
            raise TableMismatch(f"{fam} {rf.key} delta={delta}: " + "; ".join(rec.mismatches))
        rows.append((delta, rec))
    return rows

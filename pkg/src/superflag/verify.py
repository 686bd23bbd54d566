"""Sweeps behind `superflag verify` and the acceptance suite.

Every sweep returns rows keyed by (family, real form, theorem) with a pass
flag and an instance count.  Failures carry a replayable instance string.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .algebra import Family, FlagType, build_roots
from .classify import classify, enumerate_flag_types, odd_codimension, root_verdicts, table_prediction
from .dft import (
    CATALOG, dft_case, dft_injectivity_sufficient, distinguished_flag, dominant, dominant_dot_conjugate,
    even_weyl_group, integral_dominant, is_typical, pair, relative_roots, relative_weights, rho,
    type_II_double_transform, w0_dot, weyl_length,
)
from .matrixoracle import codim_oracle, oracle_bounds, stabilizer_phi
from .parabolic import DEFAULT, phi_sets
from .realform import apply_tau, associated_real_form, catalog, lookup
from .rootspace import Weight
from .superfun import (
    condition_I, condition_II, condition_roots, h0_flag_domain, h0_flag_supermanifold, osp11_root_rank,
)


@dataclass
class Row:
    family: str
    real_form: str
    theorem: str
    passed: bool = True
    count: int = 0
    failures: list = field(default_factory=list)

    def fail(self, instance: str):
        self.passed = False
        if len(self.failures) < 5:
            self.failures.append(instance)

    def to_json(self):
        return {"family": self.family, "real_form": self.real_form, "theorem": self.theorem,
                "pass": self.passed, "count": self.count, "failures": self.failures}


@dataclass
class Report:
    criterion: str
    rows: list
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self):
        return {"criterion": self.criterion, "pass": self.passed, "notes": self.notes,
                "rows": [r.to_json() for r in self.rows]}

    def line(self) -> str:
        n = sum(r.count for r in self.rows)
        bad = sum(1 for r in self.rows if not r.passed)
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f"; {k}={v}" for k, v in sorted(self.notes.items()))
        return f"{status} {self.criterion}: {n} checks over {len(self.rows)} rows, {bad} failing rows{extra}"


def _replay(fam, rf_key, delta) -> str:
    params = f"{fam.m}" if fam.kind == "C" else f"{fam.n}" if fam.kind in "PQ" else f"{fam.n},{fam.m}"
    rf = f" --real-form {rf_key}" if rf_key else ""
    return f"classify --family {fam.kind} --params {params}{rf} --delta '{delta}'"


# ---------------------------------------------------------------- families in bound


def families(kinds: str = "ABCDPQ", bounds: dict | None = None) -> list[Family]:
    """Catalogued instances inside the oracle bounds."""
    b = bounds or oracle_bounds()
    out = []
    if "A" in kinds:
        out += [Family.A(n, m) for n in range(1, b["A"] + 1) for m in range(0, b["A"] + 1) if 2 <= n + m <= b["A"]]
    if "B" in kinds:
        out += [Family.B(n, m) for n in range(0, b["B"]) for m in range(1, b["B"] + 1) if n + m <= b["B"]]
    if "C" in kinds:
        out += [Family.C(m) for m in range(1, b["C"]) ]
    if "D" in kinds:
        out += [Family.D(n, m) for n in range(2, b["D"]) for m in range(1, b["D"]) if n + m <= b["D"]]
    if "P" in kinds:
        out += [Family.P(n) for n in range(3, b["P"] + 1)]
    if "Q" in kinds:
        out += [Family.Q(n) for n in range(2, b["Q"] + 1)]
    return out


def _conventions(fam):
    return sorted({rf.convention for rf in catalog(fam)}, key=lambda c: c.reverse_y)


def _tau_classes(fam):
    """Real forms grouped by their action on roots; one representative each."""
    groups: dict = {}
    for rf in catalog(fam):
        groups.setdefault((rf.tau, rf.convention), []).append(rf)
    return list(groups.values())


# ---------------------------------------------------------------- 1: oracle


def criterion_1(bounds=None) -> Report:
    t0 = time.perf_counter()
    rows = []
    for fam in families(bounds=bounds):
        row = Row(fam.label(), "-", "phi_sets = stabilizer_phi")
        for conv in _conventions(fam):
            for delta in enumerate_flag_types(fam):
                row.count += 1
                if phi_sets(fam, conv, delta) != stabilizer_phi(fam, delta, conv):
                    row.fail(f"{fam} delta={delta} reverse_y={conv.reverse_y}")
        rows.append(row)
    return Report("1 oracle equivalence", rows, {"seconds": round(time.perf_counter() - t0)})


# ---------------------------------------------------------------- 2: codimension


def literal_codimension(fam, rf, delta) -> tuple[int, int]:
    """|Phi^n cap tau Phi^n|, total and odd."""
    ph = phi_sets(fam, rf.convention, delta)
    both = ph.phi_n & frozenset(apply_tau(rf.tau, a) for a in ph.phi_n)
    return len(both), sum(1 for a in both if a.is_odd)


def criterion_2(bounds=None) -> Report:
    """Literal formula where Sigma = -Sigma; the complement count everywhere.

    P(n) is reported separately: its literal count is refuted by the oracle.
    """
    rows = []
    refuted = p_total = 0
    for fam in families(bounds=bounds):
        for group in _tau_classes(fam):
            rf = group[0]
            keys = ",".join(r.key for r in group)
            lit = Row(fam.label(), keys, "|Phi^n cap tau Phi^n| = codim_oracle")
            lib = Row(fam.label(), keys, "odd_codimension = codim_oracle")
            for delta in enumerate_flag_types(fam):
                want = codim_oracle(fam, rf, delta)
                lib.count += 1
                if odd_codimension(fam, rf, delta) != want:
                    lib.fail(_replay(fam, rf.key, delta))
                if fam.kind == "P":
                    p_total += 1
                    refuted += literal_codimension(fam, rf, delta) != want
                    continue
                lit.count += 1
                if literal_codimension(fam, rf, delta) != want:
                    lit.fail(_replay(fam, rf.key, delta))
            rows += [lib] + ([lit] if fam.kind != "P" else [])
    return Report("2 codimension formula", rows, {"P_literal_refuted": f"{refuted}/{p_total}"})


def p_literal_refutations(bounds=None) -> tuple[int, int]:
    bad = total = 0
    for fam in families("P", bounds):
        for group in _tau_classes(fam):
            for delta in enumerate_flag_types(fam):
                total += 1
                bad += literal_codimension(fam, group[0], delta) != codim_oracle(fam, group[0], delta)
    return bad, total


# ---------------------------------------------------------------- 3, 4: tables


def criterion_3(bounds=None) -> Report:
    rows = []
    amended = 0
    for fam in families(bounds=bounds):
        for rf in catalog(fam):
            if rf.kind != "real":
                continue
            row = Row(fam.label(), rf.key, f"table row {rf.table_key}")
            for delta in enumerate_flag_types(fam):
                rec = classify(fam, rf, delta)
                row.count += 1
                amended += rec.marker is not None
                if not rec.agreement:
                    row.fail(_replay(fam, rf.key, delta) + " :: " + "; ".join(rec.mismatches))
            rows.append(row)
    return Report("3 table reproduction", rows, {"amended_P_instances": amended})


def literal_p_table_refutations(bounds=None) -> tuple[int, int]:
    """Odd-n P instances where the unamended row (open iff Pi-symmetric,
    weak only when strong) disagrees with the root verdicts."""
    bad = total = 0
    for fam in families("P", bounds):
        if fam.n % 2 == 0:
            continue
        for rf in catalog(fam):
            for delta in enumerate_flag_types(fam):
                total += 1
                _, _, root = root_verdicts(fam, rf, delta)
                pi = all(a == b for a, b in delta.steps)
                weak_wrong = pi and root.max_odd_dim and root.berezinian_invariant is not False
                bad += root.max_odd_dim != pi or bool(weak_wrong)
    return bad, total


def criterion_4(bounds=None) -> Report:
    rows = []
    for fam in families(bounds=bounds):
        for ev in catalog(fam):
            partner = associated_real_form(ev)
            if partner is None:
                continue
            row = Row(fam.label(), f"{ev.key}~{partner.key}", "even-real transfer")
            for delta in enumerate_flag_types(fam):
                row.count += 1
                if root_verdicts(fam, ev, delta) != root_verdicts(fam, partner, delta):
                    row.fail(_replay(fam, ev.key, delta))
            rows.append(row)
    return Report("4 even-real transfer", rows)


# ---------------------------------------------------------------- 5: superfunctions


def _z_table(fam, delta) -> tuple[str, int]:
    """The four-case table written out independently of superfun."""
    n, m = fam.dims
    steps = set(delta.steps)
    if fam.kind == "A":
        return ("exterior", n * m) if steps & {(n, 0), (0, m)} else ("constants", 0)
    if fam.kind == "C":
        return ("exterior", 2 * m) if (1, 0) in steps else ("constants", 0)
    if fam.kind == "P":
        if (n, 0) in steps:
            return "exterior", n * (n + 1) // 2
        if steps & {(0, n), (0, n - 1)}:
            return "exterior", n * (n - 1) // 2
    return "constants", 0


def criterion_5(bounds=None) -> Report:
    rows = []
    for fam in families(bounds=bounds):
        row = Row(fam.label(), "-", "5a H0(Z) table")
        odd_dim = lambda d: sum(1 for a in phi_sets(fam, DEFAULT, d).phi_c if a.is_odd) if fam.kind != "P" else None
        for delta in enumerate_flag_types(fam):
            row.count += 1
            h = h0_flag_supermanifold(fam, delta)
            if (h.kind, h.k) != _z_table(fam, delta):
                row.fail(f"h0 --family {fam.kind} delta={delta}")
            dim1 = odd_dim(delta)
            if dim1 is not None and h.k > dim1:
                row.fail(f"rank {h.k} exceeds odd dimension {dim1} at {fam} delta={delta}")
        rows.append(row)
        if fam.kind == "A":
            row = Row(fam.label(), "sl_R", "5b conditions I/II = root tests")
            for delta in enumerate_flag_types(fam):
                row.count += 1
                if condition_I(fam, delta) != condition_roots(fam, delta, "I") or \
                        condition_II(fam, delta) != condition_roots(fam, delta, "II"):
                    row.fail(f"{fam} delta={delta}")
            rows.append(row)
    for m in range(1, 4):
        fam = Family.C(m)
        rf = lookup(fam, "osp11")
        row = Row(fam.label(), "osp11", "5c osp(1,1|2m) three-way")
        for delta in enumerate_flag_types(fam):
            if odd_codimension(fam, rf, delta)[1]:
                continue
            row.count += 1
            h = h0_flag_domain(fam, rf, delta)
            want = 2 * m if (0, m) in delta else m if (1, m) in delta else 0
            if h.k != want or h.k != osp11_root_rank(fam, rf, delta):
                row.fail(f"h0 --family C --params {m} --real-form osp11 --delta '{delta}' --base cycle")
        rows.append(row)
    return Report("5 superfunction checks", rows)


# ---------------------------------------------------------------- 6: DFT


def _rand_weight(rng, fam, r):
    return Weight([rng.randint(-r, r) for _ in range(fam.n)], [rng.randint(-r, r) for _ in range(fam.m)])


def dft_weyl_families() -> list[Family]:
    return [f for f in families("ABCD", {"A": 4, "B": 4, "C": 4, "D": 4})]


def criterion_6(seed: int = 0, weights: int = 1000, trials: int = 100) -> Report:
    rng = random.Random(seed)
    rows = []
    # (a) descent versus the exhaustive even Weyl group
    fams = dft_weyl_families()
    per = -(-weights // len(fams))
    for fam in fams:
        row = Row(fam.label(), "-", "6a dot conjugate = exhaustive Weyl search")
        ps = rho(fam, distinguished_flag(fam))
        W = even_weyl_group(fam)
        for _ in range(per):
            lam = _rand_weight(rng, fam, 5)
            got = dominant_dot_conjugate(fam, lam, ps)
            v = lam + ps.rho
            hits = [w for w in W if all(pair(w(v), a.weight) > 0 for a in ps.even)]
            row.count += 1
            if got.singular:
                ok = not hits
            else:
                ok = len(hits) == 1 and hits[0](v) - ps.rho == got.Lambda and weyl_length(hits[0], ps.even) == got.w_length
            if not ok:
                row.fail(f"{fam} lambda={lam.to_json()}")
        rows.append(row)
    # (b) relative weights versus a plain multiset enumerator
    fam = Family.A(2, 1)
    sig0 = {a for a in build_roots(fam) if a.parity == "even"}
    row = Row(fam.label(), "-", "6b relative_weights = multiset enumerator")
    for delta in enumerate_flag_types(fam):
        ph = phi_sets(fam, DEFAULT, delta)
        for phi_j in (sig0, set()):
            el = relative_roots(ph, phi_j)
            for s in range(4):
                row.count += 1
                if relative_weights(ph, phi_j, s) != _multisets(el, s, fam):
                    row.fail(f"{fam} delta={delta} s={s} |phi_j|={len(phi_j)}")
    rows.append(row)
    # (c) antitone along -dominant shifts
    for name, f in CATALOG:
        case = dft_case(name, f)
        cone = _cone(rng, case)
        for mode in ("all", "even"):
            row = Row(case.fam.label(), name, f"6c antitone ({mode} gammas)")
            held = 0
            for _ in range(trials):
                s = rng.randint(0, 2)
                lam = _rand_weight(rng, case.fam, 3) - rng.choice(cone).scale(rng.randint(0, 6))
                row.count += 1
                if dft_injectivity_sufficient(case, lam, s, mode):
                    held += 1
                    mu = rng.choice(cone).scale(rng.randint(1, 3))
                    if not dft_injectivity_sufficient(case, lam - mu, s, mode):
                        row.fail(f"dft-check --case {name} lambda={lam.to_json()} mu={mu.to_json()} s={s}")
            row.theorem += f" [{held} true]"
            rows.append(row)
    # (d) double transforms only under atypical + dominant
    for name, f in CATALOG:
        case = dft_case(name, f)
        if case.cycle_parity != "type_II":
            continue
        row = Row(case.fam.label(), name, "6d double iff atypical and w0.lambda dominant")
        doubles = 0
        for v in itertools.product(range(-3, 4), repeat=sum(case.fam.dims)):
            lam = Weight(v[:case.fam.n], v[case.fam.n:])
            t = type_II_double_transform(case, lam)
            atyp = not is_typical(case.fam, lam, "anisotropic", odd_roots=case.k_odd)
            dom = integral_dominant(w0_dot(case, lam), case.k_positive.even)
            row.count += 1
            doubles += t.kind == "double"
            if (t.kind == "double") != (atyp and dom):
                row.fail(f"dft-check --case {name} lambda={lam.to_json()}")
        row.theorem += f" [{doubles} double]"
        rows.append(row)
    return Report("6 DFT layer", rows)


def _multisets(el, s, fam):
    out = set()
    for k in range(s + 1):
        for combo in itertools.combinations_with_replacement(range(len(el)), k):
            if any(el[i].parity == "even" and combo.count(i) > 1 for i in set(combo)):
                continue
            w = Weight.zero(*fam.dims)
            for i in combo:
                w = w + el[i].weight
            out.add(w)
    return frozenset(out)


def _cone(rng, case, size=40):
    pts = []
    for _ in range(200000):
        mu = _rand_weight(rng, case.fam, 4)
        if not mu.is_zero() and dominant(case, mu):
            pts.append(mu)
            if len(pts) == size:
                break
    if not pts:
        raise RuntimeError(f"no dominant directions found for {case.name}")
    return pts


# ---------------------------------------------------------------- driver


CRITERIA = {
    "1": criterion_1, "2": criterion_2, "3": criterion_3, "4": criterion_4, "5": criterion_5, "6": criterion_6,
}


def run(which="123456", bounds=None) -> list[Report]:
    out = []
    for k in which:
        fn = CRITERIA[k]
        out.append(fn() if k == "6" else fn(bounds))
    return out


def stable_json(reports) -> dict:
    """Everything except wall-clock timings, which differ run to run."""
    data = []
    for r in reports:
        d = r.to_json()
        d["notes"] = {k: v for k, v in d["notes"].items() if k != "seconds"}
        data.append(d)
    return {"ok": all(r.passed for r in reports), "criteria": data}

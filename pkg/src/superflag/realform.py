"""Catalog of real and even real forms with their action on the weight lattice."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Family
from .parabolic import FlagConvention
from .rootspace import Root, Weight


@dataclass(frozen=True)
class TauAction:
    """Image of each basis functional as (sign, block, 1-based index)."""

    x: tuple[tuple[int, str, int], ...]
    y: tuple[tuple[int, str, int], ...] = ()

    def __call__(self, w: Weight) -> Weight:
        n, m = len(self.x), len(self.y)
        if w.dims != (n, m):
            raise ValueError(f"tau acts on {(n, m)}, weight has {w.dims}")
        out = {"x": [0] * n, "y": [0] * m}
        for coeffs, images in ((w.x, self.x), (w.y, self.y)):
            for c, (sign, block, idx) in zip(coeffs, images):
                out[block][idx - 1] += sign * c
        return Weight(out["x"], out["y"])

    @classmethod
    def minus_id(cls, n, m):
        return cls(tuple((-1, "x", i) for i in range(1, n + 1)), tuple((-1, "y", j) for j in range(1, m + 1)))

    @classmethod
    def reversal(cls, n, m):
        return cls(tuple((1, "x", n - i + 1) for i in range(1, n + 1)), tuple((1, "y", m - j + 1) for j in range(1, m + 1)))

    def is_involution(self) -> bool:
        n, m = len(self.x), len(self.y)
        for blk, size in (("x", n), ("y", m)):
            for i in range(1, size + 1):
                e = Weight.unit(n, m, blk, i)
                if self(self(e)) != e:
                    return False
        return True


@dataclass(frozen=True)
class RealForm:
    key: str
    name: str
    kind: str  # "real" | "even-real"
    fam: Family
    tau: TauAction
    convention: FlagConvention = FlagConvention()
    table_key: str = ""
    params: tuple[int, ...] = ()
    partner: str | None = None  # key of the real form with the same tau (even-real only)

    def __str__(self):
        return f"{self.key} on {self.fam}"


def apply_tau(tau: TauAction, root: Root) -> Root:
    return Root(tau(root.weight), root.parity)


def _osp_oo_tau(n, m):
    # x_n fixed, every other functional negated
    xs = tuple((1 if i == n else -1, "x", i) for i in range(1, n + 1))
    return TauAction(xs, tuple((-1, "y", j) for j in range(1, m + 1)))


def catalog(fam: Family) -> list[RealForm]:
    n, m = fam.dims
    k = fam.kind
    out: list[RealForm] = []
    R = lambda *a, **kw: out.append(RealForm(*a, **kw))
    minus = TauAction.minus_id(n, m)
    rev = TauAction.reversal(n, m)

    if k == "A":
        for p in range(n + 1):
            for r in range(m + 1):
                key = f"su:{p},{n - p}|{r},{m - r}"
                R(key, f"su({p},{n - p}|{r},{m - r})", "real", fam, minus, table_key="su", params=(p, n - p, r, m - r))
                R("ev_" + key, f"su({p},{n - p})+su({r},{m - r})+u(1)", "even-real", fam, minus,
                  table_key="su", params=(p, n - p, r, m - r), partner=key)
        R("sl_R", f"sl({n}|{m};R)", "real", fam, rev, table_key="sl_R")
        if n % 2 == 0 and m % 2 == 0:
            R("sl_H", f"sl({n // 2}|{m // 2};H)", "real", fam, rev, table_key="sl_R")
        if m % 2 == 0:
            R("ev_sl_RH", f"sl({n};R)+sl({m // 2};H)+R", "even-real", fam, rev, table_key="sl_R", partner="sl_R")
        if n == m:
            swap = TauAction(tuple((1, "y", i) for i in range(1, n + 1)), tuple((1, "x", i) for i in range(1, n + 1)))
            conv = FlagConvention(reverse_y=True)
            R("0pq", f"0pq({n})", "real", fam, swap, conv, table_key="0pq")
            R("ev_sl_C", f"sl({n};C)", "even-real", fam, swap, conv, table_key="0pq", partner="0pq")
            uspi = TauAction(tuple((-1, "y", i) for i in range(1, n + 1)), tuple((-1, "x", i) for i in range(1, n + 1)))
            R("uspi", f"uspi({n})", "real", fam, uspi, table_key="uspi")
        return out

    if k in "BCD":
        k0 = fam.ambient[0]
        oo = _osp_oo_tau(n, m)
        for p in range(k0 + 1):
            q = k0 - p
            if p % 2 and q % 2:
                if p > q:
                    continue
                a, b = (p - 1) // 2, (q - 1) // 2
                key = "osp11" if k == "C" else f"osp_oo:{a},{b}"
                R(key, f"osp({p},{q}|{2 * m})", "real", fam, oo, table_key="osp_oo", params=(p, q))
                R(f"ev_so_sp:{p},{q}", f"so({p},{q})+sp({2 * m})", "even-real", fam, oo,
                  table_key="osp_oo", params=(p, q), partner=key)
            else:
                R(f"osp:{p},{q}", f"osp({p},{q}|{2 * m})", "real", fam, minus, table_key="osp_trivial", params=(p, q))
                R(f"ev_so_sp:{p},{q}", f"so({p},{q})+sp({2 * m})", "even-real", fam, minus,
                  table_key="osp_trivial", params=(p, q), partner=f"osp:{p},{q}")
        if k0 % 2 == 0:
            for r in range(m + 1):
                key = f"ospstar:{r},{m - r}"
                R(key, f"osp*({k0}|{2 * r},{2 * (m - r)})", "real", fam, minus, table_key="osp_trivial", params=(r, m - r))
            R("ev_sostar", f"so*({k0})+sp({2 * m};R)", "even-real", fam, minus, table_key="osp_trivial",
              partner=f"ospstar:0,{m}")
        return out

    if k == "P":
        conv = FlagConvention(reverse_y=True)
        R("p_R", f"spi_R({n})", "real", fam, rev, conv, table_key="P")
        if n % 2 == 0:
            R("p_H", f"spi_H({n // 2})", "real", fam, rev, conv, table_key="P")
        return out

    # Q
    R("q_R", f"psq_R({n})", "real", fam, rev, table_key="q_rev")
    if n % 2 == 0:
        R("q_H", f"psq_H({n // 2})", "real", fam, rev, table_key="q_rev")
    for p in range(n + 1):
        R(f"upsq:{p},{n - p}", f"upsq({p},{n - p})", "real", fam, minus, table_key="q_unitary", params=(p, n - p))
    return out


ALIASES = {"osp_oo:0,0": "osp11"}


def lookup(fam: Family, key: str) -> RealForm:
    key = ALIASES.get(key.strip(), key.strip()) if fam.kind == "C" else key.strip()
    for rf in catalog(fam):
        if rf.key == key:
            return rf
    # osp_oo also accepts the literal odd signature p,q
    if key.startswith("osp_oo:"):
        try:
            sig = tuple(int(t) for t in key[7:].split(","))
        except ValueError:
            raise KeyError(key) from None
        for rf in catalog(fam):
            if rf.kind == "real" and rf.table_key == "osp_oo" and rf.params == sig:
                return rf
    raise KeyError(key)


def catalog_keys(fam: Family) -> list[str]:
    return [rf.key for rf in catalog(fam)]


def associated_real_form(even_rf: RealForm) -> RealForm | None:
    """The real form acting on Sigma exactly as the given even real form."""
    if even_rf.kind != "even-real" or even_rf.partner is None:
        return None
    try:
        return lookup(even_rf.fam, even_rf.partner)
    except KeyError:
        return None


def even_partners(rf: RealForm) -> list[RealForm]:
    """Reverse lookup; empty for uspi and for P, Q."""
    return [e for e in catalog(rf.fam) if e.kind == "even-real" and e.partner == rf.key]

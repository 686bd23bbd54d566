"""Family descriptors, root systems, flag types and their symmetry conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .rootspace import Root, Weight

KINDS = ("A", "B", "C", "D", "P", "Q")
EXCEPTIONAL_NAMES = ("E6", "E7", "E8", "F4", "G2", "F(4)", "G(3)", "D(2,1,a)")


@dataclass(frozen=True)
class Family:
    """A(n|m), B(n,m), C(m), D(n,m), P(n) or Q(n).

    ``n`` and ``m`` count the x- and y-functionals.  C(m) is stored with n = 1.
    P and Q have no y-block (m = 0).
    """

    kind: str
    n: int
    m: int = 0

    def __post_init__(self):
        k, n, m = self.kind, self.n, self.m
        ok = {
            "A": n >= 1 and m >= 0,
            "B": n >= 0 and m >= 1,
            "C": n == 1 and m >= 1,
            "D": n >= 2 and m >= 1,
            "P": n >= 3 and m == 0,
            "Q": n >= 2 and m == 0,
        }.get(k)
        if ok is None:
            raise ValueError(f"unknown family kind {k!r}; expected one of {KINDS}")
        if not ok:
            raise ValueError(f"invalid parameters for {k}: n={n}, m={m}")

    @classmethod
    def A(cls, n, m):
        return cls("A", n, m)

    @classmethod
    def B(cls, n, m):
        return cls("B", n, m)

    @classmethod
    def C(cls, m):
        return cls("C", 1, m)

    @classmethod
    def D(cls, n, m):
        return cls("D", n, m)

    @classmethod
    def P(cls, n):
        return cls("P", n, 0)

    @classmethod
    def Q(cls, n):
        return cls("Q", n, 0)

    @property
    def dims(self) -> tuple[int, int]:
        return self.n, self.m

    @property
    def is_osp(self) -> bool:
        return self.kind in "BCD"

    @property
    def psl(self) -> bool:
        """A(n|n): the projectivized variant."""
        return self.kind == "A" and self.n == self.m

    @property
    def endpoint(self) -> tuple[int, int]:
        """Largest flag dimension; for osp this is the Lagrangian n|m."""
        if self.kind in "PQ":
            return self.n, self.n
        return self.n, self.m

    @property
    def ambient(self) -> tuple[int, int]:
        """Dimension of the defining super vector space."""
        if self.kind == "A":
            return self.n, self.m
        if self.kind == "B":
            return 2 * self.n + 1, 2 * self.m
        if self.kind == "C":
            return 2, 2 * self.m
        if self.kind == "D":
            return 2 * self.n, 2 * self.m
        return self.n, self.n

    @property
    def rank(self) -> int:
        return self.n + self.m

    def label(self) -> str:
        if self.kind == "A":
            return f"A({self.n}|{self.m})"
        if self.kind == "C":
            return f"C({self.m})"
        if self.kind in "BD":
            return f"{self.kind}({self.n},{self.m})"
        return f"{self.kind}({self.n})"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class Exceptional:
    name: str

    def __post_init__(self):
        if self.name not in EXCEPTIONAL_NAMES:
            raise ValueError(f"unknown exceptional {self.name!r}; expected one of {EXCEPTIONAL_NAMES}")

    def delegate(self) -> Family | None:
        """D(2,1,a) is classified as D(2,1)."""
        return Family.D(2, 1) if self.name == "D(2,1,a)" else None

    def label(self) -> str:
        return self.name


def parse_family(kind: str, params: str | list[int]) -> Family:
    if isinstance(params, str):
        params = [int(p) for p in params.replace("|", ",").split(",") if p.strip()]
    kind = kind.upper()
    if kind == "C":
        (m,) = params
        return Family.C(m)
    if kind in ("P", "Q"):
        (n,) = params
        return Family(kind, n, 0)
    n, m = params
    return Family(kind, n, m)


# ---------------------------------------------------------------- flag types


@dataclass(frozen=True)
class FlagType:
    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(a), int(b)) for a, b in self.steps))

    @classmethod
    def parse(cls, text: str) -> "FlagType":
        steps = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "|" not in chunk:
                raise ValueError(f"bad step {chunk!r}; expected 'd0|d1'")
            a, b = chunk.split("|")
            steps.append((int(a), int(b)))
        return cls(tuple(steps))

    def __contains__(self, step) -> bool:
        return tuple(step) in self.steps

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __str__(self) -> str:
        return ",".join(f"{a}|{b}" for a, b in self.steps)

    def to_json(self) -> str:
        return str(self)


def leq(a, b) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def is_chain(steps) -> bool:
    """Strictly increasing in the product order, in the given order."""
    return all(leq(a, b) and a != b for a, b in zip(steps, steps[1:]))


def _chain_closure(steps, mirror):
    """Sorted union of steps and their mirrors, or None if that is not a chain."""
    pts = sorted(set(steps) | {mirror(s) for s in steps})
    return tuple(pts) if is_chain(pts) else None


@dataclass(frozen=True)
class Validation:
    ok: bool
    violations: tuple[str, ...] = ()
    closure: FlagType | None = None

    def __bool__(self):
        return self.ok


def validate_flag_type(fam: Family, delta: FlagType) -> Validation:
    v: list[str] = []
    steps = delta.steps
    if not steps:
        v.append("empty flag type")
    e0, e1 = fam.endpoint
    for a, b in steps:
        if a < 0 or b < 0 or a > e0 or b > e1:
            v.append(f"step {a}|{b} out of bounds 0..{e0}|0..{e1}")
    if (0, 0) in steps:
        v.append("step 0|0 is the trivial endpoint")
    if not fam.is_osp and (e0, e1) in steps:
        v.append(f"step {e0}|{e1} is the full space")
    if not is_chain(steps):
        v.append("not a chain in the product order")
    if fam.kind == "Q":
        for a, b in steps:
            if a != b:
                v.append(f"step {a}|{b} has d0 != d1; Q flags are Pi-invariant")
    closure = None
    if not v and fam.is_osp:
        closure = FlagType(ambient_completion(fam, delta))
    if not v and fam.kind == "P":
        c = _chain_closure(steps, lambda s: (fam.n - s[1], fam.n - s[0]))
        if c is None:
            v.append("odd-symmetric closure is not a chain")
        else:
            closure = FlagType(tuple(s for s in c if s not in ((0, 0), (fam.n, fam.n))))
    return Validation(not v, tuple(v), closure)


def require_valid(fam: Family, delta: FlagType) -> None:
    res = validate_flag_type(fam, delta)
    if not res.ok:
        raise ValueError(f"invalid flag type {delta} for {fam}: " + "; ".join(res.violations))


def ambient_completion(fam: Family, delta: FlagType) -> tuple[tuple[int, int], ...]:
    """Isotropic steps followed by their orthogonal complements, in k|2m."""
    k0, k1 = fam.ambient
    perps = [(k0 - a, k1 - b) for a, b in delta.steps]
    pts = sorted(set(delta.steps) | set(perps))
    return tuple(p for p in pts if p != (k0, k1) and p != (0, 0))


# ---------------------------------------------------------------- symmetry


@dataclass(frozen=True)
class SymmetryProfile:
    even_sym: bool
    odd_sym: bool
    pi_sym: bool
    even_symmetrizable: bool
    odd_symmetrizable: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _profile(steps, n, m) -> SymmetryProfile:
    s = set(steps)
    ev = lambda d: (n - d[0], m - d[1])
    od = lambda d: (n - d[1], n - d[0])
    inner = [d for d in steps if d not in ((0, 0), (n, m))]
    even_sym = all(ev(d) in s for d in inner)
    square = n == m
    odd_sym = square and all(od(d) in s for d in inner)
    pi_sym = square and all(a == b for a, b in steps)
    even_z = _chain_closure(inner, ev) is not None
    odd_z = square and _chain_closure(inner, od) is not None
    return SymmetryProfile(even_sym, odd_sym, pi_sym, even_z, odd_z)


def symmetry_profile(fam: Family, delta: FlagType) -> SymmetryProfile:
    """The three symmetry conditions and both symmetrizability conditions.

    osp flags are read in the ambient space after adding the orthogonal
    complements, which makes every one of them even-symmetric.
    """
    require_valid(fam, delta)
    if fam.is_osp:
        k0, k1 = fam.ambient
        return _profile(ambient_completion(fam, delta), k0, k1)
    n, m = fam.endpoint
    return _profile(delta.steps, n, m)


# ---------------------------------------------------------------- roots


@lru_cache(maxsize=None)
def build_roots(fam: Family) -> tuple[Root, ...]:
    n, m = fam.dims
    X = lambda i, c=1: Weight.unit(n, m, "x", i, c)
    Y = lambda j, c=1: Weight.unit(n, m, "y", j, c)
    out: list[Root] = []
    add = lambda w, p: out.append(Root(w, p))
    k = fam.kind

    if k in "AQ":
        par = "both" if k == "Q" else "even"
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    add(X(i) - X(j), par)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i != j:
                    add(Y(i) - Y(j), "even")
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                add(X(i) - Y(j), "odd")
                add(Y(j) - X(i), "odd")
        return tuple(out)

    if k == "P":
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    add(X(i) - X(j), "even")
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                add(X(i) + X(j), "odd")
                if i < j:
                    add(-(X(i) + X(j)), "odd")
        return tuple(out)

    # osp: B, C, D
    xs = n if k != "C" else 1
    for i in range(1, xs + 1):
        for j in range(i + 1, xs + 1):
            for s in (1, -1):
                for t in (1, -1):
                    add(X(i, s) + X(j, t), "even")
    if k == "B":
        for i in range(1, n + 1):
            for s in (1, -1):
                add(X(i, s), "even")
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for s in (1, -1):
                for t in (1, -1):
                    add(Y(i, s) + Y(j, t), "even")
    for j in range(1, m + 1):
        for s in (1, -1):
            add(Y(j, 2 * s), "even")
    for i in range(1, xs + 1):
        for j in range(1, m + 1):
            for s in (1, -1):
                for t in (1, -1):
                    add(X(i, s) + Y(j, t), "odd")
    if k == "B":
        for j in range(1, m + 1):
            for s in (1, -1):
                add(Y(j, s), "odd")
    return tuple(out)


@lru_cache(maxsize=None)
def root_index(fam: Family) -> dict[Weight, Root]:
    return {r.weight: r for r in build_roots(fam)}

"""Brute-force ground truth: defining matrix representations over the integers.

Every root gets an explicit matrix.  A root lies in Phi when its matrix maps
each step of the standard adapted flag into itself, decided by exact
elimination.  Nothing here reads the level functional of ``parabolic``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Family, FlagType, build_roots, require_valid
from .parabolic import DEFAULT, FlagConvention, PhiSets
from .rootspace import Root, Weight

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_BOUNDS = {"A": 6, "B": 4, "C": 4, "D": 4, "P": 4, "Q": 4}


def oracle_bounds() -> dict[str, int]:
    """Rank bounds; SUPERFLAG_ORACLE_BOUNDS="A=6,B=4,..." overrides."""
    bounds = dict(DEFAULT_BOUNDS)
    env = os.environ.get("SUPERFLAG_ORACLE_BOUNDS", "")
    for item in filter(None, (s.strip() for s in env.split(","))):
        key, val = item.split("=")
        for k in key.strip().upper():
            bounds[k] = int(val)
    return bounds


def _rank_of(fam: Family) -> int:
    return fam.n if fam.kind in "PQ" else fam.rank


class OracleRefused(RuntimeError):
    pass


# ---------------------------------------------------------------- matrices


def _zeros(N):
    return [[0] * N for _ in range(N)]


def _freeze(M) -> Matrix:
    return tuple(tuple(r) for r in M)


def _matmul(A, B):
    N = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(N)) for j in range(N)] for i in range(N)]


@dataclass(frozen=True)
class MatrixModel:
    fam: Family
    dims: tuple[int, int]
    basis_weights: tuple[Weight, ...]
    parities: tuple[int, ...]
    entries: tuple[tuple[Root, Matrix], ...]
    labels: tuple[str, ...] = field(default=())

    def matrices_for(self, root: Root) -> list[Matrix]:
        return [M for r, M in self.entries if r == root]


def _basis(fam: Family):
    """Weights, parities and labels of the defining basis."""
    n, m = fam.dims
    X = lambda i, c=1: Weight.unit(n, m, "x", i, c)
    Y = lambda j, c=1: Weight.unit(n, m, "y", j, c)
    zero = Weight.zero(n, m)
    k = fam.kind
    if k == "A":
        ws = [X(i) for i in range(1, n + 1)] + [Y(j) for j in range(1, m + 1)]
        ps = [0] * n + [1] * m
        labels = [f"e{i}" for i in range(1, n + 1)] + [f"f{j}" for j in range(1, m + 1)]
    elif k in "PQ":
        sign = -1 if k == "P" else 1
        ws = [X(i) for i in range(1, n + 1)] + [X(i, sign) for i in range(1, n + 1)]
        ps = [0] * n + [1] * n
        labels = [f"e{i}" for i in range(1, n + 1)] + [f"f{i}" for i in range(1, n + 1)]
    else:
        k0, k1 = fam.ambient
        xs = n if k != "C" else 1
        ev = [X(i) for i in range(1, xs + 1)]
        if k == "B":
            ev.append(zero)
        ev += [X(i, -1) for i in range(xs, 0, -1)]
        od = [Y(j) for j in range(1, m + 1)] + [Y(j, -1) for j in range(m, 0, -1)]
        ws = ev + od
        ps = [0] * k0 + [1] * k1
        labels = [f"e{i}" for i in range(1, k0 + 1)] + [f"f{j}" for j in range(1, k1 + 1)]
    return ws, ps, labels


def _gram(fam: Family):
    """Even supersymmetric form for osp: S(e_i, e_{k+1-i}) = 1 and symplectic
    S(f_l, f_{2m+1-l}) = +1 for l <= m, -1 beyond."""
    k0, k1 = fam.ambient
    N = k0 + k1
    G = _zeros(N)
    for i in range(k0):
        G[i][k0 - 1 - i] = 1
    for l in range(k1):
        G[k0 + l][k0 + k1 - 1 - l] = 1 if l < k1 // 2 else -1
    return G


def _osp_matrices(fam: Family, ws, ps):
    """Root vectors E_ab + c E_{pi(b) pi(a)} solving the osp relation."""
    G = _gram(fam)
    N = len(ws)
    partner = [next(j for j in range(N) if G[i][j]) for i in range(N)]
    out: dict[Weight, Matrix] = {}
    for a in range(N):
        for b in range(N):
            w = ws[a] - ws[b]
            if w.is_zero() or w in out:
                continue
            px = (ps[a] + ps[b]) % 2
            c = Fraction(-G[a][partner[a]] * (-1) ** (px * ps[b]), G[b][partner[b]])
            M = [[Fraction(0)] * N for _ in range(N)]
            M[a][b] += 1
            M[partner[b]][partner[a]] += c
            if not any(any(r) for r in M):
                continue
            assert all(v.denominator == 1 for r in M for v in r)
            M = [[int(v) for v in r] for r in M]
            _check_osp(M, G, ps, px)
            out[w] = _freeze(M)
    return out


def _check_osp(M, G, ps, px):
    N = len(M)
    for u in range(N):
        for v in range(N):
            # S(Mu, v) + (-1)^{|M||u|} S(u, Mv) = 0
            lhs = sum(M[k][u] * G[k][v] for k in range(N))
            rhs = sum(G[u][k] * M[k][v] for k in range(N))
            if lhs + (-1) ** (px * ps[u]) * rhs != 0:
                raise AssertionError("matrix violates the orthosymplectic relation")


def _torus_check(M, ws, w: Weight):
    # [h, M] = w(h) M  <=>  M_ab (wt_a - wt_b) = w M_ab for each entry
    for a, row in enumerate(M):
        for b, v in enumerate(row):
            if v and ws[a] - ws[b] != w:
                raise AssertionError("matrix entry has the wrong torus weight")


def realize(fam: Family) -> MatrixModel:
    if not isinstance(fam, Family):
        raise OracleRefused(f"no matrix model for {fam}")
    if _rank_of(fam) > oracle_bounds()[fam.kind]:
        raise OracleRefused(f"{fam} exceeds the oracle bound {oracle_bounds()[fam.kind]}")
    return _realize(fam)


@lru_cache(maxsize=None)
def _realize(fam: Family) -> MatrixModel:
    ws, ps, labels = _basis(fam)
    N = len(ws)
    sigma = build_roots(fam)
    entries: list[tuple[Root, Matrix]] = []
    k = fam.kind
    if k in "BCD":
        mats = _osp_matrices(fam, ws, ps)
        for r in sigma:
            entries.append((r, mats[r.weight]))
    elif k == "A":
        for r in sigma:
            for a in range(N):
                for b in range(N):
                    if a != b and ws[a] - ws[b] == r.weight:
                        M = _zeros(N)
                        M[a][b] = 1
                        entries.append((r, _freeze(M)))
    elif k == "Q":
        n = fam.n
        for r in sigma:
            i = next(t for t, c in enumerate(r.weight.x) if c == 1)
            j = next(t for t, c in enumerate(r.weight.x) if c == -1)
            even, odd = _zeros(N), _zeros(N)
            even[i][j] = even[n + i][n + j] = 1
            odd[i][n + j] = odd[n + i][j] = 1
            entries += [(r, _freeze(even)), (r, _freeze(odd))]
    else:  # P: [[A, B], [C, -A^T]], B symmetric, C skew
        n = fam.n
        for r in sigma:
            w = [int(c) for c in r.weight.x]
            M = _zeros(N)
            if r.parity == "even":
                i, j = w.index(1), w.index(-1)
                M[i][j] = 1
                M[n + j][n + i] = -1
            elif sum(w) > 0:
                idx = [t for t, c in enumerate(w) for _ in range(c)] if max(w) < 2 else [w.index(2)] * 2
                i, j = idx
                M[i][n + j] = 1
                M[j][n + i] = 1
            else:
                i, j = [t for t, c in enumerate(w) if c == -1]
                M[n + i][j] = 1
                M[n + j][i] = -1
            _check_p(M, n)
            entries.append((r, _freeze(M)))
    for r, M in entries:
        _torus_check(M, ws, r.weight)
        if k != "Q":
            assert _supertrace(M, ps) == 0
    covered = {r for r, _ in entries}
    assert covered == set(sigma), "every root needs a matrix"
    return MatrixModel(fam, (ps.count(0), ps.count(1)), tuple(ws), tuple(ps), tuple(entries), tuple(labels))


def _supertrace(M, ps):
    return sum(M[i][i] * (-1) ** ps[i] for i in range(len(M)))


def _check_p(M, n):
    A = [r[:n] for r in M[:n]]
    B = [r[n:] for r in M[:n]]
    C = [r[:n] for r in M[n:]]
    D = [r[n:] for r in M[n:]]
    for i in range(n):
        for j in range(n):
            assert D[i][j] == -A[j][i]
            assert B[i][j] == B[j][i]
            assert C[i][j] == -C[j][i]


# ---------------------------------------------------------------- flags


def flag_subspaces(fam: Family, delta: FlagType, convention: FlagConvention = DEFAULT):
    """Generators (as index lists into the basis) of each flag step."""
    k0 = fam.ambient[0] if fam.kind not in "PQ" else fam.n
    k1 = fam.ambient[1] if fam.kind not in "PQ" else fam.n
    out = []
    for a, b in delta.steps:
        evens = list(range(a))
        if fam.kind == "P" or convention.reverse_y:
            odds = [k0 + k1 - 1 - t for t in range(b)]
        else:
            odds = [k0 + t for t in range(b)]
        out.append(evens + odds)
    return out


def _echelon(vectors):
    """Row-reduced basis as {pivot: vector}."""
    basis: dict[int, list[Fraction]] = {}
    for v in vectors:
        v = _reduce(list(map(Fraction, v)), basis)
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is None:
            continue
        v = [c / v[piv] for c in v]
        for p, row in basis.items():
            if row[piv]:
                basis[p] = [x - row[piv] * y for x, y in zip(row, v)]
        basis[piv] = v
    return basis


def _reduce(v, basis):
    for p, row in basis.items():
        if v[p]:
            c = v[p]
            v = [x - c * y for x, y in zip(v, row)]
    return v


def _in_span(v, basis) -> bool:
    return not any(_reduce(list(map(Fraction, v)), basis))


@lru_cache(maxsize=None)
def _step_basis(N: int, gens: tuple[int, ...]):
    vecs = []
    for g in gens:
        e = [0] * N
        e[g] = 1
        vecs.append(e)
    return _echelon(vecs)


@lru_cache(maxsize=None)
def _preserves(M: Matrix, gens: tuple[int, ...]) -> bool:
    N = len(M)
    basis = _step_basis(N, gens)
    for p in basis:
        image = [sum(M[i][k] * basis[p][k] for k in range(N)) for i in range(N)]
        if not _in_span(image, basis):
            return False
    return True


def stabilizer_phi(fam: Family, delta: FlagType, convention: FlagConvention = DEFAULT) -> PhiSets:
    realize(fam)  # bound check
    return _stabilizer_phi(fam, delta, convention)


@lru_cache(maxsize=16384)
def _stabilizer_phi(fam: Family, delta: FlagType, convention: FlagConvention) -> PhiSets:
    require_valid(fam, delta)
    model = _realize(fam)
    steps = [tuple(s) for s in flag_subspaces(fam, delta, convention)]
    by_root: dict[Root, list[Matrix]] = {}
    for r, M in model.entries:
        by_root.setdefault(r, []).append(M)
    phi = {r for r, ms in by_root.items() if all(_preserves(M, g) for M in ms for g in steps)}
    sigma = frozenset(by_root)
    weights = {r.weight for r in phi}
    phi_r = frozenset(r for r in phi if (-r.weight) in weights)
    phi = frozenset(phi)
    return PhiSets(phi, phi_r, phi - phi_r, sigma - phi)


def codim_oracle(fam: Family, rf, delta: FlagType) -> tuple[int, int]:
    """Roots outside Phi and tau Phi, counted from the matrix stabilizer."""
    from .realform import apply_tau

    ph = stabilizer_phi(fam, delta, rf.convention)
    total = odd = 0
    for a in build_roots(fam):
        if a not in ph.phi and apply_tau(rf.tau, a) not in ph.phi:
            total += 1
            odd += a.is_odd
    return total, odd

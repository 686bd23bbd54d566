"""Weights over x_1..x_n | y_1..y_m, roots, the supertrace form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

PARITIES = ("even", "odd", "both")


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(v)


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Weight:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(_frac(c) for c in self.x))
        object.__setattr__(self, "y", tuple(_frac(c) for c in self.y))

    @classmethod
    def zero(cls, n: int, m: int = 0) -> "Weight":
        return cls((0,) * n, (0,) * m)

    @classmethod
    def unit(cls, n: int, m: int, block: str, i: int, coeff=1) -> "Weight":
        """coeff * x_i or coeff * y_i, 1-based."""
        x, y = [0] * n, [0] * m
        (x if block == "x" else y)[i - 1] = coeff
        return cls(x, y)

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.x), len(self.y)

    def _check(self, other: "Weight"):
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.y, other.y)),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.x), tuple(-a for a in self.y))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def scale(self, k) -> "Weight":
        k = _frac(k)
        return Weight(tuple(k * a for a in self.x), tuple(k * a for a in self.y))

    def is_zero(self) -> bool:
        return not any(self.x) and not any(self.y)

    def evaluate(self, xi: "Weight") -> Fraction:
        """alpha(xi): plain coordinate pairing with a torus element."""
        self._check(xi)
        return sum((a * b for a, b in zip(self.x + self.y, xi.x + xi.y)), Fraction(0))

    def coords(self) -> tuple[Fraction, ...]:
        return self.x + self.y

    def to_json(self) -> dict:
        return {"x": [fmt_rational(c) for c in self.x], "y": [fmt_rational(c) for c in self.y]}

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        return cls(tuple(data.get("x", ())), tuple(data.get("y", ())))

    def __str__(self) -> str:
        terms = []
        for block, cs in (("x", self.x), ("y", self.y)):
            for i, c in enumerate(cs, 1):
                if c == 0:
                    continue
                mag = "" if abs(c) == 1 else fmt_rational(abs(c))
                terms.append(("-" if c < 0 else "+") + f"{mag}{block}{i}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


@dataclass(frozen=True, order=True)
class Root:
    weight: Weight
    parity: str

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}, got {self.parity!r}")

    def __neg__(self) -> "Root":
        return Root(-self.weight, self.parity)

    @property
    def is_odd(self) -> bool:
        return self.parity != "even"

    @property
    def is_even(self) -> bool:
        return self.parity != "odd"

    def to_json(self) -> dict:
        return {"w": self.weight.to_json(), "parity": self.parity}

    def __str__(self) -> str:
        return f"{self.weight}[{self.parity}]"


def inner(a: Weight, b: Weight, family=None) -> Fraction:
    """Supertrace form: +1 on x, -1 on y."""
    if a.dims != b.dims:
        raise ValueError(f"dimension mismatch: {a.dims} vs {b.dims}")
    if family is not None and a.dims != family.dims:
        raise ValueError(f"weight has lengths {a.dims}, family expects {family.dims}")
    return sum((p * q for p, q in zip(a.x, b.x)), Fraction(0)) - sum(
        (p * q for p, q in zip(a.y, b.y)), Fraction(0)
    )


def graded_sum(roots: Iterable[Root], dims: Sequence[int] | None = None) -> Weight:
    """Even roots minus odd roots; parity 'both' cancels itself."""
    total = Weight.zero(*dims) if dims is not None else None
    for r in roots:
        if total is None:
            total = Weight.zero(*r.weight.dims)
        if r.parity == "even":
            total = total + r.weight
        elif r.parity == "odd":
            total = total - r.weight
    return total if total is not None else Weight(())


def sort_roots(roots: Iterable[Root]) -> list[Root]:
    return sorted(roots, key=lambda r: (r.weight.coords(), r.parity))

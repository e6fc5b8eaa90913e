"""Exact zero-cycle algebra under the Pontryagin convolution product.

Points live in a free abelian group Z^r with designated generators; a cycle
is a finitely supported map from points to rationals.  The convolution
product acts on points by group addition ({x} * {y} = {x + y}), the origin
cycle {0} is the unit, and degree (sum of coefficients) is a ring
homomorphism to Q.

Everything here is exact: coefficients are arbitrary-precision rationals
and there is no floating point.  Support caps are guards, not truncations:
an operation that would produce a point above the cap raises
``SupportCapExceeded`` instead of dropping terms, so every identity
reported by this module is an identity of the free group ring.

The truncated logarithm / exponential / gamma series all stop at order
``geom_dim + 1`` (the nilpotency order of the degree-zero ideal in the
modeled quotient).  No quotienting happens here; callers that reason
modulo high powers of the augmentation ideal must say so explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class SupportCapExceeded(Exception):
    """A convolution would involve a point above the declared support cap."""

    def __init__(self, point: "GroupPoint", cap: int, where: str = "product"):
        self.point = point
        self.cap = cap
        self.where = where
        super().__init__(
            f"{where} point {point} has height {point.height()} > support cap {cap}"
        )


class DegreeError(Exception):
    """A series operation received a cycle of the wrong degree."""


class GroupPoint:
    """A point of the ambient group: an integer coordinate vector."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int]):
        coords = tuple(coords)
        for c in coords:
            if not isinstance(c, int):
                raise TypeError(f"point coordinates must be integers, got {c!r}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def origin(cls, rank: int) -> "GroupPoint":
        return cls((0,) * rank)

    @classmethod
    def generator(cls, rank: int, index: int) -> "GroupPoint":
        """The index-th designated generator (0-based)."""
        if not 0 <= index < rank:
            raise ValueError(f"generator index {index} out of range for rank {rank}")
        return cls(tuple(1 if i == index else 0 for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def height(self) -> int:
        """Total monomial height: sum of absolute coordinates."""
        return sum(abs(c) for c in self.coords)

    def is_origin(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "GroupPoint") -> "GroupPoint":
        if self.rank != other.rank:
            raise ValueError("rank mismatch between points")
        return GroupPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, n: int) -> "GroupPoint":
        return GroupPoint(tuple(n * c for c in self.coords))

    def __neg__(self) -> "GroupPoint":
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupPoint) and self.coords == other.coords

    def __lt__(self, other: "GroupPoint") -> bool:
        return self.coords < other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __setattr__(self, name, value):
        raise AttributeError("GroupPoint is immutable")

    def __repr__(self) -> str:
        return f"GroupPoint({self.coords})"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {value!r}")


class Cycle:
    """A zero-cycle: finite formal Q-combination of group points.

    Canonical form is maintained on construction: zero coefficients are
    never stored and equality is term-by-term.  Instances are immutable;
    all operations return new cycles.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping | Iterable = ()):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[GroupPoint, Fraction] = {}
        for point, coeff in items:
            if not isinstance(point, GroupPoint):
                point = GroupPoint(point)
            if point.rank != rank:
                raise ValueError(
                    f"point {point} has rank {point.rank}, cycle has rank {rank}"
                )
            c = acc.get(point, Fraction(0)) + _as_fraction(coeff)
            if c:
                acc[point] = c
            elif point in acc:
                del acc[point]
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_terms", acc)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "Cycle":
        return cls(rank)

    @classmethod
    def unit(cls, rank: int) -> "Cycle":
        """The convolution unit {0_A}."""
        return cls(rank, {GroupPoint.origin(rank): Fraction(1)})

    @classmethod
    def point(cls, point: GroupPoint, coeff=1) -> "Cycle":
        return cls(point.rank, {point: _as_fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def coeff(self, point: GroupPoint) -> Fraction:
        return self._terms.get(point, Fraction(0))

    def items(self) -> Iterator[tuple[GroupPoint, Fraction]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[GroupPoint, Fraction]]:
        """Terms in lexicographic point order (the canonical output order)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].coords)

    def support(self) -> list[GroupPoint]:
        return sorted(self._terms, key=lambda p: p.coords)

    def support_size(self) -> int:
        return len(self._terms)

    def max_height(self) -> int:
        return max((p.height() for p in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Cycle") -> "Cycle":
        if not isinstance(other, Cycle):
            return NotImplemented
        if self.rank != other.rank:
            raise ValueError("rank mismatch between cycles")
        acc = dict(self._terms)
        for p, c in other._terms.items():
            s = acc.get(p, Fraction(0)) + c
            if s:
                acc[p] = s
            elif p in acc:
                del acc[p]
        out = Cycle(self.rank)
        object.__setattr__(out, "_terms", acc)
        return out

    def __neg__(self) -> "Cycle":
        out = Cycle(self.rank)
        object.__setattr__(out, "_terms", {p: -c for p, c in self._terms.items()})
        return out

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + (-other)

    def scale(self, scalar) -> "Cycle":
        s = _as_fraction(scalar)
        if not s:
            return Cycle.zero(self.rank)
        out = Cycle(self.rank)
        object.__setattr__(out, "_terms", {p: s * c for p, c in self._terms.items()})
        return out

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Cycle)
            and self.rank == other.rank
            and self._terms == other._terms
        )

    def __setattr__(self, name, value):
        raise AttributeError("Cycle is immutable")

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Cycle({self.rank}, 0)"
        parts = [f"{c}*{{{p.coords}}}" for p, c in self.sorted_items()]
        return f"Cycle({self.rank}, {' + '.join(parts)})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [
                {"point": list(p.coords), "coeff": format_rational(c)}
                for p, c in self.sorted_items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Cycle":
        rank = int(data["rank"])
        terms = [
            (GroupPoint(int(x) for x in t["point"]), parse_rational(t["coeff"]))
            for t in data["terms"]
        ]
        return cls(rank, terms)

    @classmethod
    def from_json(cls, text: str) -> "Cycle":
        return cls.from_json_dict(json.loads(text))


def format_rational(value) -> str:
    """Decimal-free 'p/q' form, canonical lowest terms with q > 0."""
    f = _as_fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class RingContext:
    """Ambient parameters for convolution computations.

    ``geom_dim`` is the geometric dimension g of the modeled variety; the
    degree-zero ideal is treated as nilpotent of order g + 1 by consumers
    that quotient (never by this module).  ``support_cap`` bounds the total
    monomial height of any point an operation may touch; exceeding it is an
    error, never a silent truncation.
    """

    rank: int
    geom_dim: int
    support_cap: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be a positive integer")
        if self.geom_dim < 1:
            raise ValueError("geom_dim must be a positive integer")
        if self.support_cap < 0:
            raise ValueError("support_cap must be nonnegative")

    @property
    def series_order(self) -> int:
        """Truncation order g + 1 for the log/exp/gamma series."""
        return self.geom_dim + 1

    def origin(self) -> GroupPoint:
        return GroupPoint.origin(self.rank)

    def generator(self, index: int) -> GroupPoint:
        return GroupPoint.generator(self.rank, index)

    def unit(self) -> Cycle:
        return Cycle.unit(self.rank)


def cycle_add(c1: Cycle, c2: Cycle) -> Cycle:
    """Term-wise exact sum in canonical form."""
    return c1 + c2


def pontryagin(c1: Cycle, c2: Cycle, ctx: RingContext) -> Cycle:
    """Convolution product: coeff of p is the sum over p1 + p2 = p.

    Raises ``SupportCapExceeded`` if an input or product point exceeds the
    cap.  The cap check happens before coefficients are merged, so
    cancellation can never mask an overflow.
    """
    if c1.rank != ctx.rank or c2.rank != ctx.rank:
        raise ValueError("cycle rank does not match context rank")
    cap = ctx.support_cap
    for c in (c1, c2):
        for p in c._terms:
            if p.height() > cap:
                raise SupportCapExceeded(p, cap, where="input")
    acc: dict[GroupPoint, Fraction] = {}
    for p1, a in c1._terms.items():
        for p2, b in c2._terms.items():
            p = p1 + p2
            if p.height() > cap:
                raise SupportCapExceeded(p, cap)
            s = acc.get(p, Fraction(0)) + a * b
            if s:
                acc[p] = s
            elif p in acc:
                del acc[p]
    out = Cycle(ctx.rank)
    object.__setattr__(out, "_terms", acc)
    return out


def star_power(c: Cycle, k: int, ctx: RingContext) -> Cycle:
    """k-fold convolution power; the empty product (k = 0) is {0_A}."""
    if k < 0:
        raise ValueError("star_power exponent must be nonnegative")
    result = Cycle.unit(ctx.rank)
    for _ in range(k):
        result = pontryagin(result, c, ctx)
    return result


def pushforward(c: Cycle, n: int) -> Cycle:
    """Push forward along multiplication by n: each point p goes to n*p.

    This is a ring homomorphism for the convolution product for every n.
    """
    acc: dict[GroupPoint, Fraction] = {}
    for p, coeff in c._terms.items():
        q = p.scale(n)
        s = acc.get(q, Fraction(0)) + coeff
        if s:
            acc[q] = s
        elif q in acc:
            del acc[q]
    out = Cycle(c.rank)
    object.__setattr__(out, "_terms", acc)
    return out


def degree(c: Cycle) -> Fraction:
    """Exact sum of coefficients; multiplicative under *, additive under +."""
    return c.degree()


def log_cycle(c: Cycle, ctx: RingContext) -> Cycle:
    """Truncated convolution logarithm of a degree-1 cycle.

    With u = c - {0}, returns u - u^{*2}/2 + ... +- u^{*(g+1)}/(g+1),
    stopping at the nilpotency order g + 1.
    """
    if c.degree() != 1:
        raise DegreeError(f"log_cycle requires degree 1, got {c.degree()}")
    u = c - Cycle.unit(ctx.rank)
    acc = Cycle.zero(ctx.rank)
    power = Cycle.unit(ctx.rank)
    for j in range(1, ctx.series_order + 1):
        power = pontryagin(power, u, ctx)
        acc = acc + power.scale(Fraction((-1) ** (j + 1), j))
    return acc


def exp_cycle(c: Cycle, ctx: RingContext) -> Cycle:
    """Truncated convolution exponential of a degree-0 cycle.

    Returns {0} + c + c^{*2}/2! + ... + c^{*(g+1)}/(g+1)!.
    """
    if c.degree() != 0:
        raise DegreeError(f"exp_cycle requires degree 0, got {c.degree()}")
    acc = Cycle.unit(ctx.rank)
    power = Cycle.unit(ctx.rank)
    factorial = 1
    for j in range(1, ctx.series_order + 1):
        power = pontryagin(power, c, ctx)
        factorial *= j
        acc = acc + power.scale(Fraction(1, factorial))
    return acc


def gamma(x: GroupPoint, ctx: RingContext) -> Cycle:
    """The gamma cycle of a point: sum_{j=1}^{g+1} ({0} - {x})^{*j} / j.

    Runs to the truncation order g + 1, so that gamma(x) == -log_cycle({x})
    holds exactly in the free ring (both series stop at the same order).
    gamma(0_A) is the zero cycle.
    """
    v = Cycle.unit(ctx.rank) - Cycle.point(x)
    acc = Cycle.zero(ctx.rank)
    power = Cycle.unit(ctx.rank)
    for j in range(1, ctx.series_order + 1):
        power = pontryagin(power, v, ctx)
        acc = acc + power.scale(Fraction(1, j))
    return acc


def gamma_factorization(x: GroupPoint, ctx: RingContext) -> Cycle:
    """Degree-1 cofactor w with gamma(x) == -(({x} - {0}) * w) exactly.

    w = {0} - u/2 + u^{*2}/3 - ... +- u^{*g}/(g+1) with u = {x} - {0}.
    Convolving -u against w reproduces every gamma term through order g+1,
    which makes gamma(x)^{*k} == (-1)^k u^{*k} * w^{*k} an exact identity.
    """
    if x.is_origin():
        raise ValueError("gamma_factorization requires a nonzero point")
    u = Cycle.point(x) - Cycle.unit(ctx.rank)
    acc = Cycle.zero(ctx.rank)
    power = Cycle.unit(ctx.rank)
    for j in range(0, ctx.geom_dim + 1):
        if j > 0:
            power = pontryagin(power, u, ctx)
        acc = acc + power.scale(Fraction((-1) ** j, j + 1))
    return acc

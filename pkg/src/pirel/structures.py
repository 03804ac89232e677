"""Finite linear orders, their order duals, and iterated-discrete samples.

A structure is an ordered list of distinct point labels; its intervals are
all strict pairs of positions. The order is the list order, so relation
evaluation works on integer positions regardless of what the labels are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Tuple

import numpy as np

from . import relations


@total_ordering
@dataclass(frozen=True)
class IteratedDiscretePoint:
    """A point (n, q) of the Z x Q structure, ordered by (q, n)."""

    n: int
    q: Fraction

    def sort_key(self):
        return (self.q, self.n)

    def __lt__(self, other):
        if not isinstance(other, IteratedDiscretePoint):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "(%d,%s)" % (self.n, self.q)

    def to_json(self):
        return [self.n, str(self.q)]


def point_from_json(obj):
    if isinstance(obj, str):
        return obj
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return IteratedDiscretePoint(int(obj[0]), Fraction(str(obj[1])))
    raise ValueError("bad point serialization: %r" % (obj,))


def point_to_json(p):
    if isinstance(p, IteratedDiscretePoint):
        return p.to_json()
    return str(p)


class Structure:
    """A finite two-sorted structure: ordered points plus all strict intervals.

    Points are addressed by position 0..n-1; intervals by (left, right)
    position pairs with left < right. Both finite linear order classes
    (general and discrete) contain every such structure.
    """

    def __init__(self, points: Sequence):
        points = tuple(points)
        if not points:
            raise ValueError("a structure needs at least one point")
        if len(set(points)) != len(points):
            raise ValueError("duplicate point labels")
        self.points = points
        self.index = {p: i for i, p in enumerate(points)}
        n = len(points)
        self.intervals: Tuple[Tuple[int, int], ...] = tuple(
            (i, j) for i in range(n) for j in range(i + 1, n))
        self.interval_index = {iv: k for k, iv in enumerate(self.intervals)}
        self._tables: dict = {}

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_intervals(self) -> int:
        return len(self.intervals)

    def point_label(self, i: int) -> str:
        return str(self.points[i])

    def interval_label(self, iv: Tuple[int, int]) -> str:
        return "[%s,%s]" % (self.point_label(iv[0]), self.point_label(iv[1]))

    def elements(self, sort: str):
        if sort == relations.POINT:
            return range(self.n_points)
        return self.intervals

    def holds(self, token: str, x, y) -> bool:
        """Relation truth on positional elements (ints or position pairs)."""
        return relations.holds(token, x, y)

    def table(self, token: str) -> np.ndarray:
        """Boolean matrix of the relation over positional element lists.

        Shape follows the argument sorts: intervals are indexed by their
        ordinal in self.intervals, points by position.
        """
        token = relations.normalize(token)
        cached = self._tables.get(token)
        if cached is not None:
            return cached
        n = self.n_points
        left = np.array([iv[0] for iv in self.intervals], dtype=np.int64)
        right = np.array([iv[1] for iv in self.intervals], dtype=np.int64)
        pts = np.arange(n, dtype=np.int64)

        def iv_region(lo, hi, p):
            return np.where(p < lo, 0,
                            np.where(p == lo, 1,
                                     np.where(p < hi, 2,
                                              np.where(p == hi, 3, 4))))

        def pt_region(q, p):
            return np.where(p < q, 0, np.where(p == q, 2, 4))

        sorts = relations.arg_sorts(token)
        if sorts == (relations.INTERVAL, relations.INTERVAL):
            lo, hi = left[:, None], right[:, None]
            r1 = iv_region(lo, hi, left[None, :])
            r2 = iv_region(lo, hi, right[None, :])
            k1, k2 = relations._II_BY_TOKEN[token]
            out = (r1 == k1) & (r2 == k2)
        elif sorts == (relations.INTERVAL, relations.POINT):
            reg = iv_region(left[:, None], right[:, None], pts[None, :])
            out = reg == int(token[2])
        elif sorts == (relations.POINT, relations.INTERVAL):
            r1 = pt_region(pts[:, None], left[None, :])
            r2 = pt_region(pts[:, None], right[None, :])
            k1, k2 = relations._PI_BY_TOKEN[token]
            out = (r1 == k1) & (r2 == k2)
        else:
            reg = pt_region(pts[:, None], pts[None, :])
            out = reg == relations._PP_BY_TOKEN[token]
        out.setflags(write=False)
        self._tables[token] = out
        return out

    def to_json(self) -> dict:
        return {"points": [point_to_json(p) for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> "Structure":
        if not isinstance(obj, dict) or "points" not in obj:
            raise ValueError("structure JSON needs a 'points' list")
        return cls([point_from_json(p) for p in obj["points"]])


def finite_linear_order(n: int) -> Structure:
    """The canonical n-point order with labels '0'..'n-1'."""
    if n < 1:
        raise ValueError("need at least one point")
    return Structure([str(i) for i in range(n)])


def order_dual(s: Structure) -> Structure:
    """Same labels in reversed order; interval [a,b] corresponds to [b,a]."""
    return Structure(tuple(reversed(s.points)))


def dual_point(s: Structure, i: int) -> int:
    return s.n_points - 1 - i

def dual_interval(s: Structure, iv: Tuple[int, int]) -> Tuple[int, int]:
    n = s.n_points
    return (n - 1 - iv[1], n - 1 - iv[0])


def is_discrete(s: Structure) -> bool:
    """Every non-extremal point has direct neighbors (always, when finite)."""
    order = list(range(s.n_points))
    for a, b in zip(order, order[1:]):
        if any(a < z < b for z in order):
            return False
    return True


def iterated_discrete_sample(int_bound: int = 1, denom_bound: int = 2,
                             numer_bound: int = 2) -> Structure:
    """All points (n, p/d) with |n| <= int_bound, |p| <= numer_bound and
    1 <= d <= denom_bound (reduced), sorted by the (q, n) order."""
    if int_bound < 1 or denom_bound < 1 or numer_bound < 1:
        raise ValueError("all sample bounds must be at least 1")
    pts = []
    for d in range(1, denom_bound + 1):
        for p in range(-numer_bound, numer_bound + 1):
            q = Fraction(p, d)
            if q.denominator != d:
                continue  # not reduced: already emitted at its lowest terms
            for n in range(-int_bound, int_bound + 1):
                pts.append(IteratedDiscretePoint(n, q))
    if not pts:
        raise ValueError("sample bounds produce no points")
    pts.sort()
    return Structure(pts)

"""Qualitative relations between points and intervals on a linear order.

An interval [a, b] (strict: a < b) splits a linear order into five regions:
0 (before a), 1 (= a), 2 (strictly between), 3 (= b), 4 (after b). A point
splits it into regions 0, 2, 4 only. Each relation between two objects is
named by the regions of the second object's endpoints within the first
object's partition, which gives 13 interval-interval relations, 5
interval-point, 5 point-interval and 3 point-point relations: 26 in total.

Elements are any values comparable with < and ==; intervals are (left, right)
pairs with left < right. Sorts are carried by relation tokens, not values.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

POINT = "p"
INTERVAL = "i"

# Valid region pairs (k, k') for interval-interval relations: the second
# interval's endpoints fall in regions k <= k' of the first interval's
# partition, with equal endpoints only in point regions (never 1 or 3).
_II_PAIRS = (
    (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
    (1, 2), (1, 3), (1, 4),
    (2, 2), (2, 3), (2, 4),
    (3, 4),
    (4, 4),
)
_PI_PAIRS = ((0, 0), (0, 2), (0, 4), (2, 4), (4, 4))

II_TOKENS = tuple("=i" if p == (1, 3) else "ii%d%d" % p for p in _II_PAIRS)
IP_TOKENS = tuple("ip%d" % k for k in range(5))
PI_TOKENS = tuple("pi%d%d" % p for p in _PI_PAIRS)
PP_TOKENS = (">", "=p", "<")  # second point in region 0 / 2 / 4 of the first

ALL_RELATIONS = II_TOKENS + IP_TOKENS + PI_TOKENS + PP_TOKENS

_ALIASES = {"ii13": "=i", "pp2": "=p", "pp0": ">", "pp4": "<"}

_II_BY_TOKEN = {t: p for t, p in zip(II_TOKENS, _II_PAIRS)}
_PI_BY_TOKEN = {t: p for t, p in zip(PI_TOKENS, _PI_PAIRS)}
_PP_BY_TOKEN = {">": 0, "=p": 2, "<": 4}


def normalize(token: str) -> str:
    """Map aliases (ii13, pp2, ...) to canonical tokens; reject unknowns."""
    token = _ALIASES.get(token, token)
    if token not in _KIND:
        raise ValueError("unknown relation token: %r" % (token,))
    return token


def _kind_table() -> dict:
    kinds = {}
    for t in II_TOKENS:
        kinds[t] = "ii"
    for t in IP_TOKENS:
        kinds[t] = "ip"
    for t in PI_TOKENS:
        kinds[t] = "pi"
    for t in PP_TOKENS:
        kinds[t] = "pp"
    return kinds


_KIND = _kind_table()

_SORTS = {"ii": (INTERVAL, INTERVAL), "ip": (INTERVAL, POINT),
          "pi": (POINT, INTERVAL), "pp": (POINT, POINT)}


def arg_sorts(token: str) -> Tuple[str, str]:
    """Sorts of a relation's two arguments, as ('p'|'i', 'p'|'i')."""
    return _SORTS[_KIND[normalize(token)]]


def interval_region(left, right, p) -> int:
    """Region 0..4 of point p in the partition induced by [left, right]."""
    if p < left:
        return 0
    if p == left:
        return 1
    if p < right:
        return 2
    if p == right:
        return 3
    return 4


def point_region(q, p) -> int:
    """Region 0, 2 or 4 of point p in the partition induced by point q."""
    if p < q:
        return 0
    if p == q:
        return 2
    return 4


def holds(token: str, x, y) -> bool:
    """Truth of relation token on (x, y); argument shapes follow the sorts."""
    token = normalize(token)
    kind = _KIND[token]
    if kind == "ii":
        a, b = x
        c, d = y
        return _II_BY_TOKEN[token] == (interval_region(a, b, c),
                                       interval_region(a, b, d))
    if kind == "ip":
        a, b = x
        return interval_region(a, b, y) == int(token[2])
    if kind == "pi":
        c, d = y
        return _PI_BY_TOKEN[token] == (point_region(x, c), point_region(x, d))
    return point_region(x, y) == _PP_BY_TOKEN[token]


# Inverses: holds(r, x, y) iff holds(inverse(r), y, x). The interval-interval
# entries re-express the first interval's endpoint regions from the second
# interval's partition; the table is verified exhaustively in the test suite.
_INVERSE = {
    "ii00": "ii44", "ii01": "ii34", "ii02": "ii24", "ii03": "ii23",
    "ii04": "ii22", "ii12": "ii14", "=i": "=i", "ii14": "ii12",
    "ii22": "ii04", "ii23": "ii03", "ii24": "ii02", "ii34": "ii01",
    "ii44": "ii00",
    "ip0": "pi44", "ip1": "pi24", "ip2": "pi04", "ip3": "pi02", "ip4": "pi00",
    "pi00": "ip4", "pi02": "ip3", "pi04": "ip2", "pi24": "ip1", "pi44": "ip0",
    "<": ">", ">": "<", "=p": "=p",
}


def inverse(token: str) -> str:
    return _INVERSE[normalize(token)]


# The canonical 14-relation signature: one relation per inverse pair, with
# mixed relations taken in their interval-point form. Bit positions fix the
# display order of relation sets and the bitmask encoding used throughout.
RPLUS = ("=p", "=i", "<", "ip0", "ip1", "ip2", "ip3", "ip4",
         "ii34", "ii14", "ii03", "ii24", "ii04", "ii44")
IPLUS = ("=i", "ii34", "ii14", "ii03", "ii24", "ii04", "ii44")
MPLUS = ("ip0", "ip1", "ip2", "ip3", "ip4")
PPLUS = ("=p", "<")

UNIVERSES = {"Rplus": RPLUS, "Iplus": IPLUS, "Mplus": MPLUS, "Pplus": PPLUS}

_BIT = {t: n for n, t in enumerate(RPLUS)}

# Order-dual behaviour partitions the canonical signature.
REVERSIBLE = ("ip0", "ip1", "ip3", "ip4", "ii14", "ii03")
SELF_SYMMETRIC = ("ip2", "ii04")
_REVERSE = {"ip0": "ip4", "ip4": "ip0", "ip1": "ip3", "ip3": "ip1",
            "ii14": "ii03", "ii03": "ii14"}


def classify(token: str) -> str:
    """One of 'reversible', 'self-symmetric', 'symmetric-non-self'."""
    token = normalize(token)
    if token not in _BIT:
        raise ValueError("relation outside the canonical signature: %r"
                         % (token,))
    if token in _REVERSE:
        return "reversible"
    if token in SELF_SYMMETRIC:
        return "self-symmetric"
    return "symmetric-non-self"


def reverse(token: str) -> str:
    token = normalize(token)
    if token not in _REVERSE:
        raise ValueError("not a reversible relation: %r" % (token,))
    return _REVERSE[token]


def symmetric_relation(token: str) -> str:
    """Image of one relation under the order dual: reversibles swap."""
    token = normalize(token)
    if token not in _BIT:
        raise ValueError("relation outside the canonical signature: %r"
                         % (token,))
    return _REVERSE.get(token, token)


def symmetric_set(tokens: Iterable[str]) -> frozenset:
    return frozenset(symmetric_relation(t) for t in tokens)


def token_bit(token: str) -> int:
    token = normalize(token)
    if token not in _BIT:
        raise ValueError("relation outside the canonical signature: %r"
                         % (token,))
    return _BIT[token]


def mask_of(tokens: Iterable[str]) -> int:
    mask = 0
    for t in tokens:
        mask |= 1 << token_bit(t)
    return mask


def tokens_of(mask: int) -> Tuple[str, ...]:
    return tuple(t for n, t in enumerate(RPLUS) if mask >> n & 1)


def symmetric_mask(mask: int) -> int:
    return mask_of(symmetric_set(tokens_of(mask)))


def sort_tokens(tokens: Iterable[str]) -> Tuple[str, ...]:
    """Canonical display order for a relation set (bit order)."""
    return tuple(sorted((normalize(t) for t in tokens), key=token_bit))


def sort_sets(masks: Iterable[int]) -> Tuple[int, ...]:
    """Canonical order for a list of relation sets: cardinality, then mask."""
    return tuple(sorted(masks, key=lambda m: (bin(m).count("1"), m)))


def universe_mask(name: str) -> int:
    if name not in UNIVERSES:
        raise ValueError("unknown universe: %r" % (name,))
    return mask_of(UNIVERSES[name])

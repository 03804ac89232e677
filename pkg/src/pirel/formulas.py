"""Two-sorted first-order formulas: syntax tree, parser, printer, evaluation.

Concrete syntax (quantifiers take maximal scope):

    formula := ("E"|"A") var formula | iff
    iff     := imp { "<->" imp }          (folds left)
    imp     := or { "->" or }             (folds right)
    or      := and { "|" and }
    and     := unary { "&" unary }
    unary   := "~" unary | "(" formula ")" | reltoken "(" var "," var ")"
    var     := ident "_p" | ident "_i"

Evaluation is offered twice: a direct recursive walker over one assignment,
and a set-semantics evaluator that builds the whole truth table of a formula
as a boolean array with one axis per free variable. The two are checked
against each other in the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

import numpy as np

from . import relations


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class SortError(ValueError):
    pass


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    rel: str
    left: str
    right: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


_BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_QUANT = {Exists: "E", Forall: "A"}


def var_sort(name: str) -> str:
    if name.endswith("_p"):
        return relations.POINT
    if name.endswith("_i"):
        return relations.INTERVAL
    raise SortError("variable %r has no _p/_i sort suffix" % (name,))


_TOKEN_RE = re.compile(
    r"\s+"
    r"|(?P<iff><->)"
    r"|(?P<imp>->)"
    r"|(?P<rel>=[pi]|<|>)"
    r"|(?P<sym>[()~&|,])"
    r"|(?P<word>[A-Za-z][A-Za-z0-9]*(?:_[pi])?)"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, text: str):
        kind, value, pos = self.next()
        if value != text:
            raise ParseError("expected %r, found %r" % (text, value), pos)

    def formula(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "word" and value in ("E", "A"):
            self.next()
            var = self.variable()
            body = self.formula()  # maximal scope
            return Exists(var, body) if value == "E" else Forall(var, body)
        return self.iff()

    def variable(self) -> str:
        kind, value, pos = self.next()
        if kind != "word" or not value.endswith(("_p", "_i")):
            raise ParseError("expected a sorted variable, found %r" % (value,),
                             pos)
        return value

    def iff(self) -> Formula:
        out = self.imp()
        while self.peek()[1] == "<->":
            self.next()
            out = Iff(out, self.imp())
        return out

    def imp(self) -> Formula:
        parts = [self.or_()]
        while self.peek()[1] == "->":
            self.next()
            parts.append(self.or_())
        return reduce(lambda r, l: Implies(l, r), reversed(parts))

    def or_(self) -> Formula:
        out = self.and_()
        while self.peek()[1] == "|":
            self.next()
            out = Or(out, self.and_())
        return out

    def and_(self) -> Formula:
        out = self.unary()
        while self.peek()[1] == "&":
            self.next()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if value == "~":
            self.next()
            return Not(self.unary())
        if value == "(":
            self.next()
            out = self.formula()
            self.expect(")")
            return out
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.next()
        if kind not in ("rel", "word"):
            raise ParseError("expected a relation token, found %r" % (value,),
                             pos)
        try:
            rel = relations.normalize(value)
        except ValueError:
            raise ParseError("unknown relation token %r" % (value,), pos)
        self.expect("(")
        left = self.variable()
        self.expect(",")
        right = self.variable()
        self.expect(")")
        return Atom(rel, left, right)


def parse(text: str) -> Formula:
    parser = _Parser(text)
    out = parser.formula()
    kind, value, pos = parser.peek()
    if kind != "eof":
        raise ParseError("trailing input %r" % (value,), pos)
    sort_check(out)
    return out


def sort_check(f: Formula) -> None:
    """Reject atoms whose argument sorts do not match the relation."""
    if isinstance(f, Atom):
        want = relations.arg_sorts(f.rel)
        got = (var_sort(f.left), var_sort(f.right))
        if want != got:
            raise SortError("atom %s(%s,%s) wants sorts %s, got %s"
                            % (f.rel, f.left, f.right, want, got))
    elif isinstance(f, Not):
        sort_check(f.body)
    elif isinstance(f, (And, Or, Implies, Iff)):
        sort_check(f.left)
        sort_check(f.right)
    elif isinstance(f, (Exists, Forall)):
        var_sort(f.var)
        sort_check(f.body)
    else:
        raise TypeError("not a formula node: %r" % (f,))


def to_text(f: Formula) -> str:
    """Canonical fully parenthesized rendering; parse(to_text(f)) == f."""
    if isinstance(f, Atom):
        return "%s(%s,%s)" % (f.rel, f.left, f.right)
    if isinstance(f, Not):
        body = to_text(f.body)
        if isinstance(f.body, (Atom, Not)):
            return "~" + body
        return "~(" + body + ")"
    if isinstance(f, (Exists, Forall)):
        return "%s %s %s" % (_QUANT[type(f)], f.var, to_text(f.body))
    op = _BINARY[type(f)]
    return "(%s %s %s)" % (to_text(f.left), op, to_text(f.right))


def free_vars(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Atom):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def signature(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Atom):
        return frozenset((f.rel,))
    if isinstance(f, Not):
        return signature(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return signature(f.left) | signature(f.right)
    return signature(f.body)


def evaluate(structure, f: Formula, assignment: Mapping) -> bool:
    """Direct Tarskian evaluation under one assignment.

    Points are positions (ints), intervals are position pairs. Every free
    variable must be assigned, with the right element shape for its sort.
    """
    if isinstance(f, Atom):
        try:
            x = assignment[f.left]
            y = assignment[f.right]
        except KeyError as e:
            raise ValueError("unassigned free variable %s" % (e.args[0],))
        return relations.holds(f.rel, x, y)
    if isinstance(f, Not):
        return not evaluate(structure, f.body, assignment)
    if isinstance(f, And):
        return (evaluate(structure, f.left, assignment)
                and evaluate(structure, f.right, assignment))
    if isinstance(f, Or):
        return (evaluate(structure, f.left, assignment)
                or evaluate(structure, f.right, assignment))
    if isinstance(f, Implies):
        return (not evaluate(structure, f.left, assignment)
                or evaluate(structure, f.right, assignment))
    if isinstance(f, Iff):
        return (evaluate(structure, f.left, assignment)
                == evaluate(structure, f.right, assignment))
    domain = structure.elements(var_sort(f.var))
    inner = dict(assignment)
    if isinstance(f, Exists):
        for element in domain:
            inner[f.var] = element
            if evaluate(structure, f.body, inner):
                return True
        return False
    for element in domain:
        inner[f.var] = element
        if not evaluate(structure, f.body, inner):
            return False
    return True


def _align(arr: np.ndarray, axes: Tuple[str, ...],
           target: Tuple[str, ...]) -> np.ndarray:
    """Permute arr's axes into target order, inserting size-1 axes."""
    perm = [axes.index(v) for v in target if v in axes]
    arr = np.transpose(arr, perm)
    shape = []
    k = 0
    for v in target:
        if v in axes:
            shape.append(arr.shape[k])
            k += 1
        else:
            shape.append(1)
    return arr.reshape(shape)


def _merge(a: Tuple[str, ...], b: Tuple[str, ...]) -> Tuple[str, ...]:
    return a + tuple(v for v in b if v not in a)


def truth_table(structure, f: Formula):
    """Set-semantics evaluation: (bool array, axis variable names).

    The array has one axis per free variable of f, ordered by first free
    appearance; entry [..] is the truth value under the corresponding
    positional elements (interval axes are indexed by interval ordinal).
    """
    arr, axes = _table(structure, f)
    return arr, axes


def _table(structure, f: Formula):
    if isinstance(f, Atom):
        arr = structure.table(f.rel)
        if f.left == f.right:
            return np.diagonal(arr).copy(), (f.left,)
        return arr, (f.left, f.right)
    if isinstance(f, Not):
        arr, axes = _table(structure, f.body)
        return ~arr, axes
    if isinstance(f, (And, Or, Implies, Iff)):
        left, la = _table(structure, f.left)
        right, ra = _table(structure, f.right)
        axes = _merge(la, ra)
        left = _align(left, la, axes)
        right = _align(right, ra, axes)
        if isinstance(f, And):
            return left & right, axes
        if isinstance(f, Or):
            return left | right, axes
        if isinstance(f, Implies):
            return ~left | right, axes
        return left == right, axes
    if isinstance(f, (Exists, Forall)):
        arr, axes = _table(structure, f.body)
        size = len(structure.elements(var_sort(f.var)))
        if f.var not in axes:
            arr = np.broadcast_to(arr[..., None], arr.shape + (size,))
            axes = axes + (f.var,)
        k = axes.index(f.var)
        # quantified axes may still have size 1 from alignment shortcuts
        if arr.shape[k] != size:
            full = list(arr.shape)
            full[k] = size
            arr = np.broadcast_to(arr, full)
        if isinstance(f, Exists):
            out = arr.any(axis=k)
        else:
            out = arr.all(axis=k)
        return out, axes[:k] + axes[k + 1:]
    raise TypeError("not a formula node: %r" % (f,))


def definition_axes(f: Formula, rel: str) -> Tuple[str, str]:
    """The (x, y) free variables a defining formula for rel must have."""
    sorts = relations.arg_sorts(rel)
    want = ("x_" + sorts[0], "y_" + sorts[1])
    free = free_vars(f)
    if free != frozenset(want):
        raise SortError("definition of %s needs free variables %s, got %s"
                        % (rel, set(want), set(free) or "{}"))
    return want


def defines_on(structure, f: Formula, rel: str) -> bool:
    """True iff f's truth table equals rel's relation table on structure."""
    return counterexample_on(structure, f, rel) is None


def counterexample_on(structure, f: Formula, rel: str):
    """First (x, y, formula_truth, relation_truth) disagreement, or None."""
    rel = relations.normalize(rel)
    want = definition_axes(f, rel)
    arr, axes = _table(structure, f)
    arr = _align(arr, axes, want)
    sizes = tuple(len(structure.elements(var_sort(v))) for v in want)
    arr = np.broadcast_to(arr, sizes)
    goal = structure.table(rel)
    if arr.shape != goal.shape:
        raise SortError("definition table shape %s does not match %s"
                        % (arr.shape, goal.shape))
    diff = arr != goal
    if not diff.any():
        return None
    i, j = np.argwhere(diff)[0]
    sorts = relations.arg_sorts(rel)
    x = int(i) if sorts[0] == relations.POINT else structure.intervals[i]
    y = int(j) if sorts[1] == relations.POINT else structure.intervals[j]
    return (x, y, bool(arr[i, j]), bool(goal[i, j]))


def dual_transform(f: Formula) -> Formula:
    """Atom-level order-dual image: reversible relations are replaced by
    their reverses, symmetric relations swap their arguments, and the two
    self-symmetric relations stay as they are."""
    if isinstance(f, Atom):
        kind = relations.classify(f.rel)
        if kind == "reversible":
            return Atom(relations.reverse(f.rel), f.left, f.right)
        if kind == "self-symmetric":
            return f
        return Atom(f.rel, f.right, f.left)
    if isinstance(f, Not):
        return Not(dual_transform(f.body))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(dual_transform(f.left), dual_transform(f.right))
    return type(f)(f.var, dual_transform(f.body))


def rename_free(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename free variable occurrences; bound occurrences are untouched."""

    def walk(node, bound):
        if isinstance(node, Atom):
            left = node.left if node.left in bound else mapping.get(
                node.left, node.left)
            right = node.right if node.right in bound else mapping.get(
                node.right, node.right)
            return Atom(node.rel, left, right)
        if isinstance(node, Not):
            return Not(walk(node.body, bound))
        if isinstance(node, (And, Or, Implies, Iff)):
            return type(node)(walk(node.left, bound), walk(node.right, bound))
        return type(node)(node.var, walk(node.body, bound | {node.var}))

    return walk(f, frozenset())

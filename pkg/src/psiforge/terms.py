"""Term language for operator equations and quasi-identities, with a
recursive-descent parser and an evaluator.

Grammar (concrete syntax):

    identifiers   [a-z][a-z0-9_]*           (variables)
    constants     0, 1
    prefix        not
    infix         and, or, xor, ->          (left associative; binding
                                             strength: not > and > or >
                                             xor > ->)
    applications  dia(t,t,t)  mu(t)  d(t)  disc(t,t,t)
    sentences     s = t   |   s <= t
    quasi         s1 = t1 & s2 = t2 & ... => s = t

The connective words not/and/or/xor are reserved.  The function words
dia/mu/d/disc apply only when a parenthesis follows, so d and e stay
usable as variables (the cut axiom needs them).  mu, d and disc are
definable: mu(z) expands to not dia(1,1,not z) and not dia(1,not z,1),
d(x) to not mu(not x), and disc(x,y,z) to the discriminator term rebuilt
from d and symmetric difference.  Axiom files hold one sentence per line
with '#' comments.

Quantifier sweeps run top-down: holds() tries assignments in descending
mask order over the variables in order of first appearance, and reports
the first falsifying assignment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import EvalError, ParseError
from .ternary_operator import (
    TernaryOperator,
    discriminator_t,
    mu as mu_value,
)

Term = Union["Const", "Var", "Unary", "Binary", "Ternary"]


@dataclass(frozen=True)
class Const:
    top: bool  # False is 0, True is 1


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "not" | "mu" | "d"
    arg: Term


@dataclass(frozen=True)
class Binary:
    op: str  # "and" | "or" | "xor" | "->"
    left: Term
    right: Term


@dataclass(frozen=True)
class Ternary:
    op: str  # "dia" | "disc"
    args: tuple[Term, Term, Term]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Inequality:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class QuasiIdentity:
    premises: tuple[Identity, ...]
    conclusion: Identity


Sentence = Union[Identity, Inequality, QuasiIdentity]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[a-z][a-z0-9_]*)|(?P<const>[01])|(?P<sym><=|=>|->|&|=|\(|\)|,))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, 1-based character position)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos + 1)
        if m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name") + 1))
        elif m.lastgroup == "const":
            tokens.append(("const", m.group("const"), m.start("const") + 1))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym") + 1))
        pos = m.end()
    tokens.append(("eof", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    # expression := xor_term ('->' xor_term)*
    def expression(self) -> Term:
        t = self.xor_term()
        while self.peek()[1] == "->":
            self.next()
            t = Binary("->", t, self.xor_term())
        return t

    def xor_term(self) -> Term:
        t = self.or_term()
        while self.peek()[1] == "xor":
            self.next()
            t = Binary("xor", t, self.or_term())
        return t

    def or_term(self) -> Term:
        t = self.and_term()
        while self.peek()[1] == "or":
            self.next()
            t = Binary("or", t, self.and_term())
        return t

    def and_term(self) -> Term:
        t = self.factor()
        while self.peek()[1] == "and":
            self.next()
            t = Binary("and", t, self.factor())
        return t

    def factor(self) -> Term:
        kind, val, pos = self.next()
        if val == "not":
            return Unary("not", self.factor())
        if val == "(":
            t = self.expression()
            self.expect(")")
            return t
        if kind == "const":
            return Const(val == "1")
        if kind == "name":
            # function words act as applications only when a parenthesis
            # follows; bare dia/mu/d/disc are ordinary variables (the cut
            # axiom needs d and e as variable names)
            applied = self.peek()[1] == "("
            if val in ("mu", "d") and applied:
                self.expect("(")
                arg = self.expression()
                self.expect(")")
                return Unary(val, arg)
            if val in ("dia", "disc") and applied:
                self.expect("(")
                a = self.expression()
                self.expect(",")
                b = self.expression()
                self.expect(",")
                c = self.expression()
                self.expect(")")
                return Ternary(val, (a, b, c))
            if val in ("not", "and", "or", "xor"):
                raise ParseError(f"reserved word {val!r} cannot stand alone", pos)
            return Var(val)
        raise ParseError(f"expected a term, found {val or 'end of input'!r}", pos)

    def identity(self) -> Identity:
        lhs = self.expression()
        kind, val, pos = self.next()
        if val != "=":
            raise ParseError(f"expected '=', found {val or 'end of input'!r}", pos)
        return Identity(lhs, self.expression())

    def sentence(self) -> Sentence:
        lhs = self.expression()
        kind, val, pos = self.next()
        if val == "<=":
            out: Sentence = Inequality(lhs, self.expression())
        elif val == "=":
            out = Identity(lhs, self.expression())
        else:
            raise ParseError(f"expected '=' or '<=', found {val or 'end of input'!r}", pos)
        if self.peek()[1] in ("&", "=>"):
            if isinstance(out, Inequality):
                raise ParseError("quasi-identity premises must be identities", self.peek()[2])
            premises = [out]
            while self.peek()[1] == "&":
                self.next()
                premises.append(self.identity())
            self.expect("=>")
            conclusion = self.identity()
            return QuasiIdentity(tuple(premises), conclusion)
        return out

    def done(self):
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {val!r}", pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.expression()
    p.done()
    return t


def parse(text: str) -> Sentence:
    """Parse one sentence: an identity, an inequality, or a quasi-identity."""
    p = _Parser(text)
    s = p.sentence()
    p.done()
    return s


def parse_axiom_file(text: str) -> list[Sentence]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line))
    return out


_PREC = {"->": 1, "xor": 2, "or": 3, "and": 4}


def pretty(obj) -> str:
    """Deterministic concrete syntax; reparsing yields an equal AST."""
    if isinstance(obj, Identity):
        return f"{_pp(obj.lhs, 0)} = {_pp(obj.rhs, 0)}"
    if isinstance(obj, Inequality):
        return f"{_pp(obj.lhs, 0)} <= {_pp(obj.rhs, 0)}"
    if isinstance(obj, QuasiIdentity):
        prem = " & ".join(pretty(p) for p in obj.premises)
        return f"{prem} => {pretty(obj.conclusion)}"
    return _pp(obj, 0)


def _pp(t: Term, parent_prec: int) -> str:
    if isinstance(t, Const):
        return "1" if t.top else "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Unary):
        if t.op == "not":
            return f"not {_pp(t.arg, 5)}"
        return f"{t.op}({_pp(t.arg, 0)})"
    if isinstance(t, Ternary):
        args = ", ".join(_pp(a, 0) for a in t.args)
        return f"{t.op}({args})"
    prec = _PREC[t.op]
    # left associative: right child needs parens at equal precedence
    left = _pp(t.left, prec)
    right = _pp(t.right, prec + 1)
    s = f"{left} {t.op} {right}"
    return f"({s})" if prec < parent_prec else s


def variables(obj) -> list[str]:
    """Variables in order of first appearance."""
    seen: list[str] = []

    def walk(t):
        if isinstance(t, Var):
            if t.name not in seen:
                seen.append(t.name)
        elif isinstance(t, Unary):
            walk(t.arg)
        elif isinstance(t, Binary):
            walk(t.left)
            walk(t.right)
        elif isinstance(t, Ternary):
            for a in t.args:
                walk(a)

    if isinstance(obj, (Identity, Inequality)):
        walk(obj.lhs)
        walk(obj.rhs)
    elif isinstance(obj, QuasiIdentity):
        for p in obj.premises:
            walk(p.lhs)
            walk(p.rhs)
        walk(obj.conclusion.lhs)
        walk(obj.conclusion.rhs)
    else:
        walk(obj)
    return seen


def eval_term(term: Term, op: TernaryOperator, assignment: dict[str, int]) -> int:
    """Compositional evaluation over the operator's algebra; mu, d and disc
    expand to their defining terms."""
    alg = op.alg
    if isinstance(term, Const):
        return alg.top if term.top else 0
    if isinstance(term, Var):
        if term.name not in assignment:
            raise EvalError(f"unassigned variable {term.name!r}")
        return assignment[term.name]
    if isinstance(term, Unary):
        v = eval_term(term.arg, op, assignment)
        if term.op == "not":
            return alg.neg(v)
        if term.op == "mu":
            return mu_value(op, v)
        return alg.neg(mu_value(op, alg.neg(v)))  # d
    if isinstance(term, Binary):
        x = eval_term(term.left, op, assignment)
        y = eval_term(term.right, op, assignment)
        if term.op == "and":
            return x & y
        if term.op == "or":
            return x | y
        if term.op == "xor":
            return x ^ y
        return alg.implies(x, y)
    x, y, z = (eval_term(a, op, assignment) for a in term.args)
    if term.op == "dia":
        return op(x, y, z)
    return discriminator_t(op, x, y, z)  # disc


def _sentence_true_at(s: Sentence, op: TernaryOperator, assignment: dict[str, int]) -> bool:
    alg = op.alg
    if isinstance(s, Identity):
        return eval_term(s.lhs, op, assignment) == eval_term(s.rhs, op, assignment)
    if isinstance(s, Inequality):
        return alg.leq(eval_term(s.lhs, op, assignment), eval_term(s.rhs, op, assignment))
    for p in s.premises:
        if not _sentence_true_at(p, op, assignment):
            return True
    return _sentence_true_at(s.conclusion, op, assignment)


def holds(s: Sentence, op: TernaryOperator) -> tuple[bool, dict[str, int] | None]:
    """Sweep every assignment (top-down); returns (True, None) or the first
    falsifying assignment."""
    names = variables(s)
    alg = op.alg

    def rec(i: int, assignment: dict[str, int]):
        if i == len(names):
            return _sentence_true_at(s, op, assignment)
        for v in range(alg.top, -1, -1):
            assignment[names[i]] = v
            if not rec(i + 1, assignment):
                return False
        del assignment[names[i]]
        return True

    assignment: dict[str, int] = {}
    if rec(0, assignment):
        return True, None
    return False, dict(assignment)

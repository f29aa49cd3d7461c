"""Textual syntax for patterns and signature declaration files.

Pattern syntax::

    f(t1,...,tn)    application          c          constant
    name:Sort       variable             name       variable (sort inferred)
    ~p   p /\\ q   p \\/ q   p -> q   p <-> q      connectives
    exists x:Sort . p                    binder
    p = q    p in q    |_ p _|           equality, membership, definedness
    top  bottom                          derived constants

Equality, membership and definedness default their outer sort to the inner
sort; an explicit outer sort may be given as `p =@Sort q`, `p in@Sort q`,
`|_ p _|@Sort`, `top@Sort`, `bottom@Sort`.  The printer emits the annotation
only when the two sorts differ or when sorts cannot be inferred from context.

Signature files: one declaration per line, `#` comments allowed::

    sort Nat
    symbol f : Nat Nat -> Nat [functional, injective]
    symbol c : -> Nat [functional]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import AmbiguousSort, IllSorted, ParseError, SortMismatch
from .patterns import (
    And,
    App,
    Exists,
    Not,
    Pattern,
    Signature,
    Sort,
    Symbol,
    Var,
    Variable,
    bottom,
    defined,
    equal,
    match_bottom,
    match_defined,
    match_equal,
    match_iff,
    match_implies,
    match_member,
    match_or,
    match_top,
    member,
    iff as iff_,
    implies as implies_,
    or_ as or__,
    sort_of,
    top,
)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<comma>,)|(?P<ldef>\|_)|(?P<rdef>_\|)"
    r"|(?P<iff><->)|(?P<impl>->)|(?P<and>/\\)|(?P<or>\\/)|(?P<not>~)"
    r"|(?P<eq>=)|(?P<at>@)|(?P<colon>:)|(?P<dot>\.)"
    r"|(?P<ident>[A-Za-z0-9_][A-Za-z0-9_']*)|(?P<bad>\S))"
)

_KEYWORDS = {"exists", "in", "top", "bottom"}


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.lastgroup is None:
            break
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group()!r} at offset {m.start()}")
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "ident" and value in _KEYWORDS:
            kind = value
        tokens.append((kind, value))
        pos = m.end()
    tokens.append(("eof", ""))
    return tokens


# Raw (unresolved) syntax tree; sorts are filled in by _Resolver.
@dataclass
class _R:
    kind: str
    a: object = None
    b: object = None
    c: object = None


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> str:
        tok, value = self.next()
        if tok != kind:
            raise ParseError(f"expected {kind}, found {value!r}")
        return value

    def parse(self) -> _R:
        node = self.parse_pattern()
        if self.peek() != "eof":
            raise ParseError(f"trailing input at {self.tokens[self.pos][1]!r}")
        return node

    def parse_pattern(self) -> _R:
        return self.parse_iff()

    def parse_iff(self) -> _R:
        node = self.parse_impl()
        while self.peek() == "iff":
            self.next()
            node = _R("iff", node, self.parse_impl())
        return node

    def parse_impl(self) -> _R:
        node = self.parse_or()
        if self.peek() == "impl":
            self.next()
            return _R("impl", node, self.parse_impl())
        return node

    def parse_or(self) -> _R:
        # Right-associative, matching the canonical right-nested conjunctions
        # and disjunctions built internally.
        node = self.parse_and()
        if self.peek() == "or":
            self.next()
            return _R("or", node, self.parse_or())
        return node

    def parse_and(self) -> _R:
        node = self.parse_cmp()
        if self.peek() == "and":
            self.next()
            return _R("and", node, self.parse_and())
        return node

    def _outer_annotation(self) -> Optional[str]:
        if self.peek() == "at":
            self.next()
            return self.expect("ident")
        return None

    def parse_cmp(self) -> _R:
        node = self.parse_unary()
        if self.peek() in ("eq", "in"):
            op, _ = self.next()
            outer = self._outer_annotation()
            rhs = self.parse_unary()
            return _R(op, node, rhs, outer)
        return node

    def parse_unary(self) -> _R:
        kind = self.peek()
        if kind == "not":
            self.next()
            return _R("not", self.parse_unary())
        if kind == "exists":
            self.next()
            name = self.expect("ident")
            self.expect("colon")
            sort = self.expect("ident")
            self.expect("dot")
            return _R("exists", (name, sort), self.parse_pattern())
        return self.parse_atom()

    def parse_atom(self) -> _R:
        kind, value = self.next()
        if kind == "lpar":
            node = self.parse_pattern()
            self.expect("rpar")
            return node
        if kind == "ldef":
            node = self.parse_pattern()
            self.expect("rdef")
            return _R("def", node, None, self._outer_annotation())
        if kind in ("top", "bottom"):
            return _R(kind, None, None, self._outer_annotation())
        if kind == "ident":
            if self.peek() == "lpar":
                self.next()
                args = []
                if self.peek() != "rpar":
                    args.append(self.parse_pattern())
                    while self.peek() == "comma":
                        self.next()
                        args.append(self.parse_pattern())
                self.expect("rpar")
                return _R("app", value, args)
            if self.peek() == "colon":
                self.next()
                return _R("var", value, self.expect("ident"))
            return _R("name", value)
        raise ParseError(f"unexpected token {value!r}")


class _Resolver:
    """Turns a raw tree into a sorted pattern, inferring variable sorts."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.var_sorts: dict[str, Sort] = {}

    def resolve(self, node: _R, expected: Optional[Sort], env: dict[str, Sort]) -> Pattern:
        kind = node.kind
        if kind == "var":
            sort = self.sig.sort(node.b)
            self.var_sorts.setdefault(node.a, sort)
            return Var(Variable(node.a, sort))
        if kind == "name":
            name = node.a
            if name in self.sig.symbols:
                sym = self.sig.symbols[name]
                if sym.arity:
                    raise ParseError(f"symbol {name} needs {len(sym.arity)} arguments")
                return App(name, ())
            sort = env.get(name) or self.var_sorts.get(name) or expected
            if sort is None:
                raise AmbiguousSort(f"cannot infer the sort of variable {name}")
            self.var_sorts.setdefault(name, sort)
            return Var(Variable(name, sort))
        if kind == "app":
            sym = self.sig.symbol(node.a)
            if len(node.b) != len(sym.arity):
                raise IllSorted(
                    f"{node.a} expects {len(sym.arity)} arguments, got {len(node.b)}"
                )
            args = tuple(
                self.resolve(arg, s, env) for arg, s in zip(node.b, sym.arity)
            )
            return App(node.a, args)
        if kind == "not":
            return Not(self.resolve(node.a, expected, env))
        if kind in ("and", "or", "impl", "iff"):
            left, right = self._resolve_pair(node.a, node.b, expected, env)
            build = {"and": And, "or": or__, "impl": implies_, "iff": iff_}[kind]
            return build(left, right)
        if kind == "exists":
            name, sort_name = node.a
            sort = self.sig.sort(sort_name)
            inner_env = dict(env)
            inner_env[name] = sort
            return Exists(Variable(name, sort), self.resolve(node.b, expected, inner_env))
        if kind in ("eq", "in"):
            left, right = self._resolve_pair(node.a, node.b, None, env)
            inner = sort_of(left, self.sig)
            outer = self.sig.sort(node.c) if node.c else (expected or inner)
            if kind == "eq":
                return equal(left, right, inner, outer)
            return member(left, right, inner, outer)
        if kind == "def":
            arg = self.resolve(node.a, None, env)
            inner = sort_of(arg, self.sig)
            outer = self.sig.sort(node.c) if node.c else (expected or inner)
            return defined(arg, inner, outer)
        if kind in ("top", "bottom"):
            sort = self.sig.sort(node.c) if node.c else expected
            if sort is None:
                raise AmbiguousSort(f"cannot infer the sort of {kind}")
            return top(sort) if kind == "top" else bottom(sort)
        raise ParseError(f"internal: unknown node kind {kind}")

    def _resolve_pair(
        self, a: _R, b: _R, expected: Optional[Sort], env: dict[str, Sort]
    ) -> tuple[Pattern, Pattern]:
        try:
            left = self.resolve(a, expected, env)
            left_sort = sort_of(left, self.sig)
            right = self.resolve(b, left_sort, env)
        except AmbiguousSort:
            right = self.resolve(b, expected, env)
            right_sort = sort_of(right, self.sig)
            left = self.resolve(a, right_sort, env)
        left_sort = sort_of(left, self.sig)
        right_sort = sort_of(right, self.sig)
        if left_sort != right_sort:
            raise SortMismatch(
                f"operands have different sorts {left_sort} and {right_sort}"
            )
        return left, right


def parse_pattern(
    text: str, sig: Signature, expected: Optional[Sort] = None
) -> Pattern:
    raw = _Parser(text).parse()
    pattern = _Resolver(sig).resolve(raw, expected, {})
    sort_of(pattern, sig)  # full well-formedness check
    return pattern


# --- Pretty printing --------------------------------------------------------

_LEVEL_EXISTS = 0
_LEVEL_IFF = 1
_LEVEL_IMPL = 2
_LEVEL_OR = 3
_LEVEL_AND = 4
_LEVEL_CMP = 5
_LEVEL_NOT = 6
_LEVEL_ATOM = 7


def format_pattern(phi: Pattern, show_sorts: bool = False) -> str:
    return _fmt(phi, show_sorts, 0)


def _wrap(text: str, level: int, minimum: int) -> str:
    return f"({text})" if level < minimum else text


def _fmt(phi: Pattern, ann: bool, minimum: int) -> str:
    s = match_top(phi)
    if s is not None:
        return f"top@{s}" if ann else "top"
    s = match_bottom(phi)
    if s is not None:
        return f"bottom@{s}" if ann else "bottom"
    m = match_equal(phi)
    if m is not None:
        left, right, inner, outer = m
        op = "=" if outer == inner else f"=@{outer}"
        text = f"{_fmt(left, ann, _LEVEL_NOT)} {op} {_fmt(right, ann, _LEVEL_NOT)}"
        return _wrap(text, _LEVEL_CMP, minimum)
    m = match_member(phi)
    if m is not None:
        left, right, inner, outer = m
        op = "in" if outer == inner else f"in@{outer}"
        text = f"{_fmt(left, ann, _LEVEL_NOT)} {op} {_fmt(right, ann, _LEVEL_NOT)}"
        return _wrap(text, _LEVEL_CMP, minimum)
    d = match_defined(phi)
    if d is not None:
        arg, inner, outer = d
        suffix = "" if outer == inner else f"@{outer}"
        return f"|_ {_fmt(arg, ann, 0)} _|{suffix}"
    m = match_iff(phi)
    if m is not None:
        text = f"{_fmt(m[0], ann, _LEVEL_IMPL)} <-> {_fmt(m[1], ann, _LEVEL_IMPL)}"
        return _wrap(text, _LEVEL_IFF, minimum)
    m = match_implies(phi)
    if m is not None:
        text = f"{_fmt(m[0], ann, _LEVEL_OR)} -> {_fmt(m[1], ann, _LEVEL_IMPL)}"
        return _wrap(text, _LEVEL_IMPL, minimum)
    m = match_or(phi)
    if m is not None:
        text = f"{_fmt(m[0], ann, _LEVEL_OR)} \\/ {_fmt(m[1], ann, _LEVEL_AND)}"
        return _wrap(text, _LEVEL_OR, minimum)
    if isinstance(phi, Var):
        return str(phi.var) if ann else phi.var.name
    if isinstance(phi, App):
        if not phi.args:
            return phi.symbol
        inner = ", ".join(_fmt(a, ann, 0) for a in phi.args)
        return f"{phi.symbol}({inner})"
    if isinstance(phi, Not):
        return _wrap(f"~{_fmt(phi.arg, ann, _LEVEL_NOT)}", _LEVEL_NOT, minimum)
    if isinstance(phi, And):
        text = f"{_fmt(phi.left, ann, _LEVEL_CMP)} /\\ {_fmt(phi.right, ann, _LEVEL_AND)}"
        return _wrap(text, _LEVEL_AND, minimum)
    if isinstance(phi, Exists):
        text = f"exists {phi.bound} . {_fmt(phi.body, ann, 0)}"
        return _wrap(text, _LEVEL_EXISTS, minimum)
    raise TypeError(f"not a pattern: {phi!r}")


# --- Signature files --------------------------------------------------------

_SYMBOL_RE = re.compile(
    r"^symbol\s+(?P<name>[A-Za-z0-9_][A-Za-z0-9_']*)\s*:\s*"
    r"(?P<arity>[A-Za-z0-9_' \t]*?)\s*->\s*(?P<result>[A-Za-z0-9_][A-Za-z0-9_']*)"
    r"\s*(?:\[(?P<attrs>[^\]]*)\])?\s*$"
)
_SORT_RE = re.compile(r"^sort\s+(?P<name>[A-Za-z0-9_][A-Za-z0-9_']*)\s*$")


def parse_signature(text: str) -> Signature:
    sorts: set[Sort] = set()
    symbols: dict[str, Symbol] = {}
    functional: set[str] = set()
    injective: set[str] = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SORT_RE.match(line)
        if m:
            sorts.add(Sort(m.group("name")))
            continue
        m = _SYMBOL_RE.match(line)
        if m:
            name = m.group("name")
            if name in symbols:
                raise ParseError(f"line {lineno}: duplicate symbol {name}")
            arity = tuple(Sort(s) for s in m.group("arity").split())
            symbols[name] = Symbol(name, arity, Sort(m.group("result")))
            attrs = [a.strip() for a in (m.group("attrs") or "").split(",") if a.strip()]
            for attr in attrs:
                if attr == "functional":
                    functional.add(name)
                elif attr == "injective":
                    injective.add(name)
                else:
                    raise ParseError(f"line {lineno}: unknown attribute {attr!r}")
            continue
        raise ParseError(f"line {lineno}: cannot parse {raw_line!r}")
    functional |= injective  # injective symbols are implicitly functional
    return Signature(frozenset(sorts), symbols, frozenset(functional), frozenset(injective))


def format_signature(sig: Signature) -> str:
    lines = [f"sort {s.name}" for s in sorted(sig.sorts, key=lambda s: s.name)]
    for name in sorted(sig.symbols):
        sym = sig.symbols[name]
        arity = " ".join(s.name for s in sym.arity)
        arity = f"{arity} " if arity else ""
        attrs = []
        if sig.is_functional(name):
            attrs.append("functional")
        if sig.is_injective(name):
            attrs.append("injective")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"symbol {name} : {arity}-> {sym.result.name}{suffix}")
    return "\n".join(lines) + "\n"

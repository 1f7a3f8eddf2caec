"""Abstract syntax, concrete syntax and structural analyses for extended MSO.

Variables are plain names. The case of the first letter (after any leading
underscores) fixes the order: lowercase names are positions, uppercase names
are sets of positions.
"""

from __future__ import annotations

import enum
import itertools
import re
import sys
from collections.abc import Iterator
from dataclasses import dataclass


class Formula:
    """Base class of every AST node."""

    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def __str__(self) -> str:
        return print_formula(self)


# atoms


@dataclass(frozen=True)
class Member(Formula):
    var: str
    set: str


@dataclass(frozen=True)
class Less(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Equal(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Succ(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Letter(Formula):
    letter: str
    var: str


@dataclass(frozen=True)
class W(Formula):
    set: str


@dataclass(frozen=True)
class U2(Formula):
    reset: str
    inc: str


@dataclass(frozen=True)
class Macro(Formula):
    name: str
    args: tuple[str, ...]


# connectives


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


# binders


@dataclass(frozen=True)
class Exists1(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall1(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists2(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall2(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class QuantU(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class QuantP(Formula):
    var: str
    body: Formula


BINARY = (And, Or, Implies, Iff)
BINDERS = (Exists1, Forall1, Exists2, Forall2, QuantU, QuantP)
FIRST_ORDER_BINDERS = (Exists1, Forall1)
ATOMS = (Member, Less, Equal, Succ, Letter, W, U2, Macro)

BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
BINDER_KEYWORD = {
    Exists1: "ex1",
    Forall1: "all1",
    Exists2: "ex2",
    Forall2: "all2",
    QuantU: "U",
    QuantP: "P",
}


class Dialect(enum.Enum):
    MSO = "MSO"
    MSO_U = "MSO_U"
    MSO_W = "MSO_W"
    MSO_U2 = "MSO_U2"
    MSO_P = "MSO_P"
    MIXED = "MIXED"


@dataclass(frozen=True)
class MacroSpec:
    name: str
    arity: int
    dialect: Dialect


# name -> signature; every argument is a set variable
MACROS: dict[str, MacroSpec] = {
    "UltConstDim": MacroSpec("UltConstDim", 2, Dialect.MSO_U),
}

KEYWORDS = {"ex1", "all1", "ex2", "all2", "in", "succ", "U", "P", "W", "U2"}
NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class FormulaError(Exception):
    """Base class for errors raised on formulas."""


class ParseError(FormulaError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class OrderError(ParseError):
    """A variable is used at the wrong order (position vs set)."""


class UnknownLetterError(ParseError):
    pass


class FreshNameError(FormulaError):
    pass


def is_set_name(name: str) -> bool:
    return name.lstrip("_")[:1].isupper()


def is_position_name(name: str) -> bool:
    return name.lstrip("_")[:1].islower()


# ---------------------------------------------------------------------------
# traversal helpers


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, BINDERS):
        return (f.body,)
    return ()


def iter_nodes(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def node_count(f: Formula) -> int:
    return sum(1 for _ in iter_nodes(f))


def atom_variables(f: Formula) -> tuple[str, ...]:
    if isinstance(f, Member):
        return (f.var, f.set)
    if isinstance(f, (Less, Equal, Succ)):
        return (f.left, f.right)
    if isinstance(f, Letter):
        return (f.var,)
    if isinstance(f, W):
        return (f.set,)
    if isinstance(f, U2):
        return (f.reset, f.inc)
    if isinstance(f, Macro):
        return f.args
    return ()


def all_names(f: Formula) -> set[str]:
    names: set[str] = set()
    for node in iter_nodes(f):
        names.update(atom_variables(node))
        if isinstance(node, BINDERS):
            names.add(node.var)
    return names


def letters_of(f: Formula) -> set[str]:
    return {n.letter for n in iter_nodes(f) if isinstance(n, Letter)}


def free_variables(f: Formula) -> tuple[frozenset[str], frozenset[str]]:
    """Return (free position variables, free set variables)."""
    free: set[str] = set()

    def walk(node: Formula, bound: frozenset[str]) -> None:
        if isinstance(node, BINDERS):
            walk(node.body, bound | {node.var})
            return
        for name in atom_variables(node):
            if name not in bound:
                free.add(name)
        for child in children(node):
            walk(child, bound)

    walk(f, frozenset())
    return (
        frozenset(n for n in free if is_position_name(n)),
        frozenset(n for n in free if is_set_name(n)),
    )


def is_sentence(f: Formula) -> bool:
    first, second = free_variables(f)
    return not first and not second


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, BINDERS):
        return 1 + quantifier_rank(f.body)
    return max((quantifier_rank(c) for c in children(f)), default=0)


def extensions_of(f: Formula) -> set[Dialect]:
    found: set[Dialect] = set()
    for node in iter_nodes(f):
        if isinstance(node, QuantU):
            found.add(Dialect.MSO_U)
        elif isinstance(node, W):
            found.add(Dialect.MSO_W)
        elif isinstance(node, U2):
            found.add(Dialect.MSO_U2)
        elif isinstance(node, QuantP):
            found.add(Dialect.MSO_P)
        elif isinstance(node, Macro):
            found.add(MACROS[node.name].dialect)
    return found


def dialect_of(f: Formula) -> Dialect:
    found = extensions_of(f)
    if not found:
        return Dialect.MSO
    if len(found) == 1:
        return found.pop()
    return Dialect.MIXED


def check_well_formed(f: Formula, alphabet: set[str] | None = None) -> None:
    """Raise a FormulaError when an atom's arguments have the wrong order."""
    for node in iter_nodes(f):
        if isinstance(node, (Exists1, Forall1)) and not is_position_name(node.var):
            raise FormulaError(f"{type(node).__name__} binds set name {node.var!r}")
        if isinstance(node, (Exists2, Forall2, QuantU, QuantP)) and not is_set_name(node.var):
            raise FormulaError(f"{type(node).__name__} binds position name {node.var!r}")
        if isinstance(node, Member):
            positions, sets = (node.var,), (node.set,)
        elif isinstance(node, (Less, Equal, Succ, Letter)):
            positions, sets = atom_variables(node), ()
        else:
            positions, sets = (), atom_variables(node)
        for name in positions:
            if not is_position_name(name):
                raise FormulaError(f"{type(node).__name__} expects a position variable, got {name!r}")
        for name in sets:
            if not is_set_name(name):
                raise FormulaError(f"{type(node).__name__} expects a set variable, got {name!r}")
        if isinstance(node, Macro):
            spec = MACROS.get(node.name)
            if spec is None:
                raise FormulaError(f"unknown macro {node.name!r}")
            if len(node.args) != spec.arity:
                raise FormulaError(f"macro {node.name} takes {spec.arity} arguments")
        if alphabet is not None and isinstance(node, Letter) and node.letter not in alphabet:
            raise FormulaError(f"letter {node.letter!r} not in alphabet")


# ---------------------------------------------------------------------------
# printing


def print_formula(f: Formula) -> str:
    return _print(f, top=True)


def _print(f: Formula, top: bool = False) -> str:
    if isinstance(f, Member):
        return f"{f.var} in {f.set}"
    if isinstance(f, Less):
        return f"{f.left} < {f.right}"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Succ):
        return f"succ({f.left}, {f.right})"
    if isinstance(f, Letter):
        return f"{f.letter}({f.var})"
    if isinstance(f, W):
        return f"W({f.set})"
    if isinstance(f, U2):
        return f"U2({f.reset}, {f.inc})"
    if isinstance(f, Macro):
        return f"{f.name}({', '.join(f.args)})"
    if isinstance(f, Not):
        inner = f.body
        text = _print(inner)
        if isinstance(inner, (Member, Less, Equal)):
            return f"~({text})"
        return f"~{text}"
    if isinstance(f, BINARY):
        return f"({_print(f.left)} {BINARY_SYMBOL[type(f)]} {_print(f.right)})"
    if isinstance(f, BINDERS):
        text = f"{BINDER_KEYWORD[type(f)]} {f.var}. {_print(f.body, top=True)}"
        return text if top else f"({text})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|[~&|().,<=])|(?P<name>_*[A-Za-z][A-Za-z0-9_]*))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "op", "name", "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line, line_start = 1, 0
    while True:
        while pos < len(text) and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= len(text):
            tokens.append(_Token("eof", "", line, pos - line_start + 1))
            return tokens
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = "op" if m.group("op") else "name"
        value = m.group(kind)
        column = m.start(kind) - line_start + 1
        tokens.append(_Token(kind, value, line, column))
        pos = m.end()


class _Parser:
    def __init__(self, text: str, alphabet: set[str] | None, allow_reserved: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet
        self.allow_reserved = allow_reserved
        used = {t.text for t in self.tokens if t.kind == "name"}
        self._fresh = (n for n in (f"z{i}" if i else "z" for i in itertools.count()) if n not in used)

    # token helpers
    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None, cls=ParseError) -> ParseError:
        tok = tok or self.peek()
        return cls(message, tok.line, tok.column)

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text:
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def name(self, order: str | None = None) -> str:
        tok = self.peek()
        if tok.kind != "name" or tok.text in KEYWORDS:
            raise self.error(f"expected a variable, found {tok.text or 'end of input'!r}")
        if tok.text.startswith("_") and not self.allow_reserved:
            raise self.error(f"names starting with '_' are reserved: {tok.text!r}")
        if order == "first" and not is_position_name(tok.text):
            raise self.error(f"expected a position variable, found {tok.text!r}", cls=OrderError)
        if order == "second" and not is_set_name(tok.text):
            raise self.error(f"expected a set variable, found {tok.text!r}", cls=OrderError)
        return self.advance().text

    # grammar, lowest precedence first
    def parse(self) -> Formula:
        f = self.iff()
        if self.peek().kind != "eof":
            raise self.error(f"unexpected {self.peek().text!r}")
        return f

    def iff(self) -> Formula:
        left = self.implies()
        while self.peek().text == "<->":
            self.advance()
            left = Iff(left, self.implies())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.peek().text == "->":
            self.advance()
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek().text == "|":
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek().text == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "~":
            self.advance()
            return Not(self.unary())
        if tok.text == "(":
            self.advance()
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind == "name" and tok.text in ("ex1", "all1", "ex2", "all2", "U", "P") and self.peek(1).text != "(":
            return self.binder()
        return self.atom()

    def binder(self) -> Formula:
        kw = self.advance().text
        cls = {"ex1": Exists1, "all1": Forall1, "ex2": Exists2, "all2": Forall2, "U": QuantU, "P": QuantP}[kw]
        var = self.name("first" if kw in ("ex1", "all1") else "second")
        self.expect(".")
        return cls(var, self.iff())

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind != "name":
            raise self.error(f"unexpected {tok.text or 'end of input'!r}")
        if tok.text == "W":
            self.advance()
            self.expect("(")
            arg = self.name("second")
            self.expect(")")
            return W(arg)
        if tok.text == "U2":
            self.advance()
            self.expect("(")
            r = self.name("second")
            self.expect(",")
            i = self.name("second")
            self.expect(")")
            return U2(r, i)
        if tok.text == "succ":
            self.advance()
            self.expect("(")
            x = self.name("first")
            self.expect(",")
            y = self.name("first")
            self.expect(")")
            return Succ(x, y)
        if self.peek(1).text == "(":
            if is_set_name(tok.text):
                return self.macro()
            return self.letter()
        left = self.name()
        op = self.peek()
        if is_set_name(left):
            if op.text != "=":
                raise self.error(f"set variable {left!r} used as a position", tok, OrderError)
            self.advance()
            right = self.name("second")
            z = next(self._fresh)
            return Forall1(z, Iff(Member(z, left), Member(z, right)))
        if op.text == "in":
            self.advance()
            return Member(left, self.name("second"))
        if op.text in ("<", "="):
            self.advance()
            right = self.name("first")
            return Less(left, right) if op.text == "<" else Equal(left, right)
        raise self.error(f"expected 'in', '<' or '=' after {left!r}")

    def macro(self) -> Formula:
        tok = self.advance()
        spec = MACROS.get(tok.text)
        if spec is None:
            raise self.error(f"unknown macro {tok.text!r}", tok)
        self.expect("(")
        args = [self.name("second")]
        while self.peek().text == ",":
            self.advance()
            args.append(self.name("second"))
        self.expect(")")
        if len(args) != spec.arity:
            raise self.error(f"macro {tok.text} takes {spec.arity} arguments", tok)
        return Macro(tok.text, tuple(args))

    def letter(self) -> Formula:
        tok = self.advance()
        if tok.text in KEYWORDS:
            raise self.error(f"unexpected keyword {tok.text!r}", tok)
        if self.alphabet is not None and tok.text not in self.alphabet:
            raise self.error(f"unknown letter {tok.text!r}", tok, UnknownLetterError)
        self.expect("(")
        var = self.name("first")
        self.expect(")")
        return Letter(tok.text, var)


_PARSE_STACK = 20_000


def parse_formula(text: str, alphabet=None, allow_reserved: bool = False) -> Formula:
    """Parse the ASCII concrete syntax.

    ``alphabet`` restricts the letters usable in ``a(x)`` atoms; ``None``
    accepts any lowercase identifier. Set equality ``X = Y`` is expanded to
    ``all1 z. (z in X <-> z in Y)``.
    """
    # recursive descent spends about a dozen frames per nesting level
    if sys.getrecursionlimit() < _PARSE_STACK:
        sys.setrecursionlimit(_PARSE_STACK)
    return _Parser(text, set(alphabet) if alphabet is not None else None, allow_reserved).parse()


# ---------------------------------------------------------------------------
# renaming


def substitute(f: Formula, mapping: dict[str, str]) -> Formula:
    """Rename free occurrences; the caller guarantees no capture."""
    if not mapping:
        return f
    if isinstance(f, BINDERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, substitute(f.body, inner))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    m = mapping.get
    if isinstance(f, Member):
        return Member(m(f.var, f.var), m(f.set, f.set))
    if isinstance(f, (Less, Equal, Succ)):
        return type(f)(m(f.left, f.left), m(f.right, f.right))
    if isinstance(f, Letter):
        return Letter(f.letter, m(f.var, f.var))
    if isinstance(f, W):
        return W(m(f.set, f.set))
    if isinstance(f, U2):
        return U2(m(f.reset, f.reset), m(f.inc, f.inc))
    if isinstance(f, Macro):
        return Macro(f.name, tuple(m(a, a) for a in f.args))
    raise TypeError(f"not a formula: {f!r}")


class FreshNames:
    """Supply of names of the form ``_<stem><n>`` avoiding a taken set."""

    LIMIT = 10**6

    def __init__(self, taken=()):
        self.taken = set(taken)
        self.counter = 0

    def __call__(self, stem: str) -> str:
        for _ in range(self.LIMIT):
            self.counter += 1
            name = f"_{stem}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name
        raise FreshNameError("fresh-name pool exhausted")


def rename_apart(f: Formula, reserved=frozenset()) -> Formula:
    """Rename bound variables so that they are pairwise distinct and avoid
    ``reserved`` and the free variables of ``f``. Binders that already
    satisfy this keep their names, so the operation is idempotent."""
    first, second = free_variables(f)
    used = set(reserved) | first | second
    fresh = FreshNames(all_names(f) | used)

    def walk(node: Formula, mapping: dict[str, str]) -> Formula:
        if isinstance(node, BINDERS):
            var = node.var
            if var in used:
                new = fresh(var.lstrip("_") or "v")
            else:
                new = var
            used.add(new)
            inner = dict(mapping)
            inner[var] = new
            return type(node)(new, walk(node.body, inner))
        if isinstance(node, Not):
            return Not(walk(node.body, mapping))
        if isinstance(node, BINARY):
            left = walk(node.left, mapping)
            return type(node)(left, walk(node.right, mapping))
        return substitute(node, mapping)

    return walk(f, {})


def alpha_equal(f: Formula, g: Formula) -> bool:
    def walk(a: Formula, b: Formula, env_a: dict, env_b: dict, depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, BINDERS):
            return walk(a.body, b.body, {**env_a, a.var: depth}, {**env_b, b.var: depth}, depth + 1)
        if isinstance(a, Not):
            return walk(a.body, b.body, env_a, env_b, depth)
        if isinstance(a, BINARY):
            return walk(a.left, b.left, env_a, env_b, depth) and walk(a.right, b.right, env_a, env_b, depth)
        if isinstance(a, Letter) and a.letter != b.letter:
            return False
        if isinstance(a, Macro) and a.name != b.name:
            return False
        va, vb = atom_variables(a), atom_variables(b)
        return all(env_a.get(x, x) == env_b.get(y, y) and (x in env_a) == (y in env_b) for x, y in zip(va, vb))

    return walk(f, g, {}, {}, 0)


# ---------------------------------------------------------------------------
# small builders shared by the rewrites


def conj(*parts: Formula) -> Formula:
    result = parts[0]
    for p in parts[1:]:
        result = And(result, p)
    return result


def disj(*parts: Formula) -> Formula:
    result = parts[0]
    for p in parts[1:]:
        result = Or(result, p)
    return result


def exists1(names, body: Formula) -> Formula:
    for name in reversed(names.split() if isinstance(names, str) else names):
        body = Exists1(name, body)
    return body


def forall1(names, body: Formula) -> Formula:
    for name in reversed(names.split() if isinstance(names, str) else names):
        body = Forall1(name, body)
    return body


def exists2(names, body: Formula) -> Formula:
    for name in reversed(names.split() if isinstance(names, str) else names):
        body = Exists2(name, body)
    return body

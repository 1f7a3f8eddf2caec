"""Translations between the dialects and the formula gadgets they rely on.

Every rewrite works bottom-up on an immutable AST and introduces bound
variables named ``_<stem><n>``, which user input cannot contain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    U2,
    And,
    Dialect,
    Equal,
    Exists1,
    Exists2,
    Forall1,
    Forall2,
    Formula,
    FormulaError,
    FreshNames,
    Iff,
    Implies,
    Less,
    Letter,
    Macro,
    Member,
    Not,
    Or,
    QuantP,
    QuantU,
    Succ,
    W,
    all_names,
    check_well_formed,
    conj,
    dialect_of,
    disj,
    is_sentence,
    iter_nodes,
    letters_of,
    node_count,
)
from .words import FLAT


class RewriteError(FormulaError):
    pass


@dataclass(frozen=True)
class RewriteReport:
    name: str
    source: Dialect
    target: Dialect
    nodes_before: int
    nodes_after: int
    fresh: tuple[str, ...]

    def text(self) -> str:
        fresh = ", ".join(self.fresh) if self.fresh else "-"
        return (
            f"{self.name}: {self.source.value} -> {self.target.value}, "
            f"nodes {self.nodes_before} -> {self.nodes_after}, fresh {fresh}"
        )


# Size factors: output nodes <= SIZE_FACTOR[name] * input nodes. Each rewritten
# node is replaced by a fixed gadget plus at most one copy of its subformula,
# so the factor is the gadget size (measured by tests/test_rewrite.py).
SIZE_FACTOR = {
    "u_to_u2": 40,
    "u2_to_u": 60,
    "w_to_u2": 12,
    "u2_to_w": 1200,
    "w_to_p": 40,
    "p_to_u_padded": 140,
}


# ---------------------------------------------------------------------------
# gadget construction


def _le(a: str, b: str) -> Formula:
    return Or(Less(a, b), Equal(a, b))


def _between(z: str, a: str, b: str) -> Formula:
    return And(Less(a, z), Less(z, b))


class Gadgets:
    """Formula builders sharing one supply of fresh names."""

    def __init__(self, fresh: FreshNames):
        self.fresh = fresh
        self.introduced: list[str] = []

    def name(self, stem: str) -> str:
        n = self.fresh(stem)
        self.introduced.append(n)
        return n

    # sets ----------------------------------------------------------------
    def infinite(self, X: str) -> Formula:
        z, y = self.name("z"), self.name("y")
        return Forall1(z, Exists1(y, And(Less(z, y), Member(y, X))))

    def finite(self, X: str) -> Formula:
        """Empty or with a greatest element."""
        z, y = self.name("z"), self.name("y")
        empty = Not(Exists1(z, Member(z, X)))
        z2 = self.name("z")
        top = Exists1(z2, And(Member(z2, X), Forall1(y, Implies(Member(y, X), _le(y, z2)))))
        return Or(empty, top)

    def subset(self, X: str, Y: str) -> Formula:
        z = self.name("z")
        return Forall1(z, Implies(Member(z, X), Member(z, Y)))

    def disjoint(self, X: str, Y: str) -> Formula:
        z = self.name("z")
        return Forall1(z, Not(And(Member(z, X), Member(z, Y))))

    def defines(self, C: str, theta) -> Formula:
        """all1 z. (z in C <-> theta(z))"""
        z = self.name("z")
        return Forall1(z, Iff(Member(z, C), theta(z)))

    def complement_of(self, C: str, X: str) -> Formula:
        return self.defines(C, lambda z: Not(Member(z, X)))

    def none_between(self, a: str, b: str, X: str) -> Formula:
        z = self.name("z")
        return Forall1(z, Implies(_between(z, a, b), Not(Member(z, X))))

    def consecutive(self, r: str, r2: str, R: str) -> Formula:
        return conj(Member(r, R), Member(r2, R), Less(r, r2), self.none_between(r, r2, R))

    def next_in(self, x: str, R: str, S: str) -> Formula:
        """The first element of R after x belongs to S."""
        r = self.name("r")
        return Exists1(r, conj(Member(r, R), Member(r, S), Less(x, r), self.none_between(x, r, R)))

    def whole_intervals(self, K: str, G: str) -> Formula:
        """K is a union of maximal intervals of G."""
        x, y = self.name("x"), self.name("y")
        return Forall1(
            x,
            Forall1(y, Implies(conj(Succ(x, y), Member(x, G), Member(y, G)), Iff(Member(x, K), Member(y, K)))),
        )

    def each_gap_has(self, S: str, K: str, extra=None) -> Formula:
        r, r2, x = self.name("r"), self.name("r"), self.name("x")
        inside = conj(Member(x, K), _between(x, r, r2))
        body = Exists1(x, inside)
        if extra is not None:
            body = And(body, extra(r, r2))
        return Forall1(r, Forall1(r2, Implies(self.consecutive(r, r2, S), body)))

    def after_some(self, K: str, S: str) -> Formula:
        x, s = self.name("x"), self.name("s")
        return Forall1(x, Implies(Member(x, K), Exists1(s, And(Member(s, S), Less(s, x)))))

    def parity(self, E: str) -> Formula:
        """E is the set of even positions."""
        x, y = self.name("x"), self.name("y")
        zero = Forall1(x, Implies(Not(Exists1(y, Succ(y, x))), Member(x, E)))
        x2, y2 = self.name("x"), self.name("y")
        alternate = Forall1(x2, Forall1(y2, Implies(Succ(x2, y2), Iff(Member(x2, E), Not(Member(y2, E))))))
        return And(zero, alternate)

    def defined(self, R: str, I: str) -> Formula:
        return And(self.infinite(R), self.disjoint(R, I))

    # vector-sequence gadgets ------------------------------------------------
    def isolation(self, I0: str, I1: str, E: str) -> Formula:
        """I1 is I0 without the even positions that have an I0-neighbour."""

        def theta(x):
            y = self.name("y")
            neighbour = Exists1(y, And(Member(y, I0), Or(Succ(x, y), Succ(y, x))))
            return And(Member(x, I0), Not(And(Member(x, E), neighbour)))

        return self.defines(I1, theta)

    def completion(self, R: str, I: str, J: str) -> Formula:
        """J adds the positions strictly between consecutive I-elements with no
        R-element in between, except the last one."""

        def theta(z):
            x, y, w = self.name("x"), self.name("y"), self.name("w")
            gap = Forall1(w, Implies(_between(w, x, y), Not(Or(Member(w, I), Member(w, R)))))
            fill = Exists1(x, Exists1(y, conj(Member(x, I), Member(y, I), _between(z, x, y), Not(Succ(z, y)), gap)))
            return Or(Member(z, I), fill)

        return self.defines(J, theta)

    def sub_extraction(self, R: str, J: str, R2: str, I2: str) -> Formula:
        """<R2,I2> encodes a sub-extraction of <R,J>: kept vectors are the gaps
        ending at R2-elements, kept coordinates are whole J-intervals."""
        x = self.name("x")
        return conj(
            self.subset(R2, R),
            self.infinite(R2),
            self.subset(I2, J),
            self.whole_intervals(I2, J),
            Forall1(x, Implies(Member(x, I2), self.next_in(x, R, R2))),
            self.each_gap_has(R2, I2),
        )

    def interval_closed(self, R: str, J: str, I2: str) -> Formula:
        x, y, z = self.name("x"), self.name("y"), self.name("z")
        hyp = conj(Member(x, I2), Member(y, I2), _between(z, x, y), Member(z, J), self.none_between(x, y, R))
        return Forall1(x, Forall1(y, Forall1(z, Implies(hyp, Member(z, I2)))))

    def adjacency(self, X: str, R2: str, I2: str) -> Formula:
        """X holds R2 and every position neither in nor next to I2."""

        def theta(z):
            y = self.name("y")
            near = Exists1(y, And(Member(y, I2), disj(Equal(y, z), Succ(z, y), Succ(y, z))))
            return Or(Member(z, R2), Not(near))

        return self.defines(X, theta)

    def dim_unbounded(self, R: str, I: str) -> Formula:
        J = self.name("J")
        R1, I1 = self.name("R"), self.name("I")
        case1 = Exists2(R1, Exists2(I1, And(self.sub_extraction(R, J, R1, I1), self.ttoinf_dim_unbounded(R1, I1))))
        R2, I2, C, X = self.name("R"), self.name("I"), self.name("C"), self.name("X")
        bounded = Exists2(C, And(self.complement_of(C, I2), Not(W(C))))
        spread = Exists2(X, And(self.adjacency(X, R2, I2), W(X)))
        case2 = Exists2(
            R2,
            Exists2(I2, conj(self.sub_extraction(R, J, R2, I2), self.interval_closed(R, J, I2), bounded, spread)),
        )
        return And(self.defined(R, I), Exists2(J, And(self.completion(R, I, J), Or(case1, case2))))

    def is_interval(self, a: str, b: str, I: str) -> Formula:
        z, z2, z3 = self.name("z"), self.name("z"), self.name("z")
        return conj(
            _le(a, b),
            Forall1(z, Implies(And(_le(a, z), _le(z, b)), Member(z, I))),
            Forall1(z2, Implies(Succ(z2, a), Not(Member(z2, I)))),
            Forall1(z3, Implies(Succ(b, z3), Not(Member(z3, I)))),
        )

    def ttoinf(self, R: str, I: str) -> Formula:
        """For every infinite Y with bounded gaps, ultimately every I-interval
        holds two elements of Y."""
        Y, n, a, b, y1, y2 = (self.name(s) for s in ("Y", "n", "a", "b", "y", "y"))
        two = Exists1(y1, Exists1(y2, conj(Less(y1, y2), Member(y1, Y), Member(y2, Y), _le(a, y1), _le(y2, b))))
        late = Exists1(n, Forall1(a, Forall1(b, Implies(And(Less(n, a), self.is_interval(a, b, I)), two))))
        return Forall2(Y, Implies(And(Not(W(Y)), self.infinite(Y)), late))

    def strict_extraction(self, S: str, J: str, J2: str) -> Formula:
        def dropped(r, r2):
            x = self.name("x")
            return Exists1(x, conj(Member(x, J), Not(Member(x, J2)), _between(x, r, r2)))

        return conj(self.subset(J2, J), self.whole_intervals(J2, J), self.each_gap_has(S, J2, dropped))

    def dominated(self, J: str, G: str) -> Formula:
        """G keeps a nonempty prefix of every interval of J."""
        x, y, x2, y2 = self.name("x"), self.name("y"), self.name("x"), self.name("y")
        closed = Forall1(x, Forall1(y, Implies(conj(Succ(x, y), Member(x, J), Member(y, G)), Member(x, G))))
        starts = Forall1(
            x2, Implies(And(Member(x2, J), Forall1(y2, Implies(Succ(y2, x2), Not(Member(y2, J))))), Member(x2, G))
        )
        return conj(self.subset(G, J), closed, starts)

    def one_extraction(self, S: str, G: str, K: str) -> Formula:
        """K keeps exactly one interval of G in every S-gap."""
        x, y, z = self.name("x"), self.name("y"), self.name("z")
        single = Forall1(
            x,
            Forall1(
                y,
                Implies(
                    conj(Member(x, K), Member(y, K), Less(x, y), self.none_between(x, y, S)),
                    Forall1(z, Implies(_between(z, x, y), Member(z, K))),
                ),
            ),
        )
        return conj(self.subset(K, G), self.whole_intervals(K, G), self.each_gap_has(S, K), self.after_some(K, S), single)

    def selected_unbounded(self, S: str, S0: str, K: str) -> Formula:
        """The intervals of K right after selected elements of S are unbounded."""
        C = self.name("C")

        def theta(z):
            s = self.name("s")
            picked = Exists1(s, conj(Member(s, S0), Less(s, z), self.none_between(s, z, S)))
            return Not(And(Member(z, K), picked))

        return Exists2(C, And(self.defines(C, theta), W(C)))

    def asym_equiv(self, S: str, K: str, K2: str) -> Formula:
        S0 = self.name("S")
        same = Iff(self.selected_unbounded(S, S0, K), self.selected_unbounded(S, S0, K2))
        return Forall2(S0, Implies(self.subset(S0, S), same))

    def mix(self, S: str, G: str, G2: str) -> Formula:
        K, K2 = self.name("K"), self.name("K")
        return Forall2(
            K,
            Implies(self.one_extraction(S, G, K), Exists2(K2, And(self.one_extraction(S, G2, K2), self.asym_equiv(S, K, K2)))),
        )

    def ttoinf_dim_unbounded(self, R: str, I: str) -> Formula:
        S, J, J2, G, G2 = (self.name(s) for s in ("S", "J", "J", "G", "G"))
        # for every dominated G some dominated G2, in that order
        prop = Forall2(G, Implies(self.dominated(J, G), Exists2(G2, And(self.dominated(J2, G2), self.mix(S, G, G2)))))
        sync = Exists2(
            J,
            And(
                self.defines(J, lambda z: And(Member(z, I), self.next_in(z, R, S))),
                Exists2(J2, And(self.strict_extraction(S, J, J2), prop)),
            ),
        )
        chosen = Exists2(S, conj(self.subset(S, R), self.infinite(S), sync))
        return conj(self.defined(R, I), self.ttoinf(R, I), chosen)

    # periodicity ignoring the padding --------------------------------------
    def alternating(self, R: str, R2: str) -> Formula:
        r, r2, x, y = self.name("r"), self.name("r"), self.name("x"), self.name("y")
        unique = Forall1(y, Implies(And(Member(y, R2), _between(y, r, r2)), Equal(y, x)))
        one = Exists1(x, conj(Member(x, R2), _between(x, r, r2), unique))
        return Forall1(r, Forall1(r2, Implies(self.consecutive(r, r2, R), one)))

    def ultimately(self, R2: str, Y: str, inside: bool) -> Formula:
        n, x = self.name("n"), self.name("x")
        target = Member(x, Y) if inside else Not(Member(x, Y))
        return Exists1(n, Forall1(x, Implies(And(Member(x, R2), Less(n, x)), target)))

    def up_flat(self, Y: str) -> Formula:
        R, I, R2 = self.name("R"), self.name("I"), self.name("R")
        ucd = Macro("UltConstDim", (R, I))
        ucd2 = Macro("UltConstDim", (R2, I))
        hyp = conj(self.infinite(R2), self.disjoint(R2, I), self.alternating(R, R2), ucd2)
        decided = Or(self.ultimately(R2, Y, True), self.ultimately(R2, Y, False))
        body = conj(
            self.defines(I, lambda z: Letter(FLAT, z)),
            self.infinite(R),
            self.disjoint(R, I),
            ucd,
            Forall2(R2, Implies(hyp, decided)),
        )
        return Exists2(R, Exists2(I, body))

    def no_flat(self, Y: str) -> Formula:
        y = self.name("y")
        return Forall1(y, Implies(Member(y, Y), Not(Letter(FLAT, y))))


# ---------------------------------------------------------------------------
# driver


def _map(f: Formula, fn) -> Formula:
    """Rebuild bottom-up, letting ``fn`` replace a node (None keeps it)."""
    if isinstance(f, (Exists1, Forall1, Exists2, Forall2, QuantU, QuantP)):
        node = type(f)(f.var, _map(f.body, fn))
    elif isinstance(f, Not):
        node = Not(_map(f.body, fn))
    elif isinstance(f, (And, Or, Implies, Iff)):
        node = type(f)(_map(f.left, fn), _map(f.right, fn))
    else:
        node = f
    out = fn(node)
    return node if out is None else out


def _contains(f: Formula, kind) -> bool:
    return any(isinstance(n, kind) for n in iter_nodes(f))


def _prepare(f: Formula, allowed: set[Dialect], name: str) -> Gadgets:
    check_well_formed(f)
    d = dialect_of(f)
    if d not in allowed:
        raise RewriteError(f"{name} expects one of {sorted(x.value for x in allowed)}, got {d.value}")
    return Gadgets(FreshNames(all_names(f)))


def _run(f: Formula, name: str, allowed: set[Dialect], kind, build) -> tuple[Formula, RewriteReport]:
    g = _prepare(f, allowed, name)
    if not _contains(f, kind):
        out = f
    else:
        out = _map(f, lambda node: build(g, node) if isinstance(node, kind) else None)
    report = RewriteReport(name, dialect_of(f), dialect_of(out), node_count(f), node_count(out), tuple(g.introduced))
    return out, report


def _u_to_u2(g: Gadgets, node: QuantU) -> Formula:
    X, psi = node.var, node.body
    R, I, r, r2, z = g.name("R"), g.name("I"), g.name("r"), g.name("r"), g.name("z")
    covered = Forall1(z, Implies(conj(Member(z, I), _between(z, r, r2)), Member(z, X)))
    inner = Exists2(X, conj(g.finite(X), psi, covered))
    every_gap = Forall1(r, Forall1(r2, Implies(g.consecutive(r, r2, R), inner)))
    return Exists2(R, Exists2(I, And(U2(R, I), every_gap)))


def _u2_to_u(g: Gadgets, node: U2) -> Formula:
    R, I = node.reset, node.inc
    X, r, z, x, y, w = g.name("X"), g.name("r"), g.name("z"), g.name("x"), g.name("y"), g.name("w")
    after_r = Exists1(r, And(Member(r, R), Forall1(z, Implies(Member(z, X), Less(r, z)))))
    one_gap = Forall1(
        x,
        Forall1(
            y,
            Implies(
                conj(Member(x, X), Member(y, X), Less(x, y)),
                Not(Exists1(w, And(Member(w, R), _between(w, x, y)))),
            ),
        ),
    )
    return conj(g.infinite(R), g.disjoint(R, I), QuantU(X, conj(g.subset(X, I), after_r, one_gap)))


def _w_to_u2(g: Gadgets, node: W) -> Formula:
    C = g.name("C")
    return Exists2(C, And(g.complement_of(C, node.set), U2(node.set, C)))


def _u2_to_w(g: Gadgets, node: U2) -> Formula:
    R, I = node.reset, node.inc
    I0, E, I1 = g.name("I"), g.name("E"), g.name("I")
    minus = g.defines(I0, lambda z: And(Member(z, I), Not(Member(z, R))))
    return conj(
        g.disjoint(R, I),
        Exists2(I0, And(minus, Exists2(E, And(g.parity(E), Exists2(I1, And(g.isolation(I0, I1, E), g.dim_unbounded(R, I1))))))),
    )


def _w_to_p(g: Gadgets, node: W) -> Formula:
    X = node.set
    Y, y1, y2, z = g.name("Y"), g.name("y"), g.name("y"), g.name("z")
    gap = Forall1(z, Implies(And(_le(y1, z), Less(z, y2)), Not(Member(z, X))))
    pair = Exists1(y1, Exists1(y2, conj(Member(y1, Y), Member(y2, Y), Less(y1, y2), gap)))
    return And(g.infinite(X), QuantP(Y, Implies(g.infinite(Y), pair)))


def u_to_u2(f: Formula) -> Formula:
    return u_to_u2_report(f)[0]


def u_to_u2_report(f: Formula):
    return _run(f, "u_to_u2", {Dialect.MSO, Dialect.MSO_U}, QuantU, _u_to_u2)


def u2_to_u(f: Formula) -> Formula:
    return u2_to_u_report(f)[0]


def u2_to_u_report(f: Formula):
    return _run(f, "u2_to_u", {Dialect.MSO, Dialect.MSO_U2}, U2, _u2_to_u)


def w_to_u2(f: Formula) -> Formula:
    return w_to_u2_report(f)[0]


def w_to_u2_report(f: Formula):
    return _run(f, "w_to_u2", {Dialect.MSO, Dialect.MSO_W}, W, _w_to_u2)


def u2_to_w(f: Formula) -> Formula:
    return u2_to_w_report(f)[0]


def u2_to_w_report(f: Formula):
    return _run(f, "u2_to_w", {Dialect.MSO, Dialect.MSO_U2}, U2, _u2_to_w)


def w_to_p(f: Formula) -> Formula:
    return w_to_p_report(f)[0]


def w_to_p_report(f: Formula):
    return _run(f, "w_to_p", {Dialect.MSO, Dialect.MSO_W}, W, _w_to_p)


def _distinct(*names: str):
    if len(set(names)) != len(names):
        raise RewriteError(f"set variables must be distinct: {', '.join(names)}")


def _builder(names: tuple[str, ...], method: str) -> Formula:
    g = Gadgets(FreshNames(set(names)))
    return getattr(g, method)(*names)


def build_dim_unbounded(R: str, I: str) -> Formula:
    _distinct(R, I)
    return _builder((R, I), "dim_unbounded")


def build_ttoinf_dim_unbounded(R: str, I: str) -> Formula:
    _distinct(R, I)
    return _builder((R, I), "ttoinf_dim_unbounded")


def build_asym_equiv(S: str, K: str, K2: str) -> Formula:
    _distinct(S, K, K2)
    return _builder((S, K, K2), "asym_equiv")


def build_up_flat(Y: str) -> Formula:
    return _builder((Y,), "up_flat")


# ---------------------------------------------------------------------------
# P to U over padded words


def p_to_u_padded(f: Formula, alphabet=()) -> Formula:
    return p_to_u_padded_report(f, alphabet)[0]


def p_to_u_padded_report(f: Formula, alphabet=()):
    sigma = set(alphabet) | letters_of(f)
    if FLAT in sigma:
        raise RewriteError(f"the padding letter {FLAT!r} is already in the alphabet")
    if not is_sentence(f):
        raise RewriteError("p_to_u_padded needs a sentence")
    g = _prepare(f, {Dialect.MSO, Dialect.MSO_P}, "p_to_u_padded")

    def flat(x):
        return Letter(FLAT, x)

    def walk(node: Formula) -> Formula:
        if isinstance(node, Exists1):
            return Exists1(node.var, And(Not(flat(node.var)), walk(node.body)))
        if isinstance(node, Forall1):
            return Forall1(node.var, Implies(Not(flat(node.var)), walk(node.body)))
        if isinstance(node, Exists2):
            return Exists2(node.var, And(g.no_flat(node.var), walk(node.body)))
        if isinstance(node, Forall2):
            return Forall2(node.var, Implies(g.no_flat(node.var), walk(node.body)))
        if isinstance(node, QuantP):
            guard = And(g.no_flat(node.var), g.up_flat(node.var))
            return Forall2(node.var, Implies(guard, walk(node.body)))
        if isinstance(node, Succ):
            z = g.name("z")
            return And(Less(node.left, node.right), Forall1(z, Implies(_between(z, node.left, node.right), flat(z))))
        if isinstance(node, Not):
            return Not(walk(node.body))
        if isinstance(node, (And, Or, Implies, Iff)):
            return type(node)(walk(node.left), walk(node.right))
        return node

    out = walk(f)
    report = RewriteReport("p_to_u_padded", dialect_of(f), dialect_of(out), node_count(f), node_count(out), tuple(g.introduced))
    return out, report


# ---------------------------------------------------------------------------
# dialect edges


_EDGES = {
    ("U", "U2"): ("u_to_u2",),
    ("U2", "U"): ("u2_to_u",),
    ("W", "U2"): ("w_to_u2",),
    ("U2", "W"): ("u2_to_w",),
    ("U", "W"): ("u_to_u2", "u2_to_w"),
    ("W", "U"): ("w_to_u2", "u2_to_u"),
    ("W", "P"): ("w_to_p",),
    ("P", "U_FLAT"): ("p_to_u_padded",),
}

_STEPS = {
    "u_to_u2": u_to_u2_report,
    "u2_to_u": u2_to_u_report,
    "w_to_u2": w_to_u2_report,
    "u2_to_w": u2_to_w_report,
    "w_to_p": w_to_p_report,
}

_ALIASES = {
    "MSO_U": "U",
    "MSO+U": "U",
    "MSO_U2": "U2",
    "MSO+U2": "U2",
    "MSO_W": "W",
    "MSO+W": "W",
    "MSO_P": "P",
    "MSO+P": "P",
    "U♭": "U_FLAT",
    "UFLAT": "U_FLAT",
    "U_FLAT": "U_FLAT",
    "U-FLAT": "U_FLAT",
}


def dialect_key(text: str) -> str:
    key = text.strip().upper().replace("Ⅰ", "")
    key = _ALIASES.get(key, _ALIASES.get(text.strip(), key))
    if key not in {"U", "U2", "W", "P", "U_FLAT", "MSO"}:
        raise RewriteError(f"unknown dialect {text!r}")
    return key


def translate(f: Formula, source: str, target: str, alphabet=()) -> tuple[Formula, list[RewriteReport]]:
    src, dst = dialect_key(source), dialect_key(target)
    if src == dst:
        return f, []
    steps = _EDGES.get((src, dst))
    if steps is None:
        raise RewriteError(f"unsupported translation {source} -> {target}")
    reports = []
    for step in steps:
        if step == "p_to_u_padded":
            f, rep = p_to_u_padded_report(f, alphabet)
        else:
            f, rep = _STEPS[step](f)
        reports.append(rep)
    return f, reports


REWRITES = {
    "u_to_u2": u_to_u2,
    "u2_to_u": u2_to_u,
    "w_to_u2": w_to_u2,
    "u2_to_w": u2_to_w,
    "w_to_p": w_to_p,
    "p_to_u_padded": p_to_u_padded,
}

TARGET = {
    "u_to_u2": Dialect.MSO_U2,
    "u2_to_u": Dialect.MSO_U,
    "w_to_u2": Dialect.MSO_U2,
    "u2_to_w": Dialect.MSO_W,
    "w_to_p": Dialect.MSO_P,
    "p_to_u_padded": Dialect.MSO_U,
}

__all__ = [
    "REWRITES",
    "SIZE_FACTOR",
    "RewriteError",
    "RewriteReport",
    "build_asym_equiv",
    "build_dim_unbounded",
    "build_ttoinf_dim_unbounded",
    "build_up_flat",
    "p_to_u_padded",
    "translate",
    "u2_to_u",
    "u2_to_w",
    "u_to_u2",
    "w_to_p",
    "w_to_u2",
]

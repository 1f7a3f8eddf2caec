"""Seeded corpora: random formulas per dialect and the differential corpus of
formulas, words and assignments used to cross-check the rewrites."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .evaluator import Assignment, DiffReport, EvalConfig, Instance, differential_check
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
    Iff,
    Implies,
    Less,
    Letter,
    Member,
    Not,
    Or,
    QuantP,
    QuantU,
    Succ,
    W,
    parse_formula,
)
from .omegaset import GapTag, Multiples, OmegaSet, PiDigits, Pow2, Squares
from .rewrite import REWRITES, translate
from .vecseq import encode_numseq
from .words import BlockWord, LassoWord, PaddedWord, gap_function

ALPHABET = ("a", "b", "c")


# ---------------------------------------------------------------------------
# random formulas


@dataclass
class FormulaGen:
    """Random well-formed formulas whose only extension is ``dialect``.

    Free variables come from a small fixed pool so that some survive."""

    rng: np.random.Generator
    dialect: Dialect
    alphabet: tuple[str, ...] = ALPHABET
    sentence: bool = False
    _count: int = field(default=0, init=False)

    def fresh(self, upper: bool) -> str:
        self._count += 1
        return f"{'Z' if upper else 'z'}{self._count}"

    def pick(self, items):
        return items[int(self.rng.integers(0, len(items)))]

    def atom(self, fo: list[str], so: list[str]) -> Formula:
        options = ["letter", "less", "succ", "eq", "member"]
        ext = {Dialect.MSO_W: "w", Dialect.MSO_U2: "u2"}.get(self.dialect)
        if ext and so:
            options += [ext, ext]
        kind = self.pick(options)
        if not fo and kind != ext:
            if ext and so:
                return self.ext_atom(so)
            x = self.fresh(False)
            return Exists1(x, Letter(self.pick(self.alphabet), x))
        if kind == "letter":
            return Letter(self.pick(self.alphabet), self.pick(fo))
        if kind == "less":
            return Less(self.pick(fo), self.pick(fo))
        if kind == "succ":
            return Succ(self.pick(fo), self.pick(fo))
        if kind == "eq":
            return Equal(self.pick(fo), self.pick(fo))
        if kind == "member" and so:
            return Member(self.pick(fo), self.pick(so))
        if kind == "member":
            return Letter(self.pick(self.alphabet), self.pick(fo))
        return self.ext_atom(so)

    def ext_atom(self, so: list[str]) -> Formula:
        if self.dialect is Dialect.MSO_W:
            return W(self.pick(so))
        return U2(self.pick(so), self.pick(so))

    def formula(self, depth: int, fo: list[str], so: list[str]) -> Formula:
        if depth <= 0:
            return self.atom(fo, so)
        roll = self.rng.random()
        if roll < 0.15:
            return Not(self.formula(depth - 1, fo, so))
        if roll < 0.45:
            op = self.pick([And, Or, Implies, Iff])
            return op(self.formula(depth - 1, fo, so), self.formula(depth - 1, fo, so))
        if roll < 0.7:
            x = self.fresh(False)
            return self.pick([Exists1, Forall1])(x, self.formula(depth - 1, fo + [x], so))
        X = self.fresh(True)
        binders = [Exists2, Forall2]
        if self.dialect is Dialect.MSO_U:
            binders = [QuantU, QuantU, Exists2]
        elif self.dialect is Dialect.MSO_P:
            binders = [QuantP, QuantP, Forall2]
        return self.pick(binders)(X, self.formula(depth - 1, fo, so + [X]))

    def generate(self, depth: int = 4) -> Formula:
        fo = [] if self.sentence else ["x", "y"]
        so = [] if self.sentence else ["X", "Y"]
        while True:
            f = self.formula(depth, fo, so)
            f = self.ensure_extension(f, fo, so)
            if f is not None:
                return f

    def ensure_extension(self, f: Formula, fo, so) -> Formula | None:
        from .formula import dialect_of

        if dialect_of(f) is self.dialect:
            return f
        # graft one extension node on top
        if self.dialect in (Dialect.MSO_W, Dialect.MSO_U2):
            if not so:
                X = self.fresh(True)
                return Exists2(X, And(f, self.ext_atom([X])))
            return And(f, self.ext_atom(so))
        X = self.fresh(True)
        x = self.fresh(False)
        body = Forall1(x, Implies(Member(x, X), Letter(self.pick(self.alphabet), x)))
        quant = QuantU if self.dialect is Dialect.MSO_U else QuantP
        return And(f, quant(X, body))


SOURCE_DIALECT = {
    "u_to_u2": Dialect.MSO_U,
    "u2_to_u": Dialect.MSO_U2,
    "w_to_u2": Dialect.MSO_W,
    "u2_to_w": Dialect.MSO_U2,
    "w_to_p": Dialect.MSO_W,
    "p_to_u_padded": Dialect.MSO_P,
}


def random_formulas(rewrite: str, count: int = 200, seed: int = 42, depth: int = 4) -> list[Formula]:
    rng = np.random.default_rng(seed)
    gen = FormulaGen(rng, SOURCE_DIALECT[rewrite], sentence=rewrite == "p_to_u_padded")
    return [gen.generate(int(rng.integers(1, depth + 1))) for _ in range(count)]


# ---------------------------------------------------------------------------
# the differential corpus


# (name, dialect group, text); formulas of a group share their free variables
FORMULAS = [
    ("w_plain", "W", "W(X)"),
    ("w_neg", "W", "~W(X)"),
    ("w_and_a", "W", "W(X) & ex1 x. (x in X & a(x))"),
    ("w_or_empty", "W", "W(X) | ~(ex1 x. x in X)"),
    ("w_guard", "W", "W(X) -> all1 x. (x in X -> ex1 y. (x < y & y in X))"),
    ("w_defined", "W", "ex2 Y. (all1 y. (y in Y <-> (y in X & ~b(y)))) & W(Y)"),
    ("u_letters_a", "U", "U Y. all1 y. (y in Y -> (y in X & a(y)))"),
    ("u_subset", "U", "U Y. all1 y. (y in Y -> y in X)"),
    ("u_neg", "U", "~(U Y. all1 y. (y in Y -> (y in X & b(y))))"),
    ("u_blocks", "U", "U Y. all1 y. all1 z. ((y in Y & z in Y) -> ~(ex1 v. (y < v & v < z & b(v))))"),
    ("u_and_w_free", "U", "(U Y. all1 y. (y in Y -> c(y))) & ex1 x. x in X"),
    ("u2_plain", "U2", "U2(R,I)"),
    ("u2_neg", "U2", "~U2(R,I)"),
    ("u2_and_a", "U2", "U2(R,I) & ex1 x. (x in R & ex1 y. (x < y & y in I))"),
    ("u2_swap", "U2", "U2(R,I) | U2(I,R)"),
    ("u2_defined", "U2", "ex2 J. (all1 z. (z in J <-> (z in I & ~z in R))) & U2(R,J)"),
    ("p_example", "P", "ex2 X. (all1 x. (x in X <-> a(x))) & ~(P Y. ~(X = Y))"),
    ("p_b_not_up", "P", "ex2 X. (all1 x. (x in X <-> b(x))) & (P Y. ~(X = Y))"),
    ("p_no_c", "P", "P Y. ((ex1 y. y in Y) -> ex1 y. (y in Y & ~c(y)))"),
    ("p_trivial", "P", "P Y. (all1 y. (y in Y -> y in Y))"),
    ("p_neg", "P", "~(ex2 X. (all1 x. (x in X <-> c(x))) & ~(P Y. ~(X = Y)))"),
    ("p_succ", "P", "ex1 x. ex1 y. (succ(x, y) & a(x) & b(y))"),
]

# rewrites (as dialect edges) applied to each group
EDGES = {
    "W": [("W", "U2"), ("W", "P"), ("W", "U")],
    "U": [("U", "U2"), ("U", "W")],
    "U2": [("U2", "U"), ("U2", "W")],
    "P": [("P", "U_FLAT")],
}


def _lasso(rng, alphabet=ALPHABET, need=()) -> LassoWord:
    while True:
        stem = "".join(rng.choice(list(alphabet), size=int(rng.integers(0, 5))))
        loop = "".join(rng.choice(list(alphabet), size=int(rng.integers(1, 6))))
        if all(a in loop for a in need):
            return LassoWord.of(stem, loop, alphabet)


def _rand_lasso_set(rng) -> OmegaSet:
    stem = "".join(rng.choice(["0", "1"], size=int(rng.integers(0, 6))))
    period = "".join(rng.choice(["0", "1"], size=int(rng.integers(1, 7))))
    return OmegaSet.lasso(stem, period)


def _single_sets(rng, count: int) -> list[OmegaSet]:
    fixed = [
        OmegaSet.procedural(Pow2()),
        OmegaSet.procedural(Squares()),
        OmegaSet.procedural(Multiples(10)),
        OmegaSet.procedural(PiDigits()),
        OmegaSet.lasso("", "0000000001"),
        OmegaSet.finite([1, 4, 9]),
        OmegaSet.empty(),
        OmegaSet.everything(),
    ]
    out = list(fixed)
    while len(out) < count:
        out.append(_rand_lasso_set(rng))
    return out[:count]


def _growing(i):
    return i


def _bounded(i):
    return i % 3 + 1


def _pairs(rng, count: int) -> list[tuple[OmegaSet, OmegaSet]]:
    pow2 = OmegaSet.procedural(Pow2())
    odd3 = OmegaSet.lasso("000", "10")
    m10 = OmegaSet.procedural(Multiples(10))
    out = [
        (pow2, odd3),
        (m10, m10.complement()),
        (pow2, pow2.complement()),
        encode_numseq(_growing, GapTag.UNBOUNDED_GAPS),
        encode_numseq(_bounded, GapTag.BOUNDED_GAPS),
        (OmegaSet.finite([0, 5]), OmegaSet.finite([1, 2])),
        (pow2, OmegaSet.lasso("", "1")),
    ]
    while len(out) < count:
        a, b = _rand_lasso_set(rng), _rand_lasso_set(rng)
        out.append((a, b - a if rng.random() < 0.7 else b))
    return out[:count]


def _block_word() -> BlockWord:
    return BlockWord(("a", "c"), ("b",), gap_function("identity"), ALPHABET)


def instances(group: str, count: int = 30, seed: int = 42) -> list[Instance]:
    rng = np.random.default_rng(seed)
    out = []
    if group in ("W", "U"):
        for i, X in enumerate(_single_sets(rng, count)):
            word = _block_word() if i % 5 == 4 else _lasso(rng)
            out.append(Instance(word, Assignment({}, {"X": X})))
    elif group == "U2":
        for i, (R, I) in enumerate(_pairs(rng, count)):
            word = _block_word() if i % 5 == 4 else _lasso(rng)
            out.append(Instance(word, Assignment({}, {"R": R, "I": I})))
    else:
        for i in range(count):
            w = _lasso(rng, need=("a",) if i % 2 else ())
            gen = gap_function("identity" if i % 2 == 0 else "pow2")
            out.append(Instance(w, Assignment(), PaddedWord(w, gen)))
    return out


@dataclass(frozen=True)
class DiffCase:
    formula: str
    edge: tuple[str, str]
    report: DiffReport
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.report.contradictions

    def text(self) -> str:
        state = "ok" if self.ok else "CONTRADICTION"
        return f"{self.formula:14s} {self.edge[0]:>2s}->{self.edge[1]:<6s} {self.report.summary()} [{state}]"


def differential_corpus(
    cfg: EvalConfig | None = None, seed: int = 42, count: int = 30, names=None, groups=None
) -> list[DiffCase]:
    cfg = cfg or EvalConfig(budget=8_000)
    cases = []
    for name, group, text in FORMULAS:
        if names is not None and name not in names:
            continue
        if groups is not None and group not in groups:
            continue
        f = parse_formula(text, ALPHABET)
        corpus = instances(group, count, seed)
        for edge in EDGES[group]:
            g, _ = translate(f, *edge, alphabet=ALPHABET)
            start = time.perf_counter()
            report = differential_check(f, g, corpus, cfg)
            cases.append(DiffCase(name, edge, report, time.perf_counter() - start))
    return cases


def mutant_w_to_u2(f: Formula) -> Formula:
    """A deliberately wrong rewrite: W(X) becomes U2(X, X)."""
    from .rewrite import _map

    return _map(f, lambda node: U2(node.set, node.set) if isinstance(node, W) else None)


def mutation_report(cfg: EvalConfig | None = None, seed: int = 42, count: int = 30) -> DiffReport:
    f = parse_formula("W(X)")
    return differential_check(f, mutant_w_to_u2(f), instances("W", count, seed), cfg or EvalConfig(budget=8_000))


__all__ = [
    "ALPHABET",
    "EDGES",
    "FORMULAS",
    "REWRITES",
    "FormulaGen",
    "differential_corpus",
    "instances",
    "mutation_report",
    "random_formulas",
]

"""Symbolic isomorphism witnesses between direct-sum expressions, and a search for them.

Expressions are atoms and binary direct sums.  A witness is a proof term whose
constructors are axioms, reflexivity, symmetry, transitivity, congruence for
(+), associativity in both directions and commutativity.  ``check_witness``
is the trusted kernel; ``derive`` only has to produce terms the kernel accepts.

The decomposition argument X ~ Y (+) F, Y ~ X (+) E, X (+) X ~ X, Y (+) Y ~ Y
|- X ~ Y comes out of ``derive`` as an ordinary search problem.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "Assoc",
    "AssocInv",
    "Atom",
    "Axiom",
    "Comm",
    "Cong",
    "ContradictionTrace",
    "DerivationError",
    "DerivationFailure",
    "IsoAxiom",
    "Refl",
    "Sum",
    "Sym",
    "Trans",
    "WitnessError",
    "check_witness",
    "conjugacy_axioms",
    "derive",
    "dumps_witness",
    "load_axiom_file",
    "parse_expr",
    "self_conjugacy_contradiction",
    "standard_axioms",
    "steps",
    "witness_from_json",
    "witness_to_json",
]


# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Sum:
    left: "SpaceExpr"
    right: "SpaceExpr"

    def __str__(self):
        return f"({self.left} + {self.right})"


SpaceExpr = Union[Atom, Sum]

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][\w\[\]\-.]*)|(.))")


def parse_expr(text: str) -> SpaceExpr:
    """Parse ``"X + (Y + F)"``; ``+`` associates to the left."""
    tokens = [m.group(1) or m.group(2) for m in _TOKEN.finditer(text) if (m.group(1) or m.group(2))]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"parse error in {text!r} at token {pos}: expected {expected or 'a term'}, got {tok!r}")
        pos += 1
        return tok

    def primary():
        if peek() == "(":
            take("(")
            e = expr()
            take(")")
            return e
        tok = take()
        if tok in "()+":
            raise ValueError(f"parse error in {text!r}: unexpected {tok!r}")
        return Atom(tok)

    def expr():
        e = primary()
        while peek() == "+":
            take("+")
            e = Sum(e, primary())
        return e

    e = expr()
    if peek() is not None:
        raise ValueError(f"parse error in {text!r}: trailing {peek()!r}")
    return e


def expr_to_json(e: SpaceExpr):
    if isinstance(e, Atom):
        return ["atom", e.name]
    return ["sum", expr_to_json(e.left), expr_to_json(e.right)]


def expr_from_json(doc) -> SpaceExpr:
    if isinstance(doc, str):
        return parse_expr(doc)
    if not isinstance(doc, list) or not doc:
        raise ValueError(f"malformed expression {doc!r}")
    if doc[0] == "atom" and len(doc) == 2 and isinstance(doc[1], str):
        return Atom(doc[1])
    if doc[0] == "sum" and len(doc) == 3:
        return Sum(expr_from_json(doc[1]), expr_from_json(doc[2]))
    raise ValueError(f"malformed expression {doc!r}")


def atoms(e: SpaceExpr) -> Iterator[str]:
    if isinstance(e, Atom):
        yield e.name
    else:
        yield from atoms(e.left)
        yield from atoms(e.right)


# -- axioms and witnesses ----------------------------------------------------


@dataclass(frozen=True)
class IsoAxiom:
    name: str
    lhs: SpaceExpr
    rhs: SpaceExpr

    def __str__(self):
        return f"{self.name}: {self.lhs} ~ {self.rhs}"


@dataclass(frozen=True)
class Axiom:
    name: str


@dataclass(frozen=True)
class Refl:
    expr: SpaceExpr


@dataclass(frozen=True)
class Sym:
    w: "IsoWitness"


@dataclass(frozen=True)
class Trans:
    first: "IsoWitness"
    second: "IsoWitness"


@dataclass(frozen=True)
class Cong:
    left: "IsoWitness"
    right: "IsoWitness"


@dataclass(frozen=True)
class Assoc:
    """(a + b) + c ~ a + (b + c)"""

    a: SpaceExpr
    b: SpaceExpr
    c: SpaceExpr


@dataclass(frozen=True)
class AssocInv:
    """a + (b + c) ~ (a + b) + c"""

    a: SpaceExpr
    b: SpaceExpr
    c: SpaceExpr


@dataclass(frozen=True)
class Comm:
    """a + b ~ b + a"""

    a: SpaceExpr
    b: SpaceExpr


IsoWitness = Union[Axiom, Refl, Sym, Trans, Cong, Assoc, AssocInv, Comm]


class WitnessError(ValueError):
    """A witness does not type-check.  ``path`` locates the offending node."""

    def __init__(self, message: str, path: tuple = ()):
        self.path = path
        where = "/".join(map(str, path)) or "<root>"
        super().__init__(f"{where}: {message}")


def _axiom_table(axioms) -> dict[str, IsoAxiom]:
    if isinstance(axioms, dict):
        return axioms
    table = {}
    for ax in axioms:
        if ax.name in table:
            raise WitnessError(f"duplicate axiom name {ax.name!r}")
        table[ax.name] = ax
    return table


def _is_expr(e) -> bool:
    if isinstance(e, Atom):
        return isinstance(e.name, str)
    return isinstance(e, Sum) and _is_expr(e.left) and _is_expr(e.right)


def check_witness(w, axioms: Iterable[IsoAxiom] = ()) -> tuple[SpaceExpr, SpaceExpr]:
    """Return the (source, target) pair ``w`` proves, or raise :class:`WitnessError`."""
    table = _axiom_table(axioms)

    def exprs(path, *es):
        for e in es:
            if not _is_expr(e):
                raise WitnessError(f"not a space expression: {e!r}", path)

    def go(w, path):
        if isinstance(w, Axiom):
            if w.name not in table:
                raise WitnessError(f"unknown axiom {w.name!r}", path)
            ax = table[w.name]
            return ax.lhs, ax.rhs
        if isinstance(w, Refl):
            exprs(path, w.expr)
            return w.expr, w.expr
        if isinstance(w, Sym):
            s, t = go(w.w, path + ("sym",))
            return t, s
        if isinstance(w, Trans):
            s1, t1 = go(w.first, path + ("trans.1",))
            s2, t2 = go(w.second, path + ("trans.2",))
            if t1 != s2:
                raise WitnessError(f"trans mismatch: {t1} is not {s2}", path)
            return s1, t2
        if isinstance(w, Cong):
            s1, t1 = go(w.left, path + ("cong.1",))
            s2, t2 = go(w.right, path + ("cong.2",))
            return Sum(s1, s2), Sum(t1, t2)
        if isinstance(w, Assoc):
            exprs(path, w.a, w.b, w.c)
            return Sum(Sum(w.a, w.b), w.c), Sum(w.a, Sum(w.b, w.c))
        if isinstance(w, AssocInv):
            exprs(path, w.a, w.b, w.c)
            return Sum(w.a, Sum(w.b, w.c)), Sum(Sum(w.a, w.b), w.c)
        if isinstance(w, Comm):
            exprs(path, w.a, w.b)
            return Sum(w.a, w.b), Sum(w.b, w.a)
        raise WitnessError(f"malformed witness node {w!r}", path)

    return go(w, ())


def steps(w) -> list:
    """Flatten nested Trans nodes into the list of rewrite steps."""
    if isinstance(w, Trans):
        return steps(w.first) + steps(w.second)
    return [w]


# -- serialization -----------------------------------------------------------


def witness_to_json(w):
    if isinstance(w, Axiom):
        return ["axiom", w.name]
    if isinstance(w, Refl):
        return ["refl", expr_to_json(w.expr)]
    if isinstance(w, Sym):
        return ["sym", witness_to_json(w.w)]
    if isinstance(w, Trans):
        return ["trans", witness_to_json(w.first), witness_to_json(w.second)]
    if isinstance(w, Cong):
        return ["cong", witness_to_json(w.left), witness_to_json(w.right)]
    if isinstance(w, (Assoc, AssocInv)):
        tag = "assoc" if isinstance(w, Assoc) else "assoc_inv"
        return [tag, expr_to_json(w.a), expr_to_json(w.b), expr_to_json(w.c)]
    if isinstance(w, Comm):
        return ["comm", expr_to_json(w.a), expr_to_json(w.b)]
    raise WitnessError(f"malformed witness node {w!r}")


def witness_from_json(doc):
    if not isinstance(doc, list) or not doc:
        raise WitnessError(f"malformed witness {doc!r}")
    tag, args = doc[0], doc[1:]
    arity = {"axiom": 1, "refl": 1, "sym": 1, "trans": 2, "cong": 2, "assoc": 3, "assoc_inv": 3, "comm": 2}
    if tag not in arity or len(args) != arity[tag]:
        raise WitnessError(f"malformed witness {doc!r}")
    if tag == "axiom":
        return Axiom(args[0])
    if tag == "refl":
        return Refl(expr_from_json(args[0]))
    if tag == "sym":
        return Sym(witness_from_json(args[0]))
    if tag == "trans":
        return Trans(witness_from_json(args[0]), witness_from_json(args[1]))
    if tag == "cong":
        return Cong(witness_from_json(args[0]), witness_from_json(args[1]))
    es = [expr_from_json(a) for a in args]
    return {"assoc": Assoc, "assoc_inv": AssocInv, "comm": Comm}[tag](*es)


def dumps_witness(w) -> str:
    return json.dumps(witness_to_json(w), separators=(",", ":"))


def axiom_to_json(ax: IsoAxiom) -> dict:
    return {"name": ax.name, "lhs": expr_to_json(ax.lhs), "rhs": expr_to_json(ax.rhs)}


def load_axiom_file(path) -> tuple[list[IsoAxiom], tuple[SpaceExpr, SpaceExpr] | None]:
    """Read ``{"axioms": [{"name", "lhs", "rhs"}, ...], "goal": [src, tgt]}``.

    Expressions may be nested ``["sum", l, r]`` / ``["atom", name]`` lists or
    strings such as ``"Y + F"``.
    """
    with open(path) as fh:
        doc = json.load(fh)
    axioms = [IsoAxiom(a["name"], expr_from_json(a["lhs"]), expr_from_json(a["rhs"])) for a in doc["axioms"]]
    _axiom_table(axioms)
    goal = doc.get("goal")
    if goal is not None:
        goal = (expr_from_json(goal[0]), expr_from_json(goal[1]))
    return axioms, goal


# -- search ------------------------------------------------------------------


@dataclass(frozen=True)
class DerivationFailure:
    """Budget exhausted (or search space exhausted) without reaching the goal."""

    goal: tuple
    expanded: int
    frontier_size: int
    exhausted: bool = False

    def __bool__(self):
        return False


def _moves(e: SpaceExpr, axioms: list[IsoAxiom]):
    """One-step rewrites of ``e`` in fixed order.

    At each position: axioms in declaration order (left-to-right, then
    right-to-left), then assoc, assoc_inv, comm; positions are visited root
    first, then the left operand, then the right one.
    """
    for ax in axioms:
        if e == ax.lhs:
            yield ax.rhs, Axiom(ax.name)
        if e == ax.rhs:
            yield ax.lhs, Sym(Axiom(ax.name))
    if isinstance(e, Sum):
        l, r = e.left, e.right
        if isinstance(l, Sum):
            yield Sum(l.left, Sum(l.right, r)), Assoc(l.left, l.right, r)
        if isinstance(r, Sum):
            yield Sum(Sum(l, r.left), r.right), AssocInv(l, r.left, r.right)
        yield Sum(r, l), Comm(l, r)
        for ne, w in _moves(l, axioms):
            yield Sum(ne, r), Cong(w, Refl(r))
        for ne, w in _moves(r, axioms):
            yield Sum(l, ne), Cong(Refl(l), w)


def _invert(w):
    """Inverse of a single rewrite step, built from the same constructors."""
    if isinstance(w, Axiom):
        return Sym(w)
    if isinstance(w, Sym):
        return w.w
    if isinstance(w, Refl):
        return w
    if isinstance(w, Assoc):
        return AssocInv(w.a, w.b, w.c)
    if isinstance(w, AssocInv):
        return Assoc(w.a, w.b, w.c)
    if isinstance(w, Comm):
        return Comm(w.b, w.a)
    if isinstance(w, Cong):
        return Cong(_invert(w.left), _invert(w.right))
    raise WitnessError(f"cannot invert {w!r}")


def _chain(step_list):
    w = step_list[-1]
    for s in reversed(step_list[:-1]):
        w = Trans(s, w)
    return w


def _path(parents: dict, node) -> list:
    out = []
    while parents[node] is not None:
        prev, step = parents[node]
        out.append(step)
        node = prev
    return out[::-1]


def derive(
    axioms: Iterable[IsoAxiom],
    goal: tuple[SpaceExpr, SpaceExpr],
    step_budget: int = 10_000,
):
    """Search for a witness of ``goal = (source, target)``.

    Breadth-first from both ends at once: the side with the smaller frontier
    expands one full layer at a time (forward on ties).  ``step_budget`` caps
    the number of expanded expressions.  Returns the witness, or a falsy
    :class:`DerivationFailure` with the frontier size when the budget runs out.
    """
    if step_budget < 1:
        raise ValueError("step_budget must be >= 1")
    axioms = list(axioms)
    _axiom_table(axioms)
    source, target = goal
    if source == target:
        return Refl(source)

    fwd = {source: None}
    bwd = {target: None}
    fwd_front, bwd_front = deque([source]), deque([target])
    expanded = 0

    while fwd_front and bwd_front:
        forward = len(fwd_front) <= len(bwd_front)
        front, seen, other = (fwd_front, fwd, bwd) if forward else (bwd_front, bwd, fwd)
        layer = len(front)
        for _ in range(layer):
            if expanded >= step_budget:
                return DerivationFailure(goal, expanded, len(fwd_front) + len(bwd_front))
            node = front.popleft()
            expanded += 1
            for child, step in _moves(node, axioms):
                if child in seen:
                    continue
                seen[child] = (node, step)
                if child in other:
                    return _join(fwd, bwd, child)
                front.append(child)
    return DerivationFailure(goal, expanded, 0, exhausted=True)


def _join(fwd: dict, bwd: dict, meet) -> IsoWitness:
    head = _path(fwd, meet)
    # bwd steps lead target -> meet; walk them back from meet to target
    tail = [_invert(s) for s in reversed(_path(bwd, meet))]
    return _chain(head + tail)


# -- the decomposition argument for Z_alpha ----------------------------------


def standard_axioms() -> list[IsoAxiom]:
    """X, Y Cartesian and complemented in each other."""
    X, Y, E, F = Atom("X"), Atom("Y"), Atom("E"), Atom("F")
    return [
        IsoAxiom("cX", Sum(X, X), X),
        IsoAxiom("cY", Sum(Y, Y), Y),
        IsoAxiom("u", X, Sum(Y, F)),
        IsoAxiom("v", Y, Sum(X, E)),
    ]


def space_atoms(alpha: float) -> tuple[Atom, Atom]:
    return Atom(f"Z[{alpha:g}]"), Atom(f"Z[{-alpha:g}]")


def conjugacy_axioms(alpha: float, complemented: bool = True) -> list[IsoAxiom]:
    """Axioms available once Id on conj(Z_alpha) is assumed to factor through Z_alpha.

    Z_alpha and its conjugate Z_{-alpha} are Cartesian; the assumption makes
    each complemented in the other (dropped when ``complemented`` is False).
    """
    Z, Zc = space_atoms(alpha)
    E, F = Atom("E"), Atom("F")
    axioms = [
        IsoAxiom("cartesian+", Sum(Z, Z), Z),
        IsoAxiom("cartesian-", Sum(Zc, Zc), Zc),
    ]
    if complemented:
        axioms += [
            IsoAxiom("complement-in+", Z, Sum(Zc, F)),
            IsoAxiom("complement-in-", Zc, Sum(Z, E)),
        ]
    return axioms


class DerivationError(RuntimeError):
    def __init__(self, failure: DerivationFailure):
        self.failure = failure
        super().__init__(
            f"no witness for {failure.goal[0]} ~ {failure.goal[1]} after expanding "
            f"{failure.expanded} expressions (frontier {failure.frontier_size})"
        )


@dataclass(frozen=True)
class ContradictionTrace:
    alpha: float
    axioms: tuple
    witness: IsoWitness
    proves: tuple
    steps: int
    imported_fact: str
    note: str = field(default="")


def self_conjugacy_contradiction(
    alpha: float = 1.0, axioms: Iterable[IsoAxiom] | None = None, budget: int = 10_000
) -> ContradictionTrace:
    """Derive Z_alpha ~ Z_{-alpha} from the self-conjugacy assumption.

    The conclusion clashes with the fact that Z_alpha and Z_beta are
    isomorphic only when alpha = beta.  That fact is imported, not checked:
    the trace records it as an assumption next to the derived witness.
    Raises :class:`DerivationError` if no witness is found within ``budget``.
    """
    axioms = list(conjugacy_axioms(alpha) if axioms is None else axioms)
    Z, Zc = space_atoms(alpha)
    result = derive(axioms, (Z, Zc), budget)
    if not result:
        raise DerivationError(result)
    proves = check_witness(result, axioms)
    return ContradictionTrace(
        alpha=alpha,
        axioms=tuple(axioms),
        witness=result,
        proves=proves,
        steps=len(steps(result)),
        imported_fact=f"Z[a] ~ Z[b] only if a = b (here a = {alpha:g}, b = {-alpha:g})",
        note=(
            "derived isomorphism contradicts the imported fact when alpha != 0; "
            "hence the identity of conj(Z_alpha) does not factor through Z_alpha"
            if alpha != 0
            else "alpha = 0: Z_0 is its own conjugate, no contradiction"
        ),
    )

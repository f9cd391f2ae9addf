"""Independent semantics for structural witnesses, used to cross-check the kernel.

A value of a space expression is a nested tuple mirroring the tree, with
leaves ``(atom_name, serial)``.  A witness is *run* on a value: associativity
and commutativity move subtrees around, congruence recurses, symmetry runs
the inverse.  The type of the result is read off its shape, so the
(source, target) pair comes out without ever consulting ``check_witness``.
"""
import itertools

from zalpha.pelczynski import Assoc, AssocInv, Atom, Comm, Cong, Refl, Sum, Sym, Trans


class Reject(Exception):
    pass


def inhabit(e, counter=None):
    counter = counter if counter is not None else itertools.count()
    if isinstance(e, Atom):
        return (e.name, next(counter))
    return (inhabit(e.left, counter), inhabit(e.right, counter))


def is_leaf(v):
    return isinstance(v, tuple) and len(v) == 2 and isinstance(v[0], str)


def shape(v):
    if is_leaf(v):
        return Atom(v[0])
    return Sum(shape(v[0]), shape(v[1]))


def has_type(v, e):
    if isinstance(e, Atom):
        return is_leaf(v) and v[0] == e.name
    return not is_leaf(v) and has_type(v[0], e.left) and has_type(v[1], e.right)


def run(w, v, inverse=False):
    if isinstance(w, Refl):
        if not has_type(v, w.expr):
            raise Reject("refl")
        return v
    if isinstance(w, Sym):
        return run(w.w, v, not inverse)
    if isinstance(w, Trans):
        if inverse:
            return run(w.first, run(w.second, v, True), True)
        return run(w.second, run(w.first, v))
    if isinstance(w, Cong):
        if is_leaf(v):
            raise Reject("cong on atom")
        return (run(w.left, v[0], inverse), run(w.right, v[1], inverse))
    if isinstance(w, (Assoc, AssocInv)):
        forward = isinstance(w, Assoc) != inverse
        if forward:
            if is_leaf(v) or is_leaf(v[0]):
                raise Reject("assoc shape")
            (va, vb), vc = v
        else:
            if is_leaf(v) or is_leaf(v[1]):
                raise Reject("assoc_inv shape")
            va, (vb, vc) = v
        if not (has_type(va, w.a) and has_type(vb, w.b) and has_type(vc, w.c)):
            raise Reject("assoc types")
        return (va, (vb, vc)) if forward else ((va, vb), vc)
    if isinstance(w, Comm):
        if is_leaf(v):
            raise Reject("comm on atom")
        first, second = (w.b, w.a) if inverse else (w.a, w.b)
        if not (has_type(v[0], first) and has_type(v[1], second)):
            raise Reject("comm types")
        return (v[1], v[0])
    raise Reject(f"not structural: {w!r}")


def evaluate(w, source):
    """(source, target) by running ``w`` on a generic inhabitant of ``source``; raises Reject."""
    v = inhabit(source)
    out = run(w, v)
    leaves_in = sorted(_leaves(v))
    if sorted(_leaves(out)) != leaves_in:
        raise Reject("not a rearrangement")
    return source, shape(out)


def _leaves(v):
    if is_leaf(v):
        yield v
    else:
        yield from _leaves(v[0])
        yield from _leaves(v[1])


def trees(alphabet, depth):
    """All expression trees of depth <= ``depth``."""
    level = [Atom(a) for a in alphabet]
    for _ in range(depth):
        level = [Atom(a) for a in alphabet] + [Sum(l, r) for l in level for r in level]
    return level


def depth(e):
    return 0 if isinstance(e, Atom) else 1 + max(depth(e.left), depth(e.right))


def structural_witnesses(alphabet, max_depth):
    """Yield ``(witness, intended_source)`` for Refl/Assoc/AssocInv/Comm and Sym of them.

    Every source has depth <= ``max_depth``.
    """
    by_depth = {d: trees(alphabet, d) for d in range(max_depth + 1)}
    for e in by_depth[max_depth]:
        yield Refl(e), e
    if max_depth < 1:
        return
    sub = by_depth[max_depth - 1]
    for a in sub:
        for b in sub:
            yield Comm(a, b), Sum(a, b)
            yield Sym(Comm(a, b)), Sum(b, a)
    if max_depth < 2:
        return
    small = by_depth[max_depth - 2]
    for a in small:
        for b in small:
            for c in sub:
                yield Assoc(a, b, c), Sum(Sum(a, b), c)
                yield Sym(Assoc(a, b, c)), Sum(a, Sum(b, c))
    for a in sub:
        for b in small:
            for c in small:
                yield AssocInv(a, b, c), Sum(a, Sum(b, c))
                yield Sym(AssocInv(a, b, c)), Sum(Sum(a, b), c)


def source_of(w):
    """The source a structural witness is meant to start from, read off its constructors.

    Sym needs the target of its body, which is obtained by running the body.
    Returns None when that run is rejected.
    """
    if isinstance(w, Refl):
        return w.expr
    if isinstance(w, Comm):
        return Sum(w.a, w.b)
    if isinstance(w, Assoc):
        return Sum(Sum(w.a, w.b), w.c)
    if isinstance(w, AssocInv):
        return Sum(w.a, Sum(w.b, w.c))
    if isinstance(w, Trans):
        return source_of(w.first)
    if isinstance(w, Cong):
        l, r = source_of(w.left), source_of(w.right)
        return None if l is None or r is None else Sum(l, r)
    if isinstance(w, Sym):
        inner = source_of(w.w)
        if inner is None:
            return None
        try:
            return evaluate(w.w, inner)[1]
        except Reject:
            return None
    raise Reject(f"not structural: {w!r}")


def oracle(w):
    """(source, target) from the evaluator alone, or None if it rejects ``w``."""
    src = source_of(w)
    if src is None:
        return None
    try:
        return evaluate(w, src)
    except Reject:
        return None

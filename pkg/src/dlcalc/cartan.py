"""Symbolic expansion of operations applied to polynomials.

The rules, applied term-wise over F_p:

* additivity over terms, with coefficients carried through;
* unitality: a positive-index operation kills 1;
* Frobenius normalization: index 0 is the p-th (2nd) power map and is never
  stored as a composite symbol; ``bP_0`` acts by 0;
* on a single generator, a positive-index symbol is prepended to its
  composite, except that an integer index on an odd-degree class (or a
  half-integer index on an even one) acts by 0;
* on products, the Cartan formula, with the Bockstein distributing as a
  derivation: ``bP_i(vw) = sum(bP_k(v) P_l(w) + (-1)^|v| P_k(v) bP_l(w))``.

Expansions record whether every composite created along the way is a basis
element (allowable at odd p, basis shape at p = 2); when it is not, the
result is formally correct but not expressed in basis generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Generator, Monomial, Polynomial, mul
from .ops import DLOp, DLSequence, is_allowable, is_basis_shape

__all__ = [
    "FormalExpansion",
    "apply_op",
    "apply_seq",
    "total_operation",
    "total_operation_product",
]


@dataclass(slots=True)
class FormalExpansion:
    """Result of an expansion plus bookkeeping flags.

    ``adem_free`` is True when every composite generator created during the
    expansion is a basis element; ``truncated`` is set when terms above the
    weight bound were dropped, so callers never mistake a truncated value
    for an exact one.
    """

    value: Polynomial
    adem_free: bool
    truncated: bool = False


@lru_cache(maxsize=None)
def _expand(p: int, eps: int, num: int, mono: Monomial):
    """Exact expansion of one symbol on one monomial.

    Returns (polynomial, frozenset of composite generators created here or
    below).  Cached: all inputs and outputs are immutable.
    """
    if mono.is_unit:
        if num == 0 and eps == 0:
            return Polynomial.one(p), frozenset()
        return Polynomial.zero(p), frozenset()

    g, e = mono.factors[0]
    if len(mono.factors) == 1 and e == 1:
        if num == 0:
            if eps:
                return Polynomial.zero(p), frozenset()
            frob = Monomial.from_pairs(((g, p),))
            if frob is None:
                return Polynomial.zero(p), frozenset()
            return Polynomial.from_monomial(p, frob), frozenset()
        if p != 2 and num % 2 != g.degree % 2:
            return Polynomial.zero(p), frozenset()
        new = g.prepend(DLOp(eps, num))
        return Polynomial.from_generator(new), frozenset((new,))

    head = Monomial(((g, 1),))
    rest = Monomial.from_pairs([(g, e - 1)] + list(mono.factors[1:]))
    assert rest is not None
    acc = Polynomial.zero(p)
    created: frozenset[Generator] = frozenset()
    head_sign = -1 if g.degree % 2 else 1
    for k in range(num + 1):
        l = num - k
        if eps == 0:
            a, ca = _expand(p, 0, k, head)
            if a.is_zero:
                continue
            b, cb = _expand(p, 0, l, rest)
            if b.is_zero:
                created |= ca
                continue
            acc = acc + mul(a, b)
            created |= ca | cb
        else:
            a1, c1 = _expand(p, 1, k, head)
            b1, c2 = _expand(p, 0, l, rest)
            created |= c1 | c2
            if not (a1.is_zero or b1.is_zero):
                acc = acc + mul(a1, b1)
            a2, c3 = _expand(p, 0, k, head)
            b2, c4 = _expand(p, 1, l, rest)
            created |= c3 | c4
            if not (a2.is_zero or b2.is_zero):
                acc = acc + mul(a2, b2).scale(head_sign)
    return acc, created


def _is_basis_generator(g: Generator) -> bool:
    if g.p == 2:
        return is_basis_shape(g.seq)
    return is_allowable(g.p, g.seq, g.base_degree, None)


def apply_op(
    p: int, op: DLOp, f: Polynomial, weight_bound: int | None = None
) -> FormalExpansion:
    """Apply one operation symbol to a polynomial, term-wise."""
    if f.p != p:
        raise ValueError(f"mixed prime contexts: {p} vs {f.p}")
    if p == 2 and op.eps:
        raise ValueError("no Bockstein flag at p = 2")
    acc = Polynomial.zero(p)
    created: set[Generator] = set()
    for mono, coeff in f.terms.items():
        poly, made = _expand(p, op.eps, op.num, mono)
        created.update(made)
        if not poly.is_zero:
            acc = acc + poly.scale(coeff)
    truncated = False
    if weight_bound is not None:
        kept = {m: c for m, c in acc.terms.items() if m.weight <= weight_bound}
        truncated = len(kept) != len(acc.terms)
        acc = Polynomial(p, kept)
    adem_free = all(_is_basis_generator(g) for g in created)
    return FormalExpansion(acc, adem_free, truncated)


def apply_seq(
    p: int, seq: DLSequence, f: Polynomial, weight_bound: int | None = None
) -> FormalExpansion:
    """Apply a composite, innermost symbol first; flags accumulate."""
    out = FormalExpansion(f, True, False)
    for op in reversed(seq):
        step = apply_op(p, op, out.value, weight_bound)
        out = FormalExpansion(step.value, out.adem_free and step.adem_free,
                              out.truncated or step.truncated)
    return out


def total_operation(p: int, f: Polynomial, max_i: int) -> dict[tuple[int, int], Polynomial]:
    """Coefficients of the total operation on an even-degree input.

    Returns a map (i, z) -> polynomial for 0 <= i <= max_i, where z = 0
    indexes the plain part ``P_i(f)`` and z = 1 the Bockstein part
    ``bP_i(f)``; the i = 0 Bockstein part is zero.  The total operation is a
    ring map, which is what :func:`total_operation_product` multiplies by.
    """
    if p == 2:
        raise ValueError("the total operation is defined at odd primes")
    if any(m.degree % 2 for m in f.terms):
        raise ValueError("total operation requires even-degree input")
    out: dict[tuple[int, int], Polynomial] = {}
    for i in range(max_i + 1):
        out[(i, 0)] = apply_op(p, DLOp(0, 2 * i), f).value
        if i == 0:
            out[(i, 1)] = Polynomial.zero(p)
        else:
            out[(i, 1)] = apply_op(p, DLOp(1, 2 * i), f).value
    return out


def _mul_past_z(b: Polynomial, a: Polynomial) -> Polynomial:
    """``(b z) a`` rewritten as ``+- (b a) z``: sign from a's term parities."""
    out = Polynomial.zero(a.p)
    for m, c in a.terms.items():
        sign = -1 if m.degree % 2 else 1
        out = out + mul(b, Polynomial.from_monomial(a.p, m, c)).scale(sign)
    return out


def total_operation_product(
    p: int,
    phi1: dict[tuple[int, int], Polynomial],
    phi2: dict[tuple[int, int], Polynomial],
    max_i: int,
) -> dict[tuple[int, int], Polynomial]:
    """Product of two total-operation values, truncated at max_i.

    The exterior variable z squares to zero and moving it past a class picks
    up the Koszul sign of that class.
    """
    out = {
        (i, z): Polynomial.zero(p) for i in range(max_i + 1) for z in (0, 1)
    }
    for (i1, z1), f1 in phi1.items():
        if f1.is_zero:
            continue
        for (i2, z2), f2 in phi2.items():
            i = i1 + i2
            if i > max_i or f2.is_zero or (z1 and z2):
                continue
            if z1:
                out[(i, 1)] = out[(i, 1)] + _mul_past_z(f1, f2)
            else:
                out[(i, z2)] = out[(i, z2)] + mul(f1, f2)
    return out

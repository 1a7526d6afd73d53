"""Shared test helpers: independent brute-force oracles and random inputs.

The oracles here deliberately avoid the library's enumeration and
divisibility code paths: raw index tuples are generated exhaustively and
filtered, monomials are counted by direct exponent-vector search, and ideal
membership is re-decided on plain dictionaries.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from dlcalc.algebra import Generator, Monomial, Polynomial
from dlcalc.ops import DLOp, is_allowable, is_basis_shape, seq_degree


def brute_force_odd_seqs(p, k, t, weight_bound, d_max=None):
    """All allowable sequences by raw enumeration and filtering.

    Generates every index tuple whose length fits the weight bound and whose
    entries fit the index caps implied by k (finite) or by the degree cap
    (every symbol's own contribution already exceeds d_max otherwise), then
    keeps the allowable ones inside the bounds.
    """
    max_len = 0
    while p ** (max_len + 1) <= weight_bound:
        max_len += 1
    if k is not None:
        num_cap = k - 1
    elif d_max is not None:
        # a symbol of doubled index num contributes at least num*(p-1) - 1
        num_cap = (d_max + 1) // (p - 1)
    else:
        raise ValueError("need a finite level or a degree cap")
    alphabet = [DLOp(e, n) for e in (0, 1) for n in range(1, num_cap + 1)]
    found = set()
    for length in range(max_len + 1):
        for raw in itertools.product(alphabet, repeat=length):
            seq = tuple(raw)
            if not is_allowable(p, seq, t, k):
                continue
            if d_max is not None and seq_degree(p, seq, t) > d_max:
                continue
            found.add(seq)
    return found


def brute_force_p2_seqs(lo, hi, t, weight_bound, d_max=None):
    """All basis-shape sequences at p = 2 by raw enumeration and filtering."""
    max_len = 0
    while 2 ** (max_len + 1) <= weight_bound:
        max_len += 1
    if hi is not None:
        cap = hi
    elif d_max is not None:
        cap = max(0, d_max - 2 * min(t, 0) if t < 0 else d_max)
    else:
        raise ValueError("need a subscript bound or a degree cap")
    alphabet = [DLOp(0, j) for j in range(lo, cap + 1)]
    found = set()
    for length in range(max_len + 1):
        for raw in itertools.product(alphabet, repeat=length):
            seq = tuple(raw)
            if not is_basis_shape(seq):
                continue
            if any(op.num < lo for op in seq):
                continue
            if d_max is not None and seq_degree(2, seq, t) > d_max:
                continue
            found.add(seq)
    return found


def count_monomials(gens, weight_bound, d_lo, d_hi):
    """Dimension counts of the free graded-commutative algebra on ``gens``.

    Direct search over exponent vectors: polynomial exponents bounded by the
    weight budget, exterior generators capped at exponent one.
    """
    counts: Counter = Counter()

    def rec(i, w, d):
        if i == len(gens):
            if d_lo <= d <= d_hi:
                counts[(w, d)] += 1
            return
        g = gens[i]
        e_cap = (weight_bound - w) // g.weight
        if g.is_odd:
            e_cap = min(e_cap, 1)
        for e in range(e_cap + 1):
            rec(i + 1, w + e * g.weight, d + e * g.degree)

    rec(0, 0, 0)
    return counts


def ideal_member_oracle(mono, gens):
    """Exponent-dictionary divisibility, independent of Monomial.divides."""
    have = {(g.base, g.base_degree, g.seq): e for g, e in mono.factors}
    for gen in gens:
        need = {(g.base, g.base_degree, g.seq): e for g, e in gen.factors}
        if all(have.get(key, 0) >= e for key, e in need.items()):
            return True
    return False


_BASES = ("x", "y", "z", "u", "v2", "w0")


def random_generator(rng: random.Random, p: int, max_seq: int = 2,
                     base_degrees=(0, 1, 2, 3)) -> Generator:
    base = rng.choice(_BASES)
    bdeg = rng.choice(base_degrees)
    length = rng.randrange(0, max_seq + 1)
    if p == 2:
        seq = tuple(DLOp(0, rng.randrange(1, 5)) for _ in range(length))
    else:
        seq = tuple(
            DLOp(rng.randrange(2), rng.randrange(1, 7)) for _ in range(length)
        )
    return Generator(p, base, bdeg, seq)


def random_monomial(rng: random.Random, p: int, max_factors: int = 3) -> Monomial:
    while True:
        pairs = [
            (random_generator(rng, p), rng.randrange(1, 3))
            for _ in range(rng.randrange(0, max_factors + 1))
        ]
        m = Monomial.from_pairs(pairs)
        if m is not None:
            return m


def random_polynomial(rng: random.Random, p: int, max_terms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        terms[random_monomial(rng, p)] = rng.randrange(1, p)
    return Polynomial(p, terms)

"""Free E_k-algebra generator enumeration and bigraded Poincare series.

Series count basis monomials by (weight, topological degree).  Weight is the
arity grading: a length-n composite on x has weight p**n, so each weight
stratum is finite-dimensional and a series truncated at weight W with a wide
enough degree window is exact there.

When the operation level k is unbounded the set of composites of a fixed
weight is infinite (one per index), so enumeration additionally caps the
degree; the default cap is twice the weight bound.  Within the chosen
(weight, degree) window all counts are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import Generator
from .ops import DLOp, op_degree

__all__ = [
    "BigradedSeries",
    "DecompositionReport",
    "default_degree_cap",
    "enumerate_generators",
    "poincare_series",
    "verify_decomposition",
]


def default_degree_cap(weight_bound: int) -> int:
    """Degree cap used when the operation level is unbounded."""
    return 2 * weight_bound


def _max_len(p: int, weight_bound: int) -> int:
    n = 0
    while p ** (n + 1) <= weight_bound:
        n += 1
    return n


class BigradedSeries:
    """Dense table of dimension counts c[w, d] on a finite window.

    Rows are weights 0..W, columns degrees d_min..d_max.  Multiplying in a
    single generator of bidegree (w0, d0) is a shift-and-add pass over the
    table (geometric for a polynomial generator, one shift for an exterior
    one), dispatched to the kernels backend.
    """

    __slots__ = ("W", "d_min", "d_max", "c")

    def __init__(self, weight_bound: int, d_min: int = 0, d_max: int = 0,
                 coeffs: np.ndarray | None = None):
        if weight_bound < 0 or d_max < d_min:
            raise ValueError("empty series window")
        self.W = weight_bound
        self.d_min = d_min
        self.d_max = d_max
        if coeffs is None:
            coeffs = np.zeros((weight_bound + 1, d_max - d_min + 1), dtype=np.int64)
        self.c = coeffs

    @classmethod
    def unit(cls, weight_bound: int, d_min: int = 0, d_max: int = 0) -> "BigradedSeries":
        s = cls(weight_bound, d_min, d_max)
        s.c[0, -d_min] = 1
        return s

    def coeff(self, w: int, d: int) -> int:
        if not (0 <= w <= self.W and self.d_min <= d <= self.d_max):
            raise ValueError(f"({w}, {d}) outside the series window")
        return int(self.c[w, d - self.d_min])

    def _check_gen(self, w0: int, d0: int) -> bool:
        if w0 < 1:
            raise ValueError("generators have positive weight")
        return w0 <= self.W

    def imul_polynomial_gen(self, w0: int, d0: int) -> None:
        """Multiply by sum(q**(m*(w0, d0)) for m >= 0), truncated."""
        if self._check_gen(w0, d0):
            kernels.geometric_inplace(self.c, w0, d0)

    def imul_exterior_gen(self, w0: int, d0: int) -> None:
        """Multiply by 1 + q**(w0, d0), truncated."""
        if self._check_gen(w0, d0):
            self.c = kernels.exterior(self.c, w0, d0)

    def _check_window(self, other: "BigradedSeries") -> None:
        if (self.W, self.d_min, self.d_max) != (other.W, other.d_min, other.d_max):
            raise ValueError("series windows differ")

    def __mul__(self, other: "BigradedSeries") -> "BigradedSeries":
        self._check_window(other)
        if self.d_min != 0:
            raise ValueError("convolution requires a window starting at degree 0")
        return BigradedSeries(self.W, self.d_min, self.d_max,
                              kernels.convolve(self.c, other.c))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BigradedSeries)
            and (self.W, self.d_min, self.d_max) == (other.W, other.d_min, other.d_max)
            and bool(np.array_equal(self.c, other.c))
        )

    def first_mismatch(self, other: "BigradedSeries") -> tuple[int, int] | None:
        self._check_window(other)
        diff = np.argwhere(self.c != other.c)
        if diff.size == 0:
            return None
        w, dd = diff[0]
        return int(w), int(dd) + self.d_min

    def totals_by_degree(self, weight_cap: int | None = None) -> dict[int, int]:
        """Dimension per degree, summed over weights up to the cap."""
        cap = self.W if weight_cap is None else min(weight_cap, self.W)
        sums = self.c[: cap + 1].sum(axis=0)
        return {d + self.d_min: int(v) for d, v in enumerate(sums)}

    def to_json_obj(self) -> dict:
        coeffs = [
            [int(w), int(dd) + self.d_min, int(self.c[w, dd])]
            for w, dd in np.argwhere(self.c != 0)
        ]
        coeffs.sort()
        return {"W": self.W, "d_min": self.d_min, "d_max": self.d_max, "coeffs": coeffs}


# -- sequence enumeration ----------------------------------------------------

def _odd_seqs(p, k, t, weight_cap, d_max):
    """All k-allowable sequences on a degree-t class, as (seq, degree) pairs.

    Sequences satisfy p**len <= weight_cap and, when d_max is given,
    degree <= d_max (valid pruning only for t >= 0, where degrees are
    monotone under every symbol).  k = None means no index bound and then
    d_max is required.
    """
    if k is None and d_max is None:
        raise ValueError("unbounded operation level requires a degree cap")
    if d_max is not None and t < 0:
        raise ValueError("degree caps require a non-negative base degree")
    num_k = None if k is None else k - 1
    max_len = _max_len(p, weight_cap)
    out = [((), t)]
    frontier = [((), t, None)]
    for _ in range(max_len):
        nxt = []
        for ops, d, last in frontier:
            cap = num_k if last is None else last
            if d_max is not None:
                # p*d + num*(p-1) - eps <= d_max, eps <= 1
                deg_cap = (d_max - p * d + 1) // (p - 1)
                cap = deg_cap if cap is None else min(cap, deg_cap)
            if cap is None:
                raise ValueError("unbounded index range")
            start = 1 if d % 2 else 2
            for num in range(start, cap + 1, 2):
                for eps in (0, 1):
                    d2 = op_degree(p, DLOp(eps, num), d)
                    if d_max is not None and d2 > d_max:
                        continue
                    item = (ops + ((eps, num),), d2, num)
                    nxt.append(item)
                    out.append((item[0], d2))
        frontier = nxt
    for raw, d in out:
        yield tuple(DLOp(e, n) for e, n in reversed(raw)), d


def _p2_seqs(lo, hi, t, weight_cap, d_max):
    """Basis-shape sequences at p = 2 with subscripts in [lo, hi].

    Stored outermost first with weakly increasing subscripts inward; built
    here innermost-out, so each extension prepends a subscript <= the
    current outermost.  hi = None leaves subscripts unbounded and requires
    a degree cap.
    """
    if hi is None and d_max is None:
        raise ValueError("unbounded subscripts require a degree cap")
    if d_max is not None and t < 0:
        raise ValueError("degree caps require a non-negative base degree")
    max_len = _max_len(2, weight_cap)
    out = [((), t)]
    frontier = [((), t, None)]
    for _ in range(max_len):
        nxt = []
        for ops, d, last in frontier:
            cap = hi if last is None else last
            if d_max is not None:
                deg_cap = d_max - 2 * d
                cap = deg_cap if cap is None else min(cap, deg_cap)
            if cap is None:
                raise ValueError("unbounded subscript range")
            for j in range(lo, cap + 1):
                d2 = 2 * d + j
                if d_max is not None and d2 > d_max:
                    continue
                item = (ops + (j,), d2, j)
                nxt.append(item)
                out.append((item[0], d2))
        frontier = nxt
    for raw, d in out:
        yield tuple(DLOp(0, j) for j in reversed(raw)), d


def enumerate_generators(
    p: int,
    k: int | None,
    t: int,
    weight_bound: int,
    d_max: int | None = None,
    base: str = "x",
    check_parity: bool = True,
) -> list[Generator]:
    """Basis generators of the free E_k-algebra on one degree-t class.

    Odd p: all k-allowable composites of weight at most the bound (k = None
    meaning no index bound); p = 2: all basis-shape composites on subscripts
    1..k-1.  The class itself (empty composite) is included whenever the
    weight bound admits it.  An unbounded level additionally caps degrees at
    ``d_max``, defaulting to twice the weight bound.

    At odd primes the free-algebra basis description requires t and a finite
    k to have different parity; pass check_parity=False to run the bare
    enumeration anyway.
    """
    if weight_bound < 0:
        raise ValueError("weight bound must be non-negative")
    if k is not None and k < 0:
        raise ValueError("operation level must be non-negative")
    if p == 2:
        if k is None and d_max is None:
            d_max = default_degree_cap(weight_bound)
        pairs = _p2_seqs(1, None if k is None else k - 1, t, weight_bound, d_max)
    else:
        if check_parity and k is not None and t % 2 == k % 2:
            raise ValueError(f"t = {t} and k = {k} must have different parity")
        if k is None and d_max is None:
            d_max = default_degree_cap(weight_bound)
        pairs = _odd_seqs(p, k, t, weight_bound, d_max)
    gens = [
        Generator(p, base, t, seq)
        for seq, _ in pairs
        if p ** len(seq) <= weight_bound
    ]
    gens.sort(key=lambda g: (g.weight, g.degree, g.sort_key))
    return gens


# -- series ------------------------------------------------------------------

def _window_from_gens(weight_bound: int, gens: list[Generator]) -> tuple[int, int]:
    """Degree window guaranteed to hold every monomial of weight <= bound."""
    d_lo, d_hi = 0, 0
    for g in gens:
        d, w = g.degree, g.weight
        if d > 0:
            d_hi = max(d_hi, -((-weight_bound * d) // w))
        elif d < 0:
            d_lo = min(d_lo, (weight_bound * d) // w)
    return d_lo, d_hi


def _series_product(weight_bound, d_min, d_max, factors) -> BigradedSeries:
    s = BigradedSeries.unit(weight_bound, d_min, d_max)
    for w0, d0, odd in factors:
        if odd:
            s.imul_exterior_gen(w0, d0)
        else:
            s.imul_polynomial_gen(w0, d0)
    return s


def poincare_series(
    p: int,
    k: int | None,
    t: int,
    weight_bound: int,
    d_max: int | None = None,
) -> BigradedSeries:
    """Bigraded Poincare series of the free E_k-algebra on one generator.

    Each even-parity basis generator (every generator at p = 2) contributes
    a polynomial factor, each odd-parity one an exterior factor.
    """
    if k is None and d_max is None:
        d_max = default_degree_cap(weight_bound)
    gens = enumerate_generators(p, k, t, weight_bound, d_max)
    if d_max is not None:
        window = (0, d_max)
    else:
        window = _window_from_gens(weight_bound, gens)
    factors = [(g.weight, g.degree, g.is_odd) for g in gens]
    return _series_product(weight_bound, window[0], window[1], factors)


@dataclass(slots=True)
class DecompositionReport:
    match: bool
    first_mismatch: tuple[int, int] | None
    lhs: BigradedSeries
    rhs: BigradedSeries


def _verify_p2(k, n, t, weight_bound, d_max, index_range):
    if k < 1:
        raise ValueError("p = 2 decomposition needs k >= 1")
    if n is not None and k > n:
        raise ValueError("need k <= n")
    if n is None and d_max is None:
        d_max = default_degree_cap(weight_bound)

    rhs_pairs = list(_p2_seqs(1, None if n is None else n, t, weight_bound, d_max))
    if d_max is None:
        gens = [Generator(2, "x", t, seq) for seq, _ in rhs_pairs]
        d_lo, d_hi = _window_from_gens(weight_bound, gens)
    else:
        d_lo, d_hi = 0, d_max
    rhs = _series_product(
        weight_bound, d_lo, d_hi,
        [(2 ** len(seq), d, False) for seq, d in rhs_pairs],
    )

    outer_lo = k if index_range == "proof" else k + 1
    factors = []
    for outer, d_outer in _p2_seqs(outer_lo, n, t, weight_bound, d_max):
        wo = 2 ** len(outer)
        for sub, d in _p2_seqs(1, k - 1, d_outer, weight_bound // wo, d_max):
            factors.append((wo * 2 ** len(sub), d, False))
    lhs = _series_product(weight_bound, d_lo, d_hi, factors)

    mismatch = lhs.first_mismatch(rhs)
    return DecompositionReport(mismatch is None, mismatch, lhs, rhs)


def _verify_odd(p, k, t, weight_bound, d_max):
    if t % 2 == k % 2:
        raise ValueError(f"t = {t} and k = {k} must have different parity")
    if t < 0:
        raise ValueError("need a non-negative base degree")
    d_top = d_max if d_max is not None else default_degree_cap(weight_bound)

    rhs = poincare_series(p, None, t, weight_bound, d_top)

    # Composites split off a free E_k factor (parity preserved) or a free
    # E_{k+1} factor (parity flipped) for each host that carries no index
    # small enough to live in those factors' own bases, i.e. each
    # (k+1)-bounded host.  The hosts' factor bases then contribute the rest.
    factors = []
    for outer, d_outer in _odd_seqs(p, None, t, weight_bound, d_top):
        if any(op.num < k + 1 for op in outer):
            continue
        flips = sum(op.eps for op in outer) % 2 == 1
        level = k + 1 if flips else k
        wo = p ** len(outer)
        for sub, d in _odd_seqs(p, level, d_outer, weight_bound // wo, d_top):
            factors.append((wo * p ** len(sub), d, d % 2 == 1))
    lhs = _series_product(weight_bound, 0, d_top, factors)

    mismatch = lhs.first_mismatch(rhs)
    return DecompositionReport(mismatch is None, mismatch, lhs, rhs)


def verify_decomposition(
    p: int,
    k: int,
    n: int | None,
    t: int,
    weight_bound: int,
    d_max: int | None = None,
    index_range: str = "proof",
) -> DecompositionReport:
    """Compare a free algebra against its tensor decomposition, as series.

    p = 2: the free E_{n+1}-algebra on a degree-t class against the product
    of free E_k-algebras on the composites Q_k^{i_k}..Q_n^{i_n}(x); with
    ``index_range = "statement"`` the outer subscripts start at k + 1
    instead, which is expected to fail.  n = None targets the E-infinity
    algebra with the default degree cap.

    Odd p: the free E-infinity algebra on a degree-t class against the
    product of free E_k-algebras on parity-preserving hosts and free
    E_{k+1}-algebras on parity-flipping ones, both over (k+1)-bounded
    hosts.  Exact coefficient-wise comparison on the common window.
    """
    if index_range not in ("proof", "statement"):
        raise ValueError("index_range must be 'proof' or 'statement'")
    if p == 2:
        return _verify_p2(k, n, t, weight_bound, d_max, index_range)
    if n is not None:
        raise ValueError("odd-prime decompositions target the E-infinity algebra; use n=None")
    if index_range != "proof":
        raise ValueError("the alternative index range applies to p = 2 only")
    return _verify_odd(p, k, t, weight_bound, d_max)

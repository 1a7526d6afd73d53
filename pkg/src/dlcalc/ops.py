"""Dyer-Lashof operation symbols: degrees, indexing, allowability, classification.

Conventions.  Operations are lower indexed.  At an odd prime p the symbol
``b^e P_i`` (``e`` the Bockstein flag) sends a class of topological degree t
to one of degree ``p*t + 2*i*(p-1) - e``.  The index i is a half-integer
``>= 1/2``, stored doubled (``num = 2*i``) so all arithmetic stays integral.
At p = 2 the symbol ``Q_j`` sends degree t to ``2*t + j`` and ``num = j``.

Sequences are plain tuples of :class:`DLOp`, outermost symbol first: the
rightmost entry acts first, matching the right-to-left composite notation
``b P_1/2 b P_1``.  ``num = 0`` encodes the Frobenius (the p-th power map);
it may be applied but never occurs inside a stored sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

PURELY_BOSONIC = "purely_bosonic"
MIXED_BOSONIC = "mixed_bosonic"
FERMIONIC = "fermionic"

__all__ = [
    "DLOp",
    "DLSequence",
    "PURELY_BOSONIC",
    "MIXED_BOSONIC",
    "FERMIONIC",
    "op_degree",
    "seq_degree",
    "seq_weight",
    "lower_from_upper",
    "upper_from_lower",
    "is_allowable",
    "is_basis_shape",
    "is_bounded",
    "classify",
    "scale_seq",
    "op_to_text",
    "seq_to_text",
    "seq_from_text",
]


@dataclass(frozen=True, slots=True)
class DLOp:
    """A single operation symbol.

    ``num`` is the doubled index 2i at odd primes and the subscript j at
    p = 2; ``eps`` is the Bockstein flag (always 0 at p = 2).
    """

    eps: int
    num: int

    def __post_init__(self) -> None:
        if self.eps not in (0, 1):
            raise ValueError(f"Bockstein flag must be 0 or 1, got {self.eps!r}")
        if self.num < 0:
            raise ValueError(f"operation index must be non-negative, got {self.num!r}")


DLSequence = tuple[DLOp, ...]


def op_degree(p: int, op: DLOp, t: int) -> int:
    """Degree of ``op`` applied to a class of degree t."""
    if p == 2:
        return 2 * t + op.num
    return p * t + op.num * (p - 1) - op.eps


def seq_degree(p: int, seq: DLSequence, t: int) -> int:
    """Degree of the composite ``seq`` applied to a class of degree t.

    Folds right to left: the innermost (rightmost) symbol acts first.  The
    empty sequence is the identity.
    """
    for op in reversed(seq):
        t = op_degree(p, op, t)
    return t


def seq_weight(p: int, seq: DLSequence) -> int:
    """Weight (arity grading) of the composite: p ** len(seq)."""
    return p ** len(seq)


def lower_from_upper(p: int, eps: int, upper_num: int, t: int) -> DLOp | None:
    """Convert an upper-indexed symbol to lower indexing on a degree-t class.

    ``upper_num`` is doubled at odd primes (2i for ``b^eps P^i``) and plain at
    p = 2 (the superscript of ``Q^i``); either way the lower index is
    ``upper_num - t``.  Returns None when the lower index is negative, where
    the operation vanishes.  Index 0 is legal and names the Frobenius.
    """
    if p == 2 and eps:
        raise ValueError("no Bockstein flag at p = 2")
    num = upper_num - t
    if num < 0:
        return None
    return DLOp(eps, num)


def upper_from_lower(p: int, op: DLOp, t: int) -> int:
    """Inverse of :func:`lower_from_upper`: the (doubled) upper index."""
    return op.num + t


def _k_num_cap(k: int | None) -> int | None:
    # i <= (k-1)/2  <=>  num <= k-1
    return None if k is None else k - 1


def is_allowable(p: int, seq: DLSequence, t: int, k: int | None = None) -> bool:
    """Allowability of ``seq`` on a degree-t class, odd primes only.

    ``k`` = None means no index bound (the E-infinity case); a finite k
    bounds every index by (k-1)/2.  Checked innermost-out:

    * index parity tracks degree parity at every level (the index is an
      integer exactly when the class it acts on has even degree),
    * indices weakly decrease outward,
    * every index is at least 1/2 and at most (k-1)/2.

    The parity rule enforced at each level subsumes the half-integer-jump
    condition after a Bockstein, since a Bockstein is exactly what flips
    degree parity.
    """
    if p == 2:
        raise ValueError("allowability is defined for odd primes; see is_basis_shape")
    cap = _k_num_cap(k)
    d = t
    prev: int | None = None
    for op in reversed(seq):
        if op.num < 1:
            return False
        if op.num % 2 != d % 2:
            return False
        if prev is not None and op.num > prev:
            return False
        if cap is not None and op.num > cap:
            return False
        d = op_degree(p, op, d)
        prev = op.num
    return True


def is_basis_shape(seq: DLSequence, k: int | None = None) -> bool:
    """Basis shape at p = 2: ``Q_a^{i_a} ... Q_b^{i_b}`` with a <= b.

    Subscripts weakly increase from the outermost symbol inward, all at
    least 1 and (for finite k) at most k - 1.
    """
    cap = _k_num_cap(k)
    prev = 0
    for op in seq:
        if op.eps or op.num < 1 or op.num < prev:
            return False
        if cap is not None and op.num > cap:
            return False
        prev = op.num
    return True


def is_bounded(seq: DLSequence, n: int) -> bool:
    """True when every index exceeds (n-1)/2, i.e. num >= n for all entries."""
    return all(op.num >= n for op in seq)


def classify(seq: DLSequence) -> str:
    """Bockstein-count classification of a non-empty composite.

    fermionic when the Bockstein count is odd (the composite flips degree
    parity), purely bosonic when it is zero, mixed bosonic otherwise.
    """
    if not seq:
        raise ValueError("cannot classify the empty sequence")
    total = sum(op.eps for op in seq)
    if total % 2:
        return FERMIONIC
    return MIXED_BOSONIC if total else PURELY_BOSONIC


def scale_seq(seq: DLSequence, m: int) -> DLSequence:
    """Entry-wise index scaling of a Bockstein-free sequence."""
    if m < 1:
        raise ValueError("scale factor must be positive")
    if any(op.eps for op in seq):
        raise ValueError("only purely bosonic sequences can be scaled")
    return tuple(DLOp(0, op.num * m) for op in seq)


def op_to_text(p: int, op: DLOp) -> str:
    """Text form: ``Q_3`` at p = 2; ``P_1``, ``bP_1/2``, ``bP_3/2`` at odd p."""
    if p == 2:
        return f"Q_{op.num}"
    prefix = "b" if op.eps else ""
    if op.num % 2 == 0:
        return f"{prefix}P_{op.num // 2}"
    return f"{prefix}P_{op.num}/2"


def seq_to_text(p: int, seq: DLSequence) -> str:
    """Whitespace-separated symbols, outermost first."""
    return " ".join(op_to_text(p, op) for op in seq)


def seq_from_text(p: int, text: str) -> DLSequence:
    """Parse a whitespace-separated sequence of operation symbols."""
    from .parser import parse_seq

    return parse_seq(p, text)

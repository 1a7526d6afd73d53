"""Exact arithmetic in free graded-commutative algebras over F_p.

Scalars are canonical residues in [0, p) held as plain ints; every public
operation reduces mod p and never stores a zero coefficient.  A
:class:`Generator` is a base variable with a (possibly empty) composite of
operation symbols applied to it; monomials are sorted tuples of
(generator, exponent) pairs, and a polynomial maps monomials to nonzero
residues.  At odd primes odd-degree generators square to zero and products
pick up Koszul signs; at p = 2 everything is polynomial.

All values are immutable after construction and every operation is a pure
function, so sharing across threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ops import DLOp, DLSequence, op_to_text, seq_degree

__all__ = [
    "Generator",
    "Monomial",
    "Polynomial",
    "MonomialIdeal",
    "mul",
    "poly_pow",
    "ideal_member",
    "poly_to_text",
    "poly_to_json",
]


@dataclass(frozen=True, slots=True)
class Generator:
    """A base variable with a composite operation applied, e.g. ``bP_1[x]``.

    ``seq`` is stored outermost first.  Degree, parity and weight are derived
    from (p, base_degree, seq); equality and ordering use the identifying
    triple (base, seq, base_degree).
    """

    p: int
    base: str
    base_degree: int = 0
    seq: DLSequence = ()

    @property
    def degree(self) -> int:
        return seq_degree(self.p, self.seq, self.base_degree)

    @property
    def weight(self) -> int:
        return self.p ** len(self.seq)

    @property
    def is_odd(self) -> bool:
        """Odd parity in the graded-commutative sense; always False at p = 2."""
        return self.p != 2 and self.degree % 2 == 1

    @property
    def sort_key(self) -> tuple:
        return (self.base, tuple((op.num, op.eps) for op in self.seq), self.base_degree)

    def label(self) -> str:
        """Compact form used in serialized factors: ``bP_1/2 bP_1[x]``."""
        var = self.base if self.base_degree == 0 else f"{self.base}({self.base_degree})"
        if not self.seq:
            return var
        ops = " ".join(op_to_text(self.p, op) for op in self.seq)
        return f"{ops}[{var}]"

    def prepend(self, op: DLOp) -> "Generator":
        """The generator with one more symbol applied (outermost)."""
        return Generator(self.p, self.base, self.base_degree, (op,) + self.seq)


@dataclass(frozen=True, slots=True)
class Monomial:
    """A product of generator powers in canonical (sorted) order."""

    factors: tuple[tuple[Generator, int], ...] = ()

    @property
    def degree(self) -> int:
        return sum(e * g.degree for g, e in self.factors)

    @property
    def weight(self) -> int:
        return sum(e * g.weight for g, e in self.factors)

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def exponent(self, g: Generator) -> int:
        for h, e in self.factors:
            if h == g:
                return e
        return 0

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(g) >= e for g, e in self.factors)

    def sort_key(self) -> tuple:
        return (self.weight, self.degree, tuple((g.sort_key, e) for g, e in self.factors))

    @staticmethod
    def unit() -> "Monomial":
        return _UNIT

    @staticmethod
    def from_pairs(pairs) -> "Monomial | None":
        """Canonicalize a (generator, exponent) iterable.

        Returns None when the product is zero, i.e. an odd-parity generator
        acquires exponent >= 2 at an odd prime.
        """
        merged: dict[Generator, int] = {}
        for g, e in pairs:
            if e:
                merged[g] = merged.get(g, 0) + e
        items = []
        for g in sorted(merged, key=lambda h: h.sort_key):
            e = merged[g]
            if e < 0:
                raise ValueError("negative exponent")
            if g.is_odd and e > 1:
                return None
            items.append((g, e))
        return Monomial(tuple(items))


_UNIT = Monomial(())


def _monomial_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """Product with Koszul sign: (sign, monomial) or (0, None) when zero."""
    odd_a = [g for g, _ in a.factors if g.is_odd]
    odd_b = [g for g, _ in b.factors if g.is_odd]
    if odd_a and odd_b:
        seen = set(odd_a)
        if any(g in seen for g in odd_b):
            return 0, None
        inversions = 0
        for h in odd_b:
            key = h.sort_key
            inversions += sum(1 for g in odd_a if key < g.sort_key)
        sign = -1 if inversions % 2 else 1
    else:
        sign = 1
    merged = Monomial.from_pairs(list(a.factors) + list(b.factors))
    if merged is None:
        return 0, None
    return sign, merged


class Polynomial:
    """An F_p-linear combination of monomials; zero is the empty term map."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[Monomial, int] | None = None):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        clean: dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                c %= p
                if c:
                    clean[m] = c
        self.p = p
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "Polynomial":
        return cls(p, {})

    @classmethod
    def one(cls, p: int) -> "Polynomial":
        return cls(p, {Monomial.unit(): 1})

    @classmethod
    def from_generator(cls, g: Generator) -> "Polynomial":
        return cls(g.p, {Monomial(((g, 1),)): 1})

    @classmethod
    def from_monomial(cls, p: int, m: Monomial, coeff: int = 1) -> "Polynomial":
        return cls(p, {m: coeff})

    # -- predicates ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if mixed (zero counts as any)."""
        degrees = {m.degree for m in self.terms}
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else 0

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed prime contexts: {self.p} vs {other.p}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.p, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return Polynomial(self.p, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.p, {m: -c for m, c in self.terms.items()})

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.p, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return mul(self, other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.p == other.p
            and self.terms == other.terms
        )

    __hash__ = None  # mutable-ish mapping inside; compare by value only

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __repr__(self) -> str:
        return f"Polynomial(p={self.p}, {poly_to_text(self)!r})"


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Graded-commutative product; Koszul signs at odd primes."""
    a._check(b)
    out: dict[Monomial, int] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = _monomial_mul(ma, mb)
            if m is None:
                continue
            out[m] = out.get(m, 0) + sign * ca * cb
    return Polynomial(a.p, out)


def poly_pow(a: Polynomial, m: int) -> Polynomial:
    """a ** m by repeated multiplication; a ** 0 = 1."""
    if m < 0:
        raise ValueError("exponent must be non-negative")
    out = Polynomial.one(a.p)
    for _ in range(m):
        out = mul(out, a)
    return out


@dataclass(frozen=True, slots=True)
class MonomialIdeal:
    """A monomial ideal given by a finite list of monomial generators."""

    p: int
    gens: tuple[Monomial, ...]

    def member(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)


def ideal_member(m: Monomial, ideal: MonomialIdeal) -> bool:
    """True when some generator of the ideal divides m exponent-wise."""
    return ideal.member(m)


def _term_text(m: Monomial, c: int) -> str:
    if m.is_unit:
        return str(c)
    factors = "*".join(
        g.label() if e == 1 else f"{g.label()}^{e}" for g, e in m.factors
    )
    return factors if c == 1 else f"{c}*{factors}"


def poly_to_text(a: Polynomial) -> str:
    """Deterministic text form, terms sorted by (weight, degree, monomial)."""
    if a.is_zero:
        return "0"
    return " + ".join(_term_text(m, c) for m, c in a.sorted_terms())


def poly_to_json(a: Polynomial) -> dict:
    """JSON form: {"terms": [{"coeff": c, "factors": [[label, exp], ...]}]}."""
    return {
        "terms": [
            {"coeff": c, "factors": [[g.label(), e] for g, e in m.factors]}
            for m, c in a.sorted_terms()
        ]
    }

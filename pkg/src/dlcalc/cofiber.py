"""Quotient-ring models of cofibers by a p-th power, and lemma checkers.

At an odd prime the homotopy ring of the cofiber of ``x -> x^p`` out of the
free algebra on a degree-0 class is modeled by its presentation: composites
on x are routed by their Bockstein classification.  A purely bosonic
composite K contributes ``P_K(x)^p`` to the kill ideal (its index-scaled
version acts on x^p as that p-th power); anything carrying a Bockstein dies
on p-th powers outright and instead contributes a suspension class, exterior
for the parity-preserving (mixed bosonic) composites and a free associative
generator for the parity-flipping (fermionic) ones.

Non-nilpotence in the model is monomial-ideal non-membership, certified both
by a bounded power search and structurally: the ideal is generated by p-th
powers of single variables, so a generator power lies in it only if the
generator is one of those variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Generator,
    Monomial,
    MonomialIdeal,
    Polynomial,
    poly_pow,
)
from .cartan import apply_op, apply_seq
from .ops import (
    MIXED_BOSONIC,
    PURELY_BOSONIC,
    DLOp,
    DLSequence,
    classify,
    is_allowable,
    is_basis_shape,
    scale_seq,
)
from .series import enumerate_generators

__all__ = [
    "CofiberPresentation",
    "NilpotenceReport",
    "MixedTermReport",
    "build_cofiber",
    "kill_ideal",
    "check_nilpotent_in_cofiber",
    "e1_filtration_stage",
    "check_qnilpotent_identity",
    "check_p_power_rule",
    "mixed_term_coefficient",
    "smallest_mixed_shape",
]


@dataclass(frozen=True, slots=True)
class CofiberPresentation:
    """Presentation of the cofiber's homotopy ring up to a weight bound.

    Every enumerated composite lands in exactly one slot: ``killed_powers``
    (p-th powers of x and of the purely bosonic composites), exterior
    suspension classes, or free associative suspension classes.  Suspension
    degrees are one more than the degree of the class being suspended.
    """

    p: int
    weight_bound: int
    generators: tuple[Generator, ...]
    killed_powers: tuple[Monomial, ...]
    exterior_sigmas: tuple[tuple[Generator, int], ...]
    free_e1_sigmas: tuple[tuple[Generator, int], ...]


def build_cofiber(p: int, weight_bound: int, base: str = "x") -> CofiberPresentation:
    """Enumerate and route composites on a degree-0 class, up to the bound.

    Indices are capped alongside the weight: a composite is included when
    its weight is at most the bound and each doubled index is too (i.e. the
    sequence is (W+1)-allowable), which keeps every stratum finite.
    """
    if p == 2:
        raise ValueError("the p = 2 cofiber is handled by the filtration stages "
                         "and the series decomposition")
    gens = enumerate_generators(p, weight_bound + 1, 0, weight_bound, base=base,
                                check_parity=False)
    killed: list[Monomial] = []
    ext: list[tuple[Generator, int]] = []
    free1: list[tuple[Generator, int]] = []
    for g in gens:
        if not g.seq:
            killed.append(Monomial(((g, p),)))
            continue
        kind = classify(g.seq)
        if kind == PURELY_BOSONIC:
            killed.append(Monomial(((g, p),)))
        elif kind == MIXED_BOSONIC:
            ext.append((g, g.degree + 1))
        else:
            free1.append((g, g.degree + 1))
    return CofiberPresentation(
        p, weight_bound, tuple(gens), tuple(killed), tuple(ext), tuple(free1)
    )


def kill_ideal(pres: CofiberPresentation) -> MonomialIdeal:
    """The monomial ideal generated by the killed p-th powers."""
    return MonomialIdeal(pres.p, pres.killed_powers)


@dataclass(frozen=True, slots=True)
class NilpotenceReport:
    nilpotent: bool
    exponent: int | None
    witness: str
    search_found: bool
    search_bound: int
    structural: str


def check_nilpotent_in_cofiber(
    g: Generator, pres: CofiberPresentation, m_max: int
) -> NilpotenceReport:
    """Nilpotence of a generator in the cofiber model, certified two ways.

    The bounded search tests g^m against the kill ideal for m <= m_max; the
    structural certificate observes that the ideal is generated by p-th
    powers of single variables, so the search can only ever succeed at
    m = p with g one of those variables.  Odd-parity generators square to
    zero before the ideal is consulted.
    """
    p = pres.p
    if g.is_odd:
        return NilpotenceReport(
            True, 2, f"{g.label()}^2 = 0 (odd degree)", False, m_max,
            "exterior square",
        )
    ideal = kill_ideal(pres)
    found = None
    for m in range(1, m_max + 1):
        if ideal.member(Monomial(((g, m),))):
            found = m
            break
    killed_vars = {mono.factors[0][0] for mono in pres.killed_powers}
    structurally_killed = g in killed_vars
    if found is not None:
        witness = f"{g.label()}^{found} lies in the kill ideal"
        structural = "generator is a killed variable" if structurally_killed \
            else "search hit without structural certificate"
        return NilpotenceReport(True, found, witness, True, m_max, structural)
    if structurally_killed:
        # only reachable when m_max < p
        return NilpotenceReport(
            True, p, f"{g.label()}^{p} generates part of the kill ideal",
            False, m_max, "generator is a killed variable",
        )
    return NilpotenceReport(
        False, None,
        f"no power up to {m_max} lies in the kill ideal",
        False, m_max,
        "not a killed variable: no power is divisible by any ideal generator",
    )


def e1_filtration_stage(s: int, t: int = 0, base: str = "v") -> list[Generator]:
    """Classes killed by filtration stage s of the associative cofiber, p = 2.

    Stage 2**(i+1) - 1 first kills the i-th iterate, so the list is
    [v, Q_1(v), ..., Q_1^i(v)] for the largest i with 2**(i+1) - 1 <= s;
    stage 0 kills nothing.
    """
    if s < 0:
        raise ValueError("filtration stage must be non-negative")
    out: list[Generator] = []
    i = 0
    while 2 ** (i + 1) - 1 <= s:
        out.append(Generator(2, base, t, tuple(DLOp(0, 1) for _ in range(i))))
        i += 1
    return out


def check_qnilpotent_identity(seq: DLSequence, n: int, t: int = 0,
                              base: str = "v") -> bool:
    """Index-scaled composites on 2**n-th powers versus outer 2**n-th powers.

    Expands the subscript-doubled (n times) composite on v^(2^n) and compares
    it with the 2^n-th power of the composite on v, both through the Cartan
    engine; p = 2.
    """
    if not is_basis_shape(seq):
        raise ValueError("composite must have basis shape Q_a^{i_a}..Q_b^{i_b}")
    v = Polynomial.from_generator(Generator(2, base, t))
    scaled = scale_seq(seq, 2 ** n)
    lhs = apply_seq(2, scaled, poly_pow(v, 2 ** n)).value
    rhs = poly_pow(apply_seq(2, seq, v).value, 2 ** n)
    return lhs == rhs


def check_p_power_rule(p: int, num: int, eps: int, base: str = "v") -> bool:
    """One symbol on a p-th power versus the collapse rule, odd primes.

    The expected value is 0 when the symbol carries a Bockstein or its index
    is not divisible by p, and the p-th power of the index-divided symbol
    otherwise; both sides go through the Cartan engine on an even degree-0
    class.
    """
    if p == 2:
        raise ValueError("the collapse rule is stated at odd primes")
    if num < 1:
        raise ValueError("index must be at least 1/2")
    v = Polynomial.from_generator(Generator(p, base, 0))
    lhs = apply_op(p, DLOp(eps, num), poly_pow(v, p)).value
    if eps or num % (2 * p) != 0:
        expected = Polynomial.zero(p)
    else:
        expected = poly_pow(apply_op(p, DLOp(0, num // p), v).value, p)
    return lhs == expected


@dataclass(frozen=True, slots=True)
class MixedTermReport:
    coefficient: int
    target: Monomial | None
    adem_free: bool
    candidates: int


def smallest_mixed_shape(p: int, n: int) -> DLSequence:
    """Smallest all-Bockstein composite of length 2n fitting the term search.

    Indices must alternate integer/half-integer from the inside out (degree
    parity flips at every symbol on a degree-0 product), weakly decrease
    outward, and be large enough that every symbol can hand a positive,
    parity-consistent index to each of the n variables.  The minimum is the
    arithmetic staircase with doubled indices 4n - 1 - m at position m.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    return tuple(DLOp(1, 4 * n - 1 - m) for m in range(2 * n, 0, -1))


def mixed_term_coefficient(
    p: int, n: int, seq: DLSequence | None = None
) -> MixedTermReport:
    """Search a Cartan expansion for the split-Bockstein product term.

    Expands the composite (all symbols Bocksteins, length 2n) on the product
    x_1 .. x_n and looks for monomials that are products of one length-2n
    composite on each variable, with variable j carrying the Bocksteins of
    the two symbols at positions 2j-1 and 2j from the inside.  Reports the
    first such term's coefficient; ``adem_free`` qualifies the whole
    expansion, since non-basis composites could in principle rewrite onto
    the target.
    """
    if p == 2:
        raise ValueError("the term search is stated at odd primes")
    if seq is None:
        seq = smallest_mixed_shape(p, n)
    if len(seq) != 2 * n or any(op.eps != 1 for op in seq):
        raise ValueError("composite must consist of 2n Bockstein symbols")
    if not is_allowable(p, seq, 0, None):
        raise ValueError("composite must be allowable on the degree-0 product")

    variables = [Generator(p, f"x{j}", 0) for j in range(1, n + 1)]
    product = Polynomial.from_monomial(
        p, Monomial.from_pairs((g, 1) for g in variables)
    )
    expansion = apply_seq(p, seq, product)

    # positions counted from the innermost symbol; variable j owns 2j-1, 2j
    want = {g.base: {2 * j - 1, 2 * j} for j, g in enumerate(variables, start=1)}
    matches: list[tuple[Monomial, int]] = []
    for mono, coeff in expansion.value.sorted_terms():
        if len(mono.factors) != n:
            continue
        ok = True
        seen = set()
        for g, e in mono.factors:
            if e != 1 or len(g.seq) != 2 * n or g.base not in want:
                ok = False
                break
            positions = {
                len(g.seq) - idx for idx, op in enumerate(g.seq) if op.eps
            }
            if positions != want[g.base]:
                ok = False
                break
            seen.add(g.base)
        if ok and len(seen) == n:
            matches.append((mono, coeff))
    if matches:
        target, coeff = matches[0]
    else:
        target, coeff = None, 0
    return MixedTermReport(coeff, target, expansion.adem_free, len(matches))

"""Integer bookkeeping: moduli parameter counts, quotient Hodge numbers
via blow-up plus the Lefschetz fixed point formula, and small genus and
intersection-count helpers.

Everything here is exact integer arithmetic on a handful of inputs; the
value of the module is that each intermediate is exposed so the chain of
reasoning can be audited line by line.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .ambient import Ambient, LineBundle
from .cohomology import cohomology_dims
from .errors import DegreeError


@dataclass(frozen=True)
class ModuliCount:
    """Parameter count for a family cut out by a hypersurface section
    plus a restricted section: sections of L[d] modulo the product of
    general linear groups (minus its trivially-acting subgroup), plus the
    kernel classes modulo scale."""

    h0_hypersurface: int
    group_dim: int
    trivial_dim: int
    params_hypersurface: int
    h0_section: int
    params_section: int

    @property
    def total(self) -> int:
        return self.params_hypersurface + self.params_section

    def breakdown(self) -> tuple[int, int, int, int, int, int]:
        return (self.h0_hypersurface, self.group_dim, self.trivial_dim,
                self.params_hypersurface, self.h0_section, self.params_section)


def moduli_parameter_count(ambient: Ambient, L: LineBundle, d: int,
                           M: LineBundle | None = None, e: int | None = None,
                           h0_tau: int = 0) -> ModuliCount:
    """Count the parameters of the family.

    The symmetry group is the product of GL(n_i + 1) over all factors
    (the distinguished P^1 contributes GL(2)).  Its subgroup acting
    trivially on sections of L[d] is the one-dimensional scalar subgroup
    cut out by one character relation whenever the multidegree is
    nonzero; for the trivial bundle the whole scalar torus acts
    trivially.  M and e are accepted for report context only.
    """
    del M, e
    h0_F = cohomology_dims(L.twist(d))[0]
    group_dim = sum((n + 1) ** 2 for n in ambient.factor_dims)
    degrees = L.twist(d).degrees
    if any(degrees):
        trivial_dim = 1
    else:
        trivial_dim = ambient.num_factors
    params_F = h0_F - (group_dim - trivial_dim)
    return ModuliCount(h0_F, group_dim, trivial_dim, params_F, h0_tau, h0_tau - 1)


@dataclass(frozen=True)
class QuotientHodgeReport:
    """Hodge numbers of the crepant resolution of the quotient of a
    Calabi-Yau threefold by an involution whose fixed locus is a disjoint
    union of smooth curves.

    Blowing up the fixed curves adds one exceptional divisor per curve to
    h^2 and twice each genus to h^3; the extended involution fixes
    exactly the exceptional divisors (P^1-bundles over the curves, Euler
    characteristic 2(2 - 2g) each), and the Lefschetz fixed point formula
    then pins the trace on H^3, hence the invariant subspace that
    descends to the quotient.
    """

    h2_input: int
    h3_input: int
    genera: tuple[int, ...]
    h2_blowup: int
    h3_blowup: int
    chi_fixed: int
    trace_h3: int
    h3_plus: int
    h3_minus: int
    h2_quotient: int
    h3_quotient: int
    h21_quotient: int
    assumptions: tuple[str, ...]
    notes: tuple[str, ...]


_HODGE_ASSUMPTIONS = (
    "involution acts trivially on even cohomology",
    "b1 = b5 = 0 (Calabi-Yau threefold)",
    "fixed locus is a disjoint union of smooth curves of the given genera",
)


def quotient_hodge(h2_x: int, h3_x: int, genera) -> QuotientHodgeReport:
    """Run the blow-up and fixed-point bookkeeping on (h^2, h^3, genera)."""
    genera = tuple(int(g) for g in genera)
    if h3_x < 2:
        raise DegreeError(f"h^3 = {h3_x} < 2 leaves no room for h^{{3,0}} = h^{{0,3}} = 1")
    c = len(genera)
    h2_blowup = h2_x + c
    h3_blowup = h3_x + sum(2 * g for g in genera)
    chi_fixed = sum(2 * (2 - 2 * g) for g in genera)
    trace_h3 = 2 + 2 * h2_blowup - chi_fixed
    if (h3_blowup + trace_h3) % 2:
        raise DegreeError(
            f"inconsistent input: h^3 of the blow-up ({h3_blowup}) and the "
            f"H^3 trace ({trace_h3}) have different parities"
        )
    h3_plus = (h3_blowup + trace_h3) // 2
    h3_minus = h3_blowup - h3_plus
    if (h3_plus - 2) % 2:
        raise DegreeError(
            f"inconsistent input: invariant h^3 = {h3_plus} cannot split as "
            f"2 + 2*h21"
        )
    notes = []
    if c == 0:
        notes.append(
            "empty fixed locus: inputs describe a free involution, outside "
            "the fixed-curve setting these formulas were made for"
        )
    return QuotientHodgeReport(
        h2_input=h2_x,
        h3_input=h3_x,
        genera=genera,
        h2_blowup=h2_blowup,
        h3_blowup=h3_blowup,
        chi_fixed=chi_fixed,
        trace_h3=trace_h3,
        h3_plus=h3_plus,
        h3_minus=h3_minus,
        h2_quotient=h2_blowup,
        h3_quotient=h3_plus,
        h21_quotient=(h3_plus - 2) // 2,
        assumptions=_HODGE_ASSUMPTIONS,
        notes=tuple(notes),
    )


def bidegree_genus(a: int, b: int) -> int:
    """Genus of a smooth curve of bidegree (a, b) on P^1 x P^1."""
    if a < 0 or b < 0:
        raise DegreeError("bidegree entries must be nonnegative")
    if a == 0 or b == 0:
        return 0
    return (a - 1) * (b - 1)


def bezout_count(degrees) -> int:
    """Product of the degrees: the intersection count (with multiplicity)
    of that many hypersurfaces in a projective space of equal dimension."""
    return prod(int(k) for k in degrees)

"""The chart construction: from a kernel class to explicit equations.

A first-cohomology class q on the distinguished P^1 is a Laurent sum
q = sum_j q_j z0^-j z1^(-d-e+j) with base-polynomial coefficients.  The
product F*q has z0-exponents ranging over [-d-e+1, d-1] and splits into
three slices: the slice regular where z0 != 0 (tau0), the slice regular
where z1 != 0 (whose negative we call tau1), and a doubly-negative middle
slice.  The middle slice is exactly the image class of q under the
multiplication map, so q is in the kernel precisely when it vanishes; in
that case F*q = tau0 - tau1 and clearing chart denominators yields three
honest sections

    G = z0^(d+e-1) * tau0,   H = -z1^(d+e-1) * tau1,
    A = (z0*z1)^(d+e-1) * q,

satisfying A*F = z1^(d+e-1)*G + z0^(d+e-1)*H exactly, so the codimension
two subvariety (F, tau) is cut out by F = G = H = 0, and by (F, G) alone
where z0 != 0, by (F, H) alone where z1 != 0.

Smoothness of the emitted systems is probed (not proved) by exhaustive
enumeration of rational points over a small prime field together with a
Jacobian rank check on the affine multicone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .ambient import Ambient, LineBundle
from .cohomology import cohomology_dims, h0_basis, monomial_exponents
from .errors import (
    BudgetExceededError,
    DegreeError,
    KernelMembershipError,
    VanishingHypothesisError,
)
from .multmap import MultMap
from .poly import MultiPoly, check_prime

PRNG_ID = "python-random-mt19937"
RANDOM_COEFF_RANGE = (-9, 9)


@dataclass(frozen=True, eq=False)
class CechClass:
    """A first-cohomology class q = sum_j q_j z0^-j z1^(-d-e+j) on the
    distinguished P^1 factor, given by its d+e-1 base-polynomial
    coefficients q_1, ..., q_(d+e-1) (each of P^1-degree zero)."""

    coefficients: tuple[MultiPoly, ...]
    d: int
    e: int
    factor: int

    def __post_init__(self):
        if self.d < 1 or self.e < 1:
            raise DegreeError(f"need d, e >= 1, got d={self.d}, e={self.e}")
        if len(self.coefficients) != self.d + self.e - 1:
            raise DegreeError(
                f"need {self.d + self.e - 1} coefficients, got {len(self.coefficients)}"
            )
        base = self.coefficients[0]
        for q in self.coefficients:
            if q.ambient != base.ambient or q.degrees != base.degrees:
                raise DegreeError("coefficients must share ambient and degrees")
            if q.degrees[self.factor] != 0:
                raise DegreeError("coefficients must not involve the P^1 factor")

    @property
    def ambient(self) -> Ambient:
        return self.coefficients[0].ambient

    def as_laurent(self) -> MultiPoly:
        """The class as a single Laurent polynomial of P^1-degree -d-e."""
        ambient = self.ambient
        lo = ambient.var_offsets()[self.factor]
        degrees = list(self.coefficients[0].degrees)
        degrees[self.factor] = -self.d - self.e
        total = MultiPoly.zero(ambient, degrees, laurent={self.factor})
        for j, q_j in enumerate(self.coefficients, start=1):
            exps = [0] * ambient.num_vars
            exps[lo] = -j
            exps[lo + 1] = -self.d - self.e + j
            mono = MultiPoly.monomial(ambient, exps, laurent={self.factor})
            total = total + q_j * mono
        return total

    def scale(self, c) -> "CechClass":
        return CechClass(tuple(q.scale(c) for q in self.coefficients),
                         self.d, self.e, self.factor)

    @classmethod
    def from_kernel_vector(cls, mm: MultMap, vector) -> "CechClass":
        """Reassemble a kernel coordinate vector (in the source basis
        order: base monomial outer, Laurent index inner) into a class."""
        ambient = mm.multiplier.ambient
        t = mm.factor
        d = mm.multiplier.degrees[t]
        e = -mm.target.bundle.degrees[t]
        rest = LineBundle(ambient, tuple(
            0 if i == t else k for i, k in enumerate(mm.source.bundle.degrees)
        ))
        base = h0_basis(rest)
        width = d + e - 1
        if len(vector) != len(base) * width:
            raise DegreeError(
                f"vector length {len(vector)} != {len(base)} x {width}"
            )
        coeffs = []
        for j in range(width):
            q_j = MultiPoly.zero(ambient, rest.degrees)
            for m, mono in enumerate(base):
                c = vector[m * width + j]
                if c:
                    q_j = q_j + mono.scale(Fraction(c))
            coeffs.append(q_j)
        return cls(tuple(coeffs), d, e, t)


@dataclass(frozen=True, eq=False)
class SplitResult:
    """The three-slice decomposition F*q = tau0 - tau1 + middle."""

    tau0: MultiPoly
    tau1: MultiPoly
    middle: MultiPoly
    product: MultiPoly

    def in_kernel(self) -> bool:
        return self.middle.is_zero()


def split_tau(F: MultiPoly, q: CechClass) -> SplitResult:
    """Slice F*q by z0-exponent: [-d-e+1, -e] regular on the z0 != 0
    chart, [0, d-1] regular on the z1 != 0 chart (negated to tau1), and
    the doubly-negative remainder [-e+1, -1] in the middle."""
    d, e = q.d, q.e
    if F.degrees[q.factor] != d:
        raise DegreeError(
            f"F has degree {F.degrees[q.factor]} on the P^1 factor, expected {d}"
        )
    if F.ambient != q.ambient:
        raise DegreeError("F and q live on different ambients")
    product = F * q.as_laurent()
    z0 = F.ambient.var_offsets()[q.factor]
    tau0 = product.part_by_exponent(z0, -d - e + 1, -e)
    tau1 = -product.part_by_exponent(z0, 0, d - 1)
    middle = product.part_by_exponent(z0, -e + 1, -1)
    assert product == tau0 - tau1 + middle
    return SplitResult(tau0, tau1, middle, product)


@dataclass(frozen=True, eq=False)
class GciSystem:
    """The three defining sections of a chart-split codimension two
    subvariety, together with the class that produced them."""

    ambient: Ambient
    F: MultiPoly
    G: MultiPoly
    H: MultiPoly
    A: MultiPoly
    d: int
    e: int
    factor: int
    provenance: CechClass | None = None

    def equations(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return (self.F, self.G, self.H)


def _chart_monomial(ambient, factor, e0, e1, laurent=frozenset()):
    lo = ambient.var_offsets()[factor]
    exps = [0] * ambient.num_vars
    exps[lo] = e0
    exps[lo + 1] = e1
    return MultiPoly.monomial(ambient, exps, laurent=laurent)


def check_vanishing_hypothesis(ambient: Ambient, base_degrees) -> None:
    """The construction needs H^1 of the degree-difference bundle on the
    base to vanish; base_degrees is its multidegree (zero on the P^1).
    Since H^1 of O on P^1 vanishes, the Kunneth H^1 on the full product
    equals H^1 on the base, so we can test it there directly."""
    h1 = cohomology_dims(LineBundle(ambient, tuple(base_degrees)))[1]
    if h1 != 0:
        raise VanishingHypothesisError(
            f"H^1 of the base bundle O{tuple(base_degrees)} has dimension "
            f"{h1}; the chart splitting requires it to vanish"
        )


def emit_equations(F: MultiPoly, q: CechClass) -> GciSystem:
    """Produce the three sections G, H, A from a kernel class.

    Raises KernelMembershipError when the middle slice of F*q is nonzero
    and VanishingHypothesisError when H^1 of the base difference bundle
    does not vanish.  The emitted system satisfies the exact identity
    A*F = z1^(d+e-1)*G + z0^(d+e-1)*H, verified at construction.
    """
    check_vanishing_hypothesis(F.ambient, q.coefficients[0].degrees)
    split = split_tau(F, q)
    if not split.in_kernel():
        raise KernelMembershipError(
            "q is not in the kernel of the multiplication map: "
            f"middle slice {split.middle} is nonzero"
        )
    d, e = q.d, q.e
    ambient = F.ambient
    t = q.factor
    w = d + e - 1
    G = (_chart_monomial(ambient, t, w, 0) * split.tau0).drop_laurent()
    H = (-(_chart_monomial(ambient, t, 0, w) * split.tau1)).drop_laurent()
    A = (_chart_monomial(ambient, t, w, w) * q.as_laurent()).drop_laurent()
    system = GciSystem(ambient, F, G, H, A, d, e, t, q)
    if not verify_syzygy(system):
        raise DegreeError("internal error: emitted system fails its syzygy")
    return system


def verify_syzygy(system: GciSystem) -> bool:
    """Exact check of A*F - z1^(d+e-1)*G - z0^(d+e-1)*H = 0."""
    w = system.d + system.e - 1
    z0w = _chart_monomial(system.ambient, system.factor, w, 0)
    z1w = _chart_monomial(system.ambient, system.factor, 0, w)
    residual = system.A * system.F - z1w * system.G - z0w * system.H
    return residual.is_zero()


@dataclass(frozen=True, eq=False)
class FiberRestriction:
    """F, G, H restricted to one fiber of the projection to the
    distinguished P^1; generating_pairs names the chart pairs that cut
    out the fiber there."""

    point: tuple[Fraction, Fraction]
    F: MultiPoly
    G: MultiPoly
    H: MultiPoly
    generating_pairs: tuple[str, ...]


def restrict_fiber(system: GciSystem, point) -> FiberRestriction:
    p0, p1 = Fraction(point[0]), Fraction(point[1])
    if p0 == 0 and p1 == 0:
        raise DegreeError("(0, 0) is not a point of P^1")
    t = system.factor
    pairs = []
    if p0 != 0:
        pairs.append("F,G")
    if p1 != 0:
        pairs.append("F,H")
    return FiberRestriction(
        (p0, p1),
        system.F.substitute_factor(t, (p0, p1)),
        system.G.substitute_factor(t, (p0, p1)),
        system.H.substitute_factor(t, (p0, p1)),
        tuple(pairs),
    )


def base_locus_membership(system: GciSystem) -> bool:
    """True when G and H are exactly the bilinear combinations of the
    coefficients of F and of q that the chart splitting produces, so that
    every z-coefficient of G and H lies in the span of the coefficients
    of F.  In that case any base point x with all F-coefficients zero
    puts the whole line {x} x P^1 inside (G) and (H)."""
    if system.provenance is None:
        raise DegreeError("system has no provenance class to check against")
    split = split_tau(system.F, system.provenance)
    if not split.in_kernel():
        return False
    w = system.d + system.e - 1
    ambient = system.ambient
    t = system.factor
    G = (_chart_monomial(ambient, t, w, 0) * split.tau0).drop_laurent()
    H = (-(_chart_monomial(ambient, t, 0, w) * split.tau1)).drop_laurent()
    return G == system.G and H == system.H


# -- seeded random instances -------------------------------------------


def random_section(ambient: Ambient, degrees, rng: random.Random) -> MultiPoly:
    """A polynomial of the given multidegree with integer coefficients
    drawn uniformly from [-9, 9], monomials visited in canonical order."""
    lo, hi = RANDOM_COEFF_RANGE
    per_factor = [monomial_exponents(n + 1, k)
                  for (n, _), k in zip(ambient.factors, degrees)]
    combos = [()]
    for chunk in per_factor:
        combos = [c + e for c in combos for e in chunk]
    terms = {}
    for exps in combos:
        c = rng.randint(lo, hi)
        if c:
            terms[exps] = Fraction(c)
    return MultiPoly(ambient, tuple(degrees), terms)


# -- finite-field smoothness scans ---------------------------------------


@dataclass(frozen=True)
class ScanReport:
    """Outcome of an exhaustive rational-point scan over F_p: how many
    points the ambient has, how many are common zeros of the equations,
    and which zeros have Jacobian rank below the expected codimension.
    Evidence of smoothness, never proof."""

    prime: int
    expected_codim: int
    total_points: int
    zero_count: int
    flagged: tuple[tuple[tuple[int, ...], ...], ...]


def projective_points(n: int, p: int):
    """Normalized representatives of P^n(F_p): first nonzero coordinate
    equal to one, enumerated deterministically."""
    for lead in range(n + 1):
        tail = n - lead
        if tail == 0:
            yield (0,) * lead + (1,)
            continue
        counters = [0] * tail
        while True:
            yield (0,) * lead + (1,) + tuple(counters)
            i = tail - 1
            while i >= 0:
                counters[i] += 1
                if counters[i] < p:
                    break
                counters[i] = 0
                i -= 1
            if i < 0:
                break


def ambient_point_count(ambient: Ambient, p: int) -> int:
    total = 1
    for n in ambient.factor_dims:
        total *= (p ** (n + 1) - 1) // (p - 1)
    return total


def _subst_terms(terms, span, values, p, pow_tables):
    """Substitute one factor's point into a raw {exponents: coeff mod p}
    term map, returning the reduced map on the remaining variables."""
    lo, hi = span
    blank = (0,) * (hi - lo)
    out = {}
    cache = {}
    for exps, coeff in terms.items():
        chunk = exps[lo:hi]
        v = cache.get(chunk)
        if v is None:
            v = 1
            for value, e in zip(values, chunk):
                if e == 0:
                    continue
                if value == 0:
                    v = 0
                    break
                v = v * pow_tables[value][e] % p
            cache[chunk] = v
        if v == 0:
            continue
        key = exps[:lo] + blank + exps[hi:]
        c = (out.get(key, 0) + coeff * v) % p
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return out


def _rank_mod_p(rows, p):
    m = [row[:] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = None
        for i in range(rank, len(m)):
            if m[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def singular_scan_mod_p(equations, ambient: Ambient, prime: int,
                        expected_codim: int, budget: int = 10_000_000) -> ScanReport:
    """Enumerate every rational point of the ambient over F_p, find the
    common zeros of the equations, and flag each zero where the Jacobian
    (all partial derivatives, evaluated at the normalized representative)
    has rank below expected_codim.

    A flagged point is singular or degenerate; an empty flag list is
    desk-scale evidence (not proof) that the scheme is smooth of the
    expected codimension at its F_p-points.
    """
    check_prime(prime)
    total = ambient_point_count(ambient, prime)
    if total > budget:
        raise BudgetExceededError(
            f"{total} ambient points exceed the budget of {budget}"
        )
    reduced = []
    for eq in equations:
        if eq.ambient != ambient:
            raise DegreeError("equation lives on the wrong ambient")
        mod = eq if eq.prime == prime else eq.reduce_mod_p(prime)
        if any(e < 0 for exps in mod.terms for e in exps):
            raise DegreeError("scan equations must have no negative exponents")
        reduced.append(mod)
    names = ambient.var_names
    jacobian = [
        [dict(eq.partial_derivative(name).terms) for name in names]
        for eq in reduced
    ]
    offsets = ambient.var_offsets()
    spans = [(offsets[f], offsets[f + 1]) for f in range(ambient.num_factors)]
    max_exp = max(
        (e for eq in reduced for exps in eq.terms for e in exps), default=0
    )
    pow_tables = {
        v: [pow(v, k, prime) for k in range(max_exp + 1)]
        for v in range(prime)
    }
    factor_points = [
        list(projective_points(n, prime)) for n in ambient.factor_dims
    ]
    zeros = []
    last = ambient.num_factors - 1

    def eval_at(terms, span, values):
        lo, hi = span
        total = 0
        for exps, coeff in terms.items():
            prod = coeff
            for value, e in zip(values, exps[lo:hi]):
                if e == 0:
                    continue
                if value == 0:
                    prod = 0
                    break
                prod = prod * pow_tables[value][e] % prime
            total = (total + prod) % prime
        return total

    def descend(level, partials, prefix):
        span = spans[level]
        if level == last:
            for pt in factor_points[level]:
                if all(eval_at(t, span, pt) == 0 for t in partials):
                    zeros.append(prefix + (pt,))
            return
        for pt in factor_points[level]:
            descend(
                level + 1,
                [_subst_terms(t, span, pt, prime, pow_tables) for t in partials],
                prefix + (pt,),
            )

    descend(0, [dict(eq.terms) for eq in reduced], ())

    flagged = []
    for point in zeros:
        flat = [v for chunk in point for v in chunk]
        rows = []
        for eq_row in jacobian:
            row = []
            for terms in eq_row:
                value = 0
                for exps, coeff in terms.items():
                    prod = coeff
                    for v, e in zip(flat, exps):
                        if e == 0:
                            continue
                        if v == 0:
                            prod = 0
                            break
                        prod = prod * pow_tables[v][e] % prime
                    value = (value + prod) % prime
                row.append(value)
            rows.append(row)
        if _rank_mod_p(rows, prime) < expected_codim:
            flagged.append(point)
    return ScanReport(prime, expected_codim, total, len(zeros), tuple(flagged))

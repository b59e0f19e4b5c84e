"""Cohomology of line bundles on products of projective spaces.

On a single factor P^n the cohomology of O(k) sits in degree 0 (k >= 0,
dimension C(n+k, n)) or degree n (k <= -n-1, dimension C(-k-1, n)) and
nowhere else.  On a product, dimensions are assembled by convolving the
per-factor vectors.  For a bundle whose only negative degree sits on a
P^1 factor, the first cohomology carries an explicit monomial basis built
from the two-chart covering of that P^1: Laurent monomials u0^-j u1^(k+j)
with both exponents negative, tensored with ordinary monomials on the
remaining factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .ambient import LineBundle
from .errors import BasisUnavailableError, DegreeError
from .poly import MultiPoly


def bott_dims(n: int, k: int) -> tuple[int, ...]:
    """The vector (h^0, ..., h^n) of O(k) on P^n."""
    if n < 1:
        raise DegreeError(f"factor dimension {n} < 1")
    dims = [0] * (n + 1)
    if k >= 0:
        dims[0] = comb(n + k, n)
    if k <= -n - 1:
        dims[n] = comb(-k - 1, n)
    return tuple(dims)


def cohomology_dims(bundle: LineBundle) -> tuple[int, ...]:
    """Dimension of H^r for r = 0..dim(ambient), by convolving the
    per-factor vectors."""
    acc = [1]
    for (n, _), k in zip(bundle.ambient.factors, bundle.degrees):
        factor = bott_dims(n, k)
        out = [0] * (len(acc) + n)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j, b in enumerate(factor):
                if b:
                    out[i + j] += a * b
        acc = out
    return tuple(acc)


def monomial_exponents(nvars: int, total: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in descending
    lexicographic order."""
    if total < 0:
        return []
    if nvars == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in monomial_exponents(nvars - 1, total - first):
            out.append((first,) + rest)
    return out


def _h0_exponents(bundle: LineBundle) -> list[tuple[int, ...]]:
    per_factor = [
        monomial_exponents(n + 1, k)
        for (n, _), k in zip(bundle.ambient.factors, bundle.degrees)
    ]
    combos = [()]
    for chunk in per_factor:
        combos = [c + e for c in combos for e in chunk]
    return combos


def h0_basis(bundle: LineBundle) -> tuple[MultiPoly, ...]:
    """All monomials of the multidegree, descending lex, as polynomials."""
    if any(k < 0 for k in bundle.degrees):
        raise DegreeError(f"h0 basis needs all degrees >= 0, got {bundle.degrees}")
    return tuple(
        MultiPoly.monomial(bundle.ambient, exps) for exps in _h0_exponents(bundle)
    )


@dataclass(frozen=True, eq=False)
class CohGroup:
    """A cohomology group of a line bundle, with an optional explicit
    ordered monomial basis.

    concentration records which Kunneth summand carries the dimension
    (one cohomological degree per factor); it is None when the dimension
    vanishes or several summands contribute.
    """

    bundle: LineBundle
    degree: int
    dimension: int
    concentration: tuple[int, ...] | None = None
    basis: tuple[MultiPoly, ...] | None = None

    def __post_init__(self):
        if self.basis is not None and len(self.basis) != self.dimension:
            raise DegreeError(
                f"basis length {len(self.basis)} != dimension {self.dimension}"
            )


def h1_cech_basis(bundle: LineBundle, t: int) -> CohGroup:
    """H^1 concentrated on the P^1 factor t, with its two-chart Laurent
    monomial basis.

    Requires degree <= -2 on factor t, dimension 1 there, and all other
    degrees >= 0 (otherwise the group is spread over several Kunneth
    summands, or empty, and has no monomial basis of this shape).
    Ordering: base monomials outer (descending lex), Laurent index j
    inner ascending, i.e. u0^-1 first.
    """
    ambient = bundle.ambient
    if not 0 <= t < ambient.num_factors:
        raise BasisUnavailableError(f"factor index {t} out of range")
    if ambient.factor_dims[t] != 1:
        raise BasisUnavailableError(f"factor {t} is not a P^1")
    k_t = bundle.degrees[t]
    if k_t > -2:
        raise BasisUnavailableError(
            f"degree {k_t} on factor {t} has no first cohomology basis (need <= -2)"
        )
    for i, k in enumerate(bundle.degrees):
        if i != t and k < 0:
            raise BasisUnavailableError(
                f"degree {k} on factor {i} spreads H^1 over several summands"
            )
    rest = LineBundle(ambient, tuple(
        0 if i == t else k for i, k in enumerate(bundle.degrees)
    ))
    lo, hi = ambient.var_offsets()[t], ambient.var_offsets()[t + 1]
    basis = []
    for m in _h0_exponents(rest):
        for j in range(1, -k_t):
            exps = list(m)
            exps[lo] = -j
            exps[lo + 1] = k_t + j
            basis.append(MultiPoly.monomial(ambient, exps, laurent={t}))
    concentration = tuple(1 if i == t else 0 for i in range(ambient.num_factors))
    group = CohGroup(bundle, 1, len(basis), concentration, tuple(basis))
    assert group.dimension == cohomology_dims(bundle)[1]
    return group


def h1_group(bundle: LineBundle, t: int) -> CohGroup:
    """Like h1_cech_basis, but a vanishing H^1 yields a dimension-zero
    group with an empty basis instead of an error.  Used to build
    multiplication maps whose target is trivial (the e = 1 situation)."""
    dims = cohomology_dims(bundle)
    if dims[1] == 0:
        return CohGroup(bundle, 1, 0, None, ())
    return h1_cech_basis(bundle, t)

"""Products of projective spaces and line bundles on them.

An ambient space is an ordered product of projective factors.  One factor
of dimension one may be marked as *distinguished*: it is the P^1 whose
coordinates split into the two standard affine charts used by the chart
construction, and the factor whose twist the bracket notation L[d] refers
to.  Line bundles are multidegree vectors, one integer per factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbientMismatchError, DegreeError


def default_var_names(factor_index: int, dim: int) -> tuple[str, ...]:
    return tuple(f"x{factor_index}_{j}" for j in range(dim + 1))


@dataclass(frozen=True)
class Ambient:
    """An ordered product of projective spaces with named coordinates.

    factors: tuple of (dimension, variable-name tuple of length dim+1).
    distinguished: index of the distinguished P^1 factor, or None.
    Immutable; safe to share between threads.
    """

    factors: tuple[tuple[int, tuple[str, ...]], ...]
    distinguished: int | None = None

    def __post_init__(self):
        if not self.factors:
            raise DegreeError("ambient needs at least one factor")
        seen = set()
        for i, (dim, names) in enumerate(self.factors):
            if dim < 1:
                raise DegreeError(f"factor {i} has dimension {dim} < 1")
            if len(names) != dim + 1:
                raise DegreeError(
                    f"factor {i}: expected {dim + 1} variable names, got {len(names)}"
                )
            for name in names:
                if name in seen:
                    raise DegreeError(f"duplicate variable name {name!r}")
                seen.add(name)
        if self.distinguished is not None:
            if not 0 <= self.distinguished < len(self.factors):
                raise DegreeError(f"distinguished index {self.distinguished} out of range")
            if self.factors[self.distinguished][0] != 1:
                raise DegreeError("distinguished factor must be a P^1")

    @classmethod
    def product(cls, dims, names=None, distinguished=None) -> "Ambient":
        """Build an ambient from factor dimensions, with default names
        x{i}_{j} wherever an explicit name list is not given."""
        factors = []
        for i, dim in enumerate(dims):
            given = None if names is None else names[i]
            factors.append((dim, tuple(given) if given else default_var_names(i, dim)))
        return cls(tuple(factors), distinguished)

    @property
    def num_factors(self) -> int:
        return len(self.factors)

    @property
    def factor_dims(self) -> tuple[int, ...]:
        return tuple(dim for dim, _ in self.factors)

    @property
    def dim(self) -> int:
        return sum(self.factor_dims)

    @property
    def var_names(self) -> tuple[str, ...]:
        return tuple(name for _, names in self.factors for name in names)

    @property
    def num_vars(self) -> int:
        return sum(dim + 1 for dim, _ in self.factors)

    def var_offsets(self) -> tuple[int, ...]:
        """Start offset of each factor's variables in the flat variable
        order, plus a final sentinel equal to num_vars."""
        offsets = [0]
        for dim, _ in self.factors:
            offsets.append(offsets[-1] + dim + 1)
        return tuple(offsets)

    def var_index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise DegreeError(f"unknown variable {name!r}") from None

    def factor_of_var(self, index: int) -> int:
        offsets = self.var_offsets()
        for f in range(self.num_factors):
            if offsets[f] <= index < offsets[f + 1]:
                return f
        raise DegreeError(f"variable index {index} out of range")

    def q_factor_indices(self) -> tuple[int, ...]:
        """Indices of the non-distinguished ("base") factors."""
        return tuple(i for i in range(self.num_factors) if i != self.distinguished)

    def describe(self) -> str:
        parts = [f"P^{dim}" for dim, _ in self.factors]
        if self.distinguished is not None:
            parts[self.distinguished] += "*"
        return " x ".join(parts)


@dataclass(frozen=True)
class LineBundle:
    """A multidegree vector over an Ambient."""

    ambient: Ambient
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if len(self.degrees) != self.ambient.num_factors:
            raise DegreeError(
                f"degree vector has length {len(self.degrees)}, "
                f"ambient has {self.ambient.num_factors} factors"
            )

    def tensor(self, other: "LineBundle") -> "LineBundle":
        if other.ambient != self.ambient:
            raise AmbientMismatchError("tensor of bundles on different ambients")
        return LineBundle(self.ambient, tuple(a + b for a, b in zip(self.degrees, other.degrees)))

    def dual(self) -> "LineBundle":
        return LineBundle(self.ambient, tuple(-a for a in self.degrees))

    def twist(self, d: int) -> "LineBundle":
        """Add d to the degree on the distinguished P^1 factor."""
        t = self.ambient.distinguished
        if t is None:
            raise DegreeError("ambient has no distinguished P^1 factor to twist")
        degrees = list(self.degrees)
        degrees[t] += d
        return LineBundle(self.ambient, tuple(degrees))

    def describe(self) -> str:
        return "O(" + ",".join(str(a) for a in self.degrees) + ")"


def canonical_bundle(ambient: Ambient) -> LineBundle:
    """The canonical bundle of the ambient: degree -n_i - 1 on each factor."""
    return LineBundle(ambient, tuple(-dim - 1 for dim in ambient.factor_dims))


def cy_condition(L: LineBundle, d: int, M: LineBundle, e: int) -> bool:
    """True when a section of M[-e] restricted to a hypersurface of class
    L[d] is anticanonical, i.e. the resulting threefold has trivial
    canonical bundle: L + M must be the anticanonical degree n_i + 1 on
    every base factor, and d - e = 2 on the distinguished P^1.

    L and M are bundles on the base: their entries on the distinguished
    factor (if the ambient has one) are ignored.
    """
    if L.ambient != M.ambient:
        raise AmbientMismatchError("cy_condition needs both bundles on the same ambient")
    ambient = L.ambient
    for i in ambient.q_factor_indices():
        if L.degrees[i] + M.degrees[i] != ambient.factor_dims[i] + 1:
            return False
    return d - e == 2

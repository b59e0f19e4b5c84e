"""Exact-arithmetic construction of generalized complete intersections:
subvarieties of a product of projective spaces times P^1 cut out by a
hypersurface section together with a section that only exists after
restriction, made explicit through two-chart cohomology splitting."""

__version__ = "0.1.0"

from .ambient import Ambient, LineBundle, canonical_bundle, cy_condition
from .cohomology import (
    CohGroup,
    bott_dims,
    cohomology_dims,
    h0_basis,
    h1_cech_basis,
)
from .construction import (
    CechClass,
    FiberRestriction,
    GciSystem,
    ScanReport,
    SplitResult,
    base_locus_membership,
    emit_equations,
    random_section,
    restrict_fiber,
    singular_scan_mod_p,
    split_tau,
    verify_syzygy,
)
from .multmap import (
    KernelBasis,
    MultMap,
    assemble_mult_map,
    build_mult_map,
    cokernel_dim,
    kernel_basis,
    mult_map_kernel_dim,
)
from .poly import MultiPoly, parse
from .topology import (
    ModuliCount,
    QuotientHodgeReport,
    bezout_count,
    bidegree_genus,
    moduli_parameter_count,
    quotient_hodge,
)

__all__ = [
    "Ambient",
    "LineBundle",
    "canonical_bundle",
    "cy_condition",
    "CohGroup",
    "bott_dims",
    "cohomology_dims",
    "h0_basis",
    "h1_cech_basis",
    "CechClass",
    "FiberRestriction",
    "GciSystem",
    "ScanReport",
    "SplitResult",
    "base_locus_membership",
    "emit_equations",
    "random_section",
    "restrict_fiber",
    "singular_scan_mod_p",
    "split_tau",
    "verify_syzygy",
    "KernelBasis",
    "MultMap",
    "assemble_mult_map",
    "build_mult_map",
    "cokernel_dim",
    "kernel_basis",
    "mult_map_kernel_dim",
    "MultiPoly",
    "parse",
    "ModuliCount",
    "QuotientHodgeReport",
    "bezout_count",
    "bidegree_genus",
    "moduli_parameter_count",
    "quotient_hodge",
]

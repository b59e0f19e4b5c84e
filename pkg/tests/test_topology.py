import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gci.ambient import Ambient, LineBundle
from gci.errors import DegreeError
from gci.topology import (
    bezout_count,
    bidegree_genus,
    moduli_parameter_count,
    quotient_hodge,
)


def independent_quotient_bookkeeping(h2, h3, genera):
    """Spreadsheet-level reimplementation of the blow-up plus fixed-point
    arithmetic, kept deliberately separate from the library path."""
    c = len(genera)
    h2t = h2 + c
    h3t = h3
    for g in genera:
        h3t += 2 * g
    chi = 0
    for g in genera:
        chi += 2 * (2 - 2 * g)
    # chi = 1 + h2t - t3 + h2t + 1  (traces on H^0..H^6, odd rows negative)
    t3 = 1 + h2t + h2t + 1 - chi
    a = (h3t + t3) // 2
    return {
        "h2_blowup": h2t, "h3_blowup": h3t, "chi_fixed": chi,
        "trace_h3": t3, "h3_plus": a, "h21": (a - 2) // 2,
    }


def test_moduli_worked_case(cy_ambient):
    L = LineBundle(cy_ambient, (2, 0))
    M = LineBundle(cy_ambient, (3, 0))
    count = moduli_parameter_count(cy_ambient, L, 3, M, 1, h0_tau=15)
    assert count.breakdown() == (60, 29, 1, 32, 15, 14)
    assert count.total == 46


def test_moduli_unique_section():
    amb = Ambient.product([1, 1], distinguished=1)
    count = moduli_parameter_count(amb, LineBundle(amb, (1, 0)), 2, h0_tau=1)
    assert count.params_section == 0


def test_moduli_degenerate_bound():
    # h0(L[d]) can equal the effective group dimension: params drop to 0
    amb = Ambient.product([1, 1], distinguished=1)
    L = LineBundle(amb, (2, 0))
    count = moduli_parameter_count(amb, L, 3, h0_tau=1)
    # h0(O(2,3)) = 3*4 = 12; group 4 + 4 = 8; trivial 1
    assert count.h0_hypersurface == 12
    assert count.group_dim == 8
    assert count.params_hypersurface == 12 - 7
    hypothetical = moduli_parameter_count(amb, LineBundle(amb, (0, 0)), 0,
                                          h0_tau=1)
    # trivial bundle: whole scalar torus acts trivially
    assert hypothetical.trivial_dim == amb.num_factors
    assert hypothetical.params_hypersurface == 1 - (8 - 2)


def test_moduli_invariant_under_base_factor_permutation():
    dims = [2, 3, 1]
    degrees = [1, 2, 3]
    totals = set()
    for perm in itertools.permutations(range(3)):
        amb = Ambient.product([dims[i] for i in perm] + [1], distinguished=3)
        L = LineBundle(amb, tuple([degrees[i] for i in perm] + [0]))
        count = moduli_parameter_count(amb, L, 2, h0_tau=5)
        totals.add(count.total)
    assert len(totals) == 1


def test_quotient_worked_case():
    report = quotient_hodge(2, 94, [2, 8])
    assert report.h2_blowup == 4
    assert report.h3_blowup == 114
    assert report.chi_fixed == -32
    assert report.trace_h3 == 42
    assert report.h3_plus == 78
    assert report.h2_quotient == 4
    assert report.h21_quotient == 38
    expected = independent_quotient_bookkeeping(2, 94, [2, 8])
    assert report.trace_h3 == expected["trace_h3"]
    assert report.h21_quotient == expected["h21"]


def test_quotient_free_involution_row():
    report = quotient_hodge(2, 94, [])
    expected = independent_quotient_bookkeeping(2, 94, [])
    assert report.chi_fixed == 0
    assert report.trace_h3 == 6 == expected["trace_h3"]
    assert report.h3_plus == 50 == expected["h3_plus"]
    assert report.h21_quotient == 24 == expected["h21"]
    assert report.notes  # flags that the fixed locus is empty


def test_quotient_rational_curves_row():
    report = quotient_hodge(2, 94, [0, 0])
    expected = independent_quotient_bookkeeping(2, 94, [0, 0])
    assert report.h3_blowup == 94
    assert report.chi_fixed == 8
    assert report.trace_h3 == 2 == expected["trace_h3"]
    assert report.h3_plus == 48
    assert report.h21_quotient == 23 == expected["h21"]


def test_quotient_parity_rejection():
    with pytest.raises(DegreeError):
        quotient_hodge(2, 95, [2, 8])


def test_quotient_reports_assumptions():
    report = quotient_hodge(2, 94, [2, 8])
    assert any("even cohomology" in a for a in report.assumptions)


@given(st.integers(0, 20), st.integers(1, 60), st.lists(st.integers(0, 12), max_size=5))
def test_quotient_consistency_identity(h2, half_h3, genera):
    h3 = 2 * half_h3
    try:
        report = quotient_hodge(h2, h3, genera)
    except DegreeError:
        return
    assert report.trace_h3 == 2 + 2 * report.h2_blowup - report.chi_fixed
    assert report.h3_plus + report.h3_minus == report.h3_blowup
    assert report.h3_plus - report.h3_minus == report.trace_h3


@given(st.integers(0, 20), st.integers(1, 60), st.lists(st.integers(0, 12), max_size=5))
def test_quotient_two_computation_paths_agree(h2, half_h3, genera):
    h3 = 2 * half_h3
    try:
        report = quotient_hodge(h2, h3, genera)
    except DegreeError:
        return
    expected = independent_quotient_bookkeeping(h2, h3, genera)
    assert report.h2_blowup == expected["h2_blowup"]
    assert report.h3_blowup == expected["h3_blowup"]
    assert report.chi_fixed == expected["chi_fixed"]
    assert report.trace_h3 == expected["trace_h3"]
    assert report.h21_quotient == expected["h21"]


def test_genus_worked_values():
    assert bidegree_genus(2, 3) == 2
    assert bidegree_genus(2, 2) == 1
    assert bidegree_genus(1, 7) == 0
    assert bidegree_genus(0, 5) == 0


def test_genus_rejects_negative():
    with pytest.raises(DegreeError):
        bidegree_genus(-1, 2)


def test_bezout_values():
    assert bezout_count([2, 2, 2, 2]) == 16
    assert bezout_count([1, 1, 1, 1]) == 1
    assert bezout_count([2, 3]) == 6

import random
from fractions import Fraction
from math import gcd

import pytest

from gci.ambient import Ambient, LineBundle
from gci.cohomology import h0_basis, h1_cech_basis, h1_group
from gci.construction import random_section
from gci.errors import DegreeError
from gci.multmap import (
    assemble_mult_map,
    build_mult_map,
    cokernel_dim,
    kernel_basis,
    kernel_vectors,
    matrix_rank,
    mult_map_kernel_dim,
)
from gci.poly import MultiPoly, parse


def brute_force_matrix(mm):
    """Independent recomputation of every matrix entry: expand multiplier
    times source monomial and read off each target monomial coefficient."""
    offsets = mm.multiplier.ambient.var_offsets()
    lo = offsets[mm.factor]
    rows = []
    for target_mono in mm.target.basis:
        ((t_exps, _),) = target_mono.terms.items()
        row = []
        for source_mono in mm.source.basis:
            product = mm.multiplier * source_mono
            coeff = Fraction(0)
            for exps, c in product.terms.items():
                if exps == t_exps and exps[lo] < 0 and exps[lo + 1] < 0:
                    coeff += c
            row.append(coeff)
        rows.append(tuple(row))
    return tuple(rows)


def test_toy_matrix_and_kernel(toy_data):
    mm = assemble_mult_map(toy_data["F"], toy_data["L"], toy_data["M"], 2, 2)
    assert mm.shape == (2, 3)
    assert mm.matrix == ((0, 0, 1), (1, 0, 0))
    assert mm.matrix == brute_force_matrix(mm)
    kb = kernel_basis(mm)
    assert kb.vectors == ((0, 1, 0),)
    assert cokernel_dim(mm) == 0


def test_worked_case_target_is_trivial(cy_data):
    mm = assemble_mult_map(cy_data["F"], cy_data["L"], cy_data["M"], 3, 1)
    assert mm.shape == (0, 15)
    kb = kernel_basis(mm)
    assert kb.dimension == 15
    unit = [tuple(1 if i == j else 0 for i in range(15)) for j in range(15)]
    assert list(kb.vectors) == unit
    assert cokernel_dim(mm) == 0


def test_reducible_seeded_instance(reducible_ambient):
    amb = reducible_ambient
    L = LineBundle(amb, (0, 1, 1, 0))
    M = LineBundle(amb, (3, 1, 1, 0))
    F = random_section(amb, L.twist(4).degrees, random.Random(1))
    mm = assemble_mult_map(F, L, M, 4, 2)
    assert mm.shape == (40, 50)
    assert kernel_basis(mm).dimension == 10
    assert cokernel_dim(mm) == 0

    # inner block on the three P^1 factors
    inner_F = F.drop_factor(0)
    inner = inner_F.ambient
    imm = assemble_mult_map(
        inner_F, LineBundle(inner, (1, 1, 0)), LineBundle(inner, (1, 1, 0)), 4, 2
    )
    assert imm.shape == (4, 5)
    assert kernel_basis(imm).dimension == 1
    assert cokernel_dim(imm) == 0
    assert imm.matrix == brute_force_matrix(imm)

    # oracle for the inner matrix: writing F = x0*g0 + x1*g1, the entry in
    # row (x_t u_s), column j is the x_t u_s v0^(j-1) v1^(5-j) coefficient of F
    expected = []
    for t in range(2):
        for s in range(2):
            row = []
            for j in range(1, 6):
                exps = (0, 0, 0, 1 - t, t, 1 - s, s, j - 1, 5 - j)
                row.append(F.terms.get(exps, Fraction(0)))
            expected.append(tuple(row))
    assert imm.matrix == tuple(expected)


def test_mult_map_kernel_dim_wrappers(cy_data, toy_data):
    assert mult_map_kernel_dim(cy_data["F"], cy_data["L"], cy_data["M"], 3, 1) == 15
    assert mult_map_kernel_dim(toy_data["F"], toy_data["L"], toy_data["M"], 2, 2) == 1


def test_zero_multiplier_gives_full_kernel(reducible_ambient):
    amb = reducible_ambient
    L = LineBundle(amb, (0, 1, 1, 0))
    M = LineBundle(amb, (3, 1, 1, 0))
    F = MultiPoly.zero(amb, L.twist(4).degrees)
    assert mult_map_kernel_dim(F, L, M, 4, 2) == 50


def test_kernel_exactness(toy_data, reducible_ambient):
    instances = []
    mm = assemble_mult_map(toy_data["F"], toy_data["L"], toy_data["M"], 2, 2)
    instances.append(mm)
    amb = reducible_ambient
    F = random_section(amb, (0, 1, 1, 4), random.Random(3))
    instances.append(assemble_mult_map(
        F, LineBundle(amb, (0, 1, 1, 0)), LineBundle(amb, (3, 1, 1, 0)), 4, 2
    ))
    for mm in instances:
        kb = kernel_basis(mm)
        rank = matrix_rank(mm.matrix)
        assert rank + kb.dimension == mm.source.dimension
        assert rank + cokernel_dim(mm) == mm.target.dimension
        for v in kb.vectors:
            assert all(entry == 0 for entry in mm.apply(v))
            g = 0
            for entry in v:
                g = gcd(g, entry)
            assert g == 1
            assert next(x for x in v if x) > 0


def echelon_span(vectors):
    """Canonical form of the span of integer vectors, for comparisons."""
    if not vectors:
        return ()
    rows = [[Fraction(x) for x in v] for v in vectors]
    pivots = 0
    cols = len(rows[0])
    for c in range(cols):
        pivot = next((i for i in range(pivots, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[pivots], rows[pivot] = rows[pivot], rows[pivots]
        inv = rows[pivots][c]
        rows[pivots] = [x / inv for x in rows[pivots]]
        for i in range(len(rows)):
            if i != pivots and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pivots])]
        pivots += 1
    return tuple(tuple(row) for row in rows[:pivots])


def test_kernel_scale_invariance(toy_data):
    mm = assemble_mult_map(toy_data["F"], toy_data["L"], toy_data["M"], 2, 2)
    for c in (Fraction(2), Fraction(-3, 7), Fraction(5, 2)):
        scaled = assemble_mult_map(
            toy_data["F"].scale(c), toy_data["L"], toy_data["M"], 2, 2
        )
        assert echelon_span(kernel_basis(scaled).vectors) == \
            echelon_span(kernel_basis(mm).vectors)


def test_build_rejects_degree_mismatch(toy_data):
    amb = toy_data["ambient"]
    source = h1_cech_basis(LineBundle(amb, (0, -4)), 1)
    wrong_target = h1_group(LineBundle(amb, (2, -2)), 1)
    with pytest.raises(DegreeError):
        build_mult_map(toy_data["F"], source, wrong_target, 1)


def test_kernel_vectors_of_explicit_matrices():
    kb = kernel_vectors([[1, 1]], 2)
    assert kb.vectors == ((1, -1),)
    kb = kernel_vectors([[Fraction(1, 2), Fraction(1, 3)]], 2)
    assert kb.vectors == ((2, -3),)
    kb = kernel_vectors([], 4)
    assert kb.dimension == 4
    kb = kernel_vectors([[1, 0], [0, 1]], 2)
    assert kb.dimension == 0


def test_rank_of_random_matrices_matches_fraction_free_path():
    rng = random.Random(11)
    for _ in range(100):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        matrix = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                   for _ in range(cols)] for _ in range(rows)]
        rank = matrix_rank(matrix)
        kb = kernel_vectors(matrix, cols)
        assert rank + kb.dimension == cols
        for v in kb.vectors:
            for row in matrix:
                assert sum(r * x for r, x in zip(row, v)) == 0


def test_source_basis_matches_h0_times_chart_count(cy_data):
    mm = assemble_mult_map(cy_data["F"], cy_data["L"], cy_data["M"], 3, 1)
    base = h0_basis(LineBundle(cy_data["ambient"], (1, 0)))
    assert mm.source.dimension == len(base) * 3

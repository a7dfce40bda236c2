import random
from fractions import Fraction

import pytest

from hhx import (
    FiniteAlgebra,
    FiniteCoalgebra,
    FiniteComodule,
    FiniteModule,
    iterated_coaction,
    iterated_coproduct,
    regular_comodule,
    regular_module,
    validate_algebra,
    validate_coalgebra,
    validate_comodule,
    validate_module,
)
from hhx.fields import QQ
from hhx.linalg import SparseMatrix


def test_dual_numbers_validate(dual_numbers):
    report = validate_algebra(dual_numbers)
    assert report.ok, report.describe()


def test_split_pair_and_cubic_validate(split_pair, truncated_cubic):
    assert validate_algebra(split_pair).ok
    assert validate_algebra(truncated_cubic).ok


def test_matrix_units_fail_commutativity():
    # 2x2 matrix units e11, e12, e21, e22
    mul = [
        (0, 0, 0, 1), (0, 1, 1, 1),
        (1, 2, 0, 1), (1, 3, 1, 1),
        (2, 0, 2, 1), (2, 1, 3, 1),
        (3, 2, 2, 1), (3, 3, 3, 1),
    ]
    m2 = FiniteAlgebra(QQ, ("e11", "e12", "e21", "e22"), mul, [(0, 1), (3, 1)])
    report = validate_algebra(m2)
    commut = report.check_named("commutativity")
    assert not commut.passed
    assert commut.location is not None
    i, j, _k = commut.location
    assert (i, j) == (0, 1)  # e11*e12 = e12 but e12*e11 = 0


def test_zero_unit_fails_unitality(dual_numbers):
    broken = FiniteAlgebra(QQ, ("1", "x"), dual_numbers.mul, {})
    report = validate_algebra(broken)
    assert not report.check_named("unitality").passed


def test_broken_associativity_located():
    # e1*e1 = e2, e1*e2 = e1 breaks (e1 e1) e1 = e2 e1 = ? vs e1 (e1 e1)
    mul = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1), (1, 2, 0, 1), (2, 1, 0, 1)]
    a = FiniteAlgebra(QQ, ("1", "u", "v"), mul, [(0, 1)])
    report = validate_algebra(a)
    assert not report.check_named("associativity").passed
    assert report.check_named("associativity").location is not None


def test_regular_module_validates(dual_numbers, split_pair):
    for a in (dual_numbers, split_pair):
        assert validate_module(regular_module(a)).ok


def test_zero_action_fails_unit_axiom(dual_numbers):
    m = FiniteModule(dual_numbers, ("m",), [])
    report = validate_module(m)
    assert not report.check_named("unit-action").passed
    assert report.check_named("unit-action").location == (0,)


def test_quotient_module_validates(dual_numbers):
    # Q = A/(x): x acts by zero
    m = FiniteModule(dual_numbers, ("m",), [(0, 0, 0, 1)])
    assert validate_module(m).ok


def test_group_like_coalgebra():
    c = FiniteCoalgebra(QQ, ("g",), [(0, 0, 0, 1)], [(0, 1)])
    assert validate_coalgebra(c, require_cocommutative=True).ok


def test_gd_coalgebra_validates(gd_coalgebra):
    report = validate_coalgebra(gd_coalgebra, require_cocommutative=True)
    assert report.ok, report.describe()


def test_half_primitive_fails_counit():
    # Dd = g(x)d only: applying eps on the right leg gives 0, not d
    c = FiniteCoalgebra(
        QQ, ("g", "d"),
        [(0, 0, 0, 1), (1, 0, 1, 1)],
        [(0, 1)],
    )
    report = validate_coalgebra(c)
    assert report.check_named("counit-left-leg").passed
    assert not report.check_named("counit-right-leg").passed
    assert report.check_named("counit-right-leg").location == (1,)


def test_non_cocommutative_flagged_only_when_required():
    # Dd = g(x)d + d(x)h with two group-likes g, h: coassociative, not cocommutative
    c = FiniteCoalgebra(
        QQ, ("g", "h", "d"),
        [(0, 0, 0, 1), (1, 1, 1, 1), (2, 0, 2, 1), (2, 2, 1, 1)],
        [(0, 1), (1, 1)],
    )
    assert validate_coalgebra(c).ok
    report = validate_coalgebra(c, require_cocommutative=True)
    assert not report.check_named("cocommutativity").passed


def test_regular_comodule_validates(gd_coalgebra):
    assert validate_comodule(regular_comodule(gd_coalgebra)).ok


def test_broken_comodule_counit(gd_coalgebra):
    d = FiniteComodule(gd_coalgebra, ("t",), [(0, 1, 0, 1)])  # coacts through d only
    report = validate_comodule(d)
    assert not report.check_named("coaction-counit").passed


# -- iterated coproducts ----------------------------------------------------------


def test_iterated_coproduct_k1_is_identity(gd_coalgebra):
    assert iterated_coproduct(gd_coalgebra, 1) == SparseMatrix.identity(2, QQ)


def test_group_like_cube():
    c = FiniteCoalgebra(QQ, ("g",), [(0, 0, 0, 1)], [(0, 1)])
    cube = iterated_coproduct(c, 3)
    assert cube.rows == 1 and cube.cols == 1
    assert cube.entry(0, 0) == 1


def test_primitive_triple_coproduct(gd_coalgebra):
    cube = iterated_coproduct(gd_coalgebra, 3)
    # column of d: g(x)g(x)d + g(x)d(x)g + d(x)g(x)g, encoded base 2
    col = cube.column(1)
    assert col == {
        0b001: Fraction(1),  # g,g,d
        0b010: Fraction(1),  # g,d,g
        0b100: Fraction(1),  # d,g,g
    }
    # column of g: g(x)g(x)g only
    assert cube.column(0) == {0: Fraction(1)}


def test_iterated_coaction_edges(gd_coalgebra):
    d = regular_comodule(gd_coalgebra)
    assert iterated_coaction(d, 0) == SparseMatrix.identity(2, QQ)
    assert iterated_coaction(d, 1).column(1) == {
        0 * 2 + 1: Fraction(1),  # g (x) d
        1 * 2 + 0: Fraction(1),  # d (x) g
    }


def test_iterated_coaction_group_like_square():
    c = FiniteCoalgebra(QQ, ("g",), [(0, 0, 0, 1)], [(0, 1)])
    d = regular_comodule(c)
    m = iterated_coaction(d, 2)
    assert m.rows == 1 and m.column(0) == {0: Fraction(1)}


def _random_cocommutative_coalgebra(rng):
    """A few group-likes plus primitives over chosen group-likes."""
    n_group = rng.randrange(1, 3)
    n_prim = rng.randrange(0, 3)
    basis = [f"g{i}" for i in range(n_group)] + [f"d{i}" for i in range(n_prim)]
    comul = [(i, i, i, 1) for i in range(n_group)]
    counit = [(i, 1) for i in range(n_group)]
    for p in range(n_prim):
        s = n_group + p
        over = rng.randrange(n_group)
        comul.append((s, over, s, 1))
        comul.append((s, s, over, 1))
    return FiniteCoalgebra(QQ, basis, comul, counit)


def test_random_coalgebras_validate_and_brackets_agree():
    rng = random.Random(11)
    for _ in range(20):
        c = _random_cocommutative_coalgebra(rng)
        assert validate_coalgebra(c, require_cocommutative=True).ok
        for k in range(2, 5):
            left = iterated_coproduct(c, k)
            right = _right_comb_coproduct(c, k)
            assert left == right


def _right_comb_coproduct(c, k):
    """Expand the last leg instead of the first; coassociativity says the
    result must agree with iterated_coproduct."""
    n = c.dim
    if k == 1:
        return SparseMatrix.identity(n, QQ)
    prev = _right_comb_coproduct(c, k - 1)
    entries = {}
    for (row, s), v in prev.entries.items():
        head, last = divmod(row, n)
        for (i1, i2), w in c.coproduct(last).items():
            key = ((head * n + i1) * n + i2, s)
            entries[key] = entries.get(key, QQ.zero) + v * w
    return SparseMatrix(n**k, n, QQ, {k_: v for k_, v in entries.items() if v})


def test_counit_contraction_property(gd_coalgebra):
    c = gd_coalgebra
    n = c.dim
    for k in range(2, 5):
        big = iterated_coproduct(c, k)
        small = iterated_coproduct(c, k - 1)
        for leg in range(k):
            contracted = _contract_leg(big, c, k, leg)
            assert contracted == small, f"leg {leg} of k={k}"


def _contract_leg(matrix, c, k, leg):
    n = c.dim
    entries = {}
    for (row, s), v in matrix.entries.items():
        digits = []
        rest = row
        for _ in range(k):
            rest, d = divmod(rest, n)
            digits.append(d)
        digits.reverse()
        eps = c.counit_of(digits[leg])
        if not eps:
            continue
        kept = digits[:leg] + digits[leg + 1 :]
        idx = 0
        for d in kept:
            idx = idx * n + d
        key = (idx, s)
        entries[key] = entries.get(key, QQ.zero) + v * eps
    return SparseMatrix(n ** (k - 1), c.dim, QQ, {k_: v for k_, v in entries.items() if v})


def test_cocommutative_leg_permutation_invariance(gd_coalgebra):
    from itertools import permutations

    c = gd_coalgebra
    n = c.dim
    for k in (2, 3):
        base = iterated_coproduct(c, k)
        for perm in permutations(range(k)):
            permuted = {}
            for (row, s), v in base.entries.items():
                digits = []
                rest = row
                for _ in range(k):
                    rest, d = divmod(rest, n)
                    digits.append(d)
                digits.reverse()
                new_digits = [digits[perm[i]] for i in range(k)]
                idx = 0
                for d in new_digits:
                    idx = idx * n + d
                permuted[(idx, s)] = permuted.get((idx, s), QQ.zero) + v
            assert SparseMatrix(n**k, n, QQ, permuted) == base


def test_comodule_coaction_composition_agrees(gd_coalgebra):
    """(coproduct on the coalgebra leg) vs (coact twice): comodule
    coassociativity makes the two-step expansions agree."""
    d = regular_comodule(gd_coalgebra)
    c = gd_coalgebra
    n, q = c.dim, d.dim
    two_step = {}
    for t in range(q):
        for (i, u), v in d.coaction_of(t).items():
            for (j, u2), w in d.coaction_of(u).items():
                key = ((i * n + j) * q + u2, t)
                two_step[key] = two_step.get(key, QQ.zero) + v * w
    direct = iterated_coaction(d, 2)
    assert SparseMatrix(n * n * q, q, QQ, {k: v for k, v in two_step.items() if v}) == direct


def test_duplicate_structure_constants_rejected():
    with pytest.raises(ValueError):
        FiniteAlgebra(QQ, ("1",), [(0, 0, 0, 1), (0, 0, 0, 1)], [(0, 1)])


def test_out_of_range_indices_rejected():
    with pytest.raises(ValueError):
        FiniteAlgebra(QQ, ("1",), [(0, 1, 0, 1)], [(0, 1)])

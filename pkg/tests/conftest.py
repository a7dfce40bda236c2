"""Shared fixtures: small algebras, the standard two-element coalgebra, and
the evaluation/derivation measuring used throughout."""

import pytest

from hhx import (
    ComoduleMeasuring,
    FiniteAlgebra,
    FiniteCoalgebra,
    Measuring,
    regular_comodule,
    regular_module,
)
from hhx.fields import QQ


@pytest.fixture
def dual_numbers():
    """Q[x]/(x^2) on the basis (1, x)."""
    return FiniteAlgebra(
        QQ, ("1", "x"),
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        [(0, 1)],
    )


@pytest.fixture
def split_pair():
    """Q x Q on the idempotent basis (a, b); the unit is a + b."""
    return FiniteAlgebra(
        QQ, ("a", "b"),
        [(0, 0, 0, 1), (1, 1, 1, 1)],
        [(0, 1), (1, 1)],
    )


@pytest.fixture
def rationals():
    """Q itself, one-dimensional."""
    return FiniteAlgebra(QQ, ("1",), [(0, 0, 0, 1)], [(0, 1)])


@pytest.fixture
def truncated_cubic():
    """Q[x]/(x^3) on the basis (1, x, x^2)."""
    return FiniteAlgebra(
        QQ, ("1", "x", "x2"),
        [
            (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1),
            (1, 0, 1, 1), (1, 1, 2, 1), (2, 0, 2, 1),
        ],
        [(0, 1)],
    )


@pytest.fixture
def gd_coalgebra():
    """span{g, d}: g group-like, d primitive over g."""
    return FiniteCoalgebra(
        QQ, ("g", "d"),
        [(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
        [(0, 1)],
    )


@pytest.fixture
def gd_measuring(gd_coalgebra, dual_numbers, rationals):
    """psi(g) = evaluation at 0, psi(d) = the x-coefficient, from Q[x]/(x^2)
    to Q."""
    return Measuring.from_table(
        gd_coalgebra, dual_numbers, rationals,
        [(0, 0, 0, 1), (1, 1, 0, 1)],
    )


@pytest.fixture
def gd_comodule_measuring(gd_measuring, gd_coalgebra, dual_numbers, rationals):
    """phi = psi on the regular modules, with C coacting on itself."""
    return ComoduleMeasuring.from_table(
        gd_measuring,
        regular_comodule(gd_coalgebra),
        regular_module(dual_numbers),
        regular_module(rationals),
        [(0, 0, 0, 1), (1, 1, 0, 1)],
    )

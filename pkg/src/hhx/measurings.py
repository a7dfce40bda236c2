"""Coalgebra measurings and comodule measurings.

A measuring is a linear map psi from a cocommutative coalgebra C into
Hom(A, B) satisfying the product and unit laws

    psi(s)(a a') = sum psi(s_(1))(a) psi(s_(2))(a'),
    psi(s)(1_A)  = eps(s) 1_B,

stored here as one B x A matrix per coalgebra basis element.  A comodule
measuring phi: D -> Hom(M, N) over psi satisfies the analogous law mixing
the coaction of D, with the comodule leg applied to the module element.
"""

from __future__ import annotations

from .algebras import (
    FiniteAlgebra,
    FiniteCoalgebra,
    FiniteComodule,
    FiniteModule,
    iterated_coaction,
    regular_comodule,
    regular_module,
    validate_coalgebra,
)
from .errors import DimensionMismatch
from .linalg import SparseMatrix
from .validation import ValidationReport


class Measuring:
    """psi: C -> Hom(A, B), one operator matrix per basis element of C.

    operators[s] is the matrix of psi(c_s): rows over B's basis, columns
    over A's basis.
    """

    def __init__(self, coalgebra: FiniteCoalgebra, source: FiniteAlgebra,
                 target: FiniteAlgebra, operators):
        self.coalgebra = coalgebra
        self.source = source
        self.target = target
        self.field = coalgebra.field
        ops = tuple(operators)
        if len(ops) != coalgebra.dim:
            raise DimensionMismatch(
                f"need {coalgebra.dim} operators, got {len(ops)}"
            )
        for op in ops:
            if op.rows != target.dim or op.cols != source.dim:
                raise DimensionMismatch(
                    f"operator is {op.rows}x{op.cols}, expected "
                    f"{target.dim}x{source.dim}"
                )
        self.operators = ops

    @classmethod
    def from_table(cls, coalgebra, source, target, triples):
        """Build from sparse (s, a, b, coeff) entries: the coefficient of
        target basis b in psi(c_s)(e_a)."""
        field = coalgebra.field
        buckets = [{} for _ in range(coalgebra.dim)]
        for s, a, b, coeff in triples:
            if not (0 <= s < coalgebra.dim):
                raise DimensionMismatch(f"coalgebra index {s} out of range")
            coeff = field.scalar(coeff)
            if coeff:
                if (b, a) in buckets[s]:
                    raise ValueError(f"duplicate measuring entry at {(s, a, b)}")
                buckets[s][(b, a)] = coeff
        ops = [
            SparseMatrix(target.dim, source.dim, field, bucket)
            for bucket in buckets
        ]
        return cls(coalgebra, source, target, ops)

    def table(self):
        """Sparse (s, a, b, coeff) entries, sorted."""
        out = []
        for s, op in enumerate(self.operators):
            for (b, a), v in op.items():
                out.append((s, a, b, v))
        return out

    def __eq__(self, other):
        if not isinstance(other, Measuring):
            return NotImplemented
        return (
            self.coalgebra == other.coalgebra
            and self.source == other.source
            and self.target == other.target
            and self.operators == other.operators
        )

    def __repr__(self):
        return (
            f"Measuring(C dim={self.coalgebra.dim}, "
            f"{self.source.dim} -> {self.target.dim})"
        )


class ComoduleMeasuring:
    """phi: D -> Hom(M, N) over a measuring psi, one N x M matrix per basis
    element of D."""

    def __init__(self, measuring: Measuring, comodule: FiniteComodule,
                 source: FiniteModule, target: FiniteModule, operators):
        if comodule.coalgebra != measuring.coalgebra:
            raise DimensionMismatch("comodule is not over the measuring coalgebra")
        if source.algebra != measuring.source:
            raise DimensionMismatch("source module is not over the source algebra")
        if target.algebra != measuring.target:
            raise DimensionMismatch("target module is not over the target algebra")
        self.measuring = measuring
        self.comodule = comodule
        self.source = source
        self.target = target
        self.field = measuring.field
        ops = tuple(operators)
        if len(ops) != comodule.dim:
            raise DimensionMismatch(
                f"need {comodule.dim} operators, got {len(ops)}"
            )
        for op in ops:
            if op.rows != target.dim or op.cols != source.dim:
                raise DimensionMismatch(
                    f"operator is {op.rows}x{op.cols}, expected "
                    f"{target.dim}x{source.dim}"
                )
        self.operators = ops

    @classmethod
    def from_table(cls, measuring, comodule, source, target, triples):
        """Build from sparse (t, m, n, coeff) entries."""
        field = measuring.field
        buckets = [{} for _ in range(comodule.dim)]
        for t, m, n, coeff in triples:
            if not (0 <= t < comodule.dim):
                raise DimensionMismatch(f"comodule index {t} out of range")
            coeff = field.scalar(coeff)
            if coeff:
                if (n, m) in buckets[t]:
                    raise ValueError(f"duplicate entry at {(t, m, n)}")
                buckets[t][(n, m)] = coeff
        ops = [
            SparseMatrix(target.dim, source.dim, field, bucket)
            for bucket in buckets
        ]
        return cls(measuring, comodule, source, target, ops)

    def table(self):
        out = []
        for t, op in enumerate(self.operators):
            for (n, m), v in op.items():
                out.append((t, m, n, v))
        return out

    def __eq__(self, other):
        if not isinstance(other, ComoduleMeasuring):
            return NotImplemented
        return (
            self.measuring == other.measuring
            and self.comodule == other.comodule
            and self.source == other.source
            and self.target == other.target
            and self.operators == other.operators
        )

    def __repr__(self):
        return (
            f"ComoduleMeasuring(D dim={self.comodule.dim}, "
            f"{self.source.dim} -> {self.target.dim})"
        )


def self_comodule_measuring(psi: Measuring) -> ComoduleMeasuring:
    """The canonical comodule measuring with D = C, M = A, N = B, phi = psi.

    C coacts on itself by its coproduct and the algebras act on themselves by
    multiplication; the measuring's own operators serve as phi.
    """
    return ComoduleMeasuring(
        psi,
        regular_comodule(psi.coalgebra),
        regular_module(psi.source),
        regular_module(psi.target),
        psi.operators,
    )


def operator(psi: Measuring, coeffs) -> SparseMatrix:
    """Matrix of psi(s) for s given by its coefficient sequence over C."""
    coeffs = list(coeffs)
    if len(coeffs) != psi.coalgebra.dim:
        raise DimensionMismatch(
            f"element has {len(coeffs)} coefficients, coalgebra has dim "
            f"{psi.coalgebra.dim}"
        )
    out = SparseMatrix.zeros(psi.target.dim, psi.source.dim, psi.field)
    for s, c in enumerate(coeffs):
        c = psi.field.scalar(c)
        if c:
            out = out + psi.operators[s].scale(c)
    return out


def multilinear_from_operators(comodule: FiniteComodule, phi_ops, psi_ops,
                               coeffs, k: int) -> SparseMatrix:
    """Core of the multilinear construction, over explicit operator families.

    Expands the k-fold coaction of the element given by coeffs; the comodule
    leg applies phi_ops to the module slot and each coalgebra leg applies
    psi_ops to the corresponding algebra slot, in order.  Exposed separately
    so callers can substitute base-changed operator families.
    """
    field = comodule.field
    coeffs = [field.scalar(c) for c in coeffs]
    if len(coeffs) != comodule.dim:
        raise DimensionMismatch(
            f"element has {len(coeffs)} coefficients, comodule has dim "
            f"{comodule.dim}"
        )
    if k == 0:
        rows, cols = phi_ops[0].rows, phi_ops[0].cols
        out = SparseMatrix.zeros(rows, cols, field)
        for t, c in enumerate(coeffs):
            if c:
                out = out + phi_ops[t].scale(c)
        return out
    n_c = comodule.coalgebra.dim
    q = comodule.dim
    coact = iterated_coaction(comodule, k)
    expanded = coact.apply({t: c for t, c in enumerate(coeffs) if c})
    rows = phi_ops[0].rows * psi_ops[0].rows**k
    cols = phi_ops[0].cols * psi_ops[0].cols**k
    acc = {}
    for rowidx, weight in sorted(expanded.items()):
        legs, u = divmod(rowidx, q)
        cidx = []
        for _ in range(k):
            legs, i = divmod(legs, n_c)
            cidx.append(i)
        cidx.reverse()
        term = phi_ops[u]
        for i in cidx:
            term = term.kron(psi_ops[i])
        for key, v in term.entries.items():
            s = acc.get(key)
            s = weight * v if s is None else s + weight * v
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
    return SparseMatrix(rows, cols, field, acc)


def multilinear_operator(phi: ComoduleMeasuring, coeffs, k: int) -> SparseMatrix:
    """Matrix of the induced map M (x) A^(x)k -> N (x) B^(x)k.

    The k-fold coaction of the element is expanded; the comodule leg hits the
    module factor through phi and each coalgebra leg hits the corresponding
    algebra factor through psi, in slot order.  Tensor bases are enumerated
    with the module index slowest.  k = 0 gives the plain operator of phi.
    """
    if k < 0:
        raise DimensionMismatch("multilinear operator needs k >= 0")
    return multilinear_from_operators(
        phi.comodule, phi.operators, phi.measuring.operators, coeffs, k
    )


# -- validators ----------------------------------------------------------------


def validate_measuring(psi: Measuring) -> ValidationReport:
    """Check the measuring laws on all basis triples, plus cocommutativity
    of the coalgebra (required for the chain-level constructions)."""
    report = ValidationReport()
    c = psi.coalgebra
    a = psi.source
    b = psi.target
    one = psi.field.one

    cocom = validate_coalgebra(c, require_cocommutative=True).check_named(
        "cocommutativity"
    )
    report.add("cocommutative-coalgebra", cocom.passed, cocom.location)

    def apply_op(s_idx, avec):
        return psi.operators[s_idx].apply(avec)

    loc = None
    for s in range(c.dim):
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = apply_op(s, a.basis_product(i, j))
                rhs = {}
                for (s1, s2), w in c.coproduct(s).items():
                    left = apply_op(s1, {i: one})
                    right = apply_op(s2, {j: one})
                    prod = b.multiply(left, right)
                    for key, v in prod.items():
                        cur = rhs.get(key)
                        cur = w * v if cur is None else cur + w * v
                        if cur:
                            rhs[key] = cur
                        elif key in rhs:
                            del rhs[key]
                if lhs != rhs:
                    loc = (s, i, j)
                    break
            if loc:
                break
        if loc:
            break
    report.add("product-rule", loc is None, loc)

    loc = None
    unit_b = b.unit_vector()
    for s in range(c.dim):
        lhs = apply_op(s, a.unit_vector())
        eps = c.counit_of(s)
        rhs = {key: eps * v for key, v in unit_b.items() if eps * v}
        if lhs != rhs:
            loc = (s,)
            break
    report.add("unit-rule", loc is None, loc)
    return report


def validate_comodule_measuring(phi: ComoduleMeasuring) -> ValidationReport:
    """Check phi(t)(a.m) = sum psi(t_coalg)(a) . phi(t_comod)(m) on all basis
    triples (t, a, m)."""
    report = ValidationReport()
    psi = phi.measuring
    d = phi.comodule
    a = psi.source
    m_mod = phi.source
    n_mod = phi.target
    one = phi.field.one

    loc = None
    for t in range(d.dim):
        for i in range(a.dim):
            for j in range(m_mod.dim):
                lhs = phi.operators[t].apply(m_mod.basis_action(i, j))
                rhs = {}
                for (ci, u), w in d.coaction_of(t).items():
                    avec = psi.operators[ci].apply({i: one})
                    mvec = phi.operators[u].apply({j: one})
                    acted = n_mod.act(avec, mvec)
                    for key, v in acted.items():
                        cur = rhs.get(key)
                        cur = w * v if cur is None else cur + w * v
                        if cur:
                            rhs[key] = cur
                        elif key in rhs:
                            del rhs[key]
                if lhs != rhs:
                    loc = (t, i, j)
                    break
            if loc:
                break
        if loc:
            break
    report.add("module-compatibility", loc is None, loc)
    return report

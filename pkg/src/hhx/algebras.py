"""Finite-dimensional algebraic structures given by structure constants.

Commutative algebras, their modules, cocommutative coalgebras and their
comodules are all stored sparsely: only nonzero structure constants are kept,
as nested dicts indexed by basis positions.  Axioms are not enforced at
construction (documents are loaded first, validated second); the validators
report the first violating index tuple per axiom.

All objects are immutable after construction and every operation is pure.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .linalg import SparseMatrix
from .validation import ValidationReport


def _table_from_triples(entries, field, bounds, kind):
    """Normalize (i, j, k, coeff) style input into {(i, j): {k: coeff}}.

    bounds is a tuple of basis sizes for each index position; the last index
    is the output position.
    """
    table = {}
    for item in entries:
        *idx, coeff = item
        if len(idx) != len(bounds):
            raise ValueError(f"{kind}: expected {len(bounds)} indices, got {idx}")
        for pos, (i, bound) in enumerate(zip(idx, bounds)):
            if not (0 <= i < bound):
                raise ValueError(f"{kind}: index {i} out of range at position {pos}")
        coeff = field.scalar(coeff)
        key = tuple(idx[:-1])
        out = idx[-1]
        row = table.setdefault(key, {})
        if out in row:
            raise ValueError(f"{kind}: duplicate entry at {tuple(idx)}")
        if coeff:
            row[out] = coeff
    return {k: v for k, v in table.items() if v}


def _vec_from_pairs(entries, field, bound, kind):
    vec = {}
    for i, coeff in entries:
        if not (0 <= i < bound):
            raise ValueError(f"{kind}: index {i} out of range")
        if i in vec:
            raise ValueError(f"{kind}: duplicate entry at {i}")
        coeff = field.scalar(coeff)
        if coeff:
            vec[i] = coeff
    return vec


def _add_scaled(acc, vec, scale):
    for k, v in vec.items():
        s = acc.get(k)
        s = scale * v if s is None else s + scale * v
        if s:
            acc[k] = s
        elif k in acc:
            del acc[k]


class FiniteAlgebra:
    """Commutative unital algebra on a named basis.

    mul[(i, j)] = {k: c} encodes e_i e_j = sum_k c e_k; unit = {k: c}
    encodes 1 = sum_k c e_k.  Constructors accept sparse (i, j, k, coeff)
    quadruples and (k, coeff) pairs.
    """

    def __init__(self, field, basis, mul, unit):
        self.field = field
        self.basis = tuple(basis)
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise ValueError("basis names must be distinct")
        if isinstance(mul, dict):
            self.mul = mul
        else:
            self.mul = _table_from_triples(mul, field, (n, n, n), "mul")
        if isinstance(unit, dict):
            self.unit = unit
        else:
            self.unit = _vec_from_pairs(unit, field, n, "unit")
        self._list_cache = {}

    @property
    def dim(self):
        return len(self.basis)

    def basis_product(self, i, j):
        return self.mul.get((i, j), {})

    def unit_vector(self):
        return dict(self.unit)

    def multiply(self, u, v):
        """Product of two coefficient vectors ({index: scalar})."""
        out = {}
        for i, ui in u.items():
            if not ui:
                continue
            for j, vj in v.items():
                if not vj:
                    continue
                _add_scaled(out, self.basis_product(i, j), ui * vj)
        return out

    def product_of_basis_list(self, idxs):
        """Product of a sequence of basis elements; empty product is the unit."""
        idxs = tuple(idxs)
        cached = self._list_cache.get(idxs)
        if cached is None:
            if not idxs:
                cached = self.unit_vector()
            elif len(idxs) == 1:
                cached = {idxs[0]: self.field.one}
            else:
                cached = self.product_of_basis_list(idxs[:-1])
                cached = self.multiply(cached, {idxs[-1]: self.field.one})
            self._list_cache[idxs] = cached
        return dict(cached)

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.basis == other.basis
            and self.mul == other.mul
            and self.unit == other.unit
        )

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, basis={self.basis})"


class FiniteModule:
    """Module over a FiniteAlgebra: action[(i, j)] = {l: c} for e_i . m_j."""

    def __init__(self, algebra, basis, action):
        self.algebra = algebra
        self.field = algebra.field
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")
        if isinstance(action, dict):
            self.action = action
        else:
            self.action = _table_from_triples(
                action, self.field,
                (algebra.dim, len(self.basis), len(self.basis)),
                "action",
            )
        self._list_cache = {}

    @property
    def dim(self):
        return len(self.basis)

    def basis_action(self, i, j):
        return self.action.get((i, j), {})

    def act(self, avec, mvec):
        """Action of an algebra coefficient vector on a module vector."""
        out = {}
        for i, ai in avec.items():
            if not ai:
                continue
            for j, mj in mvec.items():
                if not mj:
                    continue
                _add_scaled(out, self.basis_action(i, j), ai * mj)
        return out

    def act_basis_list(self, m, idxs):
        """Iterated action of basis elements e_{idxs} on m_m."""
        idxs = tuple(idxs)
        key = (m, idxs)
        cached = self._list_cache.get(key)
        if cached is None:
            if not idxs:
                cached = {m: self.field.one}
            else:
                prev = self.act_basis_list(m, idxs[:-1])
                cached = self.act({idxs[-1]: self.field.one}, prev)
            self._list_cache[key] = cached
        return dict(cached)

    def __eq__(self, other):
        if not isinstance(other, FiniteModule):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.basis == other.basis
            and self.action == other.action
        )

    def __repr__(self):
        return f"FiniteModule(dim={self.dim}, over dim={self.algebra.dim})"


class FiniteCoalgebra:
    """Coalgebra on a named basis.

    comul[s] = {(i, j): c} encodes D(c_s) = sum c_i (x) c_j with coefficient
    c; counit = {s: c}.  Sparse input: (s, i, j, coeff) quadruples and
    (s, coeff) pairs.
    """

    def __init__(self, field, basis, comul, counit):
        self.field = field
        self.basis = tuple(basis)
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise ValueError("basis names must be distinct")
        if isinstance(comul, dict):
            self.comul = comul
        else:
            flat = _table_from_triples(
                [(s, i * n + j, c) for s, i, j, c in comul],
                field, (n, n * n), "comul",
            )
            self.comul = {
                s: {(k // n, k % n): c for k, c in row.items()}
                for s, row in ((key[0], val) for key, val in flat.items())
            }
        if isinstance(counit, dict):
            self.counit = counit
        else:
            self.counit = _vec_from_pairs(counit, field, n, "counit")

    @property
    def dim(self):
        return len(self.basis)

    def coproduct(self, s):
        return self.comul.get(s, {})

    def counit_of(self, s):
        return self.counit.get(s, self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, FiniteCoalgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.basis == other.basis
            and self.comul == other.comul
            and self.counit == other.counit
        )

    def __repr__(self):
        return f"FiniteCoalgebra(dim={self.dim}, basis={self.basis})"


class FiniteComodule:
    """Comodule over a FiniteCoalgebra.

    coaction[t] = {(i, u): c} encodes the structure map t_t -> sum c_i (x) t_u.
    Sparse input: (t, i, u, coeff) quadruples.
    """

    def __init__(self, coalgebra, basis, coaction):
        self.coalgebra = coalgebra
        self.field = coalgebra.field
        self.basis = tuple(basis)
        q = len(self.basis)
        if len(set(self.basis)) != q:
            raise ValueError("basis names must be distinct")
        if isinstance(coaction, dict):
            self.coaction = coaction
        else:
            m = coalgebra.dim
            flat = _table_from_triples(
                [(t, i * q + u, c) for t, i, u, c in coaction],
                self.field, (q, m * q), "coaction",
            )
            self.coaction = {
                t: {(k // q, k % q): c for k, c in row.items()}
                for (t,), row in flat.items()
            }

    @property
    def dim(self):
        return len(self.basis)

    def coaction_of(self, t):
        return self.coaction.get(t, {})

    def __eq__(self, other):
        if not isinstance(other, FiniteComodule):
            return NotImplemented
        return (
            self.coalgebra == other.coalgebra
            and self.basis == other.basis
            and self.coaction == other.coaction
        )

    def __repr__(self):
        return f"FiniteComodule(dim={self.dim}, over dim={self.coalgebra.dim})"


def regular_module(algebra: FiniteAlgebra) -> FiniteModule:
    """The algebra acting on itself by multiplication."""
    action = {key: dict(val) for key, val in algebra.mul.items()}
    return FiniteModule(algebra, algebra.basis, action)


def regular_comodule(coalgebra: FiniteCoalgebra) -> FiniteComodule:
    """The coalgebra coacting on itself by its comultiplication."""
    coaction = {s: dict(row) for s, row in coalgebra.comul.items()}
    return FiniteComodule(coalgebra, coalgebra.basis, coaction)


# -- validators ---------------------------------------------------------------


def validate_algebra(a: FiniteAlgebra) -> ValidationReport:
    """Check commutativity, associativity and unitality."""
    report = ValidationReport()
    n = a.dim
    one = a.field.one

    loc = None
    for i in range(n):
        for j in range(i, n):
            left = a.basis_product(i, j)
            right = a.basis_product(j, i)
            if left != right:
                ks = set(left) | set(right)
                k = min(k for k in ks if left.get(k) != right.get(k))
                loc = (i, j, k)
                break
        if loc:
            break
    report.add("commutativity", loc is None, loc)

    loc = None
    for i in range(n):
        for j in range(n):
            ij = a.basis_product(i, j)
            for l in range(n):
                left = a.multiply(ij, {l: one})
                right = a.multiply({i: one}, a.basis_product(j, l))
                if left != right:
                    loc = (i, j, l)
                    break
            if loc:
                break
        if loc:
            break
    report.add("associativity", loc is None, loc)

    loc = None
    unit = a.unit_vector()
    for j in range(n):
        ej = {j: one}
        if a.multiply(unit, ej) != ej or a.multiply(ej, unit) != ej:
            loc = (j,)
            break
    report.add("unitality", loc is None, loc)
    return report


def validate_module(m: FiniteModule) -> ValidationReport:
    """Check that the unit acts as identity and the action is associative."""
    report = ValidationReport()
    a = m.algebra
    one = m.field.one

    loc = None
    unit = a.unit_vector()
    for j in range(m.dim):
        mj = {j: one}
        if m.act(unit, mj) != mj:
            loc = (j,)
            break
    report.add("unit-action", loc is None, loc)

    loc = None
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.basis_product(i, j)
            for l in range(m.dim):
                via_product = m.act(prod, {l: one})
                iterated = m.act({i: one}, m.basis_action(j, l))
                if via_product != iterated:
                    loc = (i, j, l)
                    break
            if loc:
                break
        if loc:
            break
    report.add("action-associativity", loc is None, loc)
    return report


def validate_coalgebra(c: FiniteCoalgebra, require_cocommutative=False) -> ValidationReport:
    """Check coassociativity and the counit laws; optionally cocommutativity."""
    report = ValidationReport()
    n = c.dim

    loc = None
    for s in range(n):
        left = {}
        right = {}
        for (i, j), v in c.coproduct(s).items():
            for (i1, i2), w in c.coproduct(i).items():
                _add_scaled(left, {(i1, i2, j): w}, v)
            for (j1, j2), w in c.coproduct(j).items():
                _add_scaled(right, {(i, j1, j2): w}, v)
        if left != right:
            keys = set(left) | set(right)
            bad = min(k for k in keys if left.get(k) != right.get(k))
            loc = (s,) + bad
            break
    report.add("coassociativity", loc is None, loc)

    loc = None
    for s in range(n):
        contracted = {}
        for (i, j), v in c.coproduct(s).items():
            eps = c.counit_of(i)
            if eps:
                _add_scaled(contracted, {j: eps}, v)
        expected = {s: c.field.one}
        if contracted != expected:
            loc = (s,)
            break
    report.add("counit-left-leg", loc is None, loc)

    loc = None
    for s in range(n):
        contracted = {}
        for (i, j), v in c.coproduct(s).items():
            eps = c.counit_of(j)
            if eps:
                _add_scaled(contracted, {i: eps}, v)
        expected = {s: c.field.one}
        if contracted != expected:
            loc = (s,)
            break
    report.add("counit-right-leg", loc is None, loc)

    if require_cocommutative:
        loc = None
        for s in range(n):
            cop = c.coproduct(s)
            for (i, j), v in cop.items():
                if cop.get((j, i)) != v:
                    loc = (s, i, j)
                    break
            if loc:
                break
        report.add("cocommutativity", loc is None, loc)
    return report


def validate_comodule(d: FiniteComodule) -> ValidationReport:
    """Check comodule coassociativity and the counit law."""
    report = ValidationReport()
    c = d.coalgebra

    loc = None
    for t in range(d.dim):
        left = {}
        right = {}
        for (i, u), v in d.coaction_of(t).items():
            for (i1, i2), w in c.coproduct(i).items():
                _add_scaled(left, {(i1, i2, u): w}, v)
        for (i, u), v in d.coaction_of(t).items():
            for (j, u2), w in d.coaction_of(u).items():
                _add_scaled(right, {(i, j, u2): w}, v)
        if left != right:
            keys = set(left) | set(right)
            bad = min(k for k in keys if left.get(k) != right.get(k))
            loc = (t,) + bad
            break
    report.add("coaction-coassociativity", loc is None, loc)

    loc = None
    for t in range(d.dim):
        contracted = {}
        for (i, u), v in d.coaction_of(t).items():
            eps = c.counit_of(i)
            if eps:
                _add_scaled(contracted, {u: eps}, v)
        if contracted != {t: d.field.one}:
            loc = (t,)
            break
    report.add("coaction-counit", loc is None, loc)
    return report


# -- iterated coproducts and coactions ----------------------------------------


def _encode(tup, dim):
    idx = 0
    for i in tup:
        idx = idx * dim + i
    return idx


def iterated_coproduct(c: FiniteCoalgebra, k: int) -> SparseMatrix:
    """Matrix of the k-fold coproduct C -> C^(x)k.

    Rows are indexed by k-tuples of basis positions encoded with the first
    leg slowest.  k = 1 is the identity; higher k expands the first leg,
    which by coassociativity agrees with any other expansion order.
    """
    if k < 1:
        raise DimensionMismatch("iterated coproduct needs k >= 1")
    n = c.dim
    if k == 1:
        return SparseMatrix.identity(n, c.field)
    prev = iterated_coproduct(c, k - 1)
    entries = {}
    shift = n ** (k - 2)
    for (row, s), v in prev.entries.items():
        first, rest = divmod(row, shift)
        for (i1, i2), w in c.coproduct(first).items():
            key = ((i1 * n + i2) * shift + rest, s)
            val = entries.get(key)
            val = v * w if val is None else val + v * w
            if val:
                entries[key] = val
            elif key in entries:
                del entries[key]
    return SparseMatrix(n**k, n, c.field, entries)


def iterated_coaction(d: FiniteComodule, k: int) -> SparseMatrix:
    """Matrix of the k-fold coaction D -> C^(x)k (x) D.

    The comodule leg is kept last (fastest index); the coaction is applied
    once and the coalgebra leg is expanded with the iterated coproduct, which
    by comodule coassociativity agrees with any equivalent composition.
    k = 0 is the identity on D.
    """
    if k < 0:
        raise DimensionMismatch("iterated coaction needs k >= 0")
    q = d.dim
    if k == 0:
        return SparseMatrix.identity(q, d.field)
    c = d.coalgebra
    n = c.dim
    cop = iterated_coproduct(c, k)
    cop_cols = cop._by_col()
    entries = {}
    for t in range(q):
        for (i, u), v in d.coaction_of(t).items():
            for row, w in cop_cols.get(i, {}).items():
                key = (row * q + u, t)
                val = entries.get(key)
                val = v * w if val is None else val + v * w
                if val:
                    entries[key] = val
                elif key in entries:
                    del entries[key]
    return SparseMatrix(n**k * q, q, d.field, entries)

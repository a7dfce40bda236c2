"""Exact sparse linear algebra over Q and prime fields.

Matrices are immutable coordinate-list sparse matrices; elimination uses
fraction-aware partial pivoting (smallest stored entry first) to keep
coefficients small, with a dense fast path for matrices under 64x64.
Everything is deterministic: the same input always produces the same pivots,
bases and representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CompositionNotZero,
    NotAChainMapAtThisDegree,
    ShapeMismatch,
)

_DENSE_LIMIT = 64 * 64


class SparseMatrix:
    """Immutable sparse matrix: entries maps (row, col) -> nonzero scalar."""

    __slots__ = ("rows", "cols", "field", "entries", "_cols_cache")

    def __init__(self, rows, cols, field, entries=()):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.field = field
        table = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for item in items:
            if isinstance(entries, dict):
                (r, c), v = item
            else:
                r, c, v = item
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeMismatch(f"entry ({r},{c}) outside {rows}x{cols}")
            if not v:
                continue
            if (r, c) in table:
                raise ValueError(f"duplicate entry at ({r},{c})")
            table[(r, c)] = v
        self.entries = table
        self._cols_cache = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols, field):
        return cls(rows, cols, field)

    @classmethod
    def identity(cls, n, field):
        one = field.one
        return cls(n, n, field, [(i, i, one) for i in range(n)])

    @classmethod
    def from_rows(cls, rows_list, field, cols=None):
        """Dense list-of-lists input; scalars coerced through the field."""
        nrows = len(rows_list)
        ncols = cols if cols is not None else (len(rows_list[0]) if rows_list else 0)
        entries = []
        for r, row in enumerate(rows_list):
            if len(row) != ncols:
                raise ShapeMismatch("ragged rows")
            for c, v in enumerate(row):
                v = field.scalar(v)
                if v:
                    entries.append((r, c, v))
        return cls(nrows, ncols, field, entries)

    @classmethod
    def from_columns(cls, columns, rows, field):
        """columns: list of {row: scalar} dicts."""
        entries = []
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    entries.append((r, c, v))
        return cls(rows, len(columns), field, entries)

    # -- access ------------------------------------------------------------

    def entry(self, r, c):
        return self.entries.get((r, c), self.field.zero)

    def items(self):
        """Entries sorted row-major."""
        return sorted(self.entries.items())

    def _by_col(self):
        if self._cols_cache is None:
            cache = {}
            for (r, c), v in self.entries.items():
                cache.setdefault(c, {})[r] = v
            self._cols_cache = cache
        return self._cols_cache

    def column(self, j):
        """Column j as a fresh {row: scalar} dict."""
        return dict(self._by_col().get(j, {}))

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_rows(self):
        zero = self.field.zero
        dense = [[zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def is_zero(self):
        return not self.entries

    def nnz(self):
        return len(self.entries)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other):
        self._check_same_shape(other)
        table = dict(self.entries)
        for key, v in other.entries.items():
            w = table.get(key)
            s = v if w is None else w + v
            if s:
                table[key] = s
            elif w is not None:
                del table[key]
        return SparseMatrix(self.rows, self.cols, self.field, table)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SparseMatrix(
            self.rows, self.cols, self.field,
            {k: -v for k, v in self.entries.items()},
        )

    def scale(self, s):
        if not s:
            return SparseMatrix.zeros(self.rows, self.cols, self.field)
        return SparseMatrix(
            self.rows, self.cols, self.field,
            {k: s * v for k, v in self.entries.items()},
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        by_col = self._by_col()
        acc = {}
        for (k, c), w in other.entries.items():
            col = by_col.get(k)
            if not col:
                continue
            for r, v in col.items():
                key = (r, c)
                s = acc.get(key)
                acc[key] = v * w if s is None else s + v * w
        return SparseMatrix(
            self.rows, other.cols, self.field,
            {k: v for k, v in acc.items() if v},
        )

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, self.field,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def kron(self, other):
        """Kronecker product; left factor is the slow index."""
        entries = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                entries[(r1 * other.rows + r2, c1 * other.cols + c2)] = v1 * v2
        return SparseMatrix(
            self.rows * other.rows, self.cols * other.cols, self.field, entries
        )

    def apply(self, vec):
        """Apply to a {index: scalar} column vector."""
        by_col = self._by_col()
        out = {}
        for c, w in vec.items():
            if not w:
                continue
            col = by_col.get(c)
            if not col:
                continue
            for r, v in col.items():
                s = out.get(r)
                s = v * w if s is None else s + v * w
                if s:
                    out[r] = s
                elif r in out:
                    del out[r]
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


# -- elimination -------------------------------------------------------------


def _rref_dense(rows, ncols, field):
    """Reduced row echelon on dense rows (in place); returns pivot list."""
    pivots = []
    nrows = len(rows)
    next_row = 0
    size = field.entry_size
    for col in range(ncols):
        best = None
        for r in range(next_row, nrows):
            v = rows[r][col]
            if v:
                key = (size(v), r)
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            continue
        r = best[1]
        rows[next_row], rows[r] = rows[r], rows[next_row]
        prow = rows[next_row]
        inv = field.one / prow[col]
        if inv != field.one:
            for c in range(col, ncols):
                if prow[c]:
                    prow[c] = prow[c] * inv
        for r2 in range(nrows):
            if r2 == next_row:
                continue
            f = rows[r2][col]
            if not f:
                continue
            row2 = rows[r2]
            for c in range(col, ncols):
                if prow[c]:
                    row2[c] = row2[c] - f * prow[c]
        pivots.append((next_row, col))
        next_row += 1
    return pivots


def _rref_sparse(rows, ncols, field):
    """Same contract as _rref_dense but on a list of {col: scalar} dicts."""
    pivots = []
    nrows = len(rows)
    next_row = 0
    size = field.entry_size
    for col in range(ncols):
        best = None
        for r in range(next_row, nrows):
            v = rows[r].get(col)
            if v:
                key = (size(v), r)
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            continue
        r = best[1]
        rows[next_row], rows[r] = rows[r], rows[next_row]
        prow = rows[next_row]
        inv = field.one / prow[col]
        if inv != field.one:
            for c in list(prow):
                prow[c] = prow[c] * inv
        for r2 in range(nrows):
            if r2 == next_row:
                continue
            f = rows[r2].get(col)
            if not f:
                continue
            row2 = rows[r2]
            for c, v in prow.items():
                s = row2.get(c)
                s = -f * v if s is None else s - f * v
                if s:
                    row2[c] = s
                elif c in row2:
                    del row2[c]
        pivots.append((next_row, col))
        next_row += 1
    return pivots


def rref(m: SparseMatrix):
    """Reduced row echelon form.

    Returns (rows, pivots) where rows is a list of {col: scalar} dicts and
    pivots is a list of (row, col) pairs in increasing column order.
    """
    if m.rows * m.cols < _DENSE_LIMIT:
        dense = m.to_rows()
        pivots = _rref_dense(dense, m.cols, m.field)
        rows = [
            {c: v for c, v in enumerate(row) if v}
            for row in dense
        ]
        return rows, pivots
    rows = m.row_dicts()
    pivots = _rref_sparse(rows, m.cols, m.field)
    return rows, pivots


def rank(m: SparseMatrix) -> int:
    """Rank over the ambient field."""
    return len(rref(m)[1])


def kernel_basis(m: SparseMatrix) -> SparseMatrix:
    """Columns form a basis of the null space {v : m v = 0}.

    One column per free column of the reduced echelon form, in increasing
    free-column order, with a unit in the free coordinate.
    """
    rows, pivots = rref(m)
    pivot_cols = {col: r for r, col in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    columns = []
    for f in free_cols:
        vec = {f: m.field.one}
        for r, col in pivots:
            coeff = rows[r].get(f)
            if coeff:
                vec[col] = -coeff
        columns.append(vec)
    return SparseMatrix.from_columns(columns, m.cols, m.field)


def column_space_basis(m: SparseMatrix) -> SparseMatrix:
    """The pivot columns of m, as originally given (a basis of the image)."""
    _, pivots = rref(m)
    cols = [m.column(c) for _, c in pivots]
    return SparseMatrix.from_columns(cols, m.rows, m.field)


def invert(m: SparseMatrix) -> SparseMatrix:
    """Inverse of a square matrix via elimination on [m | I]."""
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices invert")
    n = m.rows
    aug_entries = dict(m.entries)
    one = m.field.one
    for i in range(n):
        aug_entries[(i, n + i)] = one
    aug = SparseMatrix(n, 2 * n, m.field, aug_entries)
    rows, pivots = rref(aug)
    if len(pivots) != n or any(col >= n for _, col in pivots):
        raise ValueError("matrix is singular")
    entries = {}
    for r, col in pivots:
        for c, v in rows[r].items():
            if c >= n:
                entries[(col, c - n)] = v
    return SparseMatrix(n, n, m.field, entries)


class Echelon:
    """A growing fully-reduced echelon basis of a span of sparse vectors.

    Supports exact reduction of a vector modulo the span (the residue is
    supported away from the pivot coordinates) and membership tests.
    Deterministic: the pivot of each inserted vector is its smallest
    surviving coordinate.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}      # pivot coordinate -> {coord: scalar}, pivot entry 1
        self._with = {}     # coordinate -> set of pivot keys whose row touches it

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivot_cols(self):
        return self.rows.keys()

    def reduce(self, vec):
        """Residue of vec modulo the span; input is not modified."""
        v = dict(vec)
        for p in sorted(v):
            row = self.rows.get(p)
            if row is None:
                continue
            f = v.get(p)
            if not f:
                continue
            for c, w in row.items():
                s = v.get(c)
                s = -f * w if s is None else s - f * w
                if s:
                    v[c] = s
                elif c in v:
                    del v[c]
        return v

    def contains(self, vec):
        return not self.reduce(vec)

    def insert(self, vec) -> bool:
        """Add vec to the span; returns True if the rank grew."""
        res = self.reduce(vec)
        if not res:
            return False
        pivot = min(res)
        inv = self.field.one / res[pivot]
        row = {c: v * inv for c, v in res.items()}
        # back-substitute into existing rows that touch the new pivot
        for key in list(self._with.get(pivot, ())):
            other = self.rows[key]
            f = other.get(pivot)
            if not f:
                continue
            for c, w in row.items():
                s = other.get(c)
                s_new = -f * w if s is None else s - f * w
                if s_new:
                    if s is None:
                        self._with.setdefault(c, set()).add(key)
                    other[c] = s_new
                elif s is not None:
                    del other[c]
                    self._with[c].discard(key)
        self.rows[pivot] = row
        for c in row:
            self._with.setdefault(c, set()).add(pivot)
        return True

    def basis_vectors(self):
        """The reduced spanning rows, keyed deterministically by pivot."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]


# -- homology ----------------------------------------------------------------


@dataclass
class HomologyPresentation:
    """A based presentation of ker(d_out) / im(d_in).

    cycles:          columns span ker d_out
    boundaries:      columns span im d_in (pivot columns of d_in)
    representatives: chosen class representatives (a subset of the cycle
                     basis, deterministic in the basis order)
    projection:      matrix sending any cycle to its coordinates in the
                     representative basis modulo boundaries
    """

    dimension: int
    cycles: SparseMatrix
    boundaries: SparseMatrix
    representatives: SparseMatrix
    projection: SparseMatrix

    def classify(self, vec):
        """Class coordinates of a cycle given as {index: scalar}."""
        return self.projection.apply(vec)


def homology_presentation(d_out: SparseMatrix, d_in: SparseMatrix) -> HomologyPresentation:
    """Presentation of the subquotient at a chain position.

    d_out maps this degree outward, d_in maps into it; requires
    d_out @ d_in == 0.
    """
    if d_out.cols != d_in.rows:
        raise ShapeMismatch(
            f"d_out has {d_out.cols} columns but d_in has {d_in.rows} rows"
        )
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out @ d_in != 0: not a chain complex here")
    field = d_out.field
    n = d_out.cols

    cycles = kernel_basis(d_out)
    boundaries = column_space_basis(d_in)

    ech = Echelon(field)
    for j in range(boundaries.cols):
        ech.insert(boundaries.column(j))
    rep_cols = []
    for j in range(cycles.cols):
        col = cycles.column(j)
        if ech.insert(col):
            rep_cols.append(col)
    representatives = SparseMatrix.from_columns(rep_cols, n, field)
    dim = cycles.cols - boundaries.cols
    assert len(rep_cols) == dim

    # projection: rows b..b+dim-1 of the inverse of [boundaries | reps | fill]
    fill = []
    for i in range(n):
        if ech.insert({i: field.one}):
            fill.append({i: field.one})
    square = SparseMatrix.from_columns(
        [boundaries.column(j) for j in range(boundaries.cols)]
        + rep_cols
        + fill,
        n,
        field,
    )
    if n == 0:
        projection = SparseMatrix.zeros(0, 0, field)
    else:
        inv = invert(square)
        proj_entries = {}
        for (r, c), v in inv.entries.items():
            if boundaries.cols <= r < boundaries.cols + dim:
                proj_entries[(r - boundaries.cols, c)] = v
        projection = SparseMatrix(dim, n, field, proj_entries)

    return HomologyPresentation(
        dimension=dim,
        cycles=cycles,
        boundaries=boundaries,
        representatives=representatives,
        projection=projection,
    )


def induced_on_homology(
    f: SparseMatrix,
    src: HomologyPresentation,
    dst: HomologyPresentation,
    d_out_dst: SparseMatrix,
) -> SparseMatrix:
    """Matrix of the map induced by f in the stored representative bases.

    Checks that f sends the source representatives to cycles of the
    destination; changing representatives conjugates the result.
    """
    if f.cols != src.representatives.rows or f.rows != d_out_dst.cols:
        raise ShapeMismatch("chain map shape does not match the presentations")
    image = f @ src.representatives
    if not (d_out_dst @ image).is_zero():
        raise NotAChainMapAtThisDegree(
            "representatives are not sent to cycles at this degree"
        )
    return dst.projection @ image

"""Hochschild homology of commutative algebras over a pointed simplicial set.

A pair (A, M) of a commutative algebra and a module gives a functor on
finite pointed sets, T |-> M (x) A^(x)(|T|-1), with maps that multiply tensor
factors along fibers (the basepoint fiber acts on the module factor).
Composing with a pointed simplicial set Y yields a simplicial vector space;
its complex under the alternating-sum differential computes the homology of
order Y.  Measurings of the underlying algebra/module pairs and simplicial
maps in Y both induce chain maps, and those commute — that compatibility is
checked exactly here, never assumed.

Conventions fixed throughout (recorded in provenance metadata):
  * tensor slots of degree k are the non-basepoint elements of Y_k in their
    stored index order, with the module index slowest;
  * the differential is the alternating sum of the face maps;
  * the normalized complex is the quotient by the span of degeneracy images.
    It is computed in unit-adapted slot coordinates — each algebra tensor
    slot is re-based so that its first vector is the unit — because in those
    coordinates every degeneracy image is spanned by coordinate tensors, so
    the quotient is the span of the surviving coordinates and no elimination
    is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iter_product

from .algebras import FiniteAlgebra, FiniteModule
from .errors import (
    NotChainMap,
    SquareNotZero,
    TruncationTooShallow,
)
from .linalg import (
    HomologyPresentation,
    SparseMatrix,
    homology_presentation,
    induced_on_homology,
    invert,
)
from .measurings import ComoduleMeasuring, multilinear_from_operators, multilinear_operator
from .simplicial import PointedMap, PointedSimplicialSet, SimplicialMap


class LodayModule:
    """The pair (A, M) viewed as a functor on finite pointed sets.

    Caches the matrices of induced maps; everything it computes is pure, so
    the cache is plain memoization.
    """

    def __init__(self, algebra: FiniteAlgebra, module: FiniteModule):
        if module.algebra != algebra:
            raise ValueError("module is not over the given algebra")
        self.algebra = algebra
        self.module = module
        self.field = algebra.field
        self._map_cache = {}
        self._adapter = None

    def space_dimension(self, set_size: int) -> int:
        """dim of M (x) A^(x)(set_size - 1)."""
        return self.module.dim * self.algebra.dim ** (set_size - 1)

    def basis_tuples(self, set_size: int):
        """Basis of the space at a pointed set of the given size, enumerated
        with the module index slowest; yields (m, (a_1, ..., a_k))."""
        k = set_size - 1
        for m in range(self.module.dim):
            for atup in iter_product(range(self.algebra.dim), repeat=k):
                yield m, atup

    def induced_map(self, f: PointedMap) -> SparseMatrix:
        """Matrix of the map induced by a pointed map f.

        Source basis tensor m (x) a_1 ... a_k goes to n (x) b_1 ... b_l where
        b_j is the product of the a_i over the fiber of j and n is m acted on
        by the product over the basepoint fiber; empty products are the unit.
        """
        cached = self._map_cache.get(f)
        if cached is not None:
            return cached
        src_size = f.source.size
        dst_size = f.target.size
        fiber0 = tuple(i for i in range(1, src_size) if f(i) == 0)
        fibers = tuple(
            tuple(i for i in range(1, src_size) if f(i) == j)
            for j in range(1, dst_size)
        )
        dim_a = self.algebra.dim
        dim_m = self.module.dim
        src_dim = self.space_dimension(src_size)
        dst_dim = self.space_dimension(dst_size)
        entries = {}
        col = 0
        for m, atup in self.basis_tuples(src_size):
            mvec = self.module.act_basis_list(m, tuple(atup[i - 1] for i in fiber0))
            slot_vecs = [mvec]
            for fiber in fibers:
                slot_vecs.append(
                    self.algebra.product_of_basis_list(
                        tuple(atup[i - 1] for i in fiber)
                    )
                )
            for row, coeff in _tensor_entries(slot_vecs, (dim_m,) + (dim_a,) * len(fibers)):
                entries[(row, col)] = coeff
            col += 1
        matrix = SparseMatrix(dst_dim, src_dim, self.field, entries)
        self._map_cache[f] = matrix
        return matrix

    def unit_adapted(self) -> "_UnitAdapter":
        if self._adapter is None:
            self._adapter = _UnitAdapter(self)
        return self._adapter

    def __eq__(self, other):
        if not isinstance(other, LodayModule):
            return NotImplemented
        return self.algebra == other.algebra and self.module == other.module

    def __repr__(self):
        return f"LodayModule(A dim={self.algebra.dim}, M dim={self.module.dim})"


def _tensor_entries(slot_vecs, dims):
    """Expand a tensor product of coefficient vectors into (index, coeff)
    pairs, first slot slowest."""
    partial = [(0, None)]
    for vec, dim in zip(slot_vecs, dims):
        if not vec:
            return
        new = []
        for idx, coeff in partial:
            for i, v in sorted(vec.items()):
                c = v if coeff is None else coeff * v
                new.append((idx * dim + i, c))
        partial = new
    for idx, coeff in partial:
        if coeff:
            yield idx, coeff


class _UnitAdapter:
    """Slotwise change of basis making the unit the first algebra basis vector.

    basis_change columns express the adapted basis (1_A, e_i for the other
    indices in order) in the original basis; the adapted structure constants
    give a LodayModule whose chain spaces are the same spaces in adapted
    coordinates.  In these coordinates the image of every degeneracy is a
    span of coordinate tensors, which makes normalization purely
    combinatorial.
    """

    def __init__(self, loday: LodayModule):
        algebra = loday.algebra
        field = loday.field
        if not algebra.unit:
            raise ValueError("algebra has a zero unit vector")
        u0 = min(algebra.unit)
        others = [i for i in range(algebra.dim) if i != u0]
        columns = [algebra.unit_vector()] + [{i: field.one} for i in others]
        self.basis_change = SparseMatrix.from_columns(columns, algebra.dim, field)
        self.basis_change_inv = invert(self.basis_change)
        self.slot_basis = ("1",) + tuple(algebra.basis[i] for i in others)

        mul = {}
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                prod = algebra.multiply(
                    self.basis_change.column(i), self.basis_change.column(j)
                )
                adapted = self.basis_change_inv.apply(prod)
                if adapted:
                    mul[(i, j)] = adapted
        unit = {0: field.one}
        adapted_algebra = FiniteAlgebra(
            field, tuple(f"slot{i}" for i in range(algebra.dim)), mul, unit
        )
        action = {}
        for i in range(algebra.dim):
            avec = self.basis_change.column(i)
            for j in range(loday.module.dim):
                acted = loday.module.act(avec, {j: field.one})
                if acted:
                    action[(i, j)] = acted
        adapted_module = FiniteModule(adapted_algebra, loday.module.basis, action)
        self.loday = LodayModule(adapted_algebra, adapted_module)

    def conjugate_operator(self, op, other: "_UnitAdapter") -> SparseMatrix:
        """Rewrite an operator matrix (other's algebra -> this algebra) in
        adapted coordinates on both sides."""
        return self.basis_change_inv @ op @ other.basis_change


def loday_space(L: LodayModule, size_or_set) -> int:
    """Dimension of the chain space over a pointed set (or its size)."""
    size = size_or_set if isinstance(size_or_set, int) else size_or_set.size
    return L.space_dimension(size)


def loday_map(L: LodayModule, f: PointedMap) -> SparseMatrix:
    return L.induced_map(f)


class ChainComplex:
    """Degrees 0..N with differentials diff(k): degree k -> degree k-1.

    diff(0) is the zero map out of degree 0 (a 0-row matrix) so that
    homology at degree 0 needs no special casing.  For normalized complexes,
    coordinates[k] lists the ambient adapted-basis indices whose classes form
    the quotient basis, and pivots[k] is the complementary (degenerate) index
    set used when descending degreewise maps.
    """

    def __init__(self, field, dims, diffs, provenance, coordinates=None,
                 pivots=None):
        self.field = field
        self.dims = tuple(dims)
        self.diffs = tuple(diffs)
        self.provenance = dict(provenance)
        self.coordinates = coordinates
        self.pivots = pivots
        self._homology_cache = {}

    @property
    def truncation(self):
        return len(self.dims) - 1

    @property
    def normalized(self):
        return self.coordinates is not None

    def dimension(self, k):
        return self.dims[k]

    def diff(self, k) -> SparseMatrix:
        if not (0 <= k <= self.truncation):
            raise TruncationTooShallow(
                f"differential {k} needs truncation >= {k}, have {self.truncation}"
            )
        return self.diffs[k]

    def homology(self, n) -> HomologyPresentation:
        """Presentation of the homology at degree n (needs n+1 <= truncation)."""
        if n < 0:
            raise TruncationTooShallow("homology degree must be nonnegative")
        if n + 1 > self.truncation:
            raise TruncationTooShallow(
                f"homology at degree {n} needs truncation >= {n + 1}, "
                f"have {self.truncation}"
            )
        cached = self._homology_cache.get(n)
        if cached is None:
            cached = homology_presentation(self.diff(n), self.diff(n + 1))
            self._homology_cache[n] = cached
        return cached

    def __repr__(self):
        label = self.provenance.get("space", "?")
        norm = "normalized" if self.provenance.get("normalized") else "unnormalized"
        return f"ChainComplex({label}, {norm}, dims={self.dims})"


def _degeneracy_slot_masks(y: PointedSimplicialSet, k: int):
    """For each degeneracy into level k, the bitmask of tensor slots its
    image touches (slot s corresponds to element s+1 of Y_k)."""
    masks = []
    for j in range(k):
        mask = 0
        for value in y.degeneracy(k - 1, j).values:
            if value != 0:
                mask |= 1 << (value - 1)
        masks.append(mask)
    return masks


def _degenerate_index_set(L: LodayModule, y: PointedSimplicialSet, k: int):
    """Indices of adapted-basis tensors spanning the degenerate subspace at
    level k: those whose non-unit slots all sit inside the image of a single
    degeneracy."""
    masks = _degeneracy_slot_masks(y, k)
    if not masks:
        return set()
    slots = y.level(k).size - 1
    dim_a = L.algebra.dim
    dim_m = L.module.dim
    degenerate = set()
    idx = 0
    for _m in range(dim_m):
        for atup in iter_product(range(dim_a), repeat=slots):
            pattern = 0
            for pos, a in enumerate(atup):
                if a != 0:
                    pattern |= 1 << pos
            if any(pattern & ~mask == 0 for mask in masks):
                degenerate.add(idx)
            idx += 1
    return degenerate


def _submatrix(matrix, row_positions, col_coords):
    """Restrict to the given columns and project away non-listed rows."""
    entries = {}
    col_positions = {orig: pos for pos, orig in enumerate(col_coords)}
    for (r, c), v in matrix.entries.items():
        cpos = col_positions.get(c)
        if cpos is None:
            continue
        rpos = row_positions.get(r)
        if rpos is None:
            continue
        entries[(rpos, cpos)] = v
    return SparseMatrix(
        len(row_positions), len(col_coords), matrix.field, entries
    )


def chain_complex(L: LodayModule, y: PointedSimplicialSet,
                  normalized: bool = True) -> ChainComplex:
    """The chain complex of (A, M) over y, with d.d = 0 verified exactly."""
    n = y.truncation
    provenance = {
        "space": y.name or "?",
        "normalized": normalized,
        "slot_order": "non-basepoint simplices in stored index order, module slowest",
    }
    if not normalized:
        dims = [loday_space(L, y.level(k)) for k in range(n + 1)]
        diffs = [SparseMatrix.zeros(0, dims[0], L.field)]
        for k in range(1, n + 1):
            diffs.append(_alternating_sum(L, y, k, dims))
        cc = ChainComplex(L.field, dims, diffs, provenance)
        _verify_square_zero(cc)
        return cc

    adapter = L.unit_adapted()
    lp = adapter.loday
    dims = [loday_space(lp, y.level(k)) for k in range(n + 1)]
    full_diffs = [SparseMatrix.zeros(0, dims[0], L.field)]
    for k in range(1, n + 1):
        full_diffs.append(_alternating_sum(lp, y, k, dims))
    pivots = [_degenerate_index_set(lp, y, k) for k in range(n + 1)]
    coords = [
        tuple(i for i in range(dims[k]) if i not in pivots[k])
        for k in range(n + 1)
    ]
    norm_dims = [len(c) for c in coords]
    norm_diffs = [SparseMatrix.zeros(0, norm_dims[0], L.field)]
    for k in range(1, n + 1):
        row_positions = {orig: pos for pos, orig in enumerate(coords[k - 1])}
        norm_diffs.append(_submatrix(full_diffs[k], row_positions, coords[k]))
    provenance["slot_basis"] = list(adapter.slot_basis)
    provenance["coordinates"] = [list(c) for c in coords]
    cc = ChainComplex(
        L.field, norm_dims, norm_diffs, provenance,
        coordinates=tuple(coords), pivots=tuple(pivots),
    )
    _verify_square_zero(cc)
    return cc


def _alternating_sum(L, y, k, dims):
    total = SparseMatrix.zeros(dims[k - 1], dims[k], L.field)
    minus_one = -L.field.one
    for i in range(k + 1):
        face_matrix = loday_map(L, y.face(k, i))
        total = total + (face_matrix if i % 2 == 0 else face_matrix.scale(minus_one))
    return total


def _verify_square_zero(cc: ChainComplex):
    for k in range(2, cc.truncation + 1):
        if not (cc.diff(k - 1) @ cc.diff(k)).is_zero():
            raise SquareNotZero(f"d_{k - 1} after d_{k} is nonzero")


def homology(L: LodayModule, y: PointedSimplicialSet, n: int,
             normalized: bool = True) -> HomologyPresentation:
    """Homology of order y at degree n."""
    return chain_complex(L, y, normalized).homology(n)


@dataclass
class ChainMap:
    """Degreewise matrices between two complexes, chain identity verified."""

    source: ChainComplex
    target: ChainComplex
    components: tuple

    def component(self, k) -> SparseMatrix:
        return self.components[k]


def _verify_chain_map(src: ChainComplex, dst: ChainComplex, comps, what):
    for k in range(1, src.truncation + 1):
        if dst.diff(k) @ comps[k] != comps[k - 1] @ src.diff(k):
            raise NotChainMap(f"{what}: chain identity fails at degree {k}")


def _descend(matrix, src: ChainComplex, dst: ChainComplex, k, what):
    """Push a degreewise map (in adapted coordinates) to the quotients.

    Requires degenerate coordinates to be sent into degenerate coordinates;
    projecting away the target's degenerate rows then realizes the quotient
    map.
    """
    src_pivots = src.pivots[k]
    dst_pivots = dst.pivots[k]
    for (r, c) in matrix.entries:
        if c in src_pivots and r not in dst_pivots:
            raise NotChainMap(
                f"{what}: degenerate chains are not sent to degenerate chains "
                f"at degree {k}"
            )
    row_positions = {orig: pos for pos, orig in enumerate(dst.coordinates[k])}
    return _submatrix(matrix, row_positions, src.coordinates[k])


def measuring_chain_map(phi: ComoduleMeasuring, coeffs, L_src: LodayModule,
                        L_dst: LodayModule, y: PointedSimplicialSet,
                        normalized: bool = True) -> ChainMap:
    """Chain map induced by an element of the measuring comodule.

    The degree-k component applies the comodule operator to the module slot
    and the measuring operators to the algebra slots of Y_k, in slot order.
    The chain identity is verified exactly; on the normalized complexes the
    map is checked to descend to the quotients first.
    """
    if L_src.algebra != phi.measuring.source or L_src.module != phi.source:
        raise ValueError("source pair does not match the measuring")
    if L_dst.algebra != phi.measuring.target or L_dst.module != phi.target:
        raise ValueError("target pair does not match the measuring")
    src_cc = chain_complex(L_src, y, normalized)
    dst_cc = chain_complex(L_dst, y, normalized)
    if normalized:
        src_adapter = L_src.unit_adapted()
        dst_adapter = L_dst.unit_adapted()
        psi_ops = [
            dst_adapter.conjugate_operator(op, src_adapter)
            for op in phi.measuring.operators
        ]
        phi_ops = list(phi.operators)  # module bases are not re-based
        comps = []
        for k in range(y.truncation + 1):
            raw = multilinear_from_operators(
                phi.comodule, phi_ops, psi_ops, coeffs, y.level(k).size - 1
            )
            comps.append(_descend(raw, src_cc, dst_cc, k, "measuring map"))
    else:
        comps = [
            multilinear_operator(phi, coeffs, y.level(k).size - 1)
            for k in range(y.truncation + 1)
        ]
    _verify_chain_map(src_cc, dst_cc, comps, "measuring map")
    return ChainMap(src_cc, dst_cc, tuple(comps))


def simplicial_chain_map(g: SimplicialMap, L: LodayModule,
                         normalized: bool = True) -> ChainMap:
    """Chain map induced by a map of pointed simplicial sets."""
    src_cc = chain_complex(L, g.source, normalized)
    dst_cc = chain_complex(L, g.target, normalized)
    worker = L.unit_adapted().loday if normalized else L
    raw = [loday_map(worker, g.level(k)) for k in range(g.source.truncation + 1)]
    if normalized:
        comps = [
            _descend(raw[k], src_cc, dst_cc, k, "simplicial map")
            for k in range(g.source.truncation + 1)
        ]
    else:
        comps = raw
    _verify_chain_map(src_cc, dst_cc, comps, "simplicial map")
    return ChainMap(src_cc, dst_cc, tuple(comps))


def homology_map(cm: ChainMap, n: int) -> SparseMatrix:
    """Matrix induced on homology at degree n, in the stored representative
    bases of the two complexes."""
    return induced_on_homology(
        cm.component(n),
        cm.source.homology(n),
        cm.target.homology(n),
        cm.target.diff(n),
    )


@dataclass
class HomologySquare:
    equal: bool
    lhs: SparseMatrix
    rhs: SparseMatrix


@dataclass
class SquareReport:
    """Outcome of the compatibility square between a measuring-induced map
    and a simplicial-map-induced map.

    chain_equal[k] compares the two raw degree-k composites (computed from
    the operators directly, so it is meaningful even for invalid measuring
    data); homology[n] compares the induced matrices on homology.  A note is
    recorded when the homology side cannot be constructed at all.
    """

    chain_equal: list
    chain_mismatches: dict
    homology: dict = dc_field(default_factory=dict)
    note: str = ""

    @property
    def ok(self):
        return (
            all(self.chain_equal)
            and not self.note
            and all(sq.equal for sq in self.homology.values())
        )


def verify_naturality_square(g: SimplicialMap, phi: ComoduleMeasuring, coeffs,
                             L_src: LodayModule, L_dst: LodayModule, degrees,
                             normalized: bool = True) -> SquareReport:
    """Check that the measuring-induced maps commute with the maps induced
    by g, at chain level (all degrees, unnormalized operators) and on
    homology (each requested degree)."""
    if isinstance(degrees, int):
        degrees = [degrees]
    y, z = g.source, g.target

    chain_equal = []
    mismatches = {}
    for k in range(y.truncation + 1):
        lhs = loday_map(L_dst, g.level(k)) @ multilinear_operator(
            phi, coeffs, y.level(k).size - 1
        )
        rhs = multilinear_operator(
            phi, coeffs, z.level(k).size - 1
        ) @ loday_map(L_src, g.level(k))
        equal = lhs == rhs
        chain_equal.append(equal)
        if not equal:
            mismatches[k] = (lhs, rhs)

    report = SquareReport(chain_equal=chain_equal, chain_mismatches=mismatches)
    try:
        meas_y = measuring_chain_map(phi, coeffs, L_src, L_dst, y, normalized)
        meas_z = measuring_chain_map(phi, coeffs, L_src, L_dst, z, normalized)
        sim_src = simplicial_chain_map(g, L_src, normalized)
        sim_dst = simplicial_chain_map(g, L_dst, normalized)
        for n in degrees:
            lhs = homology_map(sim_dst, n) @ homology_map(meas_y, n)
            rhs = homology_map(meas_z, n) @ homology_map(sim_src, n)
            report.homology[n] = HomologySquare(lhs == rhs, lhs, rhs)
    except (NotChainMap, SquareNotZero) as exc:
        report.note = f"homology side not computable: {exc}"
    return report

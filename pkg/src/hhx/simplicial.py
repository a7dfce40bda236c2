"""Truncated pointed simplicial sets with explicit face/degeneracy tables.

Levels are plain pointed sets {0, ..., n-1} with the basepoint at index 0.
Built-in models: the point, the circle (one nondegenerate 0- and 1-cell),
minimal spheres (one nondegenerate cell in dimension d), wedges and
products.  Everything is truncated at a fixed level N; the simplicial
identities are checked wherever both sides are defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidDimension, TruncationMismatch
from .validation import ValidationReport


@dataclass(frozen=True)
class PointedSet:
    """A finite pointed set {0, ..., size-1} with basepoint 0."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a pointed set needs at least the basepoint")


@dataclass(frozen=True)
class PointedMap:
    """A basepoint-preserving map between pointed sets, as a value table."""

    source: PointedSet
    target: PointedSet
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.source.size:
            raise ValueError("value table length does not match the source")
        for v in self.values:
            if not (0 <= v < self.target.size):
                raise ValueError(f"value {v} outside the target")
        if self.values[0] != 0:
            raise ValueError("map does not preserve the basepoint")

    def __call__(self, i):
        return self.values[i]

    @classmethod
    def identity(cls, pset):
        return cls(pset, pset, tuple(range(pset.size)))

    def compose(self, other: "PointedMap") -> "PointedMap":
        """self after other."""
        if other.target != self.source:
            raise ValueError("composition shapes do not match")
        return PointedMap(
            other.source, self.target,
            tuple(self.values[v] for v in other.values),
        )


class PointedSimplicialSet:
    """Levels Y_0..Y_N with face maps d_i: Y_k -> Y_{k-1} and degeneracies
    s_j: Y_k -> Y_{k+1}, all pointed."""

    def __init__(self, truncation, levels, faces, degeneracies, name=""):
        self.truncation = truncation
        self.levels = tuple(levels)
        if len(self.levels) != truncation + 1:
            raise ValueError("need one level per degree 0..N")
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        self.name = name
        for k in range(1, truncation + 1):
            for i in range(k + 1):
                f = self.faces.get((k, i))
                if f is None:
                    raise ValueError(f"missing face ({k},{i})")
                if f.source != self.levels[k] or f.target != self.levels[k - 1]:
                    raise ValueError(f"face ({k},{i}) has the wrong shape")
        for k in range(truncation):
            for j in range(k + 1):
                s = self.degeneracies.get((k, j))
                if s is None:
                    raise ValueError(f"missing degeneracy ({k},{j})")
                if s.source != self.levels[k] or s.target != self.levels[k + 1]:
                    raise ValueError(f"degeneracy ({k},{j}) has the wrong shape")

    def level(self, k) -> PointedSet:
        return self.levels[k]

    def face(self, k, i) -> PointedMap:
        return self.faces[(k, i)]

    def degeneracy(self, k, j) -> PointedMap:
        """s_j out of level k, landing in level k+1."""
        return self.degeneracies[(k, j)]

    @property
    def sizes(self):
        return tuple(l.size for l in self.levels)

    def __eq__(self, other):
        if not isinstance(other, PointedSimplicialSet):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self.levels == other.levels
            and self.faces == other.faces
            and self.degeneracies == other.degeneracies
        )

    def __repr__(self):
        label = self.name or "?"
        return f"PointedSimplicialSet({label}, N={self.truncation}, sizes={self.sizes})"


@dataclass
class SimplicialMap:
    """A levelwise pointed map commuting with faces and degeneracies."""

    source: PointedSimplicialSet
    target: PointedSimplicialSet
    levels: tuple

    def __post_init__(self):
        self.levels = tuple(self.levels)
        if self.source.truncation != self.target.truncation:
            raise TruncationMismatch("source and target truncations differ")
        if len(self.levels) != self.source.truncation + 1:
            raise ValueError("need one component per level")
        for k, g in enumerate(self.levels):
            if g.source != self.source.level(k) or g.target != self.target.level(k):
                raise ValueError(f"component {k} has the wrong shape")

    def level(self, k) -> PointedMap:
        return self.levels[k]


# -- validators ----------------------------------------------------------------


def validate_simplicial_set(y: PointedSimplicialSet) -> ValidationReport:
    """Check pointedness and every simplicial identity instance within the
    truncation; failures locate the offending (level, i, j)."""
    report = ValidationReport()
    n = y.truncation

    loc = None
    maps = [((k, i), y.face(k, i)) for k in range(1, n + 1) for i in range(k + 1)]
    maps += [((k, j), y.degeneracy(k, j)) for k in range(n) for j in range(k + 1)]
    for key, f in maps:
        if f.values[0] != 0:
            loc = key
            break
    report.add("pointedness", loc is None, loc)

    loc = None
    for k in range(2, n + 1):
        for j in range(k + 1):
            for i in range(j):
                lhs = y.face(k - 1, i).compose(y.face(k, j))
                rhs = y.face(k - 1, j - 1).compose(y.face(k, i))
                if lhs != rhs:
                    loc = (k, i, j)
                    break
            if loc:
                break
        if loc:
            break
    report.add("face-face", loc is None, loc)

    loc = None
    for k in range(n - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                lhs = y.degeneracy(k + 1, i).compose(y.degeneracy(k, j))
                rhs = y.degeneracy(k + 1, j + 1).compose(y.degeneracy(k, i))
                if lhs != rhs:
                    loc = (k, i, j)
                    break
            if loc:
                break
        if loc:
            break
    report.add("degeneracy-degeneracy", loc is None, loc)

    loc = None
    for k in range(n):
        # d_i s_j out of level k, back into level k
        for j in range(k + 1):
            for i in range(k + 2):
                got = y.face(k + 1, i).compose(y.degeneracy(k, j))
                if i == j or i == j + 1:
                    want = PointedMap.identity(y.level(k))
                elif i < j:
                    want = y.degeneracy(k - 1, j - 1).compose(y.face(k, i))
                else:
                    want = y.degeneracy(k - 1, j).compose(y.face(k, i - 1))
                if got != want:
                    loc = (k, i, j)
                    break
            if loc:
                break
        if loc:
            break
    report.add("face-degeneracy", loc is None, loc)
    return report


def validate_simplicial_map(g: SimplicialMap) -> ValidationReport:
    """Check levelwise commutation with faces and degeneracies."""
    report = ValidationReport()
    y, z = g.source, g.target
    n = y.truncation

    loc = None
    for k in range(1, n + 1):
        for i in range(k + 1):
            lhs = g.level(k - 1).compose(y.face(k, i))
            rhs = z.face(k, i).compose(g.level(k))
            if lhs != rhs:
                loc = (k, i)
                break
        if loc:
            break
    report.add("commutes-with-faces", loc is None, loc)

    loc = None
    for k in range(n):
        for j in range(k + 1):
            lhs = g.level(k + 1).compose(y.degeneracy(k, j))
            rhs = z.degeneracy(k, j).compose(g.level(k))
            if lhs != rhs:
                loc = (k, j)
                break
        if loc:
            break
    report.add("commutes-with-degeneracies", loc is None, loc)
    return report


# -- built-in models -------------------------------------------------------------


def point(n: int) -> PointedSimplicialSet:
    """Every level a singleton."""
    if n < 0:
        raise InvalidDimension("truncation must be nonnegative")
    single = PointedSet(1)
    faces = {
        (k, i): PointedMap(single, single, (0,))
        for k in range(1, n + 1)
        for i in range(k + 1)
    }
    degens = {
        (k, j): PointedMap(single, single, (0,))
        for k in range(n)
        for j in range(k + 1)
    }
    return PointedSimplicialSet(n, [single] * (n + 1), faces, degens, name="point")


def circle(n: int) -> PointedSimplicialSet:
    """The circle as a 1-simplex with both endpoints collapsed.

    Level k is {0, 1, ..., k}: element j >= 1 is the class of the monotone
    map off the interval that jumps at position j; 0 is the collapsed
    boundary.
    """
    if n < 0:
        raise InvalidDimension("truncation must be nonnegative")
    levels = [PointedSet(k + 1) for k in range(n + 1)]

    def face_value(k, i, j):
        if j == 0:
            return 0
        if i < j:
            return j - 1
        return j if j <= k - 1 else 0

    def degen_value(i, j):
        if j == 0:
            return 0
        return j + 1 if i < j else j

    faces = {}
    for k in range(1, n + 1):
        for i in range(k + 1):
            faces[(k, i)] = PointedMap(
                levels[k], levels[k - 1],
                tuple(face_value(k, i, j) for j in range(k + 1)),
            )
    degens = {}
    for k in range(n):
        for j in range(k + 1):
            degens[(k, j)] = PointedMap(
                levels[k], levels[k + 1],
                tuple(degen_value(j, x) for x in range(k + 1)),
            )
    return PointedSimplicialSet(n, levels, faces, degens, name="circle")


def _surjections(k, d):
    """Monotone surjections [k] -> [d] as value tuples, lexicographic."""
    out = []

    def extend(prefix, last):
        if len(prefix) == k + 1:
            if last == d:
                out.append(tuple(prefix))
            return
        remaining = k + 1 - len(prefix)
        for v in (last, last + 1):
            if v > d:
                continue
            # must still be able to climb to d
            if d - v <= remaining - 1:
                extend(prefix + [v], v)

    extend([0], 0)
    return sorted(out)


def sphere(d: int, n: int) -> PointedSimplicialSet:
    """Minimal model of the d-sphere: one nondegenerate cell in dimension d,
    every face of it at the basepoint.

    Non-basepoint k-simplices are encoded by monotone surjections [k] -> [d]
    (the degeneracy pattern of the top cell); faces drop a position and land
    at the basepoint when the result is no longer surjective.
    """
    if d < 1:
        raise InvalidDimension("sphere dimension must be >= 1")
    if n < d:
        raise InvalidDimension(f"truncation {n} too shallow for a {d}-sphere")
    elems = []
    index = []
    for k in range(n + 1):
        level_elems = _surjections(k, d) if k >= d else []
        elems.append(level_elems)
        index.append({u: pos + 1 for pos, u in enumerate(level_elems)})
    levels = [PointedSet(1 + len(e)) for e in elems]

    full = set(range(d + 1))
    faces = {}
    for k in range(1, n + 1):
        for i in range(k + 1):
            values = [0]
            for u in elems[k]:
                v = u[:i] + u[i + 1 :]
                values.append(index[k - 1].get(v, 0) if set(v) == full else 0)
            faces[(k, i)] = PointedMap(levels[k], levels[k - 1], tuple(values))
    degens = {}
    for k in range(n):
        for j in range(k + 1):
            values = [0]
            for u in elems[k]:
                w = u[: j + 1] + u[j:]
                values.append(index[k + 1][w])
            degens[(k, j)] = PointedMap(levels[k], levels[k + 1], tuple(values))
    return PointedSimplicialSet(n, levels, faces, degens, name=f"sphere:{d}")


def sphere_level_size(d, k):
    """1 + C(k, k-d) for k >= d, else 1."""
    return 1 + comb(k, k - d) if k >= d else 1


def wedge(y: PointedSimplicialSet, z: PointedSimplicialSet) -> PointedSimplicialSet:
    """Glue two simplicial sets at their basepoints, levelwise."""
    if y.truncation != z.truncation:
        raise TruncationMismatch(
            f"truncations differ: {y.truncation} vs {z.truncation}"
        )
    n = y.truncation
    levels = [PointedSet(y.level(k).size + z.level(k).size - 1) for k in range(n + 1)]

    def glue(fy, fz, k_src, k_dst):
        ny_src = y.level(k_src).size
        ny_dst = y.level(k_dst).size
        values = [0]
        for e in range(1, ny_src):
            values.append(fy(e))
        for e in range(1, z.level(k_src).size):
            v = fz(e)
            values.append(0 if v == 0 else ny_dst - 1 + v)
        return PointedMap(levels[k_src], levels[k_dst], tuple(values))

    faces = {
        (k, i): glue(y.face(k, i), z.face(k, i), k, k - 1)
        for k in range(1, n + 1)
        for i in range(k + 1)
    }
    degens = {
        (k, j): glue(y.degeneracy(k, j), z.degeneracy(k, j), k, k + 1)
        for k in range(n)
        for j in range(k + 1)
    }
    name = f"wedge({y.name or '?'},{z.name or '?'})"
    return PointedSimplicialSet(n, levels, faces, degens, name=name)


def product(y: PointedSimplicialSet, z: PointedSimplicialSet) -> PointedSimplicialSet:
    """Levelwise cartesian product with diagonal structure maps; the
    basepoint is the pair of basepoints."""
    if y.truncation != z.truncation:
        raise TruncationMismatch(
            f"truncations differ: {y.truncation} vs {z.truncation}"
        )
    n = y.truncation
    levels = [PointedSet(y.level(k).size * z.level(k).size) for k in range(n + 1)]

    def pair(fy, fz, k_src, k_dst):
        nz_src = z.level(k_src).size
        nz_dst = z.level(k_dst).size
        values = []
        for a in range(y.level(k_src).size):
            for b in range(nz_src):
                values.append(fy(a) * nz_dst + fz(b))
        return PointedMap(levels[k_src], levels[k_dst], tuple(values))

    faces = {
        (k, i): pair(y.face(k, i), z.face(k, i), k, k - 1)
        for k in range(1, n + 1)
        for i in range(k + 1)
    }
    degens = {
        (k, j): pair(y.degeneracy(k, j), z.degeneracy(k, j), k, k + 1)
        for k in range(n)
        for j in range(k + 1)
    }
    name = f"product({y.name or '?'},{z.name or '?'})"
    return PointedSimplicialSet(n, levels, faces, degens, name=name)


def collapse_map(y: PointedSimplicialSet) -> SimplicialMap:
    """The unique map from y to the point."""
    target = point(y.truncation)
    levels = [
        PointedMap(y.level(k), target.level(k), (0,) * y.level(k).size)
        for k in range(y.truncation + 1)
    ]
    return SimplicialMap(y, target, tuple(levels))


def relabel(y: PointedSimplicialSet, perms) -> tuple:
    """Apply a levelwise permutation (fixing the basepoint) to the elements.

    perms[k] is a tuple sending old index -> new index with perms[k][0] == 0.
    Returns (relabeled set, the isomorphism from y to it).
    """
    n = y.truncation
    perms = [tuple(p) for p in perms]
    for k, p in enumerate(perms):
        if sorted(p) != list(range(y.level(k).size)) or p[0] != 0:
            raise ValueError(f"level {k}: not a basepoint-fixing permutation")
    inv = [tuple(sorted(range(len(p)), key=p.__getitem__)) for p in perms]

    def push(f, k_src, k_dst):
        values = tuple(
            perms[k_dst][f(inv[k_src][x])] for x in range(y.level(k_src).size)
        )
        return PointedMap(y.level(k_src), y.level(k_dst), values)

    faces = {
        (k, i): push(y.face(k, i), k, k - 1)
        for k in range(1, n + 1)
        for i in range(k + 1)
    }
    degens = {
        (k, j): push(y.degeneracy(k, j), k, k + 1)
        for k in range(n)
        for j in range(k + 1)
    }
    relabeled = PointedSimplicialSet(
        n, y.levels, faces, degens, name=f"relabel({y.name or '?'})"
    )
    iso = SimplicialMap(
        y, relabeled,
        tuple(
            PointedMap(y.level(k), y.level(k), perms[k]) for k in range(n + 1)
        ),
    )
    return relabeled, iso


def nondegenerate_counts(y: PointedSimplicialSet):
    """Per level, the number of simplices not in the image of any degeneracy."""
    counts = [y.level(0).size]
    for k in range(1, y.truncation + 1):
        hit = set()
        for j in range(k):
            hit.update(y.degeneracy(k - 1, j).values)
        counts.append(y.level(k).size - len(hit))
    return tuple(counts)


# -- built-in name grammar -------------------------------------------------------


def _split_args(body):
    depth = 0
    for pos, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:pos], body[pos + 1 :]
    raise ValueError(f"expected two comma-separated arguments in {body!r}")


def from_name(name: str, truncation: int) -> PointedSimplicialSet:
    """Build a named model: point, circle, sphere:d, wedge(a,b), product(a,b)."""
    name = name.strip()
    if name == "point":
        return point(truncation)
    if name == "circle":
        return circle(truncation)
    if name.startswith("sphere:"):
        try:
            d = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad sphere dimension in {name!r}") from None
        return sphere(d, truncation)
    for head, builder in (("wedge", wedge), ("product", product)):
        prefix = head + "("
        if name.startswith(prefix) and name.endswith(")"):
            left, right = _split_args(name[len(prefix) : -1])
            return builder(
                from_name(left, truncation), from_name(right, truncation)
            )
    raise ValueError(f"unknown simplicial set name {name!r}")

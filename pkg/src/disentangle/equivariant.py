"""Chain complexes over Q with an action of the symmetric group S_k.

The action is given by one matrix per adjacent transposition s_i and per
degree.  Generator matrices must be signed permutation matrices, as they are
for simplicial actions; this keeps composition of group elements cheap and
validation exact.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial

from .errors import DimensionMismatch, GroupTooLarge, InvalidAction, NotAChainComplex
from .linalg import SparseMatrix, coordinates, image_basis, pivot_positions, rank

MAX_GROUP_K = 7


class ChainComplex:
    """Finite chain complex C_0 <- C_1 <- ... <- C_top.

    ``boundaries[q - 1]`` is the matrix of d_q : C_q -> C_{q-1} (shape
    ``basis_sizes[q-1] x basis_sizes[q]``).
    """

    def __init__(self, basis_sizes: Sequence[int], boundaries: Sequence[SparseMatrix] = (),
                 check: bool = True):
        self.basis_sizes = tuple(basis_sizes)
        if not self.basis_sizes:
            raise DimensionMismatch("a chain complex needs at least degree 0")
        self.top_degree = len(self.basis_sizes) - 1
        boundaries = list(boundaries)
        if not boundaries:
            boundaries = [SparseMatrix.zeros(self.basis_sizes[q - 1], self.basis_sizes[q])
                          for q in range(1, self.top_degree + 1)]
        if len(boundaries) != self.top_degree:
            raise DimensionMismatch(f"expected {self.top_degree} boundary maps, got {len(boundaries)}")
        for q, d in enumerate(boundaries, start=1):
            if d.shape != (self.basis_sizes[q - 1], self.basis_sizes[q]):
                raise DimensionMismatch(f"d_{q} has shape {d.shape}, expected "
                                        f"{(self.basis_sizes[q - 1], self.basis_sizes[q])}")
        self.boundaries = tuple(boundaries)
        if check:
            bad = self.boundary_violations()
            if bad:
                raise NotAChainComplex("; ".join(bad))

    def dim(self, q: int) -> int:
        return self.basis_sizes[q] if 0 <= q <= self.top_degree else 0

    def boundary(self, q: int) -> SparseMatrix:
        """d_q, with zero maps outside the stored range."""
        if 1 <= q <= self.top_degree:
            return self.boundaries[q - 1]
        return SparseMatrix.zeros(self.dim(q - 1), self.dim(q))

    def boundary_violations(self) -> list[str]:
        out = []
        for q in range(2, self.top_degree + 1):
            if not (self.boundary(q - 1) @ self.boundary(q)).is_zero():
                out.append(f"d_{q - 1} o d_{q} != 0")
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.basis_sizes))

    def __repr__(self):
        return f"ChainComplex(basis_sizes={self.basis_sizes})"


def homology_dims(c: ChainComplex) -> list[int]:
    ranks = [rank(c.boundary(q)) for q in range(0, c.top_degree + 2)]
    return [c.dim(q) - ranks[q] - ranks[q + 1] for q in range(c.top_degree + 1)]


# signed permutations

@dataclass(frozen=True)
class SignedPermutation:
    targets: tuple
    signs: tuple

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_matrix(cls, m: SparseMatrix) -> SignedPermutation:
        if m.rows != m.cols:
            raise InvalidAction(f"action matrix must be square, got {m.shape}")
        targets = [None] * m.cols
        signs = [0] * m.cols
        for (i, j), v in m.items():
            if targets[j] is not None or v not in (1, -1):
                raise InvalidAction("generator matrix is not a signed permutation")
            targets[j], signs[j] = i, int(v)
        if None in targets or len(set(targets)) != m.cols:
            raise InvalidAction("generator matrix is not a signed permutation")
        return cls(tuple(targets), tuple(signs))

    def then(self, other: SignedPermutation) -> SignedPermutation:
        """Matrix product ``self @ other`` (apply ``other`` first)."""
        return SignedPermutation(tuple(self.targets[t] for t in other.targets),
                                 tuple(s * self.signs[t] for t, s in zip(other.targets, other.signs)))

    def to_matrix(self) -> SparseMatrix:
        n = len(self.targets)
        return SparseMatrix(n, n, {(t, j): s for j, (t, s) in enumerate(zip(self.targets, self.signs))})


@dataclass(frozen=True)
class SymmetricAction:
    """``generators[i][q]`` is the matrix of s_{i+1} on C_q."""
    k: int
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        if self.k < 1:
            raise InvalidAction("k must be positive")
        if len(self.generators) != self.k - 1:
            raise InvalidAction(f"S_{self.k} needs {self.k - 1} generators, got {len(self.generators)}")

    @classmethod
    def trivial(cls, k: int, basis_sizes: Sequence[int]) -> SymmetricAction:
        return cls(k, [[SparseMatrix.identity(n) for n in basis_sizes] for _ in range(k - 1)])


class EquivariantComplex:
    def __init__(self, complex: ChainComplex, action: SymmetricAction, check: bool = True):
        self.complex = complex
        self.action = action
        self.simplicial = None
        self._element_cache: dict = {}
        for i, per_degree in enumerate(action.generators):
            if len(per_degree) != complex.top_degree + 1:
                raise DimensionMismatch(f"s_{i + 1} given on {len(per_degree)} degrees, "
                                        f"complex has {complex.top_degree + 1}")
            for q, g in enumerate(per_degree):
                if g.shape != (complex.dim(q), complex.dim(q)):
                    raise DimensionMismatch(f"s_{i + 1} on C_{q} has shape {g.shape}")
        if check:
            report = validate(self)
            if not report.ok:
                raise InvalidAction("; ".join(report.violations))

    @property
    def k(self) -> int:
        return self.action.k

    @classmethod
    def trivial(cls, complex: ChainComplex, k: int = 1) -> EquivariantComplex:
        return cls(complex, SymmetricAction.trivial(k, complex.basis_sizes))

    @classmethod
    def point(cls) -> EquivariantComplex:
        return cls.trivial(ChainComplex([1]))

    def generator(self, i: int, q: int) -> SparseMatrix:
        return self.action.generators[i][q]

    def group_elements(self, q: int) -> list[tuple[tuple, int, SignedPermutation]]:
        """All (permutation, sign, action on C_q) for the group S_k."""
        if q in self._element_cache:
            return self._element_cache[q]
        k = self.k
        if k > MAX_GROUP_K:
            raise GroupTooLarge(f"S_{k} has {factorial(k)} elements; cap is k <= {MAX_GROUP_K}")
        gens = [SignedPermutation.from_matrix(self.generator(i, q)) for i in range(k - 1)]
        ident = tuple(range(k))
        seen = {ident: (1, SignedPermutation.identity(self.complex.dim(q)))}
        frontier = [ident]
        while frontier:
            nxt = []
            for perm in frontier:
                sign, rep = seen[perm]
                for i, g in enumerate(gens):
                    swapped = list(perm)
                    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                    swapped = tuple(swapped)
                    if swapped not in seen:
                        seen[swapped] = (-sign, rep.then(g))
                        nxt.append(swapped)
            frontier = nxt
        out = [(p, s, r) for p, (s, r) in sorted(seen.items())]
        self._element_cache[q] = out
        return out

    @cached_property
    def alt_bases(self) -> list[list[tuple]]:
        return [image_basis(alt_projector(self, q)) for q in range(self.complex.top_degree + 1)]

    def __repr__(self):
        return f"EquivariantComplex(k={self.k}, basis_sizes={self.complex.basis_sizes})"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)


def validate(ec: EquivariantComplex) -> ValidationReport:
    """Check the chain complex and S_k action invariants; never raises."""
    report = ValidationReport()
    cx = ec.complex
    for msg in cx.boundary_violations():
        report.add(msg)
    k = ec.k
    if len(ec.action.generators) != k - 1:
        report.add(f"S_{k} needs {k - 1} generators")
        return report
    for q in range(cx.top_degree + 1):
        n = cx.dim(q)
        ident = SparseMatrix.identity(n)
        mats = [ec.generator(i, q) for i in range(k - 1)]
        for i, g in enumerate(mats):
            if g.shape != (n, n):
                report.add(f"s_{i + 1} on C_{q} has shape {g.shape}")
                return report
            try:
                SignedPermutation.from_matrix(g)
            except InvalidAction:
                report.add(f"s_{i + 1} on C_{q} is not a signed permutation matrix")
            if g @ g != ident:
                report.add(f"s_{i + 1}^2 != id on C_{q}")
        for i in range(k - 2):
            a, b = mats[i], mats[i + 1]
            if a @ b @ a != b @ a @ b:
                report.add(f"braid relation s_{i + 1} s_{i + 2} s_{i + 1} = "
                           f"s_{i + 2} s_{i + 1} s_{i + 2} fails on C_{q}")
        for i, j in combinations(range(k - 1), 2):
            if j - i >= 2 and mats[i] @ mats[j] != mats[j] @ mats[i]:
                report.add(f"s_{i + 1} and s_{j + 1} do not commute on C_{q}")
    for q in range(1, cx.top_degree + 1):
        d = cx.boundary(q)
        for i in range(k - 1):
            if d @ ec.generator(i, q) != ec.generator(i, q - 1) @ d:
                report.add(f"s_{i + 1} is not a chain map (fails against d_{q})")
    return report


def alt_projector(ec: EquivariantComplex, q: int) -> SparseMatrix:
    """(1/k!) * sum over S_k of sign(g) * g, acting on C_q."""
    n = ec.complex.dim(q)
    if not 0 <= q <= ec.complex.top_degree:
        raise DimensionMismatch(f"degree {q} outside 0..{ec.complex.top_degree}")
    if ec.k == 1:
        return SparseMatrix.identity(n)
    acc: dict = {}
    elements = ec.group_elements(q)
    for _, sign, rep in elements:
        for j, (t, s) in enumerate(zip(rep.targets, rep.signs)):
            acc[(t, j)] = acc.get((t, j), 0) + sign * s
    scale = Fraction(1, len(elements))
    return SparseMatrix(n, n, {key: v * scale for key, v in acc.items()})


def alternating_subcomplex(ec: EquivariantComplex) -> ChainComplex:
    """The subcomplex of alternating chains, written in the canonical Alt-image bases."""
    bases = ec.alt_bases
    cx = ec.complex
    boundaries = []
    for q in range(1, cx.top_degree + 1):
        d = cx.boundary(q)
        target, pivots = bases[q - 1], pivot_positions(bases[q - 1])
        cols = []
        for b in bases[q]:
            coords = coordinates(d.apply(b), target, pivots)
            if coords is None:
                raise NotAChainComplex(f"d_{q} does not preserve alternating chains")
            cols.append(coords)
        boundaries.append(SparseMatrix.from_columns(cols, len(target)))
    return ChainComplex([len(b) for b in bases], boundaries)


def alt_homology_dims(ec: EquivariantComplex) -> list[int]:
    return homology_dims(alternating_subcomplex(ec))


# simplicial input

class SimplicialComplex:
    """Abstract simplicial complex closed under faces.

    Simplices are tuples of vertex positions in increasing order; each degree
    is sorted lexicographically, which fixes the chain bases.
    """

    def __init__(self, vertices: Sequence[Hashable], simplices: Sequence[Sequence[Hashable]]):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise DimensionMismatch("duplicate vertex labels")
        faces: set = {(i,) for i in range(len(self.vertices))}
        for s in simplices:
            try:
                idx = tuple(sorted({self.index[v] for v in s}))
            except KeyError as exc:
                raise DimensionMismatch(f"simplex {list(s)} uses unknown vertex {exc}") from None
            for r in range(1, len(idx) + 1):
                faces.update(combinations(idx, r))
        top = max(len(f) for f in faces) - 1 if faces else 0
        self.simplices = [sorted(f for f in faces if len(f) == q + 1) for q in range(top + 1)]
        self.position = [{s: j for j, s in enumerate(level)} for level in self.simplices]

    @property
    def top_degree(self) -> int:
        return len(self.simplices) - 1

    def chain_complex(self) -> ChainComplex:
        sizes = [len(level) for level in self.simplices]
        boundaries = []
        for q in range(1, len(self.simplices)):
            entries = {}
            for j, s in enumerate(self.simplices[q]):
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    entries[(self.position[q - 1][face], j)] = (-1) ** i
            boundaries.append(SparseMatrix(sizes[q - 1], sizes[q], entries))
        return ChainComplex(sizes, boundaries)

    def chain_map(self, target: SimplicialComplex, vertex_map: Mapping) -> list[SparseMatrix]:
        """Matrices of the simplicial map given on vertex labels, one per degree.

        Degenerate images map to zero; orientation comes from the parity of the
        sorting permutation.
        """
        vm = {}
        for v in self.vertices:
            if v not in vertex_map:
                raise InvalidAction(f"vertex {v!r} has no image")
            w = vertex_map[v]
            if w not in target.index:
                raise InvalidAction(f"image {w!r} of {v!r} is not a vertex of the target")
            vm[self.index[v]] = target.index[w]
        mats = []
        for q, level in enumerate(self.simplices):
            entries = {}
            for j, s in enumerate(level):
                image = [vm[i] for i in s]
                if len(set(image)) < len(image):
                    continue
                sign = _sort_sign(image)
                t = tuple(sorted(image))
                if q > target.top_degree or t not in target.position[q]:
                    raise InvalidAction(f"image of simplex {self.labels(s)} is not a simplex")
                entries[(target.position[q][t], j)] = sign
            rows = len(target.simplices[q]) if q <= target.top_degree else 0
            mats.append(SparseMatrix(rows, len(level), entries))
        return mats

    def labels(self, s: tuple) -> list:
        return [self.vertices[i] for i in s]


def _sort_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def from_simplicial(vertices: Sequence[Hashable], simplices: Sequence[Sequence[Hashable]],
                    action: Sequence[Mapping | Sequence] = (), k: int | None = None,
                    check: bool = True) -> EquivariantComplex:
    """Build an EquivariantComplex from a triangulation and vertex permutations.

    ``action[i]`` gives the image of every vertex under s_{i+1}, either as a
    mapping or as a list aligned with ``vertices``.
    """
    sc = SimplicialComplex(vertices, simplices)
    if k is None:
        k = len(action) + 1
    maps = []
    for perm in action:
        if not isinstance(perm, Mapping):
            if len(perm) != len(sc.vertices):
                raise InvalidAction("vertex permutation length does not match the vertex list")
            perm = dict(zip(sc.vertices, perm))
        if set(perm) != set(sc.vertices) or set(perm.values()) != set(sc.vertices):
            raise InvalidAction("vertex map is not a permutation of the vertices")
        maps.append(perm)
    generators = [sc.chain_map(sc, perm) for perm in maps]
    ec = EquivariantComplex(sc.chain_complex(), SymmetricAction(k, generators), check=check)
    ec.simplicial = sc
    return ec


def connected_components(cx: ChainComplex) -> list[int]:
    """Component label for each C_0 basis element, from the d_1 incidence."""
    n = cx.dim(0)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    by_col: dict = {}
    for (i, j), _ in cx.boundary(1).items():
        by_col.setdefault(j, []).append(i)
    for rows in by_col.values():
        for r in rows[1:]:
            ra, rb = find(rows[0]), find(r)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = [find(a) for a in range(n)]
    relabel = {r: i for i, r in enumerate(sorted(set(roots)))}
    return [relabel[r] for r in roots]

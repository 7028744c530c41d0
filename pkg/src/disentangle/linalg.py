"""Exact sparse linear algebra over the rationals.

Matrices are immutable :class:`SparseMatrix` values holding nonzero
:class:`fractions.Fraction` entries keyed by ``(row, col)``.  Ranks are computed
by fraction-free integer elimination with a sparsest-column pivot rule; bases
are read off the reduced row echelon form so that returned vectors are
canonical (leading entry 1, ordered by pivot column).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, InclusionViolation

Vector = tuple  # dense tuple of Fraction


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass int, str or Fraction")
    return Fraction(value)


class SparseMatrix:
    __slots__ = ("rows", "cols", "_entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Mapping | Iterable = ()):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"negative shape {(rows, cols)}")
        self.rows = rows
        self.cols = cols
        items = entries.items() if isinstance(entries, Mapping) else entries
        store = {}
        for key, value in items:
            i, j = key
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"entry {(i, j)} outside {rows}x{cols} matrix")
            value = as_fraction(value)
            if value:
                store[(i, j)] = store.get((i, j), 0) + value
                if not store[(i, j)]:
                    del store[(i, j)]
        self._entries = store
        self._hash = None

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int) -> SparseMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> SparseMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged dense matrix")
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows)
                                  for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> SparseMatrix:
        entries = {}
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise DimensionMismatch(f"column {j} has length {len(col)}, expected {nrows}")
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, len(columns), entries)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable) -> SparseMatrix:
        return cls(rows, cols, (((i, j), v) for i, j, v in triplets))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key) -> Fraction:
        return self._entries.get(key, Fraction(0))

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict]:
        out = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> Vector:
        col = [Fraction(0)] * self.rows
        for (i, jj), v in self._entries.items():
            if jj == j:
                col[i] = v
        return tuple(col)

    def columns(self) -> list[Vector]:
        cols = [[Fraction(0)] * self.rows for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            cols[j][i] = v
        return [tuple(c) for c in cols]

    def triplets(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, v) for (i, j), v in sorted(self._entries.items())]

    # algebra

    @property
    def T(self) -> SparseMatrix:
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def transpose(self) -> SparseMatrix:
        return self.T

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        out: dict = {}
        for (i, k), a in self._entries.items():
            for j, b in right[k].items():
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.shape} matrix")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self._entries.items():
            if vector[j]:
                out[i] += v * vector[j]
        return tuple(out)

    def _combine(self, other: SparseMatrix, sign: int) -> SparseMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")
        out = dict(self._entries)
        for key, v in other._entries.items():
            out[key] = out.get(key, 0) + sign * v
        return SparseMatrix(self.rows, self.cols, out)

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> SparseMatrix:
        return self * -1

    def __mul__(self, scalar) -> SparseMatrix:
        if isinstance(scalar, SparseMatrix):
            return NotImplemented
        s = as_fraction(scalar)
        return SparseMatrix(self.rows, self.cols, {k: v * s for k, v in self._entries.items()})

    __rmul__ = __mul__

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> SparseMatrix:
        rmap = {r: a for a, r in enumerate(rows)}
        cmap = {c: b for b, c in enumerate(cols)}
        return SparseMatrix(len(rows), len(cols), {
            (rmap[i], cmap[j]): v for (i, j), v in self._entries.items()
            if i in rmap and j in cmap})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}, {self.cols}, nnz={self.nnz})"


def block_matrix(blocks: Mapping, row_sizes: Sequence[int], col_sizes: Sequence[int]) -> SparseMatrix:
    """Assemble a matrix from ``{(block_row, block_col): SparseMatrix}``."""
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    entries = {}
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise DimensionMismatch(f"block {(bi, bj)} has shape {m.shape}, "
                                    f"expected {(row_sizes[bi], col_sizes[bj])}")
        for (i, j), v in m.items():
            entries[(row_off[bi] + i, col_off[bj] + j)] = v
    return SparseMatrix(row_off[-1], col_off[-1], entries)


# elimination kernels

def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {c: int(v * den) for c, v in row.items()}
    return _primitive(ints)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank(m: SparseMatrix) -> int:
    """Rank over Q by fraction-free elimination with sparsest-column pivoting."""
    rows = [_integer_row(r) for r in m.row_dicts() if r]
    r = 0
    while rows:
        counts: dict = {}
        for row in rows:
            for c in row:
                counts[c] = counts.get(c, 0) + 1
        col = min(counts, key=lambda c: (counts[c], c))
        candidates = [i for i, row in enumerate(rows) if col in row]
        piv_idx = min(candidates, key=lambda i: (len(rows[i]), i))
        pivot = rows.pop(piv_idx)
        p = pivot[col]
        new_rows = []
        for row in rows:
            a = row.get(col)
            if a is None:
                new_rows.append(row)
                continue
            g = gcd(p, a)
            sp, sa = p // g, a // g
            combined = {c: v * sp for c, v in row.items()}
            for c, v in pivot.items():
                nv = combined.get(c, 0) - sa * v
                if nv:
                    combined[c] = nv
                else:
                    combined.pop(c, None)
            if combined:
                new_rows.append(_primitive(combined))
        rows = new_rows
        r += 1
    return r


def rref(m: SparseMatrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form as ``(rows, pivot_columns)``.

    Rows are sparse dicts with leading entry 1, sorted by pivot column.  The
    result is unique for a given matrix; pivot rows are chosen sparsest first,
    which only affects speed.
    """
    active = [{c: v for c, v in r.items()} for r in m.row_dicts() if r]
    done: list[tuple[int, dict]] = []
    for col in range(m.cols):
        candidates = [i for i, row in enumerate(active) if col in row]
        if not candidates:
            continue
        piv_idx = min(candidates, key=lambda i: (len(active[i]), i))
        pivot = active.pop(piv_idx)
        inv = 1 / pivot[col]
        pivot = {c: v * inv for c, v in pivot.items()}

        def eliminate(row):
            a = row.get(col)
            if a is None:
                return row
            out = dict(row)
            for c, v in pivot.items():
                nv = out.get(c, 0) - a * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            return out

        active = [r for r in (eliminate(r) for r in active) if r]
        done = [(pc, eliminate(r)) for pc, r in done]
        done.append((col, pivot))
    return [r for _, r in done], [pc for pc, _ in done]


def kernel_basis(m: SparseMatrix) -> list[Vector]:
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row, pc in zip(rows, pivots):
            a = row.get(free)
            if a:
                v[pc] = -a
        basis.append(tuple(v))
    return basis


def image_basis(m: SparseMatrix) -> list[Vector]:
    """Canonical basis of the column space: nonzero rows of rref(M^T)."""
    rows, _ = rref(m.T)
    out = []
    for row in rows:
        v = [Fraction(0)] * m.rows
        for c, a in row.items():
            v[c] = a
        out.append(tuple(v))
    return out


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Canonical basis for the span of ``vectors`` in Q^dim."""
    return image_basis(SparseMatrix.from_columns(vectors, dim))


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return rank(SparseMatrix.from_columns(vectors, dim))


def subquotient_dim(kernel_of: SparseMatrix, image_of: SparseMatrix) -> int:
    """dim ker(kernel_of) - rank(image_of), after checking the inclusion."""
    if kernel_of.cols != image_of.rows:
        raise DimensionMismatch(
            f"ambient mismatch: kernel map has {kernel_of.cols} columns, "
            f"image map has {image_of.rows} rows")
    if not (kernel_of @ image_of).is_zero():
        raise InclusionViolation("composite map is nonzero")
    return kernel_of.cols - rank(kernel_of) - rank(image_of)


def coordinates(vector: Sequence, basis: Sequence[Sequence], pivots: Sequence[int]) -> Vector | None:
    """Coordinates of ``vector`` in an rref-style basis, or None if outside the span."""
    coords = tuple(vector[p] for p in pivots)
    recon = [Fraction(0)] * len(vector)
    for c, b in zip(coords, basis):
        if c:
            for i, x in enumerate(b):
                if x:
                    recon[i] += c * x
    if any(a != b for a, b in zip(recon, vector)):
        return None
    return coords


def pivot_positions(basis: Sequence[Sequence]) -> list[int]:
    out = []
    for b in basis:
        out.append(next(i for i, x in enumerate(b) if x))
    return out

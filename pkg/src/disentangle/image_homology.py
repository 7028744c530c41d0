"""Homology of an image from alternating chains on its multiple point spaces.

Column p of the double complex is the alternating subcomplex of D^{p+1}; the
horizontal map is phi = sum_i (-1)^i (eps^{i,k})_#.  The total complex uses
D = d + (-1)^q phi on bidegree (p, q).  Pages of the column-filtration
spectral sequence are computed directly from the filtration subquotients

    E^r_p = Z^r_p / (Z^{r-1}_{p-1} + D Z^{r-1}_{p+r-1}),
    Z^r_p = {x in F_p : D x in F_{p-r}},

so no zigzag chasing is needed.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .equivariant import (ChainComplex, EquivariantComplex, SignedPermutation,
                          alt_homology_dims, alt_projector, alternating_subcomplex,
                          connected_components, homology_dims, validate)
from .errors import (ConvergenceMismatch, CriterionMismatch, DimensionMismatch,
                     InputError, NotADoubleComplex)
from .linalg import (SparseMatrix, block_matrix, coordinates, kernel_basis, pivot_positions,
                     rank, span_rank)


class MultiplePointDiagram:
    """Levels D^1..D^kmax with face maps eps^{i,k} (or a combined phi per k).

    ``levels`` maps k to an EquivariantComplex with an S_k action; level 1
    defaults to a point.  ``face_maps[(k, i)]`` and ``phi[k]`` are lists of
    per-degree matrices C_q(D^k) -> C_q(D^{k-1}).  When level 1 is a point and
    nothing is given for k = 2, both face maps are the constant map.
    """

    def __init__(self, levels: Mapping[int, EquivariantComplex] | Sequence[EquivariantComplex],
                 face_maps: Mapping | None = None, phi: Mapping | None = None):
        if not isinstance(levels, Mapping):
            levels = {k: ec for k, ec in enumerate(levels, start=1)}
        levels = dict(levels)
        if 1 not in levels or levels[1] is None:
            levels[1] = EquivariantComplex.point()
        self.kmax = max(levels)
        if sorted(levels) != list(range(1, self.kmax + 1)):
            raise InputError(f"levels must cover k = 1..{self.kmax}")
        for k, ec in levels.items():
            if ec.k != k:
                raise InputError(f"level {k} carries an S_{ec.k} action")
        self.levels = levels
        self.face_maps = {key: tuple(v) for key, v in (face_maps or {}).items()}
        self.phi_given = {k: tuple(v) for k, v in (phi or {}).items()}
        for k in range(2, self.kmax + 1):
            have_faces = all((k, i) in self.face_maps for i in range(1, k + 1))
            if not have_faces and k not in self.phi_given:
                if k == 2 and levels[1].complex.basis_sizes == (1,):
                    const = _constant_map(levels[2].complex)
                    for i in (1, 2):
                        self.face_maps[(2, i)] = const
                else:
                    raise InputError(f"no face maps or phi given for k = {k}")
        for key, mats in list(self.face_maps.items()) + [((k, None), m) for k, m in self.phi_given.items()]:
            self._check_shapes(key[0], mats, key)

    def _check_shapes(self, k, mats, label):
        src, dst = self.levels[k].complex, self.levels[k - 1].complex
        if len(mats) != src.top_degree + 1:
            raise DimensionMismatch(f"map {label} given on {len(mats)} degrees, "
                                    f"D^{k} has {src.top_degree + 1}")
        for q, m in enumerate(mats):
            if m.shape != (dst.dim(q), src.dim(q)):
                raise DimensionMismatch(f"map {label} in degree {q} has shape {m.shape}, "
                                        f"expected {(dst.dim(q), src.dim(q))}")

    def level(self, k: int) -> EquivariantComplex:
        return self.levels[k]

    def raw_phi(self, k: int, q: int) -> SparseMatrix:
        """Unrestricted phi on C_q(D^k)."""
        if k in self.phi_given:
            return self.phi_given[k][q]
        src, dst = self.levels[k].complex, self.levels[k - 1].complex
        total = SparseMatrix.zeros(dst.dim(q), src.dim(q))
        for i in range(1, k + 1):
            m = self.face_maps[(k, i)][q]
            total = total + m if i % 2 == 0 else total - m
        return total


def _constant_map(cx: ChainComplex) -> tuple:
    mats = [SparseMatrix(1, cx.dim(0), {(0, j): 1 for j in range(cx.dim(0))})]
    mats += [SparseMatrix.zeros(0, cx.dim(q)) for q in range(1, cx.top_degree + 1)]
    return tuple(mats)


def _degree_matrix(mats: Sequence[SparseMatrix], q: int, rows: int, cols: int) -> SparseMatrix:
    return mats[q] if q < len(mats) else SparseMatrix.zeros(rows, cols)


def diagram_violations(diagram: MultiplePointDiagram) -> list[str]:
    """Every structural problem of a diagram, as messages; never raises."""
    out = []
    for k, ec in sorted(diagram.levels.items()):
        out.extend(f"D^{k}: {msg}" for msg in validate(ec).violations)
    if out:
        return out
    out = chain_map_violations(diagram)
    if out:
        return out
    try:
        build_double_complex(diagram)
    except NotADoubleComplex as exc:
        out.append(str(exc))
    return out


def chain_map_violations(diagram: MultiplePointDiagram) -> list[str]:
    """Face maps and given phi maps that fail to commute with the boundaries."""
    out = []
    checks = [((k, i), m) for (k, i), m in sorted(diagram.face_maps.items())]
    checks += [((k, "phi"), m) for k, m in sorted(diagram.phi_given.items())]
    for (k, i), mats in checks:
        src, dst = diagram.levels[k].complex, diagram.levels[k - 1].complex
        name = f"eps^{{{i},{k}}}" if i != "phi" else f"phi on D^{k}"
        for q in range(1, src.top_degree + 1):
            lhs = dst.boundary(q) @ mats[q]
            below = _degree_matrix(mats, q - 1, dst.dim(q - 1), src.dim(q - 1))
            if lhs != below @ src.boundary(q):
                out.append(f"{name} is not a chain map (degree {q})")
    return out


def phi(diagram: MultiplePointDiagram, k: int, q: int) -> SparseMatrix:
    """phi at degree q from column k-1 to column k-2, in alternating bases."""
    if not 2 <= k <= diagram.kmax:
        raise DimensionMismatch(f"phi needs 2 <= k <= {diagram.kmax}, got {k}")
    src, dst = diagram.levels[k], diagram.levels[k - 1]
    src_basis = src.alt_bases[q] if q <= src.complex.top_degree else []
    if q > dst.complex.top_degree:
        return SparseMatrix.zeros(0, len(src_basis))
    dst_basis = dst.alt_bases[q]
    pivots = pivot_positions(dst_basis)
    raw = diagram.raw_phi(k, q)
    cols = []
    for b in src_basis:
        coords = coordinates(raw.apply(b), dst_basis, pivots)
        if coords is None:
            raise NotADoubleComplex(f"phi from D^{k} does not send alternating "
                                    f"{q}-chains to alternating chains")
        cols.append(coords)
    return SparseMatrix.from_columns(cols, len(dst_basis))


@dataclass
class DoubleComplex:
    columns: list                       # column p: alternating complex of D^{p+1}
    horizontal: dict                    # (p, q) -> phi: column p -> column p-1

    @property
    def width(self) -> int:
        return len(self.columns)

    def dim(self, p: int, q: int) -> int:
        if not 0 <= p < self.width:
            return 0
        return self.columns[p].dim(q)

    def h(self, p: int, q: int) -> SparseMatrix:
        if (p, q) in self.horizontal:
            return self.horizontal[(p, q)]
        return SparseMatrix.zeros(self.dim(p - 1, q), self.dim(p, q))

    def v(self, p: int, q: int) -> SparseMatrix:
        if not 0 <= p < self.width:
            return SparseMatrix.zeros(0, 0)
        return self.columns[p].boundary(q)

    @property
    def max_total_degree(self) -> int:
        return max(p + c.top_degree for p, c in enumerate(self.columns))

    def identity_violations(self) -> list[str]:
        out = []
        for p, c in enumerate(self.columns):
            out.extend(f"column {p}: {m}" for m in c.boundary_violations())
        for p in range(2, self.width):
            for q in range(self.columns[p].top_degree + 1):
                if not (self.h(p - 1, q) @ self.h(p, q)).is_zero():
                    out.append(f"phi o phi != 0 at (p, q) = ({p}, {q})")
        for p in range(1, self.width):
            for q in range(1, self.columns[p].top_degree + 1):
                if self.v(p - 1, q) @ self.h(p, q) != self.h(p, q - 1) @ self.v(p, q):
                    out.append(f"d phi != phi d at (p, q) = ({p}, {q})")
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * self.dim(p, q)
                   for p, c in enumerate(self.columns) for q in range(c.top_degree + 1))


def build_double_complex(diagram: MultiplePointDiagram) -> DoubleComplex:
    bad = chain_map_violations(diagram)
    if bad:
        raise NotADoubleComplex(bad[0])
    columns = [alternating_subcomplex(diagram.levels[k]) for k in range(1, diagram.kmax + 1)]
    horizontal = {}
    for p in range(1, len(columns)):
        for q in range(columns[p].top_degree + 1):
            horizontal[(p, q)] = phi(diagram, p + 1, q)
    dc = DoubleComplex(columns, horizontal)
    bad = dc.identity_violations()
    if bad:
        raise NotADoubleComplex(bad[0])
    return dc


class TotalComplex:
    """Tot_m = sum over p+q=m of column p in degree q, with D = d + (-1)^q phi."""

    def __init__(self, dc: DoubleComplex):
        self.dc = dc
        self.top = dc.max_total_degree
        self._blocks = {}
        for m in range(-1, self.top + 2):
            blocks, off = [], 0
            for p in range(dc.width):
                q = m - p
                if 0 <= q <= dc.columns[p].top_degree:
                    blocks.append((p, q, off, dc.dim(p, q)))
                    off += dc.dim(p, q)
            self._blocks[m] = blocks
        self._diff = {}

    def blocks(self, m: int) -> list[tuple[int, int, int, int]]:
        return self._blocks.get(m, [])

    def dim(self, m: int) -> int:
        return sum(b[3] for b in self.blocks(m))

    def differential(self, m: int) -> SparseMatrix:
        """D: Tot_m -> Tot_{m-1}."""
        if m in self._diff:
            return self._diff[m]
        src, dst = self.blocks(m), self.blocks(m - 1)
        dst_index = {p: i for i, (p, _, _, _) in enumerate(dst)}
        parts = {}
        for j, (p, q, _, _) in enumerate(src):
            if q >= 1 and p in dst_index:
                parts[(dst_index[p], j)] = self.dc.v(p, q)
            if p >= 1 and (p - 1) in dst_index:
                h = self.dc.h(p, q)
                parts[(dst_index[p - 1], j)] = h if q % 2 == 0 else -h
        out = block_matrix(parts, [b[3] for b in dst], [b[3] for b in src])
        self._diff[m] = out
        return out

    def filtration_indices(self, m: int, p: int) -> list[int]:
        """Coordinates of F_p Tot_m (blocks with column index <= p)."""
        idx = []
        for pp, _, off, size in self.blocks(m):
            if pp <= p:
                idx.extend(range(off, off + size))
        return idx

    def cycles_mod(self, m: int, p: int, r: int) -> list[tuple]:
        """Basis of Z^r_p in Tot_m: x in F_p with D x in F_{p-r}."""
        cols = self.filtration_indices(m, p)
        if not cols:
            return []
        keep = set(self.filtration_indices(m - 1, p - r))
        rows = [i for i in range(self.dim(m - 1)) if i not in keep]
        sub = self.differential(m).submatrix(rows, cols)
        out = []
        for v in kernel_basis(sub):
            full = [Fraction(0)] * self.dim(m)
            for c, x in zip(cols, v):
                full[c] = x
            out.append(tuple(full))
        return out

    def page_dim(self, r: int, p: int, q: int) -> int:
        m = p + q
        z = self.cycles_mod(m, p, r)
        if not z:
            return 0
        lower = self.cycles_mod(m, p - 1, r - 1)
        d = self.differential(m + 1)
        boundaries = [d.apply(x) for x in self.cycles_mod(m + 1, p + r - 1, r - 1)]
        return len(z) - span_rank(lower + boundaries, self.dim(m))

    def betti(self) -> list[int]:
        ranks = {m: rank(self.differential(m)) for m in range(0, self.top + 2)}
        return [self.dim(m) - ranks[m] - ranks[m + 1] for m in range(self.top + 1)]

    def filtered_homology_dims(self, m: int) -> list[int]:
        """dim E^inf_{p, m-p} from images of H_m(F_p) in H_m(Tot); independent of the pages."""
        d = self.differential(m + 1)
        bounds = [d.column(j) for j in range(d.cols)]
        base = span_rank(bounds, self.dim(m))
        images = []
        for p in range(-1, self.dc.width):
            cyc = self.cycles_mod(m, p, self.dc.width + 1)
            images.append(span_rank(cyc + bounds, self.dim(m)) - base)
        return [images[i + 1] - images[i] for i in range(self.dc.width)]


@dataclass
class SpectralPages:
    pages: dict                         # r -> grid[p][q]
    r_infinity: int
    checks: dict = field(default_factory=dict)

    @property
    def e_infinity(self) -> list[list[int]]:
        return self.pages[self.r_infinity]

    def antidiagonal_sums(self) -> list[int]:
        grid = self.e_infinity
        top = max((p + len(col) - 1 for p, col in enumerate(grid)), default=-1)
        sums = [0] * (top + 1)
        for p, col in enumerate(grid):
            for q, v in enumerate(col):
                sums[p + q] += v
        return sums


def spectral_pages(dc: DoubleComplex) -> SpectralPages:
    tot = TotalComplex(dc)
    r_inf = max(dc.width, 1)
    pages = {}
    for r in range(1, r_inf + 2):
        pages[r] = [[tot.page_dim(r, p, q) for q in range(c.top_degree + 1)]
                    for p, c in enumerate(dc.columns)]
    checks = {
        "stabilized": pages[r_inf + 1] == pages[r_inf],
        "pages_monotone": all(pages[r + 1][p][q] <= pages[r][p][q]
                              for r in range(1, r_inf + 1)
                              for p in range(dc.width) for q in range(len(pages[r][p]))),
        "e1_is_column_homology": pages[1] == [homology_dims(c) for c in dc.columns],
    }
    del pages[r_inf + 1]
    return SpectralPages(pages, r_inf, checks)


@dataclass
class ImageHomology:
    betti: list
    pages: SpectralPages
    double_complex: DoubleComplex
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "betti": self.betti,
            "e_pages": [{"r": r, "dims": grid} for r, grid in sorted(self.pages.pages.items())],
            "e_infinity": self.pages.e_infinity,
            "r_infinity": self.pages.r_infinity,
            "alternating_cells": [list(c.basis_sizes) for c in self.double_complex.columns],
            "checks": dict(sorted(self.checks.items())),
        }


def analyze(diagram: MultiplePointDiagram) -> ImageHomology:
    """Double complex, all pages, total Betti numbers and the consistency checks."""
    dc = build_double_complex(diagram)
    pages = spectral_pages(dc)
    tot = TotalComplex(dc)
    betti = tot.betti()
    sums = pages.antidiagonal_sums()
    sums += [0] * (len(betti) - len(sums))
    if sums != betti:
        raise ConvergenceMismatch(f"E^inf antidiagonal sums {sums} != total Betti numbers {betti}")
    filtered = [tot.filtered_homology_dims(m) for m in range(len(betti))]
    e_inf = pages.e_infinity
    from_pages = [[e_inf[p][m - p] if 0 <= m - p < len(e_inf[p]) else 0 for p in range(dc.width)]
                  for m in range(len(betti))]
    checks = dict(pages.checks)
    checks.update({
        "convergence": True,
        "e_infinity_matches_filtration": filtered == from_pages,
        "euler_characteristic": sum((-1) ** m * b for m, b in enumerate(betti)) == dc.euler_characteristic(),
        "double_complex_identities": True,
        "alt_idempotent": all(_alt_idempotent(diagram.levels[k]) for k in diagram.levels),
    })
    return ImageHomology(betti, pages, dc, checks)


def _alt_idempotent(ec: EquivariantComplex) -> bool:
    for q in range(ec.complex.top_degree + 1):
        a = alt_projector(ec, q)
        if a @ a != a:
            return False
    return True


def image_betti(diagram: MultiplePointDiagram) -> list[int]:
    return analyze(diagram).betti


def moved_components(d2: EquivariantComplex) -> bool:
    comps = connected_components(d2.complex)
    sigma = SignedPermutation.from_matrix(d2.generator(0, 0))
    return any(comps[t] != comps[j] for j, t in enumerate(sigma.targets))


def h1_component_criterion(d2: EquivariantComplex) -> bool:
    """True iff the involution moves some connected component of D^2.

    Cross-checked against alternating H_0 being nonzero.
    """
    if d2.k != 2:
        raise InputError(f"criterion applies to S_2 actions, got S_{d2.k}")
    moved = moved_components(d2)
    a0 = alt_homology_dims(d2)[0]
    if moved != (a0 != 0):
        raise CriterionMismatch(f"component criterion {moved} but A_0 = {a0}")
    return moved

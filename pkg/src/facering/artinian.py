"""Artinian reductions of face rings and relative face modules.

For a complex Δ with working-field coordinates in F^d, the coordinate rows
induce d linear forms Θ = V·x, and the graded algebra studied here is

    A^k(Δ, Γ) = (I_Γ / I_Δ)_k / Θ·(I_Γ / I_Δ)_(k-1),

presented concretely per degree: a monomial basis (all degree-k monomials
whose support is a face of Δ but not of Γ, in graded reverse lexicographic
order over the input vertex order) together with the reduced row echelon
form of the relation space Θ·R^(k-1).  Coset representatives are the
non-pivot basis monomials; every map out of a graded piece is a matrix over
those representatives.

A void Γ gives the absolute algebra A^k(Δ); the boundary complex gives the
relative-to-boundary module used by pairings and Lefschetz maps.
"""

from __future__ import annotations

import itertools
from bisect import insort

import numpy as np

from .scalars import Matrix, PrimeField
from .simplicial import (Complex, RelativePair, boundary_complex,
                         is_subcomplex, _sorted_face)


class ArtinianError(ValueError):
    pass


class ImproperCoordinatesError(ArtinianError):
    """Some face fails to span; carries the offending face."""

    def __init__(self, message, face):
        super().__init__(message)
        self.face = face


class DegreeMismatchError(ArtinianError):
    pass


class IncompatiblePairError(ArtinianError):
    pass


#: sentinel: resolve Γ to the boundary complex of the reduction's complex
BOUNDARY = object()


# ---------------------------------------------------------------------------
# monomials: sorted tuples of vertex indices with multiplicity
# ---------------------------------------------------------------------------

def mono_mul(m: tuple, v: int) -> tuple:
    out = list(m)
    insort(out, v)
    return tuple(out)


def mono_product(m: tuple, n: tuple) -> tuple:
    return tuple(sorted(m + n))


def mono_support(m: tuple) -> frozenset:
    return frozenset(m)


def _grevlex_key(m: tuple, n: int) -> tuple:
    exps = [0] * n
    for v in m:
        exps[v] += 1
    return tuple(reversed(exps))


def _compositions(total, parts):
    """All ways to write total as an ordered sum of ``parts`` positives."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in cuts + (total,):
            out.append(c - prev)
            prev = c
        yield tuple(out)


# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------

def coordinates_from_complex(cx: Complex, field) -> dict:
    """Convert the stored rational coordinates into the working field."""
    if cx.coords is None:
        raise ArtinianError(f"complex {cx.name!r} carries no coordinates")
    return {v: tuple(field.canon(x) for x in cx.coords[v])
            for v in cx.vertices}


def sample_coordinates(cx: Complex, d: int, field, rng) -> dict:
    return {v: tuple(field.sample(rng) for _ in range(d))
            for v in cx.vertices}


def check_proper(cx: Complex, coords: dict, d: int, field) -> None:
    """Every facet's coordinate vectors must be linearly independent.

    Since faces are subsets of facets, this certifies that every k-face
    with k < d spans a (k+1)-dimensional subspace.  Raises
    :class:`ImproperCoordinatesError` naming the first offending face.
    """
    for F in cx.facets:
        sf = _sorted_face(F)
        if len(sf) > d:
            raise ImproperCoordinatesError(
                f"facet {sf} has {len(sf)} vertices but lives in "
                f"dimension {d}", sf)
        M = Matrix.from_rows(field, [coords[v] for v in sf], ncols=d)
        if M.rank() != len(sf):
            raise ImproperCoordinatesError(
                f"face {sf} does not span dimension {len(sf)}", sf)


def sample_proper_coordinates(cx: Complex, d: int, field, rng,
                              attempts: int = 32) -> dict:
    """Sample coordinates, resampling until proper (improper draws are a
    measure-zero accident, never fatal)."""
    last = None
    for _ in range(attempts):
        coords = sample_coordinates(cx, d, field, rng)
        try:
            check_proper(cx, coords, d, field)
            return coords
        except ImproperCoordinatesError as exc:
            last = exc
    raise ArtinianError(
        f"failed to sample proper coordinates in {attempts} attempts "
        f"(last offender: {last.face if last else '?'})")


def projection_killing(vectors, field) -> Matrix:
    """A linear projection matrix whose kernel is the span of ``vectors``.

    Rows form an echelonized basis of the left null space of the stacked
    vectors, so the construction is deterministic.  Used to realize links
    geometrically; over a finite field this replaces an orthogonal
    projection, and any complement projection is equivalent for the
    genericity statements tested here.
    """
    rows = [list(v) for v in vectors]
    d = len(rows[0])
    S = Matrix.from_rows(field, rows, ncols=d)
    ker = S.kernel_basis()  # vectors y with S y = 0, i.e. y . v = 0 for all v
    return ker.basis


def project_coordinates(coords: dict, keys, projector: Matrix, field) -> dict:
    out = {}
    for v in keys:
        col = Matrix.from_rows(field, [[x] for x in coords[v]])
        out[v] = tuple((projector @ col).column(0))
    return out


# ---------------------------------------------------------------------------
# linear forms: plain coefficient dicts vertex -> scalar
# ---------------------------------------------------------------------------

def vertex_form(v) -> dict:
    """The form x_v."""
    return {v: 1}


def generic_form(vertices, field, rng, support=None) -> dict:
    """A generic linear form; ``support`` restricts the participating
    vertices (used for transversal-prime experiments)."""
    keep = set(support) if support is not None else None
    return {v: field.sample(rng) for v in vertices
            if keep is None or v in keep}


# ---------------------------------------------------------------------------
# graded pieces
# ---------------------------------------------------------------------------

class GradedPiece:
    """One graded component A^k(Δ, Γ) in explicit coset coordinates."""

    __slots__ = ("degree", "basis", "index", "pivots", "free", "_rref",
                 "field", "gamma_key")

    def __init__(self, degree, basis, rref, pivots, field, gamma_key):
        self.degree = degree
        self.basis = basis
        self.index = {m: j for j, m in enumerate(basis)}
        self._rref = rref
        self.pivots = tuple(pivots)
        piv = set(pivots)
        self.free = tuple(j for j in range(len(basis)) if j not in piv)
        self.field = field
        self.gamma_key = gamma_key

    @property
    def dim(self) -> int:
        return len(self.free)

    def rep_monomials(self):
        """Coset representative monomials (non-pivot basis columns)."""
        return [self.basis[j] for j in self.free]

    def reduce_matrix(self, raw: Matrix) -> Matrix:
        """Reduce raw degree-k coordinate columns modulo the relations.

        ``raw`` has one row per basis monomial; the result has one row per
        coset representative.
        """
        if raw.nrows != len(self.basis):
            raise DegreeMismatchError(
                f"raw vector of length {raw.nrows}, basis {len(self.basis)}")
        free_part = raw.take_rows(self.free)
        if not self.pivots:
            return free_part
        correction = self._rref.take_cols(self.free).transpose() @ \
            raw.take_rows(self.pivots)
        return free_part - correction

    def zero_matrix(self, ncols) -> Matrix:
        return Matrix.zeros(self.field, self.dim, ncols)


class FundamentalClass:
    """The degree-d evaluation A^d(Δ, ∂Δ) ≅ F, normalized so the last basis
    monomial with nonzero coset evaluates to one."""

    __slots__ = ("values", "piece", "normalizer")

    def __init__(self, piece: GradedPiece, field):
        if piece.dim != 1:
            raise ArtinianError(
                f"top relative piece has dimension {piece.dim}, not 1 "
                "(input is not a homology ball/sphere, or the coordinates "
                "are degenerate)")
        j0 = piece.free[0]
        row = [field.zero] * len(piece.basis)
        row[j0] = field.one
        for i, c in enumerate(piece.pivots):
            row[c] = field.neg(piece._rref.entry(i, j0))
        last = max(j for j, x in enumerate(row) if not field.is_zero(x))
        scale = field.inv(row[last])
        self.values = {piece.basis[j]: field.mul(x, scale)
                       for j, x in enumerate(row) if not field.is_zero(x)}
        self.piece = piece
        self.normalizer = piece.basis[last]

    def of_monomial(self, mono, field):
        return self.values.get(mono, field.zero)


# ---------------------------------------------------------------------------
# the reduction
# ---------------------------------------------------------------------------

class Reduction:
    """Face ring of a geometric complex modulo its coordinate parameters.

    Caches graded pieces per (Γ, degree); safe to share across the property
    checkers for one (complex, coordinates) pair.
    """

    def __init__(self, cx: Complex, coords: dict, field=None, check=True):
        self.cx = cx
        self.field = field or PrimeField()
        if cx.is_void:
            self.d = 0
            self.coords = {}
        else:
            self.coords = {v: tuple(self.field.canon(x) for x in coords[v])
                           for v in cx.vertices}
            lengths = {len(c) for c in self.coords.values()}
            if len(lengths) > 1:
                raise ArtinianError("ragged coordinate vectors")
            self.d = lengths.pop() if lengths else 0
            if check:
                check_proper(cx, self.coords, self.d, self.field)
        self._faces_idx = None
        self._gamma_faces = {}
        self._bases = {}
        self._pieces = {}
        self._ranks = {}
        self._fc = None
        self._boundary = None

    # -- gamma handling -----------------------------------------------------

    @property
    def boundary(self) -> Complex:
        if self._boundary is None:
            self._boundary = boundary_complex(self.cx)
        return self._boundary

    def _resolve_gamma(self, gamma):
        if gamma is None:
            return None
        if gamma is BOUNDARY:
            gamma = self.boundary
        if gamma.is_void:
            return None
        return gamma

    def _gamma_key(self, gamma):
        return gamma.facets if gamma is not None else None

    def _gamma_face_idx(self, gamma):
        key = self._gamma_key(gamma)
        if key not in self._gamma_faces:
            if gamma is None:
                self._gamma_faces[key] = frozenset()
            else:
                if not is_subcomplex(gamma, self.cx):
                    raise IncompatiblePairError(
                        f"{gamma.name!r} is not a subcomplex of "
                        f"{self.cx.name!r}")
                vidx = self.cx.vertex_index
                self._gamma_faces[key] = frozenset(
                    frozenset(vidx(v) for v in F)
                    for F in gamma.face_set())
        return self._gamma_faces[key]

    def _face_indices(self):
        """Faces of Δ as frozensets of vertex indices, grouped by size."""
        if self._faces_idx is None:
            vidx = self.cx.vertex_index
            by_size = {}
            allf = set()
            for k, faces in self.cx.all_faces().items():
                idx = tuple(frozenset(vidx(v) for v in F) for F in faces)
                by_size[k + 1] = idx
                allf.update(idx)
            self._faces_idx = (by_size, frozenset(allf))
        return self._faces_idx

    # -- monomial bases -----------------------------------------------------

    def basis(self, k: int, gamma=None) -> tuple:
        """Degree-k monomial basis of the relative module, grevlex order."""
        if k < 0:
            raise DegreeMismatchError("negative degree")
        gamma = self._resolve_gamma(gamma)
        key = (self._gamma_key(gamma), k)
        if key in self._bases:
            return self._bases[key]
        gfaces = self._gamma_face_idx(gamma)
        if self.cx.is_void:
            out = ()
        elif k == 0:
            # the empty support is a face of every nonvoid Γ
            out = ((),) if gamma is None else ()
        else:
            by_size, _ = self._face_indices()
            monos = []
            for size in range(1, min(k, self.cx.dim + 1) + 1):
                for F in by_size.get(size, ()):
                    if F in gfaces:
                        continue
                    sf = sorted(F)
                    for comp in _compositions(k, size):
                        mono = []
                        for v, e in zip(sf, comp):
                            mono.extend((v,) * e)
                        monos.append(tuple(mono))
            n = self.cx.n_vertices
            monos.sort(key=lambda m: _grevlex_key(m, n))
            out = tuple(monos)
        self._bases[key] = out
        return out

    # -- relation matrices and pieces ---------------------------------------

    def _relation_matrix(self, k: int, gamma) -> Matrix:
        """Rows spanning Θ·R^(k-1) inside the degree-k basis coordinates."""
        bk = self.basis(k, gamma)
        bk1 = self.basis(k - 1, gamma) if k >= 1 else ()
        ncols = len(bk)
        index = {m: j for j, m in enumerate(bk)}
        _, all_faces = self._face_indices()
        d = self.d
        n = self.cx.n_vertices
        coord_rows = [self.coords[v] for v in self.cx.vertices]
        if self.field.kind == "prime":
            p = self.field.p
            arr = np.zeros((d * len(bk1), ncols), dtype=np.int64)
            carr = np.array(coord_rows, dtype=np.int64) if n else \
                np.zeros((0, d), dtype=np.int64)
            for mi, m in enumerate(bk1):
                supp = set(m)
                base = mi * d
                for v in range(n):
                    if frozenset(supp | {v}) not in all_faces:
                        continue
                    j = index[mono_mul(m, v)]
                    arr[base:base + d, j] = (arr[base:base + d, j]
                                             + carr[v]) % p
            return Matrix(self.field, arr)
        rows = [[self.field.zero] * ncols for _ in range(d * len(bk1))]
        for mi, m in enumerate(bk1):
            supp = set(m)
            for v in range(n):
                if frozenset(supp | {v}) not in all_faces:
                    continue
                j = index[mono_mul(m, v)]
                for i in range(d):
                    rows[mi * d + i][j] += coord_rows[v][i]
        return Matrix.from_rows(self.field, rows, ncols=ncols)

    def piece(self, k: int, gamma=None) -> GradedPiece:
        gamma = self._resolve_gamma(gamma)
        key = (self._gamma_key(gamma), k)
        if key in self._pieces:
            return self._pieces[key]
        basis = self.basis(k, gamma)
        rel = self._relation_matrix(k, gamma)
        rref, pivots = rel.rref()
        piece = GradedPiece(k, basis, rref, pivots, self.field, key[0])
        self._pieces[key] = piece
        self._ranks[key] = len(pivots)
        return piece

    def dim(self, k: int, gamma=None) -> int:
        """dim A^k without retaining the echelonized relations."""
        gamma = self._resolve_gamma(gamma)
        key = (self._gamma_key(gamma), k)
        if key in self._pieces:
            return self._pieces[key].dim
        if key not in self._ranks:
            self._ranks[key] = self._relation_matrix(k, gamma).rank()
        return len(self.basis(k, gamma)) - self._ranks[key]

    def dims(self, gamma=None) -> tuple:
        """(dim A^0, ..., dim A^d)."""
        return tuple(self.dim(k, gamma) for k in range(self.d + 1))

    # -- maps ---------------------------------------------------------------

    def _form_by_index(self, ell: dict):
        vidx = self.cx.vertex_index
        out = {}
        for v, c in ell.items():
            if v not in self.cx._vidx:
                continue
            c = self.field.canon(c)
            if not self.field.is_zero(c):
                out[vidx(v)] = c
        return out

    def multiplication_matrix(self, ell: dict, k: int, src_gamma=None,
                              dst_gamma=None) -> Matrix:
        """Matrix of multiplication by the linear form ell from A^k(Δ, Γ1)
        to A^(k+1)(Δ, Γ2), over coset representatives.

        Monomials whose support leaves Δ are dropped (they vanish in the
        face ring); a product landing outside the target module means the
        map is not defined and raises :class:`IncompatiblePairError`.
        """
        src = self.piece(k, src_gamma)
        dst = self.piece(k + 1, dst_gamma)
        ell_idx = self._form_by_index(ell)
        _, all_faces = self._face_indices()
        reps = src.rep_monomials()
        raw = [[self.field.zero] * len(reps)
               for _ in range(len(dst.basis))]
        for col, m in enumerate(reps):
            supp = set(m)
            for v, c in ell_idx.items():
                if frozenset(supp | {v}) not in all_faces:
                    continue
                mv = mono_mul(m, v)
                j = dst.index.get(mv)
                if j is None:
                    raise IncompatiblePairError(
                        f"product monomial {mv} lies outside the target "
                        "module (its support is a face of the target Γ)")
                raw[j][col] = self.field.add(raw[j][col], c)
        return dst.reduce_matrix(
            Matrix.from_rows(self.field, raw, ncols=len(reps)))

    def inclusion_matrix(self, k: int, src_gamma, dst_gamma) -> Matrix:
        """Monomial-wise map A^k(Δ, Γ1) -> A^k(Δ, Γ2) for Γ2 ⊆ Γ1."""
        src = self.piece(k, src_gamma)
        dst = self.piece(k, dst_gamma)
        raw = [[self.field.zero] * src.dim for _ in range(len(dst.basis))]
        for col, m in enumerate(src.rep_monomials()):
            j = dst.index.get(m)
            if j is None:
                raise IncompatiblePairError(
                    f"monomial {m} missing from target module; the target "
                    "Γ is not contained in the source Γ")
            raw[j][col] = self.field.one
        return dst.reduce_matrix(
            Matrix.from_rows(self.field, raw, ncols=src.dim))

    def power_map_matrix(self, ell: dict, k: int, power: int,
                         src_gamma=BOUNDARY, dst_gamma=None) -> Matrix:
        """Matrix of ·ell^power : A^k(Δ, Γ1) -> A^(k+power)(Δ, Γ2).

        Composed from single multiplication steps inside the source module,
        with the Γ-shrinking inclusion applied last.
        """
        if power < 0:
            raise DegreeMismatchError("negative power")
        src_gamma = self._resolve_gamma(src_gamma)
        dst_gamma = self._resolve_gamma(dst_gamma)
        cur = Matrix.identity(self.field, self.piece(k, src_gamma).dim)
        for step in range(power):
            cur = self.multiplication_matrix(
                ell, k + step, src_gamma, src_gamma) @ cur
        if self._gamma_key(src_gamma) != self._gamma_key(dst_gamma):
            cur = self.inclusion_matrix(k + power, src_gamma, dst_gamma) @ cur
        return cur

    # -- pairings -----------------------------------------------------------

    def fundamental_class(self) -> FundamentalClass:
        """Generator of A^d(Δ, ∂Δ)^*, the evaluation of the pairing."""
        if self._fc is None:
            self._fc = FundamentalClass(
                self.piece(self.d, BOUNDARY), self.field)
        return self._fc

    def pairing_matrix(self, k: int, left_gamma=BOUNDARY,
                       right_gamma=None) -> Matrix:
        """P[i][j] = <m_i · n_j> with m_i the degree-k representatives of
        the left module and n_j the degree-(d-k) representatives of the
        right module, evaluated by the fundamental class."""
        fc = self.fundamental_class()
        left = self.piece(k, left_gamma)
        right = self.piece(self.d - k, right_gamma)
        _, all_faces = self._face_indices()
        rows = []
        for m in left.rep_monomials():
            row = []
            for nmono in right.rep_monomials():
                prod = mono_product(m, nmono)
                if frozenset(prod) in all_faces:
                    row.append(fc.of_monomial(prod, self.field))
                else:
                    row.append(self.field.zero)
            rows.append(row)
        return Matrix.from_rows(self.field, rows, ncols=right.dim)


# ---------------------------------------------------------------------------
# cross-complex maps and spec-level wrappers
# ---------------------------------------------------------------------------

def restriction_matrix(src: Reduction, dst: Reduction, k: int,
                       src_gamma=None, dst_gamma=None) -> Matrix:
    """Matrix of the ring surjection A^k(Δ) -> A^k(X) for X ⊆ Δ.

    A representative monomial maps to itself when its support is a face of
    X and to zero otherwise.  Both reductions must use coordinates agreeing
    on the shared vertices.
    """
    if not is_subcomplex(dst.cx, src.cx):
        raise IncompatiblePairError(
            f"{dst.cx.name!r} is not a subcomplex of {src.cx.name!r}")
    for v in dst.cx.vertices:
        if src.coords.get(v) != dst.coords.get(v):
            raise IncompatiblePairError(
                f"coordinate mismatch at vertex {v!r}")
    sp = src.piece(k, src_gamma)
    dp = dst.piece(k, dst_gamma)
    field = src.field
    dst_faces = dst.cx.face_set()
    dst_has = set(dst.cx.vertices)
    raw = [[field.zero] * sp.dim for _ in range(len(dp.basis))]
    for col, m in enumerate(sp.rep_monomials()):
        labels = [src.cx.vertices[i] for i in m]
        if not all(v in dst_has for v in labels):
            continue
        if frozenset(labels) not in dst_faces:
            continue
        translated = tuple(sorted(dst.cx.vertex_index(v) for v in labels))
        j = dp.index.get(translated)
        if j is None:
            raise IncompatiblePairError(
                f"monomial {translated} missing from target module")
        raw[j][col] = field.one
    return dp.reduce_matrix(Matrix.from_rows(field, raw, ncols=sp.dim))


def artinian_dims(pair, coords: dict, field=None) -> tuple:
    """dim A^k for k = 0..d of a complex or relative pair.

    Coordinates must be proper; the check names the offending face.
    """
    if isinstance(pair, RelativePair):
        cx, gamma = pair.total, pair.sub
    else:
        cx, gamma = pair, None
    red = Reduction(cx, coords, field=field)
    return red.dims(gamma)

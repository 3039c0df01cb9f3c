"""Abstract and geometric simplicial complexes.

A :class:`Complex` is stored by its facets; faces are enumerated on demand
and memoized per dimension.  Two degenerate complexes are distinguished:

* the *void* complex (no faces at all), written ``Complex.void()``, and
* the complex ``{∅}`` containing only the empty face, ``Complex([()])``.

The distinction matters for relative face modules: a relative pair with a
void subcomplex is the absolute case, while a nonvoid subcomplex excludes
the degree-zero monomial.

Vertex coordinates, when present, are exact rationals attached per vertex.
Working-field coordinates for Artinian reductions are handled separately by
the reduction layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .scalars import Matrix, PrimeField


class SimplicialError(ValueError):
    """Malformed complex or operator misuse."""


class FaceNotFoundError(SimplicialError):
    pass


class NotPureError(SimplicialError):
    pass


class LabelClashError(SimplicialError):
    pass


class TopologyError(SimplicialError):
    """A sphere/ball/manifold precondition failed."""


class EdgeContractionError(SimplicialError):
    """Link condition violated; carries one offending face."""

    def __init__(self, message, violating_face):
        super().__init__(message)
        self.violating_face = violating_face


class SimplicialityError(SimplicialError):
    """An operation would produce duplicate faces; carries the face."""

    def __init__(self, message, face):
        super().__init__(message)
        self.face = face


def _lkey(label):
    """Total order on labels of possibly mixed types."""
    return (label.__class__.__name__, label)


def _fkey(face):
    """Deterministic sort key for faces."""
    return (len(face), tuple(sorted((_lkey(v) for v in face))))


def _sorted_face(face):
    return tuple(sorted(face, key=_lkey))


def _as_face(obj):
    """Coerce a label or an iterable of labels to a frozenset face."""
    if isinstance(obj, (str, int)):
        return frozenset((obj,))
    return frozenset(obj)


_HOMOLOGY_FIELD = PrimeField()


# ---------------------------------------------------------------------------
# the complex
# ---------------------------------------------------------------------------

class Complex:
    """An abstract simplicial complex with optional rational coordinates."""

    __slots__ = ("name", "vertices", "facets", "coords",
                 "_vidx", "_faces", "_face_set", "_cache")

    def __init__(self, facets, vertices=None, coords=None, name=""):
        fs = [frozenset(F) for F in facets]
        fs = sorted(set(fs), key=_fkey)
        for a, b in itertools.combinations(fs, 2):
            if a < b or b < a:
                small, big = (a, b) if a < b else (b, a)
                raise SimplicialError(
                    f"facet {_sorted_face(small)} is contained in facet "
                    f"{_sorted_face(big)}")
        self.facets = tuple(fs)
        used = set().union(*fs) if fs else set()
        if vertices is None:
            self.vertices = tuple(sorted(used, key=_lkey))
        else:
            vertices = tuple(vertices)
            if len(set(vertices)) != len(vertices):
                raise SimplicialError("duplicate vertex label")
            if set(vertices) != used:
                extra = set(vertices) - used
                missing = used - set(vertices)
                if missing:
                    raise SimplicialError(
                        f"facet vertex {sorted(missing, key=_lkey)[0]!r} "
                        "missing from vertex list")
                raise SimplicialError(
                    f"vertex {sorted(extra, key=_lkey)[0]!r} "
                    "appears in no facet")
            self.vertices = vertices
        if coords is not None:
            coords = {v: tuple(Fraction(x) for x in coords[v])
                      for v in self.vertices}
            lengths = {len(c) for c in coords.values()}
            if len(lengths) > 1:
                raise SimplicialError("ragged coordinates")
        self.coords = coords
        self.name = name
        self._vidx = {v: i for i, v in enumerate(self.vertices)}
        self._faces = None
        self._face_set = None
        self._cache = {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def void(cls, name="void"):
        """The complex with no faces at all."""
        return cls((), name=name)

    @classmethod
    def from_faces(cls, faces, vertices=None, coords=None, name=""):
        """Build the complex generated by ``faces`` (reduces to maximal)."""
        faces = sorted({frozenset(F) for F in faces}, key=len, reverse=True)
        maximal = []
        for F in faces:
            if not any(F <= G for G in maximal):
                maximal.append(F)
        if coords is not None and vertices is None:
            used = set().union(*maximal) if maximal else set()
            coords = {v: coords[v] for v in used}
        return cls(maximal, vertices=vertices, coords=coords, name=name)

    # -- basic queries ------------------------------------------------------

    @property
    def is_void(self):
        return not self.facets

    @property
    def is_irrelevant(self):
        """True for the complex ``{∅}``."""
        return self.facets == (frozenset(),)

    @property
    def dim(self):
        """Dimension; -1 for ``{∅}``, -2 for the void complex."""
        if self.is_void:
            return -2
        return max(len(F) for F in self.facets) - 1

    @property
    def n_vertices(self):
        return len(self.vertices)

    def vertex_index(self, v):
        return self._vidx[v]

    def _build_faces(self):
        if self._faces is not None:
            return
        seen = set()
        for F in self.facets:
            sf = _sorted_face(F)
            for r in range(len(sf) + 1):
                for sub in itertools.combinations(sf, r):
                    seen.add(frozenset(sub))
        by_dim = {}
        for f in seen:
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._faces = {k: tuple(sorted(v, key=_fkey))
                       for k, v in by_dim.items()}
        self._face_set = frozenset(seen)

    def faces(self, k):
        """All k-faces in deterministic order (k = -1 gives the empty face)."""
        self._build_faces()
        return self._faces.get(k, ())

    def all_faces(self):
        self._build_faces()
        return self._faces

    def face_set(self):
        self._build_faces()
        return self._face_set

    def has_face(self, face):
        return _as_face(face) in self.face_set() if not self.is_void else False

    def is_pure(self):
        if self.is_void:
            return True
        return len({len(F) for F in self.facets}) == 1

    def facet_degree(self, v):
        return sum(1 for F in self.facets if v in F)

    def edge_degree(self, v):
        return sum(1 for e in self.faces(1) if v in e)

    def rename(self, name):
        cx = Complex(self.facets, vertices=self.vertices,
                     coords=self.coords, name=name)
        return cx

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.facets == other.facets
                and self.vertices == other.vertices
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        label = self.name or "complex"
        return (f"Complex({label}: dim={self.dim}, "
                f"{self.n_vertices} vertices, {len(self.facets)} facets)")


@dataclass(frozen=True)
class RelativePair:
    """A pair (total, sub) with sub a subcomplex of total; sub may be void."""

    total: Complex
    sub: Complex

    def __post_init__(self):
        if not is_subcomplex(self.sub, self.total):
            raise SimplicialError("sub is not a subcomplex of total")

    @classmethod
    def absolute(cls, cx: Complex) -> "RelativePair":
        return cls(cx, Complex.void())


def is_subcomplex(sub: Complex, total: Complex) -> bool:
    if sub.is_void:
        return True
    if total.is_void:
        return False
    faces = total.face_set()
    return all(F in faces for F in sub.facets)


def _restrict_coords(cx: Complex, keep):
    if cx.coords is None:
        return None
    return {v: cx.coords[v] for v in keep}


def _sub(cx: Complex, facets, name):
    """Subcomplex-style constructor keeping vertex order and coordinates."""
    used = set().union(*facets) if facets else set()
    vertices = tuple(v for v in cx.vertices if v in used)
    return Complex(facets, vertices=vertices,
                   coords=_restrict_coords(cx, vertices), name=name)


def _fresh_label(base, taken):
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def star(cx: Complex, face) -> Complex:
    """Closed star: all faces contained in a facet that contains ``face``."""
    sigma = _as_face(face)
    if not cx.has_face(sigma) and sigma:
        raise FaceNotFoundError(f"face {_sorted_face(sigma)} not in complex")
    facets = [F for F in cx.facets if sigma <= F]
    return _sub(cx, facets, f"st({_sorted_face(sigma)}){cx.name}")


def link(cx: Complex, face) -> Complex:
    """Link of ``face``: faces disjoint from it whose union with it is a face.

    Combinatorial only; geometric link coordinates are produced by the
    reduction layer through a projection whose kernel is the span of the
    face, so stored coordinates are dropped here.
    """
    sigma = _as_face(face)
    if not cx.has_face(sigma) and sigma:
        raise FaceNotFoundError(f"face {_sorted_face(sigma)} not in complex")
    facets = [F - sigma for F in cx.facets if sigma <= F]
    used = set().union(*facets) if facets else set()
    vertices = tuple(v for v in cx.vertices if v in used)
    return Complex(facets, vertices=vertices,
                   name=f"lk({_sorted_face(sigma)}){cx.name}")


def deletion(cx: Complex, face) -> Complex:
    """Maximal subcomplex containing no face that contains ``face``."""
    sigma = _as_face(face)
    out = []
    for F in cx.facets:
        if sigma <= F:
            out.extend(F - {s} for s in sigma)
        else:
            out.append(F)
    used = set().union(*out) if out else set()
    vertices = tuple(v for v in cx.vertices if v in used)
    return Complex.from_faces(
        out, vertices=vertices, coords=_restrict_coords(cx, used),
        name=f"del({_sorted_face(sigma)}){cx.name}")


def star_pair(cx: Complex, face) -> RelativePair:
    """The relative pair (star, star minus the face)."""
    sigma = _as_face(face)
    st = star(cx, sigma)
    return RelativePair(st, deletion(st, sigma))


def cone(cx: Complex, apex=None, apex_coords=None, heights=None) -> Complex:
    """Cone over ``cx`` with a fresh apex.

    When ``cx`` carries coordinates in R^l the cone lives in R^(l+1): old
    vertices get a last coordinate from ``heights`` (default 0) and the apex
    gets ``apex_coords`` (default the new unit direction).
    """
    taken = set(cx.vertices)
    if apex is None:
        apex = _fresh_label("apex", taken)
    elif apex in taken:
        raise LabelClashError(f"apex label {apex!r} already used")
    if cx.is_void:
        facets = [frozenset((apex,))]
    else:
        facets = [F | {apex} for F in cx.facets]
    coords = None
    if cx.coords is not None:
        length = len(next(iter(cx.coords.values()))) if cx.coords else 0
        heights = heights or {}
        coords = {v: tuple(cx.coords[v]) + (Fraction(heights.get(v, 0)),)
                  for v in cx.vertices}
        if apex_coords is None:
            apex_coords = (Fraction(0),) * length + (Fraction(1),)
        coords[apex] = tuple(Fraction(x) for x in apex_coords)
        if len(coords[apex]) != length + 1:
            raise SimplicialError("apex coordinates of wrong length")
    return Complex(facets, vertices=cx.vertices + (apex,), coords=coords,
                   name=f"cone({cx.name})" if cx.name else "cone")


def suspension(cx: Complex, north=None, south=None) -> Complex:
    """Two cones over ``cx`` glued along it (two fresh apexes)."""
    taken = set(cx.vertices)
    if north is None:
        north = _fresh_label("N", taken)
    if south is None:
        south = _fresh_label("S", taken | {north})
    if north in taken or south in taken or north == south:
        raise LabelClashError("suspension apex label clash")
    facets = [F | {north} for F in cx.facets]
    facets += [F | {south} for F in cx.facets]
    coords = None
    if cx.coords is not None:
        coords = {v: tuple(cx.coords[v]) + (Fraction(0),)
                  for v in cx.vertices}
        length = len(next(iter(cx.coords.values()))) if cx.coords else 0
        coords[north] = (Fraction(0),) * length + (Fraction(1),)
        coords[south] = (Fraction(0),) * length + (Fraction(-1),)
    return Complex(facets, vertices=cx.vertices + (north, south),
                   coords=coords,
                   name=f"susp({cx.name})" if cx.name else "susp")


def boundary_complex(cx: Complex) -> Complex:
    """Subcomplex generated by ridges lying in exactly one facet."""
    if cx.is_void:
        raise SimplicialError("void complex has no boundary")
    if not cx.is_pure():
        raise NotPureError("boundary requires a pure complex")
    d = cx.dim
    counts = {}
    for F in cx.facets:
        if d == -1:
            counts[frozenset()] = counts.get(frozenset(), 0) + 1
            continue
        for s in F:
            R = F - {s}
            counts[R] = counts.get(R, 0) + 1
    ridges = [R for R, c in counts.items() if c == 1]
    if not ridges:
        return Complex.void(name=f"bd({cx.name})" if cx.name else "bd")
    used = set().union(*ridges)
    vertices = tuple(v for v in cx.vertices if v in used)
    return Complex(sorted(ridges, key=_fkey), vertices=vertices,
                   coords=_restrict_coords(cx, used),
                   name=f"bd({cx.name})" if cx.name else "bd")


def skeleton(cx: Complex, k: int) -> Complex:
    """All faces of dimension at most ``k``."""
    if cx.is_void:
        return cx
    if k > cx.dim:
        raise SimplicialError(f"skeleton degree {k} exceeds dim {cx.dim}")
    faces = list(cx.faces(k))
    faces += [F for F in cx.facets if len(F) - 1 < k]
    used = set().union(*faces) if faces else set()
    vertices = tuple(v for v in cx.vertices if v in used)
    return Complex.from_faces(faces, vertices=vertices,
                              coords=_restrict_coords(cx, used),
                              name=f"skel{k}({cx.name})")


def stellar_subdivision(cx: Complex, face, new_vertex=None,
                        position=None) -> Complex:
    """Stellar subdivision at a face of dimension at least one.

    The new vertex sits, when coordinates are present, at ``position``
    (default: the barycenter of the subdivided face).
    """
    sigma = _as_face(face)
    if len(sigma) < 2:
        raise SimplicialError(
            "stellar subdivision at a vertex is not a subdivision")
    if not cx.has_face(sigma):
        raise FaceNotFoundError(f"face {_sorted_face(sigma)} not in complex")
    taken = set(cx.vertices)
    if new_vertex is None:
        new_vertex = _fresh_label("sd", taken)
    elif new_vertex in taken:
        raise LabelClashError(f"label {new_vertex!r} already used")
    facets = []
    for F in cx.facets:
        if sigma <= F:
            facets.extend((F - {s}) | {new_vertex} for s in sigma)
        else:
            facets.append(F)
    coords = None
    if cx.coords is not None:
        if position is None:
            pts = [cx.coords[v] for v in sigma]
            position = tuple(sum(col, Fraction(0)) / len(pts)
                             for col in zip(*pts))
        coords = dict(cx.coords)
        coords[new_vertex] = tuple(Fraction(x) for x in position)
    return Complex(facets, vertices=cx.vertices + (new_vertex,),
                   coords=coords, name=f"sd({cx.name})" if cx.name else "sd")


def edge_link_condition(cx: Complex, edge):
    """Return None if Lk(u) ∩ Lk(v) = Lk(uv), else one violating face."""
    e = _as_face(edge)
    if len(e) != 2 or not cx.has_face(e):
        raise FaceNotFoundError(f"{_sorted_face(e)} is not an edge")
    u, v = sorted(e, key=_lkey)
    both = link(cx, u).face_set() & link(cx, v).face_set()
    lk_e = link(cx, e).face_set()
    bad = both - lk_e
    if not bad:
        return None
    return min(bad, key=_fkey)


def contract_edge(cx: Complex, edge, weights=None, rng=None) -> Complex:
    """Contract an edge whose link condition holds.

    The endpoints are identified into the earlier endpoint (in vertex
    order); its coordinate becomes a combination of the two old endpoint
    coordinates, by default the midpoint, or random weights when ``rng``
    is given.  Raises :class:`EdgeContractionError` naming a violating
    face when Lk(u) ∩ Lk(v) ≠ Lk(uv).
    """
    e = _as_face(edge)
    bad = edge_link_condition(cx, e)
    if bad is not None:
        raise EdgeContractionError(
            f"link condition fails at face {_sorted_face(bad)}",
            _sorted_face(bad))
    u, v = sorted(e, key=lambda x: cx.vertex_index(x))
    faces = []
    for F in cx.facets:
        if v in F:
            faces.append((F - {v}) | {u})
        else:
            faces.append(F)
    coords = None
    if cx.coords is not None:
        if weights is None:
            if rng is not None:
                weights = (Fraction(rng.randint(1, 97), 1),
                           Fraction(rng.randint(1, 97), 1))
            else:
                weights = (Fraction(1, 2), Fraction(1, 2))
        wu, wv = (Fraction(w) for w in weights)
        coords = {w: cx.coords[w] for w in cx.vertices if w != v}
        coords[u] = tuple(wu * a + wv * b
                          for a, b in zip(cx.coords[u], cx.coords[v]))
    vertices = tuple(w for w in cx.vertices if w != v)
    return Complex.from_faces(faces, vertices=vertices, coords=coords,
                              name=f"contr({cx.name})" if cx.name else "contr")


def double(cx: Complex) -> Complex:
    """Two copies of a ball glued along its boundary.

    Refuses (naming the face) whenever some interior face has all its
    vertices on the boundary: its mirror copy would coincide with it and
    the union would not be a simplicial complex.  Coordinates are dropped;
    the doubled complex is combinatorial.
    """
    if not is_homology_ball(cx):
        raise TopologyError("double requires a homology ball")
    bd = boundary_complex(cx)
    bd_faces = bd.face_set() if not bd.is_void else frozenset()
    bd_vertices = set(bd.vertices)
    for k in range(cx.dim + 1):
        for F in cx.faces(k):
            if F not in bd_faces and set(F) <= bd_vertices:
                raise SimplicialityError(
                    f"interior face {_sorted_face(F)} has all vertices on "
                    "the boundary; its mirror would duplicate it",
                    _sorted_face(F))
    taken = set(cx.vertices)
    mirror = {}
    for v in cx.vertices:
        if v in bd_vertices:
            mirror[v] = v
        else:
            mirror[v] = _fresh_label(f"{v}*", taken)
            taken.add(mirror[v])
    facets = list(cx.facets)
    facets += [frozenset(mirror[v] for v in F) for F in cx.facets]
    return Complex(facets, name=f"double({cx.name})" if cx.name else "double")


def complex_union(a: Complex, b: Complex, name="") -> Complex:
    facets = list(a.facets) + list(b.facets)
    return Complex.from_faces(facets, name=name)


def complex_intersection(a: Complex, b: Complex, name="") -> Complex:
    if a.is_void or b.is_void:
        return Complex.void(name=name)
    common = a.face_set() & b.face_set()
    return Complex.from_faces(common, name=name)


# ---------------------------------------------------------------------------
# enumerative vectors
# ---------------------------------------------------------------------------

def f_vector(cx: Complex) -> tuple:
    """(f_-1, f_0, ..., f_dim); f_-1 = 1 counts the empty face."""
    if cx.is_void:
        raise SimplicialError("void complex has no f-vector")
    return tuple(len(cx.faces(k)) for k in range(-1, cx.dim + 1))


def h_vector(f: tuple, d: int) -> tuple:
    """Binomial transform of the f-vector with parameter ``d``.

    h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_(i-1) for k = 0..d.  The f-vector
    may be shorter than d + 1 entries; missing entries count zero faces.
    """
    f = list(f)
    if len(f) > d + 1:
        raise SimplicialError(f"f-vector of length {len(f)} exceeds d={d}")
    f += [0] * (d + 1 - len(f))
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1))


def h_vector_of(cx: Complex, d=None) -> tuple:
    if d is None:
        d = cx.dim + 1
    return h_vector(f_vector(cx), d)


def g_vector(h: tuple) -> tuple:
    """First differences of h up to the middle; g_0 = h_0."""
    d = len(h) - 1
    return (h[0],) + tuple(h[k] - h[k - 1] for k in range(1, d // 2 + 1))


def dehn_sommerville_check(h: tuple) -> bool:
    """True iff the vector is palindromic."""
    return tuple(h) == tuple(reversed(h))


def _macaulay_bound(n: int, i: int) -> int:
    """Largest value allowed after n at position i in an M-sequence."""
    if n == 0:
        return 0
    rep = []
    m, k = n, i
    while m > 0 and k >= 1:
        a = k
        while comb(a + 1, k) <= m:
            a += 1
        rep.append((a, k))
        m -= comb(a, k)
        k -= 1
    return sum(comb(a + 1, k + 1) for a, k in rep)


def is_m_sequence(g: tuple) -> bool:
    """Macaulay growth test: is ``g`` the Hilbert function of some standard
    graded algebra truncation?"""
    g = tuple(g)
    if not g or g[0] != 1:
        return False
    if any(x < 0 for x in g):
        return False
    for i in range(1, len(g) - 1):
        if g[i + 1] > _macaulay_bound(g[i], i):
            return False
    return True


def euler_characteristic(cx: Complex) -> int:
    """Non-reduced Euler characteristic (faces of dimension >= 0)."""
    f = f_vector(cx)
    return sum((-1) ** k * f[k + 1] for k in range(cx.dim + 1))


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def boundary_matrix(cx: Complex, k: int, field=None) -> Matrix:
    """Matrix of the simplicial boundary map C_k -> C_(k-1).

    Row indices follow ``cx.faces(k-1)``, columns ``cx.faces(k)``; k = 0
    gives the augmentation onto the empty face.
    """
    field = field or _HOMOLOGY_FIELD
    rows_faces = cx.faces(k - 1)
    cols_faces = cx.faces(k)
    row_index = {F: i for i, F in enumerate(rows_faces)}
    rows = [[field.zero] * len(cols_faces) for _ in rows_faces]
    for j, F in enumerate(cols_faces):
        sf = _sorted_face(F)
        for i, v in enumerate(sf):
            sub = frozenset(sf[:i] + sf[i + 1:])
            sign = field.one if i % 2 == 0 else field.canon(-1)
            rows[row_index[sub]][j] = sign
    return Matrix.from_rows(field, rows, ncols=len(cols_faces))


def reduced_homology(cx: Complex, field=None) -> tuple:
    """Reduced Betti numbers over ``field`` in degrees 0..dim."""
    field = field or _HOMOLOGY_FIELD
    if cx.is_void or cx.is_irrelevant:
        return ()
    key = ("betti", field)
    if key in cx._cache:
        return cx._cache[key]
    d = cx.dim
    ranks = [boundary_matrix(cx, k, field).rank() for k in range(d + 1)] + [0]
    betti = tuple(
        len(cx.faces(k)) - ranks[k] - ranks[k + 1] for k in range(d + 1))
    cx._cache[key] = betti
    return betti


def _ridge_degrees(cx: Complex):
    counts = {}
    for F in cx.facets:
        if len(F) == 1:
            counts[frozenset()] = counts.get(frozenset(), 0) + 1
            continue
        for s in F:
            R = F - {s}
            counts[R] = counts.get(R, 0) + 1
    return counts


def is_homology_sphere(cx: Complex) -> bool:
    """Pseudomanifold with the reduced homology of a sphere.

    Approximation used as the strict-mode gate: purity, every ridge in
    exactly two facets, and Betti numbers (0, ..., 0, 1).
    """
    if cx.is_void or cx.is_irrelevant or not cx.is_pure():
        return False
    d = cx.dim
    if any(c != 2 for c in _ridge_degrees(cx).values()):
        return False
    return reduced_homology(cx) == (0,) * d + (1,)


def is_homology_ball(cx: Complex) -> bool:
    """Acyclic pseudomanifold whose ridge-boundary is a homology sphere."""
    if cx.is_void or cx.is_irrelevant or not cx.is_pure():
        return False
    d = cx.dim
    if any(c > 2 for c in _ridge_degrees(cx).values()):
        return False
    if reduced_homology(cx) != (0,) * (d + 1):
        return False
    bd = boundary_complex(cx)
    if bd.is_void:
        return False
    if d == 0:
        return bd.is_irrelevant
    return bd.dim == d - 1 and is_homology_sphere(bd)


def classify_sphere_or_ball(cx: Complex):
    """"sphere", "ball", or None (homology approximation)."""
    if is_homology_sphere(cx):
        return "sphere"
    if is_homology_ball(cx):
        return "ball"
    return None


def is_homology_manifold(cx: Complex) -> bool:
    """Every vertex link is a homology sphere or ball of one dimension less.

    This is the documented stand-in for PL (sub)manifold checks, which are
    not decidable in general.
    """
    if cx.is_void or cx.is_irrelevant:
        return False
    if cx.dim == 0:
        return True
    if not cx.is_pure():
        return False
    for v in cx.vertices:
        lk = link(cx, v)
        if lk.dim != cx.dim - 1:
            return False
        if classify_sphere_or_ball(lk) is None:
            return False
    return True

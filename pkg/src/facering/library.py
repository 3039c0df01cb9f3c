"""Builders for the bundled test complexes.

All builders are deterministic; the randomized ones (stacked spheres and
balls) draw every choice from a seed through the package-wide splitting
scheme, so the same call always returns the same complex.
"""

from __future__ import annotations

import itertools

from .scalars import derive_rng
from .simplicial import Complex, suspension


def simplex(n_vertices: int, name=None) -> Complex:
    """The full simplex on vertices 0..n-1, an (n-1)-ball."""
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    return Complex([tuple(range(n_vertices))],
                   name=name or f"simplex-{n_vertices - 1}")


def boundary_simplex(d: int, name=None) -> Complex:
    """Boundary of the d-simplex: the minimal (d-1)-sphere."""
    if d < 1:
        raise ValueError("d must be positive")
    verts = range(d + 1)
    facets = list(itertools.combinations(verts, d))
    return Complex(facets, name=name or f"boundary-simplex-{d}")


def cross_polytope(n: int, name=None) -> Complex:
    """Boundary of the n-dimensional cross polytope, an (n-1)-sphere.

    Vertices are antipodal pairs (i, +1)/(i, -1) encoded as labels
    ``"x<i>"`` and ``"y<i>"``; facets pick one vertex from each pair.
    """
    if n < 1:
        raise ValueError("n must be positive")
    pairs = [(f"x{i}", f"y{i}") for i in range(n)]
    facets = [frozenset(choice) for choice in itertools.product(*pairs)]
    return Complex(facets, name=name or f"cross-{n}")


def octahedron() -> Complex:
    return cross_polytope(3, name="octahedron")


def cycle(n: int, name=None) -> Complex:
    """The n-gon, a 1-sphere (n >= 3)."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    facets = [(i, (i + 1) % n) for i in range(n)]
    return Complex(facets, name=name or f"cycle-{n}")


def path(n_edges: int, name=None) -> Complex:
    """A path with ``n_edges`` edges, a 1-ball."""
    if n_edges < 1:
        raise ValueError("need at least one edge")
    return Complex([(i, i + 1) for i in range(n_edges)],
                   name=name or f"path-{n_edges}")


def icosahedron() -> Complex:
    """The boundary of the icosahedron: 12 vertices, 30 edges, 20 triangles.

    Built as a pentagonal antiprism capped by two apexes.
    """
    top, bottom = 0, 11
    upper = [1 + i for i in range(5)]
    lower = [6 + i for i in range(5)]
    facets = []
    for i in range(5):
        j = (i + 1) % 5
        facets.append((top, upper[i], upper[j]))
        facets.append((bottom, lower[i], lower[j]))
        facets.append((upper[i], upper[j], lower[i]))
        facets.append((upper[j], lower[i], lower[j]))
    return Complex(facets, name="icosahedron")


def csaszar_torus() -> Complex:
    """The 7-vertex triangulated torus (every pair of vertices an edge)."""
    facets = []
    for i in range(7):
        facets.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        facets.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return Complex(facets, name="csaszar-torus")


def _subdivide_facet(facets, facet, new_vertex):
    out = [F for F in facets if F != facet]
    out.extend((facet - {s}) | {new_vertex} for s in facet)
    return out


def stacked_sphere(dim: int, n_vertices: int, seed: int = 0) -> Complex:
    """A stacked ``dim``-sphere grown by repeated facet subdivision."""
    base = dim + 2
    if n_vertices < base:
        raise ValueError(f"a {dim}-sphere needs at least {base} vertices")
    rng = derive_rng(seed, "stacked-sphere", dim, n_vertices)
    facets = [frozenset(F)
              for F in itertools.combinations(range(base), dim + 1)]
    for v in range(base, n_vertices):
        facet = rng.choice(sorted(facets, key=sorted))
        facets = _subdivide_facet(facets, facet, v)
    return Complex(facets, name=f"stacked-{dim}-sphere-{n_vertices}-s{seed}")


def stacked_ball(dim: int, n_vertices: int, seed: int = 0) -> Complex:
    """A ``dim``-ball grown from a simplex by interior facet subdivisions."""
    base = dim + 1
    if n_vertices < base:
        raise ValueError(f"a {dim}-ball needs at least {base} vertices")
    rng = derive_rng(seed, "stacked-ball", dim, n_vertices)
    facets = [frozenset(range(base))]
    for v in range(base, n_vertices):
        facet = rng.choice(sorted(facets, key=sorted))
        facets = _subdivide_facet(facets, facet, v)
    return Complex(facets, name=f"stacked-{dim}-ball-{n_vertices}-s{seed}")


def cone_over_cycle(n: int = 4) -> Complex:
    """Cone over the n-gon: a 2-ball (n triangles around an apex)."""
    facets = [(i, (i + 1) % n, "apex") for i in range(n)]
    return Complex(facets, name=f"cone-cycle-{n}")


def cone_over_octahedron() -> Complex:
    facets = [F | {"apex"} for F in octahedron().facets]
    return Complex(facets, name="cone-octahedron")


def wedge_of_spheres() -> Complex:
    """Two tetrahedron boundaries sharing one vertex (not a sphere)."""
    a = [F for F in itertools.combinations((0, 1, 2, 3), 3)]
    b = [F for F in itertools.combinations((3, 4, 5, 6), 3)]
    return Complex(a + b, name="wedge")


#: sizes for the randomized part of the bundle; 3-spheres stay small to
#: keep full Artinian reductions fast
_STACKED_2 = (8, 10, 12, 15, 18, 21, 24, 26, 28, 30)
_STACKED_3 = (7, 8, 9, 10, 11, 12, 12, 13, 13, 14)


def bundled_stacked_spheres() -> list:
    out = [stacked_sphere(2, n, seed=i) for i, n in enumerate(_STACKED_2)]
    out += [stacked_sphere(3, n, seed=100 + i)
            for i, n in enumerate(_STACKED_3)]
    return out


def bundled_spheres() -> list:
    """The homology spheres exercised by the acceptance suite."""
    out = [boundary_simplex(d) for d in (3, 4, 5, 6)]
    out.append(octahedron())
    out.append(icosahedron())
    out.append(suspension(octahedron()).rename("susp-octahedron"))
    out.append(suspension(icosahedron()).rename("susp-icosahedron"))
    out.extend(bundled_stacked_spheres())
    return out


def bundled_balls() -> list:
    """The homology balls exercised by the acceptance suite."""
    return [
        simplex(3),
        simplex(4),
        cone_over_cycle(4),
        cone_over_octahedron(),
    ]


BUILTIN_BUILDERS = {
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "torus": csaszar_torus,
    "boundary-simplex-3": lambda: boundary_simplex(3),
    "boundary-simplex-4": lambda: boundary_simplex(4),
    "boundary-simplex-5": lambda: boundary_simplex(5),
    "boundary-simplex-6": lambda: boundary_simplex(6),
    "cross-4": lambda: cross_polytope(4),
    "cycle-4": lambda: cycle(4),
    "simplex-2": lambda: simplex(3),
    "simplex-3": lambda: simplex(4),
    "cone-cycle-4": lambda: cone_over_cycle(4),
    "cone-octahedron": cone_over_octahedron,
    "susp-octahedron": lambda: suspension(octahedron()).rename(
        "susp-octahedron"),
}


def builtin(name: str) -> Complex:
    """Look up a named builtin complex (used by the CLI)."""
    try:
        return BUILTIN_BUILDERS[name]()
    except KeyError:
        known = ", ".join(sorted(BUILTIN_BUILDERS))
        raise KeyError(f"unknown builtin {name!r}; known: {known}") from None

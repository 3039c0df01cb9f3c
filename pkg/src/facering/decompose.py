"""Decomposability machinery for spheres, balls and manifolds.

The B-search looks for an order of vertex deletions through homology
balls/spheres of constant dimension down to a simplex; the A-search adds
the recursive requirement on the link of the deleted vertex in the
boundary.  The C-verifier checks a *supplied* order of interior vertices
against the star-union submanifold conditions (no search).  "Sphere",
"ball" and "submanifold" are certified through reduced homology and ridge
counts, a documented approximation to PL topology.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .artinian import Reduction, sample_proper_coordinates
from .scalars import PrimeField, derive_rng
from .simplicial import (Complex, EdgeContractionError, TopologyError,
                         boundary_complex, classify_sphere_or_ball,
                         complex_intersection, complex_union, contract_edge,
                         deletion, edge_link_condition, f_vector,
                         is_homology_ball, is_homology_sphere, link,
                         reduced_homology, star, _fkey, _lkey, _sorted_face)

SUCCESS = "SUCCESS"
FAILURE = "FAILURE"
BUDGET_EXCEEDED = "BUDGET_EXCEEDED"

DEFAULT_BUDGET = 100_000


class _BudgetExceeded(Exception):
    pass


@dataclass
class TraceStep:
    vertex: object
    f_vector: tuple
    topology: str
    link_trace: "DecompositionTrace | None" = None

    def to_dict(self):
        d = {"vertex": str(self.vertex), "f_vector": list(self.f_vector),
             "topology": self.topology}
        if self.link_trace is not None:
            d["link"] = self.link_trace.to_dict()
        return d


@dataclass
class DecompositionTrace:
    """Replayable record of a decomposition search.

    ``steps`` lists the deleted vertices in order with the f-vector and the
    certified topology of each intermediate; replaying the deletions from
    the input complex reproduces those intermediates exactly.
    """

    kind: str
    outcome: str
    steps: list = dc_field(default_factory=list)
    explored: int = 0
    message: str = ""

    @property
    def success(self):
        return self.outcome == SUCCESS

    def vertices(self):
        return [s.vertex for s in self.steps]

    def replay(self, cx: Complex):
        """Intermediate complexes produced by the recorded deletions."""
        out = []
        cur = cx
        for s in self.steps:
            cur = deletion(cur, (s.vertex,))
            out.append(cur)
        return out

    def to_dict(self):
        return {
            "kind": self.kind,
            "outcome": self.outcome,
            "explored": self.explored,
            "message": self.message,
            "steps": [s.to_dict() for s in self.steps],
        }


def _is_simplex(cx: Complex) -> bool:
    return len(cx.facets) == 1 and not cx.is_void and not cx.is_irrelevant


def _candidate_vertices(cx: Complex):
    """Ascending edge degree, ties by label: low-degree vertices more often
    keep deletions disk-like, and the fixed order makes traces golden."""
    return sorted(cx.vertices, key=lambda v: (cx.edge_degree(v), _lkey(v)))


def _search_b(cx: Complex, counter, budget, kind, link_checker=None):
    """Shared DFS for the B- and A-searches; returns steps or None."""
    if _is_simplex(cx):
        return []
    dim = cx.dim
    for w in _candidate_vertices(cx):
        counter[0] += 1
        if counter[0] > budget:
            raise _BudgetExceeded
        deleted = deletion(cx, (w,))
        if deleted.dim != dim:
            continue
        topo = classify_sphere_or_ball(deleted)
        if topo is None:
            continue
        link_trace = None
        if link_checker is not None:
            link_trace = link_checker(cx, w)
            if link_trace is not None and not link_trace.success:
                continue
        rest = _search_b(deleted, counter, budget, kind, link_checker)
        if rest is not None:
            step = TraceStep(w, f_vector(deleted), topo, link_trace)
            return [step] + rest
    return None


def find_B_decomposition(cx: Complex,
                         budget: int = DEFAULT_BUDGET) -> DecompositionTrace:
    """Search for a vertex order whose deletions stay homology balls or
    spheres of the same dimension down to a simplex.

    Raises :class:`TopologyError` when the input itself is not a homology
    sphere or ball.
    """
    if classify_sphere_or_ball(cx) is None:
        raise TopologyError(
            f"{cx.name or 'input'} is not a homology sphere or ball")
    counter = [0]
    try:
        steps = _search_b(cx, counter, budget, "B")
    except _BudgetExceeded:
        return DecompositionTrace("B", BUDGET_EXCEEDED, explored=counter[0],
                                  message=f"budget {budget} exhausted")
    if steps is None:
        return DecompositionTrace("B", FAILURE, explored=counter[0],
                                  message="no deletion order found")
    return DecompositionTrace("B", SUCCESS, steps=steps,
                              explored=counter[0])


def find_A_decomposition(cx: Complex,
                         budget: int = DEFAULT_BUDGET) -> DecompositionTrace:
    """B-search with the extra requirement that the link of each deleted
    vertex in the current boundary is itself A-decomposable."""
    if classify_sphere_or_ball(cx) is None:
        raise TopologyError(
            f"{cx.name or 'input'} is not a homology sphere or ball")
    counter = [0]

    def link_checker(current, w):
        bd = boundary_complex(current)
        if bd.is_void or w not in set(bd.vertices):
            return DecompositionTrace("A", SUCCESS,
                                      message="empty boundary link")
        lk = link(bd, (w,))
        if lk.is_void or lk.is_irrelevant:
            return DecompositionTrace("A", SUCCESS,
                                      message="empty boundary link")
        if classify_sphere_or_ball(lk) is None:
            return DecompositionTrace("A", FAILURE,
                                      message="boundary link is not a "
                                              "homology sphere or ball")
        steps = _search_b(lk, counter, budget, "A", link_checker)
        if steps is None:
            return DecompositionTrace("A", FAILURE, explored=counter[0],
                                      message="boundary link not "
                                              "A-decomposable")
        return DecompositionTrace("A", SUCCESS, steps=steps)

    try:
        steps = _search_b(cx, counter, budget, "A", link_checker)
    except _BudgetExceeded:
        return DecompositionTrace("A", BUDGET_EXCEEDED, explored=counter[0],
                                  message=f"budget {budget} exhausted")
    if steps is None:
        return DecompositionTrace("A", FAILURE, explored=counter[0],
                                  message="no deletion order found")
    return DecompositionTrace("A", SUCCESS, steps=steps,
                              explored=counter[0])


# ---------------------------------------------------------------------------
# C-decomposability: verification of a supplied order
# ---------------------------------------------------------------------------

@dataclass
class CStep:
    vertex: object
    submanifold: bool
    connected: bool
    frontier_status: str
    union_link_status: str
    detail: dict = dc_field(default_factory=dict)

    def ok(self):
        passing = {"EMPTY", "DEFAULT_0DIM", "VERIFIED"}
        return (self.submanifold and self.connected
                and self.frontier_status in passing
                and self.union_link_status in passing)

    def to_dict(self):
        return {
            "vertex": str(self.vertex),
            "submanifold": self.submanifold,
            "connected": self.connected,
            "frontier_status": self.frontier_status,
            "union_link_status": self.union_link_status,
            "detail": self.detail,
        }


@dataclass
class CVerdict:
    holds: bool
    first_violation: str | None
    steps: list
    covers: bool | None = None

    def to_dict(self):
        return {
            "holds": self.holds,
            "first_violation": self.first_violation,
            "covers": self.covers,
            "steps": [s.to_dict() for s in self.steps],
        }


def _submanifold_ok(union: Complex, ambient_dim: int):
    """Star unions must be connected homology manifolds of full dimension.

    Connectivity is demanded in addition to the link conditions: each
    initial segment has to grow one region for the kernel analysis the
    order is meant to support.
    """
    if union.is_void:
        return True, True
    if union.dim != ambient_dim or not union.is_pure():
        return False, True
    betti = reduced_homology(union)
    connected = betti[0] == 0
    for v in union.vertices:
        lk = link(union, v)
        if lk.dim != ambient_dim - 1 and ambient_dim >= 1:
            return False, connected
        if ambient_dim >= 1 and classify_sphere_or_ball(lk) is None:
            return False, connected
    return True, connected


def _c_link_status(cx: Complex, ambient_dim: int, nested_spec):
    """Status of one codimension-one link complex: empty, the
    0-dimensional base case, or a recursive verification against a
    supplied nested order (a list, or a {"order", "nested"} dict for
    deeper recursion)."""
    if cx.is_void or cx.is_irrelevant:
        return "EMPTY", {}
    if cx.dim == 0:
        return "DEFAULT_0DIM", {}
    if cx.dim != ambient_dim - 1:
        return "WRONG_CODIMENSION", {"dim": cx.dim,
                                     "expected": ambient_dim - 1}
    if nested_spec is None:
        return "UNVERIFIED", {"reason": "no nested order supplied"}
    if isinstance(nested_spec, dict):
        order = nested_spec.get("order", [])
        nested = nested_spec.get("nested")
    else:
        order, nested = nested_spec, None
    sub = verify_C_order(cx, order, nested)
    return ("VERIFIED" if sub.holds else "FAILED"), {"nested": sub.to_dict()}


def verify_C_order(cx: Complex, order, nested_orders=None) -> CVerdict:
    """Check a supplied interior-vertex order for C-decomposability.

    Per step (W = processed prefix, w = next vertex):

    1. the union of stars over W is a connected homology submanifold;
    2. after the last step the stars cover the whole complex;
    3. the two link complexes (link of w in the complex, intersected with
       the boundary united with the star union; and the link of w in the
       star union) are empty, 0-dimensional (the base case), or are
       recursively verified against ``nested_orders[(step, which)]`` with
       ``which`` in {"frontier", "union"}.  Both are checked and reported
       separately.

    A 0-dimensional complex is C-decomposable by default, whatever the
    order says.
    """
    order = list(order)
    nested_orders = nested_orders or {}
    if cx.dim == 0:
        return CVerdict(True, None, [], covers=True)
    bd = boundary_complex(cx) if not cx.is_void else Complex.void()
    interior = [v for v in cx.vertices
                if bd.is_void or v not in set(bd.vertices)]
    interior_set = set(interior)
    for v in order:
        if v not in interior_set:
            raise TopologyError(f"vertex {v!r} is not an interior vertex")
    steps = []
    first_violation = None
    union_cx = Complex.void()
    for i, w in enumerate(order):
        sub_ok, connected = _submanifold_ok(union_cx, cx.dim) \
            if i > 0 else (True, True)
        frontier = complex_intersection(
            link(cx, (w,)),
            complex_union(bd, union_cx) if not bd.is_void else union_cx,
            name="frontier")
        union_link = link(union_cx, (w,)) \
            if not union_cx.is_void and w in set(union_cx.vertices) \
            else Complex.void()
        f_status, f_detail = _c_link_status(
            frontier, cx.dim, nested_orders.get((i, "frontier")))
        u_status, u_detail = _c_link_status(
            union_link, cx.dim, nested_orders.get((i, "union")))
        step = CStep(w, sub_ok, connected, f_status, u_status,
                     detail={"frontier": f_detail, "union": u_detail})
        steps.append(step)
        if first_violation is None:
            if not (sub_ok and connected):
                first_violation = f"(1) at step {i}"
            elif not step.ok():
                first_violation = f"(3) at step {i}"
        union_cx = complex_union(union_cx, star(cx, (w,)),
                                 name="star-union")
    covers = not cx.is_void and set(union_cx.facets) == set(cx.facets)
    if first_violation is None and not covers:
        first_violation = "(2) stars do not cover"
    return CVerdict(first_violation is None, first_violation, steps,
                    covers=covers)


# ---------------------------------------------------------------------------
# edge contraction
# ---------------------------------------------------------------------------

@dataclass
class EdgeStatus:
    edge: tuple
    link_condition: bool
    violating_face: tuple | None
    homology_preserved: bool | None

    def to_dict(self):
        return {
            "edge": [str(v) for v in self.edge],
            "link_condition": self.link_condition,
            "violating_face": ([str(v) for v in self.violating_face]
                               if self.violating_face else None),
            "homology_preserved": self.homology_preserved,
        }


def contractible_edges(cx: Complex) -> list:
    """Classify every edge by the link condition Lk(u) ∩ Lk(v) = Lk(uv)
    and, for passing edges, whether contraction preserves homology."""
    out = []
    base = reduced_homology(cx)
    for e in cx.faces(1):
        edge = _sorted_face(e)
        bad = edge_link_condition(cx, e)
        if bad is not None:
            out.append(EdgeStatus(edge, False, bad, None))
            continue
        contracted = contract_edge(cx, e)
        preserved = reduced_homology(contracted) == base
        out.append(EdgeStatus(edge, True, None, preserved))
    return out


# ---------------------------------------------------------------------------
# D-contraction verification over a supplied schedule
# ---------------------------------------------------------------------------

@dataclass
class DStep:
    edge: tuple
    contracted: bool
    reason: str
    envelope_dim: int | None = None
    target_dim: int | None = None

    def to_dict(self):
        return {
            "edge": [str(v) for v in self.edge],
            "contracted": self.contracted,
            "reason": self.reason,
            "envelope_dim": self.envelope_dim,
            "target_dim": self.target_dim,
        }


def _contract_in(cx: Complex, u, v):
    """Relabel v into u combinatorially, without the link condition."""
    faces = [((F - {v}) | {u}) if v in F else F for F in cx.facets]
    if u in cx._vidx:
        vertices = tuple(w for w in cx.vertices if w != v)
    else:
        vertices = tuple(u if w == v else w for w in cx.vertices)
    return Complex.from_faces(faces, vertices=vertices, name=cx.name)


def verify_D_contractions(envelope: Complex, target: Complex, edges, *,
                          degree: int, seed: int = 0, field=None) -> dict:
    """Replay a claimed contraction schedule for an envelope pair.

    At each step the edge must satisfy the link condition in the envelope;
    both complexes are contracted (the target only if it contains both
    endpoints) and the envelope identity dim A^degree(E) = dim A^degree(X)
    is re-checked at sampled proper coordinates.  No search is performed;
    this verifies a supplied certificate of D-contractibility.
    """
    from .simplicial import is_subcomplex
    field = field or PrimeField()
    if not is_subcomplex(target, envelope):
        raise TopologyError("target is not a subcomplex of the envelope")
    steps = []
    env, tgt = envelope, target
    ok = True
    for i, e in enumerate(edges):
        u, v = sorted(e, key=_lkey)
        try:
            env = contract_edge(env, (u, v))
        except EdgeContractionError as exc:
            steps.append(DStep((u, v), False,
                               f"link condition fails: {exc}"))
            ok = False
            break
        if not tgt.is_void and v in set(tgt.vertices):
            tgt = _contract_in(tgt, u, v)
        rng = derive_rng(seed, "d-contract", i)
        ambient = max(env.dim + 1, degree)
        coords = sample_proper_coordinates(env, ambient, field, rng)
        env_dim = Reduction(env, coords, field=field).dim(degree)
        tgt_dim = Reduction(tgt, coords, field=field).dim(degree) \
            if not tgt.is_void else 0
        matched = env_dim == tgt_dim
        steps.append(DStep((u, v), True,
                           "envelope identity holds" if matched else
                           "envelope identity fails",
                           envelope_dim=env_dim, target_dim=tgt_dim))
        if not matched:
            ok = False
            break
    finished = tgt.is_void or tgt.dim < degree - 1
    return {
        "ok": ok and (finished or not edges),
        "target_reduced": finished,
        "steps": [s.to_dict() for s in steps],
    }

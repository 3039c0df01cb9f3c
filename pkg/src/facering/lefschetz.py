"""Checkers for Lefschetz-type properties of face rings.

Genericity semantics: the properties tested here hold on Zariski-open sets
of coordinates and linear forms, so a single random witness proves the set
is nonempty and the verdict is HOLDS with that witness recorded.  Failure
of every one of T independent trials is only probabilistic evidence and is
reported LIKELY_FAILS, never "false".  ERROR marks violated preconditions
or structural failures.

All randomness is derived from one master seed through labeled paths, so a
verdict's witness is reproducible bit-for-bit from the seed it records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .artinian import (ArtinianError, BOUNDARY, Reduction, generic_form,
                       project_coordinates, projection_killing,
                       restriction_matrix, sample_proper_coordinates,
                       vertex_form)
from .io import input_sha
from .scalars import (DimensionMismatchError, Matrix, PrimeField, Subspace,
                      derive_rng, derive_seed)
from .simplicial import (Complex, FaceNotFoundError, boundary_complex,
                         classify_sphere_or_ball, deletion,
                         dehn_sommerville_check, f_vector, g_vector,
                         h_vector, is_homology_sphere, is_m_sequence, link,
                         star, stellar_subdivision, _as_face, _sorted_face)

HOLDS = "HOLDS"
LIKELY_FAILS = "LIKELY_FAILS"
ERROR = "ERROR"

DEFAULT_TRIALS = 3


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, frozenset):
        return sorted((str(v) for v in x))
    return x


@dataclass
class Verdict:
    """Outcome of a genericity check.

    HOLDS carries a witness reproducible from its recorded seed data;
    LIKELY_FAILS carries the per-trial diagnostics; ERROR carries a reason.
    """

    status: str
    witness: dict | None = None
    trials: list = dc_field(default_factory=list)
    reason: str | None = None

    @property
    def holds(self):
        return self.status == HOLDS

    @property
    def exit_code(self):
        return {HOLDS: 0, LIKELY_FAILS: 2, ERROR: 1}[self.status]

    def to_dict(self):
        return {
            "status": self.status,
            "witness": _jsonable(self.witness),
            "trials": _jsonable(self.trials),
            "reason": self.reason,
        }


def _error(reason):
    return Verdict(ERROR, reason=reason)


def _trial_loop(trials, run_trial):
    """HOLDS on the first succeeding trial, LIKELY_FAILS after all fail."""
    records = []
    for t in range(trials):
        try:
            ok, data = run_trial(t)
        except ArtinianError as exc:
            return _error(str(exc))
        if ok:
            data["trial"] = t
            return Verdict(HOLDS, witness=data)
        data["trial"] = t
        records.append(data)
    return Verdict(LIKELY_FAILS, trials=records)


def _trial_reduction(cx, d, field, seed, t, check=False):
    rng = derive_rng(seed, "trial", t, "coords")
    coords = sample_proper_coordinates(cx, d, field, rng)
    return Reduction(cx, coords, field=field, check=check)


def _gate_sphere(cx, strict):
    if strict and not is_homology_sphere(cx):
        return f"{cx.name or 'input'} is not a homology sphere"
    return None


def _gate_sphere_or_ball(cx, strict):
    if strict and classify_sphere_or_ball(cx) is None:
        return f"{cx.name or 'input'} is not a homology sphere or ball"
    return None


# ---------------------------------------------------------------------------
# weak and hard Lefschetz
# ---------------------------------------------------------------------------

def check_weak_lefschetz(cx: Complex, *, seed=0, trials=DEFAULT_TRIALS,
                         field=None, strict=True) -> Verdict:
    """Injectivity of ·ℓ : A^i -> A^(i+1) for i ≤ d/2 - 1 at sampled data.

    The witness additionally records the map straddling the middle degree
    when d is odd.
    """
    field = field or PrimeField()
    gate = _gate_sphere(cx, strict)
    if gate:
        return _error(gate)
    d = cx.dim + 1

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        ell = generic_form(cx.vertices, field,
                           derive_rng(seed, "trial", t, "ell"))
        maps = []
        ok = True
        for i in range((d - 1) // 2 + 1):
            M = red.multiplication_matrix(ell, i)
            rank = M.rank()
            maps.append({"i": i, "dim_src": M.ncols, "dim_dst": M.nrows,
                         "rank": rank})
            if 2 * i <= d - 2 and rank != M.ncols:
                ok = False
        return ok, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "ell": _jsonable([ell[v] for v in cx.vertices]),
            "maps": maps,
        }

    return _trial_loop(trials, run)


def check_hard_lefschetz(cx: Complex, *, seed=0, trials=DEFAULT_TRIALS,
                         field=None, strict=True) -> Verdict:
    """Bijectivity of ·ℓ^(d-2k) : A^k(Δ, ∂Δ) -> A^(d-k)(Δ) for k ≤ d/2."""
    field = field or PrimeField()
    gate = _gate_sphere_or_ball(cx, strict)
    if gate:
        return _error(gate)
    d = cx.dim + 1

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        ell = generic_form(cx.vertices, field,
                           derive_rng(seed, "trial", t, "ell"))
        maps = []
        ok = True
        for k in range(d // 2 + 1):
            M = red.power_map_matrix(ell, k, d - 2 * k,
                                     src_gamma=BOUNDARY, dst_gamma=None)
            rank = M.rank()
            maps.append({"k": k, "power": d - 2 * k, "dim_src": M.ncols,
                         "dim_dst": M.nrows, "rank": rank})
            if not (M.nrows == M.ncols == rank):
                ok = False
        return ok, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "ell": _jsonable([ell[v] for v in cx.vertices]),
            "maps": maps,
        }

    return _trial_loop(trials, run)


# ---------------------------------------------------------------------------
# biased pairing and biased Poincaré duality
# ---------------------------------------------------------------------------

def check_biased_pairing(cx: Complex, *, seed=0, trials=DEFAULT_TRIALS,
                         field=None, strict=True) -> Verdict:
    """Injectivity of A^k(Δ, ∂Δ) -> A^k(Δ) for k ≤ d/2 on a ball.

    Computed twice: as the rank of the inclusion and as the rank of the
    relative-against-relative pairing; the two ranks must agree, and the
    verdict demands full rank for every k ≤ d/2.
    """
    field = field or PrimeField()
    kind = classify_sphere_or_ball(cx)
    if kind == "sphere":
        return _error("input is a sphere: the property is trivial for "
                      "spheres (the boundary is empty)")
    if strict and kind != "ball":
        return _error(f"{cx.name or 'input'} is not a homology ball")
    d = cx.dim + 1

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        degrees = []
        ok = True
        for k in range(d // 2 + 1):
            inc = red.inclusion_matrix(k, red.boundary, None) \
                if not red.boundary.is_void else \
                Matrix.identity(field, red.piece(k).dim)
            rank_inc = inc.rank()
            pairing = red.pairing_matrix(k, left_gamma=BOUNDARY,
                                         right_gamma=BOUNDARY)
            rank_pair = pairing.rank()
            dim_rel = red.dim(k, BOUNDARY)
            if rank_inc != rank_pair:
                raise ArtinianError(
                    f"internal disagreement at k={k}: inclusion rank "
                    f"{rank_inc} vs pairing rank {rank_pair}")
            injective = rank_inc == dim_rel
            degrees.append({"k": k, "dim_rel": dim_rel,
                            "dim_abs": red.dim(k),
                            "rank": rank_inc, "injective": injective})
            ok = ok and injective
        return ok, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "degrees": degrees,
        }

    return _trial_loop(trials, run)


def check_biased_poincare(cx: Complex, sub: Complex, k: int, *, seed=0,
                          trials=DEFAULT_TRIALS, field=None,
                          strict=True) -> Verdict:
    """Nondegeneracy of the Poincaré pairing restricted to the kernel ideal
    of A(Σ) -> A(X) at degree k ≤ d/2.

    Nondegenerate means no nonzero element of the degree-k part of the
    ideal pairs to zero against its degree-(d-k) part: the restricted
    pairing block has rank dim I^k.  (The two parts need not have equal
    dimensions; for a hemisphere ideal they differ already in degree 0.)
    """
    field = field or PrimeField()
    gate = _gate_sphere(cx, strict)
    if gate:
        return _error(gate)
    d = cx.dim + 1
    if not (0 <= k <= d // 2):
        return _error(f"degree {k} out of range 0..{d // 2}")
    from .simplicial import is_subcomplex
    if not is_subcomplex(sub, cx):
        return _error(f"{sub.name or 'X'} is not a subcomplex")

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        sub_red = Reduction(sub, red.coords, field=field, check=False) \
            if not sub.is_void else Reduction(sub, {}, field=field)
        ideals = {}
        for deg in (k, d - k):
            R = restriction_matrix(red, sub_red, deg)
            ideals[deg] = R.kernel_basis()
        P = red.pairing_matrix(k)
        U = ideals[k].basis
        V = ideals[d - k].basis
        M = U @ P @ V.transpose()
        rank = M.rank()
        dim_k, dim_dk = ideals[k].dim, ideals[d - k].dim
        ok = rank == dim_k
        return ok, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "k": k, "dim_ideal_k": dim_k, "dim_ideal_dk": dim_dk,
            "rank": rank,
        }

    return _trial_loop(trials, run)


# ---------------------------------------------------------------------------
# transversal prime property
# ---------------------------------------------------------------------------

def check_transversal_prime(cx: Complex, vertices, *, degrees=None, seed=0,
                            trials=DEFAULT_TRIALS, field=None) -> Verdict:
    """ker(·ℓ') = ∩_v ker(·x_v) for a generic ℓ' supported on the given
    vertices, in every tested degree.

    Default degrees: 0..⌊(d-1)/2⌋, the range where the iterative
    construction of Lefschetz elements controls kernels.  Above the middle
    the identity is false for trivial reasons (a generic form has a large
    kernel there while the common kernel of all vertex multiplications is
    the socle, which vanishes below the top degree), so testing those
    degrees says nothing about the property.
    """
    field = field or PrimeField()
    W = list(vertices)
    if not W:
        return _error("empty vertex set")
    missing = [v for v in W if v not in set(cx.vertices)]
    if missing:
        return _error(f"vertex {missing[0]!r} not in complex")
    d = cx.dim + 1
    test_degrees = list(degrees) if degrees is not None \
        else list(range((d - 1) // 2 + 1))

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        ell = generic_form(cx.vertices, field,
                           derive_rng(seed, "trial", t, "ell"),
                           support=W)
        per_degree = []
        ok = True
        for k in test_degrees:
            combined = red.multiplication_matrix(ell, k).kernel_basis()
            inter = None
            for v in W:
                ker_v = red.multiplication_matrix(
                    vertex_form(v), k).kernel_basis()
                inter = ker_v if inter is None else inter.intersect(ker_v)
            matched = combined == inter
            per_degree.append({"k": k, "dim_combined": combined.dim,
                               "dim_intersection": inter.dim,
                               "matched": matched})
            ok = ok and matched
        return ok, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "vertices": [str(v) for v in W],
            "degrees": per_degree,
        }

    return _trial_loop(trials, run)


# ---------------------------------------------------------------------------
# the perturbation principle for pairs of maps
# ---------------------------------------------------------------------------

@dataclass
class GenericCombineResult:
    combined: Matrix
    hypothesis_holds: bool
    kernel_verdict: Verdict
    coefficient: object

    @property
    def exit_code(self):
        return self.kernel_verdict.exit_code


def generic_combine(A: Matrix, B: Matrix, *, seed=0,
                    trials=DEFAULT_TRIALS) -> GenericCombineResult:
    """Combine two equal-shaped maps generically and test the kernel law.

    The hypothesis B(ker A) ∩ im A = 0 is checked exactly.  When it holds,
    ker(A + tB) = ker A ∩ ker B must hold for generic t; a failing sample
    is re-drawn (a measure-zero event) and the verdict reports the outcome.
    When the hypothesis fails, the combination is still returned together
    with a counterexample search over the sampled coefficients.
    """
    if A.shape != B.shape or A.field != B.field:
        raise DimensionMismatchError("generic_combine needs equal shapes "
                                     "over one field")
    field = A.field
    ker_a = A.kernel_basis()
    ker_b = B.kernel_basis()
    expected = ker_a.intersect(ker_b)
    image_a = A.column_space()
    b_of_ker = Subspace.from_vectors(
        field, A.nrows, ker_a.basis @ B.transpose())
    hypothesis = b_of_ker.intersect(image_a).is_zero()
    rng = derive_rng(seed, "generic_combine")
    combined = None
    coefficient = None
    records = []
    verdict = None
    for t in range(max(trials, 1)):
        coefficient = field.sample_nonzero(rng)
        combined = A + B.scale(coefficient)
        kernel = combined.kernel_basis()
        matched = kernel == expected
        records.append({"t": _jsonable(coefficient),
                        "dim_kernel": kernel.dim,
                        "dim_expected": expected.dim,
                        "matched": matched})
        if matched:
            verdict = Verdict(HOLDS, witness={
                "coefficient": _jsonable(coefficient),
                "dim_kernel": kernel.dim,
                "samples": records})
            break
    if verdict is None:
        verdict = Verdict(LIKELY_FAILS, trials=records)
    if not hypothesis:
        # without the hypothesis the law is not asserted; report findings
        verdict.witness = verdict.witness or {}
        verdict.witness["hypothesis"] = False
    return GenericCombineResult(combined, hypothesis, verdict, coefficient)


# ---------------------------------------------------------------------------
# cone lemmas
# ---------------------------------------------------------------------------

def cone_lemma_check(cx: Complex, vertex, *, seed=0, trials=DEFAULT_TRIALS,
                     field=None) -> Verdict:
    """Both cone identities at one vertex, for sampled coordinates.

    (I)  dim A^k(link) = dim A^k(star) in every degree, with the link
         realized through a projection killing the vertex direction;
    (II) ·x_v : A^k(star) -> A^(k+1)(star, star - v) is bijective.
    """
    field = field or PrimeField()
    if vertex not in set(cx.vertices):
        return _error(f"vertex {vertex!r} not in complex")
    d = cx.dim + 1
    st = star(cx, (vertex,))
    lk = link(cx, (vertex,))
    st_minus = deletion(st, (vertex,))

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        st_red = Reduction(st, red.coords, field=field, check=False)
        dims_star = st_red.dims()
        if lk.is_void or lk.is_irrelevant:
            dims_link = ()
        else:
            projector = projection_killing([red.coords[vertex]], field)
            lk_coords = project_coordinates(red.coords, lk.vertices,
                                            projector, field)
            dims_link = Reduction(lk, lk_coords, field=field).dims()
        padded = dims_link + (0,) * (len(dims_star) - len(dims_link))
        dims_equal = padded == dims_star
        maps = []
        bijective = True
        for k in range(d):
            M = st_red.multiplication_matrix(vertex_form(vertex), k,
                                             None, st_minus)
            rank = M.rank()
            maps.append({"k": k, "dim_src": M.ncols, "dim_dst": M.nrows,
                         "rank": rank})
            if not (M.nrows == M.ncols == rank):
                bijective = False
        return dims_equal and bijective, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "vertex": str(vertex),
            "dims_star": list(dims_star),
            "dims_link": list(dims_link),
            "dims_equal": dims_equal,
            "maps": maps,
        }

    return _trial_loop(trials, run)


# ---------------------------------------------------------------------------
# reduction to the middle degree
# ---------------------------------------------------------------------------

def middle_reduction_check(cx: Complex, *, seed=0, trials=DEFAULT_TRIALS,
                           field=None, strict=True) -> Verdict:
    """Commuting-square rank equality between a complex and its cone.

    For each k < d/2 the rank of ·θ^(d-2k) : A^k(Δ, ∂Δ) -> A^(d-k)(Δ),
    with θ the generic height form, must equal the rank of
    ·x_apex^(d-2k-1) : A^(k+1)(cone Δ, ∂ cone Δ) -> A^(d-k)(cone Δ) on the
    cone realized one dimension up with those heights.
    """
    from .simplicial import cone as cone_op
    field = field or PrimeField()
    gate = _gate_sphere_or_ball(cx, strict)
    if gate:
        return _error(gate)
    d = cx.dim + 1
    cone_cx = cone_op(cx)
    apex = cone_cx.vertices[-1]

    def run(t):
        red = _trial_reduction(cx, d, field, seed, t)
        hrng = derive_rng(seed, "trial", t, "heights")
        heights = {v: field.sample(hrng) for v in cx.vertices}
        cone_coords = {v: red.coords[v] + (heights[v],)
                       for v in cx.vertices}
        cone_coords[apex] = (field.zero,) * d + (field.one,)
        cone_red = Reduction(cone_cx, cone_coords, field=field)
        theta = dict(heights)
        ranks = []
        ok = True
        for k in [kk for kk in range(d) if 2 * kk < d]:
            top = red.power_map_matrix(theta, k, d - 2 * k,
                                       src_gamma=BOUNDARY, dst_gamma=None)
            bottom = cone_red.power_map_matrix(
                vertex_form(apex), k + 1, d - 2 * k - 1,
                src_gamma=BOUNDARY, dst_gamma=None)
            r_top, r_bot = top.rank(), bottom.rank()
            ranks.append({"k": k, "rank_top": r_top, "rank_bottom": r_bot,
                          "shape_top": list(top.shape),
                          "shape_bottom": list(bottom.shape)})
            if r_top != r_bot:
                ok = False
        return ok, {
            "coords_seed": derive_seed(seed, "trial", t, "coords"),
            "ranks": ranks,
        }

    return _trial_loop(trials, run)


# ---------------------------------------------------------------------------
# stellar invariance of the pairing property
# ---------------------------------------------------------------------------

def stellar_invariance_check(cx: Complex, face, *, degree=None, seed=0,
                             trials=DEFAULT_TRIALS, field=None) -> Verdict:
    """Biased-pairing verdicts agree before and after one interior stellar
    subdivision (statement-level check; the subdivided complex is resampled
    independently)."""
    field = field or PrimeField()
    sigma = _as_face(face)
    if len(sigma) < 2:
        return _error("subdividing a vertex is the identity, "
                      "not a subdivision")
    if not cx.has_face(sigma):
        return _error(f"face {_sorted_face(sigma)} not in complex")
    bd = boundary_complex(cx)
    if not bd.is_void and sigma in bd.face_set():
        return _error(f"face {_sorted_face(sigma)} lies on the boundary")
    subdivided = stellar_subdivision(cx, sigma)
    before = check_biased_pairing(cx, seed=derive_seed(seed, "before"),
                                  trials=trials, field=field)
    after = check_biased_pairing(subdivided,
                                 seed=derive_seed(seed, "after"),
                                 trials=trials, field=field)
    if ERROR in (before.status, after.status):
        return _error(f"component check errored: before={before.status} "
                      f"({before.reason}), after={after.status} "
                      f"({after.reason})")

    def flags(v):
        if not v.holds:
            return None
        out = {rec["k"]: rec["injective"] for rec in v.witness["degrees"]}
        return out

    if degree is None:
        agree = before.status == after.status
        detail = {"before": before.status, "after": after.status}
    else:
        fb, fa = flags(before), flags(after)
        vb = fb.get(degree) if fb else False
        va = fa.get(degree) if fa else False
        agree = vb == va
        detail = {"degree": degree, "before": vb, "after": va}
    witness = {
        "face": _jsonable(_sorted_face(sigma)),
        "agreement": detail,
        "before": before.to_dict(),
        "after": after.to_dict(),
    }
    return Verdict(HOLDS if agree else LIKELY_FAILS, witness=witness)


# ---------------------------------------------------------------------------
# the certificate pipeline
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    """Machine-readable record of the full verification pipeline."""

    name: str
    input_sha: str
    mode: str
    prime: int | None
    seed: int
    seeds: list
    f: list | None = None
    h: list | None = None
    g: list | None = None
    dehn_sommerville: bool | None = None
    m_sequence: bool | None = None
    sphere_check: dict | None = None
    degrees: list | None = None
    witness: dict | None = None
    normalization: str = "last-nonzero-basis-monomial"
    verdict: str = ERROR
    error: dict | None = None

    @property
    def exit_code(self):
        return {HOLDS: 0, LIKELY_FAILS: 2, ERROR: 1}[self.verdict]

    def to_dict(self):
        return {
            "name": self.name,
            "input_sha": self.input_sha,
            "mode": self.mode,
            "prime": self.prime,
            "seed": self.seed,
            "seeds": self.seeds,
            "f": self.f,
            "h": self.h,
            "g": self.g,
            "dehn_sommerville": self.dehn_sommerville,
            "m_sequence": self.m_sequence,
            "sphere_check": _jsonable(self.sphere_check),
            "degrees": _jsonable(self.degrees),
            "witness": _jsonable(self.witness),
            "normalization": self.normalization,
            "verdict": self.verdict,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def certify_g(cx: Complex, *, seed=0, trials=DEFAULT_TRIALS,
              field=None) -> Certificate:
    """Full pipeline: homology gate, f/h/g, palindromicity and Macaulay
    growth, then a hard-Lefschetz witness search."""
    field = field or PrimeField()
    cert = Certificate(
        name=cx.name,
        input_sha=input_sha(cx),
        mode=field.kind,
        prime=getattr(field, "p", None),
        seed=seed,
        seeds=[derive_seed(seed, "trial", t, "coords")
               for t in range(trials)],
    )
    from .simplicial import reduced_homology
    betti = list(reduced_homology(cx)) if not cx.is_void else []
    sphere_ok = is_homology_sphere(cx)
    cert.sphere_check = {"ok": sphere_ok, "betti": betti}
    if not sphere_ok:
        cert.error = {"stage": "homology",
                      "message": "input is not a homology sphere"}
        return cert
    d = cx.dim + 1
    f = f_vector(cx)
    h = h_vector(f, d)
    g = g_vector(h)
    cert.f, cert.h, cert.g = list(f), list(h), list(g)
    cert.dehn_sommerville = dehn_sommerville_check(h)
    cert.m_sequence = is_m_sequence(g)
    if not cert.dehn_sommerville:
        cert.error = {"stage": "dehn-sommerville",
                      "message": "h-vector is not palindromic"}
        return cert
    hl = check_hard_lefschetz(cx, seed=seed, trials=trials, field=field,
                              strict=False)
    if hl.status == ERROR:
        cert.error = {"stage": "hard-lefschetz", "message": hl.reason}
        return cert
    cert.verdict = hl.status
    if hl.holds:
        cert.witness = {"trial": hl.witness["trial"],
                        "coords_seed": hl.witness["coords_seed"],
                        "ell": hl.witness["ell"]}
        cert.degrees = hl.witness["maps"]
    else:
        cert.degrees = hl.trials[-1]["maps"] if hl.trials else []
        cert.error = {"stage": "hard-lefschetz",
                      "message": f"no witness in {trials} trials"}
    return cert

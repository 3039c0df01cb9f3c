"""Command-line frontend.

Every subcommand reads a complex (JSON, facet list, or ``builtin:<name>``),
runs one checker, prints a human-readable report and optionally writes a
machine-readable JSON record.  Exit codes: 0 for HOLDS/success, 2 for
LIKELY_FAILS (or a failed search), 1 for errors and violated
preconditions.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import decompose as dec
from . import lefschetz as lef
from .artinian import (ArtinianError, Reduction, coordinates_from_complex,
                       sample_proper_coordinates)
from .io import ParseError, dumps_complex, input_sha, parse_complex
from .scalars import DEFAULT_PRIME, PrimeField, RationalField, derive_rng
from .simplicial import (SimplicialError, boundary_complex,
                         classify_sphere_or_ball, dehn_sommerville_check,
                         f_vector, g_vector, h_vector, is_m_sequence,
                         reduced_homology)


def _field(mode):
    return PrimeField() if mode == "prime" else RationalField()


def _load(path):
    try:
        return parse_complex(path)
    except FileNotFoundError:
        click.echo(f"error: no such file: {path}", err=True)
        sys.exit(1)
    except (ParseError, SimplicialError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _emit_json(json_path, payload):
    if json_path:
        Path(json_path).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")


def _finish(verdict, json_path, payload=None):
    data = payload if payload is not None else verdict.to_dict()
    _emit_json(json_path, data)
    sys.exit(verdict.exit_code)


def common_options(f):
    for opt in (
        click.option("--seed", type=int, default=0, show_default=True,
                     help="Master seed; all randomness derives from it."),
        click.option("--trials", type=int, default=lef.DEFAULT_TRIALS,
                     show_default=True,
                     help="Independent genericity trials before "
                          "LIKELY_FAILS."),
        click.option("--mode", type=click.Choice(["prime", "rational"]),
                     default="prime", show_default=True,
                     help=f"Scalar field (prime p = {DEFAULT_PRIME})."),
        click.option("--strict/--trust", "strict", default=True,
                     show_default=True,
                     help="Verify sphere/ball preconditions homologically."),
        click.option("--json", "json_path", type=click.Path(), default=None,
                     help="Write a machine-readable record here."),
    ):
        f = opt(f)
    return f


@click.group()
def main():
    """Face rings of simplicial complexes: exact Artinian reductions,
    pairings, and Lefschetz property checks."""


@main.command()
@click.argument("path")
@common_options
def vectors(path, seed, trials, mode, strict, json_path):
    """Print f-, h- and g-vectors with the classical checks."""
    cx = _load(path)
    f = f_vector(cx)
    d = cx.dim + 1
    h = h_vector(f, d)
    g = g_vector(h)
    ds = dehn_sommerville_check(h)
    mseq = is_m_sequence(g)
    click.echo(f"{cx.name or path}: dim {cx.dim}, d = {d}")
    click.echo(f"  f = {f}")
    click.echo(f"  h = {h}")
    click.echo(f"  g = {g}")
    click.echo(f"  palindromic h (Dehn-Sommerville): {ds}")
    click.echo(f"  g is an M-sequence: {mseq}")
    _emit_json(json_path, {"input_sha": input_sha(cx), "f": list(f),
                           "h": list(h), "g": list(g),
                           "dehn_sommerville": ds, "m_sequence": mseq})
    sys.exit(0)


@main.command()
@click.argument("path")
@common_options
def homology(path, seed, trials, mode, strict, json_path):
    """Reduced Betti numbers and the sphere/ball classification."""
    cx = _load(path)
    betti = reduced_homology(cx, field=_field(mode))
    kind = classify_sphere_or_ball(cx)
    click.echo(f"{cx.name or path}: reduced Betti numbers {betti}")
    click.echo(f"  classification: {kind or 'neither sphere nor ball'}")
    _emit_json(json_path, {"input_sha": input_sha(cx),
                           "betti": list(betti), "classification": kind})
    sys.exit(0)


@main.command()
@click.argument("path")
@click.option("--samples", type=int, default=1, show_default=True,
              help="Independent coordinate samples.")
@common_options
def artinian(path, samples, seed, trials, mode, strict, json_path):
    """Graded dimensions of the reduction, against the h-vector."""
    cx = _load(path)
    field = _field(mode)
    d = cx.dim + 1
    h = h_vector(f_vector(cx), d)
    results = []
    for t in range(samples):
        if cx.coords is not None and t == 0:
            coords = coordinates_from_complex(cx, field)
            label = "input coordinates"
        else:
            coords = sample_proper_coordinates(
                cx, d, field, derive_rng(seed, "artinian", t))
            label = f"sample {t}"
        try:
            dims = Reduction(cx, coords, field=field).dims()
        except ArtinianError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        results.append({"sample": label, "dims": list(dims)})
        click.echo(f"  {label}: dim A^k = {dims}")
    click.echo(f"  h-vector:          {h}")
    agree = all(tuple(r["dims"]) == h for r in results)
    click.echo(f"  dims equal h: {agree}")
    _emit_json(json_path, {"input_sha": input_sha(cx), "h": list(h),
                           "results": results, "agree": agree})
    sys.exit(0 if agree else 2)


@main.command()
@click.argument("path")
@click.option("--property", "which", type=click.Choice(["hard", "weak"]),
              default="hard", show_default=True)
@common_options
def lefschetz(path, which, seed, trials, mode, strict, json_path):
    """Hard or weak Lefschetz property at sampled generic data."""
    cx = _load(path)
    check = (lef.check_hard_lefschetz if which == "hard"
             else lef.check_weak_lefschetz)
    verdict = check(cx, seed=seed, trials=trials, field=_field(mode),
                    strict=strict)
    _print_verdict(cx, f"{which} Lefschetz", verdict)
    if verdict.holds:
        label = "k" if which == "hard" else "i"
        for rec in verdict.witness["maps"]:
            deg = rec.get("k", rec.get("i"))
            extra = (f"  (power {rec['power']})" if "power" in rec else "")
            click.echo(f"    {label}={deg}: {rec['dim_src']} -> "
                       f"{rec['dim_dst']}, rank {rec['rank']}{extra}")
    _finish(verdict, json_path)


@main.command()
@click.argument("path")
@click.option("--degree", type=int, default=None,
              help="Single degree to report (default: all).")
@common_options
def pairing(path, degree, seed, trials, mode, strict, json_path):
    """Ranks of the degree-k pairing blocks A^k(Δ,∂Δ) x A^(d-k)(Δ)."""
    cx = _load(path)
    field = _field(mode)
    d = cx.dim + 1
    if strict and classify_sphere_or_ball(cx) is None:
        click.echo("error: input is not a homology sphere or ball",
                   err=True)
        sys.exit(1)
    coords = sample_proper_coordinates(cx, d, field,
                                       derive_rng(seed, "pairing"))
    red = Reduction(cx, coords, field=field)
    degrees = [degree] if degree is not None else list(range(d + 1))
    rows = []
    ok = True
    for k in degrees:
        try:
            P = red.pairing_matrix(k)
        except ArtinianError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        rank = P.rank()
        nondeg = P.nrows == P.ncols == rank
        ok = ok and nondeg
        rows.append({"k": k, "rows": P.nrows, "cols": P.ncols,
                     "rank": rank, "nonsingular": nondeg})
        click.echo(f"  k={k}: A^{k}(Δ,∂Δ) x A^{d - k}(Δ): "
                   f"{P.nrows} x {P.ncols}, rank {rank}")
    _emit_json(json_path, {"input_sha": input_sha(cx), "degrees": rows})
    sys.exit(0 if ok else 2)


@main.command()
@click.argument("path")
@click.option("--subcomplex", "sub_path", type=str, default=None,
              help="Check biased Poincaré duality at this subcomplex.")
@click.option("--degree", type=int, default=None)
@common_options
def biased(path, sub_path, degree, seed, trials, mode, strict, json_path):
    """Biased pairing (balls) or biased Poincaré duality at a subcomplex."""
    cx = _load(path)
    field = _field(mode)
    if sub_path is None:
        verdict = lef.check_biased_pairing(cx, seed=seed, trials=trials,
                                           field=field, strict=strict)
        _print_verdict(cx, "biased pairing", verdict)
        _finish(verdict, json_path)
    sub = _load(sub_path)
    d = cx.dim + 1
    degrees = [degree] if degree is not None else list(range(d // 2 + 1))
    results = []
    worst = 0
    for k in degrees:
        v = lef.check_biased_poincare(cx, sub, k, seed=seed, trials=trials,
                                      field=field, strict=strict)
        _print_verdict(cx, f"biased Poincaré duality at degree {k}", v)
        results.append({"k": k, **v.to_dict()})
        worst = max(worst, v.exit_code)
    _emit_json(json_path, {"input_sha": input_sha(cx), "results": results})
    sys.exit(worst)


@main.command()
@click.argument("path")
@click.option("--vertices", required=True,
              help="Comma-separated support of the combined form.")
@common_options
def transversal(path, vertices, seed, trials, mode, strict, json_path):
    """Transversal prime property for a vertex set."""
    cx = _load(path)
    labels = _match_vertices(cx, vertices)
    verdict = lef.check_transversal_prime(cx, labels, seed=seed,
                                          trials=trials, field=_field(mode))
    _print_verdict(cx, f"transversal prime for {labels}", verdict)
    _finish(verdict, json_path)


@main.command(name="cone-check")
@click.argument("path")
@click.option("--vertex", default=None,
              help="Single vertex (default: every vertex).")
@common_options
def cone_check(path, vertex, seed, trials, mode, strict, json_path):
    """Cone identities (link/star dimensions, apex multiplication)."""
    cx = _load(path)
    field = _field(mode)
    targets = _match_vertices(cx, vertex) if vertex else list(cx.vertices)
    results = []
    worst = 0
    for v in targets:
        verdict = lef.cone_lemma_check(cx, v, seed=seed, trials=trials,
                                       field=field)
        _print_verdict(cx, f"cone identities at {v!r}", verdict)
        results.append({"vertex": str(v), **verdict.to_dict()})
        worst = max(worst, verdict.exit_code)
    _emit_json(json_path, {"input_sha": input_sha(cx), "results": results})
    sys.exit(worst)


@main.command(name="middle-check")
@click.argument("path")
@common_options
def middle_check(path, seed, trials, mode, strict, json_path):
    """Commuting-square rank equality between the complex and its cone."""
    cx = _load(path)
    verdict = lef.middle_reduction_check(cx, seed=seed, trials=trials,
                                         field=_field(mode), strict=strict)
    _print_verdict(cx, "middle reduction square", verdict)
    if verdict.holds:
        for rec in verdict.witness["ranks"]:
            click.echo(f"    k={rec['k']}: rank {rec['rank_top']} above, "
                       f"rank {rec['rank_bottom']} on the cone")
    _finish(verdict, json_path)


@main.command(name="decompose")
@click.argument("path")
@click.option("--kind", type=click.Choice(["B", "A", "C"]), default="B",
              show_default=True)
@click.option("--order", default=None,
              help="Comma-separated interior vertices (C only).")
@click.option("--budget", type=int, default=dec.DEFAULT_BUDGET,
              show_default=True)
@common_options
def decompose_cmd(path, kind, order, budget, seed, trials, mode, strict,
                  json_path):
    """Decomposability search (B/A) or C-order verification."""
    cx = _load(path)
    if kind == "C":
        if order is None:
            click.echo("error: --order is required for kind C", err=True)
            sys.exit(1)
        try:
            verdict = dec.verify_C_order(cx, _match_vertices(cx, order))
        except SimplicialError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        click.echo(f"{cx.name or path}: C-order "
                   f"{'HOLDS' if verdict.holds else 'FAILS'}"
                   + (f" ({verdict.first_violation})"
                      if verdict.first_violation else ""))
        _emit_json(json_path, verdict.to_dict())
        sys.exit(0 if verdict.holds else 2)
    try:
        trace = (dec.find_B_decomposition(cx, budget=budget) if kind == "B"
                 else dec.find_A_decomposition(cx, budget=budget))
    except SimplicialError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"{cx.name or path}: {kind}-decomposition {trace.outcome} "
               f"({trace.explored} intermediates explored)")
    for s in trace.steps:
        click.echo(f"    delete {s.vertex!r}: {s.topology}, "
                   f"f = {tuple(s.f_vector)}")
    _emit_json(json_path, trace.to_dict())
    sys.exit(0 if trace.success else 2)


@main.command()
@click.argument("path")
@click.option("--edge", default=None,
              help="Contract this edge (u,v) and print the result.")
@click.option("--output", type=click.Path(), default=None,
              help="Write the contracted complex here (with --edge).")
@common_options
def contract(path, edge, output, seed, trials, mode, strict, json_path):
    """List contractible edges, or perform one contraction."""
    cx = _load(path)
    if edge is not None:
        labels = _match_vertices(cx, edge)
        from .simplicial import EdgeContractionError, contract_edge
        try:
            result = contract_edge(cx, labels)
        except EdgeContractionError as exc:
            click.echo(f"refused: {exc}", err=True)
            sys.exit(2)
        except SimplicialError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        click.echo(f"contracted {labels}: f = {f_vector(result)}")
        if output:
            Path(output).write_text(dumps_complex(result), encoding="utf-8")
        _emit_json(json_path, {"f": list(f_vector(result))})
        sys.exit(0)
    records = dec.contractible_edges(cx)
    good = [r for r in records if r.link_condition]
    click.echo(f"{cx.name or path}: {len(good)} of {len(records)} edges "
               "satisfy the link condition")
    for r in records:
        if r.link_condition:
            click.echo(f"    {r.edge}: contractible, homology preserved: "
                       f"{r.homology_preserved}")
        else:
            click.echo(f"    {r.edge}: refused, violating face "
                       f"{r.violating_face}")
    _emit_json(json_path, {"input_sha": input_sha(cx),
                           "edges": [r.to_dict() for r in records]})
    sys.exit(0)


@main.command()
@click.argument("path")
@common_options
def certify(path, seed, trials, mode, strict, json_path):
    """Full pipeline: homology, vectors, Macaulay growth, Lefschetz witness."""
    cx = _load(path)
    cert = lef.certify_g(cx, seed=seed, trials=trials, field=_field(mode))
    click.echo(f"{cx.name or path}: certificate verdict {cert.verdict}")
    if cert.error:
        click.echo(f"  failed stage: {cert.error['stage']} "
                   f"({cert.error['message']})")
    else:
        click.echo(f"  f = {tuple(cert.f)}  h = {tuple(cert.h)}  "
                   f"g = {tuple(cert.g)}")
        click.echo(f"  M-sequence: {cert.m_sequence}")
        for rec in cert.degrees:
            click.echo(f"    k={rec['k']}: ·ℓ^{rec['power']} rank "
                       f"{rec['rank']} on {rec['dim_src']} -> "
                       f"{rec['dim_dst']}")
    if json_path:
        Path(json_path).write_text(cert.to_json(), encoding="utf-8")
    else:
        click.echo(cert.to_json(), nl=False)
    sys.exit(cert.exit_code)


def _match_vertices(cx, spec):
    """Resolve a comma-separated label list against the complex's labels."""
    by_str = {str(v): v for v in cx.vertices}
    out = []
    for token in str(spec).split(","):
        token = token.strip()
        if not token:
            continue
        if token not in by_str:
            click.echo(f"error: vertex {token!r} not in complex", err=True)
            sys.exit(1)
        out.append(by_str[token])
    return out


def _print_verdict(cx, what, verdict):
    name = cx.name or "input"
    if verdict.holds:
        click.echo(f"{name}: {what}: HOLDS "
                   f"(witness trial {verdict.witness.get('trial')})")
    elif verdict.status == lef.LIKELY_FAILS:
        click.echo(f"{name}: {what}: LIKELY_FAILS "
                   f"({len(verdict.trials)} failing trials)")
    else:
        click.echo(f"{name}: {what}: ERROR ({verdict.reason})")


if __name__ == "__main__":
    main()

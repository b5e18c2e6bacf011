"""The ``cybiv`` command line.

Exit codes: 0 success, 1 a check failed (non-integrable input, failing
verification case, uncertified presentation), 2 usage or parse error.
"""

from __future__ import annotations

import functools
import sys
from typing import Callable

import click

from . import catalog
from .analysis import casimirs, degeneracy_locus, foliation_report
from .exactpoly import PolySyntaxError, format_poly, parse_poly
from .schouten import b_operator, combine_w1, is_integrable, self_bracket, sn_bracket
from .sections import (
    BivectorField,
    DegreeBoundError,
    NotGlobalError,
    certified_presentation,
    module_presentation,
    section_basis,
)
from .symmetries import isomorphism_catalog, verify_generation_by_embeddings
from .textio import parse_bivector, parse_function
from .threefold import ThreefoldSpec
from .verify import published_generators, relation_holds, render_json, run_verify_paper

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


def _spec(k: int | None, k1: int | None, k2: int | None) -> ThreefoldSpec:
    if k is not None:
        if k1 is not None or k2 is not None:
            raise click.UsageError("use either --k or --k1/--k2")
        return ThreefoldSpec.from_k(k)
    if k1 is None or k2 is None:
        raise click.UsageError("give --k, or both --k1 and --k2")
    return ThreefoldSpec(k1, k2)


def spec_options(fn: Callable) -> Callable:
    """--k / --k1 --k2, folded into a ``spec`` argument."""

    @click.option("--k", "k", type=int, default=None, help="sets (k1, k2) = (k, 2-k)")
    @click.option("--k1", type=int, default=None)
    @click.option("--k2", type=int, default=None)
    @functools.wraps(fn)
    def wrapper(k, k1, k2, **kwargs):
        return fn(spec=_spec(k, k1, k2), **kwargs)

    return wrapper


json_option = click.option("--json", "as_json", is_flag=True, help="machine-readable output")


def _emit(as_json: bool, data, text: str) -> None:
    if as_json:
        click.echo(render_json(data), nl=False)
    else:
        click.echo(text)


def _usage(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_USAGE)


def known_generators(spec: ThreefoldSpec) -> dict[str, BivectorField]:
    """Named generators: the published ones on W1, W2, W3, else a computed set."""
    if spec.is_calabi_yau and spec.k1 in catalog.GENERATORS:
        return published_generators(spec.k1)
    pres = certified_presentation(spec)
    return {lbl: g.with_label(lbl) for lbl, g in zip(pres.labels, pres.generators)}


def _structure(spec: ThreefoldSpec, gen: str | None, q: str | None) -> BivectorField:
    if (gen is None) == (q is None):
        raise click.UsageError("give exactly one of --gen and --q")
    try:
        gens = known_generators(spec)
        if gen is not None:
            if gen not in gens:
                raise click.UsageError(f"unknown generator {gen!r} on {spec.name} (have {', '.join(gens)})")
            return gens[gen]
        return parse_bivector(q, spec, generators=gens)
    except (PolySyntaxError, NotGlobalError) as exc:
        _usage(exc)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main() -> None:
    """Holomorphic bivectors and Poisson structures on W_{k1,k2}."""


@main.command()
@spec_options
@click.option("--neighborhood", type=click.IntRange(min=0), default=2, show_default=True)
@json_option
def sections(spec, neighborhood, as_json):
    """Basis of bivector sections up to a formal neighborhood."""
    basis = section_basis(spec, neighborhood)
    data = {
        "spec": [spec.k1, spec.k2],
        "neighborhood": neighborhood,
        "dimension": len(basis),
        "basis": [b.to_json() for b in basis],
    }
    lines = [f"{spec.name}, neighborhood {neighborhood}: dimension {len(basis)}"]
    lines += [f"  {b!r}" for b in basis]
    _emit(as_json, data, "\n".join(lines))


@main.command()
@spec_options
@click.option("--degree-bound", type=click.IntRange(min=0), default=None, help="fixed bound; default raises it until certified")
@json_option
def presentation(spec, degree_bound, as_json):
    """Minimal generators and relations of the module of sections."""
    basis, preferred = [], []
    if spec.is_calabi_yau and spec.k1 in catalog.GENERATORS:
        basis = list(published_generators(spec.k1).values())
        valid = [r for r in catalog.RELATIONS[spec.k1] if relation_holds(spec.k1, r)[0]]
        preferred = [{lbl: parse_poly(c) for lbl, c in r.items()} for r in valid]
    try:
        if degree_bound is None:
            pres = certified_presentation(spec, basis, preferred_relations=preferred)
        else:
            pres = module_presentation(spec, basis, degree_bound, preferred_relations=preferred)
    except DegreeBoundError as exc:
        click.echo(f"uncertified: {exc}", err=True)
        sys.exit(EXIT_CHECK)
    data = {
        "spec": [spec.k1, spec.k2],
        "degree_bound": pres.degree_bound,
        "generators": [g.to_json() for g in pres.generators],
        "relations": [[format_poly(c) for c in rel] for rel in pres.relations],
    }
    lines = [f"{spec.name}: {len(pres.generators)} generators, {len(pres.relations)} relations (degree bound {pres.degree_bound})"]
    lines += [f"  {lbl} = ({', '.join(g.to_strings())})" for lbl, g in zip(pres.labels, pres.generators)]
    lines += ["relations:"] + [f"  {pres.format_relation(r)} = 0" for r in pres.relations]
    _emit(as_json, data, "\n".join(lines))


@main.command()
@spec_options
@click.option("--q", "q_text", required=True, help='"q0,q1,q2" or a combination such as "z*u2*e1 + e3"')
@click.option("--p", "p_text", default=None, help="second bivector; default is q itself")
@json_option
def bracket(spec, q_text, p_text, as_json):
    """Schouten-Nijenhuis bracket [q, p] as a multiple of d0^d1^d2."""
    try:
        gens = known_generators(spec)
        q = parse_bivector(q_text, spec, generators=gens)
        p = q if p_text is None else parse_bivector(p_text, spec, generators=gens)
    except (PolySyntaxError, NotGlobalError) as exc:
        _usage(exc)
    t = sn_bracket(q, p)
    data = {"spec": [spec.k1, spec.k2], "trivector": {"U": format_poly(t.coeff), "V": format_poly(t.v_coeff(), ("xi", "v1", "v2"))}}
    _emit(as_json, data, f"[q, p] = ({format_poly(t.coeff)}) d0^d1^d2")


@main.command()
@spec_options
@click.option("--q", "q_text", required=True)
@json_option
def integrable(spec, q_text, as_json):
    """Exit 0 if [q, q] = 0, else print the obstruction [q, q]/2 and exit 1."""
    try:
        q = parse_bivector(q_text, spec, generators=known_generators(spec))
    except (PolySyntaxError, NotGlobalError) as exc:
        _usage(exc)
    ob = self_bracket(q).coeff
    data = {"spec": [spec.k1, spec.k2], "integrable": not ob, "obstruction": format_poly(ob)}
    _emit(as_json, data, "integrable" if not ob else f"not integrable: [q, q]/2 = ({format_poly(ob)}) d0^d1^d2")
    sys.exit(EXIT_OK if not ob else EXIT_CHECK)


@main.command("b-op")
@click.option("--p", "p_text", required=True, help='"p1,p2,p3,p4", global functions on W1')
@json_option
def b_op(p_text, as_json):
    """The operator B on W1; B(p) = 0 iff sum p^h e_h is Poisson."""
    w1 = ThreefoldSpec(1, 1)
    parts = p_text.split(",")
    if len(parts) != 4:
        _usage(PolySyntaxError(f"expected four comma-separated functions, got {len(parts)}", p_text, len(p_text)))
    try:
        p = [parse_function(t, w1) for t in parts]
    except (PolySyntaxError, NotGlobalError) as exc:
        _usage(exc)
    value = b_operator(p)
    data = {"B": format_poly(value), "bivector": combine_w1(p).to_json()}
    _emit(as_json, data, f"B(p) = {format_poly(value)}")


def structure_options(fn: Callable) -> Callable:
    fn = click.option("--q", "q_text", default=None, help="explicit bivector instead of --gen")(fn)
    fn = click.option("--gen", default=None, help="generator label, e.g. e11")(fn)
    return fn


@main.command()
@spec_options
@structure_options
@json_option
def degeneracy(spec, gen, q_text, as_json):
    """Degeneracy locus (where the bivector vanishes) in both charts."""
    q = _structure(spec, gen, q_text)
    if q.is_zero():
        _usage(ValueError("the zero bivector degenerates everywhere"))
    locus = degeneracy_locus(q)
    _emit(as_json, locus.to_json(), str(locus))


@main.command()
@spec_options
@structure_options
@click.option("--degree-bound", type=click.IntRange(min=0), default=4, show_default=True, help="max fiber degree of the ansatz")
@json_option
def casimir(spec, gen, q_text, degree_bound, as_json):
    """Casimir functions of a Poisson structure."""
    q = _structure(spec, gen, q_text)
    if not is_integrable(q):
        click.echo("error: not a Poisson structure", err=True)
        sys.exit(EXIT_CHECK)
    cs = casimirs(q, degree_bound)
    text = f"U chart: {cs.u_local.description()}\nV chart: {cs.v_local.description()}\n"
    text += "global basis: " + ", ".join(format_poly(b) for b in cs.basis)
    _emit(as_json, cs.to_json(), text)


@main.command()
@spec_options
@structure_options
@click.option("--degree-bound", type=click.IntRange(min=0), default=4, show_default=True)
@json_option
def foliation(spec, gen, q_text, degree_bound, as_json):
    """Degeneracy locus, Casimirs and leaves of a Poisson structure."""
    q = _structure(spec, gen, q_text)
    if q.is_zero() or not is_integrable(q):
        click.echo("error: needs a nonzero Poisson structure", err=True)
        sys.exit(EXIT_CHECK)
    report = foliation_report(q, degree_bound)
    _emit(as_json, report.to_json(), report.to_text())


@main.command()
@spec_options
@json_option
def isos(spec, as_json):
    """Generators related by the symmetries s0, s1 up to scale."""
    certs = isomorphism_catalog(spec, list(known_generators(spec).values()))
    _emit(as_json, {"certificates": [c.to_json() for c in certs]}, "\n".join(str(c) for c in certs) or "none")


@main.command()
@spec_options
@click.option("--fibre", type=int, default=None, help="fibre z = value for j0; default as in the published proofs")
@json_option
def embeddings(spec, fibre, as_json):
    """A surface witness for every module generator; exit 1 if one is missing."""
    if fibre is None and spec.is_calabi_yau:
        fibre = catalog.J0_FIBRE.get(spec.k1)
    try:
        pres = certified_presentation(spec, list(known_generators(spec).values()) if spec.is_calabi_yau and spec.k1 in catalog.GENERATORS else ())
    except DegreeBoundError as exc:
        click.echo(f"uncertified: {exc}", err=True)
        sys.exit(EXIT_CHECK)
    report = verify_generation_by_embeddings(spec, pres.generators, fibre)
    data = {"witnesses": [{"generator": lbl, "witness": w.to_json() if w else None} for lbl, w in report]}
    _emit(as_json, data, "\n".join(str(w) if w else f"{lbl}: no witness" for lbl, w in report))
    sys.exit(EXIT_CHECK if any(w is None for _, w in report) else EXIT_OK)


@main.command("verify-paper")
@click.option("--filter", "pattern", default=None, help="case id substring or glob")
@click.option("--jobs", type=click.IntRange(min=1), default=4, show_default=True)
@json_option
def verify_paper(pattern, jobs, as_json):
    """Replay every published lemma and theorem as executable checks."""
    report = run_verify_paper(pattern, workers=jobs)
    _emit(as_json, report.to_json(), report.to_text())
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()

"""Command-line front end: reproducible experiments with structured output.

Exit codes: 0 when every verification in the run passed, 1 on a verification
failure (the failing witness is printed), 2 on malformed input.  With
--format json the output is a stable versioned document; runs are
deterministic for a fixed --seed.
"""
from __future__ import annotations

import json
import sys

import click

from . import congruence as cg
from . import decompose as dc
from . import groups as gp
from .chevalley import build_basis, g2_epsilon_signs
from .reps import UnsupportedRepresentation, make_representation
from .rings import RingError, artinian_decompose, ideal_from_generators, parse_ring_spec
from .roots import RootSystemError, build_root_system

SCHEMA = "chevlab-report/1"

_INPUT_ERRORS = (
    RingError,
    RootSystemError,
    UnsupportedRepresentation,
    dc.UnsupportedDecomposition,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)


def _emit(fmt: str, passed: bool, payload: dict, lines: list[str]):
    if fmt == "json":
        doc = {"schema": SCHEMA, "passed": passed}
        doc.update(payload)
        click.echo(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        for line in lines:
            click.echo(line)
        click.echo("PASS" if passed else "FAIL")
    sys.exit(0 if passed else 1)


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _setup(type_label, ring_text, rep_tag=None):
    rs = build_root_system(type_label)
    ring = parse_ring_spec(ring_text)
    rep = make_representation(rs, rep_tag)
    return rs, ring, rep


def _parse_subgroup(rep, ring, text):
    text = text.strip()
    if text == "full":
        return cg.full_subgroup(rep, ring)
    if text.startswith("kernel:(") and text.endswith(")"):
        body = text[len("kernel:(") : -1]
        gens = [
            ring.parse_element(part.strip())
            for part in body.split(",")
            if part.strip()
        ]
        ideal = ideal_from_generators(ring, gens)
        return cg.kernel_subgroup(rep, ring, ideal)
    raise ValueError(f"unrecognized subgroup description {text!r}")


fmt_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
seed_option = click.option("--seed", type=int, default=0, show_default=True)


@click.group()
def main():
    """Exact computations in Chevalley groups over finite commutative rings."""


# -- ring ------------------------------------------------------------------


@main.group()
def ring():
    """Finite ring operations."""


@ring.command("decompose-artinian")
@click.argument("spec_text")
@fmt_option
def ring_decompose_artinian(spec_text, fmt):
    """Split a finite ring into local factors and verify the isomorphism."""
    try:
        spec = parse_ring_spec(spec_text)
        dec = artinian_decompose(spec)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    failures = []
    for v in spec.elements():
        if dec.from_components(dec.to_components(v)) != v:
            failures.append(spec.format_element(v))
    lines = [f"{spec.label} ~ " + " x ".join(f.label for f in dec.factors)]
    lines.append(
        f"round-trip verified on {spec.card} elements"
        if not failures
        else f"round-trip FAILED on {failures[:3]}"
    )
    payload = {
        "ring": spec.label,
        "factors": [f.label for f in dec.factors],
        "verified_elements": spec.card - len(failures),
        "failures": failures[:10],
    }
    _emit(fmt, not failures, payload, lines)


# -- roots -------------------------------------------------------------------


@main.group()
def roots():
    """Root system queries."""


@roots.command("show")
@click.option("--type", "type_label", required=True)
@fmt_option
def roots_show(type_label, fmt):
    """List the roots, simple system, and length classes."""
    try:
        rs = build_root_system(type_label)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    lines = [f"{rs.label}: {len(rs.roots)} roots, rank {rs.rank}"]
    lines.append(
        "simple roots: "
        + ", ".join(f"{rs.root_name(s)} {list(s)}" for s in rs.simple)
    )
    for r in rs.positive:
        cls = "long" if r in rs.long_roots() else "short"
        if len(rs.length_classes()) == 1:
            cls = "-"
        lines.append(
            f"  +{rs.root_name(r)} {list(r)} height {rs.height(r)} {cls}"
        )
    payload = {
        "type": rs.label,
        "rank": rs.rank,
        "roots": [list(r) for r in rs.roots],
        "simple": [list(s) for s in rs.simple],
        "positive": [list(r) for r in rs.positive],
        "length_classes": rs.length_classes(),
    }
    _emit(fmt, True, payload, lines)


# -- chevalley ----------------------------------------------------------------


@main.command("chevalley")
@click.argument("action", type=click.Choice(["constants"]))
@click.argument("type_label")
@fmt_option
def chevalley_cmd(action, type_label, fmt):
    """Emit the integral commutator-coefficient table for a type."""
    try:
        rs = build_root_system(type_label)
        table = build_basis(rs)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    lines = [f"commutator coefficients for {rs.label} (order: (i+j, i) ascending)"]
    rows = []
    for a in rs.roots:
        for b in rs.roots:
            if b == tuple(-x for x in a):
                continue
            entries = rs.commutator_root_list(a, b)
            if not entries:
                continue
            coeffs = table.commutator_coefficients(a, b)
            row = {
                "a": list(a),
                "b": list(b),
                "terms": [
                    {"i": i, "j": j, "root": list(g), "coefficient": coeffs[(i, j)]}
                    for i, j, g in entries
                ],
            }
            rows.append(row)
            terms = " ".join(
                f"e_{rs.root_name(g)}({coeffs[(i, j)]:+d} s^{i} t^{j})"
                for i, j, g in entries
            )
            lines.append(
                f"[e_{rs.root_name(a)}(s), e_{rs.root_name(b)}(t)] = {terms}"
            )
    payload = {"type": rs.label, "rows": rows}
    if rs.letter == "G":
        eps = g2_epsilon_signs(table)
        payload["unit_signs"] = eps
        lines.append("computed unit signs: " + json.dumps(eps, sort_keys=True))
    _emit(fmt, True, payload, lines)


# -- group ---------------------------------------------------------------------


@main.group()
def group():
    """Group element computations."""


@group.command("verify-relations")
@click.option("--type", "type_label", required=True)
@click.option("--ring", "ring_text", required=True)
@click.option("--rep", "rep_tag", default=None)
@click.option("--mode", type=click.Choice(["R1", "R2", "both"]), default="both")
@seed_option
@fmt_option
def group_verify_relations(type_label, ring_text, rep_tag, mode, seed, fmt):
    """Exhaustively (or by fixed-seed sampling) check the defining relations."""
    try:
        rs, ring_spec, rep = _setup(type_label, ring_text, rep_tag)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    report = gp.verify_steinberg_relations(rep, ring_spec, mode=mode, seed=seed)
    lines = [
        f"{rs.label} over {ring_spec.label} in {rep.tag}: "
        f"additivity {report.additivity_checked} checks, "
        f"commutator {report.commutator_checked} checks, "
        f"{report.excluded_pairs} opposite pairs excluded, "
        f"{'exhaustive' if report.exhaustive else 'sampled'}"
    ]
    unit_signs = None
    if rs.letter == "G":
        unit_signs = g2_epsilon_signs(build_basis(rs))
        lines.append("computed unit signs: " + json.dumps(unit_signs, sort_keys=True))
    if report.caveat:
        lines.append(f"note: {report.caveat}")
    for f in report.failures[:5]:
        lines.append(f"failure witness: {f}")
    payload = {
        "type": rs.label,
        "ring": ring_spec.label,
        "rep": rep.tag,
        "additivity_checked": report.additivity_checked,
        "commutator_checked": report.commutator_checked,
        "excluded_pairs": report.excluded_pairs,
        "exhaustive": report.exhaustive,
        "failures": [str(f) for f in report.failures[:20]],
        "caveat": report.caveat,
        "unit_signs": unit_signs,
    }
    _emit(fmt, report.ok, payload, lines)


@group.command("decompose")
@click.option("--type", "type_label", required=True)
@click.option("--ring", "ring_text", required=True)
@click.option("--rep", "rep_tag", default=None)
@click.option(
    "--algorithm",
    type=click.Choice(["prop2", "tavgen", "merge"]),
    default="prop2",
    show_default=True,
)
@click.option("--input", "input_text", required=True, help="matrix as JSON rows")
@fmt_option
def group_decompose(type_label, ring_text, rep_tag, algorithm, input_text, fmt):
    """Decompose a matrix into a bounded product of elementary generators."""
    try:
        rs, ring_spec, rep = _setup(type_label, ring_text, rep_tag)
        rows = json.loads(input_text)
        g = gp.GroupElement.from_json(rep, ring_spec, rows)
        if not rep.check_invariant(ring_spec, g.mat):
            raise ValueError("matrix does not preserve the representation form")
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    try:
        if algorithm == "prop2":
            report = dc.local_decompose(g)
            word_json = report.word.to_json()
            length, bound = report.length, report.bound
            consts = report.constants
        elif algorithm == "merge":
            report = dc.decompose_over_product(g)
            word_json = report.word.to_json()
            length, bound = report.length, report.bound
            consts = report.constants
        else:
            base = (
                dc.local_decompose(g).word
                if not g.is_identity()
                else gp.ElementaryWord(rep, ring_spec)
            )
            four = dc.tavgen_decompose(base)
            word_json = four.word.to_json()
            length, bound = len(four.word), four.bound
            consts = dc.decomposition_constants(rs)
    except (gp.GroupError, dc.NotInBigCell) as exc:
        _emit(fmt, False, {"error": str(exc)}, [f"decomposition failed: {exc}"])
        return
    lines = [
        f"{algorithm} decomposition over {ring_spec.label}: length {length} <= bound {bound}",
        f"constants: {json.dumps(consts, sort_keys=True)}",
        f"word: {json.dumps(word_json)}",
        "verified: evaluation reproduces the input exactly",
    ]
    payload = {
        "algorithm": algorithm,
        "type": rs.label,
        "ring": ring_spec.label,
        "rep": rep.tag,
        "length": length,
        "bound": bound,
        "constants": consts,
        "word": word_json,
        "verified": True,
    }
    _emit(fmt, True, payload, lines)


@group.command("closure")
@click.option("--type", "type_label", required=True)
@click.option("--ring", "ring_text", required=True)
@click.option("--rep", "rep_tag", default=None)
@click.option("--omit-root", "omit_text", default=None, help="root as JSON list")
@click.option("--cap", type=int, default=2 * 10**6, show_default=True)
@fmt_option
def group_closure(type_label, ring_text, rep_tag, omit_text, cap, fmt):
    """Brute-force closure of the elementary generators."""
    try:
        rs, ring_spec, rep = _setup(type_label, ring_text, rep_tag)
        omit = tuple(json.loads(omit_text)) if omit_text else None
        if omit is not None and omit not in rs.root_set:
            raise ValueError(f"{omit} is not a root of {rs.label}")
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    try:
        closure = gp.subgroup_closure(
            gp.all_elementaries(rep, ring_spec, omit_root=omit), cap=cap
        )
    except gp.CapExceeded as exc:
        _emit(fmt, False, {"error": str(exc)}, [str(exc)])
        return
    lines = [
        f"closure of elementaries of {rs.label} over {ring_spec.label}"
        + (f" omitting {list(omit)}" if omit else "")
        + f": {len(closure)} elements"
    ]
    payload = {
        "type": rs.label,
        "ring": ring_spec.label,
        "rep": rep.tag,
        "omitted": list(omit) if omit else None,
        "order": len(closure),
    }
    _emit(fmt, True, payload, lines)


# -- congruence -----------------------------------------------------------------


@main.group()
def congruence():
    """Normal subgroup level sets and ideal certificates."""


@congruence.command("certify")
@click.option("--type", "type_label", required=True)
@click.option("--ring", "ring_text", required=True)
@click.option("--rep", "rep_tag", default=None)
@click.option("--subgroup", "subgroup_text", required=True)
@fmt_option
def congruence_certify(type_label, ring_text, rep_tag, subgroup_text, fmt):
    """Extract an ideal trapped by a normal subgroup, with a replayed trace."""
    try:
        rs, ring_spec, rep = _setup(type_label, ring_text, rep_tag)
        n = _parse_subgroup(rep, ring_spec, subgroup_text)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    try:
        trace = cg.ideal_certificate(n)
    except cg.CertificateError as exc:
        _emit(
            fmt,
            False,
            {"error": str(exc), "refused": True},
            [f"certificate refused: {exc}"],
        )
        return
    ideal = trace.ideal
    lines = [
        f"subgroup: {n.description}",
        f"certified ideal: {ideal.short_label()} with {ideal.size} elements "
        f"({trace.branch})",
    ]
    for step in trace.steps:
        lines.append(f"  [{step.kind}] {step.detail}")
    lines.append(
        f"membership replayed for {len(trace.per_root)} roots x "
        f"{ideal.size} parameters"
    )
    payload = {
        "type": rs.label,
        "ring": ring_spec.label,
        "subgroup": n.description,
        "ideal": [ring_spec.element_to_json(v) for v in ideal.elements_list()],
        "branch": trace.branch,
        "steps": [{"kind": s.kind, "detail": s.detail} for s in trace.steps],
        "replayed_roots": len(trace.per_root),
    }
    _emit(fmt, True, payload, lines)


@congruence.command("levels")
@click.option("--type", "type_label", required=True)
@click.option("--ring", "ring_text", required=True)
@click.option("--rep", "rep_tag", default=None)
@click.option("--subgroup", "subgroup_text", required=True)
@fmt_option
def congruence_levels(type_label, ring_text, rep_tag, subgroup_text, fmt):
    """Dump the parameter level set of every root."""
    try:
        rs, ring_spec, rep = _setup(type_label, ring_text, rep_tag)
        n = _parse_subgroup(rep, ring_spec, subgroup_text)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    lines = [f"level sets for {n.description}"]
    rows = []
    for r in rs.roots:
        ls = cg.level_set(n, r)
        values = [ring_spec.element_to_json(v) for v in sorted(
            ls.values, key=lambda v: ring_spec.elements().index(v)
        )]
        rows.append(
            {"root": list(r), "values": values, "is_ideal": ls.is_ideal}
        )
        lines.append(
            f"  {rs.root_name(r)}: {values} "
            f"({'ideal' if ls.is_ideal else 'additive subgroup only'})"
        )
    payload = {"type": rs.label, "ring": ring_spec.label, "levels": rows}
    _emit(fmt, True, payload, lines)


# -- ebg ---------------------------------------------------------------------


@main.group()
def ebg():
    """Fourfold unipotent normal form checks."""


@ebg.command("check")
@click.option("--type", "type_label", required=True)
@click.option("--ring", "ring_text", required=True)
@click.option("--rep", "rep_tag", default=None)
@click.option("--cap", type=int, default=10**6, show_default=True)
@fmt_option
def ebg_check(type_label, ring_text, rep_tag, cap, fmt):
    """Exhaustively express every group element in the fourfold form."""
    try:
        rs, ring_spec, rep = _setup(type_label, ring_text, rep_tag)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))
    try:
        words = gp.subgroup_closure(
            gp.elementary_generator_words(rep, ring_spec),
            cap=cap,
            track_words=True,
        )
    except gp.CapExceeded as exc:
        _emit(fmt, False, {"error": str(exc)}, [str(exc)])
        return
    total = len(words)
    good = 0
    witness = None
    for element, word in words.items():
        try:
            report = dc.tavgen_decompose(word)
            if report.verified and report.word.evaluate() == element:
                good += 1
            elif witness is None:
                witness = element
        except gp.GroupError:
            if witness is None:
                witness = element
    lines = [f"{good}/{total} elements in (U+U-)^4"]
    if witness is not None:
        lines.append(f"failure witness: {witness.to_json()}")
    payload = {
        "type": rs.label,
        "ring": ring_spec.label,
        "rep": rep.tag,
        "total": total,
        "in_fourfold_form": good,
        "witness": witness.to_json() if witness is not None else None,
    }
    _emit(fmt, good == total, payload, lines)


if __name__ == "__main__":
    main()

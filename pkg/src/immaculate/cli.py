"""Command-line front end.

Every command reads a fan (a JSON file, or ``builtin:NAME`` for one of the
bundled fans) and writes json, tsv or pretty text to standard output.
Exit codes: 0 on success, 2 on domain and usage errors, 1 on I/O errors.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Sequence

import click

from .cohomology import cohomology, is_immaculate, subset_label
from .errors import ImmaculateError
from .exceptional import SequenceQuery, find_exceptional_sequences, orbit_classes
from .families import (
    NAMED,
    PicThreeData,
    PicTwoData,
    SplittingData,
    build_pic2,
    build_pic3,
    build_splitting,
    pic2_immaculate,
    pic3_candidates,
    pic3_immaculate_closed_form,
    splitting_immaculate_general,
)
from .fan import Fan, ToricDivisor
from .homology import Field
from .locus import LocusDescription, cube_analysis, immaculate_locus, is_really_immaculate, tempting_subsets

log = logging.getLogger("immaculate")

FORMATS = ("json", "tsv", "pretty")


class CohomologyMismatch(ImmaculateError):
    """The two cohomology methods disagree."""


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    fmt: str = "pretty"
    field: Field = Field(0)
    radius: int = 8
    verbosity: int = 0

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise click.BadParameter(f"format must be one of {', '.join(FORMATS)}")
        if self.radius < 1:
            raise click.BadParameter("radius must be at least 1")


# parsing helpers


def load_fan(spec: str) -> Fan:
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name not in NAMED:
            raise click.BadParameter(f"unknown builtin fan {name!r}; choose from {', '.join(sorted(NAMED))}")
        return NAMED[name]()
    with open(spec) as fh:
        data = json.load(fh)
    return Fan.from_dict(data)


def parse_vector(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def _field_callback(ctx, param, value):
    try:
        return Field.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def fmt_vec(v: Sequence) -> str:
    return ",".join(str(x) for x in v)


def _json(obj) -> str:
    return json.dumps(obj, indent=2)


def _kv_table(rows: list[tuple], fmt: str) -> str:
    if fmt == "tsv":
        return "\n".join(f"{k}\t{v}" for k, v in rows)
    width = max((len(str(k)) for k, _ in rows), default=0)
    return "\n".join(f"{str(k).ljust(width)}  {v}" for k, v in rows)


def _bool_text(b: bool, fmt: str) -> str:
    if fmt == "tsv":
        return "true" if b else "false"
    return "yes" if b else "no"


# locus tables


def emit_locus_tables(locus: LocusDescription) -> str:
    """Lines section (direction, base point) then isolated section, sorted."""
    out = ["# lines", "direction\tbase_point"]
    for d, bases in locus.line_groups().items():
        for b in bases:
            out.append(f"{fmt_vec(d)}\t{fmt_vec(b)}")
    out += ["# isolated", "class"]
    out += [fmt_vec(p) for p in sorted(locus.isolated)]
    if locus.others:
        out += ["# other pieces", "inequalities"]
        for P in locus.others:
            out.append(" ; ".join(f"{fmt_vec(a)} >= {b}" for a, b in P.ineqs))
    return "\n".join(out)


# commands


def _common(f):
    f = click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty", show_default=True)(f)
    f = click.option("--field", "field_", default="q", callback=_field_callback,
                     help="Coefficients: q or gf:p.")(f)
    return f


def _fan_option(f):
    return click.option("--fan", "fan_spec", required=True, help="Fan JSON file or builtin:NAME.")(f)


def _emit(text: str):
    click.echo(text)


@click.group()
@click.option("-v", "--verbose", count=True)
@click.pass_context
def cli(ctx, verbose):
    """Cohomology, immaculate line bundles and exceptional sequences on toric varieties."""
    logging.basicConfig(level=logging.WARNING - 10 * min(verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    ctx.obj = {"verbosity": verbose}


@cli.command()
@_fan_option
@_common
@click.pass_context
def validate(ctx, fan_spec, fmt, field_):
    """Check the fan axioms and report its properties."""
    cfg = RunConfig("validate", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    fan = load_fan(fan_spec)
    rep = fan.validate()
    info = {
        "rays": fan.nrays,
        "dim": fan.dim,
        **rep,
        "class_rank": fan.class_rank,
        "torsion": fan.has_torsion,
    }
    if fan.is_simplicial:
        info["primitive_collections"] = [list(p) for p in fan.primitive_collections]
    if cfg.fmt == "json":
        _emit(_json(info))
        return
    rows = []
    for k, v in info.items():
        if isinstance(v, bool):
            v = _bool_text(v, cfg.fmt)
        elif isinstance(v, list):
            v = " ".join("{" + fmt_vec(p) + "}" for p in v)
        rows.append((k, v))
    _emit(_kv_table(rows, cfg.fmt))


@cli.command("cohomology")
@_fan_option
@click.option("--divisor", help="Coefficients over the rays (or class coordinates), comma-separated.")
@click.option("--class", "cls_", help="Class group coordinates, comma-separated.")
@click.option("--method", type=click.Choice(["polytope", "fan", "both"]), default="polytope", show_default=True)
@_common
@click.pass_context
def cohomology_cmd(ctx, fan_spec, divisor, cls_, method, fmt, field_):
    """Graded cohomology of a divisor or class."""
    cfg = RunConfig("cohomology", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    if (divisor is None) == (cls_ is None):
        raise click.UsageError("give exactly one of --divisor and --class")
    fan = load_fan(fan_spec)
    if divisor is not None and len(parse_vector(divisor)) == fan.nrays:
        D = ToricDivisor(fan, parse_vector(divisor))
    else:
        # a vector of class-group length is read as a class
        c = parse_vector(divisor if cls_ is None else cls_)
        if len(c) != fan.class_rank:
            raise click.BadParameter(f"class needs {fan.class_rank} coordinates", param_hint="--class")
        D = ToricDivisor.from_class(fan, c)
    methods = ["polytope", "fan"] if method == "both" else [method]
    results = {m: cohomology(D, fan, method=m, field=cfg.field) for m in methods}
    first = results[methods[0]]
    if any(r != first for r in results.values()):
        raise CohomologyMismatch(
            "methods disagree: " + "; ".join(f"{m} h={fmt_vec(r.totals)}" for m, r in results.items())
        )
    if cfg.fmt == "json":
        _emit(_json({
            "divisor": list(D.coeffs),
            "class": list(D.class_),
            "field": str(cfg.field),
            "methods": methods,
            **first.as_dict(),
        }))
        return
    d = first.dim
    if cfg.fmt == "tsv":
        out = ["degree\t" + "\t".join(f"h{i}" for i in range(d + 1))]
        out += [f"{fmt_vec(m)}\t" + "\t".join(map(str, h)) for m, h in first.pieces]
        out.append("total\t" + "\t".join(map(str, first.totals)))
        _emit("\n".join(out))
        return
    out = [f"divisor {fmt_vec(D.coeffs)}  class {fmt_vec(D.class_)}  over {cfg.field}  ({', '.join(methods)})"]
    out += [f"h^{i} = {h}" for i, h in enumerate(first.totals)]
    for m, h in first.pieces:
        out.append(f"  m = ({fmt_vec(m)}): " + " ".join(map(str, h)))
    _emit("\n".join(out))


@cli.command()
@_fan_option
@_common
@click.pass_context
def tempting(ctx, fan_spec, fmt, field_):
    """List the tempting subsets of rays."""
    cfg = RunConfig("tempting", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    fan = load_fan(fan_spec)
    rep = tempting_subsets(fan, cfg.field)
    log.info("decided by: %s", rep.counts())
    torsion = rep.torsion_masks()
    if torsion:
        log.warning("%d subsets carry torsion; the answer there depends on --field", len(torsion))
    if cfg.fmt == "json":
        _emit(_json({"count": len(rep.tempting), "tempting": rep.tempting,
                     "subsets": [list(s) for s in rep.subsets()], "torsion_subsets": torsion}))
        return
    if cfg.fmt == "tsv":
        rows = ["bitmask\tsubset\tdecided_by"]
        rows += [f"{m}\t{fmt_vec(s)}\t{rep.entries[m].decided_by}" for m, s in zip(rep.tempting, rep.subsets())]
        _emit("\n".join(rows))
        return
    _emit("\n".join([f"{len(rep.tempting)} tempting subsets"] + [subset_label(m) for m in rep.tempting]))


@cli.command("immaculate-locus")
@_fan_option
@_common
@click.pass_context
def immaculate_locus_cmd(ctx, fan_spec, fmt, field_):
    """Immaculate classes as lattice lines, isolated points and other pieces."""
    cfg = RunConfig("immaculate-locus", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    locus = immaculate_locus(load_fan(fan_spec), cfg.field)
    if cfg.fmt == "json":
        _emit(_json(locus.to_dict()))
    else:
        _emit(emit_locus_tables(locus))


@cli.command("really-immaculate")
@_fan_option
@click.option("--class", "cls_", required=True, help="Class group coordinates, comma-separated.")
@_common
@click.pass_context
def really_immaculate_cmd(ctx, fan_spec, cls_, fmt, field_):
    """Decide whether a class avoids every tempting maculate region."""
    cfg = RunConfig("really-immaculate", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    fan = load_fan(fan_spec)
    c = parse_vector(cls_)
    if len(c) != fan.class_rank:
        raise click.BadParameter(f"class needs {fan.class_rank} coordinates", param_hint="--class")
    really = is_really_immaculate(fan, c, cfg.field)
    info = {"class": list(c), "really_immaculate": really}
    if fan.is_complete:
        info["immaculate"] = is_immaculate(fan, c, field=cfg.field)
    if cfg.fmt == "json":
        _emit(_json(info))
    else:
        _emit(_kv_table([(k, fmt_vec(v) if isinstance(v, list) else _bool_text(v, cfg.fmt)) for k, v in info.items()],
                        cfg.fmt))


@cli.command()
@_fan_option
@_common
@click.pass_context
def cube(ctx, fan_spec, fmt, field_):
    """Image of the cube [-1,0]^rays in the class group."""
    cfg = RunConfig("cube", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    rep = cube_analysis(load_fan(fan_spec), cfg.field)
    s = rep.summary()
    if cfg.fmt == "json":
        s["immaculate"] = [list(c) for c in rep.immaculate_classes]
        _emit(_json(s))
        return
    rows = [(k, _bool_text(v, cfg.fmt) if isinstance(v, bool) else v) for k, v in s.items()]
    text = _kv_table(rows, cfg.fmt)
    text += "\n# immaculate\n" + "\n".join(fmt_vec(c) for c in rep.immaculate_classes)
    _emit(text)


def _load_spec(text: str) -> dict:
    p = Path(text)
    if not text.lstrip().startswith("{") and p.exists():
        text = p.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.BadParameter(f"family spec is not valid JSON: {exc}", param_hint="--spec") from None
    if not isinstance(data, dict):
        raise click.BadParameter("family spec must be a JSON object", param_hint="--spec")
    return data


def _box(rank: int, R: int):
    return product(range(-R, R + 1), repeat=rank)


@cli.command()
@click.argument("kind", type=click.Choice(["pic2", "splitting", "pic3"]))
@click.option("--spec", "spec", required=True, help="JSON object (or a file holding one).")
@click.option("--radius", default=4, show_default=True, help="Box radius for listing immaculate classes.")
@click.option("--emit-fan", type=click.Path(dir_okay=False, writable=True), help="Write the fan JSON here.")
@_common
@click.pass_context
def family(ctx, kind, spec, radius, emit_fan, fmt, field_):
    """Closed-form loci of the pic2, splitting and pic3 families.

    \b
    pic2:      {"l1": 2, "l2": 3, "c": [0, -1, -2]}
    splitting: {"l": [2, 2, 2], "c_blocks": {"0,1": [0, 0], "0,2": [-2, 0], "1,2": [0, -2]}}
    pic3:      {"p": [1, 4, 3, 2, 5], "b": [0, 2], "c": [0, 6, 13]}
    """
    cfg = RunConfig("family", [spec], fmt, field_, radius, ctx.obj["verbosity"])
    data = _load_spec(spec)
    try:
        if kind == "pic2":
            params = PicTwoData(int(data["l1"]), int(data["l2"]), tuple(data["c"]))
            fan = build_pic2(params)
            pts = [p for p in _box(2, cfg.radius) if pic2_immaculate(params, p)]
            info = {"family": kind, "parameters": {"l1": params.l1, "l2": params.l2, "c": list(params.c)}}
            via = {p: "closed-form" for p in pts}
        elif kind == "splitting":
            params = SplittingData.from_dict(data)
            fan = build_splitting(params)
            loc = splitting_immaculate_general(params)
            pts = sorted(loc.slabs.points_in_box(-cfg.radius, cfg.radius))
            info = {"family": kind, "parameters": params.to_dict(), "general": not loc.lower_bound_only,
                    "slabs": loc.slabs.to_list()}
            via = {p: "hull" for p in pts}
        else:
            params = PicThreeData(tuple(data["p"]), tuple(data["b"]), tuple(data["c"]))
            fan = build_pic3(params)
            cand = pic3_candidates(params)
            via = {}
            for p in _box(3, cfg.radius):
                ans = pic3_immaculate_closed_form(params, p, fan=fan, candidates=cand)
                if ans.status == "immaculate":
                    via[p] = ans.via
            pts = sorted(via)
            info = {"family": kind, "parameters": params.to_dict(), "large": params.is_large(),
                    "type_f": [[list(map(str, v)) for v in P.vertices] for P in cand.type_f],
                    "type_a": {str(y): list(r) for y, r in sorted(cand.type_a.items())},
                    "type_b": [list(s) for s in cand.type_b]}
    except (KeyError, TypeError) as exc:
        raise click.BadParameter(f"family spec lacks or mistypes {exc}", param_hint="--spec") from None
    if emit_fan:
        Path(emit_fan).write_text(_json(fan.to_dict()) + "\n")
    info["radius"] = cfg.radius
    info["immaculate"] = [list(p) for p in pts]
    if cfg.fmt == "json":
        _emit(_json(info))
        return
    out = [f"# {kind} {json.dumps(info['parameters'])}", "class\tvia"]
    out += [f"{fmt_vec(p)}\t{via[p]}" for p in pts]
    _emit("\n".join(out))


@cli.command()
@_fan_option
@click.option("--length", "length", type=int, required=True)
@click.option("--region", default="cube", show_default=True, help="cube or box:R")
@click.option("--orbits", is_flag=True, help="Print one representative per automorphism orbit.")
@_common
@click.pass_context
def exceptional(ctx, fan_spec, length, region, orbits, fmt, field_):
    """Exceptional sequences of line bundles pinned at 0."""
    cfg = RunConfig("exceptional", [fan_spec], fmt, field_, verbosity=ctx.obj["verbosity"])
    fan = load_fan(fan_spec)
    seqs = find_exceptional_sequences(SequenceQuery(fan, length, region, field=cfg.field))
    if orbits:
        orbs = orbit_classes(seqs, fan)
        rows = [(o[0], len(o)) for o in orbs]
    else:
        rows = [(s, 1) for s in seqs]
    if cfg.fmt == "json":
        out = {"count": len(seqs), "sequences": [[list(c) for c in s.classes] for s, _ in rows]}
        if orbits:
            out["orbit_sizes"] = [n for _, n in rows]
        _emit(_json(out))
        return
    lines = []
    for s, n in rows:
        cells = [fmt_vec(c) for c in s.classes]
        if orbits:
            cells.append(str(n))
        lines.append("\t".join(cells))
    if cfg.fmt == "pretty":
        lines.insert(0, f"# {len(seqs)} sequences" + (f", {len(rows)} orbits" if orbits else ""))
    _emit("\n".join(lines))


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return the exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = cli.main(args=args, prog_name="immaculate", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except ImmaculateError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return 2
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Each subcommand reads diagram codes or sampled-curve JSON, calls into
the library, and writes a single JSON (default) or CSV document to
stdout or to --output.  Failures are reported as a machine-readable
JSON document {"error": {module, message[, position]}} on stderr with
exit status 3; argparse usage errors keep their conventional status 2.

Diagram inputs are forgiving: a path to a file, or the literal text of
a Gauss code, a PD code, or a diagram JSON document.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from .chords import ChordDiagram, enumerate_diagrams, four_term_relations, raw_matchings
from .codes import SingularDiagram, parse_gauss, parse_pd
from .kontsevich import QuadratureSpec, degree_coefficients, hump_normalize
from .lie import commutator_4T_witness, gl_fundamental, su2_fundamental, weight, weight_system
from .morse import curve_from_json, morse_embed
from .skein import conway, extend_invariant, v2

CROSSED = ChordDiagram(((0, 2), (1, 3)))

# which shipped schema file validates each subcommand's JSON output
SCHEMA_FOR_COMMAND = {
    "parse": "parse",
    "conway": "polynomial",
    "vassiliev-eval": "polynomial",
    "v2": "v2",
    "chords": "chords",
    "weights": "weights",
    "kontsevich": "coefficients",
    "compare": "compare",
}


def load_schema(name):
    """One of the shipped JSON schemas by short name ('v2', 'error', ...)."""
    from importlib import resources

    ref = resources.files("vassiliev.schemas").joinpath(f"{name}.schema.json")
    return json.loads(ref.read_text())

# default module tag for errors whose type lives outside this package
_ERROR_TAGS = {
    "parse": "codes",
    "conway": "skein",
    "v2": "skein",
    "vassiliev-eval": "skein",
    "chords": "chords",
    "weights": "lie",
    "kontsevich": "kontsevich",
    "compare": "kontsevich",
}


@dataclass(frozen=True)
class RunConfig:
    """One resolved CLI invocation."""

    subcommand: str
    inputs: tuple
    options: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "json"
    seed: int | None = None

    def __post_init__(self):
        if self.subcommand not in _ERROR_TAGS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.format!r}")
        for path in self.inputs:
            if _looks_like_path(path) and not os.path.exists(path):
                raise FileNotFoundError(f"input file {path!r} does not exist")


def _looks_like_path(text):
    # heuristics only: literal codes never contain a path separator or
    # a known code-file suffix
    if os.path.sep in text:
        return True
    return text.endswith((".json", ".gauss", ".pd", ".txt"))


def load_diagram(text):
    """Diagram from a path or literal Gauss / PD / JSON text."""
    s = text.strip()
    if _looks_like_path(s) or os.path.exists(s):
        with open(s) as fh:
            s = fh.read().strip()
    if s.startswith("{"):
        return SingularDiagram.from_json_dict(json.loads(s))
    if "X(" in s or "V(" in s:
        return parse_pd(s)
    return parse_gauss(s)


def _poly_json(p):
    return {str(exp): coeff for exp, coeff in p.items()}


def _quadrature_from(options):
    return QuadratureSpec(
        steps=options.get("steps", 2000),
        eps_rel=options.get("epsilon", 1e-3),
        levels=options.get("levels", 3),
    )


# ---------------------------------------------------------------- handlers


def _run_parse(config):
    d = load_diagram(config.inputs[0])
    out = {
        "command": "parse",
        "diagram": d.to_json_dict(),
        "n_components": d.n_components,
        "n_crossings": d.n_crossings,
        "n_nodes": d.n_nodes,
        "writhe": d.writhe,
    }
    try:
        out["gauss"] = d.to_gauss()
    except Exception:
        pass
    try:
        out["pd"] = d.to_pd()
    except Exception:
        pass
    return out


def _run_conway(config):
    d = load_diagram(config.inputs[0])
    p = conway(d)
    return {
        "command": "conway",
        "coefficients": _poly_json(p),
        "text": str(p),
        "n_components": d.n_components,
    }


def _run_v2(config):
    d = load_diagram(config.inputs[0])
    return {"command": "v2", "v2": v2(d)}


def _run_vassiliev_eval(config):
    d = load_diagram(config.inputs[0])
    a = config.options.get("a", 1)
    b = config.options.get("b", -1)
    c = config.options.get("c", 0)
    p = extend_invariant(conway, a, b, c)(d)
    return {
        "command": "vassiliev-eval",
        "a": a,
        "b": b,
        "c": c,
        "n_nodes": d.n_nodes,
        "coefficients": _poly_json(p),
        "text": str(p),
    }


def _run_chords(config):
    action, m = config.inputs[0], int(config.inputs[1])
    if action == "enumerate":
        if m > 6:
            raise ValueError("enumerate lists raw matchings; degree capped at 6")
        matchings = list(raw_matchings(m))
        canonical, raw_count = enumerate_diagrams(m)
        return {
            "command": "chords",
            "action": "enumerate",
            "degree": m,
            "raw_count": raw_count,
            "raw_matchings": [
                ",".join(f"{a}-{b}" for a, b in mt) or "(empty)" for mt in matchings
            ],
            "canonical_count": len(canonical),
            "canonical": [str(d) for d in canonical],
        }
    if action == "4t":
        relations = four_term_relations(m)
        return {
            "command": "chords",
            "action": "4t",
            "degree": m,
            "n_relations": len(relations),
            "relations": [
                [{"sign": s, "diagram": str(d)} for s, d in rel] for rel in relations
            ],
        }
    raise ValueError(f"unknown chords action {action!r}; use enumerate or 4t")


def _algebra_from_name(name):
    if name == "su2":
        return su2_fundamental()
    if name.startswith("gl") and name[2:].isdigit():
        n = int(name[2:])
        if not 1 <= n <= 6:
            raise ValueError("gl algebras are supported for N between 1 and 6")
        return gl_fundamental(n)
    raise ValueError(f"unknown algebra {name!r}; use su2 or glN (N <= 6)")


def _run_weights(config):
    algebra = _algebra_from_name(config.options["algebra"])
    m = config.options["degree"]
    algebra.check()  # raises with the residual in the message on failure
    _, closure_residual = commutator_4T_witness(algebra)
    table = weight_system(algebra, m)
    return {
        "command": "weights",
        "algebra": algebra.name,
        "degree": m,
        "axioms_ok": True,
        "commutator_residual": float(closure_residual),
        "weights": [
            {"diagram": str(d), "re": w.real, "im": w.imag}
            for d, w in sorted(table.items())
        ],
    }


def _coefficient_rows(table):
    return table.to_json_dict()["coefficients"]


def _run_kontsevich(config):
    components = curve_from_json(config.inputs[0])
    mk = morse_embed(components)
    quadrature = _quadrature_from(config.options)
    table = degree_coefficients(mk, config.options.get("degree", 2), quadrature)
    normalized = not config.options.get("raw", False)
    if normalized:
        table = hump_normalize(table, mk)
    out = {"command": "kontsevich", "normalized": normalized}
    out.update(table.to_json_dict())
    out["embedding"] = {
        "n_components": mk.n_components,
        "n_maxima": mk.n_maxima,
        "margin": float(mk.embedding_margin),
        "notes": list(mk.notes),
    }
    return out


def _run_compare(config):
    degree = config.options.get("degree", 2)
    if degree != 2:
        raise ValueError("compare cross-validates the degree-2 invariant only")
    d = load_diagram(config.inputs[1])
    skein_value = v2(d)
    nabla = conway(d)

    mk = morse_embed(curve_from_json(config.inputs[0]))
    quadrature = _quadrature_from(config.options)
    table = hump_normalize(degree_coefficients(mk, 2, quadrature), mk)
    coeff = table.coefficient(CROSSED)
    integral = coeff.value if coeff is not None else 0j
    error = coeff.error if coeff is not None else 0.0

    su2 = su2_fundamental()
    pairing = sum(weight(su2, dg) * table.value(dg) for dg in table.diagrams())
    tolerance = config.options.get("tolerance", 5e-2)
    difference = abs(integral - skein_value)
    return {
        "command": "compare",
        "degree": 2,
        "skein": {"v2": skein_value, "conway": str(nabla)},
        "integral": {
            "crossed_re": integral.real,
            "crossed_im": integral.imag,
            "error": error,
            "converged": bool(coeff.converged) if coeff is not None else True,
        },
        "weight_pairing": {
            "algebra": "su2",
            "value_re": pairing.real,
            "value_im": pairing.imag,
            "crossed_weight_re": weight(su2, CROSSED).real,
        },
        "difference": difference,
        "tolerance": tolerance,
        "within_tolerance": bool(difference < tolerance),
        "quadrature": {
            "steps": quadrature.steps,
            "eps_rel": quadrature.eps_rel,
            "levels": quadrature.levels,
        },
        "n_maxima": mk.n_maxima,
    }


_HANDLERS = {
    "parse": _run_parse,
    "conway": _run_conway,
    "v2": _run_v2,
    "vassiliev-eval": _run_vassiliev_eval,
    "chords": _run_chords,
    "weights": _run_weights,
    "kontsevich": _run_kontsevich,
    "compare": _run_compare,
}


# ---------------------------------------------------------------- rendering


def _csv_rows(payload):
    cmd = payload["command"]
    if cmd == "parse":
        rows = [("component", "position", "kind", "id", "sign")]
        signs = payload["diagram"]["signs"]
        for ci, comp in enumerate(payload["diagram"]["components"]):
            for pi, tok in enumerate(comp):
                kind, sid = tok[0], tok[1:]
                rows.append((ci, pi, kind, sid, signs.get(sid, "")))
        return rows
    if cmd in ("conway", "vassiliev-eval"):
        rows = [("exponent", "coefficient")]
        for exp in sorted(payload["coefficients"], key=int):
            rows.append((exp, payload["coefficients"][exp]))
        return rows
    if cmd == "v2":
        return [("v2",), (payload["v2"],)]
    if cmd == "chords" and payload["action"] == "enumerate":
        rows = [("index", "matching")]
        rows += [(i, mt) for i, mt in enumerate(payload["raw_matchings"])]
        return rows
    if cmd == "chords":
        rows = [("relation", "term", "sign", "diagram")]
        for ri, rel in enumerate(payload["relations"]):
            for ti, term in enumerate(rel):
                rows.append((ri, ti, term["sign"], term["diagram"]))
        return rows
    if cmd == "weights":
        rows = [("diagram", "re", "im")]
        rows += [(w["diagram"], w["re"], w["im"]) for w in payload["weights"]]
        return rows
    if cmd == "kontsevich":
        rows = [("diagram", "value_re", "value_im", "error", "converged", "log_divergent")]
        for c in payload["coefficients"]:
            rows.append(
                (c["diagram"], c["value_re"], c["value_im"], c["error"],
                 c["converged"], c["log_divergent"])
            )
        return rows
    if cmd == "compare":
        flat = {
            "skein_v2": payload["skein"]["v2"],
            "integral_crossed_re": payload["integral"]["crossed_re"],
            "integral_crossed_im": payload["integral"]["crossed_im"],
            "integral_error": payload["integral"]["error"],
            "difference": payload["difference"],
            "tolerance": payload["tolerance"],
            "within_tolerance": payload["within_tolerance"],
        }
        return [("key", "value")] + list(flat.items())
    raise ValueError(f"no CSV form for command {cmd!r}")


def _render(payload, config):
    if config.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(_csv_rows(payload))
        return buf.getvalue()
    if config.seed is not None:
        payload = dict(payload, seed=config.seed)
    return json.dumps(payload, indent=2) + "\n"


def run(config):
    """Execute one configured invocation; returns the exit status."""
    payload = _HANDLERS[config.subcommand](config)
    text = _render(payload, config)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- argparse


def _add_common(sub):
    sub.add_argument("--output", default=argparse.SUPPRESS,
                     help="write the document to this file instead of stdout")
    sub.add_argument("--format", dest="fmt", choices=("json", "csv"),
                     default=argparse.SUPPRESS, help="output format (default json)")
    sub.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                     help="seed echoed into JSON output, for provenance")


def _add_quadrature(sub):
    sub.add_argument("--steps", type=int, default=2000,
                     help="quadrature steps per slab (default 2000)")
    sub.add_argument("--epsilon", type=float, default=1e-3,
                     help="largest relative clip width (default 1e-3)")
    sub.add_argument("--levels", type=int, default=3,
                     help="number of clip widths for the tail fit (default 3)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vassiliev",
        description="Finite-type invariants from codes, chord diagrams and curve integrals.",
    )
    parser.add_argument("--output", default=None)
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=None)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("parse", help="parse a Gauss / PD / JSON diagram and echo it")
    p.add_argument("input", help="path or literal code text")
    _add_common(p)

    p = subs.add_parser("conway", help="Conway polynomial of a diagram")
    p.add_argument("input")
    _add_common(p)

    p = subs.add_parser("v2", help="degree-2 Vassiliev invariant of a knot diagram")
    p.add_argument("input")
    _add_common(p)

    p = subs.add_parser(
        "vassiliev-eval",
        help="resolve every node by a*positive + b*negative + c*smooth, then Conway",
    )
    p.add_argument("input")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=-1)
    p.add_argument("--c", type=int, default=0)
    _add_common(p)

    p = subs.add_parser("chords", help="chord diagram enumeration and 4T relations")
    p.add_argument("action", choices=("enumerate", "4t"))
    p.add_argument("degree", type=int)
    _add_common(p)

    p = subs.add_parser("weights", help="Lie-algebra weight table for one degree")
    p.add_argument("--algebra", required=True, help="su2 or glN with N <= 6")
    p.add_argument("--degree", type=int, required=True)
    _add_common(p)

    p = subs.add_parser(
        "kontsevich", help="numerical coefficient table of a sampled curve"
    )
    p.add_argument("input", help="curve JSON file")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--raw", action="store_true",
                   help="skip the hump normalization, emit raw integrals")
    _add_quadrature(p)
    _add_common(p)

    p = subs.add_parser(
        "compare",
        help="cross-validate the degree-2 invariant: curve integral against skein",
    )
    p.add_argument("curve", help="curve JSON file")
    p.add_argument("code", help="diagram code for the same knot")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--tolerance", type=float, default=5e-2)
    _add_quadrature(p)
    _add_common(p)

    return parser


def config_from_args(args):
    inputs = []
    for name in ("input", "curve", "code", "action", "degree"):
        if name == "degree" and args.subcommand != "chords":
            continue  # degree is an option elsewhere, positional only for chords
        if hasattr(args, name):
            inputs.append(str(getattr(args, name)))
    options = {}
    for name in ("a", "b", "c", "degree", "steps", "epsilon", "levels", "raw",
                 "algebra", "tolerance"):
        if args.subcommand == "chords" and name == "degree":
            continue
        if hasattr(args, name):
            options[name] = getattr(args, name)
    return RunConfig(
        subcommand=args.subcommand,
        inputs=tuple(inputs),
        options=options,
        output=args.output,
        format=args.fmt,
        seed=args.seed,
    )


def _error_payload(exc, subcommand):
    mod = type(exc).__module__ or ""
    if mod.startswith("vassiliev."):
        tag = mod.split(".", 1)[1]
    elif isinstance(exc, OSError):
        tag = "cli"  # file plumbing, not a library failure
    else:
        tag = _ERROR_TAGS.get(subcommand, "cli")
    err = {"module": tag, "message": str(exc)}
    position = getattr(exc, "position", None)
    if position is not None:
        err["position"] = position
    return {"error": err}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    subcommand = getattr(args, "subcommand", "cli")
    try:
        config = config_from_args(args)
        return run(config)
    except Exception as exc:
        payload = _error_payload(exc, subcommand)
        sys.stderr.write(json.dumps(payload, indent=2) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())

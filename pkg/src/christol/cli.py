"""
Command-line frontend.

    christol compile --field p=2,e=1 --poly "y^2+y+x" --root-index 0
    christol list-roots --field p=3 --poly "y^2-(1+x)"

The report goes to stdout as JSON, a one-line summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automaton import serialize
from .errors import (AmbiguousContinuation, ChristolError, DegreeZero, InvalidPrefix,
                     InvariantBreach, NoContinuation, NotSeparable, PrefixMismatch)
from .furstenberg import degree_height, resultant_order, root_prefixes
from .gf import parse_field_spec
from .pipeline import DEFAULT_VERIFY, compile_instance
from .polynomial import parse_poly
from .series import DEFAULT_LMIN, DEFAULT_PRECISION

EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_ROOT = 4
EXIT_INVARIANT = 5

_JOB_KEYS = ("field", "poly", "root_prefix", "root_index", "precision", "lmin", "verify",
             "forward", "emit_dot", "emit_json")


class RootSelectionError(ChristolError):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="christol",
                                 description="Automata for algebraic power series over F_q.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("compile", "list-roots"):
        sp = sub.add_parser(name)
        sp.add_argument("--job", help="JSON job file; command-line flags take precedence")
        sp.add_argument("--field", help='e.g. "p=2,e=1" or "p=2 e=3 modulus=1,1,0,1"')
        sp.add_argument("--poly", help='e.g. "y^2 + y + x"')
        if name == "compile":
            sp.add_argument("--root-prefix", help="a0,a1,...,ar")
            sp.add_argument("--root-index", type=int)
            sp.add_argument("--precision", type=int)
            sp.add_argument("--lmin", type=int)
            sp.add_argument("--verify", type=int, help="oracle horizon; 0 skips verification")
            sp.add_argument("--forward", action="store_true", default=None,
                            help="also build the minimal forward-reading automaton")
            sp.add_argument("--emit-dot", metavar="PATH")
            sp.add_argument("--emit-json", metavar="PATH")
    return ap


def load_job(args):
    job = {}
    if args.job:
        job = json.loads(Path(args.job).read_text())
        unknown = set(job) - set(_JOB_KEYS)
        if unknown:
            raise ValueError(f"unknown job keys: {sorted(unknown)}")
    for k in _JOB_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            job[k] = v
    for k in ("field", "poly"):
        if not job.get(k):
            raise ValueError(f"missing --{k}")
    return job


def _field_of(spec):
    if isinstance(spec, dict):
        spec = " ".join(f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}"
                        for k, v in spec.items())
    return parse_field_spec(spec)


def _prefix_of(text, F):
    items = text if isinstance(text, list) else [t for t in str(text).split(",") if t.strip()]
    return [F(F.parse_element(str(t).strip())) for t in items]


def format_prefix(pre):
    return "(" + ",".join(str(c) for c in pre) + ")"


def listing(md):
    r = resultant_order(md)
    roots = root_prefixes(md)
    lines = [f"r={r}"]
    lines += [f"{k}: {format_prefix(pre)}" for k, pre in enumerate(roots)]
    return r, roots, "\n".join(lines)


def select_root(md, job):
    """Resolve the root prefix from --root-prefix / --root-index."""
    has_prefix = job.get("root_prefix") is not None
    has_index = job.get("root_index") is not None
    if has_prefix and has_index:
        raise RootSelectionError("give only one of --root-prefix and --root-index")
    if has_prefix:
        return _prefix_of(job["root_prefix"], md.field)
    _, roots, text = listing(md)
    if has_index:
        k = job["root_index"]
        if not 0 <= k < len(roots):
            raise RootSelectionError(f"root index {k} out of range\n{text}")
        return roots[k]
    if len(roots) == 1:
        return roots[0]
    what = "no power-series root" if not roots else "several roots; pick one"
    raise RootSelectionError(f"{what}\n{text}")


def _write_automata(comp, job):
    targets = [("emit_dot", "dot"), ("emit_json", "json")]
    for key, fmt in targets:
        path = job.get(key)
        if not path:
            continue
        path = Path(path)
        path.write_text(serialize(comp.reverse, fmt))
        if comp.forward is not None:
            fpath = path.with_name(f"{path.stem}.forward{path.suffix}")
            fpath.write_text(serialize(comp.forward, fmt))


def summary(report):
    fwd = "" if report.comp_forward is None else f" comp_forward={report.comp_forward}"
    ver = report.verification
    tail = "" if ver.horizon == 0 else f" verified={ver.ok}"
    return (f"q={report.q} d={report.d} h={report.h} r={report.r} smooth={report.smooth} "
            f"states_raw={report.states_raw} comp_reverse={report.comp_reverse}{fwd}{tail}")


def run(job, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    F = _field_of(job["field"])
    P = parse_poly(job["poly"], F)
    md = degree_height(P)
    prefix = select_root(md, job)
    comp = compile_instance(
        P, prefix,
        forward=bool(job.get("forward", False)),
        verify=int(job.get("verify", DEFAULT_VERIFY)),
        precision=int(job.get("precision", DEFAULT_PRECISION)),
        lmin=int(job.get("lmin", DEFAULT_LMIN)))
    _write_automata(comp, job)
    out.write(comp.report.to_json() + "\n")
    err.write(summary(comp.report) + "\n")
    return comp.report


def list_roots(job, out=None):
    out = out or sys.stdout
    F = _field_of(job["field"])
    md = degree_height(parse_poly(job["poly"], F))
    out.write(listing(md)[2] + "\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args)
        if args.command == "list-roots":
            list_roots(job)
        else:
            run(job)
    except (NotSeparable, DegreeZero) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (RootSelectionError, InvalidPrefix, PrefixMismatch, AmbiguousContinuation,
            NoContinuation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if not isinstance(exc, RootSelectionError):
            try:
                print(listing(degree_height(parse_poly(job["poly"], _field_of(job["field"]))))[2],
                      file=sys.stderr)
            except ChristolError:
                pass
        return EXIT_ROOT
    except InvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return 0


if __name__ == "__main__":
    sys.exit(main())

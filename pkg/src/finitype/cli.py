"""Command line entry point: ``finitype <command> SPEC [options]``.

Exit codes: 0 ok, 2 invalid spec, 3 finite type not established,
4 structural contradiction in the transition graph.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import dimension as dim
from .ifs import NOT_COMMENSURABLE, commensurability_exponents
from .io import SpecError, dumps, graph_to_json, load_spec, parse_rational, to_dot, write_sweep_csv
from .netstructure import NotFiniteTypeError, build_vector_graph, net_intervals
from .numberfield import FieldError
from .regularity import generalized_regular_sufficient, regularity_diagnostics
from .transitions import UNKNOWN, ModelViolation, StructuralError, is_positive_type

EXIT_OK, EXIT_SPEC, EXIT_NOT_FINITE, EXIT_MODEL = 0, 2, 3, 4


class CommandError(Exception):
    def __init__(self, code: int, kind: str, message: str, **extra):
        super().__init__(message)
        self.code, self.kind, self.extra = code, kind, extra


def _bound(b: dim.Bound) -> dict:
    return {"lo": b.lo, "hi": b.hi, "value": b.mid, "width": b.width}


def _ids(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise CommandError(EXIT_SPEC, "usage", f"vector ids must be integers: {text!r}") from exc


def _load(args):
    spec = load_spec(args.spec)
    param = parse_rational(args.param) if getattr(args, "param", None) is not None else None
    return spec, param


def _graph(spec, param=None, prune=True):
    ifs = spec.ifs(param)
    try:
        return build_vector_graph(ifs, spec.options["max_vectors"], prune=prune)
    except NotFiniteTypeError as exc:
        raise CommandError(EXIT_NOT_FINITE, "not_finite_type", str(exc),
                           vectors_found=len(exc.partial.vectors)) from exc


# --- commands ---------------------------------------------------------------------


def cmd_validate(args) -> dict:
    spec, param = _load(args)
    ifs = spec.ifs(param)
    exps = commensurability_exponents(ifs)
    warnings = []
    if exps is NOT_COMMENSURABLE:
        warnings.append("NotCommensurable: no relation |r_j|^b = r_min^c found; finite type is unlikely")
    return {
        "status": "OK",
        "name": ifs.name,
        "degree": ifs.field.degree,
        "r_min": ifs.r_min,
        "hull": [0, 1],
        "maps": len(ifs.maps),
        "commensurability": "NotCommensurable" if exps is NOT_COMMENSURABLE else [str(q) for q in exps],
        "warnings": warnings,
    }


def cmd_analyze(args) -> dict:
    spec, param = _load(args)
    graph = _graph(spec, param)
    loops = graph.loops
    ess = graph.essential
    pt = is_positive_type(graph, ess, max(8, 4 * len(ess)))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(graph))
    report = {
        "num_vectors": len(graph.vectors),
        "num_reduced": graph.num_reduced,
        "loop_classes": [sorted(c) for c in loops.classes],
        "essential_class": sorted(ess),
        "positive_type": {"witness": list(pt.path)} if pt is not UNKNOWN else None,
        "essential_points": dim.essential_points(graph),
        "regularity": generalized_regular_sufficient(graph.ifs).to_json(),
    }
    report.update(graph_to_json(graph))
    return report


def cmd_dims(args) -> dict:
    spec, param = _load(args)
    graph = _graph(spec, param)
    prefix, cycle = _ids(args.prefix), _ids(args.cycle)
    prefix2, cycle2 = _ids(args.prefix2), _ids(args.cycle2)
    if (prefix2 is None) != (cycle2 is None):
        raise CommandError(EXIT_SPEC, "usage", "--prefix2 and --cycle2 must be given together")
    try:
        pt = dim.PeriodicPoint(prefix, cycle, prefix2, cycle2)
        value = dim.periodic_dim(graph, pt, spec.options["tolerance"])
        x = pt.point(graph)
    except ValueError as exc:
        raise CommandError(EXIT_SPEC, "invalid_point", str(exc)) from exc
    return {"dimension": _bound(value), "point": x, "beta": pt.beta}


def _bracket(graph, spec, max_len):
    try:
        return dim.essential_bracket(graph, max_len, tol=spec.options["tolerance"])
    except dim.NotPositiveTypeError as exc:
        raise CommandError(EXIT_MODEL, "not_positive_type", str(exc)) from exc


def cmd_bounds(args) -> dict:
    spec, param = _load(args)
    graph = _graph(spec, param)
    L = args.max_cycle_len or spec.options["max_cycle_len"]
    br = _bracket(graph, spec, L)
    ends = dim.endpoint_report(graph, br, spec.options["tolerance"])
    return {
        "a_lo": _bound(br.a_lo), "a_hi": _bound(br.a_hi),
        "b_lo": _bound(br.b_lo), "b_hi": _bound(br.b_hi),
        "a_hi_witness": list(br.a_hi_witness), "b_lo_witness": list(br.b_lo_witness),
        "cycle_length_used": br.cycle_length_used,
        "cycles_sampled": br.cycles_sampled,
        "degenerate": br.degenerate,
        "dim0": _bound(ends.dim0), "dim1": _bound(ends.dim1),
        "isolated0": ends.isolated0, "isolated1": ends.isolated1,
    }


def _grid(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    if steps < 1:
        raise CommandError(EXIT_SPEC, "usage", "--steps must be >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * Fraction(i, steps - 1) for i in range(steps)]


def sweep_rows(spec, grid, max_len=None, warn=None):
    """Bracket and endpoint rows for each parameter value; the graph is built once."""
    if not spec.has_param:
        raise CommandError(EXIT_SPEC, "invalid_spec", "sweep needs a spec with a 'param' probability slot")
    L = max_len or spec.options["max_cycle_len"]
    base = None
    rows = []
    for t in sorted(grid):
        try:
            probs = spec.probabilities(t)
            if any(p.sign() <= 0 for p in probs):
                raise SpecError("probability must be positive")
        except SpecError:
            if warn:
                warn(f"skipping param={t}: some probability is not positive")
            continue
        if base is None:
            base = _graph(spec, t)
            graph = base
        else:
            graph = base.reweight(probs)
        br = _bracket(graph, spec, L)
        ends = dim.endpoint_report(graph, br, spec.options["tolerance"])
        rows.append((float(t), br.a_lo.mid, br.a_hi.mid, br.b_lo.mid, br.b_hi.mid,
                     ends.dim0.mid, ends.dim1.mid, ends.isolated0, ends.isolated1))
    return rows


def cmd_sweep(args) -> str:
    spec, _ = _load(args)
    grid = _grid(parse_rational(args.lo), parse_rational(args.hi), args.steps)
    rows = sweep_rows(spec, grid, args.max_cycle_len, warn=lambda m: print(f"warning: {m}", file=sys.stderr))
    text = write_sweep_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return ""
    return text


def cmd_measure(args) -> dict:
    spec, param = _load(args)
    graph = _graph(spec, param)
    if args.generation < 0:
        raise CommandError(EXIT_SPEC, "usage", "--generation must be >= 0")
    rows = []
    for inst in net_intervals(graph, args.generation):
        rows.append({
            "path": list(inst.path),
            "a": inst.a,
            "b": inst.b,
            "P": dim.pn_of_path(graph, inst.path),
        })
    return {"generation": args.generation, "intervals": rows}


def cmd_regularity(args) -> dict:
    spec, param = _load(args)
    graph = _graph(spec, param)
    n_max = args.nmax or spec.options["n_max"]
    m_max = args.mmax or spec.options["m_max"]
    report = generalized_regular_sufficient(graph.ifs).to_json()
    try:
        rows = regularity_diagnostics(graph, n_max, m_max)
    except ValueError as exc:
        raise CommandError(EXIT_SPEC, "usage", str(exc)) from exc
    report["diagnostics"] = [r.to_json() for r in rows]
    report["diagnostics_semantics"] = (
        "r_hat minimizes over paths of depth <= m_max only: it bounds R_n from above, "
        "so b_hat_lower_bound bounds B(n) from below"
    )
    return report


# --- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finitype", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("spec", help="IFS spec file (JSON)")
        sp.add_argument("--param", help="value for the 'param' probability slot")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check a spec file")
    sp = add("analyze", cmd_analyze, "characteristic vectors, loop classes and regularity verdict")
    sp.add_argument("--dot", metavar="FILE", help="also write the transition graph as Graphviz")
    sp = add("dims", cmd_dims, "local dimension at a periodic point")
    sp.add_argument("--prefix", required=True, help="vector ids from the root, e.g. '1,2'")
    sp.add_argument("--cycle", required=True, help="cycle of vector ids, first equal to last")
    sp.add_argument("--prefix2")
    sp.add_argument("--cycle2")
    sp = add("bounds", cmd_bounds, "bracket the local dimensions of the essential class")
    sp.add_argument("--max-cycle-len", type=int, dest="max_cycle_len")
    sp = add("sweep", cmd_sweep, "CSV of brackets over a grid of the parameter")
    sp.add_argument("--from", dest="lo", required=True)
    sp.add_argument("--to", dest="hi", required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--out", help="write CSV here instead of stdout")
    sp.add_argument("--max-cycle-len", type=int, dest="max_cycle_len")
    sp = add("measure", cmd_measure, "net intervals of one generation with exact endpoints and P_n")
    sp.add_argument("--generation", type=int, required=True)
    sp = add("regularity", cmd_regularity, "sufficient condition and finite-n diagnostics")
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--mmax", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CommandError as exc:
        err = {"error": {"type": exc.kind, "message": str(exc), **exc.extra}}
        print(dumps(err))
        return exc.code
    except (SpecError, FieldError) as exc:
        print(dumps({"error": {"type": "invalid_spec", "message": str(exc)}}))
        return EXIT_SPEC
    except (ModelViolation, StructuralError) as exc:
        print(dumps({"error": {"type": "model_violation", "message": str(exc)}}))
        return EXIT_MODEL
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        print(dumps(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

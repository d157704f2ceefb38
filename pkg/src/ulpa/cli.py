"""Command-line interface.

Every command reads an ultragraph from a .ug DSL file, prints one JSON
document to stdout, and exits 0 on success, 1 on a domain error and 2 on
a usage error.  Output schemas are version-tagged.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import branching, permutative
from .errors import UlpaError
from .leavitt import LeavittAlgebra, render_expr
from .parsing import parse_element_expr, parse_ultragraph_dsl
from .reduction import (
    CyclePowers,
    ReductionOutcome,
    ScalarProjection,
    reduce_element,
    semiprime_square_witness,
)
from .rings import Ring, ring_from_name
from .ultragraph import Ultragraph, lattice_closure, satisfies_condition_l, sinks


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False))


def _load_graph(path: str) -> Ultragraph:
    return parse_ultragraph_dsl(Path(path).read_text(encoding="utf-8"))


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _algebra(args) -> tuple[Ultragraph, LeavittAlgebra]:
    g = _load_graph(args.graph)
    ring = ring_from_name(args.ring)
    return g, LeavittAlgebra(g, ring)


def _render_factor(f) -> str:
    return repr(f)


def _outcome_json(ring: Ring, outcome: ReductionOutcome) -> dict:
    mu = [_render_factor(f) for f in outcome.mu]
    nu = [_render_factor(f) for f in outcome.nu]
    if isinstance(outcome.form, ScalarProjection):
        form = {
            "kind": "scalar_projection",
            "coefficient": ring.render(outcome.form.coefficient),
            "vertices": sorted(outcome.form.vertices),
        }
    else:
        assert isinstance(outcome.form, CyclePowers)
        form = {
            "kind": "cycle_powers",
            "cycle": list(outcome.form.cycle),
            "coefficients": {str(k): ring.render(v) for k, v in sorted(outcome.form.coefficients.items())},
        }
    return {"mu": mu, "nu": nu, "form": form}


def _parse_vector(ring: Ring, data: dict) -> dict:
    vec = {}
    for key, co in data.items():
        q, _, label = key.partition("@")
        vec[(Fraction(q), label)] = ring.parse(co)
    return vec


def _render_vector(ring: Ring, vec: dict) -> dict:
    return {f"{q}@{label}": ring.render(co) for (q, label), co in sorted(vec.items())}


# -- command handlers ------------------------------------------------------------


def _cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    _emit(
        {
            "schema": "ulpa/validate/v1",
            "valid": True,
            "vertices": list(g.vertices),
            "edges": [
                {"label": e, "source": g.source[e], "range": g.sort_vertices(g.range[e])}
                for e in g.edges
            ],
            "sinks": sinks(g),
        }
    )
    return 0


def _cmd_lattice(args) -> int:
    g = _load_graph(args.graph)
    sets = sorted(lattice_closure(g), key=lambda a: (len(a), sorted(a)))
    _emit({"schema": "ulpa/lattice/v1", "sets": [g.sort_vertices(a) for a in sets]})
    return 0


def _cmd_condition_l(args) -> int:
    g = _load_graph(args.graph)
    ok, witness = satisfies_condition_l(g)
    _emit(
        {
            "schema": "ulpa/condition-L/v1",
            "conditionL": ok,
            "witness": list(witness.edges) if witness else None,
        }
    )
    return 0


def _cmd_relations(args) -> int:
    g, alg = _algebra(args)
    report = alg.verify_relations()
    failures = [c for c in report["checks"] if not c["passed"]]
    _emit(
        {
            "schema": "ulpa/relations/v1",
            "ring": alg.ring.name,
            "passed": report["passed"],
            "checked": len(report["checks"]),
            "failures": failures,
        }
    )
    return 0


def _cmd_eq(args) -> int:
    g, alg = _algebra(args)
    left = alg.eval_expr(parse_element_expr(g, args.left))
    right = alg.eval_expr(parse_element_expr(g, args.right))
    _emit({"schema": "ulpa/eq/v1", "equal": left == right})
    return 0


def _cmd_reduce(args) -> int:
    g, alg = _algebra(args)
    x = alg.eval_expr(parse_element_expr(g, args.expr))
    outcome = reduce_element(alg, x)
    doc = {"schema": "ulpa/reduce/v1", "verified": True}
    doc.update(_outcome_json(alg.ring, outcome))
    _emit(doc)
    return 0


def _cmd_semiprime(args) -> int:
    g, alg = _algebra(args)
    x = alg.eval_expr(parse_element_expr(g, args.expr))
    witness = semiprime_square_witness(alg, x)
    doc = {"schema": "ulpa/semiprime/v1", "squareNonzero": True}
    doc.update(_outcome_json(alg.ring, witness.outcome))
    _emit(doc)
    return 0


def _cmd_bs_build(args) -> int:
    g = _load_graph(args.graph)
    bs = branching.build_interval_system(g)
    if args.rotation is not None:
        bs = branching.build_rotation_variant(g, bs, args.rotation)
    doc = branching.system_to_json(bs)
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=2, ensure_ascii=False), encoding="utf-8")
        _emit({"schema": "ulpa/bs-build/v1", "written": args.output})
    else:
        _emit(doc)
    return 0


def _cmd_bs_validate(args) -> int:
    g = _load_graph(args.graph)
    bs = branching.system_from_json(g, _load_json(args.system))
    report = branching.validate_branching(g, bs)
    failures = [c for c in report["checks"] if not c["passed"]]
    _emit(
        {
            "schema": "ulpa/bs-validate/v1",
            "passed": report["passed"],
            "checked": len(report["checks"]),
            "failures": failures,
            "dNonemptyHypothesis": report["d_nonempty_hypothesis"],
        }
    )
    return 0


def _cmd_bs_apply(args) -> int:
    g = _load_graph(args.graph)
    ring = ring_from_name(args.ring)
    bs = branching.system_from_json(g, _load_json(args.system))
    expr = parse_element_expr(g, args.expr)
    vec = _parse_vector(ring, json.loads(args.vector))
    out = branching.rep_apply(bs, ring, expr, vec)
    _emit({"schema": "ulpa/bs-apply/v1", "vector": _render_vector(ring, out)})
    return 0


def _cmd_bs_faithful(args) -> int:
    g = _load_graph(args.graph)
    ring = ring_from_name(args.ring)
    bs = branching.system_from_json(g, _load_json(args.system))
    verdict = branching.check_faithfulness_criterion(g, bs, args.nmax)
    witness = branching.kernel_witness(LeavittAlgebra(g, ring), bs, args.nmax)
    _emit(
        {
            "schema": "ulpa/bs-faithful/v1",
            "nmax": args.nmax,
            "faithful": verdict.faithful,
            "witnesses": {
                " ".join(cycle): f"{point[0]}@{point[1]}" for cycle, point in verdict.witnesses.items()
            },
            "failingCycle": list(verdict.failing_cycle) if verdict.failing_cycle else None,
            "identityPower": verdict.identity_power,
            "kernelWitness": render_expr(witness, g) if witness is not None else None,
        }
    )
    return 0


def _cmd_stratify(args) -> int:
    g = _load_graph(args.graph)
    strat = permutative.stratify(g)
    hypothesis, _ = permutative.esteaqui_hypothesis(g)
    _emit(
        {
            "schema": "ulpa/stratify/v1",
            "initialIsolated": list(strat.initial_isolated),
            "levels": [
                {
                    "extremes": [
                        {"vertices": g.sort_vertices(ex.vertices), "edge": ex.edge, "kind": ex.kind}
                        for ex in lvl.extremes
                    ],
                    "edges": list(lvl.edges),
                    "isolated": list(lvl.isolated),
                }
                for lvl in strat.levels
            ],
            "terminated": strat.terminated,
            "covered": strat.covered,
            "hypothesis": hypothesis,
        }
    )
    return 0


def _cmd_perm_to_bs(args) -> int:
    g = _load_graph(args.graph)
    ring = ring_from_name(args.ring)
    pd = permutative.data_from_json(g, _load_json(args.data))
    system, intertwiner = permutative.permutative_to_branching(g, pd)
    equivalence = permutative.check_equivalence(g, pd, ring)
    _emit(
        {
            "schema": "ulpa/perm-to-bs/v1",
            "system": {
                "carrier": sorted(system.carrier),
                "R": {e: sorted(s) for e, s in system.R.items()},
                "D": {v: sorted(s) for v, s in system.D.items()},
                "f": {e: dict(sorted(m.items())) for e, m in system.f.items()},
            },
            "intertwiner": dict(sorted(intertwiner.items())),
            "verified": equivalence["equivalent"],
            "checked": equivalence["checked"],
        }
    )
    return 0 if equivalence["equivalent"] else 1


# -- argument parsing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ulpa",
        description="Exact computations in ultragraph Leavitt path algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="ultragraph DSL file (.ug)")
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate, "validate an ultragraph description")
    add("lattice", _cmd_lattice, "list the lattice of generalized vertices")
    add("condition-L", _cmd_condition_l, "decide Condition (L), with a witness cycle when it fails")

    p = add("relations", _cmd_relations, "verify the defining relations exhaustively")
    p.add_argument("--ring", default="q", help="coefficient ring: z, q or zmod:<n> (default q)")

    p = add("eq", _cmd_eq, "decide equality of two element expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--ring", default="q")

    p = add("reduce", _cmd_reduce, "reduce a nonzero element to projection or cycle-power form")
    p.add_argument("expr")
    p.add_argument("--ring", default="q")

    p = add("semiprime", _cmd_semiprime, "produce the square-nonzero witness of a nonzero element")
    p.add_argument("expr")
    p.add_argument("--ring", default="q")

    p = add("bs-build", _cmd_bs_build, "build the standard interval branching system")
    p.add_argument("--rotation", type=int, default=None, metavar="Q",
                   help="replace exitless-cycle maps by rotation by 1/Q")
    p.add_argument("--output", "-o", default=None, help="write the system JSON to a file")

    p = add("bs-validate", _cmd_bs_validate, "check the branching-system axioms")
    p.add_argument("system", help="branching system file (.bs.json)")

    p = add("bs-apply", _cmd_bs_apply, "apply the induced representation to a finite-support vector")
    p.add_argument("system")
    p.add_argument("expr")
    p.add_argument("--vector", required=True, help='JSON object {"q@label": coeff}')
    p.add_argument("--ring", default="q")

    p = add("bs-faithful", _cmd_bs_faithful, "decide the finite-horizon faithfulness criterion")
    p.add_argument("system")
    p.add_argument("--nmax", type=int, required=True, help="horizon for the power set {1..nmax}")
    p.add_argument("--ring", default="q")

    add("stratify", _cmd_stratify, "run the extreme-vertex peeling")

    p = add("perm-to-bs", _cmd_perm_to_bs, "turn permutative data into a discrete branching system")
    p.add_argument("data", help="permutative data file (.pd.json)")
    p.add_argument("--ring", default="q")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UlpaError as exc:
        _emit({"schema": "ulpa/error/v1", "error": exc.payload()})
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _emit({"schema": "ulpa/error/v1", "error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())

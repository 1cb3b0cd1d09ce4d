"""Command line: `ditop run --scene FILE --task T ...` and `ditop pv FILE`.

Exit status 0 on success, 1 when an analysis fails (a retract does not verify, a
model is not extremal, ...), 2 on bad input. Errors are printed as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .category import count_table, ext_points, extremal_points, full_subcategory
from .dipaths import Budget
from .errors import DitopError, PvError, SceneError
from .grid import compactify
from .io import chain_from_blocks, load_scene_file, piece_chains, region_to_dict, retract_from_block, to_jsonable
from .models import (
    check_bipartite_injection,
    check_bipartite_iso,
    is_minimal,
    verify_extremal_model,
)
from .pv import analyze_deadlocks, parse_pv, to_scene
from .render import bipartite_dot, presentation_dot, quiver_dot, scene_svg
from .retracts import check_adjunction, induced_functor, verify_retract
from .scene import scene_to_dict
from .vankampen import make_cover, piece_tables, pushout_extremal_model, pushout_presentation, verify_pushout

TASKS = (
    "classes",
    "extremal",
    "bipartite",
    "retract-verify",
    "retract-find",
    "model-verify",
    "model-minimal",
    "vankampen",
    "pv-compile",
    "deadlocks",
)


def budget_from_env(default: Budget = Budget()) -> Budget:
    """DITOP_BUDGET="max_paths=5000,max_steps=20" (either key may be omitted)."""
    text = os.environ.get("DITOP_BUDGET", "").strip()
    if not text:
        return default
    values = {"max_paths": default.max_paths, "max_steps": default.max_steps}
    for part in text.split(","):
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in values:
            raise SceneError(f"unknown DITOP_BUDGET key {key!r}")
        values[key] = int(val)
    return Budget(**values)


@dataclass
class Outcome:
    results: dict = field(default_factory=dict)
    ok: bool = True
    dot: str | None = None
    paths: list = field(default_factory=list)


class InputError(DitopError):
    pass


def _need(sf, key, task):
    if key not in sf.blocks:
        raise InputError(f"task {task!r} needs a {key!r} block in the scene file", task=task)
    return sf.blocks[key]


def run_tasks(sf, tasks, budget: Budget) -> Outcome:
    scene = sf.scene
    grid = compactify(scene)
    label = grid.label
    graded = budget.max_steps if grid.has_cycles else None
    out = Outcome()
    named = [grid.named(n) for n, _ in scene.marked_points]
    whole = None

    def whole_table():
        nonlocal whole
        if whole is None:
            whole = full_subcategory(grid, grid.vertices, budget)
        return whole

    for task in tasks:
        if task == "classes":
            table = full_subcategory(grid, named, budget)
            ext = set(ext_points(grid))
            drawn: dict = {}
            homs = {}
            for a in table.objects:
                for b in table.objects:
                    cs = table.non_identities(a, b)
                    if not cs:
                        continue
                    homs[f"{label(a)}->{label(b)}"] = {
                        "count": len(cs),
                        "exact": table.exact(a, b),
                        "representatives": [list(c.canonical.steps) for c in cs],
                    }
                    if a != b:
                        drawn.setdefault(a in ext and b in ext, []).extend(c.canonical for c in cs)
            # SVG: one canonical path per class between extremal points when there are any
            out.paths = drawn.get(True) or drawn.get(False, [])
            out.results[task] = homs
            out.dot = out.dot or quiver_dot(table, label)
        elif task == "extremal":
            mins, maxs = extremal_points(grid)
            out.results[task] = {
                "minimal": sorted(label(v) for v in mins),
                "maximal": sorted(label(v) for v in maxs),
                "loop_free": not grid.has_cycles,
            }
        elif task == "bipartite":
            table = full_subcategory(grid, ext_points(grid), budget)
            out.results[task] = {
                "vertices": sorted(label(v) for v in table.objects),
                "edges": count_table(table, label),
                "exact": table.all_exact(),
            }
            out.dot = out.dot or bipartite_dot(table, label)
        elif task in ("retract-find", "retract-verify"):
            block = _need(sf, "retract", task)
            table = whole_table()
            data = retract_from_block(table, grid, block, graded)
            if data is None:
                out.results[task] = {"found": False}
                out.ok = False
                continue
            res = {
                "found": True,
                "direction": data.direction,
                "A": region_to_dict(grid, data.codomain),
                "assignment": {label(x): label(t) for x, (t, _) in sorted(data.assignment.items())},
            }
            if task == "retract-verify":
                rep = verify_retract(table, data, graded)
                adj = check_adjunction(induced_functor(data, table, graded), table)
                res.update(
                    verified=rep.ok,
                    adjunction=adj,
                    exact=rep.exact,
                    graded_up_to=rep.graded_up_to,
                    failures=[[label(x) if x is not None else None, label(a) if a is not None else None, why]
                              for x, a, why in rep.failures[:20]],
                )
                out.ok &= rep.ok and adj
            out.results[task] = res
        elif task in ("model-verify", "model-minimal"):
            blocks = _need(sf, "chain", task)
            chain = chain_from_blocks(whole_table(), grid, blocks, graded)
            if chain is None:
                out.results[task] = {"built": False}
                out.ok = False
                continue
            final = chain.final_table()
            if task == "model-verify":
                rep = verify_extremal_model(grid, chain, graded)
                res = {
                    "verified": rep.ok,
                    "exact": rep.exact,
                    "problems": rep.problems,
                    "directions": chain.directions(),
                    "final": region_to_dict(grid, chain.final_A),
                    "generators": {f"{label(a)}->{label(b)}": n for (a, b), n in final.generator_counts().items()},
                    "bipartite_injection": check_bipartite_injection(grid, chain),
                }
                if not grid.has_cycles:
                    res["bipartite_iso"] = check_bipartite_iso(grid, chain)
                out.ok &= rep.ok
                out.dot = out.dot or quiver_dot(final, label, name="model", generators_only=True)
            else:
                minimal = is_minimal(grid, chain, up_to_length=graded)
                res = {"minimal": minimal}
                out.ok &= minimal
            out.results[task] = res
        elif task == "vankampen":
            out.results[task], ok, dot = _vankampen(sf, scene, budget)
            out.ok &= ok
            out.dot = out.dot or dot
        elif task == "deadlocks":
            rep = analyze_deadlocks(scene)
            out.results[task] = rep.to_dict()
        elif task == "pv-compile":
            out.results[task] = scene_to_dict(scene)
        else:
            raise InputError(f"unknown task {task!r}")
    return out


def _vankampen(sf, scene, budget):
    block = _need(sf, "cover", "vankampen")
    cover = make_cover(
        scene, block["windows1"], block["windows2"], block["A1"], block["A2"], block.get("B1"), block.get("B2")
    )
    label = cover.grid.label
    rep = verify_pushout(cover, budget)
    pres = pushout_presentation(*piece_tables(cover, budget))
    res = {
        "pushout_ok": rep.ok,
        "exact": rep.exact,
        "problems": rep.problems,
        "generators": sorted(g.name for g in pres.generators),
        "relations": len(pres.relations),
        "homs": {f"{label(a)}->{label(b)}": v for (a, b), v in rep.pairs.items() if v["presented"] and a != b},
    }
    ok = rep.ok
    models = block.get("models")
    if models:
        chains = piece_chains(cover, models, budget)
        glued = pushout_extremal_model(chains[1], chains[2], chains[0], cover, budget)
        final = glued.chain.final_table()
        res["model"] = {
            "verified": glued.ok,
            "problems": glued.problems,
            "graded_up_to": glued.graded_up_to,
            "objects": sorted(label(x) for x in final.objects),
            "generators": {f"{label(a)}->{label(b)}": n for (a, b), n in final.generator_counts().items()},
        }
        ok &= glued.ok
    return res, ok, presentation_dot(pres, label)


def render_text(results: dict) -> str:
    lines = []
    for task, res in results.items():
        lines.append(f"[{task}]")
        if isinstance(res, dict):
            for k, v in res.items():
                lines.append(f"  {k}: {json.dumps(to_jsonable(v), sort_keys=True)}")
        else:
            lines.append(f"  {json.dumps(to_jsonable(res), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(err: Exception, code: int) -> int:
    payload = err.to_dict() if isinstance(err, DitopError) else {"error": type(err).__name__, "message": str(err)}
    sys.stdout.write(json.dumps(to_jsonable(payload), sort_keys=True) + "\n")
    return code


def cmd_run(args) -> int:
    try:
        with open(args.scene, encoding="utf-8") as fh:
            sf = load_scene_file(fh.read())
        budget = sf.budget or budget_from_env()
        if args.max_paths or args.max_steps:
            budget = Budget(args.max_paths or budget.max_paths, args.max_steps or budget.max_steps)
        tasks = args.task or ["extremal", "bipartite"]
        bad = [t for t in tasks if t not in TASKS]
        if bad:
            raise InputError(f"unknown task {bad[0]!r}", choices=list(TASKS))
    except (OSError, SceneError, InputError, PvError, KeyError, ValueError) as err:
        return _fail(err, 2)
    try:
        outcome = run_tasks(sf, tasks, budget)
    except (SceneError, InputError, KeyError) as err:
        return _fail(err, 2)
    except DitopError as err:
        return _fail(err, 1)
    return _write(outcome, args, sf.scene, budget)


def _write(outcome: Outcome, args, scene, budget) -> int:
    report = {
        "budget": {"max_paths": budget.max_paths, "max_steps": budget.max_steps},
        "ok": outcome.ok,
        "results": to_jsonable(outcome.results),
    }
    fmt_ = args.format
    if fmt_ == "json":
        emit(json.dumps(report, sort_keys=True, indent=2) + "\n", args.out)
    elif fmt_ == "text":
        emit(render_text(outcome.results) + f"ok: {str(outcome.ok).lower()}\n", args.out)
    elif fmt_ == "dot":
        if outcome.dot is None:
            return _fail(InputError("no task produced a graph; use classes, bipartite, model-verify or vankampen"), 2)
        emit(outcome.dot, args.out)
    elif fmt_ == "svg":
        if scene.dim != 2:
            return _fail(InputError("SVG output needs a 2D scene"), 2)
        emit(scene_svg(compactify(scene), outcome.paths), args.out)
    return 0 if outcome.ok else 1


def cmd_pv(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            prog = parse_pv(fh.read())
        scene = to_scene(prog, args.max_processes)
    except (OSError, PvError) as err:
        return _fail(err, 2)
    report = analyze_deadlocks(scene, prog)
    payload = {"scene": scene_to_dict(scene), "report": report.to_dict()}
    if args.format == "json":
        emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [f"processes: {scene.dim}", f"forbidden boxes: {len(scene.forbidden)}"]
        for kind in ("deadlocks", "unreachable"):
            for item in payload["report"][kind]:
                lines.append(f"{kind[:-1] if kind == 'deadlocks' else kind}: ({', '.join(item['point'])}) pc={item['pc']}")
        emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ditop", description="Fundamental categories of cubical directed spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="analyse a scene file")
    run.add_argument("--scene", required=True)
    run.add_argument("--task", action="append", help=f"one of {', '.join(TASKS)} (repeatable)")
    run.add_argument("--max-paths", type=int)
    run.add_argument("--max-steps", type=int)
    run.add_argument("--format", choices=("text", "json", "dot", "svg"), default="text")
    run.add_argument("--out")
    run.set_defaults(func=cmd_run)
    pv = sub.add_parser("pv", help="compile a PV program and report deadlocks")
    pv.add_argument("file")
    pv.add_argument("--format", choices=("text", "json"), default="text")
    pv.add_argument("--max-processes", type=int, default=3)
    pv.add_argument("--out")
    pv.set_defaults(func=cmd_pv)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

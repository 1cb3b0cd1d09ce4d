"""Run every bundled example scene through the CLI and write reports to an output directory.

    python3 scripts/reproduce_examples.py --out results/
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
from pathlib import Path

from ditop.cli import main

ROOT = Path(__file__).resolve().parents[1]
SCENES = ROOT / "scenes"

RUNS = {
    "square_annulus": ["extremal", "bipartite", "classes", "retract-verify", "model-verify", "model-minimal", "vankampen"],
    "swiss_flag": ["extremal", "bipartite", "classes", "model-verify", "model-minimal", "vankampen"],
    "holes_in_series": ["extremal", "bipartite", "classes", "model-verify", "model-minimal"],
    "two_diagonal_holes": ["extremal", "bipartite", "classes"],
    "directed_circle": ["extremal", "classes"],
    "vankampen_glued": ["extremal", "vankampen"],
}


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def main_script() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, tasks in RUNS.items():
        scene = str(SCENES / f"{name}.json")
        base = ["run", "--scene", scene] + [x for t in tasks for x in ("--task", t)]
        code, text = run(base + ["--format", "json"])
        (out / f"{name}.json").write_text(text)
        worst = max(worst, code)
        summary = json.loads(text)
        print(f"{name:20s} exit={code} ok={summary.get('ok')}")
        if name != "directed_circle":
            _, svg = run(["run", "--scene", scene, "--task", "classes", "--format", "svg"])
            (out / f"{name}.svg").write_text(svg)
        _, dot = run(["run", "--scene", scene, "--task", tasks[1] if len(tasks) > 1 else tasks[0], "--format", "dot"])
        (out / f"{name}.dot").write_text(dot)
    code, text = run(["pv", str(SCENES / "dijkstra.pv"), "--format", "json"])
    (out / "dijkstra.json").write_text(text)
    print(f"{'dijkstra.pv':20s} exit={code} deadlocks={json.loads(text)['report']['deadlocks']}")
    return max(worst, code)


if __name__ == "__main__":
    raise SystemExit(main_script())

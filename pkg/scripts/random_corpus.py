"""Property checks over a random corpus of loop-free 2D scenes.

For each scene: retract search versus adjunction check (including corrupted data),
greedy extremal model and bipartite-graph isomorphism, and flip classes versus the
2D signature oracle. Prints one JSON line per scene and a summary.

    python3 scripts/random_corpus.py --count 50 --seed 0
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict

from ditop.category import HomTable, ext_points
from ditop.corpus import CorpusConfig, corpus, corruptions, random_retracts
from ditop.dipaths import classes, signature_2d
from ditop.grid import compactify
from ditop.models import check_bipartite_iso, shrink_model, verify_extremal_model
from ditop.retracts import check_adjunction, induced_functor, verify_retract
from ditop.scene import scene_to_dict


def check_scene(scene, rng: random.Random) -> dict:
    g = compactify(scene)
    table = HomTable(g, g.vertices)
    ext = ext_points(g)
    cases = [(d, table) for d in random_retracts(table, ext, rng)]
    chain = shrink_model(table, ext)
    cases += [(s, table.restrict(s.domain)) for s in chain.steps[:3]]
    disagree = checked = 0
    for data, t in cases:
        for variant in [data] + corruptions(t, data, rng):
            checked += 1
            disagree += verify_retract(t, variant).ok != check_adjunction(induced_functor(variant, t), t)
    model_ok = verify_extremal_model(g, chain).ok
    cs = classes(g, g.named("a"), g.named("b"))
    sigs = {signature_2d(g, p) for c in cs for p in c.members}
    return {
        "vertices": len(g.vertices),
        "retracts": len(cases),
        "checked": checked,
        "disagreements": int(disagree),
        "model_size": len(chain.final_A),
        "model_ok": model_ok,
        "bipartite_iso": bool(model_ok and check_bipartite_iso(g, chain)),
        "classes": len(cs),
        "signatures": len(sigs),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description="random corpus property checks")
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--max-boxes", type=int, default=3)
    parser.add_argument("--denominator", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--quiet", action="store_true")
    args = parser.parse_args()
    config = CorpusConfig(args.count, args.max_boxes, args.denominator, seed=args.seed)
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    totals = {"disagreements": 0, "iso_failures": 0, "oracle_mismatches": 0, "checked": 0}
    for k, scene in enumerate(corpus(config)):
        row = check_scene(scene, rng)
        totals["checked"] += row["checked"]
        totals["disagreements"] += row["disagreements"]
        totals["iso_failures"] += row["model_ok"] and not row["bipartite_iso"]
        totals["oracle_mismatches"] += row["classes"] != row["signatures"]
        if not args.quiet:
            print(json.dumps({"scene": k, "boxes": scene_to_dict(scene)["boxes"], **row}))
    totals["seconds"] = round(time.perf_counter() - t0, 2)
    print(json.dumps({"config": asdict(config), **totals}))
    return 0 if totals["disagreements"] == totals["iso_failures"] == totals["oracle_mismatches"] == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Discrete logs on a curve over GF(1009) by inverting an embedding through its projections."""

import json
import pathlib
import random

from localinv.embed import invert_embedding
from localinv.field import parse_int
from localinv.targets import Curve, load_problem

desc = json.loads((pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "curve_q1009.json").read_text())
curve = Curve(parse_int(desc["q"]), parse_int(desc["A"]), parse_int(desc["B"]))
P = tuple(parse_int(v) for v in desc["P"])
order = parse_int(desc["order"])

rng = random.Random(3)
hits = 0
for _ in range(20):
    m = rng.randrange(1, order)
    prob = load_problem(dict(desc, Q=list(curve.mul(m, P))))
    out = invert_embedding(prob.map, prob.y, 256, all_projections=True)
    status = out.tag
    if out.concluded:
        hits += 1
        status += f" x={out.x.to_int()} via projection {out.projection}"
    print(f"m={m:<5} {status}")
print(f"{hits}/20 recovered within M=256")

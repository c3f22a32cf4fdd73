#!/usr/bin/env python3
"""Theoretical box-dimension bounds versus an empirical box count.

For constant scales on an equally spaced 3-piece interval the dimension of
the graph of f* is known in closed form; here we compute the closed form,
the general upper/lower bounds, and a log-log box-count fit, and check
that they agree.
"""

import math
from pathlib import Path

from fifdim import (
    build_model,
    empirical_dimension,
    load_config,
    loglog_chart,
    reconcile,
)

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

cfg = load_config(str(HERE.parent / "configs" / "example5_case2.json"))
model = build_model(cfg.spec)

report = reconcile(model, k_min=6, k_max=12)
print("theoretical entries:")
for e in report.entries:
    flag = "" if e.applies else "   (hypotheses not met)"
    print(f"  {e.kind:5s} {e.value:.5f}  [{e.theorem}]{flag}")
print(f"best lower = {report.best_lower:.5f}")
print(f"best upper = {report.best_upper:.5f}")

est = empirical_dimension(model, 6, 12)
target = 1 + math.log(1.5) / math.log(3)  # gamma = 3/2, three pieces
print(f"box-count slope = {est.slope:.4f}  (closed form {target:.5f})")
print("consistent:", not report.inconsistent)

svg = loglog_chart(est.entries, est.slope, report.best_lower, report.best_upper)
out = OUT / "boxcount_fit.svg"
out.write_text(svg)
print("wrote", out)

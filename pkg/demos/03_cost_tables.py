"""Realized and expected trading costs for every type pairing.

`cost_report` evaluates each (firm1 type, firm2 type) block of the
equilibrium under a range of evaluation impact coefficients kappa_e:
the strategies stay fixed, only the cost model they are marked against
changes.  Expected costs weight the realized ones by each type's
conditional beliefs, using the type's own kappa.
"""
from pathlib import Path

from impactgame import cost_report, load_scenario, solve

ROOT = Path(__file__).resolve().parents[1]

scen = load_scenario(str(ROOT / "scenarios" / "two_type.json"))
sol = solve(scen)
kes = [1.0, 2.0, 3.0, 15.0]

for normalized, tag in ((True, "normalized by own target"), (False, "raw")):
    rows = cost_report(scen, sol, kes, normalized)
    print(f"\n=== realized costs ({tag}) ===")
    print(f"{'pair':>8} {'kappa_e':>8} {'firm1':>10} {'firm2':>10}")
    for r in rows:
        print(f"  ({r.firm1_type + 1},{r.firm2_type + 1})  {r.eval_kappa:8g} "
              f"{r.cost1:10.4f} {r.cost2:10.4f}")
    print("expected (each type vs its conditional mix, own kappa):")
    seen = set()
    for r in rows:
        if r.firm2_type == 0 and r.eval_kappa == kes[0] and r.firm1_type not in seen:
            seen.add(r.firm1_type)
            print(f"  firm 1 type {r.firm1_type + 1}: {r.exp1:.4f}")
    seen = set()
    for r in rows:
        if r.firm1_type == 0 and r.eval_kappa == kes[0] and r.firm2_type not in seen:
            seen.add(r.firm2_type)
            print(f"  firm 2 type {r.firm2_type + 1}: {r.exp2:.4f}")

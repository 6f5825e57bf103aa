"""One type may trade alongside a large non-strategic participant.

In the bundled `goliath` scenario, firm 2's first type shares its trade
with a background schedule b*t (b=5).  That forcing makes the firm
overbuy far past its own target before unwinding.  The lone-firm closed
form shows the same mechanics without the game around it.
"""
from pathlib import Path

import numpy as np

from impactgame import (
    discrete_best_response,
    load_scenario,
    sample,
    single_firm_vs_nonstrategic,
    solve,
)

ROOT = Path(__file__).resolve().parents[1]

scen = load_scenario(str(ROOT / "scenarios" / "goliath.json"))
sol = solve(scen)
print("forcing vector c:", np.round(sol.c, 4), "(nonzero: background flow)")

grid = np.linspace(0.0, 1.0, 2001)
comp = sample(sol, grid).component(2, 0)
peak = comp.positions.max()
t_peak = grid[comp.positions.argmax()]
f = scen.firm2_types[0].target
print(f"firm 2 type 1: target {f:g}, peak position {peak:.3f} "
      f"({peak / f:.2f}x target) at t = {t_peak:.3f}")

# without an opponent the same channel has a closed form:
# s(t) = alpha t^2 + beta t with alpha = -kappa*b/2, beta = f + kappa*b/2
kappa, target, b = 1.0, 1.0, 2.0
alpha, beta, gamma = single_firm_vs_nonstrategic(kappa, target, b)
print(f"\nlone firm (kappa={kappa:g}, f={target:g}, b={b:g}): "
      f"s(t) = {alpha:g} t^2 + {beta:g} t + {gamma:g}")

# the discrete best response against only that background converges to it
n = 512
br = discrete_best_response(np.empty((0, n + 1)), np.array([]),
                            kappa, target, b, n)
ts = br.times
err = np.max(np.abs(br.values - (alpha * ts**2 + beta * ts + gamma)))
print(f"discrete best response (n={n}) max deviation from closed form: {err:.2e}")

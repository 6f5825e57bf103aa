"""From a common prior over type pairs to each side's conditional beliefs.

Each firm knows its own type and weighs the opponent's types by the prior
conditioned on that knowledge.  The coupled flow equations consume these
conditionals halved (each firm optimizes against half the expected
opponent pressure), which is what `BeliefMatrices` carries around.
"""
from pathlib import Path

import numpy as np

from impactgame import conditionals, load_scenario

ROOT = Path(__file__).resolve().parents[1]

scen = load_scenario(str(ROOT / "scenarios" / "two_type.json"))
print("prior over (firm1 type, firm2 type):")
print(scen.prior)

beliefs = conditionals(scen.prior)
print("\nfirm 1's conditionals over firm 2's types (rows = own type):")
print(np.round(beliefs.p1, 4))
print("\nfirm 2's conditionals over firm 1's types (rows = own type):")
print(np.round(beliefs.p2, 4))

# rows are probability vectors and the halved blocks are exactly half
assert np.allclose(beliefs.p1.sum(axis=1), 1.0)
assert np.allclose(beliefs.p2.sum(axis=1), 1.0)
assert np.allclose(beliefs.pi1, 0.5 * beliefs.p1)
print("\nrow sums check out; pi blocks are the conditionals halved.")

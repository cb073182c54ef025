"""
Branchings, the inverse reduced matrix, and tree-like shortcuts
===============================================================

On the four-complex graph, entries of the inverse reduced kinetic matrix
are ratios of weighted branching counts. On tree-like graphs the reduced
solution can be peeled off level by level instead.
"""

# %%
from fractions import Fraction
import random

from deficiency_one import fixtures, linalg
from deficiency_one.digraph import enumerate_branchings
from deficiency_one.mtree import L_value, branching_inverse, inverse_numerator
from deficiency_one.netmodel import RateAssignment, build_kinetic_matrix
from deficiency_one.special import tree_like_analysis
from deficiency_one.steady import prepare, solve_theta

g = fixtures.four_vertex_graph()
for b in enumerate_branchings(g, [1]):
    print("branching rooted at 1:", sorted(b))
print("rooted at {1,4}:", len(enumerate_branchings(g, [1, 4])))

# %%
unit = RateAssignment.uniform(g.arcs)
print("L terms:", L_value(g, unit).monomials())
print("numerator terms for (2,4):", inverse_numerator(g, unit, 2, 4).monomials())
inv = linalg.inverse(build_kinetic_matrix(g, unit).block([2, 3, 4]))
print("direct inverse entry (4,2):", inv[2][0], " branching formula:", branching_inverse(g, unit, 2, 4))

# %%
# The 22-complex tree-like example: recursion versus a direct solve with
# random rational rates.
inst = fixtures.with_h(fixtures.tree22_graph(), [16, 0, 0, 0, 0, 0] + [-1] * 16)
rng = random.Random(0)
kappa = RateAssignment({a: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for a in inst.graph.arcs})
res = tree_like_analysis(inst, kappa)
direct = solve_theta(inst.graph, kappa, prepare(inst).h).values
print("exit vertex:", res.structure.l, " recursion == direct solve:", res.theta == direct)
for c in res.forall_conditions:
    print(" ", c)

"""
Where the all-rates conditions come from
========================================

An eight-complex graph with five strong components. Deleting a single
vertex and seeing who loses access to the absorbing part yields the sets
U(i). Requiring h(U) <= 0 on every set that can carry an arborescence
collapses to requiring it on these U(i) alone.
"""

# %%
from deficiency_one import fixtures
from deficiency_one.forall import (
    W_of,
    contracted_view,
    forall_condition,
    forall_formulations,
    j_inarb_family,
    postdominators,
)

inst = fixtures.with_h(fixtures.eight_vertex_graph(), fixtures.EIGHT_VERTEX_GOOD_H)
view = contracted_view(inst)
pd = postdominators(view)


def show(s):
    return "{" + ",".join(map(str, sorted(s))) + "}"


for i, u in pd.U.items():
    print(f"U({i}) = {show(u)}")

# %%
# Every set in a j-inarb family splits uniquely into U(i) pieces.
for j in view.cdouble:
    row = ", ".join(f"{show(u)} = U over {show(iu)}" for u, iu in j_inarb_family(view, j))
    print(f"j={j}: {row}")

# %%
# W(j) via two vertex-disjoint paths. A component whose W stays inside it
# contributes one strict condition.
wf = W_of(view)
for j, w in wf.W.items():
    print(f"W({j}) = {show(w)}")
print("J =", wf.J, " all valid choices:", wf.all_J)
print("W(j) inside its component:", wf.inside)
print("R in component tree :", {j: show(r) for j, r in pd.R_tree.items()})
print("R in condensation   :", {j: show(r) for j, r in pd.R_cond.items()})

# %%
holds, conds = forall_condition(inst)
for c in conds:
    print(" ", c)
print("all-rates criterion holds:", holds)
print("every formulation:", forall_formulations(inst))

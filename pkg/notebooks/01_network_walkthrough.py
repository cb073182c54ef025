"""
From a reaction network to a three-way verdict
==============================================

A small three-species network whose positive steady states exist for some
rate choices but not others. We compute its deficiency and h-vector, then
ask the classifier for a verdict with supporting rates.
"""

# %%
from deficiency_one import classify, compute_deficiency, compute_h, exists_for_kappa
from deficiency_one import fixtures
from deficiency_one.steady import sampling_check

net = fixtures.net1()
print(fixtures.NET1_TEXT)

# %%
# One linkage class, one absorbing component and deficiency one put the
# network in scope.
delta, ell, t = compute_deficiency(net)
print(f"deficiency {delta}, linkage classes {ell}, absorbing components {t}")

h = compute_h(net)
print("h =", [str(x) for x in h.values])

# %%
# The closed-set inequalities hold, so suitable rates exist. The all-rates
# conditions fail, so the answer depends on the rates.
result = classify(net)
print(result.verdict.value, "-", result.reason)
for c in result.exists_conditions:
    print("  exists:", c)
for c in result.forall_conditions:
    print("  all rates:", c)

# %%
# Both supporting rate assignments are checked by solving the reduced linear
# system exactly.
print("witness rates:", result.witness_kappa.to_json())
print("  positive steady states:", exists_for_kappa(net, result.witness_kappa))
print("falsifier rates:", result.falsifier_kappa.to_json())
print("  positive steady states:", exists_for_kappa(net, result.falsifier_kappa))

# %%
# Random log-uniform rates land on both sides.
report = sampling_check(net, result, samples=200, seed=0)
print(report.to_json())

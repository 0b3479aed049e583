# %% [markdown]
# # A toric bordism with bandwidth two
#
# Build the fans of the Atiyah flip of type (1,1,3), glue the bordism fan
# and run the BB analysis of the subgroup v = e0 + e1 - f0 - f1.

# %%
from cstar import atiyah, tflow
from cstar.atiyah import AtiyahType, build_suite

suite = build_suite(AtiyahType(1, 1, 3))
print(suite.names, suite.v)
for name in ("sigma_minus", "sigma_plus", "hat"):
    f = suite[name]
    print(f"{name:12s} rays {len(f.rays)}  max cones {len(f.max_cones)}")

# %% [markdown]
# The two flip fans triangulate the same cone, and each side is a bundle
# over the flipped centre.

# %%
print(atiyah.verify_triangulations(suite).ok, atiyah.verify_bundle_structure(suite).ok)

# %% [markdown]
# Three fixed components: the two divisors V(v), V(-v) and one inner point.
# The divisor V(v) + V(-v) linearizes to moment values -1, 0, 1.

# %%
rep, bb = atiyah.verify_bordism(suite)
f = suite["hat"]
for k, c in enumerate(bb.components):
    print(k, [f.label(i) for i in c.min_cone], "dim", c.dim,
          "nu+", c.nu_plus, "nu-", c.nu_minus, "mu", c.mu_value)
print("bandwidth", bb.bandwidth, "equalized", bb.equalized, "bordism rank", bb.bordism_rank)

# %% [markdown]
# AM vs FM: on each invariant curve the jump of mu is delta times the degree.

# %%
for row in bb.curve_table.rows:
    print([f.label(i) for i in row.wall], row.delta, row.degree, row.holds)

# %% [markdown]
# Any fan and subgroup work. Here is P^2 with a generic subgroup.

# %%
from cstar.fan import Fan, TDivisor

p2 = Fan(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 0]])
r = tflow.bb_report(p2, (1, 2), TDivisor((0, 0, 1)))
print([c.mu_value for c in r.components], r.bandwidth)

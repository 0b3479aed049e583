# %% [markdown]
# # Drums as Cayley sums
#
# The Cayley sum of the polytopes of P^(m-1) x P^(n-m) embedded at levels 0
# and 1 is the standard n-simplex, so P^n is a drum.

# %%
from cstar import drum

pm, pp = drum.product_pair(2, 4)
cs = drum.cayley_sum(pm, pp)
print(cs.vertices)
print(drum.is_unimodular_simplex(cs), drum.unimodular_map_to_standard(cs))

# %%
rep = drum.drum_bandwidth_check(cs)
print(rep.bandwidth, rep.layer_values, rep.layer_vertex_counts)

# %% [markdown]
# The index of a drum with P^k- and P^k+ bundle structures.

# %%
for km, kp in [(0, 0), (1, 2), (3, 3)]:
    print(km, kp, drum.drum_index(drum.DrumSpec(km, kp)))

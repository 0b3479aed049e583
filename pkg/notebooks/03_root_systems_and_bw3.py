# %% [markdown]
# # Root systems and bandwidth three
#
# Root systems are built exactly. Classical types use the usual orthonormal
# coordinates; exceptional types use simple-root coordinates with a Gram form.

# %%
from cstar.rootsys import DynkinType, build_root_system, long_roots, weyl_orbit

for name in ("B3", "C3", "G2", "E6", "E8"):
    rs = build_root_system(DynkinType.parse(name))
    print(name, len(rs.roots), len(long_roots(rs)), rs.exponents, rs.weyl_order)

# %%
c3 = build_root_system(DynkinType("C", 3))
print(sorted(weyl_orbit(c3, c3.fundamental_weights[2])))

# %% [markdown]
# The Lagrangian Grassmannian C3(3) with the fundamental coweight has
# buckets 1, 3, 3, 1 and an equalized sink and source.

# %%
from cstar import homog

h = homog.HomogeneousSpace.parse("C3(3)")
rep = homog.action_report(h, homog.coweight(h, 3))
for p in rep.points:
    print(p["weight"], p["mu"], p["tangent"])

# %%
for t in ("C3", "A5", "D6", "E7"):
    cert = homog.bw3_certify(t)
    print(cert.space, cert.buckets, cert.inner_dim, cert.index)

# %% [markdown]
# The simple coroot gives bandwidth two on the same space, and a scan of
# other marked diagrams finds no bandwidth three certificate.

# %%
print(homog.action_report(h, homog.coweight(h, 3, "coroot")).buckets)
print(sum(r["pass"] for r in homog.coweight_scan()))

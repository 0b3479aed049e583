# %% [markdown]
# # Short gradings of adjoint varieties
#
# A node j gives a short grading when the highest root has coefficient one
# at j. Its fixed points on the adjoint variety split into Y_-, Y_0, Y_+.

# %%
from cstar import homog

for t in ("E6", "E7", "F4", "B4", "C4"):
    e = homog.table_entry(t)
    print(t, e["adjoint"], e["short_nodes"])

# %%
rep = homog.adjoint_report("E7", 7)
print(rep.buckets, rep.components)

# %% [markdown]
# Components are reported as dimension -> number of fixed points and are
# compared against the committed label fixtures.

# %%
from cstar.cli import load_fixture

gen = homog.tables()
print(homog.compare_with_fixture(gen, load_fixture()))
print(homog.label_fingerprint("D5(5)"), homog.label_fingerprint("A1(1)xA3(2)"))

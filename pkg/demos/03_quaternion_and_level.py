# %% [markdown]
# # Arithmetic side conditions
#
# Q(zeta3) has level two, and K(sqrt u, sqrt v) sits in a quaternion
# extension exactly when -u = x^2 + v y^2 has a solution in K.  For
# (2, 13) a Hilbert symbol at 13 rules this out; bounded search agrees.

# %%
from planedescent.descent.arith import (conic_solvability, hilbert_symbol, level_two_check,
                                        quaternion_embedding_check)
from planedescent.tower.standard import adjoin_sqrt, eisenstein_field, rationals

for name, spec in (("Q(zeta3)", eisenstein_field()), ("Q(i)", adjoin_sqrt(rationals(), -1, "i")),
                   ("Q", rationals())):
    r = level_two_check(spec)
    print(f"{name:9s} level two: {r.level_two!s:5s} {r.reason}", r.witness or "")

# %%
print("(-2, -13)_13 =", hilbert_symbol(-2, -13, 13))
print(quaternion_embedding_check(2, 13).summary())

# %%
import time

t0 = time.perf_counter()
st = conic_solvability(2, 13, height_bound=50, local_check=False)
print(st.verdict, st.searched, "candidates", f"({time.perf_counter() - t0:.2f} s)")

# %% [markdown]
# Two controls where the conic does have points.

# %%
for u, v in ((-1, 13), (-13, 13), (-17, 13)):
    st = conic_solvability(u, v)
    x, y = st.witness
    print(f"u={u}, v={v}: x = {x}, y = {y}; x^2 + v y^2 = {x * x + y * y * v}")

# %% [markdown]
# # The cube-root twist
#
# Rescale the sextic by D = diag(1, p^(-1/3), p^(-2/3)).  The rescaled form
# is defined over L = Q(zeta3, sqrt u, sqrt v) and carries the twisted
# symmetry A = [Y : Z : pX].  The map sigma -> A is a cocycle of the
# cosine rotation; whether it is trivial over L is an inertia question at p.

# %%
from planedescent.curves import build_huggins_form, build_scaled_form
from planedescent.descent.cocycle import build_twist_cocycle, twist_matrix, validate_cocycle
from planedescent.ternary.forms import scalar_ratio, substitute
from planedescent.ternary.matrix import Matrix3
from planedescent.tower.standard import CBRT_P, cbrt_tower, splitting_tower

u, v, p = 2, 13, 3
spec = cbrt_tower(u, v, p)
c = spec.gen(CBRT_P)
D = Matrix3.diag(1, c.inverse(), (c * c).inverse(), spec)

F = build_huggins_form(u, v).form.map_coefficients(spec.coerce, spec.zero)
S = build_scaled_form(u, v, p, spec).form
print("scaled form / (F o D) =", scalar_ratio(substitute(F, D), S))
print("scaled coefficients free of the cube root:",
      all(x.in_subtower(spec.parent) for x in S.terms.values()))

# %%
A = twist_matrix(p, spec)
T = Matrix3([[0, 1, 0], [0, 0, 1], [1, 0, 0]], spec)
print("D A D^-1 = c T with c =", (D * A * D.inverse()).projective_scalar(T))
print("S o A =", scalar_ratio(S, substitute(S, A)), "* S")

# %% [markdown]
# The cocycle lives on C3 x C3 acting on L(cos 2pi/7, p^(1/3)).

# %%
coc = build_twist_cocycle(p, splitting_tower(u, v, p))
res = validate_cocycle(coc)
print("valid:", res.valid, "pairs:", res.pairs_checked)

# %%
from planedescent.descent.arith import norm_obstruction

for q in (2, 3, 5, 7, 11, 13, 17, 19):
    r = norm_obstruction(q)
    print(f"p = {q:2d}: order {r.order}, {r.conclusion}")

# %% [markdown]
# Over L(p^(1/3)) the obstruction disappears: A / p^(1/3) is a genuine
# cocycle there, averaging trivialises it, and the twist acquires a model
# with coefficients in L(p^(1/3)).

# %%
from planedescent.descent.certificate import cubic_extension_model

print(cubic_extension_model(u, v, p, S))

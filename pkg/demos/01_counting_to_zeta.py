"""
From point counts to Z(X, t)
============================

Count an elliptic curve over F_5 and its extensions, rebuild the zeta
function, and look at the Frobenius eigenvalues it hides.
"""

# %%
import numpy as np

from hasse_forge import (WeierstrassCurve, build_field, counts_from_zeta, point_counts,
                         spectrum_from_zeta, zeta_of)

F5 = build_field(5, 1)
E = WeierstrassCurve((0, 0, 0, 1, 1), F5)   # y^2 = x^3 + x + 1
print(point_counts(E, 3).counts)

# %%
# one count is enough once duality is imposed; the default uses one more as a check
Z = zeta_of(E)
print(Z)
print("N_1..N_6 predicted:", counts_from_zeta(Z, 6))

# %%
# eigenvalues on H^1 sit on the circle |lambda| = sqrt(5)
S = spectrum_from_zeta(Z)
for e in S.by_degree[1]:
    print(e.lam, abs(e.lam), np.sqrt(5))

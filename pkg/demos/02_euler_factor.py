"""
One Euler factor as a regularized product
=========================================

For a single eigenvalue lambda the operator s - Theta has the eigenvalues
s - log_q(lambda) - 2 pi i k / log q, one for each integer k.  Truncated
products of them do not settle down; the zeta-regularized product lands on
1 - lambda q^-s.
"""

# %%
import cmath
import math

import numpy as np

from hasse_forge import EigenProgression, regdet_progression

q, lam, s = 5, 5 ** 0.5 * cmath.exp(0.8j), 1.5 + 0.7j
res = regdet_progression(EigenProgression(lam, q), s)
print("regularized:", res.value)
print("1 - lam q^-s:", 1 - lam * q ** -s)
print("anomalous dimension:", res.anomalous_dim)

# %%
# symmetric truncations for comparison: log|prod| grows like 2K log K
alpha = cmath.log(lam) / math.log(q)
h = 2 * math.pi / math.log(q)
for K in (10, 100, 1000):
    k = np.arange(-K, K + 1)
    print(K, np.sum(np.log(np.abs(s - alpha - 1j * h * k))))

# %%
# at s = log_q(lambda) + 2 pi i k / log q the product vanishes
s0 = alpha + 3j * h
print(regdet_progression(EigenProgression(lam, q), s0))

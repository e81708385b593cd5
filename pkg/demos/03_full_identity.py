"""
zeta(X, s) as a ratio of regularized determinants
=================================================

The odd and even parity classes of the periodic model give numerator and
denominator.  This walks the four small varieties used in the acceptance
checks and prints the comparison at a few complex s.
"""

# %%
import json
from pathlib import Path

from hasse_forge import spec_from_json, verify_theorem_a

SPECS = Path(__file__).resolve().parent.parent / "specs"
samples = [2, 3, 1.5 + 0.7j, 2 - 1.3j]

for name in ["p1_f3.json", "p2_f2.json", "p1xp1_f3.json", "ec_f5.json"]:
    spec = spec_from_json(json.loads((SPECS / name).read_text()))
    report = verify_theorem_a(spec, samples)
    print(name)
    print(report.to_csv())

# %%
# s = 2 is a pole for P^2 over F_2: the even class has a zero mode there,
# and the counted zeta's denominator vanishes at q^-s = 1/4

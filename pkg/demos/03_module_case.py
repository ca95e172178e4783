"""A module example: E = <(x,0), (y,0)> inside R^2.

E has rank 1 and sits in the first summand, so E^k in Sym^k(R^2) looks like
m^k times one basis vector and the saturation recovers the whole summand.
Both saturation routes (in the symmetric algebra, and by torsion in F^k) are
run and compared.
"""

from satpow import Ring, SubmoduleSpec, VecPoly, run_sequence, tau_check
from satpow.module_ops import module_power, module_saturate, torsion_h0

R = Ring(("x", "y"))
x, y = R.gens()
E = SubmoduleSpec(R, 2, [VecPoly(R, [x, 0]), VecPoly(R, [y, 0])])
print(f"d={E.dim_d} e={E.rank_e} gamma={E.gamma}")

E3 = module_power(E, 3)
N, n = module_saturate(E3)
N2, n2 = torsion_h0(E3)
print("E^3 generators:", *E3.generators)
print("saturation:    ", *N.generators, f"(n = {n})")
assert N == N2 and n == n2

rep = run_sequence(E, 8, check=True)
print("rank condition gamma < d+e:", rep.rank_hypothesis_met)
for r in rep.rows:
    print(f"  k={r.k}  lambda={r.lam:3d}  n_k={r.n_k}  eps_k={r.eps_decimal}")
print(tau_check(rep))

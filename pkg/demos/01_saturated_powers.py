"""Powers of I = (x^2, xy) and their saturations.

I^k = x^k (x, y)^k, so the saturation is (x^k) and the quotient I^k:m^inf / I^k
is spanned by the monomials x^k y^j x^i with i + j < k.  The script prints
both sides and checks the count against k(k+1)/2.
"""

from satpow import Ideal, Ring, quotient_length, saturate_colon
from satpow.module_ops import SubmoduleSpec, module_power, module_saturate

R = Ring(("x", "y"))
x, y = R.gens()
I = Ideal(R, [x**2, x * y])

for k in range(1, 6):
    Ik = I**k
    sat, n = saturate_colon(Ik)
    Ek = module_power(SubmoduleSpec.from_ideal(I), k)
    N, _ = module_saturate(Ek)
    lam = quotient_length(N, Ek, n)
    print(f"k={k}  I^k has {len(Ik.reduced().generators)} generators, "
          f"saturation = {sat}, n_k = {n}, length = {lam}")
    assert lam == k * (k + 1) // 2

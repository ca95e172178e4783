"""Estimate epsilon for a few ideals in two variables.

For (x,y)^2 the quotient is all of R/I^k and the normalised length tends to
the ordinary multiplicity 4.  For (x^2, xy) it tends to 1, and for a principal
ideal it is identically zero.
"""

from satpow import Ideal, Ring, epsilon_estimate, run_sequence

R = Ring(("x", "y"))
x, y = R.gens()

cases = {
    "(x,y)^2": Ideal(R, [x**2, x * y, y**2]),
    "(x^2,xy)": Ideal(R, [x**2, x * y]),
    "(x^2,xy,y^5)": Ideal(R, [x**2, x * y, y**5]),
    "(x^2+xy)": Ideal(R, [x**2 + x * y]),
}

for name, I in cases.items():
    rep = run_sequence(I, 9)
    est = epsilon_estimate(rep)
    print(f"{name:14s} lambda = {rep.lambdas}")
    print(f"{'':14s} eps_9 = {est.point} ~ {est.point_decimal}, tail spread "
          f"[{float(est.bracket[0]):.4f}, {float(est.bracket[1]):.4f}]")

# monomial ideals also have a combinatorial path, cheap enough for large k
rep = run_sequence(cases["(x^2,xy)"], 40, method="oracle")
print("oracle, k=40:", rep.rows[-1].eps_decimal)

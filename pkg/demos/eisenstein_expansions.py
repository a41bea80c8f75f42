"""Real-analytic Eisenstein series of weight 2: expansions, the differential
system, and a numerical cross-check against the lattice sum at one point."""
import mpmath

from eisenworks.exact_arith import sv_eval
from eisenworks.qseries import eisenstein_q, laplacian, maass
from eisenworks.raeis import build_real_eisenstein, system_residuals

N = 6
E = build_real_eisenstein(2, N)

# constant terms: an L^1 piece and an L^-2 piece carrying zeta_sv(3)
for rs in E.keys():
    print(rs, E[rs].constant_part())

print("system residuals:", system_residuals(E))
print("Laplacian of E_{1,1}, first terms:", list(laplacian(E[(1, 1)]).items())[:4])

# E_{1,1} is real, E_{2,0} and E_{0,2} are swapped by conjugation
print(E[(1, 1)].conjugate() == E[(1, 1)], E[(2, 0)].conjugate() == E[(0, 2)])

# numerical value at z = 0.3 + 1.1 i
z = mpmath.mpc(0.3, 1.1)
q = mpmath.exp(2j * mpmath.pi * z)
L = -2 * mpmath.pi * z.imag
val = sum(sv_eval(c) * L ** k * q ** m * mpmath.conj(q) ** n for (k, m, n), c in E[(1, 1)].items())
print("E_{1,1}(0.3 + 1.1i) =", mpmath.nstr(val, 15))

# lowering E_{2,0} gives E_{1,1}; raising it leaves the family and gives L G_4
print(maass(E[(2, 0)], "lower").equals(E[(1, 1)]))
print(maass(E[(2, 0)], "raise").equals(eisenstein_q(4, N).shift_L(1)))

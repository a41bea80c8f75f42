"""Completed L-functions by direct summation, compared with closed forms."""
import math

from eisenworks.lfun import (
    det_Mw, eisenstein_lambda_examples, falling_product, holomorphic_eisenstein,
    lambda_completed, lambda_holomorphic_eisenstein, xi_identity_check,
)

s = 8.0
lam = lambda_completed(holomorphic_eisenstein(4), s)
print("Lambda(G4; 8) summed:", lam.value, "tail <=", lam.tail_bound)
print("closed form:        ", lambda_holomorphic_eisenstein(4, s))

for key, row in eisenstein_lambda_examples(s).items():
    print(key, row["value"], row["reference"], f"{row['discrepancy']:.1e}")

print("xi check:", xi_identity_check(1, s)["discrepancy"])

# the tridiagonal determinant factors as 2^(w+1) s (s-1) ... (s-w)
for w in (0, 2, 4):
    print(w, det_Mw(w) == falling_product(w), det_Mw(w))

# below the summation regime the code refuses rather than continuing analytically
try:
    lambda_completed(holomorphic_eisenstein(4), 5.0)
except ValueError as exc:
    print("refused:", exc)
print(math.isclose(lam.value, lambda_holomorphic_eisenstein(4, s), rel_tol=1e-12))

"""Regularized iterated integrals of Eisenstein series up to length two,
their image in the epsilon letters, and the length-one equivariant piece."""
from eisenworks.itereis import (
    EisLetter, build_I, jeqv_length1_report, mu_map, n_plus, shuffle_check, verify_dI, verify_dJ,
)

I = build_I(maxlen=2, maxweight=6, N=6)
print(len(I.coeffs), "words")

e4 = EisLetter(4, 0)
print("I[e4[0]] =", sorted(I[(e4,)].items())[:4])
print("I[e4[0] e4[0]] leading log term:", I[(e4, e4)][(0, 2)])

print("shuffle failures:", shuffle_check(I))
print("dI failures:", verify_dI(I))

J = mu_map(I)
print("dJ:", {k: len(v) for k, v in verify_dJ(J).items()})
# the opposite sign on the depth-raising term breaks the gauge frame
print("dJ with ad sign -1:", len(verify_dJ(J, ad_sign=-1)["gauge"]), "failures")

for w in (2, 4):
    rep = jeqv_length1_report(w, 8)
    print(w, rep["scalar"], rep["matches_eisenstein"])

print(n_plus(8))

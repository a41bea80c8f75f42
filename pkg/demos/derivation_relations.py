"""Derivations of the free Lie algebra on a, b: the dual epsilons, their
nilpotency under b d/da, and the first quadratic relations among brackets."""
from eisenworks.freelie import (
    der_ad_power, der_bracket, epsilon, epsilon0_dual, pollack_relations, rank_of_span,
)

e4 = epsilon(4, "dual")
print("eps4 on a:", e4.on_a)
print("eps4 on b:", e4.on_b)

# ad(b d/da)^(2n+1) kills the dual eps_{2n+2}, ad^(2n) does not
for idx in (4, 6, 8):
    n = (idx - 2) // 2
    print(idx, bool(der_ad_power(epsilon0_dual(), epsilon(idx), 2 * n).vector()),
          bool(der_ad_power(epsilon0_dual(), epsilon(idx), 2 * n + 1).vector()))

# the first relation: [eps10, eps4] - 3 [eps8, eps6] = 0
pair = [der_bracket(epsilon(10), epsilon(4)), der_bracket(epsilon(8), epsilon(6))]
print(rank_of_span(pair))
combo = pair[0] - pair[1] * 3
print("relation holds:", combo.is_zero())

for key, (rank, kernel) in pollack_relations().items():
    print(key, "rank", rank, "kernel", kernel)

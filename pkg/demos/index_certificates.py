"""Certified indices of small Lie poset algebras.

Prints the index table of the three-level complete posets P(n, 1, m), then
shows how a certificate is assembled from its two bounds.
"""

from lieposet import IndexConfig, build_type_a, complete_poset, cpn1m_index, index
from lieposet.index import matching_lower_bound, symbolic_lower_bound

config = IndexConfig(seed=1)

print("index of sl over P(n, 1, m)")
print("n\\m " + " ".join(f"{m:>3}" for m in range(1, 5)))
for n in range(1, 5):
    row = []
    for m in range(1, 5):
        cert = index(build_type_a(complete_poset([n, 1, m])), config)
        assert cert.index == cpn1m_index(n, m)
        row.append(f"{cert.index:>3}")
    print(f"{n:>3} " + " ".join(row))

p = complete_poset([2, 1, 2])
alg = build_type_a(p)
cert = index(alg, config)
print()
print(f"P(2,1,2): dim {alg.dim}")
print(f"  matching bound      {matching_lower_bound(alg)}")
print(f"  symbolic bound      {symbolic_lower_bound(alg)[0]}")
print(f"  sampled upper bound {cert.upper} after {cert.trials} trials")
print(f"  status {cert.status}, index {cert.index}, closed form {cert.formula}")

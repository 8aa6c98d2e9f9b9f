# Group-algebra identities, checked exactly on lattice vectors.

from collections import Counter

from steinberg import verify_all, verify_lattice_identity, verify_theorems

# Everything at n = 3, q = 3: conjugation, commutators, the action of the
# simple reflections on e, and the two chains of operators on E_lambda.

cases = verify_all(3, 3)
print(Counter((c.name, c.verdict) for c in cases))

# The reflection identity depends on the Weyl representative.  With the
# permutation matrix w_r the sign of the inverse flips; with the signed
# representative n_r = w_r h(-1) it is t_r(-a^-1) e - e.

for variant in ("permutation", "signed", "literal"):
    cs = verify_lattice_identity("hola2", 2, 3, variant)
    print(variant, [c.verdict for c in cs])
print(verify_lattice_identity("hola2", 2, 3, "literal")[0].counterexample)

# The theorems hold under either representative.

print(all(c.verdict for c in verify_theorems(4, 2, "signed")))

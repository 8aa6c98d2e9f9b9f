# Are the layers M(k) irreducible?  The eigen-line test decides it; the
# parabolic-sum criterion should give the same verdict on every level.

from steinberg import gow_conjecture, module_suite

for n, q, ell in [(3, 2, 3), (2, 3, 2), (3, 4, 5), (4, 2, 3), (4, 3, 2)]:
    for g in gow_conjecture(n, q, ell):
        print(f"n={n} q={q} l={ell} k={g['k']} dim={g['dimM']:4d} "
              f"irreducible={g['irreducible']} criterion={g['criterion']} lines={g['lines']}")

# For |U| <= 64 the full composition series of I-bar is available.

r = module_suite(4, 2, 3)
print("factor dims:", r["factor_dims"])
print("multiplicity free:", r["multiplicity_free"], " self-dual iff irreducible:", r["self_dual_iff_irreducible"])

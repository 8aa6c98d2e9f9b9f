# GL_2(2), reduced at l = 3: the smallest reducible case, end to end.

import numpy as np

from steinberg import casa_check, get_filtration, is_irreducible, lattice
from steinberg.lattice import gram_matrix_by_expansion

# The lattice has rank |U| = 2.  Its Gram matrix comes from a closed form
# for f(we, e); the brute-force expansion of e in the group algebra agrees.

L = lattice(2, 2)
A = L.gram_matrix()
print(A)
print("expansion oracle agrees:", np.array_equal(A, gram_matrix_by_expansion(2, 2)))

# The Smith form at 3 has valuations 0 and 1: two layers, one line each.

F = get_filtration(2, 2, 3)
print("valuations:", [int(v) for v in F.vals])
for k in F.levels():
    fm = F.factor_module(k, check=True)
    print(f"M({k}): dim {fm.dim}, irreducible {is_irreducible(fm.rep)}")

# 3 divides q + 1, so the second layer is nonzero and irreducible.

print(casa_check(2, 2, 3))

"""Smith normal form over the integers and the abelian groups it describes."""

import numpy as np

from r4complex.homology import decomposition_from_relations, smith_normal_form

M = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
res = smith_normal_form(M)
print("invariant factors:", res.invariant_factors)

# U and V are unimodular and U M V is diagonal.
print("U M V =")
print(res.U.dot(M).dot(res.V))

# Entries stay exact however large they get.
big = np.array([[2 ** 100, 0], [0, 3 ** 60]], dtype=object)
print(smith_normal_form(big).invariant_factors)

# Rows are relations among the columns; the cokernel is the group.
print(decomposition_from_relations([[2, 0], [0, 6]]))
print(decomposition_from_relations([[2, 0, 0]]))

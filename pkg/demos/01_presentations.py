"""Walk through group presentations: parsing, sizes, stabilization and compression."""

from r4complex.presentation import (abelianized_matrix, binary_compress, binary_size,
                                    format_presentation, parse, stabilize, unary_size)
from r4complex.homology import decomposition_from_relations

# A presentation lists generators, then relator words built from syllables g^e.
P = parse("<a, b ; a b a b^-1>")
print("parsed:", format_presentation(P))

# Unary size counts every letter; binary size charges exponents logarithmically.
print("unary size", unary_size(P), "binary size", binary_size(P))

# Abelianizing turns each relator into its row of exponent sums.
M = abelianized_matrix(P)
print("relation matrix:", M.tolist())
print("abelianization:", decomposition_from_relations(M, P.n))

# Stabilization adds one fresh generator per relator so every relator has a
# letter of exponent one. The group does not change.
print("stabilized:", format_presentation(stabilize(P)))

# Large exponents are the expensive part of a unary presentation.
# Repeated squaring trades them for a chain of short relators.
for k in (4, 10, 20):
    big = parse(f"<a ; a^{2 ** k}>")
    small = binary_compress(big)
    print(f"a^(2^{k}): unary size {unary_size(big)} -> {unary_size(small)}")
print(format_presentation(binary_compress(parse("<a ; a^16>"))))

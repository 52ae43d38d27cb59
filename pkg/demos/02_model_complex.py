"""Build the model 2-complex of a presentation and inspect it."""

from r4complex.complex import boundary_matrices, euler_characteristic, validate
from r4complex.homology import homology_groups
from r4complex.model import build_model_complex
from r4complex.presentation import pad_relations, parse, stabilize

P = pad_relations(parse("<a ; a^3>"))
K, structure = build_model_complex(stabilize(P))

# One circle per generator, wedged at a common point, plus one disk per relator.
print("vertices", K.V, "edges", K.E, "triangles", K.T)
print("valid:", validate(K).ok)
print("euler characteristic", euler_characteristic(K), "expected", 1 - P.n + P.m)

# The boundary of a boundary is zero.
d1, d2 = boundary_matrices(K)
print("d1 d2 == 0:", not d1.dot(d2).any())

# Homology in degrees 0, 1 and 2.
print("homology:", [str(h) for h in homology_groups(K)])

# Every disk is an annulus glued along the relator plus a cone on the far side.
for g in structure.gadgets:
    print("gadget with", g.rect_count, "rectangles, apex vertex", g.apex)

# The size grows exactly linearly with the unary size of the stabilized input.
for k in (4, 8, 16, 32):
    Pk = stabilize(parse(f"<a ; a^{k}>"))
    count = build_model_complex(Pk)[0].simplex_count
    print(f"k={k}: {count} simplices, 24*s - 59 = {24 * (k + 4) - 59}")

"""Realize complexes homotopy equivalent to closed surfaces."""

from r4complex.complex import SimplicialComplex2
from r4complex.embed import realize_homotopy_type
from r4complex.homology import homology_groups
from r4complex.verify import check_embedding


def surface(n, triangles):
    tris = sorted(tuple(sorted(t)) for t in triangles)
    edges = sorted({e for a, b, c in tris for e in ((a, b), (a, c), (b, c))})
    return SimplicialComplex2(n, edges, tris)


# Seven-vertex torus.
torus = surface(7, [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
                + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)])
# Boundary of a tetrahedron.
sphere = surface(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])

for name, K in (("torus", torus), ("sphere", sphere)):
    rc = realize_homotopy_type(K)
    h1 = homology_groups(rc.complex)[1]
    print(f"{name}: {K.T} triangles in, {rc.complex.T} triangles out, H1 = {h1},",
          "embedded" if check_embedding(rc).clean else "NOT embedded")

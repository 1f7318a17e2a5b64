"""
Tangent spaces and residues on the Q(4, q) line variety
========================================================

The lines of the parabolic quadric x1 x2 + x3 x4 + x5^2 = 0 in PG(4, q)
form a 3-dimensional variety inside PG(9, q).  We compute the tangent
system at one point, then the residue at a point of the quadric.
"""

from polargrass import case_form, field_for, residue_section, tangent_rank, variety_dimension
from polargrass.wedge import plucker_coords

for q in (3, 2):
    F = field_for(q)
    form = case_form("symplectic", F)
    e = [[int(i == j) for j in range(5)] for i in range(5)]
    w = plucker_coords(F, e[0], e[2])
    r = tangent_rank(form, w)
    print(f"GF({q}): tangent rank {r}, tangent dimension {10 - r}, variety dimension {variety_dimension(form)}")

    # lines of the quadric through [e1] form a conic in the star of e1
    res = residue_section(form, e[0])
    print(f"  residue at e1: {len(res)} points, shape {res.shape}, spanning {res.span_dim}")

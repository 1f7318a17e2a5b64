"""
Lines of the symplectic quadrangle W(3, 3)
==========================================

Enumerate the totally isotropic lines of an alternating form on GF(3)^4,
look at their Plücker coordinates and the linear span they fill.
"""

import numpy as np

from polargrass import SesquiForm, build_variety, make_field, span_dimension, witt_index

F = make_field(3)

# hyperbolic pairs (e1, e2), (e3, e4); eps = -1 makes the form alternating
phi = np.array([[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 1], [0, 0, 2, 0]])
f = SesquiForm(F, phi, eps=F.neg(1))
print("Witt index:", witt_index(f))

V = build_variety(f)
print(len(V), "totally isotropic lines")
print("first few Plücker vectors (x12 x13 x14 x23 x24 x34):")
print(V.coords[:5])

# the lines lie on the hyperplane x12 + x34 = 0 of the 6-space
print("span dimension:", span_dimension(V))
print("x12 + x34 on every line:", np.unique(F.add(V.coords[:, 0], V.coords[:, 5])))

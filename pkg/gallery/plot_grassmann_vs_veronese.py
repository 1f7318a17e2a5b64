"""
Grassmann and Veronese embeddings of W(3, q)
============================================

The quadrangle W(3, q) has a quadratic Veronese embedding in PG(9, q) and a
Grassmann embedding obtained from its dual Q(4, q).  In odd characteristic
one is a projection of the other with trivial kernel; in characteristic 2
the kernel is one point and the hull grows.
"""

from polargrass import check_embedding, fit_projection, grassmann_embed, hull, veronese_embedding
from polargrass.casebook import field_for, klein_correspondence

for q in (3, 2):
    F = field_for(q)
    K = klein_correspondence(F)
    ver = veronese_embedding(K.geometry, F, K.points)
    egr, d = grassmann_embed(K.dual_embedding)
    print(f"GF({q}): veronese spans {ver.span_dim}, grassmann spans {egr.span_dim}")
    print("  grassmann check:", check_embedding(egr.geometry, egr))

    pi = fit_projection(ver, egr)
    print("  projection kernel dimension:", pi.kernel_dim)

    h = hull(ver)
    print("  hull of the veronese embedding:", h.dim)

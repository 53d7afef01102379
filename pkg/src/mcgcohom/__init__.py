"""H^1 of surface mapping class groups with coefficients in dual skein modules.

Submodules:

``exactlin``
    exact rational row reduction and quotient spaces
``surface``
    gluing graphs of surfaces cut along a multicurve
``twist_homology``
    rational H_1 of bordered mapping class groups on Dehn-twist labels
``stabilizer``
    dimension of H_1 of a multicurve stabilizer from its cut surface
``shapiro``
    cocycles on finite permutation modules: restriction, extension, coboundaries
``torus_skein``
    the explicit skein cocycle on the closed torus
"""

__version__ = "0.1.0"

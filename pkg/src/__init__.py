"""TraceRing - SL(2,C) trace polynomials, Procesi identities and character rings.

The package provides:
- Canonical conjugacy classes of free-group words
- Reduction of trace polynomials to the coordinates t_I with at most three indices
- Young symmetrizers and the trace identities they produce
- Exact evaluation on 2x2 matrix representations
- Defining ideals of character varieties with Groebner basis queries
"""

__version__ = "1.0.0"

"""Core algebra: words, trace polynomials, reduction, symmetric groups, representations and character rings."""

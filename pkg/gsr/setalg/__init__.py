"""
Subset algebra package for GSR.

Element sets bound to one instance, pointwise sums, additive closure and
Gamma-products of sets.
"""

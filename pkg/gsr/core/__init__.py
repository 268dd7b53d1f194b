"""
Core package for GSR.

This package contains the finite Gamma-semiring data model, axiom
validation, instance builders, restriction, isomorphism testing and the
JSON interchange format.
"""

"""
Ideal predicates and the generated/named constructions of generalized
bi-Gamma-ideals.
"""

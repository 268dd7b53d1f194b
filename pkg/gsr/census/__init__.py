"""
Census package for GSR.

Exhaustive generation of small Gamma-semirings up to isomorphism and the
census report writer.
"""

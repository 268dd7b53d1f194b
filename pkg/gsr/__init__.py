"""
GSR - computational engine for finite Gamma-semirings.

This package contains the data model and instance builders, the subset
algebra, ideal predicates, ideal-lattice and simplicity decisions, the
statement verification harness and the small-order census.
"""

__version__ = "0.1.0"
__author__ = "Taamir Ransome"
__email__ = "taamir@example.com"

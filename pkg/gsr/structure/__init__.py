"""
Structure package for GSR.

This package contains ideal-lattice enumeration, GB-simplicity and
minimality decisions, and the statement verification harness.
"""

"""
Test package for the GSR engine.

Unit suites live in tests/unit, cross-module suites in tests/integration.
"""

"""
Monitoring package for GSR.

Structured logging setup and Prometheus metrics for verification and
census runs.
"""

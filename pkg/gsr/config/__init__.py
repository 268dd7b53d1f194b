"""
Configuration package for GSR.
"""

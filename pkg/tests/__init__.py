"""
Test suite for the lkapprox library.
"""

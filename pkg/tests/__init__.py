"""
Test suite for bounded-orbits.
"""

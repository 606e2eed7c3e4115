"""
Integration tests for complete workflows.
"""

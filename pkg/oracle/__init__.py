"""
Brute-force projection and KKT verification for small instances.
"""

"""
Root-finding solvers for the dual of the projection, and the bench/check harness.
"""

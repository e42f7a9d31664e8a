"""
Dual function of the projection problem and its one-sided derivatives.
"""

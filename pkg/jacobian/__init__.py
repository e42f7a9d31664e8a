"""
Structured generalized Jacobian of the projection onto {x in simplex : a'x <= b}.
"""

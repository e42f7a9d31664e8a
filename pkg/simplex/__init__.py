"""
Projection onto the unit simplex and its Moreau envelope.
"""

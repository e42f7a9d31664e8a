"""
Problem data, solver configuration and result reporting shared by every solver.
"""

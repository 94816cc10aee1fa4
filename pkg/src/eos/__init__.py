"""
Equation-of-state models defined by a fundamental relation U(S, V).
"""

"""
Parametrized curves on the (S, V) plane and the integrals taken along and inside them.
"""

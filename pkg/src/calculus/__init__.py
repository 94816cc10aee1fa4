"""
Differentiation engine and exterior-calculus primitives on 2D charts.
"""

"""
The internal energy as an action functional: Lagrangian 1-form components, closure and
Euler-Lagrange residuals, and the fixed-endpoint variational check.
"""

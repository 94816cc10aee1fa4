"""
Shared vocabulary: charts, state points, tolerances, reduced units, errors.
"""

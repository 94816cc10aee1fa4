from __future__ import annotations

REDUCED_UNITS = "NkB=1; S,V,T,P,U dimensionless"

# Reference constants of the ideal-gas fundamental relation.
ENTROPY_OFFSET = 0.0
REFERENCE_VOLUME = 1.0
REFERENCE_ENERGY = 1.0


def reduced_units_doc() -> str:
    """
    Unit convention used everywhere: N*k_B = 1 and every quantity is dimensionless.

    Consequences: the ideal-gas law reads PV = T, and reduced entropy carries a free
    additive offset, so negative entropies are legitimate state coordinates.
    """
    return REDUCED_UNITS

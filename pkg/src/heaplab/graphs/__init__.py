from .classify import (
    Family,
    FamilyTag,
    GammaPQR,
    NonRReason,
    classify_component,
    connected_components,
    gamma_pqr,
    has_property_R,
)
from .witness import WitnessCertificate, find_witness, witness_nonregular

__all__ = [
    "Family",
    "FamilyTag",
    "GammaPQR",
    "NonRReason",
    "WitnessCertificate",
    "classify_component",
    "connected_components",
    "find_witness",
    "gamma_pqr",
    "has_property_R",
    "witness_nonregular",
]

"""Exact Gromov-Witten correspondence checks for toric Calabi-Yau 3-folds.

From a smooth toric Calabi-Yau 3-fold fan with a framed outer brane flag
the package constructs the associated relative 3-fold and local 4-fold,
computes genus-zero disk, maximally-tangent relative, and closed
invariants by equivariant localization in exact rational arithmetic, and
verifies the correspondence identities class by class.
"""

from .build import (BraneData, GeometrySet, build_geometry, class_X_to_Y,
                    class_Y_to_X4, make_geometry, normalize, parse_spec)
from .errors import (BraneNotOuter, ComputationError, NoCertificate,
                     NonGenericFraming, NotCalabiYau, NotEffective, NotSmooth,
                     NotTangent, PoleAtRestriction, ToricGWError,
                     ValidationError)
from .fan import Fan, make_fan
from .gw import (InvariantReport, closed_invariant, disk_invariant,
                 relative_invariant, verify)

__all__ = [
    "BraneData", "GeometrySet", "Fan", "InvariantReport",
    "build_geometry", "class_X_to_Y", "class_Y_to_X4", "closed_invariant",
    "disk_invariant", "make_fan", "make_geometry", "normalize", "parse_spec",
    "relative_invariant", "verify",
    "ToricGWError", "ValidationError", "ComputationError", "BraneNotOuter",
    "NoCertificate", "NonGenericFraming", "NotCalabiYau", "NotEffective",
    "NotSmooth", "NotTangent", "PoleAtRestriction",
]

"""deftower: exact toolkit for covering-tower deformation families.

Forward: build the 1-parameter family attached to an iterated univariate
covering of normal type and eliminate the fiber variables down to a single
equation Sigma(z, t).  Inverse: resolve a given family into its
standard-form blow-up tower by the gcd-based procedure, with exact
re-elimination as the built-in correctness check.  All arithmetic is exact
rational; every value is immutable and every operation pure.
"""

from .deform import (
    FamilyEquation,
    FamilySystem,
    SigmaAdic,
    build_family,
    check_divide,
    eliminate,
    sample_tower,
    sigma_adic,
)
from .errors import DeftowerError
from .polycore import (
    NEG_INFINITY,
    Poly,
    Rational,
    VarTable,
    exact_div,
    gcd_main,
    is_weighted_homogeneous,
    mth_root,
    pseudo_div,
    resultant,
    squarefree_part,
    taylor_t,
    weighted_degree,
)
from .polyparse import (
    parse_branches,
    parse_family,
    parse_poly,
    parse_tower,
    render_family_file,
    render_poly,
    render_tower_file,
)
from .resolve import (
    BlowupStep,
    BranchGerm,
    ResolutionTower,
    blowup_once,
    branch_track_oracle,
    central_root,
    curve_resolve,
    re_eliminate,
    resolve_family,
)
from .tower import (
    CoveringTower,
    ValidationReport,
    covering_degree,
    separability_certificate,
    tschirnhausen,
    validate_normal_type,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupStep",
    "BranchGerm",
    "CoveringTower",
    "DeftowerError",
    "FamilyEquation",
    "FamilySystem",
    "NEG_INFINITY",
    "Poly",
    "Rational",
    "ResolutionTower",
    "SigmaAdic",
    "ValidationReport",
    "VarTable",
    "blowup_once",
    "branch_track_oracle",
    "build_family",
    "central_root",
    "check_divide",
    "covering_degree",
    "curve_resolve",
    "eliminate",
    "exact_div",
    "gcd_main",
    "is_weighted_homogeneous",
    "mth_root",
    "parse_branches",
    "parse_family",
    "parse_poly",
    "parse_tower",
    "pseudo_div",
    "re_eliminate",
    "render_family_file",
    "render_poly",
    "render_tower_file",
    "resolve_family",
    "resultant",
    "sample_tower",
    "separability_certificate",
    "sigma_adic",
    "squarefree_part",
    "taylor_t",
    "tschirnhausen",
    "validate_normal_type",
    "weighted_degree",
]

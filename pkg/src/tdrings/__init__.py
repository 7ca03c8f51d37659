"""Ideal class monoids and class groups of Z[x]/((x-a_1)...(x-a_n)) with distinct integer roots."""

__version__ = "0.1.0"

from .arithmetic import (
    DeltaProfile,
    RootConfig,
    check_delta_ap_equivalence,
    delta_profile,
    interpolation_member,
    residue_class_count,
    rho,
    rprime_member,
    totient,
    unit_group,
    vandermonde_divisibility,
)
from .errors import BudgetExceeded, CharPolyMismatch, InvalidInput, StabilityError, TDRingsError
from .formulas import (
    AbelianStructure,
    CubicKernelSpec,
    cl_order_formula,
    cl_structure,
    cl_structure_n2,
    cl_structure_n3,
    cl_structure_n3_coprime,
    quadratic_monoid_table,
    quotient_structure,
)
from .ideals import (
    CayleyTable,
    LatticeIdeal,
    canonical_r_lattice,
    class_group_bruteforce,
    colon,
    equivalent,
    ideal_from_generators,
    ideal_label,
    ideal_product,
    ideal_to_matrix,
    is_invertible,
    matrix_to_ideal,
)
from .kernels import BACKEND
from .linalg import smith_normal_form
from .matrices import (
    ClassLabel,
    IcmResult,
    OmegaMatrix,
    canonical_label,
    canonicalize,
    fix_bound,
    fix_count,
    icm_order,
    icm_order_bruteforce,
    icm_order_burnside,
    icm_order_formula,
    primitive_extend,
    reduce_to_omega0,
    triangularize,
)
from .experiments import Family, SweepRow, conjecture_campaign_n4, limsup_constant, run_sweep

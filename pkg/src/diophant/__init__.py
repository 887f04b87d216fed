"""Exact-arithmetic inhomogeneous Diophantine approximation toolkit.

Layers, bottom to top:

  core     exact rationals, the two norms, problems, lattice points, boxes
  psi      irrationality-measure function, record tables, parameter search
  minima   parallelepiped gauges, successive minima, duality, bases, covers
  solvers  bounded / Kronecker / sharpened / primitive solvers, record scan
  oracles  naive brute-force references for all of the above
  suite    seeded randomized property suite
  cli      the `diophant` command
"""

from .core import (
    ApproximationProblem,
    LatticePoint,
    apply_theta_bar,
    as_rational,
    box_enumerate,
    nearest_int_distance,
    rational_str,
    sup_norm,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DegeneracyError,
    DiophantError,
    NoSolutionError,
    RadiusInsufficientError,
    UsageError,
)
from .minima import (
    GaugeKind,
    GaugeSpec,
    MinimaReport,
    basis_extend,
    dual_gap_case_bounds,
    dual_gauge,
    fundamental_cover_find,
    gauge_value,
    mahler_check,
    minima_norm_bounds,
    minima_report,
    minkowski_dual_check,
    primal_gauge,
    select_scaled_bounds,
    successive_minima,
)
from .psi import (
    PsiRecordTable,
    PsiValue,
    jarnik_search,
    psi,
    psi_records,
    transference_constant,
)
from .solvers import (
    HypothesisCheck,
    ScanReport,
    SolutionCertificate,
    gcd_shift,
    khintchine_hypothesis_check,
    primitive_record_scan,
    solve_bounded,
    solve_kronecker,
    solve_primitive,
    solve_sharpened,
)

__version__ = "0.1.0"

"""flagcone: explicit Einstein geometry from type-A root data.

From a parabolic choice (rank, theta, ell) the package constructs, on the
dense big-cell chart,

  * the Kahler-Einstein metric of the flag manifold X_P,
  * the contact form and Sasaki-Einstein metric of the associated circle
    bundle,
  * the Ricci-flat Kahler cone metric over it, and
  * the Calabi-ansatz Ricci-flat metric on the canonical bundle
    (crepant case ell = I(X_P)),

and verifies every structural identity by jet differentiation, either in
floating point or exactly over Gaussian rationals.
"""

from .calabi import (
    asymptotic_comparison,
    calabi_metric_at,
    calabi_ricci_flat_check,
    eguchi_hanson_metric_at,
    eguchi_hanson_oracle,
)
from .catalog import EXAMPLES, describe, example_spec
from .cone import (
    BundleChartPoint,
    ConeChartPoint,
    cone_complex_structure_at,
    cone_metric_at,
    cone_ricci_flat_check,
    flat_cone_residual,
    global_potential_identity,
)
from .jets import Jet, JetSpace, finite_difference_check, jet_lift
from .kahler import (
    HermitianMetricSample,
    PotentialSpec,
    anticanonical_potential,
    einstein_residual,
    log_potential_jet,
    metric_at,
    rescaled_metric,
    ricci_at,
    scalar_curvature_at,
)
from .lie import (
    ParabolicChoice,
    RootSystemData,
    build_root_system,
    crepancy_check,
    delta_p,
    fano_index,
    pairing,
    parabolic_choice,
    parabolic_complement,
)
from .minors import (
    BigCellChart,
    MinorPolynomialSet,
    big_cell_chart,
    big_cell_matrix,
    minor_polynomials,
    norm_square_eval,
)
from .rational import GaussianRational
from .report import JobConfig, run_verification
from .sasaki import (
    ContactChartFrame,
    SasakiStructureSample,
    contact_form_at,
    d_eta_check,
    phi_tensor_at,
    reeb_and_contact_axioms,
    sasaki_einstein_residual,
    sasaki_metric_at,
    sasaki_nijenhuis_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

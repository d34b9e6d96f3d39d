"""Parameter derivatives and Laplace transforms of Mittag-Leffler type functions."""
from .derivatives import DerivTarget, Wrt, deriv_fd_oracle, deriv_series
from .efros import EfrosKernelSpec, efros_phi, efros_superpose
from .errors import (
    AccuracyError,
    DomainError,
    NotPointwiseError,
    ParamlapError,
    RangeError,
    ValidityError,
)
from .gamma_kernel import (
    EULER_MASCHERONI,
    digamma,
    gamma,
    is_pole,
    log_gamma,
    pochhammer,
    recip_gamma,
)
from .identities import (
    Identity,
    IdentityCheckReport,
    LhsKind,
    ToleranceClass,
    Verdict,
    catalog,
    check_identity,
    closed_form_rhs,
    run_all,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    convolve,
    laplace_forward,
    log_kernel_convolve,
)
from .series import (
    FunctionFamily,
    ParamSet,
    ProfileMode,
    SeriesValue,
    eval_series,
    tail_terms_needed,
    time_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Summatory functions of (-a)^Omega(n) and a verified explicit-constant bound pipeline.

The package has five layers:

* :mod:`omegasum.sieve`      segmented sieving of Omega(n) and mu(n)
* :mod:`omegasum.summatory`  streaming evaluation, extrema scans, bound checks
* :mod:`omegasum.analytic`   Euler products, zeta brackets, closed-form limsup bounds
* :mod:`omegasum.pipeline`   the constant-derivation engine (iteration, assemblies)
* :mod:`omegasum.w3`         the oscillating kernel and the a=3 limsup estimate

The command line front end lives in :mod:`omegasum.cli`.
"""

from omegasum.sieve import (
    PrimeList,
    Segment,
    mu_single,
    omega_single,
    primes_up_to,
    sieve_segment,
)
from omegasum.summatory import (
    ExtremaRecord,
    MuMuTable,
    SeriesKind,
    SummatoryCheckpoint,
    dyadic_decompose,
    evaluate,
    mu_mu_table,
    scan_extrema,
    values_at,
    verify_linear_bound,
)
from omegasum.analytic import (
    EulerProductBound,
    LimsupBound,
    SeriesCoefficient,
    coefficient_a,
    fstar_bound,
    gstar_bound,
    limsup_upper,
    mertens_prime_sum_check,
    positive_sum_bound,
    zeta_bracket,
    zeta_real,
)
from omegasum.pipeline import (
    BoundSpec,
    PipelineConfig,
    PipelineReport,
    PsiErrorModel,
    assemble_m_bounds,
    assemble_M_bounds,
    degrade_psi,
    derive_m2,
    derive_u,
    derive_U,
    derive_W,
    integral_log_alpha_bound,
    integral_log_bound,
    interval_convert,
    run_pipeline,
    run_table1,
    schoenfeld_iterate,
    what_if_W,
)
from omegasum.w3 import (
    KernelEval,
    S3Estimate,
    coprime6_sum,
    estimate_s3,
    inner_sum_23,
    kernel_f,
    tail_bound,
)

__version__ = "0.1.0"

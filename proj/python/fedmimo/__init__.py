"""Max-min effective-rate allocation for massive MIMO cells that serve
federated-learning and ordinary downlink users in the same band.

The heavy lifting lives in the compiled extension `fedmimo._core`; this
package simply re-exports it.
"""

from ._core import (  # noqa: F401
    Allocation,
    BaselineResult,
    ChannelState,
    GridSpec,
    OracleResult,
    RateReport,
    ScaOptions,
    ScaStatus,
    SinrParts,
    SolveReport,
    SystemConfig,
    Violation,
    bl_allocation,
    check_feasibility,
    default_config,
    epigraph_ratio,
    evaluate,
    format_config,
    grid_search,
    load_config,
    mmse_variance,
    parse_config,
    pathloss_beta,
    rate_from_sinr,
    run,
    sample_layout,
    sinr_s1_fl,
    sinr_s1_nfl,
    sinr_s2,
    sinr_s3_dl,
    sinr_s3_ul,
    validate,
)

__version__ = "0.1.0"

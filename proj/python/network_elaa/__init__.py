"""Cluster-size optimization and coverage analysis for networked linear arrays.

Thin Python layer over the C++ core in ``network_elaa._core``.
"""

from ._core import (
    ArrayConfig,
    ChannelParams,
    ConfigError,
    OutputError,
    ParameterError,
    RunConfig,
    ServiceSpec,
    UnknownCommand,
    __version__,
    asymptotic_isnr,
    classify_g,
    command_names,
    concavity_threshold,
    coverage_probability,
    empirical_gain,
    empirical_outage,
    eta,
    fluct_variance,
    g_function,
    gain_map,
    gain_threshold,
    gamma_function,
    gaussian_outage,
    load_config,
    mean_gain,
    optimize_cluster,
    outage_probability,
    run_command,
    run_table,
    select_cluster,
    stationary_isnr,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

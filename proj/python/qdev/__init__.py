"""1D Schrodinger-Poisson device simulator with fourth-order transparent boundaries."""

from ._core import (
    InvalidArgument,
    MaxIterationsExceeded,
    ParseError,
    PreconditionViolated,
    QdevError,
    SingularSystem,
    UnknownPreset,
    ValidationError,
    dispersion_roots,
    effective_config,
    format_double,
    free_particle_convergence,
    kinetic_prefactor,
    presets,
    run_config,
    set_threads,
    solve_device,
    solve_scattering,
    transmission,
)

__all__ = [
    "InvalidArgument",
    "MaxIterationsExceeded",
    "ParseError",
    "PreconditionViolated",
    "QdevError",
    "SingularSystem",
    "UnknownPreset",
    "ValidationError",
    "dispersion_roots",
    "effective_config",
    "format_double",
    "free_particle_convergence",
    "kinetic_prefactor",
    "presets",
    "run_config",
    "set_threads",
    "solve_device",
    "solve_scattering",
    "transmission",
]

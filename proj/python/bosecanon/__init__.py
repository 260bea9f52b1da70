"""Canonical ideal Bose gas in an isotropic harmonic trap.

Thin Python layer over the C++ engine. Energies and temperatures are in units
of the oscillator level spacing unless a spectrum says otherwise.
"""

from ._bosecanon import (
    CanonicalResult,
    ConfigError,
    ConvergenceError,
    DomainError,
    GrandCanonicalState,
    RecursionTable,
    SweepResult,
    TrapSpectrum,
    __version__,
    canonical_observables,
    condensate_fraction_limit,
    correlation_limit,
    correlation_transfer_ratio,
    critical_temperature,
    default_max_level,
    delta_n0_fraction_limit,
    enumerate_exact,
    fit_scaling,
    fluctuation_prefactor,
    preset_grid,
    recursion_partition,
    run_sweep,
    solve_fugacity,
    state_energies,
    validate,
)


def spectrum_for(t, ground_offset=1.0):
    """Trap spectrum with the default truncation for temperature t."""
    return TrapSpectrum(default_max_level(t), ground_offset)


def at_t_over_tc(n, t_over_tc, **engine_options):
    """Canonical observables for N particles at the given T/Tc."""
    t = t_over_tc * critical_temperature(TrapSpectrum(1), n)
    return canonical_observables(spectrum_for(t), t, n, **engine_options)


__all__ = [name for name in dir() if not name.startswith("_")]

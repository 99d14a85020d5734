"""Oscillator signal systems on prime fields.

Low-correlation signal families built from the Weil representation of
SL2(F_p), with ambiguity-function verification and radar/CDMA simulation.
"""

from ._core import (
    ClusterAmbiguityError,
    LabeledSignal,
    PrimeField,
    SignalSystem,
    ambiguity,
    bruhat_decompose,
    cdma_simulate,
    fourier_invariance,
    fourier_operator,
    generate_system,
    heisenberg_operator,
    load_system,
    radar_simulate,
    save_system,
    system_report,
    weil_operator,
)

__all__ = [
    "ClusterAmbiguityError",
    "LabeledSignal",
    "PrimeField",
    "SignalSystem",
    "ambiguity",
    "bruhat_decompose",
    "cdma_simulate",
    "fourier_invariance",
    "fourier_operator",
    "generate_system",
    "heisenberg_operator",
    "load_system",
    "radar_simulate",
    "save_system",
    "system_report",
    "weil_operator",
]

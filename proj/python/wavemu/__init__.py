"""Python access to the wavemu PHY, emulator and sweep harness."""

from ._wavemu import (
    CapacityError,
    ConfigError,
    Emulator,
    FramingError,
    IoError,
    NumericError,
    PhyConfig,
    awgn,
    conv_encode,
    gaussian_symbols,
    gf2_rank,
    ideal_link,
    rx,
    scramble,
    selftest,
    sweep,
    tx,
    viterbi_decode,
)

__all__ = [
    "CapacityError",
    "ConfigError",
    "Emulator",
    "FramingError",
    "IoError",
    "NumericError",
    "PhyConfig",
    "awgn",
    "conv_encode",
    "gaussian_symbols",
    "gf2_rank",
    "ideal_link",
    "rx",
    "scramble",
    "selftest",
    "sweep",
    "tx",
    "viterbi_decode",
]

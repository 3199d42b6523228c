"""Executable random-binning scheme at desk scale."""

from .covering import CoveringResult, covering_experiment, doubly_symmetric_binary
from .equivocation import EnumerationBudgetExceeded, enumeration_size, exact_equivocation, message_entropy_rate
from .rates import BinningRates, InfeasibleRates, UserRates, derive_rates
from .scheme import (
    Codebook,
    CodebookTooLarge,
    Coder,
    DecodeFailure,
    EncodeFailure,
    Encoded,
    SimReport,
    decode,
    encode,
    generate_codebook,
    simulate,
)
from .typicality import TypicalityParams, TypicalityTest, is_jointly_typical

import enum

__all__ = ['BoundaryPolicy']


class BoundaryPolicy(str, enum.Enum):
    """
    How a causal FIR filter treats the samples before the start of the series
    """

    truncate = 'truncate-first-N'
    zero_pad = 'zero-pad-past'

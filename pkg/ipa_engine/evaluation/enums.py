import enum

__all__ = [
    'BlockNorm',
    'LayoutVerdict',
]


class BlockNorm(str, enum.Enum):
    frobenius = 'frobenius'
    l1 = 'l1'


class LayoutVerdict(str, enum.Enum):
    exact = 'exact'
    permuted = 'permuted'
    mismatch = 'mismatch'

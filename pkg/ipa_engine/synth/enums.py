import enum

__all__ = [
    'MixingKind',
    'SourceFamily',
]


class SourceFamily(str, enum.Enum):
    glyph = 'uniform-on-letter-glyph'
    wireframe = 'uniform-on-3d-wireframe'
    hypercube_shell = 'uniform-on-hypercube-shell'
    sample_file = 'user-supplied-sample-file'


class MixingKind(str, enum.Enum):
    random_orthogonal = 'random-orthogonal'
    random_full_column_rank = 'random-full-column-rank'
    identity = 'identity'

import typing as t
import warnings
from dataclasses import dataclass

import numpy as np

from ipa_engine.evaluation.enums import BlockNorm
from ipa_engine.evaluation.errors import DegenerateBlockError
from ipa_engine.evaluation.errors import DimensionMismatchError
from ipa_engine.evaluation.errors import LayoutMismatchWarning
from ipa_engine.evaluation.errors import NoGroundTruthError
from ipa_engine.evaluation.layouts import match_layouts
from ipa_engine.logs import logger_evaluation as logger
from ipa_engine.pipeline import SeparationPipeline
from ipa_engine.synth import GroundTruth
from ipa_engine.tsmodel import ComponentLayout

__all__ = [
    'GlobalTransform',
    'block_permutation_index',
    'collapse_blocks',
    'global_transform',
]


@dataclass(frozen=True, eq=False)
class GlobalTransform:
    """
    G = P W_ICA W_PCA A Q_0, rows follow the estimated layout and columns the true one
    """

    matrix: np.ndarray
    row_layout: ComponentLayout
    col_layout: ComponentLayout

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=np.float64)

        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:  # noqa: PLR2004
            raise DimensionMismatchError(f'Global transform must be square, got shape {matrix.shape}')

        if self.row_layout.total != matrix.shape[0] or self.col_layout.total != matrix.shape[1]:
            raise DimensionMismatchError(
                f'Layouts {self.row_layout.as_list()} and {self.col_layout.as_list()} '
                f'do not cover a {matrix.shape[0]}x{matrix.shape[1]} transform',
            )

        object.__setattr__(self, 'matrix', matrix)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def scaled(self, factor: float) -> 'GlobalTransform':
        return GlobalTransform(self.matrix * factor, self.row_layout, self.col_layout)


def global_transform(pipeline: SeparationPipeline, truth: t.Optional[GroundTruth]) -> GlobalTransform:
    if truth is None:
        raise NoGroundTruthError('Evaluation needs the ground truth mixing and MA coefficients of the dataset')

    mixing_q0 = truth.mixing_q0

    if pipeline.input_dim != mixing_q0.shape[0]:
        raise DimensionMismatchError(
            f'Pipeline was fitted on {pipeline.input_dim}-dimensional data, the dataset has D_x={mixing_q0.shape[0]}',
        )

    if pipeline.output_dim != mixing_q0.shape[1]:
        raise DimensionMismatchError(
            f'PCA kept {pipeline.output_dim} directions but the sources have D_e={mixing_q0.shape[1]}; '
            f'refit with dim_rule fixed({mixing_q0.shape[1]})',
        )

    return GlobalTransform(
        matrix=pipeline.demixing_matrix @ mixing_q0,
        row_layout=pipeline.estimated_layout,
        col_layout=truth.layout,
    )


def collapse_blocks(transform: GlobalTransform, norm: BlockNorm = BlockNorm.frobenius) -> np.ndarray:
    """
    B(m, n) = norm of block (m, n) of G, with row blocks from the estimated and column blocks from the true layout
    """

    norm = BlockNorm(norm)
    rows = transform.row_layout.blocks()
    cols = transform.col_layout.blocks()
    collapsed = np.zeros((len(rows), len(cols)))

    for m, row in enumerate(rows):
        for n, col in enumerate(cols):
            block = transform.matrix[row, col]
            collapsed[m, n] = np.abs(block).sum() if norm is BlockNorm.l1 else np.linalg.norm(block)

    return collapsed


def block_permutation_index(transform: GlobalTransform, norm: BlockNorm = BlockNorm.frobenius) -> float:
    """
    Amari-style distance of the collapsed block matrix from a scaled permutation, in [0, 1].

    0 exactly when G is a block permutation matrix. Layouts that differ as multisets score 1.0 and raise a
    ``LayoutMismatchWarning``.
    """

    match = match_layouts(transform.row_layout, transform.col_layout)

    if not match.multisets_equal:
        logger.warning('Layouts differ as multisets, detail=%s; index reported as 1.0', match.detail)
        warnings.warn(
            f'Estimated layout {transform.row_layout.as_list()} and true layout {transform.col_layout.as_list()} '
            f'differ as multisets',
            LayoutMismatchWarning,
            stacklevel=2,
        )
        return 1.0

    collapsed = collapse_blocks(transform, norm)
    count = collapsed.shape[0]

    if count == 1:
        return 0.0

    row_max = collapsed.max(axis=1)
    col_max = collapsed.max(axis=0)

    if (row_max == 0).any() or (col_max == 0).any():
        raise DegenerateBlockError('Global transform has a zero block-row or block-column')

    rows = (collapsed.sum(axis=1) / row_max - 1.0).sum()
    cols = (collapsed.sum(axis=0) / col_max - 1.0).sum()

    return float((rows + cols) / (2.0 * count * (count - 1)))

import typing as t

import numpy as np

from ipa_engine.isa import SimilarityGraph
from ipa_engine.tsmodel import ComponentLayout


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    basis, upper = np.linalg.qr(rng.standard_normal((dim, dim)))
    return basis * np.sign(np.diag(upper))


def block_graph(layout: ComponentLayout, within: float = 1.0, between: float = 0.0) -> SimilarityGraph:
    """
    Similarity graph with constant weights inside the blocks of ``layout`` and ``between`` elsewhere
    """

    labels = np.asarray(layout.assignment())
    weights = np.where(labels[:, None] == labels[None, :], within, between)
    return SimilarityGraph(weights)


def block_permutation(layout: ComponentLayout, order: t.Sequence[int], rng: np.random.Generator) -> np.ndarray:
    """
    Matrix whose block-row m holds a random orthogonal block in block-column ``order[m]``
    """

    blocks = layout.blocks()
    matrix = np.zeros((layout.total, layout.total))

    for row, column in enumerate(order):
        dim = layout.dims[column]
        matrix[blocks[row], blocks[column]] = random_orthogonal(dim, rng)

    return matrix


def is_signed_permutation(matrix: np.ndarray, threshold: float = 0.99) -> bool:
    big = np.abs(matrix) > threshold
    return bool((big.sum(axis=0) == 1).all() and (big.sum(axis=1) == 1).all())


def brute_force_filter(coeffs: t.Sequence[np.ndarray], data: np.ndarray) -> np.ndarray:
    degree = len(coeffs) - 1
    output = np.zeros((data.shape[0] - degree, coeffs[0].shape[0]))

    for t_index in range(degree, data.shape[0]):
        for lag, coeff in enumerate(coeffs):
            output[t_index - degree] += coeff @ data[t_index - lag]

    return output

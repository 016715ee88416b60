"""
Built-in support sets for the structured sources: stroke glyphs on a 5x7 grid and polyhedron wireframes.

A source emits points drawn uniformly (by arc length) from the union of the segments of its shape.
"""

import typing as t

import numpy as np

__all__ = [
    'GLYPHS',
    'WIREFRAMES',
    'Segments',
    'sample_on_segments',
    'sample_hypercube_shell',
]

Point = t.Tuple[float, ...]
Segments = t.Tuple[t.Tuple[Point, Point], ...]

GLYPHS: t.Dict[str, Segments] = {
    'A': (((0, 0), (2, 6)), ((2, 6), (4, 0)), ((1, 3), (3, 3))),
    'C': (((4, 6), (0, 6)), ((0, 6), (0, 0)), ((0, 0), (4, 0))),
    'E': (((4, 6), (0, 6)), ((0, 6), (0, 0)), ((0, 0), (4, 0)), ((0, 3), (3, 3))),
    'F': (((4, 6), (0, 6)), ((0, 6), (0, 0)), ((0, 3), (3, 3))),
    'H': (((0, 0), (0, 6)), ((4, 0), (4, 6)), ((0, 3), (4, 3))),
    'K': (((0, 0), (0, 6)), ((0, 2), (4, 6)), ((1, 3), (4, 0))),
    'L': (((0, 6), (0, 0)), ((0, 0), (4, 0))),
    'M': (((0, 0), (0, 6)), ((0, 6), (2, 3)), ((2, 3), (4, 6)), ((4, 6), (4, 0))),
    'N': (((0, 0), (0, 6)), ((0, 6), (4, 0)), ((4, 0), (4, 6))),
    'T': (((0, 6), (4, 6)), ((2, 6), (2, 0))),
    'V': (((0, 6), (2, 0)), ((2, 0), (4, 6))),
    'W': (((0, 6), (1, 0)), ((1, 0), (2, 4)), ((2, 4), (3, 0)), ((3, 0), (4, 6))),
    'X': (((0, 0), (4, 6)), ((0, 6), (4, 0))),
    'Y': (((0, 6), (2, 3)), ((4, 6), (2, 3)), ((2, 3), (2, 0))),
    'Z': (((0, 6), (4, 6)), ((4, 6), (0, 0)), ((0, 0), (4, 0))),
}


def _edges(vertices: t.Sequence[Point], edges: t.Sequence[t.Tuple[int, int]]) -> Segments:
    return tuple((tuple(vertices[a]), tuple(vertices[b])) for a, b in edges)


_CUBE = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]

WIREFRAMES: t.Dict[str, Segments] = {
    'tetrahedron': _edges(
        [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)],
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    ),
    'cube': _edges(
        _CUBE,
        [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count('1') == 1],
    ),
    'octahedron': _edges(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
        [(a, b) for a in range(6) for b in range(a + 1, 6) if a // 2 != b // 2],
    ),
    'pyramid': _edges(
        [(-1, -1, 0), (1, -1, 0), (1, 1, 0), (-1, 1, 0), (0, 0, 2)],
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)],
    ),
    'prism': _edges(
        [(0, 1, -1), (-1, -1, -1), (1, -1, -1), (0, 1, 1), (-1, -1, 1), (1, -1, 1)],
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    ),
}


def sample_on_segments(segments: Segments, count: int, rng: np.random.Generator) -> np.ndarray:
    starts = np.array([start for start, _ in segments], dtype=np.float64)
    stops = np.array([stop for _, stop in segments], dtype=np.float64)

    lengths = np.linalg.norm(stops - starts, axis=1)
    picked = rng.choice(len(segments), size=count, p=lengths / lengths.sum())
    position = rng.random(count)[:, None]

    return starts[picked] + position * (stops[picked] - starts[picked])


def sample_hypercube_shell(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    # the shell of [-1, 1] is two points, so one dimension falls back to the whole interval
    samples = rng.uniform(-1.0, 1.0, size=(count, dim))

    if dim == 1:
        return samples

    face_axis = rng.integers(0, dim, size=count)
    face_sign = rng.choice([-1.0, 1.0], size=count)
    samples[np.arange(count), face_axis] = face_sign

    return samples

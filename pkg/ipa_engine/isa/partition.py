import typing as t
from dataclasses import dataclass

import numpy as np

from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import ShapeError

__all__ = ['Partition']


@dataclass(frozen=True)
class Partition:
    """
    Cluster id of every coordinate; ids are 0..M-1 ordered by the smallest member index
    """

    assignment: t.Tuple[int, ...]

    def __post_init__(self) -> None:
        assignment = tuple(int(label) for label in self.assignment)

        if not assignment:
            raise ShapeError('Partition needs at least one coordinate')

        if sorted(set(assignment)) != list(range(max(assignment) + 1)):
            raise ShapeError(f'Cluster ids must be 0..M-1 without gaps, got {sorted(set(assignment))}')

        object.__setattr__(self, 'assignment', assignment)

    @classmethod
    def from_labels(cls, labels: t.Sequence[int]) -> 'Partition':
        """
        Relabel arbitrary cluster labels so that clusters are numbered by their smallest member
        """

        mapping: t.Dict[int, int] = {}
        for label in labels:
            mapping.setdefault(int(label), len(mapping))

        return cls(tuple(mapping[int(label)] for label in labels))

    @classmethod
    def from_clusters(cls, clusters: t.Sequence[t.Iterable[int]]) -> 'Partition':
        members = [sorted(cluster) for cluster in clusters]
        labels = [0] * sum(len(cluster) for cluster in members)

        for label, cluster in enumerate(members):
            for index in cluster:
                labels[index] = label

        return cls.from_labels(labels)

    @property
    def size(self) -> int:
        return len(self.assignment)

    @property
    def n_clusters(self) -> int:
        return max(self.assignment) + 1

    @property
    def clusters(self) -> t.List[t.List[int]]:
        members: t.List[t.List[int]] = [[] for _ in range(self.n_clusters)]
        for index, label in enumerate(self.assignment):
            members[label].append(index)
        return members

    @property
    def layout(self) -> ComponentLayout:
        return ComponentLayout(tuple(len(cluster) for cluster in self.clusters))

    @property
    def order(self) -> t.List[int]:
        """
        Coordinate indices made cluster-contiguous; row k of the permutation picks coordinate order[k]
        """

        return [index for cluster in self.clusters for index in cluster]

    @property
    def permutation(self) -> np.ndarray:
        matrix = np.zeros((self.size, self.size))
        matrix[np.arange(self.size), self.order] = 1.0
        return matrix

    def as_sets(self) -> t.FrozenSet[t.FrozenSet[int]]:
        return frozenset(frozenset(cluster) for cluster in self.clusters)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'assignment': list(self.assignment),
            'layout': self.layout.as_list(),
            'permutation': self.order,
        }

    @classmethod
    def from_dict(cls, payload: t.Dict[str, t.Any]) -> 'Partition':
        return cls(tuple(payload['assignment']))

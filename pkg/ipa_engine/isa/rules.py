import typing as t
from dataclasses import dataclass

from ipa_engine.isa.enums import ClusterRuleKind
from ipa_engine.isa.enums import DimRuleKind
from ipa_engine.isa.errors import InvalidRuleError

__all__ = [
    'ClusterRule',
    'DimRule',
]


@dataclass(frozen=True)
class DimRule:
    """
    How many principal directions PCA keeps: ``fixed(k)``, ``eigen_gap`` or ``energy(tau)``
    """

    kind: DimRuleKind = DimRuleKind.eigen_gap
    value: t.Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', DimRuleKind(self.kind))

        if self.kind is DimRuleKind.fixed:
            if self.value is None or int(self.value) != self.value or self.value < 1:
                raise InvalidRuleError(f'fixed(k) needs a positive integer k, got {self.value}')
            object.__setattr__(self, 'value', int(self.value))

        elif self.kind is DimRuleKind.energy:
            if self.value is None or not 0.0 < self.value <= 1.0:
                raise InvalidRuleError(f'energy(tau) needs 0 < tau <= 1, got {self.value}')

        elif self.value is not None:
            raise InvalidRuleError('eigen_gap takes no parameter')

    @classmethod
    def fixed(cls, k: int) -> 'DimRule':
        return cls(DimRuleKind.fixed, k)

    @classmethod
    def eigen_gap(cls) -> 'DimRule':
        return cls(DimRuleKind.eigen_gap)

    @classmethod
    def energy(cls, tau: float) -> 'DimRule':
        return cls(DimRuleKind.energy, tau)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'kind': self.kind.value, 'value': self.value}


@dataclass(frozen=True)
class ClusterRule:
    """
    Number of subspaces: ``fixed(M)``, or ``eigengap(max_M)`` where ``None`` allows up to one cluster per coordinate
    """

    kind: ClusterRuleKind = ClusterRuleKind.eigengap
    count: t.Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', ClusterRuleKind(self.kind))

        if self.kind is ClusterRuleKind.fixed and (self.count is None or self.count < 1):
            raise InvalidRuleError(f'fixed(M) needs a positive M, got {self.count}')

        if self.count is not None and self.count < 1:
            raise InvalidRuleError(f'Cluster count must be positive, got {self.count}')

    @classmethod
    def fixed(cls, count: int) -> 'ClusterRule':
        return cls(ClusterRuleKind.fixed, count)

    @classmethod
    def eigengap(cls, max_count: t.Optional[int] = None) -> 'ClusterRule':
        return cls(ClusterRuleKind.eigengap, max_count)

    def limit(self, size: int) -> int:
        if self.count is None:
            return size
        return self.count if self.kind is ClusterRuleKind.fixed else min(self.count, size)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'kind': self.kind.value, 'count': self.count}

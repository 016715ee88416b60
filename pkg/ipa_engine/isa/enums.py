import enum

__all__ = [
    'ClusterRuleKind',
    'DimRuleKind',
    'EstimatorKind',
]


class DimRuleKind(str, enum.Enum):
    fixed = 'fixed'
    eigen_gap = 'eigen_gap'
    energy = 'energy'


class EstimatorKind(str, enum.Enum):
    kcca = 'kcca'
    abs_corr = 'abs_corr'


class ClusterRuleKind(str, enum.Enum):
    fixed = 'fixed'
    eigengap = 'eigengap'

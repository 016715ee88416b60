import typing as t
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

from ipa_engine.arfit import OrderRule
from ipa_engine.isa import DEFAULT_MAX_SWEEPS
from ipa_engine.isa import DEFAULT_RESTARTS
from ipa_engine.isa import DEFAULT_TOLERANCE
from ipa_engine.isa import ClusterRule
from ipa_engine.isa import DependenceEstimator
from ipa_engine.isa import DimRule
from ipa_engine.isa import InvalidRuleError
from ipa_engine.isa import KccaEstimator
from ipa_engine.isa import estimator_from_dict
from ipa_engine.seeding import Seed
from ipa_engine.seeding import derive_seed
from ipa_engine.tsmodel import DifferenceOrder

__all__ = [
    'DEFAULT_MAX_AR_ORDER',
    'PipelineConfig',
]

DEFAULT_MAX_AR_ORDER = 10


@dataclass(frozen=True)
class PipelineConfig:
    """
    Everything ``separate`` needs besides the observations.

    ``seed`` is the master seed; ICA initialization, KCCA subsampling and Ncut restarts draw from named sub-streams
    of it. ``retain_series`` keeps every intermediate series in the fitted pipeline and in the artifact store.
    """

    r: DifferenceOrder = field(default_factory=lambda: DifferenceOrder(0))
    max_ar_order: int = DEFAULT_MAX_AR_ORDER
    min_ar_order: int = 1
    order_rule: OrderRule = field(default_factory=OrderRule.bic)
    dim_rule: DimRule = field(default_factory=DimRule.eigen_gap)
    estimator: DependenceEstimator = field(default_factory=KccaEstimator)
    cluster_rule: ClusterRule = field(default_factory=ClusterRule.eigengap)
    max_sweeps: int = DEFAULT_MAX_SWEEPS
    tolerance: float = DEFAULT_TOLERANCE
    restarts: int = DEFAULT_RESTARTS
    seed: Seed = 0
    retain_series: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, 'r', DifferenceOrder.of(self.r))

        if self.max_ar_order < 0 or self.min_ar_order < 0 or self.min_ar_order > self.max_ar_order:
            raise InvalidRuleError(f'Invalid AR order range {self.min_ar_order}..{self.max_ar_order}')

        if self.max_sweeps < 1 or self.tolerance <= 0 or self.restarts < 1:
            raise InvalidRuleError('max_sweeps and restarts must be positive, tolerance must be positive')

    def stage_seed(self, *names: str) -> Seed:
        return derive_seed(self.seed, *names)

    def with_seed(self, seed: Seed) -> 'PipelineConfig':
        return replace(self, seed=seed)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'r': int(self.r),
            'max_ar_order': self.max_ar_order,
            'min_ar_order': self.min_ar_order,
            'order_rule': self.order_rule.to_dict(),
            'dim_rule': self.dim_rule.to_dict(),
            'estimator': self.estimator.to_dict(),
            'cluster_rule': self.cluster_rule.to_dict(),
            'max_sweeps': self.max_sweeps,
            'tolerance': self.tolerance,
            'restarts': self.restarts,
            'seed': self.seed,
            'retain_series': self.retain_series,
        }

    @classmethod
    def from_dict(cls, payload: t.Dict[str, t.Any]) -> 'PipelineConfig':
        payload = dict(payload)
        rules = {
            'order_rule': lambda value: OrderRule(**value),
            'dim_rule': lambda value: DimRule(**value),
            'cluster_rule': lambda value: ClusterRule(**value),
            'estimator': estimator_from_dict,
        }

        for name, parse in rules.items():
            if name in payload:
                payload[name] = parse(payload[name])

        return cls(**payload)

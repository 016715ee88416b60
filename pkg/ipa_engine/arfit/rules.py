import typing as t
from dataclasses import dataclass

import numpy as np

from ipa_engine.arfit.enums import SelectionCriterion
from ipa_engine.arfit.errors import InvalidOrderRuleError

__all__ = ['OrderRule']


@dataclass(frozen=True)
class OrderRule:
    criterion: SelectionCriterion = SelectionCriterion.bic
    order: t.Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'criterion', SelectionCriterion(self.criterion))

        if self.criterion is SelectionCriterion.fixed and (self.order is None or self.order < 0):
            raise InvalidOrderRuleError(f'Fixed order rule needs a nonnegative order, got {self.order}')

        if self.criterion is not SelectionCriterion.fixed and self.order is not None:
            raise InvalidOrderRuleError(f'Order {self.order} is only meaningful for the fixed rule')

    @classmethod
    def fixed(cls, order: int) -> 'OrderRule':
        return cls(SelectionCriterion.fixed, order)

    @classmethod
    def bic(cls) -> 'OrderRule':
        return cls(SelectionCriterion.bic)

    @classmethod
    def aic(cls) -> 'OrderRule':
        return cls(SelectionCriterion.aic)

    @classmethod
    def hqic(cls) -> 'OrderRule':
        return cls(SelectionCriterion.hqic)

    def penalty(self, n_obs: int) -> float:
        """
        Per-parameter penalty weight, the score is log det(Sigma) + penalty * order * D^2 / n
        """

        if self.criterion is SelectionCriterion.aic:
            return 2.0
        if self.criterion is SelectionCriterion.hqic:
            return 2.0 * np.log(np.log(n_obs))
        return float(np.log(n_obs))

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'criterion': self.criterion.value, 'order': self.order}

import enum

__all__ = ['SelectionCriterion']


class SelectionCriterion(str, enum.Enum):
    fixed = 'fixed'
    bic = 'bic'
    aic = 'aic'
    hqic = 'hqic'

import collections
import typing as t
from dataclasses import dataclass
from dataclasses import field

from ipa_engine.evaluation.enums import LayoutVerdict
from ipa_engine.tsmodel import ComponentLayout

__all__ = [
    'LayoutMatch',
    'match_layouts',
]


@dataclass(frozen=True)
class LayoutMatch:
    """
    ``detail`` maps a subspace dimension to (estimated count - true count), only for dimensions that differ
    """

    verdict: LayoutVerdict
    detail: t.Dict[int, int] = field(default_factory=dict)

    @property
    def multisets_equal(self) -> bool:
        return self.verdict is not LayoutVerdict.mismatch

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'verdict': self.verdict.value, 'detail': {str(dim): delta for dim, delta in self.detail.items()}}


def match_layouts(estimated: ComponentLayout, true: ComponentLayout) -> LayoutMatch:
    if estimated.dims == true.dims:
        return LayoutMatch(LayoutVerdict.exact)

    counts = collections.Counter(estimated.dims)
    counts.subtract(collections.Counter(true.dims))
    detail = {dim: delta for dim, delta in sorted(counts.items()) if delta}

    return LayoutMatch(LayoutVerdict.mismatch, detail) if detail else LayoutMatch(LayoutVerdict.permuted)

import typing as t
from dataclasses import dataclass
from pathlib import Path

from ipa_engine.seeding import Seed
from ipa_engine.synth.enums import MixingKind
from ipa_engine.synth.enums import SourceFamily
from ipa_engine.synth.errors import FamilyDimensionError
from ipa_engine.synth.errors import InvalidSystemError
from ipa_engine.synth.errors import UndercompletenessError
from ipa_engine.synth.shapes import GLYPHS
from ipa_engine.synth.shapes import WIREFRAMES
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import DifferenceOrder

__all__ = [
    'ComponentSource',
    'SourceSpec',
    'SystemSpec',
    'default_burn_in',
]

_FIXED_DIMS = {
    SourceFamily.glyph: 2,
    SourceFamily.wireframe: 3,
}


@dataclass(frozen=True)
class ComponentSource:
    """
    Distribution of one hidden component.

    ``shape`` names the glyph letter or wireframe solid, ``path`` points to a sample file.
    """

    family: SourceFamily
    shape: t.Optional[str] = None
    path: t.Optional[Path] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'family', SourceFamily(self.family))

        if self.family is SourceFamily.glyph and self.shape is not None and self.shape not in GLYPHS:
            raise FamilyDimensionError(f'Unknown glyph {self.shape!r}, available: {"".join(sorted(GLYPHS))}')

        if self.family is SourceFamily.wireframe and self.shape is not None and self.shape not in WIREFRAMES:
            raise FamilyDimensionError(f'Unknown wireframe {self.shape!r}, available: {sorted(WIREFRAMES)}')

        if self.family is SourceFamily.sample_file and self.path is None:
            raise FamilyDimensionError('Sample-file sources need a path')

        if self.path is not None:
            object.__setattr__(self, 'path', Path(self.path))

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'family': self.family.value,
            'shape': self.shape,
            'path': str(self.path) if self.path is not None else None,
        }

    @classmethod
    def from_dict(cls, payload: t.Dict[str, t.Any]) -> 'ComponentSource':
        return cls(**payload)


@dataclass(frozen=True)
class SourceSpec:
    layout: ComponentLayout
    components: t.Tuple[ComponentSource, ...]
    seed: Seed = 0

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, 'components', components)

        if len(components) != self.layout.n_components:
            raise FamilyDimensionError(
                f'Layout has {self.layout.n_components} components but {len(components)} families were given',
            )

        for index, (dim, component) in enumerate(zip(self.layout.dims, components)):
            expected = _FIXED_DIMS.get(component.family)

            if expected is not None and dim != expected:
                raise FamilyDimensionError(
                    f'Component {index}: family {component.family.value} needs dimension {expected}, got {dim}',
                )

    @classmethod
    def default(cls, layout: ComponentLayout, seed: Seed = 0) -> 'SourceSpec':
        """
        Glyphs for 2D components, wireframes for 3D ones and hypercube shells otherwise, shapes taken in turn
        """

        letters = sorted(GLYPHS)
        solids = sorted(WIREFRAMES)
        components = []

        for dim in layout.dims:
            if dim == 2:  # noqa: PLR2004
                components.append(ComponentSource(SourceFamily.glyph, letters[len(components) % len(letters)]))
            elif dim == 3:  # noqa: PLR2004
                components.append(ComponentSource(SourceFamily.wireframe, solids[len(components) % len(solids)]))
            else:
                components.append(ComponentSource(SourceFamily.hypercube_shell))

        return cls(layout=layout, components=tuple(components), seed=seed)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'layout': self.layout.as_list(),
            'components': [component.to_dict() for component in self.components],
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, payload: t.Dict[str, t.Any]) -> 'SourceSpec':
        return cls(
            layout=ComponentLayout(tuple(payload['layout'])),
            components=tuple(ComponentSource.from_dict(item) for item in payload['components']),
            seed=payload.get('seed', 0),
        )


def default_burn_in(p: int) -> int:
    return max(10 * p, 1000)


@dataclass(frozen=True)
class SystemSpec:
    """
    Hidden ARIMA dynamics P[z] grad^r s = Q[z] e and the observation map x = A s
    """

    p: int
    q: int
    r: DifferenceOrder
    D_x: int  # noqa: N815
    D_s: int  # noqa: N815
    D_e: int  # noqa: N815
    mixing: MixingKind = MixingKind.random_orthogonal
    seed: Seed = 0
    burn_in: t.Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'r', DifferenceOrder.of(self.r))
        object.__setattr__(self, 'mixing', MixingKind(self.mixing))

        if self.p < 0 or self.q < 0:
            raise InvalidSystemError(f'ARMA orders must be nonnegative, got p={self.p}, q={self.q}')

        if min(self.D_x, self.D_s, self.D_e) < 1:
            raise InvalidSystemError('Dimensions D_x, D_s, D_e must be positive')

        if self.q > 0 and self.D_x <= self.D_e:
            raise UndercompletenessError(
                f'Moving-average driven systems must be undercomplete, D_x > D_e, got D_x={self.D_x}, D_e={self.D_e}',
            )

        if self.D_x < self.D_e:
            raise UndercompletenessError(f'D_x={self.D_x} cannot be smaller than D_e={self.D_e}')

        if self.D_s < self.D_e:
            raise UndercompletenessError(f'D_s={self.D_s} must be at least D_e={self.D_e}')

        if self.D_x < self.D_s:
            raise UndercompletenessError(
                f'Mixing A of shape {self.D_x}x{self.D_s} cannot have full column rank, D_x < D_s',
            )

        if self.mixing is MixingKind.identity and self.D_x != self.D_s:
            raise InvalidSystemError(f'Identity mixing needs D_x == D_s, got {self.D_x} and {self.D_s}')

        if self.burn_in is not None and self.burn_in < 0:
            raise InvalidSystemError(f'Burn-in must be nonnegative, got {self.burn_in}')

    @property
    def effective_burn_in(self) -> int:
        return default_burn_in(self.p) if self.burn_in is None else self.burn_in

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'p': self.p,
            'q': self.q,
            'r': int(self.r),
            'D_x': self.D_x,
            'D_s': self.D_s,
            'D_e': self.D_e,
            'mixing': self.mixing.value,
            'seed': self.seed,
            'burn_in': self.burn_in,
        }

    @classmethod
    def from_dict(cls, payload: t.Dict[str, t.Any]) -> 'SystemSpec':
        return cls(**payload)

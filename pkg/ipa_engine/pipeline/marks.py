import typing as t
from dataclasses import dataclass

__all__ = [
    'Input',
    'InputMark',
]

StageResultT = t.TypeVar('StageResultT')


@dataclass(frozen=True)
class InputMark:
    stage: t.Type[t.Any]


def Input(stage: t.Type[t.Any]) -> t.Any:  # noqa:  N802,RUF100
    """
    Annotation for a ``process`` parameter that receives the result of ``stage``
    """

    return t.cast(t.Any, InputMark(stage))

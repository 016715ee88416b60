import abc
import inspect
import typing as t
from collections import deque
from dataclasses import dataclass

import networkx as nx

from ipa_engine.pipeline.config import PipelineConfig
from ipa_engine.pipeline.errors import InvalidStageError
from ipa_engine.pipeline.marks import InputMark
from ipa_engine.pipeline.types import StageId

__all__ = [
    'KWARG_NAME',
    'StageBase',
    'StageGraph',
    'build_stage_graph',
    'get_stage_id',
]

KWARG_NAME = 'kwarg_name'

StageResultT = t.TypeVar('StageResultT')


class StageBase(abc.ABC, t.Generic[StageResultT]):
    """
    One step of the separation cascade.

    Dependencies are declared by annotating ``process`` parameters with ``Input(OtherStage)``; parameters without
    such a mark are filled from the run's input kwargs.
    """

    name: t.ClassVar[t.Optional[str]] = None
    verbose_name: t.ClassVar[t.Optional[str]] = None

    def __init__(self, config: PipelineConfig) -> None:
        self.config = config

    @abc.abstractmethod
    def process(self, *args: t.Any, **kwargs: t.Any) -> StageResultT:
        ...


def get_stage_id(stage: t.Type[StageBase]) -> StageId:
    return stage.name if stage.name else stage.__name__


def _check_stage(stage: t.Any) -> None:
    if not inspect.isclass(stage) or not issubclass(stage, StageBase):
        raise InvalidStageError(f'{stage} must be a StageBase subclass')

    parameters = [
        name for name in inspect.signature(stage.process).parameters if name not in ('self', 'args', 'kwargs')
    ]
    annotations = getattr(stage.process, '__annotations__', {})

    for name in parameters:
        if name not in annotations:
            raise InvalidStageError(f'Parameter {name} of {get_stage_id(stage)}.process has no annotation')


def _input_marks(stage: t.Type[StageBase]) -> t.List[t.Tuple[str, InputMark]]:
    return [
        (name, annotation)
        for name, annotation in stage.process.__annotations__.items()
        if isinstance(annotation, InputMark)
    ]


@dataclass(frozen=True)
class StageGraph:
    graph: nx.DiGraph
    input_stage: StageId
    output_stage: StageId
    stage_map: t.Dict[StageId, t.Type[StageBase]]

    def order(self) -> t.List[StageId]:
        """
        Stages in a topological order, ties broken by stage id so the order is stable
        """

        return list(nx.lexicographical_topological_sort(self.graph))

    def inputs_of(self, stage_id: StageId) -> t.Dict[str, StageId]:
        return {
            data[KWARG_NAME]: source
            for source, _, data in self.graph.in_edges(stage_id, data=True)
            if KWARG_NAME in data
        }


def build_stage_graph(input_stage: t.Type[StageBase], output_stage: t.Type[StageBase]) -> StageGraph:
    """
    Walk the ``Input`` annotations back from ``output_stage`` and build the dependency graph.

    Edges carry the keyword name under which the source result is passed; a stage without inputs hangs off
    ``input_stage``.
    """

    graph = nx.DiGraph(name='separation')
    stage_map: t.Dict[StageId, t.Type[StageBase]] = {}

    visited = {output_stage}
    stack = deque([output_stage])

    while stack:
        current = stack.pop()
        _check_stage(current)

        current_id = get_stage_id(current)
        stage_map[current_id] = current
        graph.add_node(current_id)

        marks = _input_marks(current)

        if not marks and current is not input_stage:
            graph.add_edge(get_stage_id(input_stage), current_id)
            if input_stage not in visited:
                visited.add(input_stage)
                stack.append(input_stage)

        for kwarg_name, mark in marks:
            graph.add_edge(get_stage_id(mark.stage), current_id, **{KWARG_NAME: kwarg_name})

            if mark.stage not in visited:
                visited.add(mark.stage)
                stack.append(mark.stage)

    if not nx.is_directed_acyclic_graph(graph):
        raise InvalidStageError(f'Stage graph has a cycle: {nx.find_cycle(graph)}')

    return StageGraph(
        graph=graph,
        input_stage=get_stage_id(input_stage),
        output_stage=get_stage_id(output_stage),
        stage_map=stage_map,
    )

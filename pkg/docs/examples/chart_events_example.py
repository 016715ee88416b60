"""
Running the separation chart with an event manager and a filesystem artifact store
"""

import asyncio
import dataclasses
import typing as t

from ipa_engine.artifact_store.store import FileSystemBundleStore
from ipa_engine.cli.config import load_preset
from ipa_engine.cli.config import parse_run_config
from ipa_engine.parallelism import threads_pool_registry
from ipa_engine.pipeline import SeparationChart
from ipa_engine.synth import draw_sources
from ipa_engine.synth import simulate


class PrintingEvents:
    async def on_pipeline_start(self, ctx: t.Any) -> None:
        print('run started', ctx.run_id)  # noqa: T201

    async def on_pipeline_complete(self, ctx: t.Any, result: t.Any) -> None:
        print('run finished', result.error)  # noqa: T201

    async def on_stage_start(self, ctx: t.Any, stage_id: str) -> None:
        print('  ->', stage_id)  # noqa: T201

    async def on_stage_complete(self, ctx: t.Any, stage_id: str, error: t.Optional[Exception]) -> None:
        print('  <-', stage_id, 'failed' if error else 'ok')  # noqa: T201


async def main() -> None:
    threads_pool_registry.auto_init(4)

    config = parse_run_config(load_preset('desk'), seed=0)
    system, sources_spec, length = config.require_simulation()
    observations, _ = simulate(system, draw_sources(sources_spec, length + system.effective_burn_in))

    chart = SeparationChart(
        config=dataclasses.replace(config.pipeline, retain_series=True),
        artifact_store=FileSystemBundleStore('./data/desk-run', overwrite=True),  # series land under stages/
        event_managers=[PrintingEvents()],
    )

    result = await chart.run(observations)
    result.raise_on_error()
    print(result.value.pipeline.summary())  # noqa: T201


if __name__ == '__main__':
    asyncio.run(main())

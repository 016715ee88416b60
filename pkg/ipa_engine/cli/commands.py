import functools
import json
import logging
import pathlib
import typing as t

import anyio
import click

from ipa_engine.cli.config import RunConfig
from ipa_engine.cli.config import list_presets
from ipa_engine.cli.config import parse_run_config
from ipa_engine.cli.config import resolve_run_config
from ipa_engine.cli.config import schema_text
from ipa_engine.cli.exit_codes import ExitCode
from ipa_engine.cli.exit_codes import exit_code_for
from ipa_engine.cli.hints import remediation_hint
from ipa_engine.cli.manifest import RunManifest
from ipa_engine.cli.manifest import StageTimer
from ipa_engine.cli.manifest import load_run_manifest
from ipa_engine.cli.manifest import save_run_manifest
from ipa_engine.cli.runners import COMMANDS
from ipa_engine.evaluation import BlockNorm
from ipa_engine.logs import logger_cli as logger
from ipa_engine.parallelism import threads_pool_registry

__all__ = ['main']

_LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def _jsonable(arguments: t.Dict[str, t.Any]) -> t.Dict[str, t.Any]:
    return {key: str(value) if isinstance(value, pathlib.Path) else value for key, value in arguments.items()}


async def _run_and_record(
    command: str,
    config: RunConfig,
    arguments: t.Dict[str, t.Any],
    threads: int,
) -> RunManifest:
    timer = StageTimer()
    outputs, summary = await COMMANDS[command](config, arguments, timer)

    manifest = RunManifest(
        command=command,
        arguments=_jsonable(arguments),
        config=config.to_dict(),
        seed=config.seed,
        threads=threads,
        outputs=outputs,
        timings=timer.timings,
        summary=summary,
    )
    path = await save_run_manifest(pathlib.Path(arguments['out']), manifest)
    logger.info('Command %s finished, manifest=%s', command, path)

    return manifest


def _execute(
    command: str,
    arguments: t.Dict[str, t.Any],
    threads: int,
    resolve: t.Callable[[], RunConfig],
) -> None:
    """
    Resolve the config, run the command and print its summary; failures exit with their category's code
    """

    try:
        if threads > 1:
            threads_pool_registry.auto_init(threads)

        config = resolve()
        manifest = anyio.run(_run_and_record, command, config, arguments, threads)

    except Exception as ex:
        code = exit_code_for(ex)
        if code is ExitCode.unexpected:
            logger.exception('Command %s failed unexpectedly', command)

        click.echo(f'error: {ex}', err=True)
        hint = remediation_hint(ex)
        if hint:
            click.echo(f'hint: {hint}', err=True)

        raise SystemExit(int(code)) from ex

    click.echo(json.dumps(manifest.summary, indent=2, sort_keys=True))


def _resolver(preset: t.Optional[str], config: t.Optional[pathlib.Path], seed: int) -> t.Callable[[], RunConfig]:
    return lambda: resolve_run_config(preset, config, seed)[0]


def common_options(func: t.Callable) -> t.Callable:
    @click.option('--preset', help='Named run preset, list them with: schema --presets')
    @click.option('--config', type=pathlib.Path, help='JSON run config, merged over the preset')
    @click.option('--seed', type=int, default=0, show_default=True, help='Master seed of every random draw')
    @click.option('--threads', type=int, default=1, show_default=True, help='Worker threads for pairwise dependence')
    @click.option('--out', type=pathlib.Path, required=True, help='Output directory')
    @click.option('--overwrite', is_flag=True, help='Replace artifacts already present in the output directory')
    @functools.wraps(func)
    def wrapper(*args: t.Any, **kwargs: t.Any) -> t.Any:
        return func(*args, **kwargs)

    return wrapper


@click.group()
@click.option(
    '--log-level',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
    default='WARNING',
    show_default=True,
)
def main(log_level: str) -> None:
    """Independent process analysis: simulate, separate and evaluate hidden multidimensional sources"""

    logging.basicConfig(level=log_level.upper(), format=_LOG_FORMAT)
    logging.captureWarnings(True)


@main.command()
@common_options
def simulate(
    preset: t.Optional[str],
    config: t.Optional[pathlib.Path],
    seed: int,
    threads: int,
    out: pathlib.Path,
    overwrite: bool,
) -> None:
    """Draw hidden sources, run the ARIMA system and write a dataset bundle with its ground truth"""

    _execute('simulate', {'out': out, 'overwrite': overwrite}, threads, _resolver(preset, config, seed))


@main.command()
@click.argument('data', type=pathlib.Path)
@common_options
def separate(
    data: pathlib.Path,
    preset: t.Optional[str],
    config: t.Optional[pathlib.Path],
    seed: int,
    threads: int,
    out: pathlib.Path,
    overwrite: bool,
) -> None:
    """Fit the separation cascade on a dataset bundle; writes the pipeline bundle and the estimated sources"""

    arguments = {'data': data, 'out': out, 'overwrite': overwrite}
    _execute('separate', arguments, threads, _resolver(preset, config, seed))


@main.command()
@click.argument('pipeline', type=pathlib.Path)
@click.argument('data', type=pathlib.Path)
@click.option('--out', type=pathlib.Path, required=True, help='Output directory')
@click.option(
    '--norm',
    type=click.Choice([item.value for item in BlockNorm]),
    default=BlockNorm.frobenius.value,
    show_default=True,
    help='Block norm of the permutation index',
)
@click.option('--overwrite', is_flag=True, help='Replace artifacts already present in the output directory')
def evaluate(pipeline: pathlib.Path, data: pathlib.Path, out: pathlib.Path, norm: str, overwrite: bool) -> None:
    """Score a fitted pipeline against the ground truth of a simulated dataset"""

    arguments = {'pipeline': pipeline, 'data': data, 'out': out, 'norm': norm, 'overwrite': overwrite}
    _execute('evaluate', arguments, 1, RunConfig)


@main.command('matrix-isa')
@click.argument('matrix', type=pathlib.Path)
@common_options
def matrix_isa(
    matrix: pathlib.Path,
    preset: t.Optional[str],
    config: t.Optional[pathlib.Path],
    seed: int,
    threads: int,
    out: pathlib.Path,
    overwrite: bool,
) -> None:
    """Independent subspace analysis of a sample matrix (.ipm or .csv), e.g. one image per column"""

    arguments = {'matrix': matrix, 'out': out, 'overwrite': overwrite}
    _execute('matrix-isa', arguments, threads, _resolver(preset, config, seed))


@main.command()
@common_options
def demo(
    preset: t.Optional[str],
    config: t.Optional[pathlib.Path],
    seed: int,
    threads: int,
    out: pathlib.Path,
    overwrite: bool,
) -> None:
    """Simulate, separate and evaluate in one run; defaults to the desk preset"""

    preset = preset or ('desk' if config is None else None)
    _execute('demo', {'out': out, 'overwrite': overwrite}, threads, _resolver(preset, config, seed))


@main.command()
@click.argument('manifest', type=pathlib.Path)
@click.option('--out', type=pathlib.Path, help='Output directory, defaults to the one recorded in the manifest')
@click.option('--threads', type=int, help='Worker threads, defaults to the recorded count')
def replay(manifest: pathlib.Path, out: t.Optional[pathlib.Path], threads: t.Optional[int]) -> None:
    """Re-run the command recorded in a run manifest with its arguments, config and seed"""

    try:
        recorded = anyio.run(load_run_manifest, manifest)
    except Exception as ex:
        click.echo(f'error: {ex}', err=True)
        raise SystemExit(int(exit_code_for(ex))) from ex

    arguments = dict(recorded.arguments, overwrite=True)
    if out is not None:
        arguments['out'] = out

    _execute(
        recorded.command,
        arguments,
        threads if threads is not None else recorded.threads,
        lambda: parse_run_config(recorded.config, seed=recorded.seed),
    )


@main.command()
@click.option('--presets', 'show_presets', is_flag=True, help='List the bundled presets instead')
def schema(show_presets: bool) -> None:
    """Print the JSON schema of run config files"""

    click.echo('\n'.join(list_presets()) if show_presets else schema_text())


if __name__ == '__main__':
    main()

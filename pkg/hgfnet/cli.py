"""The ``hgf`` command.

::

    hgf simulate --config model.toml --task switching --trials 320 --seed 1 --out run/
    hgf fit      --config model.toml --data data.csv --out fit/ [--plot]
    hgf sample   --config model.toml --data data.csv --chains 4 --draws 1000 --out post/
    hgf recover  --config model.toml --subjects 50 --seed 1 --out recovery/
    hgf compare  --config a.toml --config b.toml --data data.csv --out cmp/
    hgf plot     --trajectory run/trajectory.csv --out fig.svg
    hgf plot     --network --config model.toml --out net.dot

Options left out on the command line fall back to the ``[sampler]`` and
``[recovery]`` sections of the configuration. Every command is
deterministic for a given seed.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from hgfnet.attributes import NodeKind
from hgfnet.comparison import compare
from hgfnet.config import ModelConfig, load_config
from hgfnet.data_io import read_timeseries_csv, read_trajectory_csv, \
    write_outputs
from hgfnet.exceptions import HgfError, ValidationException
from hgfnet.fitting import map_fit
from hgfnet.inputs import InputSeries, switching_task
from hgfnet.model import AgentModel
from hgfnet.plotting import plot_trajectory_svg
from hgfnet.recovery import recover
from hgfnet.sampling import sample, summarize

logger = logging.getLogger(__name__)

TASKS = ('switching',)


def _pick(value, default):
    return default if value is None else value


def _read_data(path: str, model: AgentModel) -> InputSeries:
    """Read an input file, checking the columns received by binary nodes."""
    nodes = model.input_nodes or model.network.input_nodes()
    binary = [column for column, node in enumerate(nodes)
              if model.network.node_kinds[node] is NodeKind.BINARY]
    return read_timeseries_csv(path, binary_columns=binary)


def _plot(args, trajectory):
    if getattr(args, 'plot', False):
        plot_trajectory_svg(trajectory, Path(args.out) / 'trajectory.svg')


def simulate_command(args) -> int:
    config = load_config(args.config)
    model = config.agent_model()
    seed = _pick(args.seed, config.sampler.seed)
    trials = _pick(args.trials, config.recovery.trials)
    inputs = switching_task(trials=trials, seed=seed)
    try:
        model.check_response()
    except ValidationException:
        logger.info('The response node is not binary; no actions simulated.')
        data, trajectory = inputs, model.trajectory(inputs)
    else:
        data, trajectory = model.simulate(inputs, seed=seed)
    summary = {'command': 'simulate', 'model': config.name, 'task': args.task,
               'trials': trials, 'seed': seed,
               'total_surprise': trajectory.total_surprise()}
    write_outputs({'inputs': data, 'trajectory': trajectory,
                   'summary': summary}, args.out)
    _plot(args, trajectory)
    return 0


def fit_command(args) -> int:
    config = load_config(args.config)
    model = config.agent_model()
    data = _read_data(args.data, model)
    summary = {'command': 'fit', 'model': config.name}
    if data.actions is None:
        logger.info('No actions in %s; scoring the perceptual model only.',
                    args.data)
        trajectory = model.trajectory(data)
    else:
        space = config.parameter_space()
        result = map_fit(space, data, model,
                         restarts=_pick(args.restarts,
                                        config.sampler.restarts),
                         seed=_pick(args.seed, config.sampler.seed))
        trajectory = model.trajectory(data, result.estimate)
        summary.update(estimate=result.estimate,
                       transformed=dict(zip(space.names, result.transformed)),
                       log_posterior=result.log_posterior,
                       at_bound=result.at_bound, clipped=result.clipped)
    summary['total_surprise'] = trajectory.total_surprise()
    write_outputs({'trajectory': trajectory, 'summary': summary}, args.out)
    _plot(args, trajectory)
    return 0


def _sample(config: ModelConfig, model: AgentModel, data, args):
    sampler = config.sampler
    return sample(config.parameter_space(), data, model,
                  chains=_pick(args.chains, sampler.chains),
                  draws=_pick(args.draws, sampler.draws),
                  warmup=_pick(args.warmup, sampler.warmup),
                  seed=_pick(args.seed, sampler.seed),
                  workers=_pick(args.workers, sampler.workers))


def sample_command(args) -> int:
    config = load_config(args.config)
    model = config.agent_model()
    data = _read_data(args.data, model)
    samples = _sample(config, model, data, args)
    hdi_mass = config.sampler.hdi_mass
    summary = {'command': 'sample', 'model': config.name,
               'chains': samples.n_chains, 'draws': samples.n_draws,
               'hdi_mass': hdi_mass,
               'acceptance': samples.acceptance,
               'parameters': summarize(samples, hdi_mass)}
    write_outputs({'samples': samples, 'summary': summary}, args.out)
    return 0


def recover_command(args) -> int:
    config = load_config(args.config)
    recovery = config.recovery
    report = recover(n_subjects=_pick(args.subjects, recovery.subjects),
                     trials=_pick(args.trials, recovery.trials),
                     omega_range=recovery.omega_range,
                     log_temperature_range=recovery.log_temperature_range,
                     seed=_pick(args.seed, config.sampler.seed),
                     model=config.agent_model(),
                     space=config.parameter_space(),
                     workers=_pick(args.workers, config.sampler.workers),
                     restarts=config.sampler.restarts)
    summary = {'command': 'recover', 'model': config.name,
               'subjects': report.n_subjects,
               'excluded': report.n_excluded,
               'correlations': report.correlations}
    write_outputs({'recovery': report, 'summary': summary}, args.out)
    return 0


def compare_command(args) -> int:
    configs = [load_config(path) for path in args.config]
    models = [config.agent_model() for config in configs]
    data = [_read_data(args.data, model) for model in models]
    samples = [_sample(config, model, subject, args)
               for config, model, subject in zip(configs, models, data)]
    report = compare(models, data, samples,
                     [config.parameter_space() for config in configs],
                     names=[config.name for config in configs])
    write_outputs({'comparison': report}, args.out)
    return 0


def plot_command(args) -> int:
    if args.network:
        if not args.config:
            raise HgfError('plot --network needs --config.')
        config = load_config(args.config)
        dot = config.build_network().to_dot(config.name)
        Path(args.out).write_text(dot, encoding='utf-8')
        logger.info('Wrote %s.', args.out)
    else:
        if not args.trajectory:
            raise HgfError('plot needs --trajectory or --network.')
        plot_trajectory_svg(read_trajectory_csv(args.trajectory), args.out)
    return 0


def _sampler_options(parser: argparse.ArgumentParser):
    parser.add_argument('--chains', type=int)
    parser.add_argument('--draws', type=int)
    parser.add_argument('--warmup', type=int)
    parser.add_argument('--workers', type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hgf',
        description='Simulate, fit and compare generalized Hierarchical '
                    'Gaussian Filter agents.')
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    commands = parser.add_subparsers(dest='command', required=True)

    simulate = commands.add_parser('simulate', help='simulate an agent on '
                                                    'a bundled task')
    simulate.add_argument('--config', required=True)
    simulate.add_argument('--task', choices=TASKS, default='switching')
    simulate.add_argument('--trials', type=int)
    simulate.add_argument('--seed', type=int)
    simulate.add_argument('--out', required=True)
    simulate.add_argument('--plot', action='store_true')
    simulate.set_defaults(handler=simulate_command)

    fit = commands.add_parser('fit', help='maximum a posteriori fit')
    fit.add_argument('--config', required=True)
    fit.add_argument('--data', required=True)
    fit.add_argument('--seed', type=int)
    fit.add_argument('--restarts', type=int)
    fit.add_argument('--out', required=True)
    fit.add_argument('--plot', action='store_true')
    fit.set_defaults(handler=fit_command)

    sampler = commands.add_parser('sample', help='posterior sampling')
    sampler.add_argument('--config', required=True)
    sampler.add_argument('--data', required=True)
    sampler.add_argument('--seed', type=int)
    _sampler_options(sampler)
    sampler.add_argument('--out', required=True)
    sampler.set_defaults(handler=sample_command)

    recovery = commands.add_parser('recover', help='parameter recovery')
    recovery.add_argument('--config', required=True)
    recovery.add_argument('--subjects', type=int)
    recovery.add_argument('--trials', type=int)
    recovery.add_argument('--seed', type=int)
    recovery.add_argument('--workers', type=int)
    recovery.add_argument('--out', required=True)
    recovery.set_defaults(handler=recover_command)

    comparison = commands.add_parser('compare', help='model comparison')
    comparison.add_argument('--config', required=True, action='append')
    comparison.add_argument('--data', required=True)
    comparison.add_argument('--seed', type=int)
    _sampler_options(comparison)
    comparison.add_argument('--out', required=True)
    comparison.set_defaults(handler=compare_command)

    plot = commands.add_parser('plot', help='trajectory figure or network '
                                            'graph')
    plot.add_argument('--trajectory')
    plot.add_argument('--network', action='store_true')
    plot.add_argument('--config')
    plot.add_argument('--out', required=True)
    plot.set_defaults(handler=plot_command)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.handler(args)
    except (HgfError, OSError) as error:
        logger.debug('Command %s failed.', args.command, exc_info=True)
        print('hgf %s: %s' % (args.command, error), file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())

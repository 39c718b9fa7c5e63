from hgfnet import (attributes,
                    comparison,
                    config,
                    core,
                    exceptions,
                    fitting,
                    ghgf,
                    inputs,
                    model,
                    multilevel,
                    network,
                    priors,
                    recovery,
                    response,
                    sampling,
                    schema)
from hgfnet.attributes import Coupling, NodeAttributes, NodeKind
from hgfnet.comparison import ComparisonReport, compare
from hgfnet.config import ModelConfig, load_config, parse_config
from hgfnet.exceptions import HgfError, ValidationException
from hgfnet.fitting import FitResult, batch_fit, map_fit
from hgfnet.ghgf import PresetSpec, preset
from hgfnet.inputs import InputSeries, switching_task
from hgfnet.model import AgentModel
from hgfnet.multilevel import multilevel_sample
from hgfnet.network import (Network, Trajectory, add_edge, add_node,
                            derive_update_sequence, new_network, propagate,
                            remove_node, run, set_edges)
from hgfnet.posterior import log_posterior
from hgfnet.priors import Parameter, ParameterSpace, Prior
from hgfnet.recovery import RecoveryReport, recover
from hgfnet.response import ResponseModel
from hgfnet.sampling import PosteriorSamples, sample, summarize

__all__ = [
    'attributes',
    'comparison',
    'config',
    'core',
    'exceptions',
    'fitting',
    'ghgf',
    'inputs',
    'model',
    'multilevel',
    'network',
    'priors',
    'recovery',
    'response',
    'sampling',
    'schema',
    'AgentModel',
    'ComparisonReport',
    'Coupling',
    'FitResult',
    'HgfError',
    'InputSeries',
    'ModelConfig',
    'Network',
    'NodeAttributes',
    'NodeKind',
    'Parameter',
    'ParameterSpace',
    'PosteriorSamples',
    'PresetSpec',
    'Prior',
    'RecoveryReport',
    'ResponseModel',
    'Trajectory',
    'ValidationException',
    'add_edge',
    'add_node',
    'batch_fit',
    'compare',
    'derive_update_sequence',
    'load_config',
    'log_posterior',
    'map_fit',
    'multilevel_sample',
    'new_network',
    'parse_config',
    'preset',
    'propagate',
    'recover',
    'remove_node',
    'run',
    'sample',
    'set_edges',
    'summarize',
    'switching_task',
]

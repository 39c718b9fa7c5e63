"""Agent models: a perceptual network paired with a response model.

Parameters of an agent are addressed by dotted paths:

===================================== =======================================
Path                                  Target
===================================== =======================================
``node.<i>.<field>``                  A field of the attributes of node *i*
``node.<i>.extra.<key>``              An extension key of node *i*
``node.<i>.value_coupling.<j>``       Strength of the *j*-th value parent
``node.<i>.volatility_coupling.<j>``  Strength of the *j*-th volatility parent
``response.<field>``                  A field of the response model
===================================== =======================================

    >>> from hgfnet.ghgf import preset
    >>> agent = AgentModel(preset('binary-3'), ResponseModel())
    >>> net, response = agent.configure({'node.1.tonic_volatility': -2.5,
    ...                                  'response.inverse_temperature': 3.0})
    >>> net.attributes[1].tonic_volatility, response.inverse_temperature
    (-2.5, 3.0)
    >>> agent.network.attributes[1].tonic_volatility
    -3.0

"""
import logging
from copy import deepcopy
from typing import Mapping, NamedTuple, Optional

from hgfnet.attributes import RUNTIME_FIELDS, NodeAttributes, NodeKind
from hgfnet.exceptions import ValidationException
from hgfnet.inputs import InputSeries
from hgfnet.network import Network, Trajectory, run
from hgfnet.response import (ResponseModel, pointwise_log_likelihood,
                             simulate_actions)

logger = logging.getLogger(__name__)

_COUPLINGS = ('value_coupling', 'volatility_coupling')
_NOT_SETTABLE = set(RUNTIME_FIELDS) | {'observation', 'extra'}


class ParameterPath(NamedTuple):
    """A parsed parameter path."""

    scope: str
    node: Optional[int]
    field: str
    key: Optional[str]


def parse_path(path: str) -> ParameterPath:
    """Split a parameter path into its parts.

    >>> parse_path('node.2.volatility_coupling.0')
    ParameterPath(scope='node', node=2, field='volatility_coupling', key='0')

    :raises ValidationException: The path does not follow the grammar.
    """
    parts = path.split('.')
    if parts[0] == 'response' and len(parts) == 2:
        if parts[1] not in ResponseModel.get_schema() or parts[1] == 'family':
            raise ValidationException('Unknown response parameter "%s".' %
                                      path)
        return ParameterPath('response', None, parts[1], None)

    if parts[0] != 'node' or len(parts) not in (3, 4) or \
            not parts[1].isdigit():
        raise ValidationException(
            'Parameter path "%s" must read node.<index>.<field>[.<key>] or '
            'response.<field>.' % path)
    node, field = int(parts[1]), parts[2]
    key = parts[3] if len(parts) == 4 else None
    if field == 'extra' and key is not None:
        return ParameterPath('node', node, field, key)
    if field in _COUPLINGS and key is not None and key.isdigit():
        return ParameterPath('node', node, field, key)
    if key is None and field in NodeAttributes.get_schema() and \
            field not in _NOT_SETTABLE and field not in _COUPLINGS:
        return ParameterPath('node', node, field, None)
    raise ValidationException('Unknown node parameter "%s".' % path)


def set_parameter(net: Network, response: ResponseModel, path: str,
                  value: float):
    """Write one parameter value into a network and response model.

    :raises ValidationException: The path is invalid or names a missing node
        or coupling.
    """
    parsed = parse_path(path)
    if parsed.scope == 'response':
        response[parsed.field] = value
        return
    if not 0 <= parsed.node < len(net):
        raise ValidationException('Parameter "%s" names node %s of a %s node '
                                  'network.' % (path, parsed.node, len(net)))
    attrs = net.attributes[parsed.node]
    if parsed.field == 'extra':
        attrs.extra[parsed.key] = value
    elif parsed.field in _COUPLINGS:
        strengths = attrs[parsed.field]
        position = int(parsed.key)
        if position >= len(strengths):
            raise ValidationException('Parameter "%s": node %s has %s %s '
                                      'strengths.' % (path, parsed.node,
                                                      len(strengths),
                                                      parsed.field))
        strengths[position] = value
    else:
        attrs[parsed.field] = value


class AgentModel:
    """A network template, the response model reading it, and the nodes
    receiving each input column.

    The template is never modified: :meth:`configure` returns configured
    copies.
    """

    def __init__(self, network: Network,
                 response: Optional[ResponseModel] = None,
                 input_nodes: Optional[list] = None, name: str = 'model'):
        self.network = network
        self.response = response if response is not None else ResponseModel()
        self.input_nodes = input_nodes
        self.name = name
        self.response.validate()

    def check_response(self):
        """Actions are read from a binary node of the network.

        :raises ValidationException: The response node is missing or not
            binary.
        """
        node = self.response.node
        if not 0 <= node < len(self.network.node_kinds) or \
                self.network.node_kinds[node] is not NodeKind.BINARY:
            raise ValidationException(
                "The response node %s is not a binary node." % node)

    def __repr__(self):
        return '<AgentModel %s nodes=%s response=%s>' % (
            self.name, len(self.network), self.response.family)

    def configure(self, values: Optional[Mapping[str, float]] = None
                  ) -> tuple[Network, ResponseModel]:
        net = self.network.copy()
        response = deepcopy(self.response)
        for path, value in (values or {}).items():
            set_parameter(net, response, path, float(value))
        return net, response

    def trajectory(self, inputs: InputSeries,
                   values: Optional[Mapping[str, float]] = None) -> Trajectory:
        net, _ = self.configure(values)
        return run(net, inputs, self.input_nodes)

    def pointwise_log_likelihood(self, inputs: InputSeries,
                                 values: Optional[Mapping[str, float]] = None,
                                 return_clipped: bool = False):
        """Per-trial log probability of the actions held by *inputs*."""
        self.check_response()
        net, response = self.configure(values)
        traj = run(net, inputs, self.input_nodes)
        return pointwise_log_likelihood(traj, inputs.require_actions(),
                                        response, return_clipped)

    def simulate(self, inputs: InputSeries,
                 values: Optional[Mapping[str, float]] = None,
                 seed=None) -> tuple[InputSeries, Trajectory]:
        """Simulated actions attached to the inputs, and the beliefs that
        produced them."""
        self.check_response()
        net, response = self.configure(values)
        traj = run(net, inputs, self.input_nodes)
        actions = simulate_actions(traj, response, seed)
        return inputs.with_actions(actions), traj

"""Dynamic networks and scheduled belief propagation.

.. contents::

======
Usage
======

A :class:`Network` is a tuple of four components:

* ``attributes`` - one :class:`~hgfnet.attributes.NodeAttributes` per node,
* ``edges`` - an :class:`AdjacencyList` with one :class:`Edges` record per
  node, holding the parents and children of every edge type,
* ``functions`` - the registry of named :class:`UpdateFunction` entries,
* ``sequence`` - the :class:`UpdateSequence` of (node, function name) steps.

Every component can be changed while the network is in use. The structural
functions (:func:`add_node`, :func:`add_edge`, :func:`remove_node`,
:func:`set_edges`) modify the network they receive and return it::

    >>> net = new_network()
    >>> net = add_node(net, NodeKind.BINARY)
    >>> net = add_node(net, NodeKind.CONTINUOUS,
    ...                NodeAttributes(tonic_volatility=-2.0))
    >>> net = add_edge(net, child=0, parent=1, coupling='value')
    >>> net.edges[1].value_children
    [0]
    >>> [str(step) for step in derive_update_sequence(net)]
    ['1:continuous_prediction', '0:binary_prediction', \
'0:binary_prediction_error', '1:continuous_posterior_update']

Belief propagation never modifies the network it is given. :func:`propagate`
works on a copy and returns it; each update function receives the whole
network and returns it, so every step sees all four components.

"""
import logging
import math
from copy import deepcopy
from typing import (Callable, Iterable, Mapping, NamedTuple, NoReturn,
                    Optional, Union)

import numpy as np
import pandas as pd

from hgfnet import core
from hgfnet.attributes import Coupling, NodeAttributes, NodeKind
from hgfnet.exceptions import (AlignmentError, CouplingError, CycleError,
                               DomainError, DuplicateEdgeError,
                               EmptyInputError, NodeIndexError,
                               NumericalFailureError, ObservationError,
                               PropagationError, SequencingError,
                               ValidationException)

logger = logging.getLogger(__name__)

#: The edge types given semantics by the update functions.
HGF_EDGE_TYPES = (Coupling.VALUE.value, Coupling.VOLATILITY.value)

#: The phases an update function can belong to.
PREDICTION = 'prediction'
PREDICTION_ERROR = 'prediction_error'
POSTERIOR_UPDATE = 'posterior_update'
PHASES = (PREDICTION, PREDICTION_ERROR, POSTERIOR_UPDATE)


class UpdateFunction(NamedTuple):
    """A registry entry: f(network, node) -> network."""

    name: str
    phase: str
    function: Callable


class Step(NamedTuple):
    """One entry of an update sequence."""

    node: int
    function_name: str

    def __str__(self):
        return '%s:%s' % (self.node, self.function_name)


class UpdateSequence(list):
    """Ordered list of :class:`Step` entries that shapes belief propagation."""

    def __init__(self, steps: Iterable = ()):
        super(UpdateSequence, self).__init__(Step(*step) for step in steps)

    def nodes(self, function_names: Iterable[str]) -> list[int]:
        """The nodes of the steps applying one of the given functions."""
        names = set(function_names)
        return [step.node for step in self if step.function_name in names]


class Edges(core.Core):
    """The parent and child sets of one node, one pair per edge type."""

    def __init__(self, edge_types: Iterable[str] = HGF_EDGE_TYPES, **kwargs):
        super(Edges, self).__init__(**kwargs)
        for edge_type in edge_types:
            self.setdefault('%s_parents' % edge_type, [])
            self.setdefault('%s_children' % edge_type, [])


class AdjacencyList(list):
    """The multi-type adjacency list of a network, one :class:`Edges` per
    node.

    The representation admits any number of edge types; only the value and
    volatility types have update semantics.
    """

    def __init__(self, records: Iterable = (),
                 edge_types: Iterable[str] = HGF_EDGE_TYPES):
        self.edge_types = tuple(edge_types)
        super(AdjacencyList, self).__init__(
            Edges(self.edge_types, **record) for record in records)

    def append_node(self) -> int:
        self.append(Edges(self.edge_types))
        return len(self) - 1

    def parents(self, node: int, edge_type: Optional[str] = None) -> list[int]:
        """Parents of a node for one edge type, or for all of them."""
        if edge_type is not None:
            return self[node]['%s_parents' % edge_type]
        return sorted({parent for edge_type in self.edge_types
                       for parent in self[node]['%s_parents' % edge_type]})

    def children(self, node: int, edge_type: Optional[str] = None) -> list[int]:
        """Children of a node for one edge type, or for all of them."""
        if edge_type is not None:
            return self[node]['%s_children' % edge_type]
        return sorted({child for edge_type in self.edge_types
                       for child in self[node]['%s_children' % edge_type]})

    def link(self, child: int, parent: int, edge_type: str):
        self[child]['%s_parents' % edge_type].append(parent)
        self[parent]['%s_children' % edge_type].append(child)

    def unlink(self, child: int, parent: int, edge_type: str):
        self[child]['%s_parents' % edge_type].remove(parent)
        self[parent]['%s_children' % edge_type].remove(child)

    def copy(self) -> 'AdjacencyList':
        return AdjacencyList(deepcopy([dict(record) for record in self]),
                             self.edge_types)


class Network:
    """The network tuple: attributes, edges, update functions and update
    sequence.

    Besides the four components, a network keeps the kind of each node and
    the clock of the time step in flight (``time_step``, ``time`` and
    ``dt``).
    """

    def __init__(self,
                 attributes: Optional[list] = None,
                 edges: Optional[AdjacencyList] = None,
                 functions: Optional[dict] = None,
                 sequence: Optional[UpdateSequence] = None,
                 node_kinds: Optional[list] = None):
        self.attributes = attributes if attributes is not None else []
        self.edges = edges if edges is not None else AdjacencyList()
        self.functions = dict(functions) if functions else {}
        self.sequence = UpdateSequence(sequence or ())
        self.node_kinds = [NodeKind(kind) for kind in node_kinds or ()]
        self.time_step = 0
        self.time = 0.0
        self.dt = 1.0

    def __len__(self) -> int:
        return len(self.attributes)

    def __repr__(self):
        return '<Network nodes=%s edges=%s steps=%s>' % (
            len(self), sum(len(self.edges.parents(node))
                           for node in range(len(self))), len(self.sequence))

    @property
    def n_nodes(self) -> int:
        return len(self.attributes)

    def copy(self) -> 'Network':
        """An independent copy of the four components and the clock."""
        the_copy = Network(
            attributes=[deepcopy(attrs) for attrs in self.attributes],
            edges=self.edges.copy(),
            functions=self.functions,
            sequence=self.sequence,
            node_kinds=self.node_kinds)
        the_copy.time_step = self.time_step
        the_copy.time = self.time
        the_copy.dt = self.dt
        return the_copy

    def check_index(self, node: int) -> int:
        if not isinstance(node, (int, np.integer)) or not 0 <= node < len(self):
            raise NodeIndexError(node, len(self))
        return int(node)

    def ancestors(self, node: int) -> set[int]:
        """All nodes reachable from a node through parent links."""
        return self._closure(node, self.edges.parents)

    def descendants(self, node: int) -> set[int]:
        """All nodes reachable from a node through child links."""
        return self._closure(node, self.edges.children)

    def _closure(self, node: int, neighbours: Callable) -> set[int]:
        self.check_index(node)
        found = set()
        stack = list(neighbours(node))
        while stack:
            current = stack.pop()
            if current not in found:
                found.add(current)
                stack.extend(neighbours(current))
        return found

    def input_nodes(self) -> list[int]:
        """The nodes without children, in index order."""
        return [node for node in range(len(self))
                if not self.edges.children(node)]

    def validate(self) -> NoReturn:
        """Check the network invariants.

        :raises ValidationException: Component lengths disagree, an index is
            out of range, a coupling list is misaligned or the edges are not
            mutually consistent.
        :raises CycleError: The edges contain a cycle.
        """
        errors = []
        size = len(self.attributes)
        if not (len(self.edges) == len(self.node_kinds) == size):
            errors.append('The attribute, edge and kind lists have lengths '
                          '%s, %s and %s.' % (size, len(self.edges),
                                              len(self.node_kinds)))
            raise ValidationException(errors)
        for node, attrs in enumerate(self.attributes):
            errors.extend('node %s: %s' % (node, error)
                          for error in attrs.validate(False))
            for edge_type in self.edges.edge_types:
                for other in (self.edges.parents(node, edge_type) +
                              self.edges.children(node, edge_type)):
                    if not 0 <= other < size:
                        errors.append('node %s: %s edge to missing node %s.'
                                      % (node, edge_type, other))
                for parent in self.edges.parents(node, edge_type):
                    if 0 <= parent < size and node not in \
                            self.edges.children(parent, edge_type):
                        errors.append('node %s: %s parent %s does not list '
                                      'it as a child.' % (node, edge_type,
                                                          parent))
            for edge_type in HGF_EDGE_TYPES:
                coupling = attrs['%s_coupling' % edge_type]
                if len(coupling) != len(self.edges.parents(node, edge_type)):
                    errors.append('node %s: %s coupling has %s strengths '
                                  'for %s parents.' % (
                                      node, edge_type, len(coupling),
                                      len(self.edges.parents(node,
                                                             edge_type))))
        for step in self.sequence:
            if not 0 <= step.node < size:
                errors.append('step %s: node out of range.' % (step,))
            if step.function_name not in self.functions:
                errors.append('step %s: unknown update function.' % (step,))
        if errors:
            raise ValidationException(errors)
        topological_order(self)

    def to_dot(self, name: str = 'network') -> str:
        """Graphviz description: binary nodes as boxes, continuous nodes as
        circles, volatility edges dashed."""
        lines = ['digraph "%s" {' % name]
        for node, kind in enumerate(self.node_kinds):
            shape = 'box' if kind is NodeKind.BINARY else 'circle'
            lines.append('  x%s [shape=%s];' % (node, shape))
        for node in range(len(self)):
            for parent in self.edges.parents(node, Coupling.VALUE.value):
                lines.append('  x%s -> x%s;' % (parent, node))
            for parent in self.edges.parents(node, Coupling.VOLATILITY.value):
                lines.append('  x%s -> x%s [style=dashed];' % (parent, node))
        lines.append('}')
        return '\n'.join(lines) + '\n'


class Trajectory:
    """Per time step record of every node's statistics and surprise.

    The statistics are arrays of shape (time steps, nodes); ``surprise`` and
    ``observation`` hold *nan* where a node received no observation. The
    final state of the network is kept in ``network``.
    """

    STATISTICS = ('mean', 'precision', 'expected_mean', 'expected_precision',
                  'observation', 'surprise')

    def __init__(self, time: np.ndarray, dt: np.ndarray,
                 node_kinds: list, network: Optional[Network] = None,
                 **statistics: np.ndarray):
        self.time = np.asarray(time, dtype=float)
        self.dt = np.asarray(dt, dtype=float)
        self.node_kinds = [NodeKind(kind) for kind in node_kinds]
        self.network = network
        for name in self.STATISTICS:
            self.__dict__[name] = np.asarray(statistics[name], dtype=float)

    def __len__(self) -> int:
        return len(self.time)

    @property
    def n_nodes(self) -> int:
        return len(self.node_kinds)

    def node(self, node: int) -> core.Core:
        """The series of one node."""
        return core.Core({name: self.__dict__[name][:, node]
                          for name in self.STATISTICS})

    def to_frame(self) -> pd.DataFrame:
        """Long format table: one row per time step per node."""
        steps, nodes = len(self), self.n_nodes
        frame = pd.DataFrame({
            'time_step': np.repeat(np.arange(1, steps + 1), nodes),
            'time': np.repeat(self.time, nodes),
            'dt': np.repeat(self.dt, nodes),
            'node': np.tile(np.arange(nodes), steps),
            'kind': [kind.value for kind in self.node_kinds] * steps,
        })
        for name in self.STATISTICS:
            frame[name] = self.__dict__[name].reshape(-1)
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> 'Trajectory':
        """Rebuild a trajectory from its long format table."""
        frame = frame.sort_values(['time_step', 'node'], kind='stable')
        nodes = int(frame['node'].max()) + 1
        steps = len(frame) // nodes
        first = frame[frame['time_step'] == frame['time_step'].iloc[0]]
        statistics = {name: frame[name].to_numpy(dtype=float).reshape(
            steps, nodes) for name in cls.STATISTICS}
        per_step = frame[frame['node'] == 0]
        return cls(time=per_step['time'].to_numpy(dtype=float),
                   dt=per_step['dt'].to_numpy(dtype=float),
                   node_kinds=list(first['kind']), **statistics)

    def total_surprise(self) -> float:
        """Sum of the surprise over every observed step and node."""
        return float(np.nansum(self.surprise))


def new_network() -> Network:
    """An empty network whose registry holds the generalized HGF update
    functions."""
    from hgfnet.ghgf import update_functions

    return Network(functions=update_functions())


def add_node(net: Network, kind: Union[NodeKind, str] = NodeKind.CONTINUOUS,
             attrs: Optional[Mapping] = None) -> Network:
    """Append a node without edges.

    :param kind: ``continuous-state`` or ``binary-state``.
    :param attrs: The node attributes; missing fields take their defaults.
    :raises InvalidAttributeError: The attributes violate their schema, for
        instance a non-positive precision.
    """
    kind = NodeKind(kind)
    attrs = NodeAttributes(deepcopy(dict(attrs or {})))
    attrs.value_coupling = []
    attrs.volatility_coupling = []
    attrs.validate()

    net.attributes.append(attrs)
    net.node_kinds.append(kind)
    net.edges.append_node()
    logger.debug('Added %s node %s.', kind.value, len(net) - 1)
    return net


def add_edge(net: Network, child: int, parent: int,
             coupling: Union[Coupling, str] = Coupling.VALUE,
             strength: float = 1.0) -> Network:
    """Add a coupling from a parent to a child.

    The strength is appended to the child's coupling list of the given type.

    :raises NodeIndexError: An index is out of range.
    :raises CycleError: The edge closes a cycle (self-loops included).
    :raises DuplicateEdgeError: The edge already exists.
    :raises CouplingError: The node kinds cannot be coupled this way.
    """
    child, parent = net.check_index(child), net.check_index(parent)
    edge_type = Coupling(coupling).value
    if strength is None or not strength >= 0 or not math.isfinite(strength):
        raise ValidationException(
            'The coupling strength must be a non-negative finite number, '
            'got %s.' % strength)
    _check_coupling(net, child, parent, edge_type)
    if parent in net.edges.parents(child, edge_type):
        raise DuplicateEdgeError('Node %s already has %s parent %s.' %
                                 (child, edge_type, parent))
    if parent == child or parent in net.descendants(child):
        raise CycleError('The %s edge %s -> %s closes a cycle.' %
                         (edge_type, parent, child))

    net.edges.link(child, parent, edge_type)
    net.attributes[child]['%s_coupling' % edge_type].append(float(strength))
    return net


def set_edges(net: Network, child: int,
              coupling: Union[Coupling, str],
              parents: Iterable[int],
              strengths: Optional[Iterable[float]] = None) -> Network:
    """Replace the parent set of one coupling type of a node.

    Strengths of parents that stay connected are kept; new parents take the
    given strength, or 1.0.

    :raises NodeIndexError: An index is out of range.
    :raises CycleError: A parent is the node itself or one of its
        descendants.
    """
    child = net.check_index(child)
    edge_type = Coupling(coupling).value
    parents = [net.check_index(parent) for parent in parents]
    if len(set(parents)) != len(parents):
        raise DuplicateEdgeError('Duplicate parents in %s.' % parents)
    descendants = net.descendants(child)
    for parent in parents:
        if parent == child or parent in descendants:
            raise CycleError('The %s edge %s -> %s closes a cycle.' %
                             (edge_type, parent, child))
        _check_coupling(net, child, parent, edge_type)

    attrs = net.attributes[child]
    key = '%s_coupling' % edge_type
    previous = dict(zip(net.edges.parents(child, edge_type), attrs[key]))
    strengths = list(strengths) if strengths is not None else None
    if strengths is not None and len(strengths) != len(parents):
        raise AlignmentError('%s strengths for %s parents.' %
                             (len(strengths), len(parents)))

    for parent in list(net.edges.parents(child, edge_type)):
        net.edges.unlink(child, parent, edge_type)
    attrs[key] = []
    for index, parent in enumerate(parents):
        net.edges.link(child, parent, edge_type)
        if strengths is not None:
            attrs[key].append(float(strengths[index]))
        else:
            attrs[key].append(previous.get(parent, 1.0))
    return net


def remove_node(net: Network, idx: int,
                return_mapping: bool = False):
    """Remove a node, its edges and its update steps.

    The remaining nodes are re-indexed densely.

    :param return_mapping: Also return the old index -> new index map (the
        removed node maps to *None*).
    :raises NodeIndexError: The index is out of range.
    """
    idx = net.check_index(idx)
    mapping = {old: (old if old < idx else old - 1)
               for old in range(len(net)) if old != idx}
    mapping[idx] = None

    for edge_type in net.edges.edge_types:
        coupled = edge_type in HGF_EDGE_TYPES
        for child in list(net.edges.children(idx, edge_type)):
            position = net.edges.parents(child, edge_type).index(idx)
            net.edges.unlink(child, idx, edge_type)
            if coupled:
                del net.attributes[child]['%s_coupling' % edge_type][position]
        for parent in list(net.edges.parents(idx, edge_type)):
            net.edges.unlink(idx, parent, edge_type)

    del net.attributes[idx]
    del net.node_kinds[idx]
    del net.edges[idx]
    for record in net.edges:
        for key, nodes in record.items():
            record[key] = [mapping[node] for node in nodes]
    net.sequence = UpdateSequence(
        (mapping[step.node], step.function_name)
        for step in net.sequence if step.node != idx)

    logger.debug('Removed node %s, %s nodes remain.', idx, len(net))
    if return_mapping:
        return net, mapping
    return net


def topological_order(net: Network,
                      nodes: Optional[Iterable[int]] = None) -> list[int]:
    """Nodes ordered from the leaves to the roots: every node comes before
    all of its parents. Ties are broken by the lowest index.

    :raises CycleError: The edges contain a cycle.
    """
    nodes = set(range(len(net))) if nodes is None else set(nodes)
    pending = {node: len([child for child in net.edges.children(node)
                          if child in nodes]) for node in nodes}
    ready = sorted(node for node, count in pending.items() if count == 0)
    order = []
    while ready:
        node = ready.pop(0)
        order.append(node)
        for parent in net.edges.parents(node):
            if parent in pending:
                pending[parent] -= 1
                if pending[parent] == 0:
                    ready.append(parent)
                    ready.sort()
    if len(order) != len(nodes):
        raise CycleError('The network edges contain a cycle among nodes %s.'
                         % sorted(set(nodes) - set(order)))
    return order


def derive_update_sequence(net: Network,
                           origin: Optional[int] = None) -> UpdateSequence:
    """Derive the update sequence from the network structure.

    The prediction steps run from the roots to the leaves. The posterior
    update / prediction error pairs then run from the leaves to the roots: a
    node is updated first (continuous nodes only) and then emits its
    prediction error (only when some parent consumes it).

    :param origin: Restrict the sequence to this node and its ancestors.
    :raises CycleError: The edges contain a cycle.
    """
    nodes = None
    if origin is not None:
        nodes = net.ancestors(origin) | {net.check_index(origin)}
    order = topological_order(net, nodes)

    steps = [(node, '%s_prediction' % _kind_prefix(net, node))
             for node in reversed(order)]
    for node in order:
        prefix = _kind_prefix(net, node)
        if '%s_posterior_update' % prefix in net.functions:
            steps.append((node, '%s_posterior_update' % prefix))
        if net.edges.parents(node):
            steps.append((node, '%s_prediction_error' % prefix))

    sequence = UpdateSequence(
        step for step in steps if step[1] in net.functions)
    missing = [str(Step(*step)) for step in steps
               if step[1] not in net.functions and
               not step[1].endswith('_posterior_update')]
    if missing:
        raise ValidationException(
            'Update functions missing from the registry: %s' % missing)
    return sequence


def propagate(net: Network, observations: Optional[Mapping] = None,
              dt: float = 1.0) -> Network:
    """One time step of belief propagation on a copy of the network.

    Runs the prediction steps, writes the observations into the node
    attributes, then runs the prediction error and posterior update steps of
    the observed nodes and their ancestors. Nodes outside that subgraph keep
    their posterior.

    :param observations: Map of node index to observed value; *nan* or a
        missing key means no observation.
    :param dt: The time elapsed since the previous step.
    :raises NumericalFailureError: An update produced a non-positive
        precision or a non-finite value.
    """
    return _propagate_in_place(net.copy(), observations or {}, dt)


def run(net: Network, inputs, input_nodes: Optional[list] = None) -> Trajectory:
    """Fold :func:`propagate` over an input series.

    :param inputs: An :class:`~hgfnet.inputs.InputSeries` or an array of
        observations (one column per input node).
    :param input_nodes: The node receiving each input column; defaults to
        the nodes without children, in index order.
    :return: The trajectory; its ``network`` holds the final state.
    :raises EmptyInputError: The series has no rows.
    :raises PropagationError: A step failed; the row index is attached.
    """
    from hgfnet.inputs import InputSeries

    if not isinstance(inputs, InputSeries):
        inputs = InputSeries(inputs)
    if len(inputs) == 0:
        raise EmptyInputError('Cannot run a network on an empty series.')
    if input_nodes is None:
        input_nodes = net.input_nodes()
    input_nodes = [net.check_index(node) for node in input_nodes]
    if len(input_nodes) != inputs.n_columns:
        raise AlignmentError('%s input columns for input nodes %s.' %
                             (inputs.n_columns, input_nodes))

    state = net.copy()
    steps, nodes = len(inputs), len(state)
    records = {name: np.empty((steps, nodes)) for name in Trajectory.STATISTICS}
    values = inputs.observations
    dts = inputs.dt
    for row in range(steps):
        observations = {node: values[row, column]
                        for column, node in enumerate(input_nodes)}
        try:
            _propagate_in_place(state, observations, dts[row])
        except (NumericalFailureError, DomainError, ObservationError,
                SequencingError) as error:
            raise PropagationError(row, error) from error
        for node, attrs in enumerate(state.attributes):
            records['mean'][row, node] = attrs.mean
            records['precision'][row, node] = attrs.precision
            records['expected_mean'][row, node] = attrs.expected_mean
            records['expected_precision'][row, node] = \
                attrs.expected_precision
            records['observation'][row, node] = _or_nan(attrs.observation)
            records['surprise'][row, node] = _or_nan(attrs.surprise)

    return Trajectory(time=inputs.time, dt=dts, node_kinds=state.node_kinds,
                      network=state, **records)


def _propagate_in_place(net: Network, observations: Mapping,
                        dt: float) -> Network:
    if not net.sequence:
        raise SequencingError('The network has an empty update sequence.')
    if not dt > 0 or not math.isfinite(dt):
        raise ValidationException('The time step must be positive, got %s.'
                                  % dt)

    received = {}
    for node, value in observations.items():
        node = net.check_index(node)
        if value is None or (isinstance(value, float) and math.isnan(value)):
            continue
        value = float(value)
        if not math.isfinite(value):
            raise ObservationError('Node %s received %s.' % (node, value))
        if net.node_kinds[node] is NodeKind.BINARY and value not in (0.0, 1.0):
            raise ObservationError(
                'Binary node %s can only observe 0 or 1, got %s.' %
                (node, value))
        received[node] = value

    net.time_step += 1
    net.dt = float(dt)
    net.time += net.dt
    for attrs in net.attributes:
        attrs.observation = None
        attrs.surprise = None

    functions = net.functions
    updates = []
    for step in net.sequence:
        entry = functions[step.function_name]
        if entry.phase == PREDICTION:
            net = entry.function(net, step.node)
        else:
            updates.append((entry, step.node))

    if not received:
        return net

    active = set(received)
    for node in received:
        active |= net.ancestors(node)
    for node, value in received.items():
        net.attributes[node].observation = value

    for entry, node in updates:
        if node in active:
            net = entry.function(net, node)

    from hgfnet.ghgf import observation_surprise
    for node in received:
        net.attributes[node].surprise = observation_surprise(net, node)
    return net


def _check_coupling(net: Network, child: int, parent: int, edge_type: str):
    if net.node_kinds[parent] is NodeKind.BINARY:
        raise CouplingError('Binary node %s cannot be a parent.' % parent)
    if (net.node_kinds[child] is NodeKind.BINARY and
            edge_type == Coupling.VOLATILITY.value):
        raise CouplingError('Binary node %s cannot have a volatility '
                            'parent.' % child)


def _kind_prefix(net: Network, node: int) -> str:
    return 'binary' if net.node_kinds[node] is NodeKind.BINARY else 'continuous'


def _or_nan(value) -> float:
    return math.nan if value is None else value

"""Per-node attribute records.

Every node of a network owns one :class:`NodeAttributes` record holding its
sufficient statistics, its expectations for the current time step and the
parameters of its update rules. The record is a dict, so an update function
reads and writes plain keys::

    >>> attrs = NodeAttributes(mean=0.0, precision=1.0, tonic_volatility=-2.0)
    >>> attrs.expected_precision
    1.0
    >>> attrs.extra['observation_precision']
    1.0
    >>> attrs.validate(raise_validation_exception=False)
    []

The fields named in :data:`RUNTIME_FIELDS` are scratch values written while a
time step is in flight; they are never part of a node description.
"""
from enum import Enum
from typing import NoReturn

from hgfnet.exceptions import InvalidAttributeError
from hgfnet.schema import Schema, SchemaRecord, validate_record


class NodeKind(str, Enum):
    """The state kinds a node may hold."""

    CONTINUOUS = 'continuous-state'
    BINARY = 'binary-state'


class Coupling(str, Enum):
    """The edge types of an HGF network."""

    VALUE = 'value'
    VOLATILITY = 'volatility'


#: Neutral defaults of the extension keys understood by the update rules.
DEFAULT_EXTRA = {
    'tonic_drift': 0.0,
    'autoregression': 0.0,
    'autoregression_target': 0.0,
    'observation_precision': 1.0,
}

#: Fields holding in-flight values of the current time step.
RUNTIME_FIELDS = (
    'surprise',
    'value_prediction_error',
    'volatility_prediction_error',
    'volatility_weight',
    'prediction_step',
    'emission_step',
)


class NodeAttributes(SchemaRecord):
    """The attribute map of a single node."""

    FIELDS = Schema(
        mean={'type': 'float', 'default': 0.0, 'required': True,
              'finite': True},
        precision={'type': 'float', 'default': 1.0, 'required': True,
                   'exclusive_min': 0.0, 'finite': True},
        expected_mean={'type': 'float', 'default': 0.0, 'required': True,
                       'finite': True},
        expected_precision={'type': 'float', 'default': 1.0,
                            'required': True, 'exclusive_min': 0.0,
                            'finite': True},
        tonic_volatility={'type': 'float', 'default': -4.0,
                          'required': True, 'finite': True},
        value_coupling={'type': 'list', 'default': [], 'member_type': 'float',
                        'member_min': 0.0},
        volatility_coupling={'type': 'list', 'default': [],
                             'member_type': 'float', 'member_min': 0.0},
        observation={'type': 'float'},
        extra={'type': 'dict', 'default': {}},
        surprise={'type': 'float'},
        value_prediction_error={'type': 'float'},
        volatility_prediction_error={'type': 'float'},
        volatility_weight={'type': 'float', 'default': 0.0},
        prediction_step={'type': 'int'},
        emission_step={'type': 'int'},
    )

    def perfect(self) -> NoReturn:
        """Fill defaults, including the neutral extension keys."""
        super(NodeAttributes, self).perfect()
        for key, value in DEFAULT_EXTRA.items():
            self.extra.setdefault(key, value)

    def validate(self, raise_validation_exception: bool = True) -> list[str]:
        """Validate the attributes, raising :class:`InvalidAttributeError`."""
        value_errors = validate_record(self, raise_validation_exception=False)
        if self.extra.get('observation_precision', 1.0) <= 0:
            value_errors.append(
                'The value of "%s" for "observation_precision" must be '
                'greater than 0.0.' % self.extra['observation_precision'])

        if value_errors and raise_validation_exception:
            raise InvalidAttributeError(value_errors)

        return value_errors

    def describe(self) -> dict:
        """The node description without the in-flight fields."""
        return {key: value for key, value in self.items()
                if key not in RUNTIME_FIELDS}

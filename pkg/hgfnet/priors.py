"""Prior distributions and the parameter space of a fit.

Parameters are addressed by a *target* path (``node.1.tonic_volatility``,
``response.inverse_temperature``; see :mod:`hgfnet.model`). Each parameter
has a prior on its natural scale and a transform to the unconstrained scale
the samplers and optimizers move in. The log prior on the transformed scale
includes the Jacobian of the transform::

    >>> space = default_parameter_space()
    >>> space.names
    ['node.1.tonic_volatility', 'response.inverse_temperature']
    >>> space.to_natural(space.center()).tolist()
    [-3.0, 1.0]
    >>> round(space.log_prior([-3.0, 0.0]), 6)
    -2.531024

"""
import logging
import math
from typing import Iterable, NoReturn, Optional, Sequence

import numpy as np
from scipy import stats

from hgfnet.exceptions import AlignmentError, ValidationException
from hgfnet.schema import Schema, SchemaRecord

logger = logging.getLogger(__name__)

#: Number of arguments and natural support of each prior family.
PRIOR_FAMILIES = {
    'normal': (('mu', 'sigma'), (-math.inf, math.inf)),
    'half-normal': (('sigma',), (0.0, math.inf)),
    'uniform': (('lower', 'upper'), None),
    'log-normal': (('mu', 'sigma'), (0.0, math.inf)),
}

TRANSFORMS = ('identity', 'log')


class Prior(SchemaRecord):
    """A univariate prior on the natural scale of a parameter.

    >>> Prior(family='uniform', args=[-1.0, 1.0]).support()
    (-1.0, 1.0)
    """

    FIELDS = Schema(
        family={'type': 'str', 'required': True, 'enum': set(PRIOR_FAMILIES)},
        args={'type': 'list', 'required': True, 'member_type': 'float'},
    )

    def validate(self, raise_validation_exception: bool = True) -> list[str]:
        value_errors = super(Prior, self).validate(False)
        if not value_errors:
            names, _ = PRIOR_FAMILIES[self.family]
            if len(self.args) != len(names):
                value_errors.append('The %s prior takes arguments %s, got %s.'
                                    % (self.family, list(names), self.args))
            elif self.family == 'uniform':
                if not self.args[0] < self.args[1]:
                    value_errors.append('Uniform bounds %s are not ordered.'
                                        % self.args)
            elif not self.args[-1] > 0:
                value_errors.append('The %s prior needs a positive scale, '
                                    'got %s.' % (self.family, self.args[-1]))

        if value_errors and raise_validation_exception:
            raise ValidationException(value_errors)

        return value_errors

    def support(self) -> tuple[float, float]:
        _, support = PRIOR_FAMILIES[self.family]
        if support is None:
            return float(self.args[0]), float(self.args[1])
        return support

    def log_density(self, value: float) -> float:
        """Log density at a natural scale value; -inf outside the support."""
        lower, upper = self.support()
        if not lower <= value <= upper or not math.isfinite(value):
            return -math.inf
        args = self.args
        if self.family == 'normal':
            return float(stats.norm.logpdf(value, args[0], args[1]))
        if self.family == 'half-normal':
            return float(stats.halfnorm.logpdf(value, scale=args[0]))
        if self.family == 'uniform':
            return -math.log(args[1] - args[0])
        if value <= 0.0:
            return -math.inf
        return float(stats.lognorm.logpdf(value, args[1],
                                          scale=math.exp(args[0])))

    def center(self) -> float:
        """A central point of the prior: the mean, or the median of the
        log-normal."""
        args = self.args
        if self.family == 'normal':
            return float(args[0])
        if self.family == 'half-normal':
            return float(args[0] * math.sqrt(2.0 / math.pi))
        if self.family == 'uniform':
            return 0.5 * (args[0] + args[1])
        return math.exp(args[0])

    def draw(self, rng: np.random.Generator, size: Optional[int] = None):
        args = self.args
        if self.family == 'normal':
            return rng.normal(args[0], args[1], size)
        if self.family == 'half-normal':
            return np.abs(rng.normal(0.0, args[0], size))
        if self.family == 'uniform':
            return rng.uniform(args[0], args[1], size)
        return rng.lognormal(args[0], args[1], size)


class Parameter(SchemaRecord):
    """A free parameter: target path, prior, transform and optional
    optimization bounds on the natural scale."""

    FIELDS = Schema(
        target={'type': 'str', 'required': True},
        prior={'type': 'dict', 'required': True},
        transform={'type': 'str', 'required': True, 'default': 'identity',
                   'enum': set(TRANSFORMS)},
        lower={'type': 'float'},
        upper={'type': 'float'},
    )

    def perfect(self) -> NoReturn:
        super(Parameter, self).perfect()
        if isinstance(self.prior, dict) and not isinstance(self.prior, Prior):
            self.prior = Prior(self.prior)

    def validate(self, raise_validation_exception: bool = True) -> list[str]:
        value_errors = super(Parameter, self).validate(False)
        if isinstance(self.prior, Prior):
            value_errors.extend('%s: %s' % (self.target, error)
                                for error in self.prior.validate(False))
            if (not value_errors and self.transform == 'log' and
                    self.prior.support()[0] < 0.0):
                value_errors.append(
                    '%s: the log transform needs a non-negative support, the '
                    '%s prior has %s.' % (self.target, self.prior.family,
                                          self.prior.support()))
        if (self.lower is not None and self.upper is not None and
                not self.lower < self.upper):
            value_errors.append('%s: bounds [%s, %s] are not ordered.' %
                                (self.target, self.lower, self.upper))

        if value_errors and raise_validation_exception:
            raise ValidationException(value_errors)

        return value_errors

    def forward(self, natural: float) -> float:
        """Natural to transformed scale."""
        if self.transform == 'log':
            return math.log(natural) if natural > 0 else -math.inf
        return float(natural)

    def backward(self, transformed: float) -> float:
        """Transformed to natural scale."""
        if self.transform == 'log':
            return math.exp(transformed) if transformed < 700.0 else math.inf
        return float(transformed)

    def log_prior(self, transformed: float) -> float:
        """Log prior density on the transformed scale, Jacobian included."""
        natural = self.backward(transformed)
        density = self.prior.log_density(natural)
        if self.transform == 'log' and density > -math.inf:
            density += transformed
        return float(density)

    def bounds(self) -> tuple[Optional[float], Optional[float]]:
        """The optimization bounds on the transformed scale."""
        lower, upper = self.lower, self.upper
        support_lower, support_upper = self.prior.support()
        if lower is None and math.isfinite(support_lower) and (
                self.transform == 'identity' or support_lower > 0):
            lower = support_lower
        if upper is None and math.isfinite(support_upper):
            upper = support_upper
        return (None if lower is None else self.forward(lower),
                None if upper is None else self.forward(upper))


class ParameterSpace:
    """The ordered free parameters of a fit.

    :raises ValidationException: A parameter is invalid or two parameters
        share a target.
    """

    def __init__(self, parameters: Iterable):
        self.parameters = [parameter if isinstance(parameter, Parameter)
                           else Parameter(parameter)
                           for parameter in parameters]
        errors = []
        for parameter in self.parameters:
            errors.extend(parameter.validate(False))
        targets = [parameter.target for parameter in self.parameters]
        duplicates = sorted({target for target in targets
                             if targets.count(target) > 1})
        if duplicates:
            errors.append('Duplicate parameter targets: %s' % duplicates)
        if not self.parameters:
            errors.append('The parameter space is empty.')
        if errors:
            raise ValidationException(errors)

    def __len__(self) -> int:
        return len(self.parameters)

    def __repr__(self):
        return '<ParameterSpace %s>' % self.names

    @property
    def names(self) -> list[str]:
        return [parameter.target for parameter in self.parameters]

    @property
    def dim(self) -> int:
        return len(self.parameters)

    def check(self, transformed: Sequence[float]) -> np.ndarray:
        transformed = np.asarray(transformed, dtype=float)
        if transformed.shape != (self.dim,):
            raise AlignmentError('Expected %s parameters %s, got shape %s.' %
                                 (self.dim, self.names, transformed.shape))
        return transformed

    def to_natural(self, transformed: Sequence[float]) -> np.ndarray:
        transformed = self.check(transformed)
        return np.array([parameter.backward(value) for parameter, value in
                         zip(self.parameters, transformed)])

    def to_transformed(self, natural: Sequence[float]) -> np.ndarray:
        natural = self.check(natural)
        return np.array([parameter.forward(value) for parameter, value in
                         zip(self.parameters, natural)])

    def values(self, transformed: Sequence[float]) -> dict[str, float]:
        """Map of target path to natural scale value."""
        return dict(zip(self.names, self.to_natural(transformed).tolist()))

    def log_prior(self, transformed: Sequence[float]) -> float:
        transformed = self.check(transformed)
        total = 0.0
        for parameter, value in zip(self.parameters, transformed):
            total += parameter.log_prior(value)
            if total == -math.inf:
                break
        return float(total)

    def center(self) -> np.ndarray:
        """The prior centers on the transformed scale."""
        return np.array([parameter.forward(parameter.prior.center())
                         for parameter in self.parameters])

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Prior draws on the transformed scale, shape (size, dim)."""
        columns = []
        for parameter in self.parameters:
            natural = parameter.prior.draw(rng, size)
            columns.append([parameter.forward(value) for value in natural])
        return np.array(columns, dtype=float).T.reshape(size, self.dim)

    def bounds(self) -> list[tuple[Optional[float], Optional[float]]]:
        return [parameter.bounds() for parameter in self.parameters]

    def at_bound(self, transformed: Sequence[float],
                 tolerance: float = 1e-3) -> list[bool]:
        """Whether each estimate lies within *tolerance* of a finite
        optimization bound (transformed scale)."""
        flags = []
        for value, (lower, upper) in zip(self.check(transformed),
                                         self.bounds()):
            near = False
            for bound in (lower, upper):
                if bound is not None and math.isfinite(bound):
                    near = near or abs(value - bound) <= tolerance * max(
                        1.0, abs(bound))
            flags.append(near)
        return flags


def omega_parameter(node: int = 1, mu: float = -3.0,
                    sigma: float = 2.0) -> Parameter:
    """Tonic volatility of a node, Normal prior, identity transform."""
    return Parameter(target='node.%s.tonic_volatility' % node,
                     prior={'family': 'normal', 'args': [mu, sigma]},
                     transform='identity', lower=-10.0, upper=2.0)


def temperature_parameter(mu: float = 0.0, sigma: float = 1.0) -> Parameter:
    """Inverse temperature with a Normal(mu, sigma) prior on its log."""
    return Parameter(target='response.inverse_temperature',
                     prior={'family': 'log-normal', 'args': [mu, sigma]},
                     transform='log', lower=0.01, upper=100.0)


def default_parameter_space(node: int = 1,
                            temperature: bool = True) -> ParameterSpace:
    """Tonic volatility of *node* and, optionally, the inverse
    temperature."""
    parameters = [omega_parameter(node)]
    if temperature:
        parameters.append(temperature_parameter())
    return ParameterSpace(parameters)

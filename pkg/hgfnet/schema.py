"""Schema-described records and their validation functions.

.. contents::

======
Usage
======

The *schema* module contains the classes :class:`Field`, :class:`Schema` and
:class:`SchemaRecord`, along with the functions used to perfect and validate
records. Node attributes, preset descriptions, response models and
configuration sections are all :class:`SchemaRecord` types.

Creating Schema
----------------

A *Schema* is an ordered mapping of field names to :class:`Field`
definitions. A dict value is converted to a *Field*::

    >>> a_schema = Schema(precision={'type': 'float', 'exclusive_min': 0.0})
    >>> a_schema.precision.required
    False

Defining Records
-----------------

Derive from :class:`SchemaRecord` and set the *FIELDS* class attribute.
Records are perfected on construction, so missing fields take their
defaults::

    >>> class Gauss(SchemaRecord):
    ...     FIELDS = Schema(
    ...         mean={'type': 'float', 'default': 0.0},
    ...         precision={'type': 'float', 'default': 1.0,
    ...                    'exclusive_min': 0.0})
    >>> belief = Gauss(precision=-1.0)
    >>> belief.mean
    0.0
    >>> belief.validate(raise_validation_exception=False)
    ['The value of "-1.0" for "precision" must be greater than 0.0.']

.. _field-settings-table:

Available Field Settings
-------------------------

============== ======== ========================================================
Name           Default  Meaning
============== ======== ========================================================
type           None     bool, dict, float, int, list, str; float admits int
default        None     Applied by :func:`perfect_record`; collections copied
required       False    Fail validation when the value is *None*
enum           None     Set of admissible values
min            None     Inclusive lower bound for numbers, length for lists
max            None     Inclusive upper bound for numbers, length for lists
exclusive_min  None     Strict lower bound for numbers
finite         False    Reject nan and infinite numbers
member_type    None     Type of each list member
member_min     None     Inclusive lower bound of each list member
============== ======== ========================================================

"""
import logging
import math
from copy import deepcopy
from typing import Any, NoReturn

from hgfnet import core
from hgfnet.exceptions import ValidationException

logger = logging.getLogger(__name__)

#: The set of supported collection types.
COLLECTION_TYPES = {dict, list}

#: Used to convert the string declaration of field type to native type.
TYPE_MAP = {
    'bool': bool,
    bool: bool,
    'dict': dict,
    dict: dict,
    'float': float,
    float: float,
    'int': int,
    int: int,
    'list': list,
    list: list,
    'str': str,
    str: str,
    'None': None,
    None: None,
}

#: The settings understood by a :class:`Field`.
FIELD_SETTINGS = (
    'name',
    'type',
    'default',
    'required',
    'enum',
    'min',
    'max',
    'exclusive_min',
    'finite',
    'member_type',
    'member_min',
)


class Field(core.Core):
    """A class to define the schema of a single record field."""

    def __init__(self, *args, **kwargs):
        super(Field, self).__init__(*args, **kwargs)

        perfect_field(self)

    def validate_value(self, value: Any,
                       raise_validation_exception: bool = False) -> list[str]:
        """Method that validates a value against the current field."""
        value_errors = validate_value(self, value)

        if value_errors and raise_validation_exception:
            raise ValidationException(value_errors)

        return value_errors


class Schema(core.Core):
    """The type definition for a schema object.

    The **Schema** contains a dictionary of field names and the
    corresponding **Field** definition. It accepts a list of field dicts, a
    mapping, or keyword arguments.
    """

    def __init__(self, *args, **kwargs):
        if len(args) == 1 and isinstance(args[0], list):
            super(Schema, self).__init__()
            for some_field in args[0]:
                self.add(some_field)
            return  # Initialization completed for a list.

        super(Schema, self).__init__(*args, **kwargs)

        for key, value in self.items():
            if not isinstance(value, Field):
                try:
                    value = dict(value)
                    value['name'] = key  # Set name for consistency.
                    self[key] = Field(value)
                except Exception:
                    logger.exception(
                        'Exception while converting "%s" to Field', key)
                    raise

    def add(self, field: dict) -> NoReturn:
        """Add a field definition to a schema."""
        if not isinstance(field, dict):
            raise ValueError('"field" must be dict or Field type.')
        if not isinstance(field, Field):
            field = Field(field)
        self[field.name] = field


class SchemaRecord(core.Core):
    """Base class of records whose fields are described by a :class:`Schema`.

    Records are perfected on construction; validation is explicit so that a
    record can be assembled incrementally and checked once.
    """

    FIELDS = Schema()

    def __init__(self, *args, **kwargs):
        super(SchemaRecord, self).__init__(*args, **kwargs)

        self.perfect()

    @classmethod
    def get_schema(cls) -> Schema:
        """Returns the schema of the record type."""
        return cls.FIELDS

    def perfect(self) -> NoReturn:
        """Strip unknown fields and fill missing ones with their defaults."""
        perfect_record(self)

    def validate(self,
                 raise_validation_exception: bool = True) -> list[str]:
        """Validate the record against its schema.

        :param raise_validation_exception: If True, then a
            *ValidationException* is raised upon validation failure. If
            False, then a list of validation errors is returned.
        :return: List of errors found. Empty if no errors found.
        """
        return validate_record(self, raise_validation_exception)


def perfect_field(field: Field) -> NoReturn:
    """Method to ensure the completeness of a field definition.

    Unknown settings are removed, missing settings are set to *None* and the
    type declarations given as strings are coerced to the native type.

    :raises ValueError: If the name is missing or a type is not supported.
    """
    if not field.get('name'):
        raise ValueError('"name" must be provided.')

    for setting in set(field.keys()) - set(FIELD_SETTINGS):
        del field[setting]
    for setting in FIELD_SETTINGS:
        field.setdefault(setting, None)

    for setting in ('type', 'member_type'):
        declared = field[setting]
        if isinstance(declared, tuple):
            continue
        try:
            field[setting] = TYPE_MAP[declared]
        except (KeyError, TypeError):
            raise ValueError('Illegal %s declaration: %s' % (setting, declared))

    field.required = bool(field.required)
    field.finite = bool(field.finite)


def perfect_record(record: SchemaRecord) -> NoReturn:
    """Function to ensure complete field settings for a given record.

    Fields not defined in the record schema are stripped. Missing fields, and
    fields set to *None* that have a default, take the default value; the
    collection defaults are deep copied so that no two records share them.
    """
    if not isinstance(record, SchemaRecord):
        raise ValueError('"record" must be SchemaRecord type.')

    schema = record.get_schema()

    for field_name in set(record.keys()) - set(schema.keys()):
        del record[field_name]

    for field_name, field in schema.items():
        if record.get(field_name) is None and field.default is not None:
            if field.type in COLLECTION_TYPES:
                record[field_name] = deepcopy(field.default)
            else:
                record[field_name] = field.default
        record.setdefault(field_name, None)


def validate_record(record: SchemaRecord,
                    raise_validation_exception: bool = True) -> list[str]:
    """Function that will validate if a record meets its schema.

    :raises ValidationException: A field of *record* does not meet the
        schema requirements.
    """
    if not isinstance(record, SchemaRecord):
        raise ValueError('"record" must be SchemaRecord type.')

    value_errors = []
    for field in record.get_schema().values():
        value_errors.extend(validate_value(field, record.get(field.name)))

    if value_errors and raise_validation_exception:
        raise ValidationException(value_errors)

    return value_errors


def validate_value(field: Field, value: Any) -> list[str]:
    """Method to validate a given value against a given field.

    :param field: The field that contains the validation rules.
    :param value: The value that is to be validated.
    :return: The list of errors found.
    """
    value_errors = []
    if value is None:
        if field.required:
            value_errors.append(
                'The value for "%s" is required.' % field.name)
        return value_errors

    if field.type is not None and not _is_instance(value, field.type):
        value_errors.append('The value for "%s" is not of type "%s": %s' %
                            (field.name, _type_name(field.type), value))
        return value_errors  # No further validation without the right type.

    if field.enum is not None and value not in field.enum:
        value_errors.append('The value "%s" for "%s" not in enumeration %s.' %
                            (value, field.name, sorted(field.enum, key=str)))

    if isinstance(value, list):
        _validate_members(field, value, value_errors)
        measured = len(value)
    else:
        measured = value

    if _is_number(measured):
        if field.finite and not math.isfinite(measured):
            value_errors.append(
                'The value of "%s" for "%s" is not finite.' %
                (value, field.name))
        if field.min is not None and measured < field.min:
            value_errors.append('The value of "%s" for "%s" fails min of %s.' %
                                (value, field.name, field.min))
        if field.max is not None and measured > field.max:
            value_errors.append('The value of "%s" for "%s" fails max of %s.' %
                                (value, field.name, field.max))
        if field.exclusive_min is not None and not measured > field.exclusive_min:
            value_errors.append(
                'The value of "%s" for "%s" must be greater than %s.' %
                (value, field.name, field.exclusive_min))

    return value_errors


def _validate_members(field: Field, value: list,
                      value_errors: list[str]) -> NoReturn:
    for member in value:
        if (field.member_type is not None and
                not _is_instance(member, field.member_type)):
            value_errors.append('The value "%s" for "%s" is not of type "%s".'
                                % (member, field.name,
                                   _type_name(field.member_type)))
            continue
        if field.member_min is not None and member < field.member_min:
            value_errors.append(
                'The value of "%s" for "%s" fails min size of %s.' %
                (member, field.name, field.member_min))


def _is_instance(value: Any, declared) -> bool:
    if isinstance(value, bool) and declared is not bool:
        return False
    if declared is float:
        return isinstance(value, (int, float))
    return isinstance(value, declared)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _type_name(declared) -> str:
    if isinstance(declared, tuple):
        return '|'.join(t.__name__ for t in declared)
    return declared.__name__

"""The root record type for the *hgfnet* data structures.

.. contents::

Node attributes, preset descriptions, response models and configuration
sections are all plain records: named values that need to travel to CSV
and JSON without ceremony. **Core** is the common base of those records.

"""

from copy import copy, deepcopy


class Core(dict):
    """The root type of *hgfnet* records.

    **Core** provides for record fields to be accessible as either dict
    key-value pairs or as object attributes. Core also supports dict style
    initialization.

    Dict Style Initialization
        Core() -> new empty Core

        Core(mapping) -> new Core initialized from a mapping
        object's (key, value) pairs

        Core(**kwargs) -> new Core initialized with the
        name=value pairs in the keyword argument list.  For example::

            Core(mean=0.0, precision=1.0)

    Example dict style and object style field access::

    >>> node = Core({'mean': 0.0})
    >>> node.precision = 1.0
    >>> node['precision']
    1.0
    >>> node.mean
    0.0

    As a dict, a record can be handed to :func:`json.dumps` unchanged.
    """

    def __init__(self, *args, **kwargs):
        super(Core, self).__init__(*args, **kwargs)

        self.__dict__ = self

    def __copy__(self) -> 'Core':
        return type(self)(copy(dict(self)))

    def __deepcopy__(self, memo) -> 'Core':
        the_copy = dict(self.__dict__)
        return type(self)(deepcopy(the_copy, memo))

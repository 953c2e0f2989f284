"""Plane Cremona maps, the Jonquieres group and its action on fibre trees."""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
)

__version__ = '0.1'

__all__ = [
    'CremonaMap',
    'FixpointReport',
    'GroupSpec',
    'HalphenSystem',
    'JVertex',
    'JonqElem',
    'decent_fixpoint',
    'field_from_descriptor',
    'parse_jonq',
    'parse_map',
    ]


from .cremona import CremonaMap, parse_map
from .fibretrees import JVertex
from .fields import field_from_descriptor
from .fixpoint import FixpointReport, GroupSpec, decent_fixpoint
from .halphen import HalphenSystem
from .jonquieres import JonqElem, parse_jonq

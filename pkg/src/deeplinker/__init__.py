"""DeepLinker: hierarchical deep links into desktop resources.

Generates and interprets URIs whose path segments are chained,
parameterized methods, serves HTML/JSON/Turtle representations of the
addressed fragments, and stores RDF annotations about the links.
"""

from .errors import ResolveError
from .grammar import (
    DeepLink,
    LinkSyntaxError,
    Segment,
    append_segment,
    parse_deep_link,
    serialize_deep_link,
)
from .resolver import Resolver
from .service import DeepLinkerService, ServiceConfig

__all__ = [
    "DeepLink",
    "Segment",
    "LinkSyntaxError",
    "ResolveError",
    "parse_deep_link",
    "serialize_deep_link",
    "append_segment",
    "Resolver",
    "DeepLinkerService",
    "ServiceConfig",
]

__version__ = "0.1.0"

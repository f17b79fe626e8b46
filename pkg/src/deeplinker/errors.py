"""Resolution error codes shared across resolver, converters and service."""

from __future__ import annotations

__all__ = ["ResolveError"]

CODES = frozenset(
    {
        "UnknownMethod",
        "UnsupportedMethodForKind",
        "NotFound",
        "IndexOutOfRange",
        "BadParamCount",
        "BadParamFormat",
        "PathEscapesRoot",
        "ConversionUnavailable",
        "DownloadFailed",
        "SelectorNoMatch",
    }
)


class ResolveError(Exception):
    def __init__(self, code: str, detail: str = "", at_segment: int = -1):
        assert code in CODES, code
        super().__init__(f"{code} at segment {at_segment}: {detail}")
        self.code = code
        self.detail = detail
        self.at_segment = at_segment

    def at(self, index: int) -> "ResolveError":
        return ResolveError(self.code, self.detail, index)

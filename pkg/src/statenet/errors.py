"""Exception taxonomy shared across the package.

Every error raised by statenet code derives from ProtocolError so callers can
catch the whole family with one clause. The CLI maps subfamilies to distinct
exit codes.
"""

from __future__ import annotations


class ProtocolError(Exception):
    """Base class for all statenet errors."""


class StatementFormatError(ProtocolError):
    """A statement or statement file violates the canonical text format."""


class MalformedEnvelope(StatementFormatError):
    """Envelope field missing, duplicated, reordered, unknown, or malformed."""


class StatementTooLarge(MalformedEnvelope):
    """Statement text exceeds the size cap."""


class UnsupportedVersion(StatementFormatError):
    """Format version line present but not the supported version."""


class InvalidTimestamp(StatementFormatError):
    """Timestamp does not match YYYY-MM-DDTHH:MM:SSZ or is out of range."""


class InvalidHashReference(StatementFormatError):
    """Referenced hash is not canonical 43-char URL-safe base64."""


class BlankLineInContent(StatementFormatError):
    """Statement text contains a blank line, which is the file separator."""


class InvalidUtf8(StatementFormatError):
    """Bytes are not valid UTF-8."""


class BomPresent(StatementFormatError):
    """Input starts with a byte-order mark."""


class MalformedTypedContent(StatementFormatError):
    """Typed content block fails its per-type grammar or validation."""


class InvariantViolation(StatementFormatError):
    """A value handed to a serializer violates a model invariant."""


class NonCanonicalInput(ProtocolError):
    """Text is not the canonical serialization of any statement."""


class OutOfRangeConfidence(ProtocolError):
    """Confidence value outside [0.0, 1.0]."""


class NotAPoll(ProtocolError):
    """Statement expected to carry Poll content does not."""


class FetchError(ProtocolError):
    """Base class for transport-layer failures."""


class NetworkError(FetchError):
    """Connection, TLS, DNS, or timeout failure."""


class BadStatus(FetchError):
    """HTTP status other than 200 (after permitted redirects)."""


class WrongContentType(FetchError):
    """Response served without text/plain; charset=utf-8."""


class BodyTooLarge(FetchError):
    """Response body exceeds the configured cap."""


class HashMismatch(FetchError):
    """Fetched bytes do not hash to the requested content hash."""


class RateLimited(FetchError):
    """Per-domain minimum poll interval has not elapsed."""

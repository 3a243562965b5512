"""HTTPS retrieval of statement files, individual statements, and PDFs.

Transport rules: HTTPS only, status 200, ``text/plain; charset=utf-8`` for
statement documents, bounded body sizes, at most two redirects within the
same registered domain. Hash-addressed fetches verify the hash over the
exact received bytes before returning anything.

Politeness: one in-flight request per domain, and statement-file polls honor
a per-domain minimum interval.
"""

from __future__ import annotations

import ssl
import threading
import time
from dataclasses import dataclass
from urllib.parse import urljoin, urlsplit

import httpx

from .errors import (
    BadStatus,
    BodyTooLarge,
    HashMismatch,
    InvalidUtf8,
    NetworkError,
    RateLimited,
    WrongContentType,
)
from .format import (
    StatementFile,
    hash_bytes,
    is_valid_domain,
    split_statement_file,
    validate_content_hash,
)

STATEMENT_FILE_PATH = "/.well-known/statements.txt"
STATEMENT_BY_HASH_PATH = "/.well-known/statements/{hash}.txt"
PDF_PATH = "/files/{hash}.pdf"

_REDIRECT_CODES = frozenset({301, 302, 303, 307, 308})


@dataclass(frozen=True)
class FetchMeta:
    url: str
    status: int
    duration_seconds: float
    body_bytes: int
    content_type: str | None
    tls_verified: bool


def _media_params(content_type: str | None) -> tuple[str, dict[str, str]]:
    if not content_type:
        return "", {}
    head, _, rest = content_type.partition(";")
    params: dict[str, str] = {}
    for chunk in rest.split(";"):
        key, sep, value = chunk.partition("=")
        if sep:
            params[key.strip().lower()] = value.strip().strip('"').lower()
    return head.strip().lower(), params


def require_text_plain_utf8(content_type: str | None) -> None:
    """Enforce ``text/plain; charset=utf-8`` (parameters case-insensitive)."""
    media, params = _media_params(content_type)
    if media != "text/plain":
        raise WrongContentType(f"expected text/plain, got {content_type!r}")
    if params.get("charset") != "utf-8":
        raise WrongContentType(
            f"expected charset=utf-8 parameter, got {content_type!r}"
        )


def registered_domain(host: str) -> str:
    # approximation: the last two labels stand in for the registrable domain
    labels = host.lower().split(".")
    return ".".join(labels[-2:]) if len(labels) >= 2 else host.lower()


class StatementFetcher:
    def __init__(
        self,
        *,
        timeout: float = 30.0,
        max_file_bytes: int = 5 * 1024 * 1024,
        max_pdf_bytes: int = 32 * 1024 * 1024,
        min_poll_interval: float = 600.0,
        max_redirects: int = 2,
        ca_bundle: str | None = None,
        https_port: int | None = None,
        transport: httpx.BaseTransport | None = None,
    ) -> None:
        self.max_file_bytes = max_file_bytes
        self.max_pdf_bytes = max_pdf_bytes
        self.min_poll_interval = min_poll_interval
        self.max_redirects = max_redirects
        self._https_port = https_port
        self._client = httpx.Client(
            verify=ssl.create_default_context(cafile=ca_bundle) if ca_bundle else True,
            timeout=timeout,
            follow_redirects=False,
            transport=transport,
        )
        self._locks_guard = threading.Lock()
        self._domain_locks: dict[str, threading.Lock] = {}
        self._last_poll: dict[str, float] = {}

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "StatementFetcher":
        return self

    def __exit__(self, *_exc) -> None:
        self.close()

    def _domain_lock(self, domain: str) -> threading.Lock:
        with self._locks_guard:
            if domain not in self._domain_locks:
                self._domain_locks[domain] = threading.Lock()
            return self._domain_locks[domain]

    def _base_url(self, domain: str) -> str:
        if not is_valid_domain(domain):
            raise ValueError(f"not a valid domain: {domain!r}")
        if self._https_port and self._https_port != 443:
            return f"https://{domain}:{self._https_port}"
        return f"https://{domain}"

    def _get(self, url: str, cap: int) -> tuple[bytes, httpx.Response, FetchMeta]:
        origin_host = urlsplit(url).hostname or ""
        current = url
        started = time.monotonic()
        for _hop in range(self.max_redirects + 1):
            parts = urlsplit(current)
            if parts.scheme != "https":
                raise NetworkError(f"refusing non-HTTPS URL {current!r}")
            try:
                response = self._client.send(
                    self._client.build_request("GET", current), stream=True
                )
            except httpx.HTTPError as exc:
                raise NetworkError(f"GET {current} failed: {exc}") from exc
            try:
                if response.status_code in _REDIRECT_CODES:
                    location = response.headers.get("location")
                    if not location:
                        raise BadStatus(f"redirect without Location from {current}")
                    target = urljoin(current, location)
                    target_host = urlsplit(target).hostname or ""
                    if registered_domain(target_host) != registered_domain(origin_host):
                        raise NetworkError(
                            f"cross-domain redirect refused: {current} -> {target}"
                        )
                    current = target
                    continue
                if response.status_code != 200:
                    raise BadStatus(f"GET {current} returned {response.status_code}")
                body = b""
                for chunk in response.iter_bytes():
                    body += chunk
                    if len(body) > cap:
                        raise BodyTooLarge(f"body exceeds {cap} bytes at {current}")
                meta = FetchMeta(
                    url=current,
                    status=response.status_code,
                    duration_seconds=time.monotonic() - started,
                    body_bytes=len(body),
                    content_type=response.headers.get("content-type"),
                    tls_verified=True,
                )
                return body, response, meta
            finally:
                response.close()
        raise BadStatus(f"more than {self.max_redirects} redirects from {url}")

    def fetch_statement_file(
        self, domain: str, *, force: bool = False
    ) -> tuple[StatementFile, FetchMeta]:
        """GET the domain's statements.txt, validated and split."""
        url = self._base_url(domain) + STATEMENT_FILE_PATH
        with self._domain_lock(domain):
            now = time.monotonic()
            last = self._last_poll.get(domain)
            if not force and last is not None and now - last < self.min_poll_interval:
                raise RateLimited(
                    f"{domain} polled {now - last:.0f}s ago; interval is "
                    f"{self.min_poll_interval:.0f}s"
                )
            self._last_poll[domain] = now
            body, response, meta = self._get(url, self.max_file_bytes)
        require_text_plain_utf8(response.headers.get("content-type"))
        return split_statement_file(body), meta

    def fetch_statement_by_hash(self, domain: str, statement_hash: str) -> str:
        """GET one statement by hash; the body must hash back to it exactly."""
        validate_content_hash(statement_hash)
        url = self._base_url(domain) + STATEMENT_BY_HASH_PATH.format(hash=statement_hash)
        with self._domain_lock(domain):
            body, response, _meta = self._get(url, self.max_file_bytes)
        require_text_plain_utf8(response.headers.get("content-type"))
        if hash_bytes(body) != statement_hash:
            raise HashMismatch(
                f"body of {url} hashes to {hash_bytes(body)}, expected {statement_hash}"
            )
        try:
            return body.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidUtf8(f"statement at {url} is not UTF-8: {exc}") from exc

    def fetch_pdf(self, domain: str, pdf_hash: str) -> bytes:
        """GET a referenced PDF; bytes must hash to ``pdf_hash`` exactly."""
        validate_content_hash(pdf_hash)
        url = self._base_url(domain) + PDF_PATH.format(hash=pdf_hash)
        with self._domain_lock(domain):
            body, _response, _meta = self._get(url, self.max_pdf_bytes)
        if hash_bytes(body) != pdf_hash:
            raise HashMismatch(
                f"body of {url} hashes to {hash_bytes(body)}, expected {pdf_hash}"
            )
        return body


def http_pull_client(base_url: str, client: httpx.Client):
    """Gossip pull client over a peer node's /api/statements endpoint."""

    def pull(min_id: int, limit: int) -> list[tuple[int, str]]:
        try:
            response = client.get(
                f"{base_url.rstrip('/')}/api/statements",
                params={"min_id": min_id, "limit": limit},
            )
        except httpx.HTTPError as exc:
            raise NetworkError(f"pull from {base_url} failed: {exc}") from exc
        if response.status_code != 200:
            raise BadStatus(f"pull from {base_url} returned {response.status_code}")
        data = response.json()
        return [(item["id"], item["text"]) for item in data.get("statements", [])]

    return pull

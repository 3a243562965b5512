"""Minimal DNS TXT lookup used to cross-check published statement hashes.

Domains can publish statement hashes as TXT records at ``stated.<domain>`` so
clients can detect website-level tampering. Only TXT queries are needed, so
this speaks the DNS wire format directly over UDP (TCP fallback on
truncation) instead of pulling in a resolver library.

The record location is interop-sensitive: other implementations must query
the same name for confirmations to line up.
"""

from __future__ import annotations

import os
import socket
import struct
from dataclasses import dataclass
from typing import Callable, Sequence

TXT_RECORD_PREFIX = "stated"

STATE_CONFIRMED = "confirmed"
STATE_ABSENT = "absent"
STATE_ERROR = "dns-error"

_TYPE_TXT = 16
_CLASS_IN = 1
_FLAG_RD = 0x0100
_FLAG_TC = 0x0200


class DnsLookupError(Exception):
    """Query could not be completed (network failure, NXDOMAIN, bad reply)."""


@dataclass(frozen=True)
class DnsTxtVerification:
    state: str  # confirmed | absent | dns-error
    detail: str = ""
    records: tuple[str, ...] = ()


def _encode_name(name: str) -> bytes:
    encoded = b""
    for label in name.rstrip(".").split("."):
        raw = label.encode("idna") if not label.isascii() else label.encode("ascii")
        if not 0 < len(raw) < 64:
            raise DnsLookupError(f"invalid DNS label {label!r}")
        encoded += bytes([len(raw)]) + raw
    return encoded + b"\x00"


def _build_query(name: str, txid: int) -> bytes:
    header = struct.pack(">HHHHHH", txid, _FLAG_RD, 1, 0, 0, 0)
    return header + _encode_name(name) + struct.pack(">HH", _TYPE_TXT, _CLASS_IN)


def _skip_name(data: bytes, offset: int) -> int:
    while True:
        if offset >= len(data):
            raise DnsLookupError("truncated name in DNS response")
        length = data[offset]
        if length == 0:
            return offset + 1
        if length & 0xC0 == 0xC0:  # compression pointer ends the name
            return offset + 2
        offset += 1 + length


def _parse_txt_rdata(rdata: bytes) -> str:
    # one TXT record is a sequence of character-strings, concatenated
    strings = []
    offset = 0
    while offset < len(rdata):
        length = rdata[offset]
        strings.append(rdata[offset + 1 : offset + 1 + length])
        offset += 1 + length
    return b"".join(strings).decode("utf-8", errors="replace")


def _parse_response(data: bytes, txid: int) -> list[str]:
    if len(data) < 12:
        raise DnsLookupError("short DNS response")
    rx_id, flags, qdcount, ancount, _, _ = struct.unpack(">HHHHHH", data[:12])
    if rx_id != txid:
        raise DnsLookupError("DNS transaction id mismatch")
    rcode = flags & 0x000F
    if rcode == 3:
        raise DnsLookupError("NXDOMAIN")
    if rcode != 0:
        raise DnsLookupError(f"DNS server returned rcode {rcode}")
    offset = 12
    for _ in range(qdcount):
        offset = _skip_name(data, offset) + 4
    records: list[str] = []
    for _ in range(ancount):
        offset = _skip_name(data, offset)
        if offset + 10 > len(data):
            raise DnsLookupError("truncated answer in DNS response")
        rtype, rclass, _ttl, rdlength = struct.unpack(
            ">HHIH", data[offset : offset + 10]
        )
        offset += 10
        rdata = data[offset : offset + rdlength]
        offset += rdlength
        if rtype == _TYPE_TXT and rclass == _CLASS_IN:
            records.append(_parse_txt_rdata(rdata))
    return records


def _system_nameservers() -> list[str]:
    servers = []
    try:
        with open("/etc/resolv.conf", encoding="utf-8") as handle:
            for line in handle:
                parts = line.split()
                if len(parts) >= 2 and parts[0] == "nameserver":
                    servers.append(parts[1])
    except OSError:
        pass
    return servers or ["127.0.0.53"]


def _query_udp(server: str, port: int, query: bytes, timeout: float) -> bytes:
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as sock:
        sock.settimeout(timeout)
        sock.sendto(query, (server, port))
        return sock.recv(4096)


def _query_tcp(server: str, port: int, query: bytes, timeout: float) -> bytes:
    with socket.create_connection((server, port), timeout=timeout) as sock:
        sock.settimeout(timeout)
        sock.sendall(struct.pack(">H", len(query)) + query)
        raw_length = sock.recv(2)
        if len(raw_length) < 2:
            raise DnsLookupError("short TCP DNS response")
        (length,) = struct.unpack(">H", raw_length)
        data = b""
        while len(data) < length:
            chunk = sock.recv(length - len(data))
            if not chunk:
                break
            data += chunk
        return data


def query_txt(
    name: str,
    *,
    servers: Sequence[str] | None = None,
    port: int = 53,
    timeout: float = 5.0,
) -> list[str]:
    """TXT record strings for ``name``; [] when the name has no TXT records."""
    txid = int.from_bytes(os.urandom(2), "big")
    query = _build_query(name, txid)
    last_error: Exception | None = None
    for server in servers or _system_nameservers():
        try:
            data = _query_udp(server, port, query, timeout)
            if len(data) >= 4 and struct.unpack(">H", data[2:4])[0] & _FLAG_TC:
                data = _query_tcp(server, port, query, timeout)
            return _parse_response(data, txid)
        except DnsLookupError as exc:
            if str(exc) == "NXDOMAIN":
                raise
            last_error = exc
        except OSError as exc:
            last_error = exc
    raise DnsLookupError(f"no DNS server answered: {last_error}")


Resolver = Callable[[str], Sequence[str]]


def verify_dns_txt(
    domain: str, statement_hash: str, *, resolver: Resolver | None = None
) -> DnsTxtVerification:
    """Check whether ``stated.<domain>`` publishes ``statement_hash`` in TXT.

    Never raises: lookup failures fold into the ``dns-error`` state.
    """
    name = f"{TXT_RECORD_PREFIX}.{domain}"
    lookup = resolver if resolver is not None else query_txt
    try:
        records = tuple(lookup(name))
    except Exception as exc:  # noqa: BLE001 - all failures become a result state
        return DnsTxtVerification(state=STATE_ERROR, detail=str(exc))
    if statement_hash in records:
        return DnsTxtVerification(state=STATE_CONFIRMED, records=records)
    return DnsTxtVerification(state=STATE_ABSENT, records=records)

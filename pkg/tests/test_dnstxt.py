"""DNS TXT hash verification: wire codec and result-state folding."""

from __future__ import annotations

import socket
import struct
import threading

import pytest

from statenet import dnstxt
from statenet.format import hash_bytes


def test_verify_confirmed_with_injected_resolver():
    statement_hash = hash_bytes(b"statement")
    result = dnstxt.verify_dns_txt(
        "example.gov", statement_hash, resolver=lambda name: [statement_hash, "other"]
    )
    assert result.state == "confirmed"
    assert statement_hash in result.records


def test_verify_absent_with_injected_resolver():
    result = dnstxt.verify_dns_txt(
        "example.gov", hash_bytes(b"statement"), resolver=lambda name: ["unrelated"]
    )
    assert result.state == "absent"


def test_verify_error_with_injected_resolver():
    def failing(_name):
        raise dnstxt.DnsLookupError("NXDOMAIN")

    result = dnstxt.verify_dns_txt("example.gov", hash_bytes(b"x"), resolver=failing)
    assert result.state == "dns-error"
    assert "NXDOMAIN" in result.detail


def test_record_name_uses_stated_prefix():
    queried = []

    def spy(name):
        queried.append(name)
        return []

    dnstxt.verify_dns_txt("example.gov", hash_bytes(b"x"), resolver=spy)
    assert queried == ["stated.example.gov"]


class FakeDnsServer:
    """Answers every query with a configurable TXT record set or rcode."""

    def __init__(self, txt_strings=(), rcode=0, respond=True):
        self.txt_strings = list(txt_strings)
        self.rcode = rcode
        self.respond = respond
        self.sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self.sock.bind(("127.0.0.1", 0))
        self.port = self.sock.getsockname()[1]
        self._thread = threading.Thread(target=self._serve, daemon=True)

    def __enter__(self):
        self._thread.start()
        return self

    def __exit__(self, *_exc):
        self.sock.close()

    def _serve(self):
        try:
            query, addr = self.sock.recvfrom(4096)
        except OSError:
            return
        if not self.respond:
            return
        txid = query[:2]
        question = query[12:]
        flags = struct.pack(">H", 0x8180 | self.rcode)
        header = txid + flags + struct.pack(">HHHH", 1, len(self.txt_strings), 0, 0)
        answers = b""
        for value in self.txt_strings:
            raw = value.encode("ascii")
            rdata = bytes([len(raw)]) + raw
            answers += (
                b"\xc0\x0c"  # pointer to the question name
                + struct.pack(">HHIH", 16, 1, 60, len(rdata))
                + rdata
            )
        self.sock.sendto(header + question + answers, addr)


def query_local(name: str, port: int) -> list[str]:
    return dnstxt.query_txt(name, servers=["127.0.0.1"], port=port, timeout=2.0)


def test_query_txt_against_fake_server():
    statement_hash = hash_bytes(b"published")
    with FakeDnsServer(txt_strings=[statement_hash, "note"]) as server:
        records = query_local("stated.example.gov", server.port)
    assert records == [statement_hash, "note"]


def test_query_txt_empty_answer_is_absent_not_error():
    with FakeDnsServer(txt_strings=[]) as server:
        records = query_local("stated.example.gov", server.port)
    assert records == []


def test_query_txt_nxdomain_raises():
    with FakeDnsServer(rcode=3) as server:
        with pytest.raises(dnstxt.DnsLookupError, match="NXDOMAIN"):
            query_local("stated.missing.example", server.port)


def test_query_txt_timeout_raises():
    with FakeDnsServer(respond=False) as server:
        with pytest.raises(dnstxt.DnsLookupError):
            dnstxt.query_txt(
                "stated.example.gov",
                servers=["127.0.0.1"],
                port=server.port,
                timeout=0.2,
            )


def test_end_to_end_verification_states_over_udp():
    statement_hash = hash_bytes(b"anchored")
    with FakeDnsServer(txt_strings=[statement_hash]) as server:
        resolver = lambda name: query_local(name, server.port)
        assert dnstxt.verify_dns_txt("example.gov", statement_hash, resolver=resolver).state == "confirmed"
    with FakeDnsServer(txt_strings=["something-else"]) as server:
        resolver = lambda name: query_local(name, server.port)
        assert dnstxt.verify_dns_txt("example.gov", statement_hash, resolver=resolver).state == "absent"
    with FakeDnsServer(rcode=3) as server:
        resolver = lambda name: query_local(name, server.port)
        assert dnstxt.verify_dns_txt("example.gov", statement_hash, resolver=resolver).state == "dns-error"


def test_multi_string_txt_record_concatenates():
    # one TXT RR carrying two character-strings is one logical record
    statement_hash = hash_bytes(b"long")
    first, second = statement_hash[:20], statement_hash[20:]
    rdata = bytes([len(first)]) + first.encode() + bytes([len(second)]) + second.encode()
    assert dnstxt._parse_txt_rdata(rdata) == statement_hash

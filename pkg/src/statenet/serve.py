"""Long-running node assembly: store, fetch loop, gossip loop, HTTP app."""

from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass, field

import httpx

from .api import create_app
from .config import NodeSettings
from .errors import ProtocolError, RateLimited
from .fetch import StatementFetcher, http_pull_client
from .node import Node, ReputationPolicy
from .store import SqliteStore

logger = logging.getLogger(__name__)


@dataclass
class NodeRuntime:
    settings: NodeSettings
    store: SqliteStore
    node: Node
    fetcher: StatementFetcher
    app: object
    stop_event: threading.Event = field(default_factory=threading.Event)
    threads: list[threading.Thread] = field(default_factory=list)

    def start_background(self) -> None:
        for thread in self.threads:
            thread.start()

    def stop(self) -> None:
        self.stop_event.set()
        for thread in self.threads:
            if thread.is_alive():
                thread.join(timeout=5)
        self.fetcher.close()
        self.store.close()


def _poll_loop(runtime: NodeRuntime) -> None:
    settings = runtime.settings
    while not runtime.stop_event.wait(max(1.0, settings.poll_interval_seconds / 4)):
        for domain in settings.seed_domains:
            if runtime.stop_event.is_set():
                return
            try:
                results = runtime.node.poll_domain(runtime.fetcher, domain)
                stored = sum(1 for r in results if r.outcome == "stored")
                if stored:
                    logger.info("poll %s: stored %d new statements", domain, stored)
            except RateLimited:
                continue
            except ProtocolError as exc:
                logger.warning("poll %s failed: %s", domain, exc)


def _gossip_loop(runtime: NodeRuntime) -> None:
    settings = runtime.settings
    rng = random.Random()
    client = httpx.Client(timeout=settings.timeout_seconds)
    clients = {
        peer_url: http_pull_client(peer_url, client)
        for peer_url in settings.peers
    }
    try:
        while not runtime.stop_event.wait(settings.gossip_interval_seconds):
            report = runtime.node.gossip_round(rng, clients)
            if report.stored_total:
                logger.info(
                    "gossip round: %d new statements from %s",
                    report.stored_total,
                    report.selected,
                )
    finally:
        client.close()


def build_runtime(settings: NodeSettings) -> NodeRuntime:
    store = SqliteStore(settings.store_path)
    node = Node(
        store,
        own_domain=settings.own_domain,
        reputation=ReputationPolicy(
            alpha=settings.reputation_alpha,
            threshold=settings.reputation_threshold,
            initial=settings.reputation_initial,
        ),
        fanout=settings.fanout,
        batch_limit=settings.batch_limit,
        max_batches_per_pull=settings.max_batches_per_pull,
        max_statement_bytes=settings.max_statement_bytes,
    )
    for peer_url in settings.peers:
        node.add_peer(peer_url)
    fetcher = StatementFetcher(
        timeout=settings.timeout_seconds,
        max_file_bytes=settings.max_file_bytes,
        max_pdf_bytes=settings.max_pdf_bytes,
        min_poll_interval=settings.poll_interval_seconds,
        ca_bundle=settings.ca_bundle,
        https_port=settings.https_port,
    )
    app = create_app(node, operator_token=settings.operator_token, ui_dir=settings.ui_dir)
    runtime = NodeRuntime(
        settings=settings, store=store, node=node, fetcher=fetcher, app=app
    )
    if settings.seed_domains:
        runtime.threads.append(
            threading.Thread(target=_poll_loop, args=(runtime,), daemon=True, name="poll-loop")
        )
    if settings.peers:
        runtime.threads.append(
            threading.Thread(target=_gossip_loop, args=(runtime,), daemon=True, name="gossip-loop")
        )
    runtime.start_background()
    return runtime

"""Shared record and pool factories for the test suite."""
from __future__ import annotations

import pytest

from ufesim.pools import PoolScope, ServePoolSet, build_pools
from ufesim.records import Role, ServeRecord, TerminalKind

K = TerminalKind
S, R = Role.SERVER, Role.RECEIVER


def make_record(
    server: str = "Ann Ace",
    receiver: str = "Bob Base",
    kind: TerminalKind = K.ACE,
    touch: int = 1,
    winner: Role | None = S,
    committer: Role | None = None,
    serve_number: int = 1,
    fault: bool = False,
    match_id: str | None = None,
    year: int | None = 2019,
    tour: str | None = "ATP",
) -> ServeRecord:
    if match_id is None:
        match_id = (
            f"{year or 2019}0101-M-Testopen-F-"
            f"{server.replace(' ', '_')}-{receiver.replace(' ', '_')}"
        )
    return ServeRecord(
        match_id=match_id,
        server_id=server,
        receiver_id=receiver,
        serve_number=serve_number,
        is_first_serve_fault=fault,
        terminal_touch=touch,
        terminal_kind=kind,
        point_winner=winner,
        error_committer=committer,
        year=year,
        tour=tour,
    )


def serve_mix(server: str, receiver: str) -> list[ServeRecord]:
    """A plausible spread of outcomes for one server."""
    return [
        *[make_record(server, receiver, K.ACE, 1, S)] * 4,
        *[make_record(server, receiver, K.SERVICE_WINNER, 1, S)] * 2,
        *[make_record(server, receiver, K.RALLY_WINNER, 3, S)] * 3,
        *[make_record(server, receiver, K.RALLY_WINNER, 2, R)] * 3,
        *[make_record(server, receiver, K.FORCED_ERROR, 2, S, committer=R)] * 2,
        *[make_record(server, receiver, K.UNFORCED_ERROR, 3, R, committer=S)] * 3,
        *[make_record(server, receiver, K.UNFORCED_ERROR, 4, S, committer=R)] * 2,
        *[make_record(server, receiver, K.FIRST_SERVE_FAULT, 1, None, fault=True)] * 6,
        *[make_record(server, receiver, K.DOUBLE_FAULT, 1, R, serve_number=2)] * 1,
        *[make_record(server, receiver, K.RALLY_WINNER, 2, R, serve_number=2)] * 2,
        *[make_record(server, receiver, K.UNFORCED_ERROR, 2, S, committer=R, serve_number=2)] * 2,
        *[make_record(server, receiver, K.RALLY_WINNER, 3, S, serve_number=2)] * 2,
    ]


@pytest.fixture
def two_player_records() -> list[ServeRecord]:
    a, b = "Ann Ace", "Bob Base"
    return serve_mix(a, b) + serve_mix(b, a)


@pytest.fixture
def mixed_pools(two_player_records) -> ServePoolSet:
    return build_pools(
        two_player_records, "Ann Ace", "Bob Base", PoolScope.HEAD_TO_HEAD
    )

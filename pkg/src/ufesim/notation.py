"""Decoder for Match Charting Project shot notation.

A point string is: optional let marks, one serve direction digit, then
either a fault/terminal for the serve or a sequence of rally shots ending
in a terminal marker.  Reference key (MCP charting convention):

  serve direction   0 unknown, 4 wide, 5 body, 6 down the T
  serve-and-volley  '+' directly after the direction digit
  lets              'c', repeated once per let, before the direction
  fault letters     n net, w wide, d deep, x wide+deep, g foot fault,
                    e unknown, ! shank
  rally shots       f b r s v z o p u y l m h i j k t q (one contact each)
  shot annotations  direction 1-3 (0 unknown), return depth 7-9
  shot modifiers    '+' approach, '-' at net, '=' at baseline, ';' net cord
  error detail      n w d x e ! on the final errant shot
  terminal marks    '*' winner, '@' unforced error, '#' forced error
                    ('*'/'#' directly after the serve: ace / service winner)

The serve is touch 1, so the parity of the terminal touch identifies the
player who hit the final ball: odd touches belong to the server.
"""
from __future__ import annotations

from typing import NamedTuple

from .errors import NotationError
from .records import Role, TerminalKind, opponent_role

SERVE_DIRECTIONS = frozenset("0456")
FAULT_LETTERS = frozenset("nwdxge!")
RALLY_SHOTS = frozenset("fbrsvzopuylmhijktq")
SHOT_ANNOTATIONS = frozenset("0123789")
SHOT_MODIFIERS = frozenset("+-=;")
ERROR_DETAILS = frozenset("nwdxe!")
TERMINALS = frozenset("*@#")


class ParsedPoint(NamedTuple):
    terminal_touch: int
    terminal_kind: TerminalKind
    error_committer: Role | None
    point_winner: Role | None


def _committer(touch: int) -> Role:
    # Odd touches are the server's contacts, even touches the receiver's.
    return Role.SERVER if touch % 2 == 1 else Role.RECEIVER


def parse_shot_notation(notation: str, serve_number: int) -> ParsedPoint:
    """Decode one serve's notation into (touch, kind, committer, winner).

    serve_number tells fault handling apart: a bare fault is a
    first_serve_fault for serve 1 and a double_fault for serve 2.
    Raises NotationError for anything outside the key above.
    """
    if serve_number not in (1, 2):
        raise ValueError(f"serve_number must be 1 or 2, got {serve_number}")
    s = notation.strip()
    if not s:
        raise NotationError("empty notation", notation=notation, offset=0)

    i = 0
    while i < len(s) and s[i] == "c":  # lets replay the same serve; skip them
        i += 1
    if i >= len(s):
        raise NotationError("nothing after let marks", notation=notation, offset=i)
    if s[i] not in SERVE_DIRECTIONS:
        raise NotationError(
            f"expected a serve direction digit, found {s[i]!r}", notation=notation, offset=i
        )
    i += 1
    if i < len(s) and s[i] == "+":  # serve-and-volley intent
        i += 1

    if i < len(s) and s[i] in FAULT_LETTERS:
        while i < len(s) and s[i] in FAULT_LETTERS:
            i += 1
        if i != len(s):
            raise NotationError(
                f"unexpected {s[i]!r} after a serve fault", notation=notation, offset=i
            )
        if serve_number == 1:
            return ParsedPoint(1, TerminalKind.FIRST_SERVE_FAULT, None, None)
        return ParsedPoint(1, TerminalKind.DOUBLE_FAULT, None, Role.RECEIVER)

    touch = 1
    while i < len(s):
        ch = s[i]
        if ch in TERMINALS:
            if i != len(s) - 1:
                raise NotationError(
                    f"characters after terminal marker {ch!r}", notation=notation, offset=i + 1
                )
            return _terminal(ch, touch, notation, i)
        if ch in RALLY_SHOTS:
            touch += 1
        elif ch in SHOT_ANNOTATIONS or ch in SHOT_MODIFIERS or ch in ERROR_DETAILS:
            pass
        else:
            raise NotationError(f"unrecognized shot code {ch!r}", notation=notation, offset=i)
        i += 1

    raise NotationError("missing terminal marker", notation=notation, offset=len(s))


def _terminal(mark: str, touch: int, notation: str, offset: int) -> ParsedPoint:
    if mark == "*":
        if touch == 1:
            return ParsedPoint(1, TerminalKind.ACE, None, Role.SERVER)
        return ParsedPoint(touch, TerminalKind.RALLY_WINNER, None, _committer(touch))
    if mark == "#":
        if touch == 1:
            return ParsedPoint(1, TerminalKind.SERVICE_WINNER, None, Role.SERVER)
        who = _committer(touch)
        return ParsedPoint(touch, TerminalKind.FORCED_ERROR, who, opponent_role(who))
    # '@'
    if touch == 1:
        raise NotationError(
            "unforced error marker on the serve itself", notation=notation, offset=offset
        )
    who = _committer(touch)
    return ParsedPoint(touch, TerminalKind.UNFORCED_ERROR, who, opponent_role(who))

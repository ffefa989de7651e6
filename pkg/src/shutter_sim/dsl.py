"""Text formats: timed stimulus scenarios and behavior tree descriptions.

Scenario files are line oriented::

    scenario solo ticks 40
    @0 person_appear id=1 x=1.0 y=0.5
    @5 button yes
    # a comment
    @30 person_leave id=1

Tree files are brace structured and whitespace insensitive::

    fallback root {
      sequence wait {
        condition no_person
        action idle
      }
      ...
    }

A ``*`` after sequence/fallback marks the memory variant; ``guard(cond) name``
wraps exactly one child; ``action name dur=N`` overrides the step count.
Syntax errors raise ParseError with a 1-based line/column pointing at the
first offending character; referential problems raise ValidationError.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bt
from .errors import ParseError, ValidationError
from .world import Event

_EVENT_WORDS = "person_appear|person_move|person_leave|button|hazard|network"
_NODE_WORDS = "sequence|fallback|parallel|guard|condition|action"


@dataclass(frozen=True)
class ScenarioScript:
    """A named, fixed-duration stimulus timeline, events sorted by tick."""

    name: str
    duration: int
    events: tuple[Event, ...]


# --- scenario format ---------------------------------------------------------


class _LineScanner:
    """Single-line cursor with 1-based column reporting."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line = line_no
        self.pos = 0

    @property
    def column(self) -> int:
        return self.pos + 1

    def skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def fail(self, message: str, expected: str | None = None) -> ParseError:
        return ParseError(self.line, self.column, message, expected)

    def expect_char(self, ch: str) -> None:
        self.skip_spaces()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise self.fail(f"expected {ch!r}", expected=ch)
        self.pos += 1

    def ident(self, what: str) -> str:
        self.skip_spaces()
        start = self.pos
        if start >= len(self.text) or not (self.text[start].isalpha() or self.text[start] == "_"):
            raise self.fail(f"expected {what}", expected="identifier")
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def keyword(self, word: str) -> None:
        self.skip_spaces()
        col = self.column
        got = self.ident(f"keyword {word!r}")
        if got != word:
            raise ParseError(self.line, col, f"expected {word!r}, got {got!r}", expected=word)

    def choice(self, options: tuple[str, ...], what: str) -> str:
        self.skip_spaces()
        col = self.column
        got = self.ident(what)
        if got not in options:
            raise ParseError(self.line, col, f"unknown {what} {got!r}", expected="|".join(options))
        return got

    def integer(self, what: str) -> int:
        self.skip_spaces()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError(self.line, start + 1, f"expected {what}", expected="integer")
        return int(self.text[start:self.pos])

    def floating(self, what: str) -> float:
        self.skip_spaces()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError(self.line, start + 1, f"expected {what}", expected="number")
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            self.pos += 1
            frac = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == frac:
                raise ParseError(self.line, self.column, "expected digits after decimal point",
                                 expected="digit")
        return float(self.text[start:self.pos])

    def key(self, name: str) -> None:
        self.keyword(name)
        self.expect_char("=")

    def end(self) -> None:
        self.skip_spaces()
        if self.pos < len(self.text):
            raise self.fail("unexpected trailing input", expected="end of line")


def parse_scenario(text: str) -> ScenarioScript:
    """Parse and validate a scenario; events come back stably sorted by tick."""
    lines = text.split("\n")
    first = 0  # comments and blank lines may precede the header
    while first < len(lines) and (not lines[first].strip() or lines[first].lstrip().startswith("#")):
        first += 1
    header = _LineScanner(lines[first] if first < len(lines) else "", min(first + 1, len(lines)) or 1)
    header.keyword("scenario")
    name = header.ident("scenario name")
    header.keyword("ticks")
    duration = header.integer("tick count")
    header.end()

    events: list[Event] = []
    for line_no, raw in enumerate(lines[first + 1:], start=first + 2):
        scanner = _LineScanner(raw, line_no)
        scanner.skip_spaces()
        if scanner.pos >= len(raw) or raw[scanner.pos] == "#":
            continue
        scanner.expect_char("@")
        at_tick = scanner.integer("tick")
        kind = scanner.choice(tuple(_EVENT_WORDS.split("|")), "event")
        if kind in ("person_appear", "person_move"):
            scanner.key("id")
            pid = scanner.integer("person id")
            scanner.key("x")
            x = scanner.floating("x coordinate")
            scanner.key("y")
            y = scanner.floating("y coordinate")
            events.append(Event(at_tick, kind, person_id=pid, x=x, y=y))
        elif kind == "person_leave":
            scanner.key("id")
            pid = scanner.integer("person id")
            events.append(Event(at_tick, kind, person_id=pid))
        elif kind == "button":
            button = scanner.choice(("yes", "no", "aux"), "button")
            events.append(Event(at_tick, "button_press", button=button))
        elif kind == "hazard":
            word = scanner.choice(("on", "off"), "hazard switch")
            events.append(Event(at_tick, f"hazard_{word}"))
        else:  # network
            word = scanner.choice(("down", "up"), "network switch")
            events.append(Event(at_tick, "network_down" if word == "down" else "network_up"))
        scanner.end()

    events.sort(key=lambda ev: ev.at_tick)  # stable: file order within a tick
    script = ScenarioScript(name, duration, tuple(events))
    _validate_scenario(script)
    return script


def _validate_scenario(script: ScenarioScript) -> None:
    if script.duration < 1:
        raise ValidationError(f"scenario {script.name!r} needs a positive duration")
    present: set[int] = set()
    for ev in script.events:
        if ev.at_tick >= script.duration:
            raise ValidationError(f"event at {ev.at_tick} beyond duration {script.duration}")
        if ev.kind == "person_appear":
            if ev.person_id in present:
                raise ValidationError(f"person {ev.person_id} already present at tick {ev.at_tick}")
            present.add(ev.person_id)
        elif ev.kind in ("person_move", "person_leave"):
            if ev.person_id not in present:
                raise ValidationError(f"unknown person {ev.person_id} at tick {ev.at_tick}")
            if ev.kind == "person_leave":
                present.discard(ev.person_id)


# --- tree format -------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident" | "int" | "sym" | "eof"
    text: str
    line: int
    column: int


def _tokenize_tree(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
        elif ch in " \t\r":
            col, i = col + 1, i + 1
        elif ch in "{}()*=":
            tokens.append(_Token("sym", ch, line, col))
            col, i = col + 1, i + 1
        elif ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(_Token("ident", text[start:i], line, start_col))
        elif ch.isdigit():
            start = i
            start_col = col
            while i < len(text) and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(_Token("int", text[start:i], line, start_col))
        else:
            raise ParseError(line, col, f"unexpected character {ch!r}", expected=_NODE_WORDS)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _TreeParser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect_sym(self, ch: str) -> None:
        tok = self.advance()
        if tok.kind != "sym" or tok.text != ch:
            raise ParseError(tok.line, tok.column, f"expected {ch!r}", expected=ch)

    def expect_ident(self, what: str) -> _Token:
        tok = self.advance()
        if tok.kind != "ident":
            raise ParseError(tok.line, tok.column, f"expected {what}", expected="identifier")
        return tok

    def parse_node(self) -> bt.Node:
        tok = self.advance()
        if tok.kind != "ident":
            raise ParseError(tok.line, tok.column, "expected a node", expected=_NODE_WORDS)
        if tok.text in ("sequence", "fallback"):
            memory = False
            if self.peek().kind == "sym" and self.peek().text == "*":
                self.advance()
                memory = True
            name = self.expect_ident("node name").text
            children = self.parse_children(tok)
            cls = bt.Sequence if tok.text == "sequence" else bt.Fallback
            return cls(name, children, memory=memory)
        if tok.text == "parallel":
            name = self.expect_ident("node name").text
            return bt.Parallel(name, self.parse_children(tok))
        if tok.text == "guard":
            self.expect_sym("(")
            condition = self.expect_ident("guard condition").text
            self.expect_sym(")")
            name = self.expect_ident("node name").text
            self.expect_sym("{")
            child = self.parse_node()
            self.expect_sym("}")
            return bt.Guard(condition, name, child)
        if tok.text == "condition":
            return bt.Condition(self.expect_ident("condition name").text)
        if tok.text == "action":
            name = self.expect_ident("behavior name").text
            duration = None
            nxt = self.peek()
            if nxt.kind == "ident" and nxt.text == "dur":
                self.advance()
                self.expect_sym("=")
                dur_tok = self.advance()
                if dur_tok.kind != "int":
                    raise ParseError(dur_tok.line, dur_tok.column, "expected a duration",
                                     expected="integer")
                duration = int(dur_tok.text)
            return bt.Action(name, duration=duration)
        raise ParseError(tok.line, tok.column, f"unknown node kind {tok.text!r}",
                         expected=_NODE_WORDS)

    def parse_children(self, opener: _Token) -> list[bt.Node]:
        self.expect_sym("{")
        closer = self.peek()
        if closer.kind == "sym" and closer.text == "}":
            raise ParseError(closer.line, closer.column,
                             "composite requires at least one child", expected=_NODE_WORDS)
        children = []
        while not (self.peek().kind == "sym" and self.peek().text == "}"):
            if self.peek().kind == "eof":
                tok = self.peek()
                raise ParseError(tok.line, tok.column, "unexpected end of input", expected="}")
            children.append(self.parse_node())
        self.advance()  # the closing brace
        return children


def parse_tree(text: str) -> bt.Node:
    """Parse a tree description; names stay unresolved until validate_tree."""
    parser = _TreeParser(_tokenize_tree(text))
    root = parser.parse_node()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise ParseError(trailing.line, trailing.column, "unexpected input after tree",
                         expected="end of input")
    return root


def print_tree(root: bt.Node) -> str:
    """Canonical rendering: two-space indent, one node per line, reparseable."""
    lines: list[str] = []

    def walk(node: bt.Node, depth: int) -> None:
        pad = "  " * depth
        if isinstance(node, bt.Condition):
            lines.append(f"{pad}condition {node.condition_name}")
        elif isinstance(node, bt.Action):
            suffix = f" dur={node.duration_override}" if node.duration_override is not None else ""
            lines.append(f"{pad}action {node.behavior_name}{suffix}")
        elif isinstance(node, bt.Guard):
            lines.append(f"{pad}guard({node.condition_name}) {node.name} {{")
            walk(node.child, depth + 1)
            lines.append(f"{pad}}}")
        else:
            star = "*" if getattr(node, "memory", False) else ""
            lines.append(f"{pad}{node.kind}{star} {node.name} {{")
            for child in node.children:
                walk(child, depth + 1)
            lines.append(f"{pad}}}")

    walk(root, 0)
    return "\n".join(lines) + "\n"

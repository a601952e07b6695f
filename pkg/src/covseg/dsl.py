"""Text format for sessions: one cover, cuspidal declarations and named multisegments.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    session  := cover decl*
    cover    := "cover" ( "KP" "n=" INT "a=" INT | "S" "n=" INT )
    decl     := "cuspidal" IDENT "r0=" INT "l=" INT
              | "m" IDENT "=" seg ("+" seg)*
    seg      := "[" INT "," INT "]" "_" IDENT

Example::

    cover KP n=2 a=0
    cuspidal rho1 r0=1 l=1
    m M1 = [0,2]_rho1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .covers import CoverSpec
from .errors import CovsegError, InvariantError
from .segments import CuspidalDatum, Multisegment, Segment, check_cuspidal

__all__ = ["Session", "DslError", "parse", "dump", "parse_multisegment"]


class DslError(CovsegError):
    def __init__(self, line: int, col: int, reason: str) -> None:
        super().__init__(f"line {line}, column {col}: {reason}")
        self.line = line
        self.col = col
        self.reason = reason


@dataclass
class Session:
    cover: CoverSpec
    cuspidals: dict[str, CuspidalDatum] = field(default_factory=dict)
    multisegments: dict[str, Multisegment] = field(default_factory=dict)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[\[\],_+=])
    """,
    re.VERBOSE,
)

KEYWORDS = ("cover", "cuspidal", "m")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo is None:
            raise DslError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = mo.lastgroup
        chunk = mo.group()
        if kind != "ws":
            toks.append(_Tok(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = mo.end()
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        lines = text.split("\n")
        self.eof = (len(lines), len(lines[-1]) + 1)

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, reason: str, tok: _Tok | None = None) -> DslError:
        tok = tok if tok is not None else self.peek()
        if tok is None:
            return DslError(*self.eof, reason)
        return DslError(tok.line, tok.col, reason)

    def next(self, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error(f"unexpected end of input, expected {what}")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next(repr(text))
        if tok.text != text:
            raise self.error(f"expected {text!r}, got {tok.text!r}", tok)
        return tok

    def integer(self) -> int:
        tok = self.next("an integer")
        if tok.kind != "int":
            raise self.error(f"expected an integer, got {tok.text!r}", tok)
        return int(tok.text)

    def ident(self) -> _Tok:
        tok = self.next("an identifier")
        if tok.kind != "ident":
            raise self.error(f"expected an identifier, got {tok.text!r}", tok)
        return tok

    def keyed_int(self, key: str) -> int:
        self.expect(key)
        self.expect("=")
        return self.integer()

    def session(self) -> Session:
        tok = self.peek()
        if tok is None:
            raise self.error("no cover declared")
        if tok.text != "cover":
            raise self.error("no cover declared: a session must start with 'cover'")
        session = Session(self.cover())
        while (tok := self.peek()) is not None:
            if tok.text == "cuspidal":
                self.cuspidal(session)
            elif tok.text == "m":
                self.multisegment(session)
            elif tok.text == "cover":
                raise self.error("duplicate cover declaration")
            else:
                raise self.error(f"expected 'cuspidal' or 'm', got {tok.text!r}")
        return session

    def cover(self) -> CoverSpec:
        self.expect("cover")
        fam = self.next("'KP' or 'S'")
        if fam.text == "KP":
            n = self.keyed_int("n")
            a = self.keyed_int("a")
        elif fam.text == "S":
            n = self.keyed_int("n")
            a = None
        else:
            raise self.error(f"unknown cover family {fam.text!r}", fam)
        if n < 1:
            raise self.error(f"cover degree must be positive, got {n}", fam)
        return CoverSpec(fam.text, n, a)

    def cuspidal(self, session: Session) -> None:
        self.expect("cuspidal")
        name = self.ident()
        if name.text in session.cuspidals:
            raise self.error(f"duplicate cuspidal id {name.text!r}", name)
        r0 = self.keyed_int("r0")
        l = self.keyed_int("l")
        try:
            rho = CuspidalDatum(name.text, r0, l)
            check_cuspidal(rho, session.cover)
        except InvariantError as exc:
            raise self.error(str(exc), name) from None
        session.cuspidals[name.text] = rho

    def multisegment(self, session: Session) -> None:
        self.expect("m")
        name = self.ident()
        if name.text in session.multisegments:
            raise self.error(f"duplicate multisegment name {name.text!r}", name)
        self.expect("=")
        segs = [self.segment(session)]
        while (tok := self.peek()) is not None and tok.text == "+":
            self.i += 1
            segs.append(self.segment(session))
        session.multisegments[name.text] = Multisegment(segs)

    def segment(self, session: Session) -> Segment:
        start = self.expect("[")
        a = self.integer()
        self.expect(",")
        b = self.integer()
        self.expect("]")
        self.expect("_")
        rid = self.ident()
        if rid.text not in session.cuspidals:
            raise self.error(f"unknown cuspidal id {rid.text!r}", rid)
        if b < a:
            raise self.error(f"malformed segment [{a},{b}]: right endpoint below left", start)
        return Segment(session.cuspidals[rid.text], a, b)


def parse(text: str) -> Session:
    """Parse and validate a session; errors carry line and column."""
    return _Parser(text).session()


def parse_multisegment(text: str, session: Session) -> Multisegment:
    """Parse ``seg + seg + ...`` against the cuspidal data of ``session``."""
    if text.strip() == "[]":
        return Multisegment()
    p = _Parser(text)
    segs = [p.segment(session)]
    while (tok := p.peek()) is not None and tok.text == "+":
        p.i += 1
        segs.append(p.segment(session))
    if p.peek() is not None:
        raise p.error(f"trailing input {p.peek().text!r}")
    return Multisegment(segs)


def _lines(session: Session) -> Iterator[str]:
    c = session.cover
    yield f"cover KP n={c.n} a={c.a}" if c.is_kp else f"cover S n={c.n}"
    for rho in session.cuspidals.values():
        yield f"cuspidal {rho.id} r0={rho.r0} l={rho.l}"
    for name, m in session.multisegments.items():
        yield f"m {name} = {m}"


def dump(session: Session) -> str:
    """Inverse of :func:`parse` (up to whitespace and comments)."""
    return "\n".join(_lines(session)) + "\n"

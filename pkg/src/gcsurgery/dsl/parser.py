"""Scenario scripts: a line-oriented language, its AST, and a printer.

::

    # X(4)
    block X = product_surfaces(2, 2)
    perturb X T5 T6 T7 T8
    surgery X T1 (0,1,1)
    expect X pi1 trivial
    expect X homeo "1(S2xS2)"

``#`` starts a comment outside double quotes.  ``external NAME { ... }`` opens a
multi-line block declaration that ``block B = external(NAME)`` instantiates.
Columns in diagnostics are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..blocks import BLOCK_KINDS, Geometry
from ..errors import GCSurgeryError
from ..invariants import Tri

EXPECT_KEYS = ("pi1", "e", "sigma", "b1", "b2", "loci", "spin", "twist", "homeo",
               "almost_complex")
ASSERT_FACTS = {"sphere_square_zero": False, "sphere_brane": False, "claim_homeo": True}

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"


class ScenarioSyntaxError(GCSurgeryError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# AST


@dataclass(frozen=True)
class Block:
    name: str
    kind: str
    args: tuple[Union[int, str], ...] = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Perturb:
    name: str
    tori: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Surgery:
    name: str
    torus: str
    coefficients: tuple[int, int, int]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sum:
    name: str
    left: str
    left_torus: str
    right: str
    right_torus: str
    ident: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BlowUp:
    name: str
    count: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BlowDown:
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assert:
    name: str
    fact: str
    value: str | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Expect:
    name: str
    key: str
    value: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SurfaceLine:
    id: str
    genus: int
    m: str
    l: str
    mu: str
    tag: Geometry
    loops: tuple[str, ...] = ()


@dataclass(frozen=True)
class External:
    name: str
    gens: tuple[str, ...] = ()
    rels: tuple[str, ...] = ()
    surfaces: tuple[SurfaceLine, ...] = ()
    euler: int | None = None
    signature: int | None = None
    form: tuple[int, int, int] | None = None
    spin: Tri = Tri.UNKNOWN
    trust: tuple[str, ...] = ()
    line: int = field(default=0, compare=False)


Directive = Union[Block, Perturb, Surgery, Sum, BlowUp, BlowDown, Assert, Expect, External]


@dataclass(frozen=True)
class ScenarioScript:
    name: str
    directives: tuple[Directive, ...] = ()

    def count(self, kind: type) -> int:
        return sum(isinstance(d, kind) for d in self.directives)


# lexing helpers


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


class _Line:
    """Cursor over one source line."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ScenarioSyntaxError:
        return ScenarioSyntaxError(message, self.lineno, (self.pos if pos is None else pos) + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, pattern: str, what: str) -> str:
        self.skip_ws()
        m = re.compile(pattern).match(self.text, self.pos)
        if not m:
            found = self.text[self.pos:self.pos + 12] or "end of line"
            raise self.error(f"expected {what}, found {found!r}")
        self.pos = m.end()
        return m.group(0)

    def ident(self, what: str = "name") -> str:
        return self.match(_IDENT, what)

    def integer(self, what: str = "integer") -> int:
        return int(self.match(r"[+-]?\d+", what))

    def symbol(self, sym: str):
        self.match(re.escape(sym), repr(sym))

    def string(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.peek() != '"':
            raise self.error("expected a quoted string")
        end = self.text.find('"', self.pos + 1)
        if end < 0:
            raise self.error("unterminated string", start)
        self.pos = end + 1
        return self.text[start + 1:end]

    def rest(self) -> str:
        self.skip_ws()
        out = self.text[self.pos:].strip()
        self.pos = len(self.text)
        return out

    def finish(self):
        if not self.at_end():
            raise self.error(f"unexpected trailing text {self.text[self.pos:].strip()!r}")


def _split_top(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets; returns (piece, offset) pairs."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


# directive parsers


def _parse_block(c: _Line) -> Block:
    name = c.ident("state name")
    c.symbol("=")
    c.skip_ws()
    kpos = c.pos
    kind = c.ident("block kind")
    if kind not in BLOCK_KINDS:
        raise c.error(f"unknown block kind {kind!r}", kpos)
    args: list[Union[int, str]] = []
    c.symbol("(")
    if c.peek() != ")":
        while True:
            if re.match(r"[+-]?\d", c.text[c.pos:].lstrip()):
                args.append(c.integer())
            else:
                args.append(c.ident("block argument"))
            if c.peek() == ",":
                c.symbol(",")
                continue
            break
    c.symbol(")")
    c.finish()
    return Block(name, kind, tuple(args), c.lineno)


def _parse_perturb(c: _Line) -> Perturb:
    name = c.ident("state name")
    bracket = c.peek() == "["
    if bracket:
        c.symbol("[")
    tori = []
    while not c.at_end() and c.peek() != "]":
        tori.append(c.ident("torus id"))
        if c.peek() == ",":
            c.symbol(",")
    if bracket:
        c.symbol("]")
    c.finish()
    return Perturb(name, tuple(tori), c.lineno)


def _parse_surgery(c: _Line) -> Surgery:
    name = c.ident("state name")
    torus = c.ident("torus id")
    c.skip_ws()
    open_pos = c.pos
    c.symbol("(")
    close = c.text.find(")", c.pos)
    if close < 0:
        raise c.error("unterminated coefficient tuple", open_pos)
    inner = c.text[c.pos:close]
    parts = _split_top(inner)
    if len(parts) != 3:
        raise c.error(f"surgery coefficients need 3 entries (p,q,r), found {len(parts)}", open_pos)
    values = []
    for text, off in parts:
        if not re.fullmatch(r"\s*[+-]?\d+\s*", text):
            raise c.error(f"coefficient {text.strip()!r} is not an integer",
                          c.pos + off + (len(text) - len(text.lstrip())))
        values.append(int(text))
    c.pos = close + 1
    c.finish()
    return Surgery(name, torus, tuple(values), c.lineno)


def _parse_sum(c: _Line) -> Sum:
    name = c.ident("state name")
    c.symbol("=")
    left = c.ident("state name")
    c.symbol(".")
    lt = c.ident("torus id")
    c.symbol("~")
    right = c.ident("state name")
    c.symbol(".")
    rt = c.ident("torus id")
    c.skip_ws()
    brace = c.pos
    c.symbol("{")
    close = c.text.rfind("}")
    if close < c.pos:
        raise c.error("unterminated identification map", brace)
    body = c.text[c.pos:close]
    ident = []
    if body.strip():
        for text, off in _split_top(body):
            m = re.fullmatch(rf"\s*({_IDENT})\s*=\s*(\S.*?)\s*", text)
            if not m:
                raise c.error(f"malformed identification {text.strip()!r}", c.pos + off)
            ident.append((m.group(1), m.group(2)))
    c.pos = close + 1
    c.finish()
    return Sum(name, left, lt, right, rt, tuple(ident), c.lineno)


def _parse_assert(c: _Line) -> Assert:
    name = c.ident("state name")
    c.skip_ws()
    fpos = c.pos
    fact = c.ident("fact")
    if fact not in ASSERT_FACTS:
        raise c.error(f"unknown assertion {fact!r}", fpos)
    value = None
    if ASSERT_FACTS[fact]:
        value = c.string()
    c.finish()
    return Assert(name, fact, value, c.lineno)


def _parse_expect(c: _Line) -> Expect:
    name = c.ident("state name")
    c.skip_ws()
    kpos = c.pos
    key = c.ident("expectation key")
    if key not in EXPECT_KEYS:
        raise c.error(f"unknown expectation key {key!r}", kpos)
    if c.peek() == '"':
        value = c.string()
        c.finish()
    else:
        value = c.rest()
    if not value:
        raise c.error("missing expected value")
    return Expect(name, key, value, c.lineno)


def _word_field(c: _Line, key: str) -> str:
    c.match(rf"{key}\s*=", f"{key}=")
    return c.match(r"\S+", f"word for {key}")


def _parse_external_body(name: str, lines: list[_Line], head: _Line) -> External:
    gens: list[str] = []
    rels: list[str] = []
    surfaces: list[SurfaceLine] = []
    values: dict = {"euler": None, "signature": None, "form": None, "spin": Tri.UNKNOWN}
    trust: list[str] = []
    for c in lines:
        kpos = c.pos
        kw = c.ident("declaration keyword")
        if kw == "gens":
            while not c.at_end():
                gens.append(c.ident("generator name"))
        elif kw == "rel":
            text = c.rest()
            if not text:
                raise c.error("empty relator")
            rels.append(text)
        elif kw in ("torus", "surface"):
            sid = c.ident("surface id")
            genus = 1
            fields = {"m": "1", "l": "1", "mu": "1"}
            loops: tuple[str, ...] = ()
            tag = None
            while not c.at_end():
                c.skip_ws()
                kp = c.pos
                k = c.ident("field")
                if k in fields:
                    c.pos = kp
                    fields[k] = _word_field(c, k)
                elif k == "genus":
                    c.symbol("=")
                    genus = c.integer("genus")
                elif k == "loops":
                    c.symbol("=")
                    loops = tuple(x for x in c.match(r"\S+", "loop list").split(",") if x)
                elif k in ("symplectic", "lagrangian"):
                    tag = Geometry(k)
                else:
                    raise c.error(f"unknown {kw} field {k!r}", kp)
            if kw == "torus" and genus != 1:
                raise c.error("a torus has genus 1")
            if tag is None:
                raise c.error(f"{kw} {sid} needs 'symplectic' or 'lagrangian'")
            surfaces.append(SurfaceLine(sid, genus, fields["m"], fields["l"], fields["mu"], tag,
                                        loops))
        elif kw in ("euler", "signature"):
            values[kw] = c.integer(kw)
        elif kw == "form":
            values["form"] = (c.integer("hyperbolic count"), c.integer("<1> count"),
                              c.integer("<-1> count"))
        elif kw == "spin":
            values["spin"] = Tri(c.match(r"yes|no|unknown", "yes/no/unknown"))
        elif kw == "trust":
            trust.append(c.string())
        else:
            raise c.error(f"unknown declaration keyword {kw!r}", kpos)
        c.finish()
    return External(name, tuple(gens), tuple(rels), tuple(surfaces), values["euler"],
                    values["signature"], values["form"], values["spin"], tuple(trust),
                    head.lineno)


_PARSERS = {
    "block": _parse_block,
    "perturb": _parse_perturb,
    "surgery": _parse_surgery,
    "sum": _parse_sum,
    "blowup": lambda c: BlowUp(c.ident("state name"), c.integer("count"), c.lineno),
    "blowdown": lambda c: BlowDown(c.ident("state name"), c.lineno),
    "assert": _parse_assert,
    "expect": _parse_expect,
}


def parse_scenario(text: str, name: str = "scenario") -> ScenarioScript:
    lines = [_Line(_strip_comment(raw), i + 1) for i, raw in enumerate(text.splitlines())]
    directives: list[Directive] = []
    i = 0
    while i < len(lines):
        c = lines[i]
        i += 1
        if c.at_end():
            continue
        kpos = c.pos
        kw = c.match(r"[A-Za-z_]+", "directive")
        if kw == "external":
            ename = c.ident("declaration name")
            c.skip_ws()
            brace = c.pos
            c.symbol("{")
            c.finish()
            body = []
            while True:
                if i >= len(lines):
                    raise c.error(f"external {ename} is missing its closing '}}'", brace)
                inner = lines[i]
                i += 1
                if inner.at_end():
                    continue
                if inner.peek() == "}":
                    inner.symbol("}")
                    inner.finish()
                    break
                body.append(inner)
            directives.append(_parse_external_body(ename, body, c))
            continue
        parser = _PARSERS.get(kw)
        if parser is None:
            raise c.error(f"unknown directive {kw!r}", kpos)
        d = parser(c)
        if isinstance(d, (BlowUp, BlowDown)):
            c.finish()
        directives.append(d)
    return ScenarioScript(name, tuple(directives))


# printer


def _quote(value: str) -> str:
    if '"' in value:
        raise ValueError(f"value {value!r} contains a double quote")
    return f'"{value}"'


def format_directive(d: Directive) -> str:
    if isinstance(d, Block):
        return f"block {d.name} = {d.kind}({', '.join(str(a) for a in d.args)})"
    if isinstance(d, Perturb):
        return " ".join(["perturb", d.name, *d.tori])
    if isinstance(d, Surgery):
        p, q, r = d.coefficients
        return f"surgery {d.name} {d.torus} ({p},{q},{r})"
    if isinstance(d, Sum):
        body = ", ".join(f"{k}={v}" for k, v in d.ident)
        return f"sum {d.name} = {d.left}.{d.left_torus} ~ {d.right}.{d.right_torus} {{{body}}}"
    if isinstance(d, BlowUp):
        return f"blowup {d.name} {d.count}"
    if isinstance(d, BlowDown):
        return f"blowdown {d.name}"
    if isinstance(d, Assert):
        tail = f" {_quote(d.value)}" if d.value is not None else ""
        return f"assert {d.name} {d.fact}{tail}"
    if isinstance(d, Expect):
        return f"expect {d.name} {d.key} {_quote(d.value)}"
    if isinstance(d, External):
        out = [f"external {d.name} {{"]
        if d.gens:
            out.append("  gens " + " ".join(d.gens))
        out += [f"  rel {r}" for r in d.rels]
        for s in d.surfaces:
            kw = "torus" if s.genus == 1 else "surface"
            parts = [f"  {kw} {s.id}"]
            if s.genus != 1:
                parts.append(f"genus={s.genus}")
            parts += [f"m={s.m}", f"l={s.l}", f"mu={s.mu}"]
            if s.loops:
                parts.append("loops=" + ",".join(s.loops))
            parts.append(s.tag.value)
            out.append(" ".join(parts))
        if d.euler is not None:
            out.append(f"  euler {d.euler}")
        if d.signature is not None:
            out.append(f"  signature {d.signature}")
        if d.form is not None:
            out.append("  form " + " ".join(str(x) for x in d.form))
        if d.spin is not Tri.UNKNOWN:
            out.append(f"  spin {d.spin.value}")
        out += [f"  trust {_quote(t)}" for t in d.trust]
        out.append("}")
        return "\n".join(out)
    raise TypeError(f"not a directive: {d!r}")


def format_scenario(script: ScenarioScript) -> str:
    return "".join(format_directive(d) + "\n" for d in script.directives)

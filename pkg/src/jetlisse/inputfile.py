"""Line-oriented job files with ``[presentation]``, ``[brackets]``, ``[lie_algebra]``,
``[virasoro]`` and ``[options]`` sections.

Example::

    [presentation]
    names: e h f
    relation: e
    relation: h

    [lie_algebra]
    builtin: sl2

    [brackets]
    {e,f} = h

Blank lines and ``#`` comments are ignored.  Every error carries a line and
column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import ParseError, Polynomial, VarId, parse
from .diffalg import Presentation
from .models.affine import BUILTINS, LieAlgebraData, LieAlgebraError, abelian
from .vpa import PoissonStructure

SECTIONS = ("presentation", "brackets", "lie_algebra", "virasoro", "options")
OPTION_KEYS = ("order", "cutoff", "samples", "seed", "max-weight", "format", "root", "power",
               "level", "central-charge", "kind", "h")


class InputError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "<input>"):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        super().__init__(self.render())

    def render(self) -> str:
        if self.line:
            return f"{self.source}:{self.line}:{self.col}: {self.message}"
        return f"{self.source}: {self.message}"


@dataclass
class JobInput:
    text: str = ""
    source: str = "<input>"
    presentation: Optional[Presentation] = None
    brackets: Optional[PoissonStructure] = None
    lie_algebra: Optional[LieAlgebraData] = None
    virasoro: dict[str, str] = field(default_factory=dict)
    options: dict[str, str] = field(default_factory=dict)
    names: dict[str, VarId] = field(default_factory=dict)

    def display_names(self) -> dict[VarId, str]:
        return {v: n for n, v in self.names.items()}


@dataclass
class _Line:
    no: int
    col: int
    key: str
    value: str
    value_col: int
    raw: str


_KEYVAL = re.compile(r"^(\s*)([A-Za-z_][A-Za-z0-9_-]*)\s*:\s*(.*?)\s*$")
_BRACKET = re.compile(r"^(\s*)\{\s*([^,{}]+?)\s*,\s*([^,{}]+?)\s*\}\s*=\s*(.*?)\s*$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_job(text: str, source: str = "<input>") -> JobInput:
    job = JobInput(text=text, source=source)
    sections: dict[str, list[_Line]] = {}
    header_line: dict[str, int] = {}
    current: Optional[str] = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        mt = re.match(r"^\s*\[\s*([A-Za-z_]+)\s*\]\s*$", line)
        if mt:
            name = mt.group(1).lower()
            if name not in SECTIONS:
                raise InputError(f"unknown section [{name}]", no, line.index("[") + 1, source)
            if name in sections:
                raise InputError(f"duplicate section [{name}]", no, 1, source)
            sections[name] = []
            header_line[name] = no
            current = name
            continue
        if current is None:
            raise InputError("content before the first [section] header", no, 1, source)
        mb = _BRACKET.match(line)
        if current == "brackets" and mb:
            sections[current].append(_Line(no, len(mb.group(1)) + 1, "{}",
                                           f"{mb.group(2)}\x00{mb.group(3)}\x00{mb.group(4)}",
                                           mb.start(4) + 1, raw))
            continue
        mk = _KEYVAL.match(line)
        if not mk:
            raise InputError("expected 'key: value'" + (" or '{a,b} = poly'" if current == "brackets"
                                                         else ""),
                             no, len(line) - len(line.lstrip()) + 1, source)
        sections[current].append(_Line(no, len(mk.group(1)) + 1, mk.group(2).lower(),
                                       mk.group(3), mk.start(3) + 1, raw))

    # names first, so polynomials in any section may use them
    if "lie_algebra" in sections:
        job.lie_algebra = _lie(sections["lie_algebra"], source)
    if "presentation" in sections:
        job.presentation = _presentation(sections["presentation"], job, source,
                                         header_line["presentation"])
    if "brackets" in sections:
        job.brackets = _brackets(sections["brackets"], job, source, header_line["brackets"])
    if "virasoro" in sections:
        for ln in sections["virasoro"]:
            if ln.key not in ("c", "central-charge", "kind", "h", "cutoff"):
                raise InputError(f"unknown [virasoro] key {ln.key!r}", ln.no, ln.col, source)
            job.virasoro[ln.key] = ln.value
    if "options" in sections:
        for ln in sections["options"]:
            if ln.key not in OPTION_KEYS:
                raise InputError(f"unknown option {ln.key!r}", ln.no, ln.col, source)
            job.options[ln.key] = ln.value
    return job


def _int(ln: _Line, source: str, lo: int = 0) -> int:
    try:
        v = int(ln.value)
    except ValueError:
        raise InputError(f"{ln.key} must be an integer", ln.no, ln.value_col, source) from None
    if v < lo:
        raise InputError(f"{ln.key} must be >= {lo}", ln.no, ln.value_col, source)
    return v


def _names(ln: _Line, source: str) -> tuple[str, ...]:
    names = tuple(ln.value.split())
    for n in names:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", n) or re.fullmatch(r"x\d+_\d+", n):
            raise InputError(f"invalid generator name {n!r}", ln.no, ln.value_col, source)
    if len(set(names)) != len(names):
        raise InputError("duplicate generator name", ln.no, ln.value_col, source)
    return names


def _poly(text: str, ln: _Line, col: int, job: JobInput, source: str) -> Polynomial:
    try:
        return parse(text, job.names)
    except ParseError as exc:
        raise InputError(exc.message, ln.no, col + exc.pos, source) from None


def _register_names(job: JobInput, names: tuple[str, ...], ln: _Line, source: str) -> None:
    new = {n: VarId(i, 1) for i, n in enumerate(names, start=1)}
    for n, v in new.items():
        if n in job.names and job.names[n] != v:
            raise InputError(f"name {n!r} conflicts with an earlier section", ln.no, ln.value_col,
                             source)
    job.names.update(new)


def _presentation(lines: list[_Line], job: JobInput, source: str, header: int) -> Presentation:
    r = None
    names: tuple[str, ...] = ()
    for ln in lines:
        if ln.key == "generators":
            r = _int(ln, source, 1)
        elif ln.key == "names":
            names = _names(ln, source)
            _register_names(job, names, ln, source)
        elif ln.key != "relation":
            raise InputError(f"unknown [presentation] key {ln.key!r}", ln.no, ln.col, source)
    if r is None:
        r = len(names) or (job.lie_algebra.dimension if job.lie_algebra else None)
        if r is None:
            raise InputError("[presentation] needs 'generators:' or 'names:'", header, 1, source)
    if names and len(names) != r:
        raise InputError(f"{len(names)} names for {r} generators", header, 1, source)
    if not names and job.lie_algebra and job.lie_algebra.dimension == r:
        names = job.lie_algebra.names
    rels = []
    for ln in lines:
        if ln.key != "relation":
            continue
        p = _poly(ln.value, ln, ln.value_col, job, source)
        for v in p.variables():
            if v.level != 1 or v.gen > r:
                raise InputError(f"relation uses {v}; only x1_1..x{r}_1 are base generators",
                                 ln.no, ln.value_col, source)
        rels.append(p)
    return Presentation(r, tuple(rels), names)


def _gen_index(token: str, ln: _Line, job: JobInput, r: int, source: str) -> int:
    token = token.strip()
    if token.isdigit():
        idx = int(token)
    elif token in job.names:
        idx = job.names[token].gen
    else:
        mt = re.fullmatch(r"x(\d+)_1", token)
        if not mt:
            raise InputError(f"unknown generator {token!r}", ln.no, ln.col, source)
        idx = int(mt.group(1))
    if not 1 <= idx <= r:
        raise InputError(f"generator {token!r} outside 1..{r}", ln.no, ln.col, source)
    return idx


def _brackets(lines: list[_Line], job: JobInput, source: str, header: int) -> PoissonStructure:
    r = None
    for ln in lines:
        if ln.key == "generators":
            r = _int(ln, source, 1)
        elif ln.key == "names":
            names = _names(ln, source)
            _register_names(job, names, ln, source)
            r = r or len(names)
        elif ln.key != "{}":
            raise InputError(f"unknown [brackets] key {ln.key!r}", ln.no, ln.col, source)
    if r is None:
        if job.presentation:
            r = job.presentation.num_generators
        elif job.lie_algebra:
            r = job.lie_algebra.dimension
        else:
            raise InputError("[brackets] needs 'generators:' or 'names:'", header, 1, source)
    entries: dict[tuple[int, int], Polynomial] = {}
    for ln in lines:
        if ln.key != "{}":
            continue
        a_tok, b_tok, poly_text = ln.value.split("\x00")
        a = _gen_index(a_tok, ln, job, r, source)
        b = _gen_index(b_tok, ln, job, r, source)
        p = _poly(poly_text, ln, ln.value_col, job, source)
        for v in p.variables():
            if v.level != 1 or v.gen > r:
                raise InputError(f"bracket value uses {v}", ln.no, ln.value_col, source)
        key = (a, b)
        if key in entries or (b, a) in entries:
            raise InputError(f"bracket {{{a_tok},{b_tok}}} given twice", ln.no, ln.col, source)
        entries[key] = p
    try:
        return PoissonStructure.from_entries(r, entries)
    except ValueError as exc:
        raise InputError(str(exc), header, 1, source) from None


def _lie(lines: list[_Line], source: str) -> LieAlgebraData:
    names: tuple[str, ...] = ()
    dim = None
    builtin = None
    for ln in lines:
        if ln.key == "builtin":
            builtin = ln
        elif ln.key == "names":
            names = _names(ln, source)
        elif ln.key == "dimension":
            dim = _int(ln, source, 1)
        elif ln.key != "constant":
            raise InputError(f"unknown [lie_algebra] key {ln.key!r}", ln.no, ln.col, source)
    if builtin is not None:
        val = builtin.value.strip()
        mt = re.fullmatch(r"abelian\s+(\d+)", val)
        if mt:
            return abelian(int(mt.group(1)))
        if val not in BUILTINS:
            raise InputError(f"unknown builtin Lie algebra {val!r} (known: "
                             f"{', '.join(sorted(BUILTINS))}, abelian N)",
                             builtin.no, builtin.value_col, source)
        return BUILTINS[val]()
    if not names:
        if dim is None:
            raise InputError("[lie_algebra] needs 'builtin:', 'names:' or 'dimension:'",
                             lines[0].no if lines else 0, 1, source)
        names = tuple(f"x{i}" for i in range(1, dim + 1))
    if dim is not None and dim != len(names):
        raise InputError(f"dimension {dim} but {len(names)} names", lines[0].no, 1, source)
    index = {n: i for i, n in enumerate(names, start=1)}
    triples = []
    for ln in lines:
        if ln.key != "constant":
            continue
        parts = ln.value.split()
        if len(parts) != 4:
            raise InputError("constant needs 'i j k value'", ln.no, ln.value_col, source)
        idx = []
        for tok in parts[:3]:
            if tok in index:
                idx.append(index[tok])
            elif tok.isdigit() and 1 <= int(tok) <= len(names):
                idx.append(int(tok))
            else:
                raise InputError(f"unknown basis element {tok!r}", ln.no, ln.value_col, source)
        try:
            val = Fraction(parts[3])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad structure constant {parts[3]!r}", ln.no, ln.value_col,
                             source) from None
        triples.append((*idx, val))
    try:
        return LieAlgebraData.from_triples(names, triples)
    except LieAlgebraError as exc:
        raise InputError(str(exc), lines[0].no if lines else 0, 1, source) from None

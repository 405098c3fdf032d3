"""Text formats for tables, representations, algebras, graphs and Cartan data.

All formats are line oriented with ``#`` comments.  Parsers report the
line and column of the first offending token; printers emit a canonical
form that parses back to an equal value.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .builders import BipartiteSpec, CartanData
from .cells import CellStructure
from .errors import ParseError, SemanticError
from .findim import FinDimAlgebra
from .multitable import Gen, MultiTable
from .scalars import QQ, FieldSpec, Scalar, format_scalar, parse_field, parse_scalar
from .tworep import RepDiagram, RepMatrices

DATA = "twocat.data"


def _lines(text: str) -> Iterator[tuple[int, str, int]]:
    """Yield (line number, stripped content, column offset) for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        s = body.strip()
        if s:
            yield no, s, len(body) - len(body.lstrip()) + 1


def _keyword(s: str) -> tuple[str, str] | None:
    m = re.match(r"([A-Za-z_][\w ]*?)\s*:\s*(.*)$", s)
    if m and "*" not in m.group(1) and "=" not in m.group(1):
        return m.group(1), m.group(2)
    return None


# linear combinations -------------------------------------------------------

_NAME = r"[A-Za-z_]\w*"
_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<paren>\([^()]*\))|(?P<num>\d+(?:/\d+)?))?"
    r"\s*\*?\s*(?P<name>" + _NAME + r")?\s*"
)


def parse_combination(text: str, names: Iterable[str], spec: FieldSpec | None = None,
                      line: int = 0, col: int = 1, integral: bool = False) -> dict[str, object]:
    """Parse ``2 sts + s``, ``-x2 - (1/2+T) xy`` or ``0`` into {name: coefficient}."""
    known = set(names)
    out: dict[str, object] = {}
    s = text.rstrip()
    if s.strip() == "0":
        return out
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected {s[pos:pos + 8]!r}", line, col + pos)
        if not first and m.group("sign") is None:
            raise ParseError("expected '+' or '-' between terms", line, col + pos)
        name = m.group("name")
        if name is None:
            raise ParseError("expected a generator name", line, col + m.end())
        if name not in known:
            raise SemanticError(f"unknown name {name!r}", line)
        coeff: object
        if m.group("paren"):
            if integral:
                raise ParseError("integer multiplicity expected", line, col + m.start("paren"))
            try:
                coeff = parse_scalar(m.group("paren")[1:-1], spec or QQ)
            except ValueError as exc:
                raise ParseError(str(exc), line, col + m.start("paren")) from None
        elif m.group("num"):
            coeff = Fraction(m.group("num"))
            if integral and coeff.denominator != 1:
                raise ParseError("integer multiplicity expected", line, col + m.start("num"))
        else:
            coeff = Fraction(1)
        if m.group("sign") == "-":
            if integral:
                raise ParseError("multiplicities must be non-negative", line, col + m.start("sign"))
            coeff = -coeff
        if name in out:
            raise ParseError(f"{name!r} appears twice", line, col + m.start("name"))
        out[name] = int(coeff) if integral else coeff
        pos = m.end()
        first = False
    return {k: v for k, v in out.items() if v}


def format_combination(combo: Mapping[str, object], order: Iterable[str]) -> str:
    parts = []
    for name in order:
        c = combo.get(name)
        if not c:
            continue
        if isinstance(c, Scalar) and c.b:
            parts.append(("+ " if parts else "") + f"({format_scalar(c)}) {name}")
            continue
        c = Fraction(c.to_fraction() if isinstance(c, Scalar) else c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = name if mag == 1 else f"{mag} {name}"
        if parts:
            parts.append(f"{sign} {body}")
        else:
            parts.append(("-" if c < 0 else "") + body)
    return " ".join(parts) if parts else "0"


# tables -----------------------------------------------------------------------

_GEN = re.compile(r"\s*(" + _NAME + r")\s*:\s*(\w+)\s*->\s*(\w+)\s*$")
_PRODUCT = re.compile(r"(" + _NAME + r")\s*\*\s*(" + _NAME + r")\s*=(.*)$")


def parse_table(text: str, name: str = "") -> MultiTable:
    objects: list[str] | None = None
    gens: list[Gen] = []
    ids: dict[str, str] = {}
    star: dict[str, str] | None = None
    table: dict = {}
    where: dict = {}
    for no, s, col in _lines(text):
        kw = _keyword(s)
        if kw and kw[0] == "objects":
            objects = kw[1].split()
            if not objects:
                raise ParseError("no objects listed", no, col)
        elif kw and kw[0] == "gens":
            if objects is None:
                raise ParseError("'gens:' before 'objects:'", no, col)
            for piece in kw[1].split(","):
                m = _GEN.match(piece)
                if not m:
                    raise ParseError(f"expected 'name:source->target', got {piece.strip()!r}",
                                     no, col + s.find(piece.strip()))
                g, a, b = m.groups()
                if a not in objects or b not in objects:
                    raise SemanticError(f"generator {g} uses an unknown object", no)
                if any(x.name == g for x in gens):
                    raise ParseError(f"generator {g} declared twice", no, col)
                gens.append(Gen(g, a, b))
        elif kw and kw[0] == "star":
            star = {}
            names = {g.name for g in gens}
            for piece in kw[1].split(","):
                m = re.match(r"\s*(" + _NAME + r")\s*<->\s*(" + _NAME + r")\s*$", piece)
                if not m:
                    raise ParseError(f"expected 'F<->G', got {piece.strip()!r}", no, col)
                a, b = m.groups()
                for x in (a, b):
                    if x not in names:
                        raise SemanticError(f"star mentions unknown generator {x!r}", no)
                for x, y in ((a, b), (b, a)):
                    if star.get(x, y) != y:
                        raise SemanticError(f"star image of {x} given twice", no)
                    star[x] = y
        elif s.startswith("id "):
            m = re.match(r"id\s+(\w+)\s*=\s*(" + _NAME + r")\s*$", s)
            if not m:
                raise ParseError("expected 'id <object> = <generator>'", no, col)
            o, g = m.groups()
            if objects is None or o not in objects:
                raise SemanticError(f"unknown object {o!r}", no)
            if g not in {x.name for x in gens}:
                raise SemanticError(f"unknown generator {g!r}", no)
            ids[o] = g
        else:
            m = _PRODUCT.match(s)
            if not m:
                raise ParseError("expected 'F * G = ...' or a 'key:' line", no, col)
            F, G, rhs = m.groups()
            names = [g.name for g in gens]
            for x in (F, G):
                if x not in names:
                    raise SemanticError(f"product line references unknown generator {x!r}", no)
            if (F, G) in table:
                raise ParseError(f"duplicate product line for {F} * {G} (first on line {where[(F, G)]})",
                                 no, col)
            table[(F, G)] = parse_combination(rhs, names, line=no, col=col + m.start(3),
                                              integral=True)
            where[(F, G)] = no
    if objects is None or not gens:
        raise ParseError("missing 'objects:' or 'gens:' line", 0, 0)
    for o in objects:
        if o not in ids:
            raise SemanticError(f"object {o!r} has no identity line")
    srcs = {g.name: g for g in gens}
    for F in srcs:
        for G in srcs:
            if srcs[F].source != srcs[G].target:
                if (F, G) in table:
                    raise SemanticError(f"{F} * {G} is not composable", where[(F, G)])
                continue
            if (F, G) not in table:
                if F in ids.values():
                    table[(F, G)] = {G: 1}
                elif G in ids.values():
                    table[(F, G)] = {F: 1}
                else:
                    raise SemanticError(f"no product line for {F} * {G}")
    return MultiTable(objects, gens, ids, table, star, name=name)


def print_table(t: MultiTable) -> str:
    out = [f"objects: {' '.join(t.objects)}",
           "gens: " + ", ".join(f"{g.name}:{g.source}->{g.target}" for g in t.gens)]
    for o in t.objects:
        out.append(f"id {o} = {t.identities[o]}")
    if t.star is not None:
        done, pairs = set(), []
        for F in t.names:
            if F not in done:
                G = t.star[F]
                done.update((F, G))
                pairs.append(f"{F}<->{G}")
        out.append("star: " + ", ".join(pairs))
    for F, G in t.composable_pairs():
        if t.is_identity(F) or t.is_identity(G):
            continue
        out.append(f"{F} * {G} = {format_combination(t.compose(F, G), t.names)}")
    return "\n".join(out) + "\n"


# representations -------------------------------------------------------------

def _matrix(text: str, no: int, col: int) -> list[list[int]]:
    try:
        M = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad matrix: {exc.msg}", no, col + exc.colno - 1) from None
    if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
        raise ParseError("matrix must be a list of rows", no, col)
    for r in M:
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise ParseError(f"matrix entries must be non-negative integers, got {x!r}", no, col)
    return M


def parse_rep(text: str, table: MultiTable | None = None, base_dir: Path | None = None,
              name: str = "") -> RepMatrices:
    basis: list[tuple[str, str]] = []
    mats: dict[str, list] = {}
    for no, s, col in _lines(text):
        kw = _keyword(s)
        if kw and kw[0] == "table":
            if table is None:
                table = load_table(kw[1].strip(), base_dir)
        elif kw and kw[0].startswith("basis"):
            parts = kw[0].split()
            if len(parts) != 2:
                raise ParseError("expected 'basis <object>: labels'", no, col)
            for lab in kw[1].split(","):
                lab = lab.strip()
                if not re.fullmatch(r"\w+", lab):
                    raise ParseError(f"bad label {lab!r}", no, col)
                basis.append((lab, parts[1]))
        elif s.startswith("mat "):
            m = re.match(r"mat\s+(" + _NAME + r")\s*=\s*(.*)$", s)
            if not m:
                raise ParseError("expected 'mat <gen> = [[...]]'", no, col)
            g = m.group(1)
            if table is None:
                raise ParseError("'table:' must come before matrices", no, col)
            if g not in table:
                raise SemanticError(f"matrix for unknown generator {g!r}", no)
            if g in mats:
                raise ParseError(f"duplicate matrix for {g}", no, col)
            M = _matrix(m.group(2), no, col + m.start(2))
            if len(M) != len(basis) or any(len(r) != len(basis) for r in M):
                raise SemanticError(f"matrix for {g} is not {len(basis)}x{len(basis)}", no)
            mats[g] = M
        else:
            raise ParseError("expected 'table:', 'basis <obj>:' or 'mat' line", no, col)
    if table is None:
        raise ParseError("missing 'table:' line")
    objs = {o for _, o in basis}
    bad = objs - set(table.objects)
    if bad:
        raise SemanticError(f"basis uses unknown objects {sorted(bad)}")
    try:
        return RepMatrices(table, basis, mats, name)
    except ValueError as exc:
        raise SemanticError(str(exc)) from None


def print_rep(r: RepMatrices, table_ref: str = "") -> str:
    out = [f"table: {table_ref or r.table.name}"]
    for o in dict.fromkeys(o for _, o in r.basis):
        out.append(f"basis {o}: " + ", ".join(l for l, x in r.basis if x == o))
    for F in r.table.names:
        out.append(f"mat {F} = " + json.dumps(r.mats[F], separators=(",", ":")))
    return "\n".join(out) + "\n"


# algebras ----------------------------------------------------------------------

def parse_algebra(text: str, name: str = "") -> FinDimAlgebra:
    spec: FieldSpec = QQ
    dim = None
    names: list[str] = []
    unit = None
    idems: list[dict] = []
    gens: list[dict] | None = None
    products: dict = {}
    pending: list[tuple[int, int, str, str, str]] = []
    for no, s, col in _lines(text):
        kw = _keyword(s)
        if kw and kw[0] == "field":
            try:
                spec = parse_field(kw[1])
            except Exception as exc:  # noqa: BLE001 - reported with position
                raise ParseError(str(exc), no, col) from None
        elif kw and kw[0] == "dim":
            if not kw[1].strip().isdigit():
                raise ParseError("dim must be a positive integer", no, col)
            dim = int(kw[1])
        elif kw and kw[0] == "basis":
            names = kw[1].split()
            if len(set(names)) != len(names):
                raise ParseError("duplicate basis names", no, col)
        elif kw and kw[0] in ("unit", "idem", "gens"):
            pending.append((no, col, kw[0], kw[1], ""))
        else:
            m = _PRODUCT.match(s)
            if not m:
                raise ParseError("expected 'b_i * b_j = ...' or a 'key:' line", no, col)
            pending.append((no, col + m.start(3), "product", m.group(3), f"{m.group(1)}|{m.group(2)}"))
    if not names:
        raise ParseError("missing 'basis:' line")
    if dim is not None and dim != len(names):
        raise SemanticError(f"dim {dim} does not match {len(names)} basis names")
    pos = {b: i for i, b in enumerate(names)}
    for no, col, kind, body, extra in pending:
        if kind == "product":
            a, b = extra.split("|")
            for x in (a, b):
                if x not in pos:
                    raise SemanticError(f"unknown basis element {x!r}", no)
            if (a, b) in products:
                raise ParseError(f"duplicate product line for {a} * {b}", no, col)
            products[(a, b)] = parse_combination(body, names, spec, no, col)
        else:
            if kind == "gens":
                gens = [parse_combination(g, names, spec, no, col) for g in body.split(";")]
            elif kind == "unit":
                unit = parse_combination(body, names, spec, no, col)
            else:
                idems.append(parse_combination(body, names, spec, no, col))
    if unit is None:
        raise SemanticError("missing 'unit:' line")
    d = len(names)
    struct = [[{pos[k]: v for k, v in products.get((a, b), {}).items()} for b in names] for a in names]

    def vec(c):
        return [c.get(x, 0) for x in names]

    A = FinDimAlgebra(spec, names, struct, vec(unit), [vec(e) for e in idems] or None,
                      [vec(g) for g in gens] if gens else None, name)
    bad = A.check()
    if bad:
        raise SemanticError(f"structure constants fail: {bad[0]}")
    assert A.dim == d
    return A


def print_algebra(A: FinDimAlgebra) -> str:
    out = [f"field: {A.field.text()}", f"dim: {A.dim}", "basis: " + " ".join(A.names)]

    def combo(v):
        return format_combination({A.names[i]: c for i, c in enumerate(v) if c}, A.names)

    out.append("unit: " + combo(A.unit))
    for e in A.idempotents:
        out.append("idem: " + combo(e))
    if A.generators != [A.basis_vector(i) for i in range(A.dim)]:
        out.append("gens: " + "; ".join(combo(g) for g in A.generators))
    for i, a in enumerate(A.names):
        for j, b in enumerate(A.names):
            p = A.struct[i][j]
            if p:
                out.append(f"{a} * {b} = " + format_combination({A.names[k]: c for k, c in p.items()}, A.names))
    return "\n".join(out) + "\n"


# graphs and Cartan data -----------------------------------------------------------

def parse_graph(text: str) -> BipartiteSpec:
    part0: list[str] | None = None
    part1: list[str] = []
    edges: list[tuple[str, str]] = []
    eta: dict = {}
    for no, s, col in _lines(text):
        kw = _keyword(s)
        if kw and kw[0] == "parts":
            if "|" not in kw[1]:
                raise ParseError("expected 'parts: v1 v2 | w1 w2'", no, col)
            left, right = kw[1].split("|", 1)
            part0, part1 = left.split(), right.split()
        elif s.startswith("edge"):
            m = re.match(r"edge\s+(\w+)\s+(\w+)\s+eta\s*=\s*(\d+)\s*$", s)
            if not m:
                raise ParseError("expected 'edge <v> <w> eta=<k>'", no, col)
            if part0 is None:
                raise ParseError("'parts:' must come first", no, col)
            v, w, k = m.group(1), m.group(2), int(m.group(3))
            if v not in part0 or w not in part1:
                raise SemanticError(f"edge ({v}, {w}) must join part 0 to part 1", no)
            if (v, w) in eta:
                raise ParseError(f"duplicate edge ({v}, {w})", no, col)
            edges.append((v, w))
            eta[(v, w)] = k
        else:
            raise ParseError("expected 'parts:' or 'edge' line", no, col)
    if part0 is None:
        raise ParseError("missing 'parts:' line")
    return BipartiteSpec(tuple(part0), tuple(part1), tuple(edges), eta)


def print_graph(g: BipartiteSpec) -> str:
    out = [f"parts: {' '.join(g.part0)} | {' '.join(g.part1)}"]
    out += [f"edge {v} {w} eta={g.eta[(v, w)]}" for v, w in g.edges]
    return "\n".join(out) + "\n"


def parse_dims(text: str) -> CartanData:
    rows: list[list[int]] = []
    selfinj = False
    for no, s, col in _lines(text):
        kw = _keyword(s)
        if kw and kw[0] == "selfinjective":
            v = kw[1].strip().lower()
            if v not in ("true", "false", "yes", "no"):
                raise ParseError("selfinjective must be true or false", no, col)
            selfinj = v in ("true", "yes")
            continue
        row = []
        for tok in re.finditer(r"\S+", s):
            if not tok.group().isdigit():
                raise ParseError(f"expected a non-negative integer, got {tok.group()!r}", no, col + tok.start())
            row.append(int(tok.group()))
        rows.append(row)
    try:
        return CartanData(tuple(map(tuple, rows)), selfinj)
    except ValueError as exc:
        raise SemanticError(str(exc)) from None


def print_dims(c: CartanData) -> str:
    out = [f"selfinjective: {'true' if c.selfinjective else 'false'}"]
    out += [" ".join(map(str, row)) for row in c.dims]
    return "\n".join(out) + "\n"


# loading -------------------------------------------------------------------------

def bundled_path(filename: str) -> Path:
    return Path(str(resources.files(DATA).joinpath(filename)))


def bundled_files() -> list[str]:
    return sorted(p.name for p in resources.files(DATA).iterdir() if not p.name.startswith("_"))


def resolve_path(ref: str, base_dir: Path | None = None) -> Path:
    """A local path, else a file relative to base_dir, else a bundled data file."""
    p = Path(ref)
    if base_dir is not None and not p.is_absolute() and (base_dir / p).exists():
        return base_dir / p
    if p.exists():
        return p
    b = bundled_path(ref)
    if b.exists():
        return b
    raise FileNotFoundError(f"{ref}: no such file, and no bundled data file of that name")


def load_table(ref: str, base_dir: Path | None = None) -> MultiTable:
    p = resolve_path(ref, base_dir)
    return parse_table(p.read_text(encoding="utf-8"), name=p.stem)


def load_bundled_table(filename: str) -> MultiTable:
    return parse_table(bundled_path(filename).read_text(encoding="utf-8"), name=Path(filename).stem)


def load_bundled_algebra(filename: str) -> FinDimAlgebra:
    return parse_algebra(bundled_path(filename).read_text(encoding="utf-8"), name=Path(filename).stem)


def load_rep(path: str | Path, table: MultiTable | None = None) -> RepMatrices:
    p = Path(path)
    return parse_rep(p.read_text(encoding="utf-8"), table, p.parent, p.stem)


def file_hash(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# emitters --------------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(d: RepDiagram | CellStructure, name: str = "G", decorated: bool = True) -> str:
    """Deterministic DOT; edges point upwards in the order, labelled by sorted decorations."""
    if isinstance(d, CellStructure):
        groups, edges, labels = d.cells, d.hasse, {}
    else:
        groups, edges = d.classes, d.hasse
        labels = d.decorations if decorated else {}
    out = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, g in enumerate(groups):
        out.append(f"  n{i} [label={_quote('{' + ', '.join(g) + '}')}];")
    for i, j in sorted(edges):
        lab = labels.get((i, j))
        attr = f" [label={_quote('{' + ', '.join(sorted(lab)) + '}')}]" if lab else ""
        out.append(f"  n{i} -> n{j}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


@dataclass
class Report:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    results: list[dict] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)

    def add(self, check: str, ok: bool, witness=None) -> None:
        self.results.append({"check": check, "status": "pass" if ok else "fail", "witness": witness})

    @property
    def ok(self) -> bool:
        return all(r["status"] == "pass" for r in self.results)

    def to_dict(self) -> dict:
        return {"schema": 1, "command": self.command, "inputs": dict(sorted(self.inputs.items())),
                "results": self.results, "certificates": self.certificates}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=_jsonable)

    def lines(self) -> list[str]:
        return [f"{r['status'].upper():4}  {r['check']}" for r in self.results]


def _jsonable(x):
    if isinstance(x, Scalar):
        return format_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")

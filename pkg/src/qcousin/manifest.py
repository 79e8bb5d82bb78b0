"""Line-oriented problem manifests.

A manifest is a sequence of sections. Blank lines and ``#`` comments are ignored::

    [problem]
    field = generic_q          # rationals | generic_q | cyclotomic:<m>
    n = 1
    command = cousin           # hilbert | sections | cohomology | cousin | verify | oracle-compare
    format = json              # json | csv

    [module M]
    generators = 0             # generator degrees, comma separated
    relation = x2*e            # a relation column written as a module element
    relation(2) = x1^2*e       # optionally with its declared degree

    [map f]
    source = F
    target = M
    shift = 0
    image e1 = x1*e            # one line per generator of the source

    [ses]
    maps = f, g                # 0 -> A -f-> B -g-> C -> 0

    [parameters]
    module = M
    filtration = 1, 0
    pole_max = 2
    degrees = 0..3

Every diagnostic carries the line and column of the offending token and a field path.
"""

import re
from dataclasses import dataclass, field as dc_field

from .errors import ConfigurationError, ParseError, QCousinError, ValidationError
from .modpres import ModuleMap, PresentedModule
from .scalar import field_from_spec
from .skewalg import QuantumAlgebra
from .textform import parse_vector

__all__ = ["Manifest", "ModuleDecl", "MapDecl", "parse_manifest", "serialize_manifest", "load_manifest", "DEFAULTS"]

COMMANDS = ("hilbert", "sections", "cohomology", "cousin", "verify", "oracle-compare")
FORMATS = ("json", "csv")
DEFAULTS = {"pole_max": 4, "window": 2, "semantics": "ideal", "mode": "certified", "t_max": 4, "seed": 0}
PARAM_KEYS = (
    "module",
    "filtration",
    "semantics",
    "mode",
    "pole_max",
    "window",
    "degrees",
    "z",
    "z1",
    "z2",
    "t_max",
    "claims",
    "seed",
)
CLAIMS = ("l1", "l2", "l3", "l4", "l5", "l6", "l7", "b1", "b2", "emu", "bbiri", "props")

_HEADER = re.compile(r"^\[\s*([A-Za-z][\w-]*)(?:\s+([A-Za-z_]\w*))?\s*\]$")
_ENTRY = re.compile(r"^([A-Za-z_]\w*)(?:\(\s*(-?\d+)\s*\))?(?:\s+([A-Za-z_]\w*))?\s*=\s*(.*)$")


@dataclass
class Line:
    text: str
    line: int
    column: int


@dataclass
class ModuleDecl:
    name: str
    generators: tuple
    relations: list = dc_field(default_factory=list)  # (text, declared degree or None)


@dataclass
class MapDecl:
    name: str
    source: str
    target: str
    shift: int = 0
    images: dict = dc_field(default_factory=dict)  # generator index (1-based) -> text


@dataclass
class Manifest:
    field: str
    n: int
    command: str
    format: str = "json"
    modules: dict = dc_field(default_factory=dict)
    maps: dict = dc_field(default_factory=dict)
    ses: tuple = None
    parameters: dict = dc_field(default_factory=dict)
    # source positions for diagnostics (excluded from equality)
    positions: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def param(self, key):
        return self.parameters.get(key, DEFAULTS.get(key))

    def effective_parameters(self):
        out = dict(DEFAULTS)
        out.update(self.parameters)
        return out

    # object construction
    def algebra(self):
        return QuantumAlgebra(self.n, field_from_spec(self.field))

    def build(self):
        """Presented modules and module maps; semantic errors become ParseErrors."""
        alg = self.algebra()
        mods = {}
        for name, decl in self.modules.items():
            rank = len(decl.generators)
            cols = []
            degs = []
            for j, (text, deg) in enumerate(decl.relations):
                path = f"module {name} / relation {j + 1}"
                pos = self.positions.get(path)
                try:
                    vec = parse_vector(alg, rank, text)
                except ParseError as exc:
                    raise _located(exc, pos, path) from None
                cols.append(vec)
                degs.append(deg)
            try:
                if any(d is not None for d in degs):
                    for j, (v, d) in enumerate(zip(cols, degs)):
                        if d is None or not v:
                            continue
                        got = {sum(a) + decl.generators[t] for (t, a) in v}
                        if got != {d}:
                            shown = sorted(got)[0] if len(got) == 1 else sorted(got)
                            raise ValidationError(
                                f"relation column {j + 1} of module {name} has degree {shown}, declared {d}"
                            )
                mods[name] = PresentedModule(alg, decl.generators, cols, name=name)
            except ValidationError as exc:
                msg = str(exc)
                bad = re.search(r"relation (?:column )?(\d+)", msg)
                path = f"module {name} / relation {bad.group(1)}" if bad else f"module {name}"
                if bad and "column" not in msg:
                    msg = msg.replace(f"relation {bad.group(1)}", f"relation column {bad.group(1)}", 1)
                    msg = f"module {name}: {msg}"
                raise ParseError(msg, *self._pos(path), path=path) from None
        maps = {}
        for name, decl in self.maps.items():
            path = f"map {name}"
            for key in ("source", "target"):
                ref = getattr(decl, key)
                if ref not in mods:
                    raise ParseError(f"map {name}: unknown {key} module {ref!r}", *self._pos(f"{path} / {key}"), path=f"{path} / {key}")
            src, tgt = mods[decl.source], mods[decl.target]
            images = []
            for s in range(1, src.rank + 1):
                ipath = f"{path} / image e{s}"
                if s not in decl.images:
                    raise ParseError(f"map {name}: missing image of generator e{s}", *self._pos(path), path=ipath)
                try:
                    images.append(parse_vector(alg, tgt.rank, decl.images[s]))
                except ParseError as exc:
                    raise _located(exc, self.positions.get(ipath), ipath) from None
            extra = set(decl.images) - set(range(1, src.rank + 1))
            if extra:
                raise ParseError(f"map {name}: source has no generator e{min(extra)}", *self._pos(path), path=path)
            try:
                maps[name] = ModuleMap(src, tgt, images, decl.shift, name=name)
            except ValidationError as exc:
                raise ParseError(f"map {name}: {exc}", *self._pos(path), path=path) from None
        if self.ses is not None:
            for m in self.ses:
                if m not in maps:
                    raise ParseError(f"ses: unknown map {m!r}", *self._pos("ses"), path="ses")
            f, g = maps[self.ses[0]], maps[self.ses[1]]
            if f.target is not g.source:
                raise ParseError("ses: the maps are not composable", *self._pos("ses"), path="ses")
        name = self.parameters.get("module")
        if name is not None and name not in mods:
            raise ParseError(f"parameters: unknown module {name!r}", *self._pos("parameters / module"), path="parameters / module")
        return alg, mods, maps

    def _pos(self, path):
        p = self.positions.get(path)
        return (p.line, p.column) if p else (None, None)


def _located(exc, pos, path):
    if pos is None:
        return ParseError(exc.bare_message, exc.line, exc.column, path)
    col = pos.column + (exc.column - 1 if exc.column else 0)
    return ParseError(exc.bare_message, pos.line, col, path)


def _int(value, pos, path):
    try:
        return int(value.strip())
    except ValueError:
        raise ParseError(f"expected an integer, found {value.strip()!r}", pos.line, pos.column, path) from None


def _int_list(value, pos, path):
    parts = [p for p in re.split(r"[,\s]+", value.strip()) if p]
    return tuple(_int(p, pos, path) for p in parts)


def _degrees(value, pos, path):
    v = value.strip()
    m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", v)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if b < a:
            raise ParseError("empty degree range", pos.line, pos.column, path)
        return tuple(range(a, b + 1))
    return _int_list(v, pos, path)


def parse_manifest(text, path=None):
    """Parse and validate manifest text; raise ParseError with line and column on failure."""
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.strip()
        if not stripped:
            continue
        col0 = len(body) - len(body.lstrip()) + 1
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            if not m:
                raise ParseError(f"malformed section header {stripped!r}", lineno, col0, path)
            current = (m.group(1), m.group(2), Line(stripped, lineno, col0), [])
            sections.append(current)
            continue
        m = _ENTRY.match(stripped)
        if not m:
            raise ParseError(f"expected 'key = value', found {stripped!r}", lineno, col0, path)
        if current is None:
            raise ParseError("entry outside of any section", lineno, col0, path)
        vcol = col0 + m.start(4)
        current[3].append((m.group(1), m.group(2), m.group(3), Line(m.group(4).strip(), lineno, vcol)))
    return _interpret(sections, path)


def _interpret(sections, path):
    problem = {}
    modules = {}
    maps = {}
    ses = None
    params = {}
    positions = {}
    seen = set()
    for kind, arg, hdr, entries in sections:
        key = (kind, arg)
        if key in seen:
            raise ParseError(f"duplicate section [{kind}{' ' + arg if arg else ''}]", hdr.line, hdr.column, path)
        seen.add(key)
        if kind == "problem":
            for k, deg, extra, val in entries:
                if k not in ("field", "n", "command", "format") or deg is not None or extra:
                    raise ParseError(f"unknown problem key {k!r}", val.line, val.column, f"problem / {k}")
                problem[k] = val
                positions[f"problem / {k}"] = val
        elif kind == "module":
            if not arg:
                raise ParseError("module section needs a name", hdr.line, hdr.column, path)
            gens = None
            rels = []
            for k, deg, extra, val in entries:
                if k == "generators" and deg is None and not extra:
                    gens = _int_list(val.text, val, f"module {arg} / generators")
                elif k == "relation" and not extra:
                    rels.append((val.text, None if deg is None else int(deg)))
                    positions[f"module {arg} / relation {len(rels)}"] = val
                else:
                    raise ParseError(f"unknown module key {k!r}", val.line, val.column, f"module {arg} / {k}")
            if gens is None:
                raise ParseError(f"module {arg} declares no generators", hdr.line, hdr.column, f"module {arg}")
            modules[arg] = ModuleDecl(arg, gens, rels)
            positions[f"module {arg}"] = hdr
        elif kind == "map":
            if not arg:
                raise ParseError("map section needs a name", hdr.line, hdr.column, path)
            d = {"images": {}}
            positions[f"map {arg}"] = hdr
            for k, deg, extra, val in entries:
                if k in ("source", "target") and not extra:
                    d[k] = val.text
                    positions[f"map {arg} / {k}"] = val
                elif k == "shift" and not extra:
                    d["shift"] = _int(val.text, val, f"map {arg} / shift")
                elif k == "image" and extra and re.fullmatch(r"e\d*", extra):
                    idx = int(extra[1:]) if len(extra) > 1 else 1
                    d["images"][idx] = val.text
                    positions[f"map {arg} / image e{idx}"] = val
                else:
                    raise ParseError(f"unknown map key {k!r}", val.line, val.column, f"map {arg} / {k}")
            for k in ("source", "target"):
                if k not in d:
                    raise ParseError(f"map {arg} needs a {k}", hdr.line, hdr.column, f"map {arg} / {k}")
            maps[arg] = MapDecl(arg, d["source"], d["target"], d.get("shift", 0), d["images"])
        elif kind == "ses":
            positions["ses"] = hdr
            for k, deg, extra, val in entries:
                if k != "maps":
                    raise ParseError(f"unknown ses key {k!r}", val.line, val.column, "ses")
                names = tuple(p for p in re.split(r"[,\s]+", val.text) if p)
                if len(names) != 2:
                    raise ParseError("ses needs exactly two maps", val.line, val.column, "ses / maps")
                ses = names
                positions["ses"] = val
        elif kind == "parameters":
            for k, deg, extra, val in entries:
                p = f"parameters / {k}"
                positions[p] = val
                if k not in PARAM_KEYS or deg is not None or extra:
                    raise ParseError(f"unknown parameter {k!r}", val.line, val.column, p)
                params[k] = _param_value(k, val, p)
        else:
            raise ParseError(f"unknown section [{kind}]", hdr.line, hdr.column, path)
    for k in ("field", "n", "command"):
        if k not in problem:
            raise ParseError(f"[problem] is missing '{k}'", None, None, f"problem / {k}")
    fv = problem["field"]
    try:
        field_from_spec(fv.text)
    except (ConfigurationError, ValueError) as exc:
        raise ParseError(str(exc), fv.line, fv.column, "problem / field") from None
    n = _int(problem["n"].text, problem["n"], "problem / n")
    if n < 1:
        raise ParseError("n must be at least 1", problem["n"].line, problem["n"].column, "problem / n")
    cmd = problem["command"]
    if cmd.text not in COMMANDS:
        raise ParseError(f"unknown command {cmd.text!r}", cmd.line, cmd.column, "problem / command")
    fmt = problem.get("format")
    if fmt is not None and fmt.text not in FORMATS:
        raise ParseError(f"unknown format {fmt.text!r}", fmt.line, fmt.column, "problem / format")
    if not modules:
        raise ParseError("manifest declares no module", None, None, "module")
    m = Manifest(
        field=fv.text,
        n=n,
        command=cmd.text,
        format=fmt.text if fmt is not None else "json",
        modules=modules,
        maps=maps,
        ses=ses,
        parameters=params,
        positions=positions,
    )
    _check_parameters(m)
    m.build()
    return m


def _param_value(k, val, path):
    t = val.text
    if k in ("pole_max", "window", "t_max", "seed", "z", "z1", "z2"):
        if k in ("z2",) and t.strip() in ("empty", "none"):
            return None
        v = _int(t, val, path)
        if k in ("pole_max", "window") and v < 1:
            raise ParseError(f"{k} must be positive", val.line, val.column, path)
        if k in ("t_max", "z", "z1", "z2") and v < 0:
            raise ParseError(f"{k} must be nonnegative", val.line, val.column, path)
        return v
    if k == "filtration":
        return _int_list(t, val, path)
    if k == "degrees":
        return _degrees(t, val, path)
    if k == "claims":
        items = tuple(p.lower() for p in re.split(r"[,\s]+", t) if p)
        for c in items:
            if c not in CLAIMS:
                raise ParseError(f"unknown claim {c!r}", val.line, val.column, path)
        return items
    if k == "semantics":
        if t not in ("ideal", "product"):
            raise ParseError(f"unknown semantics {t!r}", val.line, val.column, path)
        return t
    if k == "mode":
        if t not in ("certified", "windowed"):
            raise ParseError(f"unknown mode {t!r}", val.line, val.column, path)
        return t
    return t


def _check_parameters(m):
    pos = m.positions
    filt = m.parameters.get("filtration")
    if filt is not None:
        from .cousin import validate_filtration

        try:
            validate_filtration(m.n, filt)
        except ConfigurationError as exc:
            p = pos.get("parameters / filtration")
            raise ParseError(str(exc), p.line, p.column, "parameters / filtration") from None
    for k in ("z", "z1", "z2"):
        v = m.parameters.get(k)
        if v is not None and v > m.n:
            p = pos.get(f"parameters / {k}")
            raise ParseError(f"{k} = {v} exceeds n = {m.n}", p.line, p.column, f"parameters / {k}")
    z1, z2 = m.parameters.get("z1"), m.parameters.get("z2")
    if z1 is not None and z2 is not None and z2 > z1:
        p = pos.get("parameters / z2")
        raise ParseError("z2 must not exceed z1", p.line, p.column, "parameters / z2")


def _fmt_list(v):
    return ", ".join(str(x) for x in v)


def serialize_manifest(m):
    """Canonical text of a manifest; parse(serialize(m)) == m."""
    out = ["[problem]", f"field = {m.field}", f"n = {m.n}", f"command = {m.command}", f"format = {m.format}"]
    for name in m.modules:
        d = m.modules[name]
        out += ["", f"[module {name}]", f"generators = {_fmt_list(d.generators)}"]
        for text, deg in d.relations:
            out.append(f"relation = {text}" if deg is None else f"relation({deg}) = {text}")
    for name in m.maps:
        d = m.maps[name]
        out += ["", f"[map {name}]", f"source = {d.source}", f"target = {d.target}", f"shift = {d.shift}"]
        for idx in sorted(d.images):
            out.append(f"image e{idx} = {d.images[idx]}")
    if m.ses is not None:
        out += ["", "[ses]", f"maps = {_fmt_list(m.ses)}"]
    if m.parameters:
        out += ["", "[parameters]"]
        for k in PARAM_KEYS:
            if k not in m.parameters:
                continue
            v = m.parameters[k]
            if k == "degrees" and v and list(v) == list(range(v[0], v[-1] + 1)):
                out.append(f"degrees = {v[0]}..{v[-1]}")
            elif isinstance(v, tuple):
                out.append(f"{k} = {_fmt_list(v)}")
            elif v is None:
                out.append(f"{k} = empty")
            else:
                out.append(f"{k} = {v}")
    return "\n".join(out) + "\n"


def load_manifest(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read manifest: {exc.strerror}", path=str(path)) from None
    return parse_manifest(text, str(path))

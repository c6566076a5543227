"""Layered (1,1)-tangle programs: DSL parser, validator, diagram combinatorics.

A program lists layers bottom to top. Strand positions are 1-based from
the left. Each strand at a slice is oriented up or down; crossings only
join two upward strands.

    tangle trefoil
    cup-coev 2
    cross+ 1
    cross+ 1
    cross+ 1
    cap-ev* 2
"""

from __future__ import annotations

from dataclasses import dataclass, field

LAYER_KINDS = ("id", "cross+", "cross-", "cap-ev", "cap-ev*", "cup-coev", "cup-coev*")
UP, DOWN = 1, -1


class TangleSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class TangleValidationError(ValueError):
    def __init__(self, diagnostics: list[str]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(diagnostics))


@dataclass(frozen=True)
class Layer:
    kind: str
    pos: int  # 1-based; 0 for id

    def __str__(self):
        return self.kind if self.kind == "id" else f"{self.kind} {self.pos}"


@dataclass
class LinkingData:
    matrix: list[list[int]]
    writhe: list[int]

    def to_json(self) -> dict:
        return {"linking": self.matrix, "writhe": self.writhe}


@dataclass
class TangleProgram:
    name: str
    layers: list[Layer]
    # filled in by validate()
    widths: list[int] = field(default_factory=list)
    orientations: list[tuple[int, ...]] = field(default_factory=list)
    strand_components: list[tuple[int, ...]] = field(default_factory=list)
    n_components: int = 0
    n_arcs: int = 0
    validated: bool = False

    @property
    def crossings(self) -> list[Layer]:
        return [l for l in self.layers if l.kind in ("cross+", "cross-")]

    def to_text(self) -> str:
        return "\n".join([f"tangle {self.name}"] + [str(l) for l in self.layers]) + "\n"


# ------------------------------------------------------------------ parsing

def parse(text: str) -> TangleProgram:
    """Parse DSL text; structural checks are left to validate()."""
    name = None
    layers: list[Layer] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        parts = stripped.split()
        if name is None:
            if parts[0] != "tangle" or len(parts) != 2:
                raise TangleSyntaxError("expected header 'tangle <name>'", lineno, col)
            name = parts[1]
            continue
        kind = parts[0]
        if kind not in LAYER_KINDS:
            raise TangleSyntaxError(f"unknown layer {kind!r}", lineno, col)
        if kind == "id":
            if len(parts) != 1:
                raise TangleSyntaxError("'id' takes no position", lineno, col)
            layers.append(Layer("id", 0))
            continue
        if len(parts) != 2:
            raise TangleSyntaxError(f"{kind} expects one position", lineno, col)
        pcol = line.index(parts[1], col - 1 + len(kind)) + 1
        try:
            pos = int(parts[1])
        except ValueError:
            raise TangleSyntaxError(f"position {parts[1]!r} is not an integer", lineno, pcol) from None
        if pos < 1:
            raise TangleSyntaxError("positions are 1-based", lineno, pcol)
        layers.append(Layer(kind, pos))
    if name is None:
        raise TangleSyntaxError("missing header 'tangle <name>'", 1, 1)
    return TangleProgram(name, layers)


# ------------------------------------------------------------------ validation

class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, a: int):
        self.parent.setdefault(a, a)

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def validate(p: TangleProgram) -> TangleProgram:
    """Check width/orientation rules and derive components and arcs.

    Raises TangleValidationError with all diagnostics found.
    """
    diags: list[str] = []
    orient = [UP]
    comp_tok = [0]  # component token per position
    arc_tok = [0]  # arc token per position
    comps = _UnionFind()
    comps.add(0)
    arcs = _UnionFind()
    arcs.add(0)
    next_tok = 1
    widths = [1]
    orientations = [tuple(orient)]
    tokens_per_slice = [list(comp_tok)]
    for li, layer in enumerate(p.layers, start=1):
        w = len(orient)
        i = layer.pos - 1
        k = layer.kind
        where = f"layer {li} ({layer})"
        if k == "id":
            pass
        elif k in ("cross+", "cross-"):
            if layer.pos + 1 > w:
                diags.append(f"{where}: width violation (width {w})")
                break
            if orient[i] != UP or orient[i + 1] != UP:
                diags.append(f"{where}: crossings need two upward strands")
                break
            comp_tok[i], comp_tok[i + 1] = comp_tok[i + 1], comp_tok[i]
            for j in (i, i + 1):
                arcs.add(next_tok)
                arc_tok[j] = next_tok
                next_tok += 1
        elif k in ("cup-coev", "cup-coev*"):
            if layer.pos > w + 1:
                diags.append(f"{where}: width violation (width {w})")
                break
            pair = (UP, DOWN) if k == "cup-coev" else (DOWN, UP)
            comps.add(next_tok)
            arcs.add(next_tok)
            orient[i:i] = list(pair)
            comp_tok[i:i] = [next_tok, next_tok]
            arc_tok[i:i] = [next_tok, next_tok]
            next_tok += 1
        else:  # caps
            if layer.pos + 1 > w:
                diags.append(f"{where}: width violation (width {w})")
                break
            pair = (DOWN, UP) if k == "cap-ev" else (UP, DOWN)
            if (orient[i], orient[i + 1]) != pair:
                diags.append(f"{where}: orientation mismatch for {k}")
                break
            comps.union(comp_tok[i], comp_tok[i + 1])
            arcs.union(arc_tok[i], arc_tok[i + 1])
            del orient[i : i + 2]
            del comp_tok[i : i + 2]
            del arc_tok[i : i + 2]
        widths.append(len(orient))
        orientations.append(tuple(orient))
        tokens_per_slice.append(list(comp_tok))
    if not diags:
        if len(orient) != 1:
            diags.append(f"top boundary has width {len(orient)}, expected 1")
        elif orient[0] != UP:
            diags.append("open strand must end pointing up")
    if not diags and comps.find(tokens_per_slice[-1][0]) != comps.find(0):
        diags.append("open strand does not reach the top boundary")
    if diags:
        raise TangleValidationError(diags)
    roots = sorted({comps.find(t) for t in comps.parent})
    # open component first, others by first appearance
    order = [comps.find(0)] + [r for r in roots if r != comps.find(0)]
    index = {r: n for n, r in enumerate(order)}
    p.widths = widths
    p.orientations = orientations
    p.strand_components = [tuple(index[comps.find(t)] for t in toks) for toks in tokens_per_slice]
    p.n_components = len(order)
    p.n_arcs = len({arcs.find(t) for t in arcs.parent})
    p.validated = True
    return p


def _require_valid(p: TangleProgram) -> TangleProgram:
    return p if p.validated else validate(p)


def linking_data(p: TangleProgram) -> LinkingData:
    """Linking matrix (off-diagonal: half the signed count) and writhes."""
    p = _require_valid(p)
    n = p.n_components
    twice = [[0] * n for _ in range(n)]
    for li, layer in enumerate(p.layers):
        if layer.kind not in ("cross+", "cross-"):
            continue
        sgn = 1 if layer.kind == "cross+" else -1
        comps = p.strand_components[li]
        a, b = comps[layer.pos - 1], comps[layer.pos]
        if a == b:
            twice[a][a] += 2 * sgn
        else:
            twice[a][b] += sgn
            twice[b][a] += sgn
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = twice[i][j]
            if i != j and v % 2:
                raise TangleValidationError([f"odd crossing count between components {i} and {j}"])
            mat[i][j] = v // 2
    return LinkingData(mat, [mat[i][i] for i in range(n)])


def crossing_count(p: TangleProgram) -> int:
    return len(p.crossings)


def closed_loops(p: TangleProgram) -> int:
    """Components that meet no crossing (the U of the arc-count formula)."""
    p = _require_valid(p)
    touched = set()
    for li, layer in enumerate(p.layers):
        if layer.kind in ("cross+", "cross-"):
            comps = p.strand_components[li]
            touched.add(comps[layer.pos - 1])
            touched.add(comps[layer.pos])
    touched.add(0)
    return p.n_components - len(touched)


# ------------------------------------------------------------------ builtins

def closed_braid(name: str, word: list[int]) -> TangleProgram:
    """(1,1)-tangle of a closed 3-braid cut along its first strand.

    Strands 2 and 3 are closed to the right with coevaluation cups at the
    bottom and ev* caps at the top; letter +i / -i is cross+ / cross- at i.
    """
    layers = [Layer("cup-coev", 2), Layer("cup-coev", 3)]
    for g in word:
        layers.append(Layer("cross+" if g > 0 else "cross-", abs(g)))
    layers += [Layer("cap-ev*", 3), Layer("cap-ev*", 2)]
    return validate(TangleProgram(name, layers))


BUILTIN_TEXT = {
    "unknot": "tangle unknot\n",
    "3_1": (
        "tangle 3_1\n"
        "# right-handed trefoil: one cup, three positive crossings, one ev* cap\n"
        "cup-coev 2\ncross+ 1\ncross+ 1\ncross+ 1\ncap-ev* 2\n"
    ),
}

# Braid words pinned by matching the published invariant tables; the
# mirror images do not match.
BUILTIN_BRAIDS = {
    "4_1": [1, -2, 1, -2],
    "5_2": [1, 1, 1, 2, -1, 2],
}


def builtin(name: str) -> TangleProgram:
    if name in BUILTIN_TEXT:
        return validate(parse(BUILTIN_TEXT[name]))
    if name in BUILTIN_BRAIDS:
        return closed_braid(name, BUILTIN_BRAIDS[name])
    raise KeyError(f"unknown builtin knot {name!r}; choose from unknot, 3_1, 4_1, 5_2")


BUILTIN_NAMES = ("unknot", "3_1", "4_1", "5_2")

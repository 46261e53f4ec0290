"""Colored networks, chain amplitudes and the Penrose 3-coloring evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from ..ncalg.gaussian import GaussianRational

Scalar = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class EnumerationCapExceeded(RuntimeError):
    pass


# -- chains ------------------------------------------------------------------------

def _matrix(m) -> list[list[GaussianRational]]:
    rows = [[GaussianRational.coerce(v) for v in row] for row in m]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged or empty transition matrix")
    return rows


def _matmul(a, b):
    if len(a[0]) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))]
            for i in range(len(a))]


def chain_amplitude(weights: Sequence, start: int, end: int) -> GaussianRational:
    """``<start| W_1 W_2 ... W_m |end>``: the sum over intermediate states of link products."""
    if not weights:
        raise ValueError("need at least one link")
    mats = [_matrix(w) for w in weights]
    acc = mats[0]
    for m in mats[1:]:
        acc = _matmul(acc, m)
    return acc[start][end]


# -- networks --------------------------------------------------------------------

VertexWeight = Callable[[Hashable, tuple], object]


@dataclass
class Network:
    """Vertices with cyclically ordered incident edges.

    ``edges[e] = (u, v)``; an endpoint of ``None`` marks a dangling boundary
    edge.  ``rotation[v]`` lists the edges at ``v`` in cyclic order (a loop
    appears twice).  ``fixed`` pins boundary or other edges to a color in
    ``range(colors)``.
    """

    rotation: dict
    edges: dict
    colors: int = 3
    weight: VertexWeight | None = None
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        count: dict = {}
        for e, (u, v) in self.edges.items():
            for x in (u, v):
                if x is not None:
                    if x not in self.rotation:
                        raise ValueError(f"edge {e!r} ends at unknown vertex {x!r}")
                    count[(x, e)] = count.get((x, e), 0) + 1
        for x, rot in self.rotation.items():
            seen: dict = {}
            for e in rot:
                seen[(x, e)] = seen.get((x, e), 0) + 1
            for key, c in seen.items():
                if count.get(key, 0) != c:
                    raise ValueError(f"rotation at {x!r} inconsistent with edge {key[1]!r}")
            if sum(c for (y, _), c in count.items() if y == x) != len(rot):
                raise ValueError(f"rotation at {x!r} misses incident edges")
        for e, c in self.fixed.items():
            if e not in self.edges or not 0 <= c < self.colors:
                raise ValueError(f"bad fixed color {c!r} on edge {e!r}")
        if self.colors < 1:
            raise ValueError("need at least one color")

    def free_edges(self) -> list:
        return [e for e in self.edges if e not in self.fixed]

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def relabel(self, vmap: dict, emap: dict) -> "Network":
        rot = {vmap[v]: [emap[e] for e in r] for v, r in self.rotation.items()}
        edges = {emap[e]: tuple(None if x is None else vmap[x] for x in uv)
                 for e, uv in self.edges.items()}
        w = self.weight
        inv = {b: a for a, b in vmap.items()}
        weight = None if w is None else (lambda v, cols: w(inv[v], cols))
        return Network(rot, edges, self.colors, weight, {emap[e]: c for e, c in self.fixed.items()})


def disjoint_union(a: Network, b: Network) -> Network:
    if a.colors != b.colors:
        raise ValueError("color sets differ")
    rot = {("a", v): [("a", e) for e in r] for v, r in a.rotation.items()}
    rot.update({("b", v): [("b", e) for e in r] for v, r in b.rotation.items()})
    edges = {("a", e): tuple(None if x is None else ("a", x) for x in uv) for e, uv in a.edges.items()}
    edges.update({("b", e): tuple(None if x is None else ("b", x) for x in uv) for e, uv in b.edges.items()})
    fixed = {("a", e): c for e, c in a.fixed.items()}
    fixed.update({("b", e): c for e, c in b.fixed.items()})
    wa, wb = a.weight, b.weight
    weight = None
    if wa is not None and wb is not None:
        def weight(v, cols):
            return (wa if v[0] == "a" else wb)(v[1], cols)
    return Network(rot, edges, a.colors, weight, fixed)


def network_partition_function(n: Network, cap: int = 40) -> GaussianRational:
    """``Z = sum over colorings of free edges of the product of vertex weights``.

    Colorings are enumerated depth-first; a vertex is scored as soon as all of
    its edges are colored and branches with a zero product are cut.
    """
    if n.weight is None:
        raise ValueError("network has no vertex weight")
    free = n.free_edges()
    if len(free) > cap:
        raise EnumerationCapExceeded(f"{len(free)} free edges exceeds cap {cap}")
    # order free edges so vertices complete early
    order: list = []
    for v in n.rotation:
        for e in n.rotation[v]:
            if e in n.fixed or e in order:
                continue
            order.append(e)
    order += [e for e in free if e not in order]
    pos = {e: k for k, e in enumerate(order)}
    ready: dict[int, list] = {}
    for v, rot in n.rotation.items():
        last = max((pos[e] for e in rot if e in pos), default=-1)
        ready.setdefault(last, []).append(v)
    color = dict(n.fixed)

    def weight_of(v) -> GaussianRational:
        return GaussianRational.coerce(n.weight(v, tuple(color[e] for e in n.rotation[v])))

    base = ONE
    for v in ready.get(-1, []):
        base = base * weight_of(v)
    if not base:
        return ZERO

    def rec(k: int, acc: GaussianRational) -> GaussianRational:
        if k == len(order):
            return acc
        e = order[k]
        total = ZERO
        for c in range(n.colors):
            color[e] = c
            w = acc
            for v in ready.get(k, []):
                w = w * weight_of(v)
                if not w:
                    break
            if w:
                total = total + rec(k + 1, w)
        del color[e]
        return total

    return rec(0, base)


# -- Penrose ------------------------------------------------------------------------

def levi_civita(a: int, b: int, c: int) -> int:
    """+1 for an even permutation of (0, 1, 2), -1 for odd, 0 on repeats."""
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def penrose_weight(_v, cols: tuple) -> GaussianRational:
    if len(cols) != 3:
        raise ValueError("Penrose weight needs a trivalent vertex")
    return I * levi_civita(*cols)


def proper_coloring_count(n: Network) -> int:
    """Proper 3-edge-colorings by backtracking on edges (distinct colors at every vertex)."""
    edges = list(n.edges)
    color: dict = {}
    inc = {v: list(r) for v, r in n.rotation.items()}

    def ok(e) -> bool:
        for x in n.edges[e]:
            if x is None:
                continue
            cs = [color[f] for f in inc[x] if f in color]
            if len(cs) != len(set(cs)) or inc[x].count(e) > 1:
                return False
        return True

    def rec(k: int) -> int:
        if k == len(edges):
            return 1
        e = edges[k]
        total = 0
        for c in range(3):
            color[e] = c
            if ok(e):
                total += rec(k + 1)
        del color[e]
        return total

    return rec(0)


@dataclass(frozen=True)
class PenroseResult:
    value: GaussianRational
    colorings: int
    faces: int
    planar: bool

    @property
    def agrees(self) -> bool:
        return self.value == GaussianRational(self.colorings)


def penrose_count(g: Network, check: bool = True) -> PenroseResult:
    """Evaluate the network with vertex weight ``i * eps_abc``.

    For a planar rotation system this counts proper 3-edge-colorings; with
    ``check`` an ``AssertionError`` is raised if it does not.
    """
    for v, r in g.rotation.items():
        if len(r) != 3:
            raise ValueError(f"vertex {v!r} has degree {len(r)}, expected 3")
    if g.colors != 3:
        raise ValueError("Penrose evaluation uses exactly three colors")
    net = Network(g.rotation, g.edges, 3, penrose_weight, g.fixed)
    z = network_partition_function(net)
    cnt = proper_coloring_count(net)
    faces = face_count(g)
    planar = is_planar_embedding(g)
    res = PenroseResult(z, cnt, faces, planar)
    if check and planar:
        assert res.agrees, f"Penrose value {z} differs from coloring count {cnt}"
    return res


# -- embeddings ----------------------------------------------------------------------

def _darts(g: Network):
    darts = []
    for e, (u, v) in g.edges.items():
        if u is None or v is None:
            raise ValueError("face tracing needs a closed network")
        if u == v:
            raise ValueError("loops are not supported in face tracing")
        darts += [(u, v, e), (v, u, e)]
    return darts


def face_count(g: Network) -> int:
    """Faces of the rotation system: a dart ``u->v`` along ``e`` is followed by
    ``v->w`` along the edge after ``e`` in the cyclic order at ``v``."""
    darts = _darts(g)
    other = {}
    for u, v, e in darts:
        other[(u, e)] = v
    seen = set()
    faces = 0
    for d in darts:
        if d in seen:
            continue
        faces += 1
        cur = d
        while cur not in seen:
            seen.add(cur)
            _, v, e = cur
            rot = g.rotation[v]
            nxt = rot[(rot.index(e) + 1) % len(rot)]
            cur = (v, other[(v, nxt)], nxt)
    return faces


def components(g: Network) -> int:
    parent = {v: v for v in g.rotation}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges.values():
        if u is not None and v is not None:
            parent[find(u)] = find(v)
    return len({find(v) for v in g.rotation})


def is_planar_embedding(g: Network) -> bool:
    """Euler's formula ``V - E + F = 2`` per connected component."""
    return len(g.rotation) - len(g.edges) + face_count(g) == 2 * components(g)


def rotation_from_coordinates(pos: dict, edges: dict) -> dict:
    """Counter-clockwise edge order at each vertex of a straight-line drawing."""
    rot: dict = {v: [] for v in pos}
    for e, (u, v) in edges.items():
        for a, b in ((u, v), (v, u)):
            ang = math.atan2(pos[b][1] - pos[a][1], pos[b][0] - pos[a][0])
            rot[a].append((ang, e))
    return {v: [e for _, e in sorted(r)] for v, r in rot.items()}


# -- test graphs -------------------------------------------------------------------

def theta_graph() -> Network:
    return Network({"u": [0, 1, 2], "v": [2, 1, 0]},
                   {0: ("u", "v"), 1: ("u", "v"), 2: ("u", "v")})


def _from_drawing(pos, pairs) -> Network:
    edges = {k: uv for k, uv in enumerate(pairs)}
    return Network(rotation_from_coordinates(pos, edges), edges)


def _ring(n, r, phase=0.0):
    return [(r * math.cos(phase + 2 * math.pi * k / n), r * math.sin(phase + 2 * math.pi * k / n))
            for k in range(n)]


def k4_graph() -> Network:
    outer = _ring(3, 2.0, math.pi / 2)
    pos = {0: (0.0, 0.0), 1: outer[0], 2: outer[1], 3: outer[2]}
    return _from_drawing(pos, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])


def prism_graph() -> Network:
    pos = dict(enumerate(_ring(3, 2.0) + _ring(3, 1.0)))
    pairs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return _from_drawing(pos, pairs)


def cube_graph() -> Network:
    pos = dict(enumerate(_ring(4, 2.0) + _ring(4, 1.0)))
    pairs = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    return _from_drawing(pos, pairs)


def bridged_graph() -> Network:
    """Two copies of a doubled edge plus a path, joined by a bridge.

    Each half has vertices a, b, c with a double edge a=b and edges a-c, b-c;
    the two c vertices are joined by the bridge.  Every cubic graph with a
    bridge has no proper 3-edge-coloring.
    """
    rot: dict = {}
    edges: dict = {}
    for s in ("L", "R"):
        edges.update({
            (s, 1): ((s, "a"), (s, "b")),
            (s, 2): ((s, "a"), (s, "b")),
            (s, 3): ((s, "a"), (s, "c")),
            (s, 4): ((s, "b"), (s, "c")),
        })
        rot[(s, "a")] = [(s, 1), (s, 2), (s, 3)]
        rot[(s, "b")] = [(s, 4), (s, 2), (s, 1)]
        rot[(s, "c")] = ["bridge", (s, 3), (s, 4)]
    edges["bridge"] = (("L", "c"), ("R", "c"))
    return Network(rot, edges)


def k33_graph() -> Network:
    """``K_{3,3}`` with an arbitrary rotation system (not planar)."""
    edges = {}
    rot: dict = {("u", i): [] for i in range(3)}
    rot.update({("w", j): [] for j in range(3)})
    for i in range(3):
        for j in range(3):
            e = 3 * i + j
            edges[e] = (("u", i), ("w", j))
            rot[("u", i)].append(e)
            rot[("w", j)].append(e)
    return Network(rot, edges)


TEST_GRAPHS = {
    "theta": theta_graph,
    "k4": k4_graph,
    "prism": prism_graph,
    "cube": cube_graph,
    "bridged": bridged_graph,
}


# -- text format -------------------------------------------------------------------

def parse_network(text: str, weight: VertexWeight | None = None) -> Network:
    """Read a network from lines of the form::

        colors 3
        edge NAME U V        # V may be '-' for a dangling boundary edge
        vertex NAME E1 E2 E3  # incident edges in cyclic order
        fix EDGE COLOR
    """
    colors = 3
    edges: dict = {}
    rot: dict = {}
    fixed: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kw, args = line[0], line[1:]
        try:
            if kw == "colors":
                colors = int(args[0])
            elif kw == "edge":
                name, u, v = args
                edges[name] = (None if u == "-" else u, None if v == "-" else v)
            elif kw == "vertex":
                rot[args[0]] = list(args[1:])
            elif kw == "fix":
                fixed[args[0]] = int(args[1])
            else:
                raise ValueError(f"unknown keyword {kw!r}")
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return Network(rot, edges, colors, weight, fixed)


def chain_network(weights: Sequence, start: int, end: int) -> Network:
    """Network ``A -- * -- C -- * -- B`` whose ``Z`` equals :func:`chain_amplitude`."""
    mats = [_matrix(w) for w in weights]
    dim = len(mats[0])
    m = len(mats)
    edges = {t: (None if t == 0 else t - 1, None if t == m else t) for t in range(m + 1)}
    rot = {t: [t, t + 1] for t in range(m)}

    def weight(v, cols):
        return mats[v][cols[0]][cols[1]]

    return Network(rot, edges, dim, weight, {0: start, m: end})

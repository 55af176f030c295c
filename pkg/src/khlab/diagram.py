"""Knot and link diagrams in planar-diagram (PD) notation.

Conventions
-----------
A crossing is written ``X(a,b,c,d)``.  The four edge labels are listed
*clockwise* around the crossing, starting from the incoming under-strand:
``a`` enters under, ``c`` leaves under, and ``b``/``d`` belong to the
over-strand.  The crossing is positive when the over-strand runs from ``b``
to ``d`` and negative when it runs from ``d`` to ``b``.  Under this rule
``PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]`` is the right-handed trefoil with
three positive crossings.  (Listing the same tuples counterclockwise would
describe the mirror image; only the reading direction differs.)

The A-smoothing of ``X(a,b,c,d)`` joins ``a`` with ``d`` and ``b`` with
``c``; the B-smoothing joins ``a`` with ``b`` and ``c`` with ``d``.  For
the one-crossing diagram ``X(1,2,2,1)`` (a positive kink) the A-smoothing
splits off a small circle, so its bracket is ``(-A^3)`` times the bracket
of the straightened arc.

Crossingless circles are written ``O(k)``.  Parsing renumbers all edges
canonically: components are visited in order of their smallest input
label, and labels increase by one along the orientation of each
component, so ``parse_pd(render_pd(d)) == d``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DiagramError, PDSyntaxError, ReidemeisterError

Crossing = tuple[int, int, int, int]
Occurrence = tuple[int, int]  # (crossing index, slot 0..3)

PD_CONVENTION = "pd-clockwise-from-incoming-under; positive iff over-strand runs b->d"

MOVES = ("R1+", "R1-", "R2", "R3")


@dataclass(frozen=True)
class KnotDiagram:
    """An oriented link diagram.

    Instances are built with :meth:`from_pd` (or :func:`parse_pd`), which
    validates the input, orients every component and relabels the edges
    canonically.  Edges of crossing components are ``1 .. 2c``; the
    crossingless circles are counted by ``free_loops`` and, where an edge id
    is needed (e.g. for a Reidemeister I site), take the ids after ``2c``.
    """

    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    free_loops: int = 0
    strands: tuple[tuple[int, ...], ...] = field(default=(), compare=False)
    heads: tuple[Occurrence, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_pd(cls, crossings: Iterable[Sequence[int]], free_loops: int = 0) -> "KnotDiagram":
        tuples = [tuple(int(v) for v in x) for x in crossings]
        for x in tuples:
            if len(x) != 4:
                raise DiagramError(f"crossing {x} does not have four edge labels")
            if any(v <= 0 for v in x):
                raise DiagramError(f"edge labels must be positive integers, got {x}")
        if free_loops < 0:
            raise DiagramError("negative number of free loops")
        if not tuples and free_loops == 0:
            raise DiagramError("empty diagram")
        paths = _orient(tuples)
        return _canonical(tuples, paths, free_loops)

    # --- counts -----------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def component_count(self) -> int:
        return len(self.strands) + self.free_loops

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    def is_knot(self) -> bool:
        return self.component_count == 1

    def is_positive(self) -> bool:
        return all(s > 0 for s in self.signs)

    def head(self, edge: int) -> Occurrence:
        """Crossing slot where ``edge`` ends (following the orientation)."""
        return self.heads[edge - 1]

    def tail(self, edge: int) -> Occurrence:
        """Crossing slot where ``edge`` starts."""
        occ = self.occurrences(edge)
        h = self.head(edge)
        return occ[1] if occ[0] == h else occ[0]

    def occurrences(self, edge: int) -> tuple[Occurrence, Occurrence]:
        found = [(x, s) for x, t in enumerate(self.crossings) for s, e in enumerate(t) if e == edge]
        if len(found) != 2:
            raise DiagramError(f"edge {edge} is not a crossing edge of this diagram")
        return found[0], found[1]

    def __str__(self) -> str:
        return render_pd(self)


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strand_count`` strands; letter ``±k`` is ``σ_k^{±1}``."""

    strand_count: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strand_count < 1:
            raise DiagramError("a braid needs at least one strand")
        for k in self.letters:
            if k == 0 or abs(k) >= self.strand_count:
                raise DiagramError(f"generator {k} out of range for {self.strand_count} strands")


# --- orientation and canonical labels --------------------------------------


def _occurrence_map(crossings: Sequence[Crossing]) -> dict[int, list[Occurrence]]:
    occ: dict[int, list[Occurrence]] = {}
    for x, tup in enumerate(crossings):
        for s, e in enumerate(tup):
            occ.setdefault(e, []).append((x, s))
    return occ


def _other(pair: Sequence[Occurrence], o: Occurrence) -> Occurrence:
    return pair[1] if pair[0] == o else pair[0]


def _orient(crossings: list[Crossing]) -> list[list[tuple[int, Occurrence, Occurrence]]]:
    """Split the edges into strand components and orient each one.

    Returns one path per component, each a list of ``(edge, tail, head)``.
    """
    occ = _occurrence_map(crossings)
    bad = sorted(e for e, o in occ.items() if len(o) != 2)
    if bad:
        counts = ", ".join(f"{e}x{len(occ[e])}" for e in bad[:6])
        raise DiagramError(f"every edge label must occur exactly twice; offending labels: {counts}")

    seen: set[int] = set()
    paths = []
    for start in sorted(occ):
        if start in seen:
            continue
        path = []
        e, head = start, occ[start][0]
        while True:
            path.append((e, _other(occ[e], head), head))
            x, s = head
            exit_slot = (x, (s + 2) % 4)
            e = crossings[x][exit_slot[1]]
            head = _other(occ[e], exit_slot)
            if e == start:
                break
        seen.update(p[0] for p in path)

        reverse = [(e, h, t) for e, t, h in reversed(path)]
        if not _consistent(path):
            if not _consistent(reverse):
                raise DiagramError(
                    f"inconsistent orientation on the component through edge {start}: "
                    "its under-passages disagree about the direction of travel"
                )
            path = reverse
        elif not any(h[1] in (0, 2) for _, _, h in path) and _label_runs(reverse) > _label_runs(path):
            # component never passes under: orient so labels increase
            path = reverse
        paths.append(path)
    return paths


def _consistent(path) -> bool:
    return all(h[1] != 2 and t[1] != 0 for _, t, h in path)


def _label_runs(path) -> int:
    labels = [p[0] for p in path]
    return sum(1 for u, v in zip(labels, labels[1:] + labels[:1]) if v == u + 1)


def _canonical(crossings: list[Crossing], paths, free_loops: int) -> KnotDiagram:
    ordered = []
    for path in sorted(paths, key=lambda p: min(e for e, _, _ in p)):
        k = min(range(len(path)), key=lambda i: path[i][0])
        ordered.append(path[k:] + path[:k])

    relabel: dict[int, int] = {}
    heads: dict[int, Occurrence] = {}
    strands = []
    for path in ordered:
        comp = []
        for e, _, h in path:
            relabel[e] = len(relabel) + 1
            heads[relabel[e]] = h
            comp.append(relabel[e])
        strands.append(tuple(comp))

    new = tuple(tuple(relabel[e] for e in x) for x in crossings)
    signs = tuple(1 if heads[t[1]] == (x, 1) else -1 for x, t in enumerate(new))
    return KnotDiagram(
        crossings=new,
        signs=signs,
        free_loops=free_loops,
        strands=tuple(strands),
        heads=tuple(heads[e] for e in range(1, len(heads) + 1)),
    )


# --- text formats ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>[+-]?\d+)|(?P<name>[A-Za-z]+)|(?P<punct>[\[\](),;]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise PDSyntaxError(f"unexpected character {text[start]!r}", start)
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.items):
            return self.items[self.i]
        return ("end", "", len(self.text))

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise PDSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def take_punct(self, *values: str):
        tok = self.peek()
        if tok[0] != "punct" or tok[1] not in values:
            got = tok[1] or "end of input"
            raise PDSyntaxError(f"expected one of {' '.join(values)}, found {got!r}", tok[2])
        self.i += 1
        return tok[1]


_CLOSE = {"(": ")", "[": "]"}


def parse_pd(text: str) -> KnotDiagram:
    """Parse ``PD[X(a,b,c,d), ..., O(k)]`` into a validated diagram."""
    toks = _Tokens(text)
    name = toks.take("name")
    if name[1] != "PD":
        raise PDSyntaxError(f"expected 'PD', found {name[1]!r}", name[2])
    toks.take_punct("[")
    crossings: list[Crossing] = []
    circles: list[int] = []
    if toks.peek()[1] != "]":
        while True:
            kind = toks.take("name")
            opener = toks.take_punct("(", "[")
            if kind[1] == "X":
                vals = [int(toks.take("num")[1])]
                for _ in range(3):
                    toks.take_punct(",")
                    vals.append(int(toks.take("num")[1]))
                crossings.append(tuple(vals))
            elif kind[1] == "O":
                circles.append(int(toks.take("num")[1]))
            else:
                raise PDSyntaxError(f"unknown token {kind[1]!r}, expected X or O", kind[2])
            toks.take_punct(_CLOSE[opener])
            if toks.peek()[1] == ",":
                toks.i += 1
                continue
            break
    toks.take_punct("]")
    if toks.peek()[0] != "end":
        raise PDSyntaxError("trailing input", toks.peek()[2])

    used = {e for x in crossings for e in x}
    if len(set(circles)) != len(circles) or used & set(circles):
        raise DiagramError("O(k) labels must be distinct and unused by crossings")
    return KnotDiagram.from_pd(crossings, free_loops=len(circles))


def parse_braid(text: str) -> BraidWord:
    """Parse ``B[n; 1,1,-2]`` (the letter list may be empty: ``B[2;]``)."""
    toks = _Tokens(text)
    name = toks.take("name")
    if name[1] != "B":
        raise PDSyntaxError(f"expected 'B', found {name[1]!r}", name[2])
    toks.take_punct("[")
    n = int(toks.take("num")[1])
    toks.take_punct(";")
    letters = []
    if toks.peek()[1] != "]":
        letters.append(int(toks.take("num")[1]))
        while toks.peek()[1] == ",":
            toks.i += 1
            letters.append(int(toks.take("num")[1]))
    toks.take_punct("]")
    if toks.peek()[0] != "end":
        raise PDSyntaxError("trailing input", toks.peek()[2])
    return BraidWord(n, tuple(letters))


def parse_diagram(text: str) -> KnotDiagram:
    """Accept either PD text or braid text."""
    stripped = text.strip()
    if stripped.startswith("B"):
        return close_braid(parse_braid(stripped))
    return parse_pd(stripped)


def render_pd(d: KnotDiagram) -> str:
    parts = [f"X({a},{b},{c},{e})" for a, b, c, e in d.crossings]
    base = d.edge_count
    parts += [f"O({base + k + 1})" for k in range(d.free_loops)]
    return "PD[" + ",".join(parts) + "]"


def render_braid(w: BraidWord) -> str:
    return f"B[{w.strand_count}; " + ",".join(str(k) for k in w.letters) + "]"


def diagram_to_dict(d: KnotDiagram) -> dict:
    return {
        "pd": render_pd(d),
        "crossings": [list(x) for x in d.crossings],
        "signs": list(d.signs),
        "free_loops": d.free_loops,
        "component_count": d.component_count,
        "n_plus": d.n_plus,
        "n_minus": d.n_minus,
        "writhe": d.writhe,
    }


def diagram_to_json(d: KnotDiagram) -> str:
    return json.dumps(diagram_to_dict(d), sort_keys=True)


# --- constructions -----------------------------------------------------------


def close_braid(w: BraidWord) -> KnotDiagram:
    """Trace closure of a braid; strands run downward, ``σ_k`` is positive."""
    current = list(range(1, w.strand_count + 1))
    touched = [False] * w.strand_count
    fresh = w.strand_count
    crossings = []
    for k in w.letters:
        p = abs(k) - 1
        e1, e2 = current[p], current[p + 1]
        f1, f2 = fresh + 1, fresh + 2
        fresh += 2
        if k > 0:
            crossings.append((e1, e2, f2, f1))
        else:
            crossings.append((e2, f2, f1, e1))
        current[p], current[p + 1] = f1, f2
        touched[p] = touched[p + 1] = True

    # identify the bottom label on each strand position with the top one
    closing = {current[p]: p + 1 for p in range(w.strand_count) if touched[p]}
    crossings = [tuple(closing.get(e, e) for e in x) for x in crossings]
    free = touched.count(False)
    return KnotDiagram.from_pd(crossings, free_loops=free)


def mirror(d: KnotDiagram) -> KnotDiagram:
    """Switch every crossing (the planar shadow is unchanged)."""
    new = []
    for x, (a, b, c, e) in enumerate(d.crossings):
        if d.signs[x] > 0:
            new.append((b, c, e, a))
        else:
            new.append((e, a, b, c))
    return KnotDiagram.from_pd(new, free_loops=d.free_loops)


def connected_sum(d1: KnotDiagram, d2: KnotDiagram, edge1: int = 1, edge2: int = 1) -> KnotDiagram:
    """Splice two diagrams along one edge of each.

    The two edges are cut and reconnected head-to-tail, which keeps the
    orientation.  For knots the result does not depend on the edges chosen.
    """
    if not d2.crossings:
        if d2.free_loops < 1:
            raise DiagramError("cannot splice an empty diagram")
        return KnotDiagram.from_pd(d1.crossings, d1.free_loops + d2.free_loops - 1)
    if not d1.crossings:
        return connected_sum(d2, d1, edge2, edge1)
    off = d1.edge_count
    c1 = [list(x) for x in d1.crossings]
    c2 = [[e + off for e in x] for x in d2.crossings]
    h1 = d1.head(edge1)
    x2, s2 = d2.head(edge2)
    c1[h1[0]][h1[1]] = edge2 + off
    c2[x2][s2] = edge1
    return KnotDiagram.from_pd(c1 + c2, free_loops=d1.free_loops + d2.free_loops)


# --- faces and Reidemeister moves -------------------------------------------

Dart = tuple[int, Occurrence, Occurrence]  # (edge, from, to)


def faces(d: KnotDiagram) -> list[list[Dart]]:
    """Faces of the planar shadow, each traversed with the face on the left.

    Arriving at a crossing through slot ``s``, the boundary continues along
    the edge in slot ``s + 1`` (the next one clockwise), i.e. it turns left.
    """
    occ = _occurrence_map(d.crossings)
    seen: set[Occurrence] = set()
    out = []
    for x in range(len(d.crossings)):
        for s in range(4):
            if (x, s) in seen:
                continue
            face = []
            cur = (x, s)
            while cur not in seen:
                seen.add(cur)
                e = d.crossings[cur[0]][cur[1]]
                to = _other(occ[e], cur)
                face.append((e, cur, to))
                cur = (to[0], (to[1] + 1) % 4)
            out.append(face)
    return out


def apply_reidemeister(d: KnotDiagram, move: str, site, over: bool = True) -> KnotDiagram:
    """Apply an increasing Reidemeister move (or an R3 move) at ``site``.

    ``R1+``/``R1-``: ``site`` is an edge id; a positive/negative kink is
    inserted on it (ids above ``2c`` address crossingless circles).
    ``R2``: ``site`` is a pair of distinct edges on a common face; a finger
    of the first is pushed across the second, passing over it when ``over``.
    ``R3``: ``site`` is the set of three edges bounding a triangular face
    in which one strand lies over (or under) both others.
    """
    if move in ("R1+", "R1-"):
        return _r1(d, int(site), positive=move == "R1+")
    if move == "R2":
        e1, e2 = site
        return _r2(d, int(e1), int(e2), over)
    if move == "R3":
        return _r3(d, frozenset(int(e) for e in site))
    raise ReidemeisterError(f"unknown move {move!r}; expected one of {MOVES}")


def _r1(d: KnotDiagram, edge: int, positive: bool) -> KnotDiagram:
    crossings = [list(x) for x in d.crossings]
    base = d.edge_count
    free = d.free_loops
    loop, out = base + free + 1, base + free + 2
    if 1 <= edge <= base:
        hx, hs = d.head(edge)
        crossings[hx][hs] = out
    elif base < edge <= base + free:
        out = edge
        free -= 1
    else:
        raise ReidemeisterError(f"edge {edge} does not exist")
    crossings.append([edge, loop, loop, out] if positive else [edge, out, loop, loop])
    return KnotDiagram.from_pd(crossings, free_loops=free)


def _r2(d: KnotDiagram, e1: int, e2: int, over: bool) -> KnotDiagram:
    if e1 == e2:
        raise ReidemeisterError("R2 needs two distinct edges")
    chosen = None
    for face in faces(d):
        darts = {e: (fr, to) for e, fr, to in face}
        if e1 in darts and e2 in darts:
            chosen = darts
            break
    if chosen is None:
        raise ReidemeisterError(f"edges {e1} and {e2} do not share a face")

    (u1, v1), (u2, v2) = chosen[e1], chosen[e2]
    along1 = d.head(e1) == v1
    along2 = d.head(e2) == v2
    crossings = [list(x) for x in d.crossings]
    top = d.edge_count + d.free_loops
    e1a, e2a, m, u = top + 1, top + 2, top + 3, top + 4
    crossings[v1[0]][v1[1]] = e1a
    crossings[v2[0]][v2[1]] = e2a
    e1b, e2b = e1, e2
    if over:
        p = (m, e1b, e2a, u) if along2 else (e2a, u, m, e1b)
        q = (e2b, e1a, m, u) if along2 else (m, u, e2b, e1a)
    else:
        p = (e1b, e2a, u, m) if along1 else (u, m, e1b, e2a)
        q = (u, e2b, e1a, m) if along1 else (e1a, m, u, e2b)
    crossings += [list(p), list(q)]
    return KnotDiagram.from_pd(crossings, free_loops=d.free_loops)


def _triangle(d: KnotDiagram, edges: frozenset[int]):
    for face in faces(d):
        if len(face) == 3 and frozenset(e for e, _, _ in face) == edges:
            if len({fr[0] for _, fr, _ in face}) == 3:
                return face
    return None


def _r3_applicable(d: KnotDiagram, face) -> bool:
    # some side of the triangle is over at both ends (or under at both)
    return any((fr[1] % 2) == (to[1] % 2) for _, fr, to in face)


def _r3(d: KnotDiagram, edges: frozenset[int]) -> KnotDiagram:
    face = _triangle(d, edges)
    if face is None:
        raise ReidemeisterError(f"edges {sorted(edges)} do not bound a triangular face")
    if not _r3_applicable(d, face):
        raise ReidemeisterError("triangle is cyclically over/under; R3 does not apply")
    old = d.crossings
    new = [list(x) for x in old]
    for t, a, b in face:
        for here, there in ((a, b), (b, a)):
            x, s = here
            y, sy = there
            new[x][s] = old[y][(sy + 2) % 4]
            new[x][(s + 2) % 4] = t
    return KnotDiagram.from_pd(new, free_loops=d.free_loops)


def reidemeister_sites(d: KnotDiagram) -> Iterator[tuple[str, object, bool]]:
    """Every ``(move, site, over)`` that :func:`apply_reidemeister` accepts."""
    for e in range(1, d.edge_count + d.free_loops + 1):
        yield ("R1+", e, True)
        yield ("R1-", e, True)
    seen = set()
    for face in faces(d):
        edges = [e for e, _, _ in face]
        for i, e1 in enumerate(edges):
            for e2 in edges[i + 1:]:
                if e1 != e2 and (e1, e2) not in seen:
                    seen.add((e1, e2))
                    yield ("R2", (e1, e2), True)
                    yield ("R2", (e1, e2), False)
        if len(face) == 3 and _triangle(d, frozenset(edges)) is not None and _r3_applicable(d, face):
            yield ("R3", tuple(sorted(edges)), True)


def reidemeister_variants(d: KnotDiagram, moves: Iterable[str] = MOVES) -> Iterator[tuple[str, object, KnotDiagram]]:
    wanted = set(moves)
    for move, site, over in reidemeister_sites(d):
        if move in wanted:
            yield move, site, apply_reidemeister(d, move, site, over=over)

"""Bundled test diagrams and generated Reidemeister pairs.

``small`` holds the diagrams every quick check runs on; ``standard`` adds
torus knots, 5_2 and connected sums (all at most 8 crossings).  Reidemeister
pairs are produced from a few base diagrams by :mod:`khlab.diagram`'s move
generators and are always recomputed, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagram import (
    KnotDiagram,
    apply_reidemeister,
    close_braid,
    connected_sum,
    mirror,
    parse_diagram,
    reidemeister_sites,
    render_pd,
)

TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    diagram: KnotDiagram
    source: str

    @property
    def pd(self) -> str:
        return render_pd(self.diagram)


def _entry(name: str, text: str) -> CorpusEntry:
    return CorpusEntry(name, parse_diagram(text), text)


def _derived(name: str, d: KnotDiagram, how: str) -> CorpusEntry:
    return CorpusEntry(name, d, how)


@lru_cache(maxsize=None)
def _small() -> tuple[CorpusEntry, ...]:
    trefoil = parse_diagram(TREFOIL_PD)
    return (
        _entry("unknot", "PD[O(1)]"),
        _entry("unknot_kink_pos", "B[2; 1]"),
        _entry("unknot_kink_neg", "B[2; -1]"),
        _entry("unknot_two_kinks", "B[3; 1, 2]"),
        _entry("unknot_mixed_kinks", "B[3; 1, -2]"),
        _entry("trefoil_right", TREFOIL_PD),
        _derived("trefoil_left", mirror(trefoil), "mirror(trefoil_right)"),
        _entry("figure_eight", "B[3; 1, -2, 1, -2]"),
        _entry("hopf", "B[2; 1, 1]"),
        _entry("unlink2", "PD[O(1), O(2)]"),
    )


@lru_cache(maxsize=None)
def _standard() -> tuple[CorpusEntry, ...]:
    trefoil = parse_diagram(TREFOIL_PD)
    left = mirror(trefoil)
    fig8 = parse_diagram("B[3; 1, -2, 1, -2]")
    extra = (
        _entry("trefoil_right_braid", "B[2; 1, 1, 1]"),
        _entry("hopf_negative", "B[2; -1, -1]"),
        _entry("five_two", "B[3; 1, 1, 1, 2, -1, 2]"),
        _entry("torus_2_5", "B[2; 1, 1, 1, 1, 1]"),
        _entry("torus_2_7", "B[2; 1, 1, 1, 1, 1, 1, 1]"),
        _entry("torus_3_4", "B[3; 1, 2, 1, 2, 1, 2, 1, 2]"),
        _derived("granny", connected_sum(trefoil, trefoil), "trefoil_right # trefoil_right"),
        _derived("square", connected_sum(trefoil, left), "trefoil_right # trefoil_left"),
        _derived("trefoil_figure_eight", connected_sum(trefoil, fig8), "trefoil_right # figure_eight"),
    )
    return _small() + extra


REIDEMEISTER_BASES = ("unknot", "trefoil_right", "figure_eight", "hopf", "unlink2")
# closures of σ1σ2σ1 and σ1σ2σ1⁻¹ carry triangles on which R3 applies
R3_BASES = ("B[3; 1, 2, 1]", "B[3; 1, 2, -1]", "B[3; 1, 1, 2, -1, 2, 2]")


@dataclass(frozen=True)
class ReidemeisterPair:
    name: str
    move: str
    site: object
    before: KnotDiagram
    after: KnotDiagram


def _first_of_each(d: KnotDiagram, base_name: str, moves) -> list[ReidemeisterPair]:
    out = []
    wanted = list(moves)
    taken: set = set()
    for move, site, over in reidemeister_sites(d):
        key = (move, over)
        if move in wanted and key not in taken:
            taken.add(key)
            tag = f"{move}{'' if move != 'R2' else ('o' if over else 'u')}"
            name = f"{base_name}+{tag}@{site}"
            out.append(ReidemeisterPair(name, move, site, d, apply_reidemeister(d, move, site, over=over)))
    return out


@lru_cache(maxsize=None)
def reidemeister_pairs() -> tuple[ReidemeisterPair, ...]:
    """Deterministic list of ``(d, d')`` pairs covering R1+, R1-, R2 and R3."""
    entries = {e.name: e for e in _small()}
    pairs: list[ReidemeisterPair] = []
    for name in REIDEMEISTER_BASES:
        pairs += _first_of_each(entries[name].diagram, name, ("R1+", "R1-", "R2"))
    for text in R3_BASES:
        pairs += _first_of_each(parse_diagram(text), text.replace(" ", ""), ("R3",))
    # a second-generation pair: an R3 move inside an R2 finger on the trefoil
    for p in list(pairs):
        if p.before is entries["trefoil_right"].diagram and p.move == "R2":
            more = _first_of_each(p.after, p.name, ("R3",))
            if more:
                pairs += more
                break
    return tuple(pairs)


CORPORA = ("small", "standard", "reidemeister")


def corpus(name: str = "standard") -> list[CorpusEntry]:
    if name == "small":
        return list(_small())
    if name == "standard":
        return list(_standard())
    if name == "reidemeister":
        out = []
        for p in reidemeister_pairs():
            out.append(CorpusEntry(p.name, p.after, p.name))
        return out
    raise KeyError(f"unknown corpus {name!r}; expected one of {CORPORA}")


def get(name: str) -> KnotDiagram:
    for e in _standard():
        if e.name == name:
            return e.diagram
    raise KeyError(name)

"""Rank-1 transfinite graphs: sections, tips, 1-nodes, and walk distances.

A 1-graph glues infinite extremities (tips) of ordinary graph sections into
1-nodes.  Distances count walk lengths as ordinals below w**2: a one-ended
extended segment costs w, an endless one w*2, finite segments count branches.
The search never materialises a walk; it runs a lexicographic Dijkstra over a
finite quotient (sections as connecting fabric, 1-nodes and promoted
endpoints as vertices) and returns the length plus a finite leg summary.

The catalog builds four fixed families:

  diamond_chain              series of diamond "chains", tip-only 1-nodes
  one_path_of_endless_paths  endless sequence of endless-path segments
  ladder_of_endless_paths    every ladder branch blown up into a segment
  partial_ladder             horizontal branches blown up, star kept intact

Uncountably many zig-zag tips of the diamond chains exist mathematically but
are excluded from the presentation: each would be an isolated singleton
1-node that can never shorten a walk between named nodes.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .graphs import (NodeTerm, NotAMemberError, UnreachableError, natkey)
from .kernel import TruthSet, cofinite_set, finite_set, intersect
from .ordinal import ZERO, Ordinal
from .sequences import (Aff, Constant, Opaque, ParityS, SymInt, bump_start,
                        classify, eq_const_truthset, eq_truthset, parity_sym,
                        sym_abs, sym_add, sym_scale, sym_start, sym_sub,
                        sym_value, zone_by_magnitude)

DEFAULT_WINDOW_MARGIN = 2
SEARCH_POP_BUDGET = 20_000


# ====== Identifiers ======

@dataclass(frozen=True)
class SectionId:
    kind: str
    index: int = 0

    def sort_key(self):
        return (self.kind, natkey(self.index))


@dataclass(frozen=True)
class TipId:
    """A named infinite extremity of one section."""
    section: SectionId
    name: str


@dataclass(frozen=True)
class OneNodeId:
    kind: str  # "x1" indexed, "xg" the ladder ground 1-node
    index: int = 0

    def sort_key(self):
        return ("one", self.kind, natkey(self.index))

    def describe(self) -> str:
        return "xg" if self.kind == "xg" else f"x1:{self.index}"


@dataclass(frozen=True)
class OneNode:
    """A 1-node: a set of tips, optionally holding one embedded 0-node.

    `tips` is None for the one catalog 1-node with infinitely many tips (the
    blown-up ladder's ground); enumerate those through tips_of() instead.
    """
    id: OneNodeId
    tips: frozenset[TipId] | None
    embedded: object | None = None


@dataclass(frozen=True)
class Incidence:
    """How one 1-node touches one section: a tip, an embedded 0-node, or both."""
    one: OneNodeId
    tip: TipId | None = None
    embedded: object | None = None


# ====== 0-nodes of the catalog families ======

@dataclass(frozen=True)
class DiamondNode:
    side: str  # "j" junction, "l" left, "r" right
    chain: int
    depth: int

    def sort_key(self):
        return ("dia", natkey(self.chain), natkey(self.depth), self.side)


@dataclass(frozen=True)
class SegNode:
    seg: int
    pos: int

    def sort_key(self):
        return ("seg", natkey(self.seg), natkey(self.pos))


@dataclass(frozen=True)
class RailNode:
    rail: str  # "v" vertical, "h" horizontal
    index: int
    pos: int

    def sort_key(self):
        return ("rail", self.rail, natkey(self.index), natkey(self.pos))


@dataclass(frozen=True)
class StarNode:
    leaf: int | None  # None is the hub, k is the leaf toward x_k

    def sort_key(self):
        return ("star", natkey(-1 if self.leaf is None else self.leaf))


def _vertex_key(ref) -> tuple:
    return ref.sort_key()


# ====== Walk summaries ======

@dataclass(frozen=True)
class WalkLeg:
    via: SectionId
    mechanism: str  # "finite" | "tip" | "tip+tip" | "tip+embedded" | "embedded"
    cost: Ordinal


@dataclass(frozen=True)
class WalkSummary:
    total: Ordinal
    stops: tuple  # visited vertices: 0-nodes and OneNodeIds
    legs: tuple[WalkLeg, ...]

    def describe(self) -> str:
        names = []
        for s in self.stops:
            names.append(s.describe() if isinstance(s, OneNodeId) else repr(s))
        return " -> ".join(names)


# ====== Symbolic helpers ======

def _pair_const(omega: int, finite: int, start: int = 0) -> tuple[SymInt, SymInt]:
    return Aff(0, omega, start), Aff(0, finite, start)


def _abs_scaled(delta: SymInt, factor: int) -> SymInt:
    return sym_scale(factor, sym_abs(delta))


def _updown(delta: SymInt, fn: Callable[[int], int],
            up: tuple[int, int], down: tuple[int, int]) -> SymInt | None:
    """Piecewise-linear in delta: up[0]*d+up[1] when d >= 1, down[0]*|d|+down[1] otherwise."""
    if isinstance(delta, ParityS):
        e = _updown(delta.even, fn, up, down)
        o = _updown(delta.odd, fn, up, down)
        if e is None or o is None:
            return None
        return parity_sym(e, o)
    c = classify(delta)
    start = sym_start(delta)
    value = lambda d: up[0] * d + up[1] if d >= 1 else down[0] * (-d) + down[1]
    if c.kind == "range" and c.exact:
        return Aff(0, value(c.lo), start)
    if c.kind in ("pinf", "ninf"):
        return Opaque(fn, to_pinf=True, start=start)
    if c.kind == "range":
        if c.lo >= 1:
            lo, hi = value(c.lo), value(c.hi)
        elif c.hi <= 0:
            lo, hi = value(c.hi), value(c.lo)
        else:
            pieces = [value(d) for d in (0, 1, c.lo, c.hi)]
            lo, hi = min(pieces), max(pieces)
        return Opaque(fn, lo=min(lo, hi), hi=max(lo, hi), start=start)
    return None


def _fn_from_sym(sym: SymInt, shape: Callable[[int], int]) -> Callable[[int], int]:
    return lambda n: shape(sym_value(sym, n))


# ====== Base class ======

class OneGraph:
    """A catalog 1-graph presented through section and incidence oracles."""

    family: str = ""
    locally_1_finite: bool = True        # sections touch finitely many boundary 1-nodes
    locally_section_finite: bool = True  # 1-nodes touch finitely many sections
    one_wconnected: bool = True
    infinitely_many_boundary: bool = True

    # -- membership --
    def contains(self, ref) -> bool:
        if isinstance(ref, OneNodeId):
            return self.contains_one(ref)
        return self.contains_zero(ref)

    def contains_zero(self, node) -> bool:
        raise NotImplementedError

    def contains_one(self, one_id: OneNodeId) -> bool:
        raise NotImplementedError

    def require_member(self, ref) -> None:
        if not self.contains(ref):
            raise NotAMemberError(f"{ref!r} is not a node of {self.family}")

    # -- structure --
    def section_of(self, zero_node) -> SectionId:
        raise NotImplementedError

    def section_distance(self, u, v) -> int:
        """Finite 0-distance inside a shared section."""
        raise NotImplementedError

    def sections(self, horizon: int) -> Iterator[SectionId]:
        raise NotImplementedError

    def one_node(self, one_id: OneNodeId) -> OneNode:
        raise NotImplementedError

    def one_node_ids(self, horizon: int) -> Iterator[OneNodeId]:
        raise NotImplementedError

    def incidences(self, section: SectionId, window: tuple[int, int]) -> list[Incidence]:
        """1-nodes touching the section, index-restricted for infinite fans."""
        raise NotImplementedError

    def sections_of(self, one_id: OneNodeId,
                    window: tuple[int, int]) -> list[tuple[SectionId, Incidence]]:
        raise NotImplementedError

    def one_node_containing(self, zero_node) -> OneNodeId | None:
        """The 1-node a nonmaximal 0-node is embedded in, if any."""
        return None

    def anchor_one(self) -> OneNodeId:
        raise NotImplementedError

    def anchor_term(self) -> NodeTerm:
        """The anchor 1-node as a constant node term."""
        raise NotImplementedError

    def anchor_zero(self):
        raise NotImplementedError

    # -- indices, used for search windows --
    def ref_indices(self, ref) -> list[int]:
        raise NotImplementedError

    # -- terms --
    TERM_ARITY: dict[str, int] = {}

    def instantiate_term(self, ctor: str, args: tuple[int, ...]):
        raise NotImplementedError

    def normalize_term(self, term: NodeTerm) -> NodeTerm:
        """Rewrite to the canonical constructor for the same nodes."""
        return term

    def promote_term(self, term: NodeTerm) -> NodeTerm:
        """Replace a nonmaximal 0-node constructor by its holding 1-node's."""
        return term

    def check_term(self, term: NodeTerm) -> None:
        arity = self.TERM_ARITY.get(term.ctor)
        if arity is None:
            raise NotAMemberError(f"unknown node constructor {term.ctor!r} for {self.family}")
        if arity != len(term.params):
            raise NotAMemberError(
                f"constructor {term.ctor!r} takes {arity} parameter(s), got {len(term.params)}")

    def term_node(self, term: NodeTerm, n: int):
        args = tuple(p.value(n) for p in term.params)
        node = self.instantiate_term(term.ctor, args)
        self.require_member(node)
        return node

    def symbolic_wdistance(self, ta: NodeTerm,
                           tb: NodeTerm) -> tuple[SymInt, SymInt] | None:
        """Certified (omega part, finite part) of n -> wdistance(ta(n), tb(n))."""
        return None

    def adjacency_truthset(self, ta: NodeTerm, tb: NodeTerm) -> TruthSet | None:
        """Classification of {n : the two generated 0-nodes share a branch}."""
        return None

    def term_wdistance_fn(self, ta: NodeTerm, tb: NodeTerm) -> Callable[[int], Ordinal]:
        def fn(n: int) -> Ordinal:
            return wdistance(self, self.term_node(ta, n), self.term_node(tb, n))
        return fn

    # -- sampling --
    def sample_maximal_nodes(self, rng, count: int, span: int = 6) -> list:
        raise NotImplementedError


# ====== Promotion ======

def promote(g: OneGraph, ref):
    """Replace a nonmaximal 0-node by the 1-node containing it."""
    g.require_member(ref)
    if isinstance(ref, OneNodeId):
        return ref
    holder = g.one_node_containing(ref)
    return holder if holder is not None else ref


# ====== The lexicographic quotient search ======

def _incidence_entry_cost(g: OneGraph, u, inc: Incidence) -> tuple[int, int] | None:
    """Lex cost from a 0-node to a 1-node met inside the node's section."""
    best = None
    if inc.embedded is not None:
        best = (0, g.section_distance(u, inc.embedded))
    if inc.tip is not None and best is None:
        best = (1, 0)
    return best


def _one_to_one_cost(g: OneGraph, inc_a: Incidence, inc_b: Incidence) -> tuple[int, int]:
    options = []
    if inc_a.tip is not None and inc_b.tip is not None:
        options.append((2, 0))
    if inc_a.tip is not None and inc_b.embedded is not None:
        options.append((1, 0))
    if inc_a.embedded is not None and inc_b.tip is not None:
        options.append((1, 0))
    if inc_a.embedded is not None and inc_b.embedded is not None:
        options.append((0, g.section_distance(inc_a.embedded, inc_b.embedded)))
    return min(options)


def _mechanism(cost: tuple[int, int]) -> str:
    return {0: "finite", 1: "tip", 2: "tip+tip"}[cost[0]]


def _search_window(g: OneGraph, x, y, margin: int) -> tuple[int, int]:
    indices = g.ref_indices(x) + g.ref_indices(y)
    return (min(indices) - margin, max(indices) + margin)


def wdistance_witness(g: OneGraph, x, y,
                      margin: int = DEFAULT_WINDOW_MARGIN) -> tuple[Ordinal, WalkSummary]:
    """Minimum walk length between two nodes, with a finite leg summary.

    Nonmaximal 0-node inputs are promoted to their containing 1-node first.
    The vertex set is the two endpoints plus the 1-nodes inside an index
    window around them; for the catalog families no shortest walk leaves
    that window, since crossing extra sections only ever adds tip costs.
    """
    x, y = promote(g, x), promote(g, y)
    if x == y:
        return ZERO, WalkSummary(ZERO, (x,), ())
    window = _search_window(g, x, y, margin)

    def edges(ref):
        if isinstance(ref, OneNodeId):
            for section, inc_self in g.sections_of(ref, window):
                if not isinstance(y, OneNodeId) and g.section_of(y) == section:
                    cost = _incidence_entry_cost(g, y, inc_self)
                    if cost is not None:
                        yield y, cost, WalkLeg(section, _mechanism(cost), Ordinal(*cost))
                for inc in g.incidences(section, window):
                    if inc.one == ref:
                        continue
                    cost = _one_to_one_cost(g, inc_self, inc)
                    yield inc.one, cost, WalkLeg(section, _mechanism(cost), Ordinal(*cost))
        else:
            section = g.section_of(ref)
            if not isinstance(y, OneNodeId) and g.section_of(y) == section and y != ref:
                cost = (0, g.section_distance(ref, y))
                yield y, cost, WalkLeg(section, "finite", Ordinal(*cost))
            for inc in g.incidences(section, window):
                cost = _incidence_entry_cost(g, ref, inc)
                if cost is not None:
                    yield inc.one, cost, WalkLeg(section, _mechanism(cost), Ordinal(*cost))

    dist: dict = {x: (0, 0)}
    pred: dict = {}
    heap = [(0, 0, _vertex_key(x), x)]
    done = set()
    pops = 0
    while heap:
        w1, w0, _, ref = heapq.heappop(heap)
        if ref in done:
            continue
        done.add(ref)
        pops += 1
        if ref == y:
            break
        if pops > SEARCH_POP_BUDGET:
            raise UnreachableError("search budget exhausted before reaching the target")
        for nref, (c1, c0), leg in edges(ref):
            cand = (w1 + c1, w0 + c0)
            known = dist.get(nref)
            if known is None or cand < known:
                dist[nref] = cand
                pred[nref] = (ref, leg)
                heapq.heappush(heap, (cand[0], cand[1], _vertex_key(nref), nref))
    if y not in done:
        raise UnreachableError(f"{x!r} and {y!r} are not 1-wconnected within the window")
    total = Ordinal(*dist[y])
    stops, legs = [y], []
    ref = y
    while ref != x:
        ref, leg = pred[ref]
        stops.append(ref)
        legs.append(leg)
    return total, WalkSummary(total, tuple(reversed(stops)), tuple(reversed(legs)))


def wdistance(g: OneGraph, x, y, margin: int = DEFAULT_WINDOW_MARGIN) -> Ordinal:
    total, _ = wdistance_witness(g, x, y, margin)
    return total


# ====== Boundary structure ======

def is_boundary(g: OneGraph, one_id: OneNodeId, horizon: int = 64) -> bool:
    """Boundary 1-nodes touch at least two sections (tips plus embedded node)."""
    g.require_member(one_id)
    window = (-horizon, horizon)
    return len({section for section, _ in g.sections_of(one_id, window)}) >= 2


def boundary_one_nodes(g: OneGraph, horizon: int = 64) -> Iterator[OneNodeId]:
    for one_id in g.one_node_ids(horizon):
        if is_boundary(g, one_id, horizon):
            yield one_id


def is_locally_1_finite(g: OneGraph, sample_sections: int = 16,
                        probe: int = 256) -> bool:
    """Probe sampled sections for an unbounded fan of boundary 1-nodes."""
    window = (-probe, probe)
    for section in itertools.islice(g.sections(sample_sections), sample_sections):
        incident = {inc.one for inc in g.incidences(section, window)
                    if is_boundary(g, inc.one)}
        if len(incident) >= probe:
            return False
    return True


def one_adjacent(g: OneGraph, a: OneNodeId, b: OneNodeId, horizon: int = 64) -> bool:
    """1-adjacent means incident to a shared section."""
    g.require_member(a)
    g.require_member(b)
    window = (-horizon, horizon)
    sections_a = {section for section, _ in g.sections_of(a, window)}
    return any(section in sections_a for section, _ in g.sections_of(b, window))


@dataclass(frozen=True)
class SeparationVerdict:
    applicable: bool
    passed: bool | None
    distance: Ordinal | None
    reason: str = ""


def check_separation_bound(g: OneGraph, a: OneNodeId, b: OneNodeId) -> SeparationVerdict:
    """Non-1-adjacent 1-nodes must sit at walk distance at least w."""
    if a == b or one_adjacent(g, a, b):
        return SeparationVerdict(False, None, None, "nodes share a section")
    try:
        d = wdistance(g, a, b)
    except UnreachableError:
        return SeparationVerdict(False, None, None, "not 1-wconnected within budget")
    return SeparationVerdict(True, d >= Ordinal(1, 0), d)


# ====== Families ======

class DiamondChain(OneGraph):
    """Series of diamond chains; consecutive chains meet in a tip-only 1-node.

    Chain k holds junctions J(k,d) with left/right companions; x_k0 = J(k,0).
    The only way between distinct chains is through a tip, so 0-paths between
    far-apart bases do not exist although walks do.
    """

    family = "diamond_chain"
    TERM_ARITY = {"j": 2, "l": 2, "r": 2, "x0": 1, "x1": 1}

    def contains_zero(self, node) -> bool:
        return (isinstance(node, DiamondNode) and node.side in "jlr"
                and node.chain >= 0 and node.depth >= 0)

    def contains_one(self, one_id) -> bool:
        return one_id.kind == "x1" and one_id.index >= 0

    def section_of(self, node) -> SectionId:
        return SectionId("chain", node.chain)

    @staticmethod
    def _height(node: DiamondNode) -> int:
        return 2 * node.depth + (0 if node.side == "j" else 1)

    def section_distance(self, u, v) -> int:
        if u == v:
            return 0
        # left and right companions at equal depth only meet through a junction
        if {u.side, v.side} == {"l", "r"} and u.depth == v.depth:
            return 2
        return abs(self._height(u) - self._height(v))

    def sections(self, horizon):
        return (SectionId("chain", k) for k in range(horizon))

    def one_node(self, one_id) -> OneNode:
        self.require_member(one_id)
        k = one_id.index
        tips = {TipId(SectionId("chain", k), "left")}
        if k >= 1:
            tips.add(TipId(SectionId("chain", k - 1), "right"))
        return OneNode(one_id, frozenset(tips))

    def one_node_ids(self, horizon):
        return (OneNodeId("x1", k) for k in range(horizon))

    def incidences(self, section, window):
        k = section.index
        return [Incidence(OneNodeId("x1", k), tip=TipId(section, "left")),
                Incidence(OneNodeId("x1", k + 1), tip=TipId(section, "right"))]

    def sections_of(self, one_id, window):
        k = one_id.index
        out = []
        if k >= 1:
            s = SectionId("chain", k - 1)
            out.append((s, Incidence(one_id, tip=TipId(s, "right"))))
        s = SectionId("chain", k)
        out.append((s, Incidence(one_id, tip=TipId(s, "left"))))
        return out

    def anchor_one(self):
        return OneNodeId("x1", 0)

    def anchor_zero(self):
        return DiamondNode("j", 0, 0)

    def anchor_term(self):
        return NodeTerm("x1", (Constant(0),))

    def ref_indices(self, ref) -> list[int]:
        return [ref.index if isinstance(ref, OneNodeId) else ref.chain]

    def instantiate_term(self, ctor, args):
        if ctor == "x1":
            return OneNodeId("x1", args[0])
        if ctor == "x0":
            return DiamondNode("j", args[0], 0)
        if ctor in ("j", "l", "r"):
            return DiamondNode(ctor, args[0], args[1])
        raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")

    def normalize_term(self, term):
        if term.ctor == "x0":
            return NodeTerm("j", (term.params[0], Constant(0)))
        return term

    def symbolic_wdistance(self, ta, tb):
        ta, tb = self.normalize_term(ta), self.normalize_term(tb)
        if ta.ctor == "x1" and tb.ctor == "x1":
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
            return _abs_scaled(delta, 2), Aff(0, 0, sym_start(delta))
        if "x1" in (ta.ctor, tb.ctor):
            if tb.ctor == "x1":
                ta, tb = tb, ta
            m = ta.param_syms()[0]
            k = tb.param_syms()[0]
            delta = sym_sub(m, k)  # x1 index minus chain index
            omega = _updown(delta, _fn_from_sym(delta, lambda d: 2 * d - 1 if d >= 1 else 2 * (-d) + 1),
                            up=(2, -1), down=(2, 1))
            if omega is None:
                return None
            return omega, Aff(0, 0, sym_start(delta))
        return self._zero_zero_sym(ta, tb)

    def _zero_zero_sym(self, ta, tb):
        ka, kb = ta.param_syms()[0], tb.param_syms()[0]
        delta = sym_sub(ka, kb)
        same_chain = eq_truthset(delta)
        if same_chain is None:
            return None
        start = sym_start(delta)
        if same_chain.kind == "cofinite":
            fin = self._same_chain_distance(ta, tb)
            if fin is None:
                return None
            t = same_chain.threshold
            return Aff(0, 0, max(start, t)), bump_start(fin, t)
        if same_chain.kind == "finite":
            return _abs_scaled(delta, 2), Aff(0, 0, max(start, same_chain.threshold))
        return None  # parity-straddling chain split: fall back to pointwise

    def _same_chain_distance(self, ta, tb) -> SymInt | None:
        da, db = ta.param_syms()[1], tb.param_syms()[1]
        ha = sym_add(sym_scale(2, da), Aff(0, 0 if ta.ctor == "j" else 1))
        hb = sym_add(sym_scale(2, db), Aff(0, 0 if tb.ctor == "j" else 1))
        gap = sym_abs(sym_sub(ha, hb))
        if {ta.ctor, tb.ctor} != {"l", "r"}:
            return gap
        # opposite companions: equal depth costs 2, otherwise the height gap
        depth_eq = eq_truthset(sym_sub(da, db))
        if depth_eq is None:
            return None
        if depth_eq.kind == "finite":
            return bump_start(gap, depth_eq.threshold)
        if depth_eq.kind == "cofinite":
            return Aff(0, 2, max(sym_start(gap), depth_eq.threshold))
        return None

    def adjacency_truthset(self, ta, tb):
        ta, tb = self.normalize_term(ta), self.normalize_term(tb)
        if "x1" in (ta.ctor, tb.ctor):
            return finite_set()  # 1-nodes hold no branches themselves
        same_chain = eq_truthset(sym_sub(ta.param_syms()[0], tb.param_syms()[0]))
        if same_chain is None:
            return None
        never_in_section = ta.ctor == tb.ctor or {ta.ctor, tb.ctor} == {"l", "r"}
        if same_chain.kind == "finite" or never_in_section:
            return finite_set(same_chain.threshold)
        # junction vs companion: adjacent when depths are equal or companion
        # sits one step above the junction
        j_term, c_term = (ta, tb) if ta.ctor == "j" else (tb, ta)
        dj, dc = j_term.param_syms()[1], c_term.param_syms()[1]
        same = eq_truthset(sym_sub(dj, dc))
        above = eq_const_truthset(sym_sub(dj, dc), 1)
        if same is None or above is None:
            return None
        cond = _ts_union(same, above)
        return intersect(cond, same_chain) if cond is not None else None

    def sample_maximal_nodes(self, rng, count, span=6):
        out = []
        for _ in range(count):
            if rng.random() < 0.3:
                out.append(OneNodeId("x1", rng.randint(0, span)))
            else:
                out.append(DiamondNode(rng.choice("jlr"), rng.randint(0, span),
                                       rng.randint(0, span)))
        return out


def _ts_union(a: TruthSet, b: TruthSet, threshold: int = 0) -> TruthSet | None:
    """Union of two classified sets, when the result is classifiable."""
    t = max(a.threshold, b.threshold, threshold)
    kinds = {a.kind, b.kind}
    if "cofinite" in kinds:
        return cofinite_set(t)
    if kinds == {"finite"}:
        return finite_set(t)
    if a.kind == "split" and b.kind == "finite":
        return TruthSet("split", t, a.even_true)
    if b.kind == "split" and a.kind == "finite":
        return TruthSet("split", t, b.even_true)
    if kinds == {"split"}:
        return cofinite_set(t) if a.even_true != b.even_true \
            else TruthSet("split", t, a.even_true)
    return None


class OnePathOfEndlessPaths(OneGraph):
    """An endless 1-path: consecutive 1-nodes joined by endless-path sections."""

    family = "one_path_of_endless_paths"
    TERM_ARITY = {"e": 2, "x1": 1}

    def contains_zero(self, node) -> bool:
        return isinstance(node, SegNode)

    def contains_one(self, one_id) -> bool:
        return one_id.kind == "x1"

    def section_of(self, node) -> SectionId:
        return SectionId("seg", node.seg)

    def section_distance(self, u, v) -> int:
        return abs(u.pos - v.pos)

    def sections(self, horizon):
        for k in range(horizon):
            yield SectionId("seg", k)
            if k > 0:
                yield SectionId("seg", -k)

    def one_node(self, one_id) -> OneNode:
        self.require_member(one_id)
        k = one_id.index
        return OneNode(one_id, frozenset({
            TipId(SectionId("seg", k - 1), "pos"),
            TipId(SectionId("seg", k), "neg"),
        }))

    def one_node_ids(self, horizon):
        for k in range(horizon):
            yield OneNodeId("x1", k)
            if k > 0:
                yield OneNodeId("x1", -k)

    def incidences(self, section, window):
        k = section.index
        return [Incidence(OneNodeId("x1", k), tip=TipId(section, "neg")),
                Incidence(OneNodeId("x1", k + 1), tip=TipId(section, "pos"))]

    def sections_of(self, one_id, window):
        k = one_id.index
        left, right = SectionId("seg", k - 1), SectionId("seg", k)
        return [(left, Incidence(one_id, tip=TipId(left, "pos"))),
                (right, Incidence(one_id, tip=TipId(right, "neg")))]

    def anchor_one(self):
        return OneNodeId("x1", 0)

    def anchor_zero(self):
        return SegNode(0, 0)

    def anchor_term(self):
        return NodeTerm("x1", (Constant(0),))

    def ref_indices(self, ref) -> list[int]:
        return [ref.index if isinstance(ref, OneNodeId) else ref.seg]

    def instantiate_term(self, ctor, args):
        if ctor == "x1":
            return OneNodeId("x1", args[0])
        if ctor == "e":
            return SegNode(args[0], args[1])
        raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")

    def symbolic_wdistance(self, ta, tb):
        if ta.ctor == "x1" and tb.ctor == "x1":
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
            return _abs_scaled(delta, 2), Aff(0, 0, sym_start(delta))
        if "x1" in (ta.ctor, tb.ctor):
            if tb.ctor == "x1":
                ta, tb = tb, ta
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])  # m - k
            omega = _updown(delta, _fn_from_sym(delta, lambda d: 2 * d - 1 if d >= 1 else 2 * (-d) + 1),
                            up=(2, -1), down=(2, 1))
            if omega is None:
                return None
            return omega, Aff(0, 0, sym_start(delta))
        delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
        same_seg = eq_truthset(delta)
        if same_seg is None:
            return None
        start = sym_start(delta)
        if same_seg.kind == "cofinite":
            fin = sym_abs(sym_sub(ta.param_syms()[1], tb.param_syms()[1]))
            t = same_seg.threshold
            return Aff(0, 0, max(start, t)), bump_start(fin, t)
        if same_seg.kind == "finite":
            return _abs_scaled(delta, 2), Aff(0, 0, max(start, same_seg.threshold))
        return None

    def adjacency_truthset(self, ta, tb):
        if "x1" in (ta.ctor, tb.ctor):
            return finite_set()
        same_seg = eq_truthset(sym_sub(ta.param_syms()[0], tb.param_syms()[0]))
        if same_seg is None or same_seg.kind == "split":
            return None
        if same_seg.kind == "finite":
            return finite_set(same_seg.threshold)
        step = eq_const_truthset(
            sym_abs(sym_sub(ta.param_syms()[1], tb.param_syms()[1])), 1)
        return intersect(step, same_seg) if step is not None else None

    def sample_maximal_nodes(self, rng, count, span=6):
        out = []
        for _ in range(count):
            if rng.random() < 0.3:
                out.append(OneNodeId("x1", rng.randint(-span, span)))
            else:
                out.append(SegNode(rng.randint(-span, span), rng.randint(-span, span)))
        return out


class LadderOfEndlessPaths(OneGraph):
    """Every branch of the grounded ladder blown up into an endless path.

    The former ground becomes the 1-node xg holding one tip per vertical
    section (infinitely many); every walk distance is uniformly small, so the
    enlargement has a single 1-galaxy.
    """

    family = "ladder_of_endless_paths"
    locally_section_finite = False  # xg touches every vertical section
    TERM_ARITY = {"v": 2, "h": 2, "x1": 1, "xg": 0}

    def contains_zero(self, node) -> bool:
        return isinstance(node, RailNode) and node.rail in "vh" and node.index >= 0

    def contains_one(self, one_id) -> bool:
        if one_id.kind == "xg":
            return one_id.index == 0
        return one_id.kind == "x1" and one_id.index >= 0

    def section_of(self, node) -> SectionId:
        return SectionId(node.rail, node.index)

    def section_distance(self, u, v) -> int:
        return abs(u.pos - v.pos)

    def sections(self, horizon):
        for k in range(horizon):
            yield SectionId("v", k)
            yield SectionId("h", k)

    def one_node(self, one_id) -> OneNode:
        self.require_member(one_id)
        if one_id.kind == "xg":
            return OneNode(one_id, None)  # a tip in every vertical section
        k = one_id.index
        tips = {TipId(SectionId("v", k), "pos"), TipId(SectionId("h", k), "neg")}
        if k >= 1:
            tips.add(TipId(SectionId("h", k - 1), "pos"))
        return OneNode(one_id, frozenset(tips))

    def one_node_ids(self, horizon):
        yield OneNodeId("xg")
        yield from (OneNodeId("x1", k) for k in range(horizon))

    def incidences(self, section, window):
        k = section.index
        if section.kind == "v":
            return [Incidence(OneNodeId("xg"), tip=TipId(section, "neg")),
                    Incidence(OneNodeId("x1", k), tip=TipId(section, "pos"))]
        return [Incidence(OneNodeId("x1", k), tip=TipId(section, "neg")),
                Incidence(OneNodeId("x1", k + 1), tip=TipId(section, "pos"))]

    def sections_of(self, one_id, window):
        if one_id.kind == "xg":
            lo, hi = window
            out = []
            for k in range(max(lo, 0), hi + 1):
                s = SectionId("v", k)
                out.append((s, Incidence(one_id, tip=TipId(s, "neg"))))
            return out
        k = one_id.index
        out = []
        s = SectionId("v", k)
        out.append((s, Incidence(one_id, tip=TipId(s, "pos"))))
        if k >= 1:
            s = SectionId("h", k - 1)
            out.append((s, Incidence(one_id, tip=TipId(s, "pos"))))
        s = SectionId("h", k)
        out.append((s, Incidence(one_id, tip=TipId(s, "neg"))))
        return out

    def anchor_one(self):
        return OneNodeId("xg")

    def anchor_zero(self):
        return RailNode("v", 0, 0)

    def anchor_term(self):
        return NodeTerm("xg", ())

    def ref_indices(self, ref) -> list[int]:
        if isinstance(ref, OneNodeId):
            return [0 if ref.kind == "xg" else ref.index]
        return [ref.index]

    def instantiate_term(self, ctor, args):
        if ctor == "xg":
            return OneNodeId("xg")
        if ctor == "x1":
            return OneNodeId("x1", args[0])
        if ctor in ("v", "h"):
            return RailNode(ctor, args[0], args[1])
        raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")

    # worst-case omega coefficients per endpoint sort; every value is uniformly
    # bounded, which is all the single-1-galaxy claims need
    _OMEGA_CAP = {("one", "one"): 4, ("one", "zero"): 5, ("zero", "zero"): 6}

    def symbolic_wdistance(self, ta, tb):
        sort_a = "one" if ta.ctor in ("x1", "xg") else "zero"
        sort_b = "one" if tb.ctor in ("x1", "xg") else "zero"
        start = max([0] + [sym_start(s) for s in ta.param_syms() + tb.param_syms()])
        if ta.ctor == "xg" and tb.ctor == "xg":
            return _pair_const(0, 0, start)
        if sort_a == "one" and sort_b == "one":
            if "xg" in (ta.ctor, tb.ctor):
                other = tb if ta.ctor == "xg" else ta
                # xg to any rung 1-node crosses one vertical section
                return Aff(0, 2, max(start, sym_start(other.param_syms()[0]))), Aff(0, 0, start)
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
            omega = zone_by_magnitude(delta, (0, 2, 4))
            if omega is not None:
                return omega, Aff(0, 0, start)
        cap = self._OMEGA_CAP[tuple(sorted((sort_a, sort_b)))]
        fn_pair = self.term_wdistance_fn(ta, tb)
        omega = Opaque(lambda n: fn_pair(n).omega_coeff, lo=0, hi=cap, start=start)
        if sort_a == "zero" and sort_b == "zero":
            same = self._same_section_ts(ta, tb)
            if same is not None and same.kind == "cofinite":
                fin = sym_abs(sym_sub(ta.param_syms()[1], tb.param_syms()[1]))
                return Aff(0, 0, max(start, same.threshold)), bump_start(fin, same.threshold)
        finite = Opaque(lambda n: fn_pair(n).finite_part, lo=0,
                        hi=None, start=start)
        if sort_a == "zero" and sort_b == "zero":
            same = self._same_section_ts(ta, tb)
            if same is not None and same.kind == "finite":
                finite = Aff(0, 0, max(start, same.threshold))
        else:
            finite = Aff(0, 0, start)
        return omega, finite

    def _same_section_ts(self, ta, tb):
        if ta.ctor != tb.ctor:
            return finite_set()
        return eq_truthset(sym_sub(ta.param_syms()[0], tb.param_syms()[0]))

    def adjacency_truthset(self, ta, tb):
        if "x1" in (ta.ctor, tb.ctor) or "xg" in (ta.ctor, tb.ctor):
            return finite_set()
        same = self._same_section_ts(ta, tb)
        if same is None or same.kind == "split":
            return None
        if same.kind == "finite":
            return finite_set(same.threshold)
        step = eq_const_truthset(
            sym_abs(sym_sub(ta.param_syms()[1], tb.param_syms()[1])), 1)
        return intersect(step, same) if step is not None else None

    def sample_maximal_nodes(self, rng, count, span=6):
        out = []
        for _ in range(count):
            r = rng.random()
            if r < 0.1:
                out.append(OneNodeId("xg"))
            elif r < 0.4:
                out.append(OneNodeId("x1", rng.randint(0, span)))
            else:
                out.append(RailNode(rng.choice("vh"), rng.randint(0, span),
                                    rng.randint(-span, span)))
        return out


class PartialLadderOfEndlessPaths(OneGraph):
    """Ladder with only the horizontal branches blown up; the star survives.

    The former rung nodes x_k become 1-nodes that hold an embedded 0-node of
    the untouched star, so distinct rung 1-nodes are two branches apart:
    finite walk distances between 1-nodes exist here.
    """

    family = "partial_ladder"
    locally_1_finite = False  # the star meets every rung 1-node
    TERM_ARITY = {"h": 2, "zg": 1, "xg": 0, "x1": 1}

    def contains_zero(self, node) -> bool:
        if isinstance(node, StarNode):
            return node.leaf is None or node.leaf >= 0
        return isinstance(node, RailNode) and node.rail == "h" and node.index >= 0

    def contains_one(self, one_id) -> bool:
        return one_id.kind == "x1" and one_id.index >= 0

    def section_of(self, node) -> SectionId:
        if isinstance(node, StarNode):
            return SectionId("star")
        return SectionId("h", node.index)

    def section_distance(self, u, v) -> int:
        if u == v:
            return 0
        if isinstance(u, StarNode):
            return 1 if None in (u.leaf, v.leaf) else 2
        return abs(u.pos - v.pos)

    def sections(self, horizon):
        yield SectionId("star")
        yield from (SectionId("h", k) for k in range(horizon))

    def one_node(self, one_id) -> OneNode:
        self.require_member(one_id)
        k = one_id.index
        tips = {TipId(SectionId("h", k), "neg")}
        if k >= 1:
            tips.add(TipId(SectionId("h", k - 1), "pos"))
        return OneNode(one_id, frozenset(tips), embedded=StarNode(k))

    def one_node_ids(self, horizon):
        return (OneNodeId("x1", k) for k in range(horizon))

    def incidences(self, section, window):
        if section.kind == "star":
            lo, hi = window
            return [Incidence(OneNodeId("x1", k), embedded=StarNode(k))
                    for k in range(max(lo, 0), hi + 1)]
        k = section.index
        return [Incidence(OneNodeId("x1", k), tip=TipId(section, "neg")),
                Incidence(OneNodeId("x1", k + 1), tip=TipId(section, "pos"))]

    def sections_of(self, one_id, window):
        k = one_id.index
        star = SectionId("star")
        out = [(star, Incidence(one_id, embedded=StarNode(k)))]
        if k >= 1:
            s = SectionId("h", k - 1)
            out.append((s, Incidence(one_id, tip=TipId(s, "pos"))))
        s = SectionId("h", k)
        out.append((s, Incidence(one_id, tip=TipId(s, "neg"))))
        return out

    def one_node_containing(self, zero_node):
        if isinstance(zero_node, StarNode) and zero_node.leaf is not None:
            return OneNodeId("x1", zero_node.leaf)
        return None

    def anchor_one(self):
        return OneNodeId("x1", 0)

    def anchor_zero(self):
        return StarNode(None)

    def anchor_term(self):
        return NodeTerm("x1", (Constant(0),))

    def ref_indices(self, ref) -> list[int]:
        if isinstance(ref, OneNodeId):
            return [ref.index]
        if isinstance(ref, StarNode):
            return [0 if ref.leaf is None else ref.leaf]
        return [ref.index]

    def instantiate_term(self, ctor, args):
        if ctor == "xg":
            return StarNode(None)
        if ctor == "zg":
            return StarNode(args[0])
        if ctor == "x1":
            return OneNodeId("x1", args[0])
        if ctor == "h":
            return RailNode("h", args[0], args[1])
        raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")

    def promote_term(self, term):
        # a star leaf is embedded in its rung 1-node; distances promote it
        if term.ctor == "zg":
            return NodeTerm("x1", term.params)
        return term

    def symbolic_wdistance(self, ta, tb):
        ta, tb = self.promote_term(ta), self.promote_term(tb)
        start = max([0] + [sym_start(s) for s in ta.param_syms() + tb.param_syms()])
        if ta.ctor == "xg" and tb.ctor == "xg":
            return _pair_const(0, 0, start)
        if {ta.ctor, tb.ctor} == {"xg", "x1"}:
            return _pair_const(0, 1, start)
        if ta.ctor == "x1" and tb.ctor == "x1":
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
            fin = zone_by_magnitude(delta, (0, 2, 2))
            if fin is None:
                return None
            return Aff(0, 0, start), fin
        if "h" not in (ta.ctor, tb.ctor):
            return None
        if tb.ctor == "h" and ta.ctor != "h":
            ta, tb = tb, ta
        if tb.ctor == "xg":
            return _pair_const(1, 1, start)
        if tb.ctor == "x1":
            k, m = ta.param_syms()[0], tb.param_syms()[0]
            # nearest 1-node of section h_k is x1_k or x1_{k+1}
            near = sym_abs(sym_sub(m, k))
            near2 = sym_abs(sym_sub(m, sym_add(k, Aff(0, 1))))
            fin = self._zone_min(near, near2, (0, 2, 2))
            if fin is None:
                return None
            return Aff(0, 1, start), fin
        delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
        same = eq_truthset(delta)
        if same is None:
            return None
        if same.kind == "cofinite":
            fin = sym_abs(sym_sub(ta.param_syms()[1], tb.param_syms()[1]))
            return Aff(0, 0, max(start, same.threshold)), bump_start(fin, same.threshold)
        if same.kind == "finite":
            omega = Aff(0, 2, max(start, same.threshold))
            fin = zone_by_magnitude(delta, (0, 0, 2))
            if fin is None:
                return None
            return omega, fin
        return None

    @staticmethod
    def _zone_min(mag_a: SymInt, mag_b: SymInt, images) -> SymInt | None:
        za = zone_by_magnitude(mag_a, images)
        zb = zone_by_magnitude(mag_b, images)
        if za is None or zb is None:
            return None
        ca, cb = classify(za), classify(zb)
        if ca.kind == "range" and ca.exact and cb.kind == "range" and cb.exact:
            return Aff(0, min(ca.lo, cb.lo), max(sym_start(za), sym_start(zb)))
        return None

    def adjacency_truthset(self, ta, tb):
        # promotion preserves branch verdicts: a star leaf only touches the
        # hub, exactly like the rung 1-node holding it
        ta, tb = self.promote_term(ta), self.promote_term(tb)
        kinds = {ta.ctor, tb.ctor}
        if kinds == {"xg", "x1"}:
            return cofinite_set()  # hub keeps its branch to every leaf
        if "x1" in kinds or kinds == {"xg"}:
            return finite_set()
        if "h" not in kinds:
            return None
        if kinds == {"h", "xg"}:
            return finite_set()
        same = eq_truthset(sym_sub(ta.param_syms()[0], tb.param_syms()[0]))
        if same is None or same.kind == "split":
            return None
        if same.kind == "finite":
            return finite_set(same.threshold)
        step = eq_const_truthset(
            sym_abs(sym_sub(ta.param_syms()[1], tb.param_syms()[1])), 1)
        return intersect(step, same) if step is not None else None

    def sample_maximal_nodes(self, rng, count, span=6):
        out = []
        for _ in range(count):
            r = rng.random()
            if r < 0.1:
                out.append(StarNode(None))
            elif r < 0.4:
                out.append(OneNodeId("x1", rng.randint(0, span)))
            else:
                out.append(RailNode("h", rng.randint(0, span), rng.randint(-span, span)))
        return out


ONE_FAMILIES = {
    "diamond_chain": DiamondChain,
    "one_path_of_endless_paths": OnePathOfEndlessPaths,
    "ladder_of_endless_paths": LadderOfEndlessPaths,
    "partial_ladder": PartialLadderOfEndlessPaths,
}


def make_one_graph(family: str) -> OneGraph:
    cls = ONE_FAMILIES.get(family)
    if cls is None:
        raise ValueError(f"unknown 1-graph family {family!r}")
    return cls()

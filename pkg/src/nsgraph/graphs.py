"""Infinite graphs presented by adjacency oracles.

A family never materialises its node set.  Nodes are small structured ids,
adjacency is a (possibly infinite) stream, and exact distances come from an
installed closed form where one exists.  The budgeted search is bidirectional
and item-interleaved so that a node of infinite degree (the ladder ground)
consumes budget instead of hanging; it either certifies an exact answer or
reports Exhausted, never a wrong number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from . import sequences as sq
from .kernel import TruthSet, cofinite_set, finite_set, intersect
from .sequences import (Aff, IndexSequence, Opaque, SymInt, classify,
                        eq_const_truthset, parity_sym, sym_abs, sym_add,
                        sym_start, sym_sub, zone_by_magnitude)


class NotAMemberError(ValueError):
    pass


class UnsupportedOracleError(ValueError):
    """No closed-form distance is installed for this family."""


class UnreachableError(RuntimeError):
    pass


class EditValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Exhausted:
    """Search budget ran out before the answer was certified."""

    def __repr__(self) -> str:
        return "EXHAUSTED"


EXHAUSTED = Exhausted()

DEFAULT_BUDGET = 200_000


def natkey(v: int) -> tuple[int, int]:
    """Total order on integers that enumerates naturals before negatives."""
    return (0, v) if v >= 0 else (1, -v)


# ====== Node ids ======

@dataclass(frozen=True)
class PathNode:
    k: int

    def sort_key(self):
        return ("p", natkey(self.k))


@dataclass(frozen=True)
class LadderNode:
    k: int

    def sort_key(self):
        return ("lad", natkey(self.k))


@dataclass(frozen=True)
class Ground:
    def sort_key(self):
        return ("ladg", natkey(0))


@dataclass(frozen=True)
class RayNode:
    j: int

    def sort_key(self):
        return ("ray", natkey(self.j))


@dataclass(frozen=True)
class GridNode:
    k: int
    l: int

    def sort_key(self):
        return ("grid", natkey(self.k), natkey(self.l))


# ====== Node terms ======

@dataclass(frozen=True)
class NodeTerm:
    """Family node constructor applied to index sequences."""

    ctor: str
    params: tuple[IndexSequence, ...]

    def param_syms(self) -> tuple[SymInt, ...]:
        return tuple(p.to_sym() for p in self.params)

    def describe(self) -> str:
        if not self.params:
            return self.ctor
        return f"{self.ctor}:{','.join(p.describe() for p in self.params)}"


class GraphInstance:
    """Base of the rank-0 catalog families."""

    family: str = ""
    locally_finite: bool = True
    has_closed_form: bool = True

    # -- structure --
    def contains(self, node) -> bool:
        raise NotImplementedError

    def neighbors(self, node) -> Iterator:
        raise NotImplementedError

    def anchor(self):
        """Canonical standard node the principal galaxy is measured from."""
        raise NotImplementedError

    def anchor_term(self) -> NodeTerm:
        """The anchor as a constant node term."""
        raise NotImplementedError

    def require_member(self, node) -> None:
        if not self.contains(node):
            raise NotAMemberError(f"{node!r} is not a node of {self.family}")

    # -- distances --
    def closed_form_distance(self, x, y) -> int:
        raise UnsupportedOracleError(f"{self.family} has no closed-form distance")

    def distance(self, x, y, budget: int = DEFAULT_BUDGET) -> int | Exhausted:
        self.require_member(x)
        self.require_member(y)
        if self.has_closed_form:
            return self.closed_form_distance(x, y)
        return bfs_distance(self, x, y, budget)

    # -- terms --
    TERM_ARITY: dict[str, int] = {}

    def instantiate_term(self, ctor: str, args: tuple[int, ...]):
        raise NotImplementedError

    def term_node(self, term: NodeTerm, n: int):
        args = tuple(p.value(n) for p in term.params)
        node = self.instantiate_term(term.ctor, args)
        self.require_member(node)
        return node

    def check_term(self, term: NodeTerm) -> None:
        arity = self.TERM_ARITY.get(term.ctor)
        if arity is None:
            raise NotAMemberError(f"unknown node constructor {term.ctor!r} for {self.family}")
        if arity != len(term.params):
            raise NotAMemberError(
                f"constructor {term.ctor!r} takes {arity} parameter(s), got {len(term.params)}")

    def normalize_term(self, term: NodeTerm) -> NodeTerm:
        """Rewrite to the canonical constructor naming the same nodes."""
        self.check_term(term)
        return term

    # -- symbolic layer --
    def symbolic_distance(self, ta: NodeTerm, tb: NodeTerm) -> SymInt | None:
        return None

    def adjacency_truthset(self, ta: NodeTerm, tb: NodeTerm) -> TruthSet | None:
        return None

    def term_distance_fn(self, ta: NodeTerm, tb: NodeTerm):
        def fn(n: int) -> int:
            d = self.distance(self.term_node(ta, n), self.term_node(tb, n))
            if isinstance(d, Exhausted):
                raise UnreachableError("distance generator exhausted its budget")
            return d
        return fn

    # -- sampling --
    def sample_nodes(self, rng, count: int, span: int = 15) -> list:
        raise NotImplementedError


# ====== Budgeted bidirectional search ======

class _Side:
    __slots__ = ("dist", "frontier", "completed", "done")

    def __init__(self, root):
        self.dist = {root: 0}
        self.frontier = [root]
        self.completed = -1
        self.done = False


def bfs_distance(graph: GraphInstance, x, y, budget: int = DEFAULT_BUDGET) -> int | Exhausted:
    """Exact distance or Exhausted.

    Expands both endpoints a neighbour at a time (round-robin), so infinite
    adjacency streams cannot starve the other side.  A meeting of the two
    searches at total length m is certified exact once m <= cA + cB + 2,
    where cA, cB are the deepest fully expanded levels: any shorter path
    would already have been seen inside the completed shells.
    """
    if x == y:
        return 0
    a, b = _Side(x), _Side(y)
    best: int | None = None

    def stepper(side: _Side, other: _Side):
        nonlocal best
        while side.frontier:
            next_level = []
            for u in side.frontier:
                du = side.dist[u]
                for v in graph.neighbors(u):
                    if v not in side.dist:
                        side.dist[v] = du + 1
                        next_level.append(v)
                        if v in other.dist:
                            cand = side.dist[v] + other.dist[v]
                            if best is None or cand < best:
                                best = cand
                    yield None
            side.completed += 1
            side.frontier = next_level
        side.done = True

    gens = [stepper(a, b), stepper(b, a)]
    live = [True, True]
    spent = 0
    while spent < budget and (live[0] or live[1]):
        for i in (0, 1):
            if not live[i]:
                continue
            try:
                next(gens[i])
                spent += 1
            except StopIteration:
                live[i] = False
            if best is not None and best <= a.completed + b.completed + 2:
                return best
    if best is not None and best <= a.completed + b.completed + 2:
        return best
    if a.done and b.done:
        raise UnreachableError(f"no path between {x!r} and {y!r}")
    return EXHAUSTED


# ====== Symbolic helpers shared by families ======

def _const_value(sym: SymInt) -> int | None:
    c = classify(sym)
    if c.kind == "range" and c.exact:
        return c.lo
    return None


# ====== Families ======

class EndlessPath(GraphInstance):
    """Two-way infinite path: nodes k in Z, branches {k, k+1}."""

    family = "endless_path"
    TERM_ARITY = {"p": 1}

    def contains(self, node) -> bool:
        return isinstance(node, PathNode)

    def neighbors(self, node) -> Iterator:
        yield PathNode(node.k + 1)
        yield PathNode(node.k - 1)

    def anchor(self):
        return PathNode(0)

    def anchor_term(self):
        return NodeTerm("p", (sq.Constant(0),))

    def closed_form_distance(self, x, y) -> int:
        return abs(x.k - y.k)

    def instantiate_term(self, ctor, args):
        if ctor != "p":
            raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")
        return PathNode(args[0])

    def symbolic_distance(self, ta, tb):
        return sym_abs(sym_sub(ta.param_syms()[0], tb.param_syms()[0]))

    def adjacency_truthset(self, ta, tb):
        delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
        return eq_const_truthset(sym_abs(delta), 1)

    def sample_nodes(self, rng, count, span=15):
        return [PathNode(rng.randint(-span, span)) for _ in range(count)]


class OneEndedPath(EndlessPath):
    """One-way infinite path: nodes k >= 0."""

    family = "one_ended_path"

    def contains(self, node) -> bool:
        return isinstance(node, PathNode) and node.k >= 0

    def neighbors(self, node) -> Iterator:
        yield PathNode(node.k + 1)
        if node.k > 0:
            yield PathNode(node.k - 1)

    def sample_nodes(self, rng, count, span=15):
        return [PathNode(rng.randint(0, 2 * span)) for _ in range(count)]


class Ladder(GraphInstance):
    """Grounded one-way ladder: rungs x_k all adjacent to a common ground.

    The ground has infinite degree, so distance queries must go through the
    closed form; the raw adjacency stream exists for search and sampling.
    """

    family = "ladder"
    locally_finite = False
    TERM_ARITY = {"lad": 1, "ladg": 0}

    def contains(self, node) -> bool:
        if isinstance(node, Ground):
            return True
        return isinstance(node, LadderNode) and node.k >= 0

    def neighbors(self, node) -> Iterator:
        if isinstance(node, Ground):
            return (LadderNode(k) for k in itertools.count())
        out = [Ground()]
        if node.k > 0:
            out.append(LadderNode(node.k - 1))
        out.append(LadderNode(node.k + 1))
        return iter(out)

    def anchor(self):
        return Ground()

    def anchor_term(self):
        return NodeTerm("ladg", ())

    def closed_form_distance(self, x, y) -> int:
        if x == y:
            return 0
        if isinstance(x, Ground) or isinstance(y, Ground):
            return 1
        return 1 if abs(x.k - y.k) == 1 else 2

    def instantiate_term(self, ctor, args):
        if ctor == "ladg":
            return Ground()
        if ctor == "lad":
            return LadderNode(args[0])
        raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")

    def symbolic_distance(self, ta, tb):
        if ta.ctor == "ladg" and tb.ctor == "ladg":
            return Aff(0, 0)
        if "ladg" in (ta.ctor, tb.ctor):
            return Aff(0, 1)
        delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
        sym = zone_by_magnitude(delta, (0, 1, 2))
        if sym is not None:
            return sym
        start = max(sym_start(s) for s in ta.param_syms() + tb.param_syms())
        return Opaque(self.term_distance_fn(ta, tb), lo=0, hi=2, start=start)

    def adjacency_truthset(self, ta, tb):
        kinds = {ta.ctor, tb.ctor}
        if kinds == {"lad", "ladg"}:
            return cofinite_set()
        if kinds == {"ladg"}:
            return finite_set()
        if kinds == {"lad"}:
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
            return eq_const_truthset(sym_abs(delta), 1)
        return None

    def sample_nodes(self, rng, count, span=15):
        out = []
        for _ in range(count):
            out.append(Ground() if rng.random() < 0.1 else LadderNode(rng.randint(0, 2 * span)))
        return out


class LadderWithRay(Ladder):
    """The grounded ladder plus a one-way ray hung from the ground."""

    family = "ladder_with_ray"
    TERM_ARITY = {"lad": 1, "ladg": 0, "ray": 1}

    def contains(self, node) -> bool:
        if isinstance(node, RayNode):
            return node.j >= 1
        return super().contains(node)

    def neighbors(self, node) -> Iterator:
        if isinstance(node, Ground):
            return itertools.chain([RayNode(1)], (LadderNode(k) for k in itertools.count()))
        if isinstance(node, RayNode):
            out = [RayNode(node.j + 1)]
            out.append(Ground() if node.j == 1 else RayNode(node.j - 1))
            return iter(out)
        return super().neighbors(node)

    def closed_form_distance(self, x, y) -> int:
        xr, yr = isinstance(x, RayNode), isinstance(y, RayNode)
        if xr and yr:
            return abs(x.j - y.j)
        if xr or yr:
            ray, other = (x, y) if xr else (y, x)
            return ray.j if isinstance(other, Ground) else ray.j + 1
        return super().closed_form_distance(x, y)

    def instantiate_term(self, ctor, args):
        if ctor == "ray":
            return RayNode(args[0])
        return super().instantiate_term(ctor, args)

    def symbolic_distance(self, ta, tb):
        if "ray" not in (ta.ctor, tb.ctor):
            return super().symbolic_distance(ta, tb)
        if ta.ctor != "ray":
            ta, tb = tb, ta
        s = ta.param_syms()[0]
        if tb.ctor == "ray":
            return sym_abs(sym_sub(s, tb.param_syms()[0]))
        if tb.ctor == "ladg":
            return s
        return sym_add(s, Aff(0, 1))

    def adjacency_truthset(self, ta, tb):
        kinds = {ta.ctor, tb.ctor}
        if "ray" not in kinds:
            return super().adjacency_truthset(ta, tb)
        if kinds == {"ray"}:
            delta = sym_sub(ta.param_syms()[0], tb.param_syms()[0])
            return eq_const_truthset(sym_abs(delta), 1)
        ray_term = ta if ta.ctor == "ray" else tb
        other = tb if ta.ctor == "ray" else ta
        if other.ctor == "ladg":
            return eq_const_truthset(ray_term.param_syms()[0], 1)
        return finite_set()

    def sample_nodes(self, rng, count, span=15):
        out = []
        for _ in range(count):
            r = rng.random()
            if r < 0.1:
                out.append(Ground())
            elif r < 0.4:
                out.append(RayNode(rng.randint(1, 2 * span)))
            else:
                out.append(LadderNode(rng.randint(0, 2 * span)))
        return out


class Grid2D(GraphInstance):
    """The integer lattice with unit branches."""

    family = "grid2d"
    TERM_ARITY = {"grid": 2}

    def contains(self, node) -> bool:
        return isinstance(node, GridNode)

    def neighbors(self, node) -> Iterator:
        k, l = node.k, node.l
        yield GridNode(k + 1, l)
        yield GridNode(k - 1, l)
        yield GridNode(k, l + 1)
        yield GridNode(k, l - 1)

    def anchor(self):
        return GridNode(0, 0)

    def anchor_term(self):
        return NodeTerm("grid", (sq.Constant(0), sq.Constant(0)))

    def closed_form_distance(self, x, y) -> int:
        return abs(x.k - y.k) + abs(x.l - y.l)

    def instantiate_term(self, ctor, args):
        if ctor != "grid":
            raise NotAMemberError(f"unknown constructor {ctor!r} for {self.family}")
        return GridNode(args[0], args[1])

    def symbolic_distance(self, ta, tb):
        (sk, sl), (tk, tl) = ta.param_syms(), tb.param_syms()
        return sym_add(sym_abs(sym_sub(sk, tk)), sym_abs(sym_sub(sl, tl)))

    def adjacency_truthset(self, ta, tb):
        # pure lattice rule on purpose: subclasses correct for edits afterwards
        return eq_const_truthset(Grid2D.symbolic_distance(self, ta, tb), 1)

    def sample_nodes(self, rng, count, span=15):
        return [GridNode(rng.randint(-span, span), rng.randint(-span, span))
                for _ in range(count)]


class PerturbedGrid(Grid2D):
    """Grid2D with finitely many branch insertions/deletions.

    Connectivity and the detour/shortcut bounds are established once, by
    explicit search inside the edit region plus a collar; outside that window
    the graph is the pristine grid.
    """

    family = "perturbed_grid"
    has_closed_form = False

    def closed_form_distance(self, x, y) -> int:
        raise UnsupportedOracleError("perturbed_grid has no closed-form distance")

    def __init__(self, added: list[tuple[GridNode, GridNode]],
                 removed: list[tuple[GridNode, GridNode]]):
        self.added = {frozenset((a, b)) for a, b in added}
        self.removed = {frozenset((a, b)) for a, b in removed}
        self._validate_edits()
        self.max_shortcut, self.max_detour = self._edit_bounds()

    # -- edit validation --
    def _validate_edits(self) -> None:
        grid = Grid2D()
        for pair in self.added | self.removed:
            if len(pair) != 2:
                raise EditValidationError("a branch joins two distinct nodes")
        for pair in self.removed:
            a, b = tuple(pair)
            if grid.closed_form_distance(a, b) != 1:
                raise EditValidationError(f"cannot remove non-grid branch {a!r}-{b!r}")
        for pair in self.added:
            a, b = tuple(pair)
            if grid.closed_form_distance(a, b) == 1:
                raise EditValidationError(f"branch {a!r}-{b!r} already present")
        if self.added & self.removed:
            raise EditValidationError("a branch cannot be both added and removed")
        if self.removed and not self._window_connected():
            raise EditValidationError("edits disconnect the grid")

    def _edit_nodes(self) -> list[GridNode]:
        return [n for pair in (self.added | self.removed) for n in pair]

    def _window(self) -> tuple[int, int, int, int] | None:
        nodes = self._edit_nodes()
        if not nodes:
            return None
        margin = 3 + abs(max(n.k for n in nodes) - min(n.k for n in nodes)) \
            + abs(max(n.l for n in nodes) - min(n.l for n in nodes))
        return (min(n.k for n in nodes) - margin, max(n.k for n in nodes) + margin,
                min(n.l for n in nodes) - margin, max(n.l for n in nodes) + margin)

    def _window_bfs(self, source: GridNode) -> dict[GridNode, int]:
        lo_k, hi_k, lo_l, hi_l = self._window()
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.neighbors(u):
                    if lo_k <= v.k <= hi_k and lo_l <= v.l <= hi_l and v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist

    def _window_connected(self) -> bool:
        lo_k, hi_k, lo_l, hi_l = self._window()
        dist = self._window_bfs(GridNode(lo_k, lo_l))
        for n in self._edit_nodes():
            if n not in dist:
                return False
        # a node survives only if it kept some branch
        for n in {m for pair in self.removed for m in pair}:
            if not any(True for _ in self.neighbors(n)):
                return False
        return True

    def _edit_bounds(self) -> tuple[int, int]:
        grid = Grid2D()
        shortcut = sum(max(0, grid.closed_form_distance(*tuple(p)) - 1) for p in self.added)
        detour = 0
        for pair in self.removed:
            a, b = tuple(pair)
            dist = self._window_bfs(a)
            if b not in dist:
                raise EditValidationError(f"no detour around removed branch {a!r}-{b!r}")
            detour += dist[b] - 1
        return shortcut, detour

    # -- structure --
    def neighbors(self, node) -> Iterator:
        for v in super().neighbors(node):
            if frozenset((node, v)) not in self.removed:
                yield v
        for pair in sorted(self.added, key=lambda p: sorted(n.sort_key() for n in p)):
            if node in pair:
                (other,) = pair - {node}
                yield other

    def symbolic_distance(self, ta, tb):
        syms = ta.param_syms() + tb.param_syms()
        consts = [_const_value(s) for s in syms]
        if all(c is not None for c in consts):
            d = self.distance(GridNode(consts[0], consts[1]), GridNode(consts[2], consts[3]))
            if isinstance(d, Exhausted):
                return None
            start = max(sym_start(s) for s in syms)
            return Aff(0, d, start)
        pure = super().symbolic_distance(ta, tb)
        return self._widen(pure, self.term_distance_fn(ta, tb))

    def _widen(self, pure: SymInt, fn) -> SymInt | None:
        if isinstance(pure, sq.ParityS):
            e = self._widen(pure.even, fn)
            o = self._widen(pure.odd, fn)
            if e is None or o is None:
                return None
            return parity_sym(e, o)
        c = classify(pure)
        start = sym_start(pure)
        if c.kind == "pinf":
            return Opaque(fn, to_pinf=True, start=start)
        if c.kind == "range":
            return Opaque(fn, lo=max(0, c.lo - self.max_shortcut),
                          hi=c.hi + self.max_detour, start=start)
        return None

    def adjacency_truthset(self, ta, tb):
        syms = ta.param_syms() + tb.param_syms()
        consts = [_const_value(s) for s in syms]
        if all(c is not None for c in consts):
            a, b = GridNode(consts[0], consts[1]), GridNode(consts[2], consts[3])
            adjacent = b in set(self.neighbors(a))
            start = max(sym_start(s) for s in syms)
            return cofinite_set(start) if adjacent else finite_set(start)
        base = super().adjacency_truthset(ta, tb)
        if base is None:
            return None
        # moving terms must eventually leave every edited branch behind
        threshold = base.threshold
        for pair in self.added | self.removed:
            a, b = tuple(pair)
            hit = self._pair_hits_ts(syms, a, b)
            if hit is None or hit.kind != "finite":
                return None
            threshold = max(threshold, hit.threshold)
        return TruthSet(base.kind, threshold, base.even_true)

    def _pair_hits_ts(self, syms, a: GridNode, b: GridNode) -> TruthSet | None:
        def match(target_x: GridNode, target_y: GridNode) -> TruthSet | None:
            parts = [eq_const_truthset(syms[0], target_x.k), eq_const_truthset(syms[1], target_x.l),
                     eq_const_truthset(syms[2], target_y.k), eq_const_truthset(syms[3], target_y.l)]
            out = parts[0]
            for p in parts[1:]:
                out = intersect(out, p)
            return out
        straight, flipped = match(a, b), match(b, a)
        if straight is None or flipped is None:
            return None
        if straight.kind == "finite" and flipped.kind == "finite":
            return TruthSet("finite", max(straight.threshold, flipped.threshold))
        # cofinal hits happen only for eventually-constant pairs, handled above
        return None

    def sample_nodes(self, rng, count, span=15):
        return [GridNode(rng.randint(-span, span), rng.randint(-span, span))
                for _ in range(count)]


# ====== Catalog ======

FAMILIES = {
    "endless_path": EndlessPath,
    "one_ended_path": OneEndedPath,
    "ladder": Ladder,
    "ladder_with_ray": LadderWithRay,
    "grid2d": Grid2D,
    "perturbed_grid": PerturbedGrid,
}


def make_family(family: str, edits: list[dict] | None = None) -> GraphInstance:
    """Build a catalog family; `edits` applies to perturbed_grid only."""
    cls = FAMILIES.get(family)
    if cls is None:
        raise ValueError(f"unknown family {family!r}")
    if family == "perturbed_grid":
        added, removed = [], []
        for edit in edits or []:
            op = edit.get("op")
            try:
                a = GridNode(*edit["a"])
                b = GridNode(*edit["b"])
            except (KeyError, TypeError) as exc:
                raise EditValidationError(f"malformed edit {edit!r}") from exc
            if op == "add":
                added.append((a, b))
            elif op == "remove":
                removed.append((a, b))
            else:
                raise EditValidationError(f"unknown edit op {op!r}")
        return PerturbedGrid(added, removed)
    if edits:
        raise ValueError(f"{family} takes no edits")
    return cls()


def is_finitely_dispersed(graph: GraphInstance, nodes, k: int,
                          budget: int = DEFAULT_BUDGET) -> bool | Exhausted:
    """Sample-level check: all pairwise distances <= k on the given nodes."""
    nodes = list(nodes)
    for i, x in enumerate(nodes):
        for y in nodes[i + 1:]:
            d = graph.distance(x, y, budget=budget)
            if isinstance(d, Exhausted):
                return EXHAUSTED
            if d > k:
                return False
    return True


def sort_key(node) -> tuple:
    return node.sort_key()

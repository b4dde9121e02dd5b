"""Core model: multigraphs, dwell-marked routes, membership, reflectors.

A controlled complex couples a finite directed multigraph with a set of
generating routes.  A route fixes a start vertex, an edge itinerary and a
set of dwell positions, where position i marks a mandatory pause at the
vertex reached after i edge steps.  The controlled set of a complex is
the closure of its generators under three rules:

  * constant routes at endpoints of controlled routes,
  * concatenation of consecutive controlled routes,
  * insertion of a dwell at any position of a controlled route.

Dwell durations are quotiented away, so dwell sets are sets, not
multisets, and a constant route carries no dwell at all.  Membership is
decided by interval dynamic programming over the generator words: a
route is controlled iff its edge word splits into generator words and
its dwell set contains every dwell the chosen generators require, with
coincident requirements at a junction merging into the single dwell
position there.

The module also provides the four reflectors (generated d-space, flexible
part, preflexible hull, border-flexible rewrite) and the classification
predicates built on them.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field

VertexId = Hashable
EdgeId = Hashable

__all__ = [
    "CspaceError",
    "InvalidRouteError",
    "CompositionError",
    "StructureError",
    "Route",
    "SquareCell",
    "Graph",
    "MembershipOracle",
    "ControlledComplex",
    "PresentedComplex",
    "idkey",
    "render_id",
    "route_concat",
    "route_insert_dwell",
    "enumerate_words",
    "enumerate_routes",
    "oracle_equivalent",
    "reflect_dhat",
    "reflect_fl",
    "reflect_pf",
    "reflect_bf",
    "path_support",
    "has_total_path_support",
    "flexible_vertices",
    "is_flexible_route",
    "is_flexible_space",
    "PreflexibilityReport",
    "preflexibility",
    "is_preflexible",
    "BorderFlexibilityReport",
    "border_flexibility",
    "is_border_flexible",
    "MiddleRestrictionReport",
    "check_middle_restriction",
]


class CspaceError(Exception):
    """Base class for errors raised by this package."""


class InvalidRouteError(CspaceError):
    """Route data is malformed or does not fit the graph."""


class CompositionError(CspaceError):
    """Concatenation endpoints do not match."""


class StructureError(CspaceError):
    """Operation needs structure (usually a generator presentation) the complex lacks."""


def idkey(x: object) -> tuple:
    """Deterministic sort key over the id universe (strings, ints, tuples).

    Numeric strings order numerically so line windows list as -3..3.
    """
    if isinstance(x, tuple):
        return (3, tuple(idkey(i) for i in x))
    if isinstance(x, bool):
        return (2, 0, str(x))
    if isinstance(x, int):
        return (1, x, "")
    if isinstance(x, str):
        try:
            return (1, int(x), x)
        except ValueError:
            return (2, 0, x)
    return (4, 0, repr(x))


def render_id(x: object) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(render_id(i) for i in x) + ")"
    return str(x)


@dataclass(frozen=True)
class Route:
    """A dwell-marked edge path.

    ``dwells`` holds positions in ``0..len(edges)``.  A length-0 route is
    the constant route at ``start`` and is canonically stored with an
    empty dwell set (a pause of a pause is the same pause).
    """

    start: VertexId
    end: VertexId
    edges: tuple[EdgeId, ...] = ()
    dwells: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        dwells = frozenset(self.dwells)
        if not all(isinstance(d, int) and not isinstance(d, bool) for d in dwells):
            raise InvalidRouteError("dwell positions must be integers")
        if self.edges:
            bad = [d for d in dwells if not 0 <= d <= len(self.edges)]
            if bad:
                raise InvalidRouteError(
                    f"dwell position {min(bad)} out of range for a "
                    f"{len(self.edges)}-edge route"
                )
        else:
            if self.end != self.start:
                raise InvalidRouteError("constant route must end where it starts")
            if not dwells <= {0}:
                raise InvalidRouteError("constant route admits no dwell position > 0")
            dwells = frozenset()
        object.__setattr__(self, "dwells", dwells)

    @classmethod
    def constant(cls, v: VertexId) -> "Route":
        return cls(v, v)

    @property
    def length(self) -> int:
        return len(self.edges)

    def is_constant(self) -> bool:
        return not self.edges

    def strip_dwells(self) -> "Route":
        return Route(self.start, self.end, self.edges)

    def sort_key(self) -> tuple:
        return (
            idkey(self.start),
            len(self.edges),
            tuple(idkey(e) for e in self.edges),
            tuple(sorted(self.dwells)),
        )

    def __str__(self) -> str:
        word = ",".join(render_id(e) for e in self.edges)
        dw = "{" + ",".join(str(d) for d in sorted(self.dwells)) + "}"
        return f"({render_id(self.start)};[{word}];{dw})"


def route_concat(r1: Route, r2: Route) -> Route:
    """Concatenate consecutive routes; dwell sets merge, r2's shifted.

    The junction position appears at most once because dwell sets are
    sets.  Concatenating a constant route changes nothing.
    """
    if r1.end != r2.start:
        raise CompositionError(
            f"cannot concatenate: first route ends at {render_id(r1.end)}, "
            f"second starts at {render_id(r2.start)}"
        )
    shift = len(r1.edges)
    dwells = set(r1.dwells)
    dwells.update(d + shift for d in r2.dwells)
    return Route(r1.start, r2.end, r1.edges + r2.edges, frozenset(dwells))


def route_insert_dwell(r: Route, pos: int) -> Route:
    """Add a dwell at ``pos``; idempotent."""
    if not 0 <= pos <= len(r.edges):
        raise InvalidRouteError(
            f"dwell position {pos} out of range for a {len(r.edges)}-edge route"
        )
    return Route(r.start, r.end, r.edges, r.dwells | {pos})


@dataclass(frozen=True)
class SquareCell:
    """A two-sided deformation cell between coterminal dwell-free routes.

    One side may be empty when the other is a loop (cancellation cells).
    """

    left: Route
    right: Route

    def __post_init__(self) -> None:
        if self.left.dwells or self.right.dwells:
            raise InvalidRouteError("cell sides must be dwell-free")
        if self.left.start != self.right.start or self.left.end != self.right.end:
            raise InvalidRouteError("cell sides must share both endpoints")

    def sort_key(self) -> tuple:
        return (self.left.sort_key(), self.right.sort_key())

    def __str__(self) -> str:
        return f"{self.left} ~ {self.right}"


class Graph:
    """Finite directed multigraph with opaque vertex and edge ids."""

    __slots__ = ("_vertices", "_edges", "_out", "_in")

    def __init__(
        self,
        vertices: Iterable[VertexId],
        edges: Mapping[EdgeId, tuple[VertexId, VertexId]],
    ) -> None:
        self._vertices = frozenset(vertices)
        self._edges: dict[EdgeId, tuple[VertexId, VertexId]] = {}
        out: dict[VertexId, list[EdgeId]] = {v: [] for v in self._vertices}
        inc: dict[VertexId, list[EdgeId]] = {v: [] for v in self._vertices}
        for e, (src, dst) in edges.items():
            if src not in self._vertices or dst not in self._vertices:
                raise InvalidRouteError(f"edge {render_id(e)} references unknown vertex")
            self._edges[e] = (src, dst)
            out[src].append(e)
            inc[dst].append(e)
        self._out = {v: tuple(sorted(es, key=idkey)) for v, es in out.items()}
        self._in = {v: tuple(sorted(es, key=idkey)) for v, es in inc.items()}

    @property
    def vertices(self) -> frozenset[VertexId]:
        return self._vertices

    @property
    def edge_ids(self) -> frozenset[EdgeId]:
        return frozenset(self._edges)

    def has_edge(self, e: EdgeId) -> bool:
        return e in self._edges

    def src(self, e: EdgeId) -> VertexId:
        return self._edges[e][0]

    def dst(self, e: EdgeId) -> VertexId:
        return self._edges[e][1]

    def endpoints(self, e: EdgeId) -> tuple[VertexId, VertexId]:
        return self._edges[e]

    def out_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        return self._out.get(v, ())

    def in_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        return self._in.get(v, ())

    def route(
        self,
        start: VertexId,
        edges: Iterable[EdgeId] = (),
        dwells: Iterable[int] = (),
    ) -> Route:
        """Build a route, computing the end vertex and validating the chain."""
        if start not in self._vertices:
            raise InvalidRouteError(f"unknown vertex {render_id(start)}")
        v = start
        for e in edges:
            if e not in self._edges:
                raise InvalidRouteError(f"unknown edge {render_id(e)}")
            src, dst = self._edges[e]
            if src != v:
                raise InvalidRouteError(
                    f"edge {render_id(e)} starts at {render_id(src)}, "
                    f"route is at {render_id(v)}"
                )
            v = dst
        return Route(start, v, tuple(edges), frozenset(dwells))

    def validate_route(self, r: Route) -> None:
        built = self.route(r.start, r.edges, r.dwells)
        if built.end != r.end:
            raise InvalidRouteError(
                f"route ends at {render_id(built.end)}, not {render_id(r.end)}"
            )

    def vertex_at(self, r: Route, pos: int) -> VertexId:
        if not 0 <= pos <= len(r.edges):
            raise InvalidRouteError(f"position {pos} out of range")
        if pos == 0:
            return r.start
        return self.dst(r.edges[pos - 1])

    def visited(self, r: Route) -> tuple[VertexId, ...]:
        return tuple(self.vertex_at(r, i) for i in range(len(r.edges) + 1))

    def restrict(self, r: Route, p: int, q: int) -> Route:
        """Contiguous sub-route over the span p..q.

        Dwells restrict to the open interior of the span and re-index;
        boundary dwells drop because a restriction may cut right at the
        edge of a pause.  The dropped variants are recovered by dwell
        insertion, so this is the strictest representative.
        """
        if not 0 <= p <= q <= len(r.edges):
            raise InvalidRouteError(f"span {p}..{q} out of range")
        edges = r.edges[p:q]
        dwells = frozenset(d - p for d in r.dwells if p < d < q)
        return Route(self.vertex_at(r, p), self.vertex_at(r, q), edges, dwells)

    def subroutes(self, r: Route) -> list[Route]:
        """All contiguous sub-routes, constants at visited vertices included."""
        n = len(r.edges)
        seen: set[Route] = set()
        out: list[Route] = []
        for p in range(n + 1):
            for q in range(p, n + 1):
                s = self.restrict(r, p, q)
                if s not in seen:
                    seen.add(s)
                    out.append(s)
        return out

    def iter_words(
        self, start: VertexId, max_len: int
    ) -> Iterator[tuple[tuple[EdgeId, ...], VertexId]]:
        """Yield every edge word of length <= max_len from ``start``."""
        stack: list[tuple[tuple[EdgeId, ...], VertexId]] = [((), start)]
        while stack:
            word, v = stack.pop()
            yield word, v
            if len(word) < max_len:
                for e in reversed(self.out_edges(v)):
                    stack.append((word + (e,), self.dst(e)))


@dataclass(frozen=True)
class MembershipOracle:
    """Total decision procedure for route membership, plus a description tag."""

    decide: Callable[[Route], bool]
    tag: str


class ControlledComplex:
    """A graph, square cells, a flexible vertex set and a membership oracle.

    Instances are immutable.  Subclasses implement ``_decide`` (membership
    for a graph-valid route) and may override the structural helpers.
    """

    tag = "abstract"

    def __init__(
        self,
        graph: Graph,
        cells: Iterable[SquareCell] = (),
        flexible: Iterable[VertexId] = (),
    ) -> None:
        self._graph = graph
        cells = tuple(sorted(set(cells), key=SquareCell.sort_key))
        for c in cells:
            graph.validate_route(c.left)
            graph.validate_route(c.right)
        self._cells = cells
        self._flexible = frozenset(flexible)
        if not self._flexible <= graph.vertices:
            raise InvalidRouteError("flexible set mentions unknown vertices")

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def cells(self) -> tuple[SquareCell, ...]:
        return self._cells

    @property
    def flexible(self) -> frozenset[VertexId]:
        return self._flexible

    @property
    def generators(self) -> frozenset[Route] | None:
        return None

    @property
    def oracle(self) -> MembershipOracle:
        return MembershipOracle(self.is_controlled, self.tag)

    def is_presented(self) -> bool:
        return self.generators is not None

    def is_controlled(self, r: Route) -> bool:
        self._graph.validate_route(r)
        return self._decide(r)

    def _decide(self, r: Route) -> bool:
        raise NotImplementedError

    def support_upper(self) -> tuple[frozenset[VertexId], frozenset[EdgeId]]:
        """Superset of the path support; used for truncation flags."""
        return self._graph.vertices, self._graph.edge_ids

    def describe(self) -> str:
        return (
            f"{self.tag}: {len(self._graph.vertices)} vertices, "
            f"{len(self._graph.edge_ids)} edges, {len(self._cells)} cells"
        )


class PresentedComplex(ControlledComplex):
    """Generator-backed complex; membership via interval DP over generators.

    The flexible set is derived, never asserted: endpoints of generators,
    with constant generators marking extra flexible vertices.
    """

    def __init__(
        self,
        graph: Graph,
        generators: Iterable[Route],
        cells: Iterable[SquareCell] = (),
        tag: str = "generator-backed",
        recipe: tuple | None = None,
    ) -> None:
        gens = frozenset(generators)
        for g in gens:
            graph.validate_route(g)
        flexible: set[VertexId] = set()
        for g in gens:
            flexible.add(g.start)
            flexible.add(g.end)
        super().__init__(graph, cells, flexible)
        self._generators = gens
        # nonempty generators drive the DP; constants only mark flexibility
        self._words = sorted(
            (g for g in gens if g.edges), key=Route.sort_key
        )
        self.tag = tag
        self.recipe = recipe

    @property
    def generators(self) -> frozenset[Route]:
        return self._generators

    def _decide(self, r: Route) -> bool:
        if not r.edges:
            return r.start in self._flexible
        n = len(r.edges)
        ok = [False] * (n + 1)
        ok[0] = True
        for c in range(1, n + 1):
            for g in self._words:
                m = len(g.edges)
                if m > c or not ok[c - m]:
                    continue
                if r.edges[c - m : c] != g.edges:
                    continue
                if all((d + c - m) in r.dwells for d in g.dwells):
                    ok[c] = True
                    break
        return ok[n]

    def support_upper(self) -> tuple[frozenset[VertexId], frozenset[EdgeId]]:
        return path_support(self)


# ---------------------------------------------------------------------------
# flexibility


def flexible_vertices(X: ControlledComplex) -> frozenset[VertexId]:
    return X.flexible


def is_flexible_route(X: ControlledComplex, r: Route) -> bool:
    """True iff every sub-route of r is controlled in X."""
    X.graph.validate_route(r)
    return all(X.is_controlled(s) for s in X.graph.subroutes(r))


def is_flexible_space(X: ControlledComplex, bound: int | None = None) -> bool:
    """All vertices flexible and all controlled routes flexible.

    Exact for presented complexes (generators suffice: flexibility is
    closed under concatenation and dwell insertion).  Products and sums
    delegate to their factors.  Other oracle-backed complexes need a
    ``bound`` and get a bounded verdict over all routes up to it.
    """
    if X.graph.vertices != X.flexible:
        return False
    gens = X.generators
    if gens is not None:
        return all(is_flexible_route(X, g) for g in gens)
    checker = getattr(X, "_flexible_space_structural", None)
    if checker is not None:
        return bool(checker())
    if bound is None:
        raise StructureError(
            "flexibility of this complex needs a bound (no generator presentation)"
        )
    for r in enumerate_routes(X.graph, bound):
        if X.is_controlled(r) and not is_flexible_route(X, r):
            return False
    return True


def path_support(
    X: ControlledComplex,
) -> tuple[frozenset[VertexId], frozenset[EdgeId]]:
    """Vertices and edges appearing in controlled routes.

    For a presented complex this is the union over generators.  Derived
    complexes with a structural rule override ``_path_support``.
    """
    rule = getattr(X, "_path_support", None)
    if rule is not None:
        return rule()
    gens = X.generators
    if gens is None:
        raise StructureError("path support needs a generator presentation")
    verts: set[VertexId] = set()
    edges: set[EdgeId] = set()
    for g in gens:
        verts.update(X.graph.visited(g))
        edges.update(g.edges)
    return frozenset(verts), frozenset(edges)


def has_total_path_support(X: ControlledComplex) -> bool:
    verts, edges = path_support(X)
    return verts == X.graph.vertices and edges == X.graph.edge_ids


# ---------------------------------------------------------------------------
# route enumeration and oracle comparison


def enumerate_words(
    graph: Graph, max_len: int, starts: Iterable[VertexId] | None = None
) -> Iterator[tuple[VertexId, tuple[EdgeId, ...], VertexId]]:
    vs = sorted(graph.vertices, key=idkey) if starts is None else list(starts)
    for v in vs:
        for word, end in graph.iter_words(v, max_len):
            yield v, word, end


def enumerate_routes(
    graph: Graph,
    max_len: int,
    starts: Iterable[VertexId] | None = None,
    all_dwell_sets: bool = True,
) -> Iterator[Route]:
    """Every graph-valid route up to ``max_len``, by default with every
    dwell subset.  Exponential in the word length; meant for small bounds."""
    for start, word, end in enumerate_words(graph, max_len, starts):
        if not all_dwell_sets or not word:
            yield Route(start, end, word)
            continue
        positions = range(len(word) + 1)
        for k in range(len(word) + 2):
            for dws in itertools.combinations(positions, k):
                yield Route(start, end, word, frozenset(dws))


def oracle_equivalent(
    X: ControlledComplex,
    Y: ControlledComplex,
    bound: int,
    vertex_map: Mapping[VertexId, VertexId] | None = None,
    edge_map: Mapping[EdgeId, EdgeId] | None = None,
) -> bool:
    """Route-by-route oracle agreement up to ``bound``, across a renaming.

    With no maps, ids must coincide.  Also compares flexible sets.
    """
    vmap = dict(vertex_map) if vertex_map else {v: v for v in X.graph.vertices}
    emap = dict(edge_map) if edge_map else {e: e for e in X.graph.edge_ids}
    if {vmap[v] for v in X.graph.vertices} != set(Y.graph.vertices):
        return False
    if {emap[e] for e in X.graph.edge_ids} != set(Y.graph.edge_ids):
        return False
    if {vmap[v] for v in X.flexible} != set(Y.flexible):
        return False
    for r in enumerate_routes(X.graph, bound):
        image = Route(
            vmap[r.start], vmap[r.end], tuple(emap[e] for e in r.edges), r.dwells
        )
        if X.is_controlled(r) != Y.is_controlled(image):
            return False
    return True


# ---------------------------------------------------------------------------
# reflectors


def _presented_or_raise(X: ControlledComplex, what: str) -> frozenset[Route]:
    gens = X.generators
    if gens is None:
        raise StructureError(f"{what} needs a generator presentation")
    return gens


def reflect_dhat(X: ControlledComplex) -> PresentedComplex:
    """Generated d-space: dwell-insensitive closure under restriction.

    Materialized as a presentation: every nonempty contiguous subword of
    a generator word becomes a dwell-free generator, and every vertex
    gets a constant generator, so all vertices are flexible and reapplying
    the reflector is literally the identity on presentations.
    """
    gens = _presented_or_raise(X, "the generated d-space")
    new: set[Route] = set()
    for v in X.graph.vertices:
        new.add(Route.constant(v))
    for g in gens:
        for p in range(len(g.edges)):
            for q in range(p + 1, len(g.edges) + 1):
                s = X.graph.restrict(g, p, q)
                new.add(s.strip_dwells())
    return PresentedComplex(X.graph, new, X.cells, tag="reflected")


class FlexiblePart(ControlledComplex):
    """Flexible part of a complex: flexible vertices, flexible routes.

    Generic over any oracle.  The result is a d-space (flexibility is
    closed under restriction, concatenation and dwell insertion).
    """

    tag = "reflected"

    def __init__(self, base: ControlledComplex) -> None:
        flex = base.flexible
        edges = {
            e: base.graph.endpoints(e)
            for e in base.graph.edge_ids
            if base.graph.src(e) in flex and base.graph.dst(e) in flex
        }
        graph = Graph(flex, edges)
        cells = [
            c
            for c in base.cells
            if all(v in flex for v in base.graph.visited(c.left))
            and all(v in flex for v in base.graph.visited(c.right))
        ]
        super().__init__(graph, cells, flex)
        self.base = base

    def _decide(self, r: Route) -> bool:
        return is_flexible_route(self.base, r)

    def _flexible_space_structural(self) -> bool:
        return True

    def support_upper(self) -> tuple[frozenset[VertexId], frozenset[EdgeId]]:
        return self.graph.vertices, self.graph.edge_ids


def reflect_fl(X: ControlledComplex) -> ControlledComplex:
    if isinstance(X, FlexiblePart):
        return X
    return FlexiblePart(X)


class PreflexibleHull(ControlledComplex):
    """Preflexible reflection: dhat membership between flexible endpoints."""

    tag = "reflected"

    def __init__(self, base: ControlledComplex) -> None:
        if isinstance(base, PreflexibleHull):
            base = base.base
        self._dhat = reflect_dhat(base)
        super().__init__(base.graph, base.cells, base.flexible)
        self.base = base

    def _decide(self, r: Route) -> bool:
        if r.start not in self._flexible or r.end not in self._flexible:
            return False
        return self._dhat.is_controlled(r)

    def _flexible_space_structural(self) -> bool:
        return self.graph.vertices == self._flexible

    def support_upper(self) -> tuple[frozenset[VertexId], frozenset[EdgeId]]:
        return self._dhat.support_upper()


def reflect_pf(X: ControlledComplex) -> PreflexibleHull:
    return PreflexibleHull(X)


def reflect_bf(X: ControlledComplex) -> PresentedComplex:
    """Border-flexible rewrite: strip every subset of boundary dwells from
    each generator and close again.  Originals stay (empty subset)."""
    gens = _presented_or_raise(X, "the border-flexible rewrite")
    new: set[Route] = set()
    for g in gens:
        boundary = g.dwells & {0, len(g.edges)}
        for k in range(len(boundary) + 1):
            for drop in itertools.combinations(sorted(boundary), k):
                new.add(Route(g.start, g.end, g.edges, g.dwells - set(drop)))
    return PresentedComplex(X.graph, new, X.cells, tag="reflected")


# ---------------------------------------------------------------------------
# classification predicates


@dataclass(frozen=True)
class PreflexibilityReport:
    holds: bool
    bound: int
    witness: Route | None = None

    def __bool__(self) -> bool:
        return self.holds


def preflexibility(X: ControlledComplex, bound: int) -> PreflexibilityReport:
    """Bounded check that every d-space route between flexible points is
    controlled in X.

    Dwell-free words are the strictest decorations (membership is
    monotone under dwell insertion), so only they are tested.  Refutation
    is exact; confirmation holds up to the bound.
    """
    dhat = reflect_dhat(X)
    flex = X.flexible
    for start in sorted(flex, key=idkey):
        for word, end in X.graph.iter_words(start, bound):
            if not word or end not in flex:
                continue
            r = Route(start, end, word)
            if dhat.is_controlled(r) and not X.is_controlled(r):
                return PreflexibilityReport(False, bound, r)
    return PreflexibilityReport(True, bound)


def is_preflexible(X: ControlledComplex, bound: int) -> bool:
    return preflexibility(X, bound).holds


@dataclass(frozen=True)
class BorderFlexibilityReport:
    holds: bool
    witnesses: tuple[Route, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def border_flexibility(X: ControlledComplex) -> BorderFlexibilityReport:
    """Exact check: every generator with any subset of its boundary dwells
    stripped stays controlled.  Generators suffice because a stripped
    concatenation re-decomposes through the stripped generators."""
    gens = _presented_or_raise(X, "border flexibility")
    witnesses: list[Route] = []
    for g in sorted(gens, key=Route.sort_key):
        boundary = g.dwells & {0, len(g.edges)}
        for k in range(1, len(boundary) + 1):
            for drop in itertools.combinations(sorted(boundary), k):
                stripped = Route(g.start, g.end, g.edges, g.dwells - set(drop))
                if not X.is_controlled(stripped):
                    witnesses.append(stripped)
    return BorderFlexibilityReport(not witnesses, tuple(witnesses))


def is_border_flexible(X: ControlledComplex) -> bool:
    return border_flexibility(X).holds


@dataclass(frozen=True)
class MiddleRestrictionReport:
    applicable: bool
    holds: bool
    bound: int
    checked: int
    witnesses: tuple[tuple[Route, Route, Route], ...]
    counterexample: Route | None = None

    def __bool__(self) -> bool:
        return self.applicable and self.holds


def check_middle_restriction(X: ControlledComplex, bound: int) -> MiddleRestrictionReport:
    """Verify that routes of the generated d-space are middle restrictions
    of controlled routes of X.

    Applies to preflexible X only (reports inapplicable otherwise).  For
    every nonconstant d-space route up to the bound, and every constant
    at a path-support vertex, searches for prolongations b1, b2 with
    b1 * r * b2 controlled in X; the prolongations themselves only need
    to live in the d-space, since any restriction of a controlled route
    does.  Returns witnesses or the first failure.
    """
    if not preflexibility(X, bound).holds:
        return MiddleRestrictionReport(False, False, bound, 0, ())
    dhat = reflect_dhat(X)
    support_verts, _ = path_support(X)

    def words_into(v: VertexId) -> list[Route]:
        """Maximally dwelled d-space routes from a flexible start to v.

        Max decoration never hurts: membership is dwell-monotone, and the
        middle restriction drops the span-boundary dwells anyway.
        """
        out = [Route.constant(v)] if v in X.flexible else []
        for start in sorted(X.flexible, key=idkey):
            for word, end in X.graph.iter_words(start, bound):
                if word and end == v and dhat.is_controlled(Route(start, end, word)):
                    out.append(Route(start, end, word, frozenset(range(len(word) + 1))))
        return out

    def words_from(v: VertexId) -> list[Route]:
        out = [Route.constant(v)] if v in X.flexible else []
        for word, end in X.graph.iter_words(v, bound):
            if word and end in X.flexible and dhat.is_controlled(Route(v, end, word)):
                out.append(Route(v, end, word, frozenset(range(len(word) + 1))))
        return out

    targets: list[Route] = []
    for v in sorted(support_verts, key=idkey):
        targets.append(Route.constant(v))
    for start in sorted(X.graph.vertices, key=idkey):
        for word, end in X.graph.iter_words(start, bound):
            if word and dhat.is_controlled(Route(start, end, word)):
                targets.append(Route(start, end, word))

    witnesses: list[tuple[Route, Route, Route]] = []
    for r in targets:
        # r is tested verbatim: a dwell-free middle is the strictest
        # decoration, and dwell insertion recovers every other one.
        found = None
        for b1 in words_into(r.start):
            for b2 in words_from(r.end):
                cand = route_concat(route_concat(b1, r), b2)
                if X.is_controlled(cand):
                    found = (b1, r, b2)
                    break
            if found:
                break
        if found is None:
            return MiddleRestrictionReport(
                True, False, bound, len(targets), tuple(witnesses), r
            )
        witnesses.append(found)
    return MiddleRestrictionReport(True, True, bound, len(targets), tuple(witnesses))

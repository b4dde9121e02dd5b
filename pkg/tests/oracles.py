"""Independent brute-force oracles.

These re-derive controlled-route membership and arrow classes by forward
saturation of the closure rules, sharing no decision code with the
package: membership comes from enumerating generator decompositions
breadth-first, and arrow classes come from an explicit rewrite closure
over realizable words.  Property tests compare the package's answers
against these.
"""
from __future__ import annotations

from collections import deque

from cspace import ControlledComplex, Route, route_concat, route_insert_dwell

Label = tuple


def _out_generators(X: ControlledComplex) -> dict:
    by_start: dict = {}
    for g in X.generators:
        if g.edges:
            by_start.setdefault(g.start, []).append(g)
    return by_start


def brute_route_table(X: ControlledComplex, max_len: int) -> dict:
    """Map (start, word) -> set of minimal dwell sets, one per generator
    decomposition, for every controlled word of at most ``max_len`` edges.

    A route is controlled exactly when its dwell set contains one of the
    minimal sets recorded for its word: concatenation unions the
    generators' own dwells, and dwell insertion only ever enlarges the
    set.
    """
    if X.generators is None:
        raise ValueError("the brute oracle needs a generator presentation")
    by_start = _out_generators(X)
    endpoints = set()
    for g in X.generators:
        endpoints.add(g.start)
        endpoints.add(g.end)
    table: dict = {}
    queue: deque = deque()
    for v in endpoints:
        key = (v, ())
        table[key] = {frozenset()}
        queue.append((v, v, (), frozenset()))
    while queue:
        start, end, word, need = queue.popleft()
        for g in by_start.get(end, ()):
            new_word = word + g.edges
            if len(new_word) > max_len:
                continue
            shift = len(word)
            new_need = need | {shift + d for d in g.dwells}
            key = (start, new_word)
            seen = table.setdefault(key, set())
            if any(old <= new_need for old in seen):
                continue
            seen.difference_update({old for old in seen if new_need < old})
            seen.add(frozenset(new_need))
            queue.append((start, g.end, new_word, frozenset(new_need)))
    return table


def brute_is_controlled(table: dict, r: Route) -> bool:
    options = table.get((r.start, r.edges))
    if not options:
        return False
    return any(need <= r.dwells for need in options)


def literal_closure(X: ControlledComplex, max_len: int) -> frozenset:
    """Every controlled route of at most ``max_len`` edges, by literal
    fixpoint iteration of the three closure rules with explicit dwell
    insertion and unrestricted pairwise concatenation.

    Doubly exponential in practice — only for cross-checking the
    saturation oracle on tiny instances.
    """
    current: set[Route] = {g for g in X.generators if len(g.edges) <= max_len}
    changed = True
    while changed:
        changed = False
        additions: set[Route] = set()
        for r in current:
            additions.add(Route.constant(r.start))
            additions.add(Route.constant(r.end))
            for pos in range(len(r.edges) + 1):
                additions.add(route_insert_dwell(r, pos))
        for r1 in current:
            for r2 in current:
                if r1.end == r2.start and len(r1.edges) + len(r2.edges) <= max_len:
                    additions.add(route_concat(r1, r2))
        if not additions <= current:
            current |= additions
            changed = True
    return frozenset(current)


def _visited(X: ControlledComplex, start, word) -> list:
    chain = [start]
    for e in word:
        chain.append(X.graph.dst(e))
    return chain


def brute_pi1_components(X: ControlledComplex, bound: int) -> set:
    """Partition of realizable labels under the rewrite closure of the
    cells, as a set of frozensets of (start, word) labels."""
    table = brute_route_table(X, bound)
    labels = set(table)
    sides = []
    for cell in X.cells:
        sides.append((cell.left, cell.right))
        sides.append((cell.right, cell.left))
    neighbours: dict = {label: set() for label in labels}
    for start, word in labels:
        chain = _visited(X, start, word)
        for src, dst in sides:
            k = len(src.edges)
            for i in range(len(word) - k + 1):
                if word[i:i + k] != src.edges or chain[i] != src.start:
                    continue
                new_word = word[:i] + dst.edges + word[i + k:]
                if (start, new_word) in labels:
                    neighbours[(start, word)].add((start, new_word))
    components = set()
    todo = set(labels)
    while todo:
        seed = todo.pop()
        block = {seed}
        frontier = [seed]
        while frontier:
            label = frontier.pop()
            for other in neighbours[label]:
                if other not in block:
                    block.add(other)
                    frontier.append(other)
        todo -= block
        components.add(frozenset(block))
    return components

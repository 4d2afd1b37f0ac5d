"""Directed-graph helpers."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable


def strongly_connected_components(
    nodes: Iterable[Hashable], succ: Callable[[Hashable], Iterable[Hashable]]
) -> list[list]:
    """Tarjan's algorithm without recursion.

    Components come out in reverse topological order (sinks first).
    """
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def is_strongly_connected(nodes: list, succ: Callable[[Hashable], Iterable[Hashable]]) -> bool:
    if not nodes:
        return True
    allowed = set(nodes)
    comps = strongly_connected_components(nodes, lambda v: (w for w in succ(v) if w in allowed))
    return len(comps) == 1

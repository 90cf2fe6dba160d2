"""Graphviz export: a net as a bipartite graph, a process as a layered DAG.

Species are circles, transitions are boxes, and catalyst species (with all
their arcs) are drawn red.  Multi-edges carry a multiplicity label.  When a
process is given, each firing becomes one node, nodes of the same layer
share a rank, and edges follow the tokens: each firing draws from the
oldest available producers, first come first served.
"""

from __future__ import annotations

from collections import deque

from .nets import CatalystNet
from .terms import CanonicalProcess, ProcessTerm, canonical_of

__all__ = ["export_dot"]


def export_dot(cnet: CatalystNet, term: ProcessTerm | None = None, name: str = "net0") -> str:
    if term is None:
        return _net_dot(cnet, name)
    proc = term if isinstance(term, CanonicalProcess) else canonical_of(term)
    return _process_dot(cnet, proc, name)


def _net_dot(cnet: CatalystNet, name: str) -> str:
    net = cnet.net
    lines = [f"digraph {name} {{"]
    for sp in net.species:
        attrs = "shape=circle, color=red" if sp.id in cnet.catalysts else "shape=circle"
        lines.append(f"  {sp.name} [{attrs}];")
    for t in net.transitions:
        lines.append(f"  {t.name} [shape=box];")
    for t in net.transitions:
        for sid, n in t.src.items():
            lines.append(f"  {net.species[sid].name} -> {t.name}{_edge_attrs(cnet, sid, n)};")
        for sid, n in t.tgt.items():
            lines.append(f"  {t.name} -> {net.species[sid].name}{_edge_attrs(cnet, sid, n)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _edge_attrs(cnet: CatalystNet, sid: int, n: int) -> str:
    attrs = []
    if n > 1:
        attrs.append(f'label="{n}"')
    if sid in cnet.catalysts:
        attrs.append("color=red")
    return f" [{', '.join(attrs)}]" if attrs else ""


def _process_dot(cnet: CatalystNet, proc: CanonicalProcess, name: str) -> str:
    net = cnet.net
    lines = [f"digraph {name} {{", '  dom [shape=plaintext, label="%s"];' % proc.dom.show(net)]

    node_names = []
    k = 0
    for layer_idx, layer in enumerate(proc.layers):
        members = []
        for t in layer:
            node = f"f{k}"
            node_names.append((node, t))
            members.append(node)
            lines.append(f'  {node} [shape=box, label="{t.name}"];')
            k += 1
        lines.append(f"  {{ rank=same; {'; '.join(members)}; }}  // layer {layer_idx}")
    lines.append('  cod [shape=plaintext, label="%s"];' % proc.cod.show(net))

    # token provenance: every firing consumes from the oldest producers
    pool: dict[int, deque] = {}
    for sid, n in proc.dom.items():
        pool.setdefault(sid, deque()).extend(["dom"] * n)
    edges: dict[tuple[str, str, int], int] = {}
    for node, t in node_names:
        for sid, n in t.src.items():
            for _ in range(n):
                src = pool[sid].popleft()
                edges[(src, node, sid)] = edges.get((src, node, sid), 0) + 1
        for sid, n in t.tgt.items():
            pool.setdefault(sid, deque()).extend([node] * n)
    for sid, producers in pool.items():
        for src in producers:
            edges[(src, "cod", sid)] = edges.get((src, "cod", sid), 0) + 1

    for (src, dst, sid), n in edges.items():
        label = net.species[sid].name if n == 1 else f"{n} {net.species[sid].name}"
        color = ", color=red" if sid in cnet.catalysts else ""
        lines.append(f'  {src} -> {dst} [label="{label}"{color}];')
    lines.append("}")
    return "\n".join(lines) + "\n"

"""The stable Auslander-Reiten quiver, built from hooks, cohooks, and syzygies.

Nodes are the string classes (the non-projective indecomposables); solid
arrows are the canonical inclusions into hook extensions and projections
out of cohook extensions; the translate pairs each node with its second
syzygy, certified by isomorphism tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import homology, strings
from .errors import StrcatError
from .quiver_core import Algebra


@dataclass
class ArQuiver:
    nodes: list[strings.StringWord]
    arrows: list[tuple[int, int, str]]  # (source index, target index, kind)
    tau: list[int]                      # node index -> index of its translate

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def node_modules(algebra: Algebra, nodes) -> list[homology.Representation]:
    return [strings.string_module(algebra, w) for w in nodes]


def match_node(algebra: Algebra, rep: homology.Representation,
               nodes, reps, seed: int = 0) -> int:
    """Index of the unique node isomorphic to ``rep``."""
    dv = rep.dim_vector()
    for i, cand in enumerate(reps):
        if cand.dim_vector() != dv:
            continue
        if homology.is_isomorphic(rep, cand, seed=seed):
            return i
    raise StrcatError(f"no node matches a module of dimension vector {dv}")


def build_ar_quiver(algebra: Algebra, length_cap: int | None = None,
                    seed: int = 0) -> ArQuiver:
    """Nodes, hook/cohook arrows, and the second-syzygy translate."""
    nodes = strings.enumerate_strings(algebra, length_cap)
    index = {w: i for i, w in enumerate(nodes)}
    reps = node_modules(algebra, nodes)
    arrow_set = set()
    for w in nodes:
        for src, tgt, kind in strings.class_moves(algebra, w):
            if src not in index or tgt not in index:
                raise StrcatError(f"move leaves the enumerated node set: {src} -> {tgt}")
            arrow_set.add((index[src], index[tgt], kind))
    tau = []
    for i, rep in enumerate(reps):
        translated = homology.omega_power(rep, 2)
        tau.append(match_node(algebra, translated, nodes, reps, seed=seed + i))
    arrows = sorted(arrow_set)
    return ArQuiver(nodes, arrows, tau)


def omega_orbit(algebra: Algebra, node: strings.StringWord,
                length_cap: int | None = None, seed: int = 0) -> list[strings.StringWord]:
    """The cyclic syzygy orbit of a node; its length divides four here."""
    nodes = strings.enumerate_strings(algebra, length_cap)
    reps = node_modules(algebra, nodes)
    start = strings.canonical(node, algebra.quiver)
    if start not in nodes:
        raise StrcatError(f"{start} is not an enumerated string")
    orbit = [start]
    current = strings.string_module(algebra, start)
    for step in range(1, 13):
        current = homology.syzygy(current)
        idx = match_node(algebra, current, nodes, reps, seed=seed + step)
        if nodes[idx] == start:
            return orbit
        orbit.append(nodes[idx])
    raise StrcatError("syzygy orbit did not close after 12 steps")


def to_dot(q: ArQuiver, labels: dict[strings.StringWord, str] | None = None) -> str:
    """Deterministic DOT text; solid h/c arrows, dashed non-identity tau."""
    def label(i: int) -> str:
        w = q.nodes[i]
        if labels and w in labels:
            return labels[w]
        return w.literal()

    lines = ["digraph ar_quiver {", "  rankdir=BT;"]
    for i in range(len(q.nodes)):
        lines.append(f'  "{label(i)}";')
    solid = sorted((label(s), label(t), kind) for s, t, kind in q.arrows)
    for s, t, kind in solid:
        lines.append(f'  "{s}" -> "{t}" [label="{kind[0]}"];')
    dashed = sorted((label(i), label(q.tau[i]))
                    for i in range(len(q.nodes)) if q.tau[i] != i)
    for s, t in dashed:
        lines.append(f'  "{s}" -> "{t}" [style=dashed, label="tau"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

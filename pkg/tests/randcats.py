"""Seeded random finite categories for oracle tests.

Every family is associative by construction (free categories on acyclic
multigraphs, transitively closed posets, cyclic groups, discrete
categories, and disjoint unions of those), so the exhaustive validator
doubles as a consistency check on the generator.
"""

from __future__ import annotations

import random

from catcover.builders import cyclic_group, discrete, disjoint_union
from catcover.category import FiniteCategory, make_category


def _free_dag_category(rng: random.Random, max_objects: int, max_morphisms: int) -> FiniteCategory:
    k = rng.randint(1, min(4, max_objects))
    objects = [f"o{i}" for i in range(k)]
    edges: list[tuple[str, int, int]] = []

    def paths() -> list[tuple[str, ...]]:
        out: list[tuple[str, ...]] = []

        def extend(prefix: list[str], at: int) -> None:
            for name, src, tgt in edges:
                if src == at:
                    out.append(tuple(prefix + [name]))
                    extend(prefix + [name], tgt)

        for i in range(k):
            extend([], i)
        return out

    attempts = rng.randint(0, 2 * k)
    for e in range(attempts):
        if k < 2:
            break
        src = rng.randrange(k - 1)
        tgt = rng.randrange(src + 1, k)
        edges.append((f"e{e}", src, tgt))
        if k + len(paths()) > max_morphisms:
            edges.pop()

    endpoints = {name: (src, tgt) for name, src, tgt in edges}
    morphisms = [(f"1_{x}", x, x) for x in objects]
    for p in paths():
        morphisms.append((
            "|".join(p),
            objects[endpoints[p[0]][0]],
            objects[endpoints[p[-1]][1]],
        ))
    identity = {x: f"1_{x}" for x in objects}

    def rule(g: str, f: str) -> str:
        return f + "|" + g  # path concatenation: f happens first

    return make_category(objects, morphisms, identity, rule)


def _random_poset(rng: random.Random, max_objects: int, max_morphisms: int) -> FiniteCategory:
    k = rng.randint(1, max_objects)
    relation = {(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < 0.3}
    changed = True
    while changed:  # transitive closure
        changed = False
        for (a, b) in list(relation):
            for (c, d) in list(relation):
                if b == c and (a, d) not in relation:
                    relation.add((a, d))
                    changed = True
    while k + len(relation) > max_morphisms:
        # drop a maximal pair; transitivity is preserved
        pair = max(relation, key=lambda p: p[1] - p[0])
        relation.discard(pair)
    objects = [f"p{i}" for i in range(k)]
    morphisms = [(f"1_{x}", x, x) for x in objects]
    morphisms += [(f"r{i}_{j}", f"p{i}", f"p{j}") for (i, j) in sorted(relation)]

    def rule(g: str, f: str) -> str:
        i = f.split("_")[0][1:]
        j = g.split("_")[1]
        return f"r{i}_{j}"

    return make_category(objects, morphisms, {x: f"1_{x}" for x in objects}, rule)


def random_category(rng: random.Random, max_objects: int = 6, max_morphisms: int = 8) -> FiniteCategory:
    kind = rng.choice(["dag", "dag", "poset", "poset", "group", "discrete", "union"])
    if kind == "dag":
        return _free_dag_category(rng, max_objects, max_morphisms)
    if kind == "poset":
        return _random_poset(rng, max_objects, max_morphisms)
    if kind == "group":
        return cyclic_group(rng.randint(1, min(6, max_morphisms)))
    if kind == "discrete":
        return discrete(rng.randint(1, max_objects))
    left = cyclic_group(rng.randint(1, 3))
    right = discrete(rng.randint(1, max(1, max_objects - 1)))
    union = disjoint_union(left, right)
    if len(union.morphisms) > max_morphisms:
        return discrete(rng.randint(1, max_objects))
    return union

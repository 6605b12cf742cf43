"""Chain counting for finite categories.

A length-n chain is a composable sequence of n morphisms. Counts are
taken over all chains or over chains ending at a fixed object, in two
variants: *degenerate* (identities allowed) and *nondegenerate*
(identities forbidden). Counting reduces to powers of the hom-set count
matrix; everything is exact integer arithmetic, and a brute-force
enumerator is provided as an independent oracle for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator

from .category import FiniteCategory
from .errors import InputError

DEGENERATE = "degenerate"
NONDEGENERATE = "nondegenerate"
VARIANTS = (DEGENERATE, NONDEGENERATE)


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise InputError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return variant


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Square matrix of hom-set sizes, indexed by the object order.

    In the nondegenerate variant the diagonal is reduced by one: the
    identity of each object is not counted.
    """

    objects: tuple[str, ...]
    variant: str
    rows: tuple[tuple[int, ...], ...]

    def entry(self, src: str, tgt: str) -> int:
        i = self.objects.index(src)
        j = self.objects.index(tgt)
        return self.rows[i][j]


@dataclass(frozen=True)
class NerveCount:
    """An exact chain count for one (length, variant, optional target)."""

    n: int
    count: int
    variant: str
    target: str | None = None


def adjacency_matrix(cat: FiniteCategory, variant: str = DEGENERATE) -> AdjacencyMatrix:
    """Hom-set count matrix of the category, per variant."""
    _check_variant(variant)
    size = len(cat.objects)
    rows = [[0] * size for _ in range(size)]
    for m in cat.morphisms:
        if variant == NONDEGENERATE and cat.is_identity(m.name):
            continue
        rows[cat.object_index(m.src)][cat.object_index(m.tgt)] += 1
    return AdjacencyMatrix(cat.objects, variant, tuple(tuple(r) for r in rows))


def _row_iterate(matrix: AdjacencyMatrix, max_n: int) -> list[list[int]]:
    """Column sums of the n-th matrix power for n = 0..max_n.

    Row n holds, per object x, the number of length-n chains ending at x;
    computed by iterating the all-ones row vector, so the cost is
    O(max_n * |Ob|^2) integer multiplications.
    """
    size = len(matrix.objects)
    rows = matrix.rows
    vec = [1] * size
    out = [vec]
    for _ in range(max_n):
        vec = [sum(vec[i] * rows[i][j] for i in range(size)) for j in range(size)]
        out.append(vec)
    return out


def targeted_count_table(cat: FiniteCategory, max_n: int, variant: str = DEGENERATE) -> list[dict[str, int]]:
    """For each n = 0..max_n, the map object -> number of chains ending there."""
    if max_n < 0:
        raise InputError("max_n must be >= 0")
    matrix = adjacency_matrix(cat, variant)
    table = _row_iterate(matrix, max_n)
    return [dict(zip(matrix.objects, row)) for row in table]


def nerve_count_sequence(cat: FiniteCategory, max_n: int, variant: str = DEGENERATE) -> list[int]:
    """Total chain counts for n = 0..max_n."""
    if max_n < 0:
        raise InputError("max_n must be >= 0")
    matrix = adjacency_matrix(cat, variant)
    return [sum(row) for row in _row_iterate(matrix, max_n)]


def nerve_count(cat: FiniteCategory, n: int, variant: str = DEGENERATE) -> NerveCount:
    """Exact number of length-n chains; n = 0 counts the objects."""
    if n < 0:
        raise InputError("chain length must be >= 0")
    total = nerve_count_sequence(cat, n, variant)[n]
    return NerveCount(n=n, count=total, variant=variant)


def nerve_count_targeted(cat: FiniteCategory, n: int, x: str, variant: str = DEGENERATE) -> NerveCount:
    """Exact number of length-n chains whose final object is x."""
    if n < 0:
        raise InputError("chain length must be >= 0")
    cat.object_index(x)
    table = targeted_count_table(cat, n, variant)
    return NerveCount(n=n, count=table[n][x], variant=variant, target=x)


@dataclass(frozen=True)
class EnumeratedNerve:
    """Explicit chains in lexicographic order, possibly truncated.

    A chain of length n >= 1 is the tuple of its morphism names; a chain
    of length 0 is written as the 1-tuple of its object name.
    """

    n: int
    variant: str
    chains: tuple[tuple[str, ...], ...]
    truncated: bool


def _iter_chains(cat: FiniteCategory, n: int, variant: str) -> Iterator[tuple[str, ...]]:
    if n == 0:
        for x in cat.objects:
            yield (x,)
        return
    skip_identities = variant == NONDEGENERATE

    def extend(prefix: list[str], at: str, remaining: int) -> Iterator[tuple[str, ...]]:
        if remaining == 0:
            yield tuple(prefix)
            return
        # source_set tuples preserve the global morphism order, so the
        # DFS yields chains lexicographically by morphism index.
        for m in cat.source_set(at):
            if skip_identities and cat.is_identity(m):
                continue
            prefix.append(m)
            yield from extend(prefix, cat.target(m), remaining - 1)
            prefix.pop()

    for m in cat.morphisms:
        if skip_identities and cat.is_identity(m.name):
            continue
        yield from extend([m.name], m.tgt, n - 1)


def enumerate_nerve(cat: FiniteCategory, n: int, variant: str = DEGENERATE, *, limit: int) -> EnumeratedNerve:
    """Brute-force chain listing, the oracle for the matrix-power counts.

    ``limit`` bounds memory; the result is flagged truncated when more
    chains exist beyond it.
    """
    _check_variant(variant)
    if n < 0:
        raise InputError("chain length must be >= 0")
    if limit < 1:
        raise InputError("limit must be >= 1")
    gen = _iter_chains(cat, n, variant)
    chains = tuple(islice(gen, limit))
    truncated = next(gen, None) is not None
    return EnumeratedNerve(n=n, variant=variant, chains=chains, truncated=truncated)

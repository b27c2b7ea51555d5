"""Finite direct sums of matrix algebras and the identifier for acyclic graphs."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from topgraph.errors import HasInfiniteMultiplicity
from topgraph.graph import TopGraph, classify_vertices, path_count_from, topological_order


@dataclass(frozen=True)
class AlgebraExpr:
    """Formal direct sum of full matrix algebras, stored as a sorted tuple of sizes.

    ``AlgebraExpr((2, 3))`` is M_2 ⊕ M_3; M_1 is the complex numbers.
    Equality is multiset equality, i.e. isomorphism.
    """

    summands: tuple = ()

    def __post_init__(self):
        sizes = tuple(sorted(int(n) for n in self.summands))
        if any(n < 1 for n in sizes):
            raise ValueError("matrix sizes must be positive")
        object.__setattr__(self, "summands", sizes)

    @classmethod
    def of(cls, *sizes: int) -> "AlgebraExpr":
        return cls(tuple(sizes))

    def __str__(self):
        if not self.summands:
            return "0"
        return " ⊕ ".join(f"M_{n}" for n in self.summands)

    def as_counter(self) -> Counter:
        return Counter(self.summands)

    def __add__(self, other):
        if not isinstance(other, AlgebraExpr):
            return NotImplemented
        return direct_sum(self, other)


def direct_sum(*parts: AlgebraExpr) -> AlgebraExpr:
    return AlgebraExpr(tuple(n for a in parts for n in a.summands))


def tensor_matrix(a: AlgebraExpr, k: int) -> AlgebraExpr:
    if k < 1:
        raise ValueError("k must be positive")
    return AlgebraExpr(tuple(n * k for n in a.summands))


def dimension(a: AlgebraExpr) -> int:
    return sum(n * n for n in a.summands)


def identify_finite_dim(g: TopGraph) -> AlgebraExpr:
    """Identify the Cuntz-Krieger algebra of a finite acyclic graph.

    One summand per source vertex, of size equal to the number of paths
    starting at that source.  Raises HasLoops or HasInfiniteMultiplicity
    when the algebra is not of this form.
    """
    topological_order(g)
    if g.has_infinite_multiplicity():
        raise HasInfiniteMultiplicity("graph has an edge class of multiplicity omega")
    sources = classify_vertices(g).sce
    return AlgebraExpr(tuple(path_count_from(g, s) for s in sources))


def identify_all(graphs: Iterable[TopGraph]) -> list:
    return [identify_finite_dim(g) for g in graphs]

"""Combinatorial strata of the associativity cell complex.

The complex on n ordered inputs (n >= 2) has dimension n - 2.  Its strata
are planar rooted trees with leaves labeled 1..n in order and every internal
vertex of arity at least 2.  A tree with v internal vertices labels a
stratum of codimension v - 1: the corolla is the open top cell, binary
trees are the vertices.  Contracting one internal edge moves to the
adjacent stratum of codimension one less.

Trees are nested tuples: a leaf is its label, an internal vertex is the
tuple of its children.  Text form: "((1 2) 3)".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Union

from .errors import InputError

Tree = Union[int, tuple]


def _internal_count(tree: Tree) -> int:
    if isinstance(tree, int):
        return 0
    return 1 + sum(_internal_count(child) for child in tree)


def _leaf_labels(tree: Tree) -> Iterator[int]:
    if isinstance(tree, int):
        yield tree
        return
    for child in tree:
        yield from _leaf_labels(child)


def _validate(tree: Tree) -> None:
    if isinstance(tree, int):
        return
    if not isinstance(tree, tuple) or len(tree) < 2:
        raise InputError("internal vertices need at least two children")
    for child in tree:
        _validate(child)


def serialize_tree(tree: Tree) -> str:
    if isinstance(tree, int):
        return str(tree)
    return "(" + " ".join(serialize_tree(child) for child in tree) + ")"


def parse_tree(text: str) -> Tree:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of tree text")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            children = []
            while pos < len(tokens) and tokens[pos] != ")":
                children.append(node())
            if pos >= len(tokens):
                raise InputError("missing ')' in tree text")
            pos += 1
            return tuple(children)
        if tok == ")":
            raise InputError("unexpected ')' in tree text")
        try:
            return int(tok)
        except ValueError:
            raise InputError(f"bad leaf label {tok!r}") from None

    tree = node()
    if pos != len(tokens):
        raise InputError("trailing text after tree")
    return tree


@dataclass(frozen=True)
class Stratum:
    """A stratum of the complex on n inputs, named by its planar tree."""

    tree: Tree

    def __post_init__(self):
        _validate(self.tree)
        labels = list(_leaf_labels(self.tree))
        if labels != list(range(1, len(labels) + 1)):
            raise InputError("leaves must be labeled 1..n in planar order")
        if len(labels) < 2:
            raise InputError("a stratum needs at least two leaves")

    @property
    def leaves(self) -> int:
        return sum(1 for _ in _leaf_labels(self.tree))

    @property
    def codim(self) -> int:
        return _internal_count(self.tree) - 1

    @property
    def dimension(self) -> int:
        return self.leaves - 2 - self.codim

    def serialize(self) -> str:
        return serialize_tree(self.tree)

    def contractions(self) -> tuple["Stratum", ...]:
        """All strata reached by contracting exactly one internal edge."""
        return tuple(Stratum(t) for t in _contract_one(self.tree))

    @staticmethod
    def parse(text: str) -> "Stratum":
        return Stratum(parse_tree(text))

    def __repr__(self) -> str:
        return f"<Stratum {self.serialize()}>"


def _contract_one(tree: Tree) -> list[tuple]:
    if isinstance(tree, int):
        return []
    out = []
    for idx, child in enumerate(tree):
        if isinstance(child, tuple):
            out.append(tree[:idx] + child + tree[idx + 1:])
        for sub in _contract_one(child):
            out.append(tree[:idx] + (sub,) + tree[idx + 1:])
    return out


@lru_cache(maxsize=None)
def _trees_over(leaves: tuple[int, ...]) -> tuple[Tree, ...]:
    """Every planar tree over the given consecutive leaf labels."""
    if len(leaves) == 1:
        return (leaves[0],)
    out: list[Tree] = []
    for split in _compositions(len(leaves)):
        blocks = []
        start = 0
        for size in split:
            blocks.append(leaves[start:start + size])
            start += size
        for children in product(*[_trees_over(b) for b in blocks]):
            out.append(tuple(children))
    return tuple(out)


@lru_cache(maxsize=None)
def _compositions(total: int) -> tuple[tuple[int, ...], ...]:
    """Ways to split total into an ordered sequence of >= 2 positive parts."""
    out = []

    def extend(prefix: list[int], remaining: int) -> None:
        if remaining == 0:
            if len(prefix) >= 2:
                out.append(tuple(prefix))
            return
        for part in range(1, remaining + 1):
            prefix.append(part)
            extend(prefix, remaining - part)
            prefix.pop()

    extend([], total)
    return tuple(out)


def dim(n: int) -> int:
    """Dimension of the complex on n inputs."""
    if not isinstance(n, int) or n < 2:
        raise InputError("the complex needs at least 2 inputs")
    return n - 2


def enumerate_strata(n: int, codim: int) -> tuple[Stratum, ...]:
    """All strata of the given codimension, in serialization order."""
    top = dim(n)
    if not isinstance(codim, int) or not 0 <= codim <= top:
        raise InputError(f"codimension must lie in 0..{top} for n={n}")
    found = [Stratum(t) for t in _trees_over(tuple(range(1, n + 1)))
             if _internal_count(t) == codim + 1]
    return tuple(sorted(found, key=Stratum.serialize))


@dataclass(frozen=True)
class FacetComposition:
    """A codimension-1 stratum as a one-level substitution.

    An inner vertex of arity `inner` sits in slot `position` (1-based) of the
    root of arity `outer`; notation "m<outer> o<position> m<inner>".
    """

    stratum: Stratum
    outer: int
    inner: int
    position: int

    @property
    def notation(self) -> str:
        return f"m{self.outer} o{self.position} m{self.inner}"


def facet_compositions(n: int) -> tuple[FacetComposition, ...]:
    """The codimension-1 strata with their substitution descriptions."""
    if not isinstance(n, int) or n < 3:
        raise InputError("facets need at least 3 inputs")
    out = []
    for inner in range(2, n):
        outer = n - inner + 1
        for position in range(1, outer + 1):
            children: list[Tree] = list(range(1, position))
            children.append(tuple(range(position, position + inner)))
            children.extend(range(position + inner, n + 1))
            stratum = Stratum(tuple(children))
            out.append(FacetComposition(stratum, outer, inner, position))
    out.sort(key=lambda fc: fc.stratum.serialize())
    return tuple(out)

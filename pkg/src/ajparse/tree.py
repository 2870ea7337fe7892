"""Constituency-tree data model.

Trees are immutable values: leaves carry tokens (word + optional POS tag),
internal nodes carry a category label and an ordered, non-empty child tuple.
All tree-producing operations return new trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

# Joins the labels of a collapsed unary chain, e.g. "S+NP".
LABEL_SEPARATOR = "+"


class LabelFormatError(ValueError):
    """A label cannot be split back into a unary chain."""


@dataclass(frozen=True)
class Token:
    word: str
    pos: str = ""

    def __post_init__(self):
        if not self.word:
            raise ValueError("token word must be non-empty")


@dataclass(frozen=True)
class Leaf:
    token: Token
    index: int


@dataclass(frozen=True)
class Internal:
    label: str
    children: tuple  # of Leaf | Internal, non-empty

    def __post_init__(self):
        if not self.label:
            raise ValueError("internal node label must be non-empty")
        if not self.children:
            raise ValueError("internal node must have at least one child")


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class ConstituencyTree:
    """A rooted tree over a token sequence; ``root is None`` means the
    empty tree (zero tokens)."""

    root: Optional[Internal]
    length: int = field(init=False)

    def __post_init__(self):
        if self.root is not None and not isinstance(self.root, Internal):
            raise ValueError("non-empty tree must have an internal root")
        n = sum(1 for _ in iter_leaves(self.root)) if self.root is not None else 0
        object.__setattr__(self, "length", n)

    @property
    def is_empty(self) -> bool:
        return self.root is None


EMPTY_TREE = ConstituencyTree(None)


def iter_leaves(node: Optional[Node]) -> Iterator[Leaf]:
    if node is None:
        return
    if isinstance(node, Leaf):
        yield node
    else:
        for child in node.children:
            yield from iter_leaves(child)


def leaf_tokens(tree: ConstituencyTree) -> list:
    return [leaf.token for leaf in iter_leaves(tree.root)]


def rightmost_chain(tree: ConstituencyTree) -> list:
    """Internal nodes from the root down along last-child links."""
    chain = []
    node = tree.root
    while isinstance(node, Internal):
        chain.append(node)
        node = node.children[-1]
    return chain


def chain_length(tree: ConstituencyTree) -> int:
    return len(rightmost_chain(tree))


def replace_on_rightmost_chain(chain: list, depth: int, new_node: Node) -> Internal:
    """Rebuild the tree with ``chain[depth]`` replaced by ``new_node``;
    ancestors above ``depth`` are recreated with their last child swapped."""
    node = new_node
    for d in range(depth - 1, -1, -1):
        parent = chain[d]
        node = Internal(parent.label, parent.children[:-1] + (node,))
    return node


def has_unary_chains(tree: ConstituencyTree) -> bool:
    """True iff some internal node's only child is another internal node.
    An internal node whose sole child is a leaf does not count."""

    def walk(node: Node) -> bool:
        if isinstance(node, Leaf):
            return False
        if len(node.children) == 1 and isinstance(node.children[0], Internal):
            return True
        return any(walk(c) for c in node.children)

    return tree.root is not None and walk(tree.root)


def collapse_unary_chains(tree: ConstituencyTree) -> ConstituencyTree:
    """Merge each maximal internal-over-internal chain into one node whose
    label joins the chain's labels with ``LABEL_SEPARATOR``."""
    if tree.root is None:
        return tree

    def walk(node: Node) -> Node:
        if isinstance(node, Leaf):
            return node
        labels = [node.label]
        cur = node
        while len(cur.children) == 1 and isinstance(cur.children[0], Internal):
            cur = cur.children[0]
            labels.append(cur.label)
        return Internal(
            LABEL_SEPARATOR.join(labels), tuple(walk(c) for c in cur.children)
        )

    return ConstituencyTree(walk(tree.root))


def restore_unary_chains(tree: ConstituencyTree) -> ConstituencyTree:
    """Expand separator-joined labels back into descending unary chains."""
    if tree.root is None:
        return tree

    def walk(node: Node) -> Node:
        if isinstance(node, Leaf):
            return node
        children = tuple(walk(c) for c in node.children)
        parts = node.label.split(LABEL_SEPARATOR)
        if any(not p for p in parts):
            raise LabelFormatError(f"malformed collapsed label: {node.label!r}")
        out = Internal(parts[-1], children)
        for part in reversed(parts[:-1]):
            out = Internal(part, (out,))
        return out

    return ConstituencyTree(walk(tree.root))


def node_equal(a: Optional[Node], b: Optional[Node]) -> bool:
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, Leaf) != isinstance(b, Leaf):
        return False
    if isinstance(a, Leaf):
        if a.token.word != b.token.word or a.index != b.index:
            return False
        # POS tags only count when both sides carry them.
        if a.token.pos and b.token.pos and a.token.pos != b.token.pos:
            return False
        return True
    if a.label != b.label or len(a.children) != len(b.children):
        return False
    return all(node_equal(x, y) for x, y in zip(a.children, b.children))


def tree_equal(a: ConstituencyTree, b: ConstituencyTree) -> bool:
    return node_equal(a.root, b.root)

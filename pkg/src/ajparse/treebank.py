"""Bracketed-treebank reading, writing, and normalization.

Input files hold one or more S-expression trees (one per line or
pretty-printed across lines). Preterminals ``(TAG word)`` become leaves with
a POS attribute; an outer label-less / TOP / ROOT wrapper is unwrapped.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .tree import (
    LABEL_SEPARATOR,
    ConstituencyTree,
    Internal,
    Leaf,
    Node,
    Token,
    collapse_unary_chains,
    iter_leaves,
)

logger = logging.getLogger(__name__)

_WRAPPER_LABELS = ("", "TOP", "ROOT")
# Atomic bracket-style tags kept verbatim by function-tag stripping.
_ATOMIC_TAGS = ("-NONE-", "-LRB-", "-RRB-")
_TRACE_TAG = "-NONE-"


class TreebankFormatError(ValueError):
    def __init__(self, message: str, offset: Optional[int] = None, entry: Optional[int] = None):
        self.offset = offset
        self.entry = entry
        where = ""
        if entry is not None:
            where += f" (entry {entry})"
        if offset is not None:
            where += f" (offset {offset})"
        super().__init__(message + where)


class DegenerateSentenceError(ValueError):
    """Normalization removed every token of the sentence."""


@dataclass(frozen=True)
class CorpusEntry:
    id: int
    tree: ConstituencyTree
    raw: str


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    return tokens


def _parse_node(tokens, pos, counter):
    tok, off = tokens[pos]
    if tok != "(":
        raise TreebankFormatError(f"expected '(' but found {tok!r}", off)
    pos += 1
    if pos >= len(tokens):
        raise TreebankFormatError("unbalanced parentheses", off)
    label = ""
    if tokens[pos][0] not in "()":
        label = tokens[pos][0]
        pos += 1
    atoms = []
    children = []
    while pos < len(tokens) and tokens[pos][0] != ")":
        tok, toff = tokens[pos]
        if tok == "(":
            node, pos = _parse_node(tokens, pos, counter)
            children.append(node)
        else:
            atoms.append((tok, toff))
            pos += 1
    if pos >= len(tokens):
        raise TreebankFormatError("unbalanced parentheses", off)
    pos += 1  # consume ')'

    if atoms and children:
        raise TreebankFormatError(
            "token outside a preterminal pair", atoms[0][1]
        )
    if atoms:
        if len(atoms) > 1:
            raise TreebankFormatError("multiple tokens in one preterminal", atoms[1][1])
        if not label:
            raise TreebankFormatError("preterminal without a POS tag", off)
        word = atoms[0][0]
        leaf = Leaf(Token(word, label), counter[0])
        counter[0] += 1
        return leaf, pos
    if not children:
        raise TreebankFormatError("empty constituent", off)
    if not label:
        if len(children) == 1:
            return children[0], pos  # label-less wrapper
        raise TreebankFormatError("unlabeled constituent with several children", off)
    return Internal(label, tuple(children)), pos


def parse_bracketed(text: str) -> ConstituencyTree:
    """Parse a single bracketed tree."""
    tokens = _tokenize(text)
    if not tokens:
        raise TreebankFormatError("no tree found", 0)
    counter = [0]
    node, pos = _parse_node(tokens, 0, counter)
    if pos != len(tokens):
        raise TreebankFormatError("trailing content after tree", tokens[pos][1])
    while (
        isinstance(node, Internal)
        and node.label in _WRAPPER_LABELS
        and len(node.children) == 1
    ):
        node = node.children[0]
    if isinstance(node, Leaf):
        raise TreebankFormatError("tree root is a leaf", tokens[0][1])
    return ConstituencyTree(node)


def write_bracketed(tree: ConstituencyTree) -> str:
    """Canonical one-line form; the empty tree serializes to ''."""
    if tree.root is None:
        return ""

    def emit(node: Node) -> str:
        if isinstance(node, Leaf):
            return f"({node.token.pos or 'XX'} {node.token.word})"
        return f"({node.label} " + " ".join(emit(c) for c in node.children) + ")"

    return emit(tree.root)


def _strip_label(label: str) -> str:
    """Drop functional-tag suffixes and coindexation (after '-' or '=')."""
    if label in _ATOMIC_TAGS or label.startswith("-"):
        return label
    for sep in "-=":
        i = label.find(sep)
        if i > 0:
            label = label[:i]
    return label


def normalize(tree: ConstituencyTree) -> ConstituencyTree:
    """Remove trace elements, strip functional tags, collapse unary chains."""

    def strip(node: Node) -> Optional[Node]:
        if isinstance(node, Leaf):
            return None if node.token.pos == _TRACE_TAG else node
        children = tuple(c for c in map(strip, node.children) if c is not None)
        if not children:
            return None
        return Internal(_strip_label(node.label), children)

    root = strip(tree.root) if tree.root is not None else None
    if tree.root is not None and root is None:
        raise DegenerateSentenceError("normalization removed the entire sentence")
    if root is not None:
        root = _reindex(root)
    return collapse_unary_chains(ConstituencyTree(root))


def _reindex(root: Internal) -> Internal:
    counter = [0]

    def walk(node: Node) -> Node:
        if isinstance(node, Leaf):
            leaf = Leaf(node.token, counter[0])
            counter[0] += 1
            return leaf
        return Internal(node.label, tuple(walk(c) for c in node.children))

    return walk(root)


def split_trees(text: str):
    """Yield (raw S-expression, byte offset) for each top-level tree."""
    depth = 0
    start = None
    for i, c in enumerate(text):
        if c == "(":
            if depth == 0:
                start = i
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                raise TreebankFormatError("unbalanced ')'", i)
            if depth == 0:
                yield text[start : i + 1], start
        elif depth == 0 and not c.isspace():
            raise TreebankFormatError(f"stray text {c!r} between trees", i)
    if depth != 0:
        raise TreebankFormatError("unbalanced '('", start or 0)


def _check_plain_labels(tree: ConstituencyTree, entry: int) -> None:
    for node in _iter_internal(tree.root):
        if LABEL_SEPARATOR in node.label:
            raise TreebankFormatError(
                f"label {node.label!r} contains the reserved separator", entry=entry
            )


def _iter_internal(node):
    if isinstance(node, Internal):
        yield node
        for c in node.children:
            yield from _iter_internal(c)


def load_corpus(
    path: str,
    normalization: bool = True,
    strict: bool = True,
    plain_labels: bool = True,
) -> list:
    """Load a bracketed file into ordered corpus entries.

    Malformed trees raise in strict mode (naming the entry index) and are
    skipped with a warning otherwise. ``plain_labels`` rejects the reserved
    chain separator in labels; turn it off for files of already-collapsed
    trees (e.g. parser output), whose labels are chain joins by construction.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    entries = []
    for i, (raw, offset) in enumerate(split_trees(text)):
        try:
            tree = parse_bracketed(raw)
            if plain_labels:
                _check_plain_labels(tree, i)
            if normalization:
                tree = normalize(tree)
        except (TreebankFormatError, DegenerateSentenceError, ValueError) as err:
            if strict:
                if isinstance(err, TreebankFormatError) and err.entry is None:
                    err.entry = i
                raise TreebankFormatError(str(err), offset=offset, entry=i) from err
            logger.warning("skipping malformed entry %d: %s", i, err)
            continue
        entries.append(CorpusEntry(len(entries), tree, raw))
    return entries


def write_corpus(trees, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for tree in trees:
            fh.write(write_bracketed(tree) + "\n")


def tokens_of(tree: ConstituencyTree) -> list:
    return [leaf.token for leaf in iter_leaves(tree.root)]

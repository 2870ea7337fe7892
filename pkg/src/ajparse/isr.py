"""In-order shift-reduce (ISR) machinery.

Implements the comparison transition system (shift / reduce / project over a
stack of subtrees and projected nonterminals), the legality predicate for
stacks, the bijection ``phi`` between legal stacks and marked partial trees
with its inverse ``gamma``, the embedding ``xi``, and the constructive
translation of attach-juxtapose actions into ISR action sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .transition import ATTACH, AjAction, IllegalActionError, apply_action
from .tree import (
    ConstituencyTree,
    Internal,
    Leaf,
    Node,
    Token,
    rightmost_chain,
)

SHIFT_KIND = "shift"
REDUCE_KIND = "reduce"
PROJECT_KIND = "project"


class IllegalStackError(ValueError):
    pass


@dataclass(frozen=True)
class IsrAction:
    kind: str
    label: Optional[str] = None

    def __post_init__(self):
        if self.kind not in (SHIFT_KIND, REDUCE_KIND, PROJECT_KIND):
            raise ValueError(f"unknown ISR action kind: {self.kind!r}")
        if self.kind == PROJECT_KIND and not self.label:
            raise ValueError("project requires a non-empty label")
        if self.kind != PROJECT_KIND and self.label is not None:
            raise ValueError(f"{self.kind} takes no label")

    def __str__(self) -> str:
        return f"pj:{self.label}" if self.kind == PROJECT_KIND else self.kind


SHIFT = IsrAction(SHIFT_KIND)
REDUCE = IsrAction(REDUCE_KIND)


def project(label: str) -> IsrAction:
    return IsrAction(PROJECT_KIND, label)


def format_isr_actions(actions) -> str:
    return " ".join(str(a) for a in actions)


def parse_isr_actions(text: str) -> list:
    actions = []
    for tok in text.split():
        if tok == "shift":
            actions.append(SHIFT)
        elif tok == "reduce":
            actions.append(REDUCE)
        elif tok.startswith("pj:"):
            actions.append(project(tok[3:]))
        else:
            raise ValueError(f"unknown ISR action token: {tok!r}")
    return actions


@dataclass(frozen=True)
class Projected:
    """A nonterminal pushed before its constituent is complete."""

    label: str


StackElement = Union[Node, Projected]

_PROJECTED_CACHE: dict = {}


def _projected_cached(label: str) -> Projected:
    pj = _PROJECTED_CACHE.get(label)
    if pj is None:
        pj = _PROJECTED_CACHE[label] = Projected(label)
    return pj


@dataclass(frozen=True)
class IsrStack:
    elements: tuple  # bottom to top
    buffer_consumed: int = 0


EMPTY_STACK = IsrStack(())


@dataclass(frozen=True)
class AugmentedTree:
    """A partial tree with a marked rightmost-chain depth.

    ``root`` may be None (empty tree, mark -1) or, transiently, a bare leaf
    (the stack right after the first shift); otherwise an internal node.
    """

    root: Optional[Node]
    mark: int

    def __post_init__(self):
        depth = 0
        node = self.root
        while isinstance(node, Internal):
            depth += 1
            node = node.children[-1]
        if self.mark < -1 or self.mark >= depth:
            raise ValueError(f"mark {self.mark} out of range for chain length {depth}")
        if self.root is None and self.mark != -1:
            raise ValueError("empty tree requires mark -1")


def isr_apply(stack: IsrStack, action: IsrAction, next_token: Optional[Token] = None) -> IsrStack:
    elems = stack.elements
    if action.kind == SHIFT_KIND:
        if next_token is None:
            raise IllegalStackError("shift requires the next token")
        leaf = Leaf(next_token, stack.buffer_consumed)
        return IsrStack(elems + (leaf,), stack.buffer_consumed + 1)
    if action.kind == PROJECT_KIND:
        # The nonterminal is inserted beneath the completed top element.
        if not elems or isinstance(elems[-1], Projected):
            raise IllegalStackError("project requires a completed subtree on top")
        top = elems[-1]
        return IsrStack(
            elems[:-1] + (Projected(action.label), top), stack.buffer_consumed
        )
    # reduce: pop down to the nearest projected nonterminal.
    idx = _topmost_projected(elems)
    if idx is None:
        raise IllegalStackError("reduce requires a projected nonterminal on the stack")
    children = elems[idx + 1 :]
    if not children:
        raise IllegalStackError("reduce requires at least one item above the projection")
    new_node = Internal(elems[idx].label, children)
    return IsrStack(elems[:idx] + (new_node,), stack.buffer_consumed)


def _topmost_projected(elems) -> Optional[int]:
    for i in range(len(elems) - 1, -1, -1):
        if isinstance(elems[i], Projected):
            return i
    return None


def _reduce_fully(elems):
    """Greedily reduce; returns the final element list or None when stuck."""
    elems = list(elems)
    while True:
        idx = _topmost_projected(elems)
        if idx is None:
            return elems
        if idx == len(elems) - 1:
            return None  # projection with nothing above it: stuck
        elems[idx:] = [Internal(elems[idx].label, tuple(elems[idx + 1 :]))]


def is_legal_stack(stack: IsrStack) -> bool:
    """A stack is legal iff repeated reduce ends in a single subtree (or it
    is empty).

    Equivalent closed form, O(1): the topmost reduce target always has at
    least one item above it when the stack ends in a completed subtree, and
    each reduce preserves that invariant while folding everything above the
    bottommost projection, so full reduction succeeds and yields one element
    exactly when the stack starts with a projection (or has a single
    completed subtree) and does not end with one.
    """
    elems = stack.elements
    if not elems:
        return True
    if isinstance(elems[-1], Projected):
        return False
    return len(elems) == 1 or isinstance(elems[0], Projected)


def phi(stack: IsrStack) -> AugmentedTree:
    """Map a legal stack to (fully-reduced tree, #projections - 1)."""
    final = _reduce_fully(stack.elements)
    if final is None or len(final) > 1:
        raise IllegalStackError("phi is only defined on legal stacks")
    n_proj = sum(1 for e in stack.elements if isinstance(e, Projected))
    root = final[0] if final else None
    return AugmentedTree(root, n_proj - 1)


def gamma(aug: AugmentedTree) -> IsrStack:
    """Inverse of phi: rebuild the stack by extended in-order traversal.

    Rightmost-chain nodes with depth <= mark contribute a projected
    nonterminal followed by their non-final children as whole subtrees,
    recursing into the last child; every other subtree is pushed whole.
    """
    elems = []
    node = aug.root
    depth = 0
    if node is not None:
        while isinstance(node, Internal) and depth <= aug.mark:
            elems.append(_projected_cached(node.label))
            elems.extend(node.children[:-1])
            node = node.children[-1]
            depth += 1
        elems.append(node)
    # Iterative leaf count; recursive generators are too slow on the hot
    # path of the exhaustive checks.
    consumed = 0
    pending = [aug.root] if aug.root is not None else []
    while pending:
        node = pending.pop()
        if isinstance(node, Leaf):
            consumed += 1
        else:
            pending.extend(node.children)
    return IsrStack(tuple(elems), consumed)


def xi(tree: ConstituencyTree) -> AugmentedTree:
    """Embed a plain partial tree by marking its whole rightmost chain."""
    return AugmentedTree(tree.root, len(rightmost_chain(tree)) - 1)


def translate_action(state_tree: ConstituencyTree, action: AjAction) -> list:
    """ISR action sequence equivalent to one attach-juxtapose action.

    attach(i, X):    (L - i - 1) reduces, shift, then pj:X when X is given.
    juxtapose(i, X, Y): (L - i) reduces, pj:Y, shift, then pj:X when given.
    The degenerate first attach on the empty tree uses zero reduces.
    """
    depth = len(rightmost_chain(state_tree))
    if state_tree.root is None:
        if action.kind != ATTACH or action.target != 0 or action.parent_label is None:
            raise IllegalActionError(
                "the empty tree only admits attach(0, <label>)", action
            )
        n_reduce = 0
    elif not 0 <= action.target < depth:
        raise IllegalActionError(
            f"target {action.target} outside rightmost chain of length {depth}", action
        )
    elif action.kind == ATTACH:
        n_reduce = depth - action.target - 1
    else:
        n_reduce = depth - action.target

    out = [REDUCE] * n_reduce
    if action.kind != ATTACH:
        out.append(project(action.new_label))
    out.append(SHIFT)
    if action.parent_label is not None:
        out.append(project(action.parent_label))
    return out


def translate_sequence(tokens, actions) -> list:
    """Translate a full action sequence, closing all open projections with
    terminal reduces so the final stack holds a single subtree."""
    from .transition import INITIAL_STATE  # local to avoid cycle at import time

    state = INITIAL_STATE
    out = []
    for token, action in zip(tokens, actions):
        out.extend(translate_action(state.tree, action))
        state = apply_action(state, token, action)
    out.extend([REDUCE] * len(rightmost_chain(state.tree)))
    return out


def replay(actions, tokens) -> IsrStack:
    """Run ISR actions from the empty stack, shifting ``tokens`` in order."""
    stack = EMPTY_STACK
    it = iter(tokens)
    for action in actions:
        token = next(it) if action.kind == SHIFT_KIND else None
        stack = isr_apply(stack, action, token)
    return stack

"""The attach-juxtapose transition system.

A parser state is a partial tree plus the number of consumed tokens. Each
action integrates exactly one new token, either by attaching it under a node
on the rightmost chain or by juxtaposing it next to such a node beneath a
freshly created parent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .tree import (
    EMPTY_TREE,
    ConstituencyTree,
    Internal,
    Leaf,
    Token,
    replace_on_rightmost_chain,
    rightmost_chain,
)

ATTACH = "attach"
JUXTAPOSE = "juxtapose"


class IllegalActionError(ValueError):
    """Raised when an action cannot be applied to a state."""

    def __init__(self, reason: str, action=None, step: Optional[int] = None):
        self.reason = reason
        self.action = action
        self.step = step
        detail = f" (action={action}" + (f", step={step})" if step is not None else ")")
        super().__init__(reason + (detail if action is not None else ""))


@dataclass(frozen=True)
class AjAction:
    kind: str
    target: int
    parent_label: Optional[str] = None
    new_label: Optional[str] = None

    def __post_init__(self):
        if self.kind not in (ATTACH, JUXTAPOSE):
            raise ValueError(f"unknown action kind: {self.kind!r}")
        if self.target < 0:
            raise ValueError("target must be >= 0")
        if self.kind == ATTACH and self.new_label is not None:
            raise ValueError("attach takes no new_label")
        if self.kind == JUXTAPOSE and self.new_label is None:
            raise ValueError("juxtapose requires a new_label")

    def __str__(self) -> str:
        if self.kind == ATTACH:
            return f"attach({self.target},{self.parent_label})"
        return f"juxtapose({self.target},{self.parent_label},{self.new_label})"


def attach(target: int, parent_label: Optional[str] = None) -> AjAction:
    return AjAction(ATTACH, target, parent_label)


def juxtapose(target: int, parent_label: Optional[str], new_label: str) -> AjAction:
    return AjAction(JUXTAPOSE, target, parent_label, new_label)


_ACTION_RE = re.compile(
    r"(attach|juxtapose)\s*\(\s*(\d+)\s*,\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)"
)


def format_actions(actions: Iterable[AjAction]) -> str:
    return " ".join(str(a) for a in actions)


def parse_actions(text: str) -> list:
    """Parse the serialized action format, e.g. ``attach(0,NP) juxtapose(0,VP,S)``.
    Whitespace-insensitive; ``None`` denotes an absent parent_label."""
    actions = []
    pos = 0
    for m in _ACTION_RE.finditer(text):
        if text[pos : m.start()].strip():
            raise ValueError(f"unparseable action text: {text[pos:m.start()]!r}")
        kind, target, parent, new = m.group(1), int(m.group(2)), m.group(3), m.group(4)
        parent_label = None if parent == "None" else parent
        if kind == ATTACH:
            if new is not None:
                raise ValueError(f"attach takes two arguments: {m.group(0)!r}")
            actions.append(attach(target, parent_label))
        else:
            if new is None:
                raise ValueError(f"juxtapose takes three arguments: {m.group(0)!r}")
            actions.append(juxtapose(target, parent_label, new))
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"unparseable action text: {text[pos:]!r}")
    return actions


@dataclass(frozen=True)
class ParserState:
    tree: ConstituencyTree
    consumed: int


INITIAL_STATE = ParserState(EMPTY_TREE, 0)


def apply_action(state: ParserState, token: Token, action: AjAction) -> ParserState:
    """Execute one action, integrating ``token`` into the partial tree."""
    leaf = Leaf(token, state.consumed)
    if state.tree.root is None:
        # Degenerate first action: parent_label becomes the new root.
        if (
            action.kind != ATTACH
            or action.target != 0
            or action.parent_label is None
        ):
            raise IllegalActionError(
                "the empty tree only admits attach(0, <label>)", action
            )
        root = Internal(action.parent_label, (leaf,))
        return ParserState(ConstituencyTree(root), state.consumed + 1)

    chain = rightmost_chain(state.tree)
    if not 0 <= action.target < len(chain):
        raise IllegalActionError(
            f"target {action.target} outside rightmost chain of length {len(chain)}",
            action,
        )
    new_child = (
        leaf
        if action.parent_label is None
        else Internal(action.parent_label, (leaf,))
    )
    target_node = chain[action.target]
    if action.kind == ATTACH:
        replacement = Internal(target_node.label, target_node.children + (new_child,))
    else:
        replacement = Internal(action.new_label, (target_node, new_child))
    root = replace_on_rightmost_chain(chain, action.target, replacement)
    return ParserState(ConstituencyTree(root), state.consumed + 1)


def legal_actions(state: ParserState, label_vocabulary) -> list:
    """Enumerate the unrestricted action space for a state.

    Empty tree: attach(0, X) for each label X. Otherwise every attach(d, p)
    and juxtapose(d, p, q) with d on the chain, p in V + {None}, q in V.
    """
    labels = sorted(label_vocabulary)
    if state.tree.root is None:
        return [attach(0, lbl) for lbl in labels]
    depth = len(rightmost_chain(state.tree))
    parents = [None] + labels
    actions = [attach(d, p) for d in range(depth) for p in parents]
    actions += [
        juxtapose(d, p, q) for d in range(depth) for p in parents for q in labels
    ]
    return actions


def apply_sequence(tokens, actions) -> ConstituencyTree:
    """Fold ``apply_action`` over a full action sequence from the empty tree."""
    if len(tokens) != len(actions):
        raise ValueError(
            f"{len(tokens)} tokens but {len(actions)} actions; lengths must match"
        )
    state = INITIAL_STATE
    for i, (token, action) in enumerate(zip(tokens, actions)):
        try:
            state = apply_action(state, token, action)
        except IllegalActionError as err:
            raise IllegalActionError(err.reason, action, step=i) from err
    return state.tree

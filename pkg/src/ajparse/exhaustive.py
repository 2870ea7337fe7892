"""Exhaustive small-scale verification machinery.

Enumerates every tree, action sequence, and legal ISR stack within small
bounds, checking oracle existence and uniqueness, the stack/tree bijection
and its reduce-step property, and action-translation soundness by brute
force. Bounds are hard-capped because the searches grow exponentially.
"""

from __future__ import annotations

import gc
from collections import Counter, deque
from dataclasses import dataclass, field

from .isr import (
    EMPTY_STACK,
    REDUCE,
    AugmentedTree,
    IllegalStackError,
    IsrStack,
    Projected,
    gamma,
    is_legal_stack,
    isr_apply,
    phi,
    project,
    xi,
    SHIFT,
)
from .oracle import oracle_action_sequence
from .transition import INITIAL_STATE, apply_action, legal_actions
from .tree import ConstituencyTree, Internal, Leaf, Token, node_equal

MAX_LEAVES = 6
MAX_VOCAB = 3


def _token(i: int) -> Token:
    return Token(f"w{i}", "T")


def enumerate_subtrees(n_leaves: int, start: int, labels, unary_budget: int = 0):
    """All subtree shapes over ``n_leaves`` leaves starting at index ``start``.

    With ``unary_budget`` 0 the yield is unary-chain-free; a positive budget
    additionally allows that many internal-over-internal unary links.
    """
    if n_leaves == 1:
        leaf = Leaf(_token(start), start)
        yield leaf
        for lbl in labels:
            yield Internal(lbl, (leaf,))
        if unary_budget > 0:
            for child in enumerate_subtrees(1, start, labels, unary_budget - 1):
                if isinstance(child, Internal):
                    for lbl in labels:
                        yield Internal(lbl, (child,))
        return
    for first in range(1, n_leaves):
        for left in enumerate_subtrees(first, start, labels, unary_budget):
            rest = n_leaves - first
            # Right part: either a single subtree completing a 2-child node,
            # or recursively another multi-child grouping; enumerate child
            # tuples directly instead.
            for tail in _child_tuples(rest, start + first, labels, unary_budget):
                for lbl in labels:
                    yield Internal(lbl, (left,) + tail)
    if unary_budget > 0:
        for child in enumerate_subtrees(n_leaves, start, labels, unary_budget - 1):
            if isinstance(child, Internal):
                for lbl in labels:
                    yield Internal(lbl, (child,))


def _child_tuples(n_leaves: int, start: int, labels, unary_budget: int):
    """Non-empty tuples of subtrees jointly spanning ``n_leaves`` leaves."""
    for first in range(1, n_leaves + 1):
        for head in enumerate_subtrees(first, start, labels, unary_budget):
            if first == n_leaves:
                yield (head,)
            else:
                for tail in _child_tuples(
                    n_leaves - first, start + first, labels, unary_budget
                ):
                    yield (head,) + tail


def enumerate_trees(n_leaves: int, labels, unary_budget: int = 0):
    """All distinct trees (internal root) with exactly ``n_leaves`` leaves."""
    for node in enumerate_subtrees(n_leaves, 0, labels, unary_budget):
        if isinstance(node, Internal):
            yield ConstituencyTree(node)


@dataclass
class CheckReport:
    trees_checked: int = 0
    sequences_enumerated: int = 0
    case_tally: Counter = field(default_factory=Counter)
    stacks_checked: int = 0
    augmented_checked: int = 0
    reduce_lemma_checked: int = 0
    translations_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _enumerate_final_trees(n_max: int, labels):
    """Forward-enumerate every legal action sequence of length <= n_max and
    count the resulting trees, keyed by (length, root node)."""
    results = Counter()
    sequences = 0
    # Depth-first over states; every prefix is itself a complete sequence.
    frontier = deque([INITIAL_STATE])
    while frontier:
        state = frontier.pop()
        if state.consumed >= n_max:
            continue
        token = _token(state.consumed)
        for action in legal_actions(state, labels):
            succ = apply_action(state, token, action)
            sequences += 1
            results[succ.tree] += 1
            frontier.append(succ)
    return results, sequences


def check_oracle_uniqueness(n_max: int, labels, report: CheckReport) -> None:
    """Theorem-style exhaustive check: every unary-chain-free tree is built
    by exactly one action sequence, and the oracle finds it."""
    results, sequences = _enumerate_final_trees(n_max, labels)
    report.sequences_enumerated += sequences
    for n in range(1, n_max + 1):
        for tree in enumerate_trees(n, labels):
            report.trees_checked += 1
            count = results.get(tree, 0)
            if count != 1:
                report.failures.append(
                    f"tree {tree!r} built by {count} action sequences (expected 1)"
                )
                continue
            actions = oracle_action_sequence(tree, case_tally=report.case_tally)
            rebuilt = INITIAL_STATE
            for i, action in enumerate(actions):
                rebuilt = apply_action(rebuilt, _token(i), action)
            if not node_equal(rebuilt.tree.root, tree.root):
                report.failures.append(f"oracle failed to rebuild {tree!r}")


def enumerate_augmented(n_max: int, labels, unary_budget: int = 1):
    """Augmented partial trees with <= n_max leaves, including the empty
    tree, bare-leaf roots, and a bounded amount of unary chaining."""
    yield AugmentedTree(None, -1)
    yield AugmentedTree(Leaf(_token(0), 0), -1)
    for n in range(1, n_max + 1):
        for tree in enumerate_trees(n, labels, unary_budget):
            depth = 0
            node = tree.root
            while isinstance(node, Internal):
                depth += 1
                node = node.children[-1]
            for mark in range(-1, depth):
                yield AugmentedTree(tree.root, mark)


def check_bijection(n_max: int, labels, report: CheckReport) -> None:
    """phi/gamma inverse identities plus the one-reduce-steps-the-mark lemma."""
    prev_root, prev_mark, prev_stack = None, None, None
    for aug in enumerate_augmented(n_max, labels):
        report.augmented_checked += 1
        stack = gamma(aug)
        if not is_legal_stack(stack):
            report.failures.append(f"gamma({aug!r}) is not a legal stack")
            continue
        back = phi(stack)
        if back != aug:
            report.failures.append(f"phi(gamma({aug!r})) = {back!r}")
        if aug.mark >= 0:
            reduced = isr_apply(stack, REDUCE)
            # Marks are enumerated in order per tree, so gamma at mark - 1
            # is usually the previous iteration's stack.
            if prev_root is aug.root and prev_mark == aug.mark - 1:
                expected = prev_stack
            else:
                expected = gamma(AugmentedTree(aug.root, aug.mark - 1))
            if reduced.elements != expected.elements:
                report.failures.append(
                    f"reduce on gamma({aug!r}) does not step the mark"
                )
            else:
                report.reduce_lemma_checked += 1
        prev_root, prev_mark, prev_stack = aug.root, aug.mark, stack

    for stack in enumerate_legal_stacks(n_max, labels):
        report.stacks_checked += 1
        round_trip = gamma(phi(stack))
        if round_trip.elements != stack.elements:
            report.failures.append(f"gamma(phi(s)) != s for stack {stack!r}")


def enumerate_legal_stacks(max_tokens: int, labels, max_internal: int = None):
    """Breadth-first search over legal ISR states reachable with at most
    ``max_tokens`` shifts, capping internal-node growth so the space stays
    finite (projections can otherwise nest without bound)."""
    if max_internal is None:
        max_internal = max_tokens + 2
    cap = max_internal + max_tokens
    seen = {EMPTY_STACK.elements}
    # Weight (total node count plus projections) is tracked incrementally:
    # shift and project add one, reduce folds a projection into one node.
    queue = deque([(EMPTY_STACK, 0)])
    yield EMPTY_STACK
    projections = [project(lbl) for lbl in labels]
    while queue:
        stack, weight = queue.popleft()
        moves = []
        if stack.buffer_consumed < max_tokens:
            moves.append((SHIFT, _token(stack.buffer_consumed), weight + 1))
        for pj in projections:
            moves.append((pj, None, weight + 1))
        moves.append((REDUCE, None, weight))
        for action, token, succ_weight in moves:
            if succ_weight > cap:
                continue
            try:
                succ = isr_apply(stack, action, token)
            except IllegalStackError:
                continue
            if not is_legal_stack(succ):
                continue
            if succ.elements in seen:
                continue
            seen.add(succ.elements)
            queue.append((succ, succ_weight))
            yield succ


def check_translation(n_max: int, labels, report: CheckReport) -> None:
    """Per-step translation soundness over every enumerated oracle step."""
    from .isr import translate_action

    for n in range(1, n_max + 1):
        for tree in enumerate_trees(n, labels):
            state = INITIAL_STATE
            stack = EMPTY_STACK
            for i, action in enumerate(oracle_action_sequence(tree)):
                token = _token(i)
                for isr_action in translate_action(state.tree, action):
                    tok = token if isr_action == SHIFT else None
                    stack = isr_apply(stack, isr_action, tok)
                    if not is_legal_stack(stack):
                        report.failures.append(
                            f"illegal intermediate stack for {tree!r} step {i}"
                        )
                state = apply_action(state, token, action)
                expected = gamma(xi(state.tree))
                if stack.elements != expected.elements:
                    report.failures.append(
                        f"translated replay diverged for {tree!r} at step {i}"
                    )
                    break
                report.translations_checked += 1


def run_all_checks(n_max: int, vocab_size: int) -> CheckReport:
    if n_max > MAX_LEAVES:
        raise ValueError(f"n_max must be <= {MAX_LEAVES}")
    if vocab_size > MAX_VOCAB:
        raise ValueError(f"vocab_size must be <= {MAX_VOCAB}")
    labels = [chr(ord("A") + i) for i in range(vocab_size)]
    report = CheckReport()
    # The searches allocate heavily and build no reference cycles; pausing
    # the cycle collector shaves a noticeable fraction off the wall time.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        check_oracle_uniqueness(n_max, labels, report)
        check_bijection(n_max, labels, report)
        check_translation(n_max, labels, report)
    finally:
        if was_enabled:
            gc.enable()
    return report

import pytest

from ajparse.isr import (
    EMPTY_STACK,
    REDUCE,
    SHIFT,
    AugmentedTree,
    IllegalStackError,
    IsrStack,
    Projected,
    _reduce_fully,
    format_isr_actions,
    gamma,
    is_legal_stack,
    isr_apply,
    parse_isr_actions,
    phi,
    project,
    replay,
    translate_action,
    translate_sequence,
    xi,
)
from ajparse.oracle import oracle_action_sequence
from ajparse.transition import INITIAL_STATE, apply_action, attach, juxtapose
from ajparse.tree import (
    ConstituencyTree,
    EMPTY_TREE,
    Internal,
    Leaf,
    Token,
    node_equal,
)
from ajparse.treebank import parse_bracketed, tokens_of
from ajparse.synth import generate_corpus


def tok(word, pos="T"):
    return Token(word, pos)


def leaf(word, index, pos="T"):
    return Leaf(Token(word, pos), index)


def test_isr_action_validation():
    with pytest.raises(ValueError):
        project("")
    with pytest.raises(ValueError):
        parse_isr_actions("shift pop")


def test_isr_action_format_roundtrip():
    acts = [SHIFT, project("NP"), REDUCE]
    text = format_isr_actions(acts)
    assert text == "shift pj:NP reduce"
    assert parse_isr_actions(text) == acts


def test_shift_pushes_indexed_leaf():
    s = isr_apply(EMPTY_STACK, SHIFT, tok("a"))
    assert s.buffer_consumed == 1
    assert s.elements[0].index == 0
    with pytest.raises(IllegalStackError):
        isr_apply(EMPTY_STACK, SHIFT)  # no token supplied


def test_project_inserts_beneath_top():
    s = isr_apply(EMPTY_STACK, SHIFT, tok("a"))
    s = isr_apply(s, project("NP"))
    assert s.elements[0] == Projected("NP")
    assert s.elements[1].token.word == "a"
    with pytest.raises(IllegalStackError):
        isr_apply(EMPTY_STACK, project("NP"))


def test_reduce_builds_constituent():
    s = isr_apply(EMPTY_STACK, SHIFT, tok("a"))
    s = isr_apply(s, project("NP"))
    s = isr_apply(s, REDUCE)
    assert len(s.elements) == 1
    node = s.elements[0]
    assert node.label == "NP" and node.children[0].token.word == "a"
    with pytest.raises(IllegalStackError):
        isr_apply(s, REDUCE)  # no projection left


def test_reduce_requires_item_above_projection():
    s = isr_apply(EMPTY_STACK, SHIFT, tok("a"))
    s = isr_apply(s, project("NP"))
    bad = IsrStack((s.elements[0],), 0)  # lone projection
    with pytest.raises(IllegalStackError):
        isr_apply(bad, REDUCE)


def stacks_for_legality():
    P = Projected
    t = leaf("a", 0)
    return [
        IsrStack(()),
        IsrStack((t,), 1),
        IsrStack((P("S"), t), 1),
        IsrStack((P("S"), t, P("VP"), t), 2),
        IsrStack((P("S"), P("NP"), t), 1),  # consecutive projections
        IsrStack((t, t), 2),
        IsrStack((t, P("S"), t), 2),
        IsrStack((P("S"), t, P("VP")), 1),
        IsrStack((P("S"),), 0),
    ]


def test_legality_closed_form_matches_reduce_simulation():
    for s in stacks_for_legality():
        final = _reduce_fully(s.elements)
        simulated = final is not None and len(final) <= 1
        assert is_legal_stack(s) == simulated, s


def test_consecutive_projections_are_legal():
    s = IsrStack((Projected("S"), Projected("NP"), leaf("a", 0)), 1)
    assert is_legal_stack(s)
    aug = phi(s)
    assert aug.mark == 1
    assert aug.root.label == "S" and aug.root.children[0].label == "NP"


def test_phi_rejects_illegal_stacks():
    with pytest.raises(IllegalStackError):
        phi(IsrStack((leaf("a", 0), leaf("b", 1)), 2))


def test_phi_of_empty_and_single_leaf():
    assert phi(EMPTY_STACK) == AugmentedTree(None, -1)
    s = isr_apply(EMPTY_STACK, SHIFT, tok("a"))
    aug = phi(s)
    assert isinstance(aug.root, Leaf) and aug.mark == -1


def test_augmented_tree_mark_bounds():
    root = Internal("S", (leaf("a", 0),))
    AugmentedTree(root, -1)
    AugmentedTree(root, 0)
    with pytest.raises(ValueError):
        AugmentedTree(root, 1)  # chain length is 1
    with pytest.raises(ValueError):
        AugmentedTree(None, 0)


def test_gamma_worked_example():
    # Fully marked chain of (S (NP a) (VP b ...)): S and VP sit below their
    # first completed constituents as projections.
    t = parse_bracketed("(S (NP (T a)) (VP (T b)))")
    stack = gamma(AugmentedTree(t.root, 1))
    names = [
        e.token.word if isinstance(e, Leaf) else e.label for e in stack.elements
    ]
    assert names == ["S", "NP", "VP", "b"]
    assert isinstance(stack.elements[0], Projected)
    assert isinstance(stack.elements[2], Projected)
    # The NP child is pushed whole, not opened.
    assert isinstance(stack.elements[1], Internal)


def test_gamma_phi_inverse_on_example():
    t = parse_bracketed("(S (NP (T a)) (VP (T b) (NP (T c))))")
    for mark in range(-1, 3):
        aug = AugmentedTree(t.root, mark)
        stack = gamma(aug)
        assert is_legal_stack(stack)
        assert phi(stack) == aug


def test_xi_marks_whole_chain():
    t = parse_bracketed("(S (NP (T a)) (VP (T b)))")
    aug = xi(t)
    assert aug.mark == 1  # chain [S, VP]
    assert xi(EMPTY_TREE) == AugmentedTree(None, -1)


def test_translate_degenerate_first_attach():
    acts = translate_action(EMPTY_TREE, attach(0, "S"))
    assert acts == [SHIFT, project("S")]
    with pytest.raises(ValueError):
        translate_action(EMPTY_TREE, attach(0, None))


def test_translate_attach_counts_reduces():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    # chain length 1: attach(0, None) -> zero reduces, shift only
    assert translate_action(state.tree, attach(0, None)) == [SHIFT]
    assert translate_action(state.tree, attach(0, "NP")) == [SHIFT, project("NP")]


def test_translate_juxtapose_counts_reduces():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    assert translate_action(state.tree, juxtapose(0, None, "X")) == [
        REDUCE,
        project("X"),
        SHIFT,
    ]


def test_translate_rejects_bad_target():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    with pytest.raises(ValueError):
        translate_action(state.tree, attach(3, None))


def test_golden_juxtapose_translation(fig_tree):
    actions = oracle_action_sequence(fig_tree)
    tokens = tokens_of(fig_tree)
    state = INITIAL_STATE
    for token, action in zip(tokens, actions):
        if action == juxtapose(2, "PP", "NP"):
            assert translate_action(state.tree, action) == [
                REDUCE,
                project("NP"),
                SHIFT,
                project("PP"),
            ]
            break
        state = apply_action(state, token, action)
    else:
        pytest.fail("golden juxtapose step not found")


def test_single_leaf_translation():
    t = parse_bracketed("(X (T a))")
    acts = translate_sequence(tokens_of(t), oracle_action_sequence(t))
    assert acts == [SHIFT, project("X"), REDUCE]


def test_full_translation_replays_to_gold(fig_tree):
    tokens = tokens_of(fig_tree)
    acts = translate_sequence(tokens, oracle_action_sequence(fig_tree))
    assert len(acts) == 6 + 2 * 7  # n + 2m
    stack = replay(acts, tokens)
    assert len(stack.elements) == 1
    assert node_equal(stack.elements[0], fig_tree.root)


def test_length_law_on_corpus():
    for t in generate_corpus(100, seed=2):
        tokens = tokens_of(t)
        acts = translate_sequence(tokens, oracle_action_sequence(t))
        m = _count_internal(t.root)
        assert len(acts) == t.length + 2 * m
        stack = replay(acts, tokens)
        assert len(stack.elements) == 1
        assert node_equal(stack.elements[0], t.root)


def _count_internal(node):
    if isinstance(node, Leaf):
        return 0
    return 1 + sum(_count_internal(c) for c in node.children)


def test_per_step_translation_lands_on_gamma_xi(fig_tree):
    from ajparse.isr import EMPTY_STACK

    tokens = tokens_of(fig_tree)
    state = INITIAL_STATE
    stack = EMPTY_STACK
    for token, action in zip(tokens, oracle_action_sequence(fig_tree)):
        for a in translate_action(state.tree, action):
            stack = isr_apply(stack, a, token if a == SHIFT else None)
            assert is_legal_stack(stack)
        state = apply_action(state, token, action)
        assert stack.elements == gamma(xi(state.tree)).elements

import pytest

from ajparse.transition import (
    INITIAL_STATE,
    AjAction,
    IllegalActionError,
    apply_action,
    apply_sequence,
    attach,
    format_actions,
    juxtapose,
    legal_actions,
    parse_actions,
)
from ajparse.tree import Internal, Token, rightmost_chain


def tok(word, pos="T"):
    return Token(word, pos)


def test_action_validation():
    with pytest.raises(ValueError):
        AjAction("merge", 0)
    with pytest.raises(ValueError):
        attach(-1, "S")
    with pytest.raises(ValueError):
        AjAction("attach", 0, "S", "X")  # attach takes no new_label
    with pytest.raises(ValueError):
        AjAction("juxtapose", 0, "S", None)  # juxtapose requires one


def test_action_str_roundtrip():
    acts = [attach(0, "NP"), juxtapose(0, "VP", "S"), attach(4, None)]
    text = format_actions(acts)
    assert text == "attach(0,NP) juxtapose(0,VP,S) attach(4,None)"
    assert parse_actions(text) == acts


def test_parse_actions_rejects_garbage():
    with pytest.raises(ValueError):
        parse_actions("attach(0,NP) nonsense")
    with pytest.raises(ValueError):
        parse_actions("juxtapose(0,NP)")
    with pytest.raises(ValueError):
        parse_actions("attach(0,NP,S)")


def test_first_action_creates_root():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    assert state.tree.root.label == "S"
    assert state.tree.length == 1
    assert state.consumed == 1


def test_empty_tree_rejects_other_actions():
    with pytest.raises(IllegalActionError):
        apply_action(INITIAL_STATE, tok("a"), attach(0, None))
    with pytest.raises(IllegalActionError):
        apply_action(INITIAL_STATE, tok("a"), juxtapose(0, "NP", "S"))
    with pytest.raises(IllegalActionError):
        apply_action(INITIAL_STATE, tok("a"), attach(1, "S"))


def test_attach_appends_rightmost_child():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    state = apply_action(state, tok("b"), attach(0, None))
    root = state.tree.root
    assert [l.token.word for l in root.children] == ["a", "b"]

    state = apply_action(state, tok("c"), attach(0, "NP"))
    wrapped = state.tree.root.children[-1]
    assert isinstance(wrapped, Internal) and wrapped.label == "NP"
    assert wrapped.children[0].token.word == "c"


def test_juxtapose_replaces_target_with_new_node():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "NP"))
    state = apply_action(state, tok("b"), juxtapose(0, "VP", "S"))
    root = state.tree.root
    assert root.label == "S"
    assert root.children[0].label == "NP"
    assert root.children[1].label == "VP"
    assert root.children[1].children[0].token.word == "b"


def test_juxtapose_without_parent_label_places_bare_leaf():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "NP"))
    state = apply_action(state, tok("b"), juxtapose(0, None, "S"))
    root = state.tree.root
    assert root.label == "S"
    assert root.children[1].token.word == "b"


def test_target_bounds_checked():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    with pytest.raises(IllegalActionError):
        apply_action(state, tok("b"), attach(1, None))
    err = None
    try:
        apply_action(state, tok("b"), attach(5, None))
    except IllegalActionError as e:
        err = e
    assert err is not None and err.action == attach(5, None)


def test_leaf_indices_follow_consumption_order():
    state = INITIAL_STATE
    for i, a in enumerate([attach(0, "S"), attach(0, None), attach(0, "NP")]):
        state = apply_action(state, tok(f"w{i}"), a)
    leaves = []

    def walk(n):
        if hasattr(n, "children"):
            for c in n.children:
                walk(c)
        else:
            leaves.append(n.index)

    walk(state.tree.root)
    assert leaves == [0, 1, 2]


def test_legal_actions_empty_tree():
    acts = legal_actions(INITIAL_STATE, {"NP", "S"})
    assert acts == [attach(0, "NP"), attach(0, "S")]


def test_legal_actions_counts():
    state = apply_action(INITIAL_STATE, tok("a"), attach(0, "S"))
    state = apply_action(state, tok("b"), attach(0, "NP"))
    depth = len(rightmost_chain(state.tree))
    acts = legal_actions(state, {"A", "B"})
    # depth * (|V|+1) attaches + depth * (|V|+1) * |V| juxtaposes
    assert len(acts) == depth * 3 + depth * 3 * 2
    assert len(set(acts)) == len(acts)
    for a in acts:
        apply_action(state, tok("c"), a)  # all must be applicable


def test_apply_sequence_length_mismatch():
    with pytest.raises(ValueError):
        apply_sequence([tok("a")], [])


def test_apply_sequence_reports_step():
    with pytest.raises(IllegalActionError) as exc:
        apply_sequence([tok("a"), tok("b")], [attach(0, "S"), attach(7, None)])
    assert exc.value.step == 1

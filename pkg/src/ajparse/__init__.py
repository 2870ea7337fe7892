"""Strongly incremental constituency parsing toolkit.

Implements a transition system that builds a tree with exactly one action per
token (attach / juxtapose), its oracle, an equivalent in-order shift-reduce
view with an explicit bijection between the two state spaces, treebank I/O,
PARSEVAL scoring, and a linear-model action predictor with beam decoding.
"""

from .tree import (
    ConstituencyTree,
    EMPTY_TREE,
    Internal,
    Leaf,
    LabelFormatError,
    Token,
    collapse_unary_chains,
    has_unary_chains,
    restore_unary_chains,
    rightmost_chain,
    tree_equal,
)
from .transition import (
    ATTACH,
    JUXTAPOSE,
    AjAction,
    IllegalActionError,
    INITIAL_STATE,
    ParserState,
    apply_action,
    apply_sequence,
    attach,
    format_actions,
    juxtapose,
    legal_actions,
    parse_actions,
)
from .oracle import OracleStep, last_action, oracle_action_sequence
from .isr import (
    AugmentedTree,
    EMPTY_STACK,
    IllegalStackError,
    IsrAction,
    IsrStack,
    Projected,
    REDUCE,
    SHIFT,
    gamma,
    is_legal_stack,
    isr_apply,
    phi,
    project,
    translate_action,
    translate_sequence,
    xi,
)
from .treebank import (
    CorpusEntry,
    DegenerateSentenceError,
    TreebankFormatError,
    load_corpus,
    normalize,
    parse_bracketed,
    tokens_of,
    write_bracketed,
    write_corpus,
)
from .scoring import ScoreReport, extract_brackets, format_report, score
from .predictor import (
    ActionScorer,
    ModelFormatError,
    decode_beam,
    decode_greedy,
    decode_right_branching,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "ATTACH",
    "ActionScorer",
    "AjAction",
    "AugmentedTree",
    "ConstituencyTree",
    "CorpusEntry",
    "DegenerateSentenceError",
    "EMPTY_STACK",
    "EMPTY_TREE",
    "INITIAL_STATE",
    "IllegalActionError",
    "IllegalStackError",
    "Internal",
    "IsrAction",
    "IsrStack",
    "JUXTAPOSE",
    "LabelFormatError",
    "Leaf",
    "ModelFormatError",
    "OracleStep",
    "ParserState",
    "Projected",
    "REDUCE",
    "SHIFT",
    "ScoreReport",
    "Token",
    "TreebankFormatError",
    "apply_action",
    "apply_sequence",
    "attach",
    "collapse_unary_chains",
    "decode_beam",
    "decode_greedy",
    "decode_right_branching",
    "extract_brackets",
    "format_actions",
    "format_report",
    "gamma",
    "has_unary_chains",
    "is_legal_stack",
    "isr_apply",
    "juxtapose",
    "last_action",
    "legal_actions",
    "load_corpus",
    "normalize",
    "oracle_action_sequence",
    "parse_actions",
    "parse_bracketed",
    "phi",
    "project",
    "restore_unary_chains",
    "rightmost_chain",
    "score",
    "tokens_of",
    "train",
    "translate_action",
    "translate_sequence",
    "tree_equal",
    "write_bracketed",
    "write_corpus",
    "xi",
]

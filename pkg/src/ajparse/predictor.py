"""Linear baseline action predictor.

A factored averaged perceptron scores (target depth, parent_label,
new_label) independently over sparse features of the parser state and a
small token window; new_label = None decodes as attach, anything else as
juxtapose. Trained with teacher forcing on oracle actions; decoding is
greedy or beam search with legality masking.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .oracle import oracle_action_sequence
from .transition import (
    ATTACH,
    INITIAL_STATE,
    AjAction,
    ParserState,
    apply_action,
    attach,
    juxtapose,
)
from .tree import ConstituencyTree, Internal, Token, rightmost_chain
from .treebank import tokens_of

MODEL_MAGIC = "ajparse-model"
MODEL_VERSION = 1

_NONE_KEY = "<none>"


class ModelFormatError(ValueError):
    pass


def _node_tag(node) -> str:
    return node.label if isinstance(node, Internal) else (node.token.pos or node.token.word)


def featurize(state: ParserState, token: Token, context=(), prev_kind: str = "none"):
    """Sparse state features shared by the label factors.

    ``context`` holds up to the two preceding tokens, oldest first. Output
    is deterministic and bounded by the template count.
    """
    w = token.word
    p = token.pos or "~"
    chain = rightmost_chain(state.tree)
    depth = len(chain)
    feats = [
        f"w={w}",
        f"p={p}",
        f"w|p={w}|{p}",
        f"len={min(depth, 6)}",
        f"prev={prev_kind}",
    ]
    if not chain:
        feats.append("chain=empty")
    else:
        bottom = chain[-1]
        feats += [
            f"c0={bottom.label}",
            f"c0|w={bottom.label}|{w}",
            f"c0|p={bottom.label}|{p}",
            f"c0.first={_node_tag(bottom.children[0])}",
            f"c0.last={_node_tag(bottom.children[-1])}",
            f"cr={chain[0].label}",
            f"c0.last|p={_node_tag(bottom.children[-1])}|{p}",
        ]
        if depth >= 2:
            feats += [f"c1={chain[-2].label}", f"c1|p={chain[-2].label}|{p}"]
        if depth >= 3:
            feats.append(f"c2={chain[-3].label}")
    for back, tok in enumerate(reversed(context), start=1):
        feats += [f"w-{back}={tok.word}", f"p-{back}={tok.pos or '~'}"]
    return tuple(feats)


def _target_features(chain, depth: int, token: Token):
    node = chain[depth]
    dist = min(len(chain) - 1 - depth, 4)
    d = min(depth, 4)
    lab = node.label
    p = token.pos or "~"
    return (
        f"t.lab={lab}",
        f"t.dist={dist}",
        f"t.d={d}",
        f"t.lab|p={lab}|{p}",
        f"t.lab|w={lab}|{token.word}",
        f"t.dist|p={dist}|{p}",
        f"t.last={_node_tag(node.children[-1])}",
        f"t.lab|dist={lab}|{dist}",
    )


class _AveragedWeights:
    """Perceptron weights with lazily-updated running averages."""

    def __init__(self):
        self.w = {}
        self._totals = {}
        self._stamps = {}
        self.steps = 0

    def score(self, keys) -> float:
        w = self.w
        return sum(w.get(k, 0.0) for k in keys)

    def tick(self):
        self.steps += 1

    def update(self, keys, delta: float):
        for k in keys:
            self._totals[k] = self._totals.get(k, 0.0) + (
                self.steps - self._stamps.get(k, 0)
            ) * self.w.get(k, 0.0)
            self._stamps[k] = self.steps
            self.w[k] = self.w.get(k, 0.0) + delta

    def averaged(self) -> dict:
        if self.steps == 0:
            return {}
        out = {}
        for k, v in self.w.items():
            total = self._totals.get(k, 0.0) + (
                self.steps - self._stamps.get(k, 0)
            ) * v
            avg = total / self.steps
            if avg != 0.0:
                out[k] = avg
        return out


@dataclass
class ActionScorer:
    """Averaged weights for the three action factors plus the label vocabulary."""

    labels: list
    target_weights: dict
    parent_weights: dict  # keyed (feature, label or _NONE_KEY)
    new_weights: dict
    epoch_accuracy: list = field(default_factory=list)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{MODEL_MAGIC}\t{MODEL_VERSION}\n")
            fh.write("labels\t" + "\t".join(self.labels) + "\n")
            for name, table in (
                ("target", self.target_weights),
                ("parent", self.parent_weights),
                ("new", self.new_weights),
            ):
                fh.write(f"[{name}]\n")
                if name == "target":
                    for k in sorted(table):
                        fh.write(f"{k}\t{table[k]!r}\n")
                else:
                    for feat, lbl in sorted(table):
                        fh.write(f"{feat}\t{lbl}\t{table[(feat, lbl)]!r}\n")
            fh.write("[end]\n")

    @classmethod
    def load(cls, path: str) -> "ActionScorer":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if len(header) != 2 or header[0] != MODEL_MAGIC:
                raise ModelFormatError(f"{path}: not a model file")
            if int(header[1]) != MODEL_VERSION:
                raise ModelFormatError(
                    f"{path}: unsupported model version {header[1]}"
                )
            label_line = fh.readline().rstrip("\n").split("\t")
            if label_line[0] != "labels":
                raise ModelFormatError(f"{path}: missing label vocabulary")
            labels = label_line[1:]
            tables = {"target": {}, "parent": {}, "new": {}}
            current = None
            for line in fh:
                line = line.rstrip("\n")
                if line.startswith("["):
                    section = line.strip("[]")
                    if section == "end":
                        break
                    if section not in tables:
                        raise ModelFormatError(f"{path}: unknown section {line}")
                    current = section
                    continue
                if current is None:
                    raise ModelFormatError(f"{path}: weight line outside a section")
                parts = line.split("\t")
                if current == "target":
                    tables[current][parts[0]] = float(parts[1])
                else:
                    tables[current][(parts[0], parts[1])] = float(parts[2])
        return cls(labels, tables["target"], tables["parent"], tables["new"])


def _label_keys(feats, label: Optional[str]):
    key = label if label is not None else _NONE_KEY
    return [(f, key) for f in feats]


def _tree_of(item) -> ConstituencyTree:
    # Corpora are interchangeably lists of trees or of corpus entries.
    return item if isinstance(item, ConstituencyTree) else item.tree


def collect_labels(corpus) -> list:
    seen = set()
    for item in corpus:
        def walk(node):
            if isinstance(node, Internal):
                seen.add(node.label)
                for c in node.children:
                    walk(c)
        walk(_tree_of(item).root)
    return sorted(seen)


def _teacher_steps(tree: ConstituencyTree):
    """(state, token, context, prev_kind, action) tuples for one gold tree."""
    tokens = tokens_of(tree)
    actions = oracle_action_sequence(tree)
    steps = []
    state = INITIAL_STATE
    prev_kind = "none"
    for i, (token, action) in enumerate(zip(tokens, actions)):
        context = tuple(tokens[max(0, i - 2) : i])
        steps.append((state, token, context, prev_kind, action))
        state = apply_action(state, token, action)
        prev_kind = action.kind
    return steps


def train(corpus, epochs: int, seed: int) -> ActionScorer:
    """Teacher-forced averaged-perceptron training.

    Deterministic given the seed (per-epoch shuffling order is derived from
    it); per-epoch per-factor accuracies are stored on the returned scorer.
    """
    if not corpus:
        raise ValueError("cannot train on an empty corpus")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    labels = collect_labels(corpus)
    target_w = _AveragedWeights()
    parent_w = _AveragedWeights()
    new_w = _AveragedWeights()
    parent_choices = [None] + labels
    new_choices = [None] + labels

    examples = [_teacher_steps(_tree_of(item)) for item in corpus]
    rng = random.Random(seed)
    order = list(range(len(examples)))
    history = []
    for _ in range(epochs):
        rng.shuffle(order)
        hits = Counter()
        totals = Counter()
        for idx in order:
            for state, token, context, prev_kind, action in examples[idx]:
                feats = featurize(state, token, context, prev_kind)
                chain = rightmost_chain(state.tree)
                target_w.tick()
                parent_w.tick()
                new_w.tick()

                if len(chain) > 1:
                    scored = [
                        (target_w.score(_target_features(chain, d, token)), -d)
                        for d in range(len(chain))
                    ]
                    pred_d = -max(scored)[1]
                    totals["target"] += 1
                    if pred_d == action.target:
                        hits["target"] += 1
                    else:
                        target_w.update(
                            _target_features(chain, action.target, token), 1.0
                        )
                        target_w.update(_target_features(chain, pred_d, token), -1.0)

                pred_p = _best_label(parent_w, feats, parent_choices)
                totals["parent"] += 1
                if pred_p == action.parent_label:
                    hits["parent"] += 1
                else:
                    parent_w.update(_label_keys(feats, action.parent_label), 1.0)
                    parent_w.update(_label_keys(feats, pred_p), -1.0)

                gold_new = action.new_label
                pred_n = _best_label(new_w, feats, new_choices)
                totals["new"] += 1
                if pred_n == gold_new:
                    hits["new"] += 1
                else:
                    new_w.update(_label_keys(feats, gold_new), 1.0)
                    new_w.update(_label_keys(feats, pred_n), -1.0)
        history.append(
            {
                factor: (hits[factor] / totals[factor] if totals[factor] else 1.0)
                for factor in ("target", "parent", "new")
            }
        )
    scorer = ActionScorer(
        labels, target_w.averaged(), parent_w.averaged(), new_w.averaged()
    )
    scorer.epoch_accuracy = history
    return scorer


def _best_label(weights: _AveragedWeights, feats, choices):
    best = None
    best_score = None
    for choice in choices:
        s = weights.score(_label_keys(feats, choice))
        if best_score is None or s > best_score:
            best, best_score = choice, s
    return best  # ties resolve to the earliest choice (None, then sorted labels)


def _label_sort_key(label: Optional[str]):
    return (0, "") if label is None else (1, label)


def _action_sort_key(action: AjAction):
    return (
        0 if action.kind == ATTACH else 1,
        action.target,
        _label_sort_key(action.parent_label),
        _label_sort_key(action.new_label),
    )


def _step_candidates(scorer: ActionScorer, state: ParserState, token: Token, context, prev_kind):
    """Every legal action with its summed factor score."""
    feats = featurize(state, token, context, prev_kind)
    parent_scores = {
        lbl: sum(scorer.parent_weights.get((f, lbl if lbl is not None else _NONE_KEY), 0.0) for f in feats)
        for lbl in [None] + scorer.labels
    }
    new_scores = {
        lbl: sum(scorer.new_weights.get((f, lbl if lbl is not None else _NONE_KEY), 0.0) for f in feats)
        for lbl in [None] + scorer.labels
    }
    if state.tree.root is None:
        # Degenerate first step: attach(0, X) only.
        return [
            (parent_scores[lbl] + new_scores[None], attach(0, lbl))
            for lbl in scorer.labels
        ]
    chain = rightmost_chain(state.tree)
    target_scores = [
        sum(scorer.target_weights.get(f, 0.0) for f in _target_features(chain, d, token))
        for d in range(len(chain))
    ]
    out = []
    for d, ts in enumerate(target_scores):
        for p, ps in parent_scores.items():
            base = ts + ps
            out.append((base + new_scores[None], attach(d, p)))
            for q in scorer.labels:
                out.append((base + new_scores[q], juxtapose(d, p, q)))
    return out


def _log_softmax(scores):
    """Per-step normalization so path scores are comparable across beams.

    Monotone within one step, so the argmax (and hence beam = 1 decoding)
    is unchanged; without it, raw perceptron margins accumulate
    incomparably across alternative prefixes and wide beams degrade.
    """
    m = max(scores)
    lse = m + math.log(sum(math.exp(s - m) for s in scores))
    return [s - lse for s in scores]


def decode_beam(scorer: ActionScorer, tokens, beam: int) -> ConstituencyTree:
    """Beam search over summed, per-step-normalized factor scores;
    beam = 1 is greedy decoding.

    Ties break lexicographically: attach before juxtapose, then target
    depth, then parent and new label order (None first).
    """
    if not tokens:
        raise ValueError("cannot decode an empty sentence")
    if beam < 1:
        raise ValueError("beam must be >= 1")
    items = [(0.0, 0, INITIAL_STATE, "none")]  # (score, rank, state, prev_kind)
    for i, token in enumerate(tokens):
        context = tuple(tokens[max(0, i - 2) : i])
        candidates = []
        for score, rank, state, prev_kind in items:
            cands = _step_candidates(scorer, state, token, context, prev_kind)
            normed = _log_softmax([s for s, _ in cands])
            for s, (_, action) in zip(normed, cands):
                candidates.append((score + s, _action_sort_key(action), rank, state, action))
        candidates.sort(key=lambda c: (-c[0], c[1], c[2]))
        items = [
            (total, rank, apply_action(state, token, action), action.kind)
            for rank, (total, _, _, state, action) in enumerate(candidates[:beam])
        ]
    return items[0][2].tree


def decode_greedy(scorer: ActionScorer, tokens) -> ConstituencyTree:
    return decode_beam(scorer, tokens, 1)


def majority_label(corpus) -> str:
    counts = Counter()
    for item in corpus:
        def walk(node):
            if isinstance(node, Internal):
                counts[node.label] += 1
                for c in node.children:
                    walk(c)
        walk(_tree_of(item).root)
    if not counts:
        raise ValueError("corpus has no internal nodes")
    return min(counts, key=lambda l: (-counts[l], l))


def decode_right_branching(tokens, label: str) -> ConstituencyTree:
    """Deterministic baseline: each token attaches at the deepest chain node
    under a single label."""
    state = INITIAL_STATE
    for token in tokens:
        depth = len(rightmost_chain(state.tree))
        state = apply_action(state, token, attach(max(depth - 1, 0), label))
    return state.tree

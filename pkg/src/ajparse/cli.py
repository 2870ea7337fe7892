"""Command-line surface for batch workflows and verification.

All subcommands are deterministic given their flags and print a final
machine-readable summary line ``RESULT ok=<k> fail=<j>``; the exit status is
0 iff there were zero failures.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from . import exhaustive, predictor, scoring
from .isr import SHIFT, format_isr_actions, is_legal_stack, isr_apply, translate_sequence
from .oracle import oracle_action_sequence
from .transition import apply_sequence, format_actions
from .tree import node_equal, tree_equal
from .treebank import (
    TreebankFormatError,
    load_corpus,
    tokens_of,
    write_bracketed,
)


def _result(ok: int, fail: int) -> int:
    print(f"RESULT ok={ok} fail={fail}")
    return 0 if fail == 0 else 1


def cmd_oracle(args) -> int:
    entries = load_corpus(args.input, normalization=not args.no_normalize, strict=args.strict)
    ok = fail = 0
    with open(args.output, "w", encoding="utf-8") as out:
        for entry in entries:
            try:
                actions = oracle_action_sequence(entry.tree)
            except ValueError as err:
                print(f"entry {entry.id}: {err}", file=sys.stderr)
                fail += 1
                continue
            out.write(f"{entry.id}\t{entry.tree.length}\t{format_actions(actions)}\n")
            ok += 1
    return _result(ok, fail)


def cmd_verify(args) -> int:
    entries = load_corpus(args.input, normalization=not args.no_normalize, strict=args.strict)
    ok = fail = 0
    for entry in entries:
        try:
            actions = oracle_action_sequence(entry.tree)
            rebuilt = apply_sequence(tokens_of(entry.tree), actions)
            if tree_equal(rebuilt, entry.tree):
                ok += 1
            else:
                fail += 1
                print(f"entry {entry.id}: rebuilt tree differs", file=sys.stderr)
        except ValueError as err:
            fail += 1
            print(f"entry {entry.id}: {err}", file=sys.stderr)
    return _result(ok, fail)


def cmd_translate_isr(args) -> int:
    entries = load_corpus(args.input, normalization=not args.no_normalize, strict=args.strict)
    ok = fail = 0
    with open(args.output, "w", encoding="utf-8") as out:
        for entry in entries:
            try:
                tokens = tokens_of(entry.tree)
                actions = oracle_action_sequence(entry.tree)
                isr_actions = translate_sequence(tokens, actions)
                stack = _replay_checked(isr_actions, tokens)
                if len(stack.elements) != 1 or not node_equal(
                    stack.elements[0], entry.tree.root
                ):
                    raise ValueError("replayed stack does not hold the gold tree")
                n = entry.tree.length
                m = _internal_count(entry.tree.root)
                if len(isr_actions) != n + 2 * m:
                    raise ValueError(
                        f"length {len(isr_actions)} != n + 2m = {n + 2 * m}"
                    )
            except ValueError as err:
                fail += 1
                print(f"entry {entry.id}: {err}", file=sys.stderr)
                continue
            out.write(format_isr_actions(isr_actions) + "\n")
            ok += 1
    return _result(ok, fail)


def _replay_checked(isr_actions, tokens):
    from .isr import EMPTY_STACK

    stack = EMPTY_STACK
    it = iter(tokens)
    for action in isr_actions:
        token = next(it) if action == SHIFT else None
        stack = isr_apply(stack, action, token)
        if not is_legal_stack(stack):
            raise ValueError("illegal intermediate stack during replay")
    return stack


def _internal_count(node) -> int:
    if not hasattr(node, "children"):
        return 0
    return 1 + sum(_internal_count(c) for c in node.children)


def cmd_enumerate_check(args) -> int:
    report = exhaustive.run_all_checks(args.n_max, args.vocab_size)
    print(f"trees checked: {report.trees_checked}")
    print(f"action sequences enumerated: {report.sequences_enumerated}")
    print(
        "case tally: "
        + " ".join(f"{c}={report.case_tally.get(c, 0)}" for c in sorted(set(report.case_tally) | {'1-1'}))
    )
    print(f"augmented trees checked: {report.augmented_checked}")
    print(f"legal stacks checked: {report.stacks_checked}")
    print(f"reduce-lemma states checked: {report.reduce_lemma_checked}")
    print(f"translated steps checked: {report.translations_checked}")
    for witness in report.failures:
        print(f"COUNTEREXAMPLE: {witness}", file=sys.stderr)
    checks = (
        report.trees_checked
        + report.augmented_checked
        + report.stacks_checked
        + report.translations_checked
    )
    return _result(checks, len(report.failures))


def cmd_train(args) -> int:
    entries = load_corpus(args.input, normalization=True, strict=args.strict)
    scorer = predictor.train(entries, epochs=args.epochs, seed=args.seed)
    for epoch, acc in enumerate(scorer.epoch_accuracy, start=1):
        line = " ".join(f"{k}={v:.4f}" for k, v in sorted(acc.items()))
        print(f"epoch {epoch}: {line}", file=sys.stderr)
    scorer.save(args.model)
    return _result(len(entries), 0)


def _read_sentences(path):
    from .tree import Token

    sentences = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            tokens = []
            for part in parts:
                word, _, pos = part.rpartition("_")
                tokens.append(Token(word, pos) if word else Token(part))
            sentences.append(tokens)
    return sentences


def cmd_parse(args) -> int:
    scorer = predictor.ActionScorer.load(args.model)
    sentences = _read_sentences(args.input)
    ok = fail = 0
    with open(args.output, "w", encoding="utf-8") as out:
        for tokens in sentences:
            try:
                tree = predictor.decode_beam(scorer, tokens, args.beam)
            except ValueError as err:
                fail += 1
                print(f"sentence {ok + fail - 1}: {err}", file=sys.stderr)
                out.write("\n")
                continue
            out.write(write_bracketed(tree) + "\n")
            ok += 1
    return _result(ok, fail)


def cmd_score(args) -> int:
    # Labels with the chain separator are legitimate here: predicted files
    # hold collapsed trees.
    gold = [
        e.tree
        for e in load_corpus(
            args.gold, normalization=True, strict=args.strict, plain_labels=False
        )
    ]
    predicted = [
        e.tree
        for e in load_corpus(
            args.predicted, normalization=True, strict=args.strict, plain_labels=False
        )
    ]
    try:
        report = scoring.score(gold, predicted)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return _result(0, 1)
    print(scoring.format_report(report))
    return _result(report.sentences, 0)


def cmd_stats(args) -> int:
    entries = load_corpus(args.input, normalization=not args.no_normalize, strict=args.strict)
    kind_hist = Counter()
    aj_total = isr_total = 0
    for entry in entries:
        tokens = tokens_of(entry.tree)
        actions = oracle_action_sequence(entry.tree)
        aj_total += len(actions)
        isr_total += len(translate_sequence(tokens, actions))
        kind_hist.update(a.kind for a in actions)
    print(f"sentences: {len(entries)}")
    print(f"aj actions: {aj_total}")
    print(f"isr actions: {isr_total}")
    for kind in sorted(kind_hist):
        print(f"action {kind}: {kind_hist[kind]}")
    return _result(len(entries), 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ajparse",
        description="Strongly incremental constituency parsing toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=False):
        p.add_argument("input", help="bracketed treebank file")
        if output:
            p.add_argument("output", help="output file")
        p.add_argument("--no-normalize", action="store_true", help="skip normalization")
        p.add_argument(
            "--lenient", dest="strict", action="store_false",
            help="skip malformed entries instead of failing",
        )

    p = sub.add_parser("oracle", help="dump oracle action sequences")
    common(p, output=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="oracle round-trip check on a corpus")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("translate-isr", help="translate oracle actions to ISR")
    common(p, output=True)
    p.set_defaults(func=cmd_translate_isr)

    p = sub.add_parser("enumerate-check", help="exhaustive small-bound checks")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--vocab-size", type=int, default=2)
    p.set_defaults(func=cmd_enumerate_check)

    p = sub.add_parser("train", help="train the linear action predictor")
    p.add_argument("input", help="bracketed treebank file")
    p.add_argument("--model", required=True)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--lenient", dest="strict", action="store_false",
        help="skip malformed entries instead of failing",
    )
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("parse", help="parse tokenized sentences (token[_POS] per line)")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--model", required=True)
    p.add_argument("--beam", type=int, default=1)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("score", help="PARSEVAL scoring of predicted vs gold trees")
    p.add_argument("gold")
    p.add_argument("predicted")
    p.add_argument(
        "--lenient", dest="strict", action="store_false",
        help="skip malformed entries instead of failing",
    )
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("stats", help="per-corpus action statistics")
    common(p)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TreebankFormatError, OSError, ValueError) as err:
        print(str(err), file=sys.stderr)
        print("RESULT ok=0 fail=1")
        return 1


if __name__ == "__main__":
    sys.exit(main())

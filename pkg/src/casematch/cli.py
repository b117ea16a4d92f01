"""Command line driver: ``parse`` a chunked corpus, ``score`` the result."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import parse_corpus, parse_gold
from .errors import InputError, InvariantError
from .estimator import CaseFrameParser
from .lexicon import load_lexicon
from .matcher import CostTable, format_frame, format_nomodel, load_costs, read_frames
from .ontology import load_ontology
from .scorer import count_roles, format_report, metrics, natural_key

log = logging.getLogger("casematch")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from None


def _write(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write file: {exc.strerror}", str(path)) from None


def cmd_parse(args):
    for path in (args.ontology, args.lexicon, args.corpus) + ((args.costs,) if args.costs else ()):
        if not Path(path).is_file():
            raise InputError("no such file", str(path))
    ontology = load_ontology(_read(args.ontology), filename=args.ontology)
    lexicon = load_lexicon(_read(args.lexicon), ontology, filename=args.lexicon)
    costs = load_costs(_read(args.costs), filename=args.costs) if args.costs else CostTable()
    sentences = parse_corpus(_read(args.corpus), ontology, filename=args.corpus)

    parser = CaseFrameParser.from_costs(lexicon, costs,
                                        all_instantiations=args.all_instantiations,
                                        n_jobs=args.jobs)
    results = parser.fit().predict(sentences)

    lines = []
    no_model = 0
    for sentence, frames in sorted(zip(sentences, results), key=lambda p: natural_key(p[0].id)):
        if not frames:
            no_model += 1
            lines.append(format_nomodel(sentence.id))
        lines.extend(format_frame(frame) for frame in frames)
    _write(args.out, "\n".join(lines) + ("\n" if lines else ""))
    log.info("processed %d sentences, %d without model, %d frames written",
             len(sentences), no_model, len(lines) - no_model)
    return EXIT_OK


def cmd_score(args):
    gold = parse_gold(_read(args.gold), filename=args.gold)
    frames, nomodel = read_frames(_read(args.response), filename=args.response)
    known = {g.sentence_id for g in gold}
    for sid in sorted({f.sentence_id for f in frames} | set(nomodel), key=natural_key):
        if sid not in known:
            raise InputError("response references a sentence id absent from gold",
                             args.response, token=sid)
    evaluation = count_roles(frames, gold)
    text = (format_report(metrics(evaluation.roles), "meaning components")
            + "\n"
            + format_report(metrics(evaluation.models), "models"))
    _write(args.out, text)
    log.info("scored %d response frames against %d gold entries", len(frames), len(gold))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="casematch",
                                     description="Case-role parsing by verb pattern alignment.")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress the summary")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="assign case frames to a chunked corpus")
    p.add_argument("--ontology", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--costs")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--all-instantiations", action="store_true",
                   help="emit every optimal instantiation of the winning model")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_parse)

    s = sub.add_parser("score", help="score parse output against gold frames")
    s.add_argument("--gold", required=True)
    s.add_argument("--response", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_score)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("casematch: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"casematch: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"casematch: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())

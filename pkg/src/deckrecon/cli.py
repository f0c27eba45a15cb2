"""Command-line entry point: ``deckrecon <command> ...``.

Exit codes: 0 success, 1 invariant violation, 2 input error, 3 regime error
(a reconstruction that could not run, or an out-of-regime result under ``--strict``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .count import THEOREMS, reconstruct_clique_count, reconstruct_edge_count, regime_check
from .deck import POLICIES, PartialDeck, full_deck, remove_cards
from .degseq import reconstruct_degree_sequence
from .errors import DeckReconError, InputError, ParseError
from .experiment import load_config, run_experiment
from .generators import FAMILIES, GenSpec, generate, write_graph
from .graph import Graph
from .verification import biclique_pair, common_cards, densified_pair, star_triple_pair, verify_card_degree_identity

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_REGIME = 0, 1, 2, 3


def _read_graph(path: str) -> Graph:
    try:
        return Graph.from_edge_list(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read graph {path}: {exc}") from exc


def _read_deck(path: str) -> PartialDeck:
    try:
        return PartialDeck.from_text(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read deck {path}: {exc}") from exc


def _emit(payload: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2, default=str) + "\n"
    else:
        text = "".join(f"{k}: {v}\n" for k, v in payload.items())
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _params(pairs: list[str]) -> dict[str, str]:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise InputError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key] = value
    return out


def cmd_gen(args) -> int:
    g = generate(GenSpec(args.family, args.n, args.d, args.seed, _params(args.param)))
    if args.output:
        sidecar = write_graph(g, Path(args.output))
        print(f"wrote {args.output} (n={g.n}, m={g.m}) and {sidecar}", file=sys.stderr)
    else:
        sys.stdout.write(g.to_edge_list())
    return EXIT_OK


def cmd_deck_build(args) -> int:
    g = _read_graph(args.graph)
    deck = full_deck(g, r=args.r, with_subcards=args.subcards, subcard_threshold=args.subcard_threshold)
    _write_text(deck.to_text(), args.output)
    return EXIT_OK


def cmd_deck_remove(args) -> int:
    deck = _read_deck(args.deck)
    targets = [int(x) for x in args.targets.split(",")] if args.targets else None
    true_m = args.truth_m
    if true_m is None and args.graph:
        true_m = _read_graph(args.graph).m
    cut = remove_cards(deck, args.k, args.policy, args.seed, targets, true_m)
    _write_text(cut.to_text(), args.output)
    return EXIT_OK


def _write_text(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_recon(args) -> int:
    deck = _read_deck(args.deck)
    if args.task == "edges":
        _, trace = reconstruct_edge_count(deck, args.d)
        payload, in_regime = trace.to_json(), trace.in_regime
    elif args.task == "cliques":
        _, trace = reconstruct_clique_count(deck, args.d, args.r)
        payload, in_regime = trace.to_json(), trace.in_regime
    else:
        _, state = reconstruct_degree_sequence(deck, args.d, force_general=args.force_general)
        payload, in_regime = state.to_json(), state.in_regime
    if not in_regime:
        payload["label"] = "best effort"
    _emit(payload, args.format, args.output)
    return EXIT_REGIME if args.strict and not in_regime else EXIT_OK


def cmd_oracle(args) -> int:
    if args.kind == "cc":
        res = common_cards(_read_graph(args.g), _read_graph(args.h))
        _emit(res.to_json(), args.format, args.output)
        return EXIT_OK
    ok = verify_card_degree_identity(_read_graph(args.graph))
    _emit({"identity_holds": ok}, args.format, args.output)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_counterexample(args) -> int:
    if args.family == "star":
        pair = star_triple_pair(args.p)
    elif args.family == "biclique":
        pair = biclique_pair(args.p)
    else:
        if not args.filler:
            raise InputError("densified needs --filler <edge list with 3p+4 vertices>")
        pair = densified_pair(args.p, _read_graph(args.filler))
    res = common_cards(pair.g, pair.h)
    payload = {
        "family": pair.family,
        "p": args.p,
        "order": pair.g.n,
        "edges": [pair.g.m, pair.h.m],
        "cc": res.cc,
        "cc_fraction": res.cc / pair.g.n,
        "predicted_cc": pair.predicted_cc,
    }
    if args.output_dir:
        out = Path(args.output_dir)
        write_graph(pair.g, out / f"{pair.family}_p{args.p}_G.txt")
        write_graph(pair.h, out / f"{pair.family}_p{args.p}_H.txt")
    _emit(payload, args.format, args.output)
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = load_config(args.config)
    if args.workers:
        config = type(config)(config.gen, config.removal, config.tasks, config.d_override, config.output, args.workers)
    report = run_experiment(config)
    output = args.output or config.output
    if args.format == "json":
        text = json.dumps(report.to_json(), indent=2, default=str) + "\n"
    elif args.format == "csv":
        text = report.to_csv()
    else:
        text = report.to_text()
    _write_text(text, output)
    if output:
        sys.stderr.write(report.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suite import run_suite

    status = EXIT_OK
    for path in args.deck or ():
        try:
            deck = _read_deck(path)
            print(f"ok   deck {path}: n={deck.n}, k={deck.k}, {len(deck)} cards")
        except ParseError as exc:
            print(f"parse-error {path}: {exc}")
            status = EXIT_INPUT
    if status:
        return status
    keys = args.only.split(",") if args.only else None
    results = run_suite(args.level, keys)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def cmd_thresholds(args) -> int:
    rows = []
    for theorem in THEOREMS:
        if theorem == "clique_count" and args.r is None:
            continue
        rc = regime_check(theorem, args.n, args.d, args.k, args.r if theorem == "clique_count" else None)
        rows.append({"theorem": theorem, "max_k": rc.max_k, "k": args.k, "satisfied": rc.satisfied})
    if args.format == "json":
        _emit({"n": args.n, "d": args.d, "r": args.r, "thresholds": rows}, "json", args.output)
    else:
        lines = [f"{'theorem':<16} {'max_k':>8}  satisfied(k={args.k})"]
        lines += [f"{r['theorem']:<16} {r['max_k']:>8}  {r['satisfied']}" for r in rows]
        _write_text("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deckrecon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json", formats=("json", "text")):
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--format", choices=formats, default=fmt_default)

    g = sub.add_parser("gen", help="generate a ground-truth graph")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--param", action="append", metavar="KEY=VALUE")
    g.add_argument("--output")
    g.set_defaults(func=cmd_gen)

    deck = sub.add_parser("deck", help="build or thin decks").add_subparsers(dest="deck_command", required=True)
    b = deck.add_parser("build")
    b.add_argument("--graph", required=True)
    b.add_argument("--r", type=int, help="also record r-clique counts")
    b.add_argument("--subcards", action="store_true", help="record sub-card histograms for high-degree vertices")
    b.add_argument("--subcard-threshold", type=int)
    b.add_argument("--output")
    b.set_defaults(func=cmd_deck_build)
    rm = deck.add_parser("remove")
    rm.add_argument("--deck", required=True)
    rm.add_argument("--k", type=int, required=True)
    rm.add_argument("--policy", choices=POLICIES, default="random")
    rm.add_argument("--seed", type=int, default=0)
    rm.add_argument("--targets", help="comma-separated degrees for target_degrees")
    rm.add_argument("--truth-m", type=int, help="true edge count (target_degrees only)")
    rm.add_argument("--graph", help="ground-truth graph supplying the edge count")
    rm.add_argument("--output")
    rm.set_defaults(func=cmd_deck_remove)

    r = sub.add_parser("recon", help="reconstruct from a deck file")
    r.add_argument("task", choices=("edges", "cliques", "degseq"))
    r.add_argument("--deck", required=True)
    r.add_argument("--d", type=int)
    r.add_argument("--r", type=int, default=3)
    r.add_argument("--strict", action="store_true", help="exit 3 when the result is out of regime")
    r.add_argument("--force-general", action="store_true")
    common(r)
    r.set_defaults(func=cmd_recon)

    o = sub.add_parser("oracle", help="brute-force oracles")
    o.add_argument("kind", choices=("cc", "identity"))
    o.add_argument("--g")
    o.add_argument("--h")
    o.add_argument("--graph")
    common(o)
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("counterexample", help="build a counterexample pair and count common cards")
    c.add_argument("family", choices=("star", "biclique", "densified"))
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--filler")
    c.add_argument("--output-dir")
    common(c)
    c.set_defaults(func=cmd_counterexample)

    e = sub.add_parser("experiment").add_subparsers(dest="experiment_command", required=True)
    er = e.add_parser("run")
    er.add_argument("--config", required=True)
    er.add_argument("--workers", type=int)
    common(er, "text", ("json", "text", "csv"))
    er.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--level", choices=("fast", "full"), default="fast")
    v.add_argument("--deck", action="append", help="also parse-check this deck file")
    v.add_argument("--only", help="comma-separated criterion keys, e.g. C1,C8")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("thresholds", help="max missing cards per theorem")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--r", type=int)
    t.add_argument("--k", type=int, default=0)
    common(t, "text")
    t.set_defaults(func=cmd_thresholds)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DeckReconError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

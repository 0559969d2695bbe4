"""Misspelling recovery on a synthetic Banglish corpus.

Each sentence embeds one catalog device with a number of random character
edits; a case counts as recovered when the corrector rewrites exactly that
span to the original catalog name. Prints one row per (edits, seed) and a
breakdown by edit type.

    python scripts/misspelling_recovery.py --catalog tests/fixtures/phone_list.csv --seeds 5 --edits 0 1 2
"""
import argparse
import csv
import sys
import time
from collections import Counter
from pathlib import Path

from banglish_demand.catalog import load_catalog
from banglish_demand.matcher import MatcherConfig, correct_text
from banglish_demand.synthetic import misspelling_corpus

ROOT = Path(__file__).resolve().parents[1]


def run(catalog, cfg, n, seed, edits):
    corpus = misspelling_corpus(catalog, n=n, seed=seed, edits=edits)
    hits, by_op, failures = 0, Counter(), []
    t0 = time.perf_counter()
    for item in corpus:
        result = correct_text(item.text, catalog, cfg)
        ok = any((r.start, r.end, r.replacement) == (item.start, item.end, item.device) for r in result.replacements)
        hits += ok
        by_op[item.edit, ok] += 1
        if not ok:
            failures.append((item.device, item.text[item.start:item.end], result.corrected_text))
    return hits, time.perf_counter() - t0, by_op, failures


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--catalog", default=str(ROOT / "tests" / "fixtures" / "phone_list.csv"))
    parser.add_argument("-n", type=int, default=500, help="sentences per corpus")
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--edits", type=int, nargs="+", default=[1])
    parser.add_argument("--max-edit-distance", type=int, default=3)
    parser.add_argument("--min-ratio", type=float, default=0.55)
    parser.add_argument("--show-failures", type=int, default=0, help="print this many failed cases per run")
    args = parser.parse_args(argv)

    catalog = load_catalog(args.catalog)
    cfg = MatcherConfig(args.max_edit_distance, args.min_ratio)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["edits", "seed", "recovered", "n", "rate", "seconds"])
    ops = Counter()
    for edits in args.edits:
        for seed in range(args.seeds):
            hits, secs, by_op, failures = run(catalog, cfg, args.n, seed, edits)
            ops.update(by_op)
            out.writerow([edits, seed, hits, args.n, f"{hits / args.n:.4f}", f"{secs:.2f}"])
            for device, surface, corrected in failures[: args.show_failures]:
                print(f"#   {device!r} as {surface!r} -> {corrected!r}")
    print("# recovery by edit type")
    for op in sorted({op for op, _ in ops}):
        ok, total = ops[op, True], ops[op, True] + ops[op, False]
        print(f"#   {op}: {ok}/{total} ({ok / total:.1%})")


if __name__ == "__main__":
    main()

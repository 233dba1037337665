#!/usr/bin/env python3
"""Run the recommender over the fixture corpus and print a threshold sweep.

Usage: python3 scripts/run_fixture_eval.py [--lang en] [--weights w1,w2,w3,w4]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from taxotrace.evaluation import load_gold_csv, threshold_sweep
from taxotrace.recommender import DEFAULT_WEIGHTS, RecommenderSettings, build_index, recommend
from taxotrace.taxonomy import parse_taxonomy_csv
from taxotrace.textproc import LangConfig, import_plaintext

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--lang", default="en", choices=["en", "sv"])
    parser.add_argument("--weights", default=",".join(str(w) for w in DEFAULT_WEIGHTS))
    parser.add_argument("--threshold", type=float, default=0.4)
    args = parser.parse_args()

    weights = tuple(float(w) for w in args.weights.split(","))
    taxonomy = parse_taxonomy_csv((FIXTURES / "toy_taxonomy.csv").read_bytes())
    cfg = LangConfig.for_language(args.lang)
    index = build_index(taxonomy, cfg, weights)
    units = import_plaintext((FIXTURES / "reqs.txt").read_bytes(), "reqs")
    gold = load_gold_csv((FIXTURES / "gold.csv").read_bytes())

    settings = RecommenderSettings(threshold=args.threshold, max_rejects=3, top_k=len(taxonomy))
    report = threshold_sweep(index, units, gold, settings, [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7])
    print(report.to_table())
    print()
    for unit in units:
        top = recommend(index, unit, settings)[:3]
        shown = ", ".join(f"{taxonomy.concepts[s.concept_id].pref_label} ({s.confidence:.2f})" for s in top)
        print(f"{unit.unit_id}: {unit.text}")
        print(f"    -> {shown or '(nothing above threshold)'}")


if __name__ == "__main__":
    main()

"""Run every report (theorem list, Cases 1-7, Sym(5) census, examples) and write one JSON file.

    python scripts/run_all_cases.py [--skip-slow] [--out reports.json]
"""

import argparse
import json
import sys
import time

from skewprod.classify import Settings, all_reports


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--skip-slow", action="store_true", help="leave out Case 3 (about a minute)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="reports.json")
    args = ap.parse_args()
    ok = True
    docs = []
    t0 = time.perf_counter()
    for rep in all_reports(Settings(seed=args.seed), include_slow=not args.skip_slow):
        failed = rep.failed_claims()
        ok &= not failed
        print(f"{'PASS' if not failed else 'FAIL'}  [{rep.case_id}] {rep.title}  total={rep.total}")
        for c in failed:
            print(f"      failed: {c.id}: expected {c.expected!r}, observed {c.observed!r}")
        docs.append(rep.as_dict())
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump({"schema": 1, "reports": docs, "passed": ok}, fh, sort_keys=True, indent=2)
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

"""Write the seeded property corpus as instance JSON files plus a JSONL manifest.

    python3 scripts/build_corpus.py --out corpus/ --count 200
"""
import argparse
import json
from pathlib import Path

from monocell import plcore as pc
from monocell.corpus import build_corpus, write_manifest


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="corpus")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--start", type=int, default=0)
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries = build_corpus(args.count, args.start)
    for e in entries:
        with open(out / f"{e.name}.json", "w") as fh:
            json.dump(pc.instance_to_json(e.instance), fh, sort_keys=True)
            fh.write("\n")
    write_manifest(entries, out / "manifest.jsonl")
    print(f"wrote {len(entries)} instances to {out}")


if __name__ == "__main__":
    main()

"""Print the p-rationality level histogram of Irr_p'(G) for each corpus group.

    python3 scripts/level_survey.py            # every prime dividing |G|
    python3 scripts/level_survey.py -p 2
"""

import argparse

from charlevels.groups import builtin_corpus
from charlevels.verify import GroupContext, primes_dividing
from charlevels.rationality import level_histogram


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-p", type=int, default=None)
    args = ap.parse_args()

    for spec in builtin_corpus():
        ctx = GroupContext(spec.build(), spec.name)
        primes = [args.p] if args.p else primes_dividing(ctx.order)
        cells = []
        for p in primes:
            h = level_histogram(ctx.table, p)
            e = ctx.abelianized_exponent(p) if ctx.order % p == 0 else 1
            cells.append(f"p={p} e={e} {dict(h.counts)}")
        print(f"{spec.name:<10} |G|={ctx.order:<5} " + "  ".join(cells))


if __name__ == "__main__":
    main()

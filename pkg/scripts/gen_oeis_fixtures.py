"""Regenerate the vendored OEIS fixture files.

Standalone on purpose: it does not import bandpp, so the fixtures are an
independent check on the library's counting routes. Each sequence is built
from a product formula with plain integer polynomial arithmetic:

* A000041 by Euler's pentagonal-number recurrence;
* A266648 as P(z) * prod_k (1 + z^(3k));
* the others as prod_k (1 - z^k)^(-e_k) for the stated exponent e_k.
"""

from __future__ import annotations

import argparse
from pathlib import Path

TERMS = 40
OUT = Path(__file__).resolve().parents[1] / "src" / "bandpp" / "data" / "oeis"


def partitions_pentagonal(n_max: int) -> list[int]:
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        k, s = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            s += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                s += sign * p[n - g2]
            k += 1
        p[n] = s
    return p


def euler_product(exponent, n_max: int) -> list[int]:
    a = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for _ in range(exponent(k)):
            # multiply by 1 / (1 - z^k)
            for i in range(k, n_max + 1):
                a[i] += a[i - k]
    return a


def bpp3(n_max: int) -> list[int]:
    a = partitions_pentagonal(n_max)
    for k in range(3, n_max + 1, 3):
        # multiply by (1 + z^k)
        for i in range(n_max, k - 1, -1):
            a[i] += a[i - k]
    return a


def sequences(n_max: int) -> dict:
    rowed = {2: "A000990", 3: "A000991", 4: "A002799", 5: "A001452", 6: "A225196", 7: "A225197", 8: "A225198", 9: "A225199"}
    out = {
        "A000041": ("ordinary partitions; pentagonal-number recurrence", partitions_pentagonal(n_max)),
        "A000219": ("plane partitions; prod (1-z^k)^-k", euler_product(lambda k: k, n_max)),
        "A003293": ("column-strict plane partitions; prod (1-z^k)^-floor((k+1)/2)", euler_product(lambda k: (k + 1) // 2, n_max)),
        "A266648": ("banded plane partitions of width 3; P(z) prod (1+z^(3k))", bpp3(n_max)),
    }
    for m, tag in rowed.items():
        out[tag] = (f"{m}-rowed plane partitions; prod (1-z^k)^-min(k,{m})", euler_product(lambda k, m=m: min(k, m), n_max))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--terms", type=int, default=TERMS)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for tag, (desc, seq) in sequences(args.terms - 1).items():
        lines = [
            f"# {tag}: {desc}",
            "# source: offline regeneration by scripts/gen_oeis_fixtures.py (no network access when vendored)",
            "# offset 0; columns n<TAB>a(n)",
        ]
        lines += [f"{n}\t{v}" for n, v in enumerate(seq)]
        (args.out / f"{tag}.tsv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

"""Census of classifier verdicts over Y(e0; r, s, 1 - r) for small denominators.

Prints how often each rule fires and each verdict kind occurs, per e0.
"""
import argparse
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from complegs import classify
from complegs.errors import DomainError
from complegs.seifert import SeifertData


@dataclass
class Config:
    e0_lo: int = -4
    e0_hi: int = 3
    denom: int = 12


def spaces(cfg: Config):
    fr = [Fraction(a, b) for b in range(2, cfg.denom + 1) for a in range(1, b) if math.gcd(a, b) == 1]
    for e0 in range(cfg.e0_lo, cfg.e0_hi + 1):
        for r in fr:
            if r > Fraction(1, 2):
                continue  # r and 1 - r give the same space
            for s in fr:
                yield SeifertData(e0, (r, s, 1 - r))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--e0-lo", type=int, default=Config.e0_lo)
    ap.add_argument("--e0-hi", type=int, default=Config.e0_hi)
    ap.add_argument("--denom", type=int, default=Config.denom)
    a = ap.parse_args(argv)
    cfg = Config(a.e0_lo, a.e0_hi, a.denom)
    by_e0: dict[int, Counter] = {}
    for y in spaces(cfg):
        try:
            v = classify.symplectic_verdict(y)
        except DomainError:
            continue
        c = by_e0.setdefault(y.e0, Counter())
        c[("rule", v.rule_fired.value)] += 1
        c[("kind", v.symplectic.kind.value)] += 1
        c[("smooth", v.smooth.value)] += 1
    for e0, c in sorted(by_e0.items()):
        print(f"e0 = {e0}")
        for (group, key), n in sorted(c.items()):
            print(f"  {group:6} {key:40} {n}")


if __name__ == "__main__":
    main()

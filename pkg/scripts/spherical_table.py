"""Filling counts for the spherical families, from the closed table and from the classifier."""
import argparse
import math
from dataclasses import dataclass

from complegs import classify


@dataclass
class Config:
    m_max: int = 6
    n_max: int = 6


def rows(cfg: Config):
    S = classify.Spherical
    yield "-T_3", S.t_minus_3()
    for m in range(1, cfg.m_max + 1):
        for h in range(0, m):
            if (m == 1) != (h == 0) or math.gcd(m, h) != 1:
                continue
            for n in range(1 if m == 1 else 2, cfg.n_max + 1):
                yield f"D(m={m}, h={h}, n={n})", S.dihedral_neg(m, h, n)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=Config.m_max)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    a = ap.parse_args(argv)
    cfg = Config(a.m_max, a.n_max)
    print(f"{'space':24} {'Seifert form':28} {'table':>5}  classifier")
    mismatches = 0
    for label, s in rows(cfg):
        y = classify.spherical_seifert(s)
        count = classify.spherical_table(s)
        got = classify.symplectic_verdict(y).symplectic
        mismatches += got != classify.SymplecticCount.exactly(count)
        print(f"{label:24} {str(y):28} {count:>5}  {got}")
    print(f"{mismatches} mismatches")
    return int(mismatches > 0)


if __name__ == "__main__":
    raise SystemExit(main())

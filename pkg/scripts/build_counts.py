"""Print cell counts of K°_d, K_d and K_{n,l} with build times."""
import argparse
import time
from dataclasses import dataclass

from orthocell.symmetric import build_K, build_K_subdivided, build_Ko


@dataclass(frozen=True)
class CountsConfig:
    max_dim: int = 3
    max_l: int = 3


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-dim", type=int, default=CountsConfig.max_dim)
    p.add_argument("--max-l", type=int, default=CountsConfig.max_l)
    a = p.parse_args()
    cfg = CountsConfig(a.max_dim, a.max_l)

    print(f"{'complex':<10} {'cells':>6} {'by dim':<28} {'sec':>6}")
    for d in range(1, cfg.max_dim + 1):
        t = time.perf_counter()
        Ko = build_Ko(d)
        by = {k: sum(c.dim == k for c in Ko) for k in range(d + 1)}
        print(f"{'K°_' + str(d):<10} {len(Ko):>6} {str(by):<28} {time.perf_counter() - t:>6.2f}")
        t = time.perf_counter()
        K = build_K(d)
        print(f"{'K_' + str(d):<10} {len(K):>6} {str(K.counts()):<28} {time.perf_counter() - t:>6.2f}")
    for n in range(1, min(cfg.max_dim, 3) + 1):
        for l in range(2, cfg.max_l + 1):
            if n == 3 and l > 2:
                continue
            t = time.perf_counter()
            K = build_K_subdivided(n, l)
            print(f"{f'K_{n},{l}':<10} {len(K):>6} {str(K.counts()):<28} {time.perf_counter() - t:>6.2f}")


if __name__ == "__main__":
    main()

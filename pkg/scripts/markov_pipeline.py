"""Build and verify the torus Lattès cell map for one (n, lambda).

Prints the verification report, quotient cell counts, degrees and, for small
cases, the top-cell subdivision matrix.  Optionally writes D0/D1 as JSON.
"""
import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from orthocell.crystal import torus_group
from orthocell.io import document_from_quotient, to_json
from orthocell.lattes import build_lattes_cell_map, degree_count, subdivision_matrix, verify_markov


@dataclass(frozen=True)
class PipelineConfig:
    n: int = 2
    lam: int = 2
    out_dir: str | None = None
    show_matrix_up_to: int = 16


def run(cfg: PipelineConfig) -> bool:
    t = time.perf_counter()
    rec = build_lattes_cell_map(torus_group(cfg.n), cfg.lam)
    built = time.perf_counter() - t
    rep = verify_markov(rec)
    checked = time.perf_counter() - t - built
    print(rep.summary())
    print(f"D0 counts {rec.D0.counts()}  chi = {rec.D0.euler_characteristic()}")
    print(f"D1 counts {rec.D1.counts()}  chi = {rec.D1.euler_characteristic()}")
    print(f"preimages per D0 top cell: {sorted(set(degree_count(rec).values()))}")
    keys, M = subdivision_matrix(rec)
    if len(keys) <= cfg.show_matrix_up_to:
        print("subdivision matrix:")
        for row in M:
            print("  " + " ".join(str(x) for x in row))
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        meta = {"dim": cfg.n, "lambda": cfg.lam}
        (out / "D0.json").write_text(to_json(document_from_quotient(rec.D0, {**meta, "level": 0})))
        (out / "D1.json").write_text(to_json(document_from_quotient(rec.D1, {**meta, "level": 1})))
    print(f"build {built:.1f}s, verify {checked:.1f}s")
    return rep.passed


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=PipelineConfig.n)
    p.add_argument("--lambda", dest="lam", type=int, default=PipelineConfig.lam)
    p.add_argument("--out-dir", default=None)
    a = p.parse_args()
    raise SystemExit(0 if run(PipelineConfig(a.n, a.lam, a.out_dir)) else 1)


if __name__ == "__main__":
    main()

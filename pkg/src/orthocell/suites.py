"""Named verification suites shared by the command line and the scripts."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .complex import CellComplex, VerificationReport, verify_cell_decomposition, verify_refinement
from .crystal import OrthotopicGroup, make_orthotopic_group, orbit_intersection_check, verify_normal_fundamental_domain
from .exact import AffineSignedIsometry
from .lattes import LattesMapRecord, MapEntry, build_lattes_cell_map, degree_count, format_key, verify_markov
from .symmetric import (
    build_K,
    build_K_orthotope,
    build_K_subdivided,
    build_Ko,
    cube_structure,
    standard_cube,
)
from .symmetry import check_family_invariance, check_stabilizer_property, enumerate_cube_symmetries

SUITES = ("cell-decomp", "refinement", "invariance", "stabilizer", "orbit", "markov")
FAULTS = ("table", "overlap", "missing-vertex")


@dataclass(frozen=True)
class VerifyConfig:
    dim: int = 2
    l: int = 1
    lam: int = 2
    seed: int = 0
    samples: int = 100
    radius: int = 1
    sides: tuple = ()
    generators: tuple = field(default=())
    inject: str | None = None

    def group(self) -> OrthotopicGroup:
        sides = self.sides or (1,) * self.dim
        return make_orthotopic_group(sides, self.generators)


def ko_complex(d: int) -> CellComplex:
    return CellComplex.of(d, build_Ko(d), space=standard_cube(d).cell())


# -- fault injection ------------------------------------------------------------------------

def inject_overlap(D: CellComplex) -> CellComplex:
    """Add the whole space as an extra cell, so interiors overlap."""
    extra = [p for p in D.space_pieces() if p not in D]
    return CellComplex.of(D.ambient_dim, list(D.cells) + extra[:1], space=D.space)


def drop_boundary_vertex(D: CellComplex) -> CellComplex:
    """Remove the lexicographically largest vertex cell."""
    v = max(D.of_dim(0))
    return CellComplex.of(D.ambient_dim, [c for c in D.cells if c != v], space=D.space)


def corrupt_table(record: LattesMapRecord) -> LattesMapRecord:
    """Point the first top-dimensional entry at a different top class."""
    tops = record.D0.top_keys()
    key = record.D1.top_keys()[0]
    e = record.table[key]
    wrong = next(k for k in tops if k != e.target) if len(tops) > 1 else e.tau.vertices[:1]
    table = dict(record.table)
    table[key] = MapEntry(e.sigma, e.tau, e.gamma, e.witness, wrong)
    return replace(record, table=table)


# -- suites ---------------------------------------------------------------------------------

def suite_cell_decomp(cfg: VerifyConfig, D: CellComplex | None = None) -> list[VerificationReport]:
    targets = [(f"K_{cfg.dim}", build_K(cfg.dim) if D is None else D)]
    if D is None and cfg.l > 1:
        targets.append((f"K_{cfg.dim},{cfg.l}", build_K_subdivided(cfg.dim, cfg.l)))
    out = []
    for name, C in targets:
        if cfg.inject == "overlap":
            C = inject_overlap(C)
        elif cfg.inject == "missing-vertex":
            C = drop_boundary_vertex(C)
        out.append(verify_cell_decomposition(C, subject=f"cell decomposition {name}"))
    return out


def suite_refinement(cfg: VerifyConfig) -> list[VerificationReport]:
    K = build_K(cfg.dim)
    fine = build_K_subdivided(cfg.dim, cfg.l) if cfg.l > 1 else K
    return [verify_refinement(fine, K, subject=f"K_{cfg.dim},{cfg.l} refines K_{cfg.dim}"),
            verify_refinement(K, cube_structure(cfg.dim), subject=f"K_{cfg.dim} refines Cube_{cfg.dim}")]


def suite_invariance(cfg: VerifyConfig) -> list[VerificationReport]:
    G = enumerate_cube_symmetries(cfg.dim)
    l = cfg.l if cfg.l > 1 else 2
    out = []
    for name, F in ((f"K°_{cfg.dim}", ko_complex(cfg.dim)), (f"K_{cfg.dim}", build_K(cfg.dim)),
                    (f"K_{cfg.dim},{l}", build_K_subdivided(cfg.dim, l))):
        rep = VerificationReport(f"symmetry invariance of {name}")
        rep.add(f"all {G.order} cube symmetries preserve the family",
                [str(g) for g in G if not check_family_invariance(g, F)])
        out.append(rep)
    return out


def suite_stabilizer(cfg: VerifyConfig) -> list[VerificationReport]:
    return [check_stabilizer_property(build_K(cfg.dim), enumerate_cube_symmetries(cfg.dim), cfg.samples, cfg.seed)]


def suite_orbit(cfg: VerifyConfig) -> list[VerificationReport]:
    G = cfg.group()
    K = build_K_orthotope(G.fundamental_domain)
    return [verify_normal_fundamental_domain(G, radius=cfg.radius),
            orbit_intersection_check(G, K, cfg.samples, cfg.seed, radius=cfg.radius)]


def suite_markov(cfg: VerifyConfig) -> list[VerificationReport]:
    G = cfg.group()
    record = build_lattes_cell_map(G, cfg.lam)
    if cfg.inject == "table":
        record = corrupt_table(record)
    rep = verify_markov(record)
    n, lam = G.dim, cfg.lam
    if G.is_translation_group():
        deg = degree_count(record)
        rep.add(f"every top cell of D0 has {lam ** n} preimage top cells",
                [f"{format_key(k)}: {v}" for k, v in sorted(deg.items()) if v != lam ** n])
        t0, t1 = len(record.D0.top_keys()), len(record.D1.top_keys())
        rep.add("|D1 top| = lambda^n |D0 top|", [] if t1 == lam ** n * t0 else [f"{t1} != {lam ** n} * {t0}"])
        chi = record.D0.euler_characteristic()
        rep.add("Euler characteristic of D0 is 0", [] if chi == 0 else [f"chi = {chi}"])
    return [rep]


RUNNERS = {
    "cell-decomp": suite_cell_decomp,
    "refinement": suite_refinement,
    "invariance": suite_invariance,
    "stabilizer": suite_stabilizer,
    "orbit": suite_orbit,
    "markov": suite_markov,
}


def run_suite(name: str, cfg: VerifyConfig) -> list[VerificationReport]:
    if name == "all":
        return [r for s in SUITES for r in RUNNERS[s](cfg)]
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return RUNNERS[name](cfg)


def parse_generator(text: str, n: int) -> AffineSignedIsometry:
    """'perm;signs;translation' with comma lists, e.g. '1,0;1,1;0,0' (0-based perm)."""
    parts = text.split(";")
    if len(parts) not in (2, 3):
        raise ValueError(f"generator {text!r} must look like 'perm;signs[;translation]'")
    perm = [int(x) for x in parts[0].split(",")]
    signs = [int(x) for x in parts[1].split(",")]
    trans = parts[2].split(",") if len(parts) == 3 else ["0"] * n
    if len(perm) != n or len(signs) != n or len(trans) != n:
        raise ValueError(f"generator {text!r} does not act on R^{n}")
    return AffineSignedIsometry.make(perm, signs, trans)


__all__ = ["VerifyConfig", "SUITES", "FAULTS", "run_suite", "inject_overlap", "drop_boundary_vertex",
           "corrupt_table", "ko_complex", "parse_generator"]

"""Named verification suites; each returns a :class:`Report`."""

from __future__ import annotations

import contextlib
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import bosonization as bz
from . import characters as ch
from . import dhat, linalg, w3, wick
from . import freefields as ff
from .freefields import FockState
from .parser import parse_expr
from .report import Report
from .scalars import as_scalar
from .wick import CompositeField

SUITES = ("dhat", "fms", "w3", "lemma2", "lemma3", "characters", "exactseq")


@dataclass(frozen=True)
class Config:
    level: int = 6
    modes: int = 3
    twist: int = 0
    charge_window: int = 3
    corrupt_contractions: bool = False

    def __post_init__(self):
        if self.level < 0 or self.level > 12:
            raise ValueError("level must be between 0 and 12")
        if self.modes < 0 or self.modes > 8:
            raise ValueError("modes must be between 0 and 8")
        if self.charge_window < 0:
            raise ValueError("charge window must be non-negative")


# Published small-n expansions of :d^n beta gamma: (J^0 = i j), kept as reference data.
PUBLISHED_EXPANSIONS = {
    0: "i j",
    1: ":d^1 b c: + 1/2 :j j: + 1/2*i d^1 j",
    2: "2 :d^2 b c: - 2*i :d^1 b c j: + 5/3*i d^2 j - 5/3*i :j j j: + 5 :j d^1 j:",
}


def claimed_determinant(n: int):
    return as_scalar(Fraction(n + 3, 2 * (n + 1)))


# ---------------------------------------------------------------------------


def suite_dhat(cfg: Config) -> Report:
    rep = Report("dhat", asdict(cfg))
    jac = dhat.check_jacobi(100, seed=0)
    rep.add("dhat.jacobi", all(ok for *_, ok in jac), f"{sum(ok for *_, ok in jac)}/{len(jac)} random triples", trials=len(jac))
    rcfg = dhat.RealizationConfig(cfg.twist, max(cfg.level, 1), max(cfg.modes, 1))
    results = dhat.verify_representation(cfg=rcfg)
    bad = [r for r in results if not r.passed]
    rep.add(
        "dhat.representation",
        not bad,
        f"{len(results) - len(bad)}/{len(results)} pairs on M^0 to level {rcfg.D_max}",
        states=results[0].states if results else 0,
        failures=[f"{r.pair}: {r.detail}" for r in bad[:10]],
    )
    solved = sorted({r.solved_central.text(compact=True) for r in results if r.solved_central is not None})
    rep.add("dhat.central_scalar", solved == ["-1"], f"C acts by {', '.join(solved)}", values=solved)
    if cfg.twist == 0:
        ok = True
        keys = dhat.m0_basis(min(cfg.level, 4))
        for l in range(4):
            for k in range(-cfg.modes, cfg.modes + 1):
                rm = dhat.realize_mode(l, k, rcfg)
                for key in keys:
                    v = FockState.basis(key)
                    if rm.apply(v) != wick.mode_action(dhat.wick_field(l), k, v):
                        ok = False
        rep.add("dhat.wick_crosscheck", ok, "rho(J^l_k) = (:gamma d^l beta:)(k) on M^0")
    return rep


def suite_fms(cfg: Config) -> Report:
    rep = Report("fms", asdict(cfg))
    r = bz.check_fms_consistency(cfg.level, cfg.modes)
    rep.add(
        "fms.consistency",
        r.passed,
        f"{r.checks} commutators on {r.states} states of N(0) to level {cfg.level}, |m|,|n| <= {cfg.modes}",
        failures=r.failures[:10],
    )
    small = min(cfg.level, 4)
    rep.add("fms.current", bz.j_equals_current(max_level=small, modes=cfg.modes), "i j(k) = (:gamma beta:)(k)")
    bf = bz.boson_fermion_check(max_level=small, modes=cfg.modes)
    rep.add("fms.boson_fermion", not bf["failures"], f"{bf['checked']} vertex-operator anticommutators", failures=bf["failures"][:10])
    return rep


def _wick_pairs():
    b, c, j = (CompositeField.field(x) for x in ("b", "c", "j"))
    fields = {"T": wick.T_FIELD, "Wt": wick.WT_FIELD, "b": b, "c": c, "db": wick.derive(b), "dc": wick.derive(c), "j": j}
    return [(na, A, nb, B) for na, A in fields.items() for nb, B in fields.items()]


def suite_w3(cfg: Config) -> Report:
    rep = Report("w3", asdict(cfg))
    keys = ff.all_f_keys(cfg.level)
    cross_ok = True
    for m in range(-cfg.modes, cfg.modes + 1):
        for n in range(-cfg.modes, cfg.modes + 1):
            for r in w3.check_w3_relations(m, n, cfg.level, keys):
                rep.add(f"w3.rel.{r.relation}.m={m:+d}.n={n:+d}", r.passed, f"{r.states} states", failures=r.failures)
                cross_ok = cross_ok and r.via_ope
    ok, text = w3.virasoro_central_example(cfg.level, keys)
    rep.add("w3.virasoro_central", ok and text == "[L_2, L_-2] = 4 L_0 - 1", text)
    for c in w3.check_w3_opes():
        rep.add(f"w3.ope.{c.name}.pole{c.pole}", c.passed, c.got.render(), expected=c.expected.render())
    opes, fams = w3.check_zero_modes(6, min(cfg.level, 6))
    for c in opes:
        rep.add(f"w3.zero_mode.ope.{c.name.replace(' ', '_')}.pole{c.pole}", c.passed, c.got.render(), expected=c.expected.render())
    for f in fams:
        rep.add(f"w3.zero_mode.{f.name}.{f.route}", f.passed, f"{f.checked} states x modes")
    rep.add("w3.cross_oracle.w3", cross_ok, "OPE-derived brackets equal state commutators for every relation above")
    # wider cross-oracle over free fields and generators
    fkeys = ff.all_f_keys(min(cfg.level, 6))
    nkeys = ff.n0_keys(min(cfg.level, 3), range(-1, 2))
    failures = []
    for na, A, nb, B in _wick_pairs():
        states = nkeys if "j" in (na, nb) else fkeys
        for m in range(-cfg.modes, cfg.modes + 1):
            for n in range(-cfg.modes, cfg.modes + 1):
                ms = wick.commutator_via_ope(A, B, m, n)
                for key in states:
                    v = FockState.basis(key)
                    if ms.apply(v) != wick.supercommutator_on(A, m, B, n, v):
                        failures.append(f"{na}({m}) {nb}({n}) on {ff.render_key(key)}")
                        break
    rep.add("w3.cross_oracle.fields", not failures, "free fields, T and Wt, all ordered pairs", failures=failures[:10])
    return rep


def suite_lemma2(cfg: Config) -> Report:
    rep = Report("lemma2", asdict(cfg))
    charges = range(-min(cfg.charge_window, 2), min(cfg.charge_window, 2) + 1)
    for n in range(4):
        rec = bz.lemma2_expand(n, charges=charges, max_level=cfg.level, modes=cfg.modes)
        verdict = {
            "binom(n,k), printed C_n": rec.template_binom_n,
            "binom(n+1,k), printed C_n": rec.template_binom_n1,
            "binom(n,k), derived C_n": bz.lemma2_template(n, n, rec.derived_cn) == rec.derived,
        }
        rep.add(
            f"lemma2.expand.n={n}",
            bool(rec.state_check),
            rec.identity(),
            states=rec.states,
            derived_cn=rec.derived_cn,
            printed_cn=rec.printed_cn,
            template=verdict,
            failures=rec.failures[:5],
        )
    for n, text in sorted(PUBLISHED_EXPANSIONS.items()):
        ref = parse_expr(text)
        got = bz.lemma2_derive(n)
        rep.add(f"lemma2.published.n={n}", ref == got, got.render(), reference=ref.render())
    return rep


def suite_lemma3(cfg: Config) -> Report:
    rep = Report("lemma3", asdict(cfg))
    for i in range(1, 5):
        for j in range(0, 5 - i):
            r = bz.verify_rewrite(i, j, cfg.level, min(cfg.modes, 2))
            rep.add(f"lemma3.rewrite.i={i}.j={j}", r.symbolic and r.state_check, r.identity(), states=r.states)
    for n in range(1, 11):
        det = bz.claim_determinant(n)
        claim = claimed_determinant(n)
        _, outside = bz.claim_matrix(n)
        rep.add(
            f"lemma3.det.n={n:02d}",
            det == claim,
            f"det A_{n} = {det.text(compact=True)}",
            claimed=claim,
            printed_matrix_det=linalg.det(bz.printed_claim_matrix(n)) if n >= 2 else None,
            closed=not outside,
        )
    return rep


def suite_characters(cfg: Config) -> Report:
    rep = Report("characters", asdict(cfg))
    D = cfg.level
    for variant, space in (("barred", "Fbar"), ("full", "F")):
        diff = ch.compare_series(ch.enumerate_character(space, D), ch.product_formula(D, variant), cfg.charge_window)
        rep.add(f"characters.product.{variant}", diff.passed, f"{diff.matched} coefficients", mismatches=diff.mismatches[:10])
    prod = ch.product_formula(D)
    rep.add("characters.symmetry", ch.flip(prod) == prod and ch.flip(ch.enumerate_character("Fbar", D)) == ch.enumerate_character("Fbar", D), "(z, p) -> (1/z, 1/p)")
    for l in range(-2, 3):
        r = ch.virasoro_specialization(l, D)
        rep.add(f"characters.virasoro.l={l:+d}", r.passed, " ".join(x.text(compact=True) for x in r.enumerated), formula=r.formula)
    rep.add("characters.diagonality", ch.diagonality_witness(min(D, 8)), "L_0, Wt_0 eigenvalues match the grading")
    return rep


def suite_exactseq(cfg: Config) -> Report:
    rep = Report("exactseq", asdict(cfg))
    for l in range(-2, 3):
        reps = [bz.check_embedding(l, d, 5) for d in range(cfg.level + 1)]
        rep.add(
            f"exactseq.kernel_c0.l={l:+d}",
            all(r.passed for r in reps),
            "dims " + " ".join(f"{r.dim_m}/{r.dim_kernel}" for r in reps),
            offset=bz.level_offset(l),
        )
    scan = w3.scan_singular_vectors("Fbar^0", cfg.level, cfg.modes)
    rep.add("exactseq.singular.Fbar0", not scan, "none above the vacuum" if not scan else f"levels {sorted(scan)}")
    scan = w3.scan_singular_vectors("F^-1", cfg.level, cfg.modes)
    b0 = ff.apply_mode(("b", 0), FockState.vacuum())
    found = [x.render() for x in scan.get(0, [])]
    rep.add("exactseq.singular.b0_vacuum", found == [b0.render()], ", ".join(found) or "none", all_levels=sorted(scan))
    ns = w3.nonsplit_check(0, 4, 2)
    rep.add("exactseq.nonsplit.l=0", ns.certificate, f"{ns.unknowns} unknowns, {ns.equations} equations, feasible={ns.feasible}")
    for l in (-1, 0, 1):
        r = w3.cyclicity_check(l, cfg.level)
        rep.add(f"exactseq.cyclic.l={l:+d}", r.passed, f"span {r.span_dims}", graded=r.graded_dims)
    return rep


_RUNNERS = {
    "dhat": suite_dhat,
    "fms": suite_fms,
    "w3": suite_w3,
    "lemma2": suite_lemma2,
    "lemma3": suite_lemma3,
    "characters": suite_characters,
    "exactseq": suite_exactseq,
}


def run_suite(name: str, cfg: Config = Config()) -> Report:
    if name != "all" and name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    table = wick.CORRUPTED_CONTRACTIONS if cfg.corrupt_contractions else None
    ctx = wick.contraction_table(table) if table else contextlib.nullcontext()
    with ctx:
        if name != "all":
            return _RUNNERS[name](cfg)
        rep = Report("all", asdict(cfg))
        for n in SUITES:
            rep.extend(_RUNNERS[n](cfg))
        return rep

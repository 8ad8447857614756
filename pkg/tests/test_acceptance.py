"""Acceptance criteria 1-12, each reported as one PASS/FAIL line."""

import pytest

from voacheck import bosonization as bz
from voacheck import suites


@pytest.fixture(scope="module")
def reports():
    cache = {}

    def get(name, **cfg):
        key = (name, tuple(sorted(cfg.items())))
        if key not in cache:
            cache[key] = suites.run_suite(name, suites.Config(**cfg))
        return cache[key]

    return get


def _all(checks):
    return bool(checks) and all(c.passed for c in checks)


def _failed(checks):
    return [c.id for c in checks if not c.passed]


def test_criterion_01_fms(reports, record_criterion):
    c = reports("fms", level=6, modes=4).get("fms.consistency")
    assert record_criterion(1, c.passed, c.summary)


def test_criterion_02_representation(reports, record_criterion):
    rep = reports("dhat", level=6, modes=3)
    rep_c, cen = rep.get("dhat.representation"), rep.get("dhat.central_scalar")
    assert record_criterion(2, rep_c.passed and cen.passed, f"{rep_c.summary}; {cen.summary}")


def test_criterion_03_jacobi(reports, record_criterion):
    c = reports("dhat", level=6, modes=3).get("dhat.jacobi")
    assert record_criterion(3, c.passed, c.summary)


def test_criterion_04_w3_opes(reports, record_criterion):
    checks = reports("w3", level=8, modes=3).select("w3.ope.")
    assert record_criterion(4, _all(checks), f"{len(checks)} pole coefficients of TT, TW, WW; failed {_failed(checks)}")


def test_criterion_05_w3_commutators(reports, record_criterion):
    rep = reports("w3", level=8, modes=3)
    rels = rep.select("w3.rel.")
    central = rep.get("w3.virasoro_central")
    ok = _all(rels) and central.passed and central.summary == "[L_2, L_-2] = 4 L_0 - 1"
    assert record_criterion(5, ok, f"{len(rels)} relation families on F to level 8; {central.summary}")


def test_criterion_06_zero_modes(reports, record_criterion):
    rep = reports("w3", level=8, modes=3)
    opes = rep.select("w3.zero_mode.ope.")
    fams = [c for c in rep.select("w3.zero_mode.") if c not in opes]
    ok = _all(opes) and len(fams) == 8 and _all(fams)
    assert record_criterion(6, ok, f"{len({c.id.split('.')[3] for c in opes})} OPEs, {len(fams)} commutator families; failed {_failed(opes + fams)}")


def test_criterion_07_lemma2(reports, record_criterion):
    rep = reports("lemma2", level=5, modes=3, charge_window=2)
    expand = rep.select("lemma2.expand.")
    published = rep.select("lemma2.published.")
    verdict_recorded = all("template" in c.detail for c in expand)
    ok = _all(expand) and _all(published) and verdict_recorded
    detail = (
        f"state checks {'ok' if _all(expand) else 'failed'} for n <= 3; "
        f"published expansions mismatched: {_failed(published) or 'none'}"
    )
    assert record_criterion(7, ok, detail)


def test_criterion_08_lemma3(reports, record_criterion):
    rep = reports("lemma3", level=6, modes=2)
    rw = rep.select("lemma3.rewrite.")
    dets = rep.select("lemma3.det.")
    ok = _all(rw) and _all(dets)
    bad = ", ".join(f"n={c.id[-2:]}: {c.summary.split('= ')[1]} vs {c.detail['claimed'].text(compact=True)}" for c in dets if not c.passed)
    detail = f"{len(rw)} rewrites {'verified' if _all(rw) else 'FAILED'}; determinant mismatches {bad or 'none'}"
    assert record_criterion(8, ok, detail)


def test_criterion_09_characters(reports, record_criterion):
    rep = reports("characters", level=10, charge_window=3)
    checks = rep.select("characters.product.") + rep.select("characters.virasoro.")
    assert record_criterion(9, _all(checks), f"{len(checks)} comparisons to q^10; failed {_failed(checks)}")


def test_criterion_10_kernel_c0(record_criterion):
    bad = []
    for l in range(-2, 3):
        for d in range(9):
            r = bz.check_embedding(l, d, image_level=5)
            if not r.passed:
                bad.append((l, d))
    assert record_criterion(10, not bad, f"ker c(0) vs M^l for |l| <= 2, level <= 8; failures {bad or 'none'}")


def test_criterion_11_module_structure(reports, record_criterion):
    rep = reports("exactseq", level=6, modes=3)
    ids = ["exactseq.singular.Fbar0", "exactseq.singular.b0_vacuum", "exactseq.nonsplit.l=0"] + [
        f"exactseq.cyclic.l={l:+d}" for l in (-1, 0, 1)
    ]
    checks = [rep.get(i) for i in ids]
    assert record_criterion(11, _all(checks), f"failed {_failed(checks)}")


def test_criterion_12_cross_oracle(reports, record_criterion):
    checks = reports("w3", level=8, modes=3).select("w3.cross_oracle.")
    assert record_criterion(12, _all(checks), f"{len(checks)} cross-oracle groups; failed {_failed(checks)}")

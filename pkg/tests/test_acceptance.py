"""The twelve acceptance criteria; each test prints one PASS/FAIL line."""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from virw.config import SUITES, RunConfig
from virw.report import FAIL
from virw.suites import run_suites


def _line(n, ok, text):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return ok


def _failures(rep, prefix=""):
    return [r.check for r in rep.records if r.status == FAIL and r.check.startswith(prefix)]


def test_criterion_01_axioms(suite_run):
    reports, timings = suite_run
    rep = reports["axioms"]
    families = {r.inputs["algebra"]["family"] for r in rep.records if "sample" in r.inputs}
    samples = {r.inputs["sample"] for r in rep.records if "sample" in r.inputs}
    per_sample = len([r for r in rep.records if r.inputs.get("sample") == 0])
    ok = rep.passed and len(samples) == 10 and per_sample == 12 and timings["axioms"] <= 60
    _line(1, ok, f"axioms on 12 catalog algebras x {len(samples)} seeds, window 4, {timings['axioms']:.1f}s")
    assert {"Witt", "FrakL", "Vir0Beta", "AffineVirasoro", "QSuper", "WH", "MapAlgebra"} <= families
    assert ok, _failures(rep)


def test_criterion_02_binomial_brackets(suite_run):
    rep = suite_run[0]["binomial-brackets"]
    ok = rep.passed and len(rep.records) == 8
    _line(2, ok, "both (t-1)-power bracket identities, k,l <= 4, |i|,|j| <= 4, four betas")
    assert ok, _failures(rep)


def test_criterion_03_filtration(suite_run):
    rep = suite_run[0]["filtration"]
    _line(3, rep.passed, "[a_1,a_k] in a_{k+1} for k <= 3; projection to ghat is a homomorphism with a_1 in its kernel")
    assert rep.passed, _failures(rep)


def test_criterion_04_t_closure(suite_run):
    rep = suite_run[0]["t-subalgebra"]
    _line(4, rep.passed, "T-generator brackets in Ubar normal form, [T,d0] = [T,A] = 0, indices <= 4")
    assert rep.passed, _failures(rep)


def test_criterion_05_iota(suite_run):
    rep = suite_run[0]["iota"]
    _line(5, rep.passed, "iota images of d_i, x_s(i) for |i| <= 5 and random round trips")
    assert rep.passed, _failures(rep)


def test_criterion_06_differentiators(suite_run):
    rep = suite_run[0]["annihilators"]
    checks = {r.check for r in rep.records}
    ok = rep.passed and any(c.startswith("minimal Omega order") for c in checks)
    _line(6, ok, "Omega^(2) = 2b(1-b), Omega^(3) V = 0, OmegaBar^(2) F = 0, minimal orders 3/2/2")
    assert ok, _failures(rep)


@pytest.mark.xfail(strict=True, reason="the stated collapse identity differs from the computed one by a global sign")
def test_criterion_07_collapse_identity_as_stated(suite_run):
    rep = suite_run[0]["omega-collapse"]
    stated = _failures(rep, "collapse identity as stated")
    corrected = _failures(rep, "collapse identity with corrected sign")
    _line(7, not stated, f"collapse residual 0 as stated: {len(stated)} of 12 cells nonzero "
                         f"(sign-corrected form: {12 - len(corrected)} of 12 cells zero)")
    assert not stated, stated


def test_criterion_08_jet_modules(suite_run):
    rep = suite_run[0]["jet-modules"]
    probes = [r for r in rep.records if r.check.startswith("simplicity probe")]
    drops = sum(1 for r in probes if r.got["rank_drop"])
    _line(8, rep.passed, f"tensor module axioms over every ring-free algebra; rank drops at {drops} boundary cases only")
    assert rep.passed, _failures(rep)
    assert drops == 6


def test_criterion_09_beta1(suite_run):
    rep = suite_run[0]["beta1-exceptional"]
    _line(9, rep.passed, "exceptional beta=1 module is a module and violates the tensor shift relation")
    assert rep.passed, _failures(rep)


def test_criterion_10_consequences(suite_run):
    reps = [suite_run[0]["worked-examples"], suite_run[0]["map-evaluation"]]
    ok = all(r.passed for r in reps)
    _line(10, ok, "double sum kills F for beta in {0,-1,2}; G(i) kill q Jet modules; evaluation modules")
    assert ok, [_failures(r) for r in reps]


def test_criterion_11_cover(suite_run):
    rep = suite_run[0]["cover"]
    kinds = {r.inputs["kind"] for r in rep.records}
    ok = rep.passed and kinds == {"W", "I"}
    _line(11, ok, "pi equivariance, evaluation compatibility, rank bound, reduction soundness")
    assert ok, _failures(rep)


def test_criterion_12_runtime_and_determinism(suite_run):
    reports, timings = suite_run
    total = sum(timings.values())
    cfg = RunConfig()
    t0 = time.perf_counter()
    again = run_suites(cfg, jobs=4)
    parallel = time.perf_counter() - t0
    first = "".join(reports[n].to_jsonl() for n in SUITES)
    second = "".join(r.to_jsonl() for r in again)
    ok = total <= 300 and first == second
    _line(12, ok, f"full suite {total:.1f}s sequential, {parallel:.1f}s on 4 workers; reports byte-identical: {first == second}")
    assert ok

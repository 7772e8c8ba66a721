import json
import os

import jsonschema
import pytest

from semidirect import verifier
from semidirect.monoid import load

SCHEMA_DIR = os.path.join(os.path.dirname(verifier.__file__), "schemas")

# every claim family the suite is meant to exercise, keyed by manifest topic
REQUIRED = {
    "idempotents of S(M)": ["SREG-1"],
    "regularity of S(M)": ["SREG-2"],
    "preimage inclusions": ["INCL-1", "INCL-2", "INCL-3"],
    "R-side relations on S(M)": ["RREL-1", "RREL-2", "RREL-3", "RREL-4", "RREL-5", "RREL-6"],
    "L-side relations on S(M)": ["LREL-1", "LREL-2", "LREL-3", "LREL-4", "LREL-5", "LREL-6", "LREL-7"],
    "subacts at (M,1)": ["FINITE-R", "FINITE-L", "FINITE-R-GENS"],
    "right ideal Howson": ["SRIH-PRINCIPAL", "SRIH-K"],
    "left co-ordinate systems": ["LCOORD-PRINCIPAL", "LCOORD-D", "LCOORD-EMPTY", "LCOORD-CANCEL"],
    "chain example": ["CHAIN-COORD"],
    "diamond-stack example": ["DSTACK"],
    "finitely right equated": ["FRE-RABUND"],
    "finitely left equated": ["RCANC"],
    "skeletons": ["SKELETON"],
    "Y-sequences": ["EASYSEQ"],
    "Fountain example": ["FOUNTAIN-R-ANNIH", "FOUNTAIN-SHADOW"],
    "presented semilattice example": ["LABUND-SHADOW"],
    "LCM monoids": ["LCM-GROUP"],
    "ample monoids": ["AMPLE-E"],
    "congruence generation": ["CLOSURE-ORACLE", "WSEQ"],
}


def _schema(name):
    with open(os.path.join(SCHEMA_DIR, name)) as fh:
        return json.load(fh)


def test_manifest_covers_required_claims():
    by_id = verifier.CHECKS_BY_ID
    for topic, ids in REQUIRED.items():
        for cid in ids:
            assert cid in by_id, cid
            assert by_id[cid].topic == topic, cid
    assert len(by_id) == len(verifier.CHECKS)


def test_manifest_hash_is_stable():
    h = verifier.manifest_hash()
    assert h == verifier.manifest_hash() and len(h) == 12
    assert h in verifier.version_string()


def test_unknown_check():
    with pytest.raises(verifier.UnknownCheckError):
        verifier.run_suite(verifier.SuiteConfig(checks=["NOPE"]))


def test_restricted_run_and_schema():
    rep = verifier.run_suite(verifier.SuiteConfig(checks=["SREG-1", "RREL-4", "FINITE-R-GENS"], order_max=3))
    data = rep.as_dict()
    jsonschema.validate(data, _schema("verify_report.json"))
    assert rep.ok and [r["check_id"] for r in data["results"]] == ["FINITE-R-GENS", "RREL-4", "SREG-1"]


def test_catalog_restriction():
    rep = verifier.run_suite(verifier.SuiteConfig(checks=["FOUNTAIN-R-ANNIH"], catalog=["fountain(2)"]))
    r = rep.results[0]
    assert r.status == "pass" and r.instances == 1


def test_mutation_is_caught_and_replays(tmp_path):
    cfg = verifier.SuiteConfig(checks=["SREG-1"], mutate=True, out_dir=str(tmp_path))
    rep = verifier.run_suite(cfg)
    r = rep.results[0]
    assert r.status == "fail" and not rep.ok
    path = r.counterexample["file"]
    assert os.path.exists(path)
    mon = os.path.join(tmp_path, r.counterexample["monoid_file"])
    assert load(mon).order >= 1
    assert verifier.replay_counterexample(path) == r.counterexample["instance"]
    jsonschema.validate(rep.as_dict(), _schema("verify_report.json"))


def test_sampled_checks_are_labelled_and_seeded():
    a = verifier.run_suite(verifier.SuiteConfig(checks=["SRIH-K"], order_max=4, seed=5))
    b = verifier.run_suite(verifier.SuiteConfig(checks=["SRIH-K"], order_max=4, seed=5))
    assert a.results[0].status == "sampled-pass" and a.seed == 5
    assert a.results[0].instances == b.results[0].instances


def test_search_examples():
    res = verifier.search_counterexample("principally-right-howson", range(1, 6))
    assert res is not None and res.monoid.order == 5
    assert verifier.search_counterexample("S-idempotents-semilattice", range(1, 5)) is None
    fails, examined = verifier.count_failures("S-regular", range(1, 5))
    assert fails == examined > 0


def test_search_writes_file(tmp_path):
    out = str(tmp_path / "f.mon")
    res = verifier.search_counterexample("left-1-coordinated", range(1, 4), out=out)
    assert res.file == out and load(out) == res.monoid


def test_search_unknown_predicate():
    with pytest.raises(verifier.UnknownCheckError):
        verifier.search_counterexample("nope")


def test_finite_r_generator_counts():
    counts = verifier.finite_r_generator_counts()
    ks = sorted(counts)
    assert all(counts[a] <= counts[b] for a, b in zip(ks, ks[1:]))


def test_skeleton_statistics_on_s_u2(su2, u2):
    from semidirect.relations import right_annihilator
    x = su2.encode(0b01, 1)
    st = verifier.skeleton_statistics(su2, [(0, su2.encode(0, 1))], "right", right_annihilator(su2, x))
    assert max(st["lengths"]) <= 2 and st["skeletons"] >= 1

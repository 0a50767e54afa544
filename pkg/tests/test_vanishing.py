"""Experiment harness: config validation, trial reports, serialization."""

import json
from fractions import Fraction

import pytest

from hesnil import (
    ConfigError,
    ExperimentConfig,
    VanishingReport,
    alpha_bound,
    build_member,
    emit_report,
    isotropy_check,
    load_report_json,
    parse,
    pd_qt_check,
    render_report,
    run_vanishing,
    run_vanishing_full,
)

BASE = {"n": 4, "d": 3, "generator": {"kind": "ph"}, "trials": 2, "seed": 7,
        "t_order": 4}

GOLDEN_TRIAL0 = {
    "provenance": {"kind": "ph", "trial": 0, "trial_seed": 7000021,
                   "n": 4, "d": 3, "map": ["z2^2", "0"]},
    "hn_verdict": True,
    "vanishing_flags": [False, True, True, True],
    "deg_t": 1,
    "bound": "6",
    "bound_respected": True,
    "isotropy_pass": {"derivative_ideal": True, "pd_on_q": True},
}

GOLDEN_CSV = (
    "provenance,hn_verdict,m1,m2,m3,m4,deg_t,bound,bound_respected,"
    "isotropy_derivative_ideal,isotropy_pd_on_q\n"
    '"{""d"": 3, ""kind"": ""ph"", ""map"": [""z2^2"", ""0""], ""n"": 4, '
    '""trial"": 0, ""trial_seed"": 7000021}",true,false,true,true,true,'
    "1,6,true,true,true\n"
    '"{""d"": 3, ""kind"": ""ph"", ""map"": [""(2-3/2*i)*z2^2"", ""0""], '
    '""n"": 4, ""trial"": 1, ""trial_seed"": 7000022}",true,false,true,true,'
    "true,1,6,true,true,true\n"
)


def test_alpha_bound_table():
    assert alpha_bound(2, 4) == Fraction(0)
    assert alpha_bound(3, 4) == Fraction(3)
    assert alpha_bound(4, 4) == Fraction(12)
    assert alpha_bound(4, 3) == Fraction(6)
    assert isinstance(alpha_bound(3, 5), Fraction)
    with pytest.raises(ValueError):
        alpha_bound(3, 2)
    with pytest.raises(ValueError):
        alpha_bound(0, 4)


def test_config_defaults():
    cfg = ExperimentConfig.from_dict(
        {"n": 3, "d": 4, "generator": {"kind": "w"}, "trials": 1, "seed": 0})
    # bound is 3, so t_order defaults to 5 and z_degree to 5*2 + 2
    assert cfg.t_order == 5
    assert cfg.z_degree == 12
    assert cfg.format == "json"
    assert cfg.out is None
    assert cfg.parallelism == 1
    assert cfg.generator_params == {}
    d2 = ExperimentConfig.from_dict(
        {"n": 4, "d": 2, "generator": {"kind": "w"}, "trials": 1, "seed": 0})
    assert d2.t_order == 4 and d2.z_degree == 2


def test_config_validation_errors():
    def reject(overrides, *, drop=None):
        data = {**BASE, **overrides}
        if drop:
            del data[drop]
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(data)

    reject({}, drop="generator")
    reject({"extra": 1})
    reject({"generator": {"kind": "ph", "bogus": 1}})
    reject({"generator": {"kind": "nope"}})
    reject({"generator": {"kind": "ph", "params": 3}})
    reject({"n": 1})
    reject({"d": 1})
    reject({"trials": -1})
    reject({"seed": "7"})
    reject({"t_order": 0})
    reject({"z_degree": 5})
    reject({"format": "xml"})
    reject({"out": 7})
    reject({"parallelism": 0})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict([])
    # derived t_order would be 14; force an explicit choice instead
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(
            {"n": 4, "d": 4, "generator": {"kind": "w"}, "trials": 1, "seed": 0})


def test_build_member_errors():
    with pytest.raises(ConfigError):
        build_member(4, 3, "w", {"count": 3}, 1)
    with pytest.raises(ConfigError):
        build_member(4, 3, "wtilde", {"counts": [2, 1]}, 1)
    with pytest.raises(ConfigError):
        build_member(4, 3, "wtilde", {"counts": [0, 0]}, 1)
    with pytest.raises(ConfigError):
        build_member(4, 3, "ug", {"k": 3}, 1)
    with pytest.raises(ConfigError):
        build_member(5, 3, "pg", {}, 1)
    with pytest.raises(ConfigError):
        build_member(2, 3, "ph", {}, 1)
    with pytest.raises(ConfigError):
        build_member(4, 3, "mystery", {}, 1)


def test_build_member_provenance_schema():
    p, prov = build_member(4, 3, "w", {}, 11)
    assert prov["kind"] == "w" and prov["n"] == 4 and prov["d"] == 3
    assert len(prov["vectors"]) == 2
    _, prov = build_member(4, 3, "wtilde", {}, 11)
    assert [len(fam) for fam in prov["vectors"]] == [1, 1]
    _, prov = build_member(4, 3, "ug", {}, 11)
    assert "inner" in prov and len(prov["vectors"]) == 2
    _, prov = build_member(4, 3, "pg", {}, 11)
    assert "inner" in prov
    _, prov = build_member(4, 3, "ph", {}, 11)
    assert len(prov["map"]) == 2


def test_golden_report():
    cfg = ExperimentConfig.from_dict(dict(BASE))
    reports, failures = run_vanishing_full(cfg)
    assert failures == []
    assert len(reports) == 2
    assert reports[0].to_json_dict() == GOLDEN_TRIAL0
    assert render_report(reports, "csv") == GOLDEN_CSV


def test_all_kinds_run_clean():
    for kind in ("w", "wtilde", "ug", "pg", "ph"):
        cfg = ExperimentConfig.from_dict(
            {"n": 4, "d": 3, "generator": {"kind": kind}, "trials": 2,
             "seed": 31, "t_order": 3})
        reports, failures = run_vanishing_full(cfg)
        assert failures == []
        for r in reports:
            assert r.hn_verdict
            assert len(r.vanishing_flags) == 3
            assert r.bound == Fraction(6)
            assert r.bound_respected
            if kind == "wtilde":
                # mixed degrees, so the homogeneous-only checks do not apply
                assert r.isotropy_pass is None
            else:
                assert r.isotropy_pass == {"derivative_ideal": True,
                                           "pd_on_q": True}


def test_degree_two_path():
    cfg = ExperimentConfig.from_dict(
        {"n": 4, "d": 2, "generator": {"kind": "w"}, "trials": 3, "seed": 5})
    reports, failures = run_vanishing_full(cfg)
    assert failures == []
    for r in reports:
        assert r.hn_verdict
        assert all(r.vanishing_flags)
        assert r.deg_t == 0
        assert r.bound is None
        assert r.bound_respected
        assert r.isotropy_pass == {"derivative_ideal": None, "pd_on_q": True}


def test_runs_are_deterministic():
    cfg = ExperimentConfig.from_dict(
        {"n": 4, "d": 3, "generator": {"kind": "w"}, "trials": 3, "seed": 42,
         "t_order": 3})
    first = render_report(run_vanishing(cfg), "json")
    second = render_report(run_vanishing(cfg), "json")
    assert first == second


def test_parallel_matches_serial():
    serial = ExperimentConfig.from_dict(
        {"n": 4, "d": 3, "generator": {"kind": "ph"}, "trials": 3, "seed": 13,
         "t_order": 3})
    parallel = ExperimentConfig.from_dict(
        {"n": 4, "d": 3, "generator": {"kind": "ph"}, "trials": 3, "seed": 13,
         "t_order": 3, "parallelism": 2})
    assert run_vanishing(serial) == run_vanishing(parallel)


def test_render_edge_cases():
    assert render_report([], "json") == "[]\n"
    header = ("provenance,hn_verdict,deg_t,bound,bound_respected,"
              "isotropy_derivative_ideal,isotropy_pd_on_q\n")
    assert render_report([], "csv") == header
    with pytest.raises(ValueError):
        render_report([], "xml")
    # None bound and None isotropy serialize as empty CSV cells
    r = VanishingReport(provenance={"kind": "w"}, hn_verdict=True,
                        vanishing_flags=[True], deg_t=0, bound=None,
                        bound_respected=True, isotropy_pass=None)
    lines = render_report([r], "csv").splitlines()
    assert lines[1] == '"{""kind"": ""w""}",true,true,0,,true,,'


def test_emit_and_load_roundtrip(tmp_path):
    cfg = ExperimentConfig.from_dict(dict(BASE))
    reports = run_vanishing(cfg)
    path = tmp_path / "report.json"
    text = emit_report(reports, "json", str(path))
    assert path.read_text(encoding="utf-8") == text
    assert json.loads(text)[0] == GOLDEN_TRIAL0
    loaded = load_report_json(str(path))
    assert loaded == reports


def test_isotropy_check_direct():
    p = parse("(z1+i*z2)^3")
    results = isotropy_check(p, 3, 2)
    assert set(results) == {(label, m)
                            for label in ("sigma^2", "partial_1", "partial_2")
                            for m in (0, 1, 2)}
    assert all(results.values())
    with pytest.raises(ValueError):
        isotropy_check(parse("(z1+i*z2)^2"), 2, 1)
    with pytest.raises(ValueError):
        isotropy_check(parse("z1^3 + z1"), 3, 1)
    with pytest.raises(ValueError):
        isotropy_check(parse("z1^2*z2 + z2^3"), 3, 1)
    with pytest.raises(ValueError):
        isotropy_check(p, 3, -1)


def test_pd_qt_check_direct():
    assert pd_qt_check(parse("v1*(u2+i*v2)^2"), 3)
    assert pd_qt_check(parse("(z1+i*z2)^2"), 3)
    with pytest.raises(ValueError):
        pd_qt_check(parse("(z1+i*z2)^3"), 0)
    with pytest.raises(ValueError):
        pd_qt_check(parse("z1^3 + z1"), 2)
    with pytest.raises(ValueError):
        pd_qt_check(parse("z1^2*z2 + z2^3"), 2)

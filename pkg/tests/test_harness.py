import json

import numpy as np
import pytest

from cantorprobe.cantor import RemovalSchedule
from cantorprobe.errors import CheckFailed, ConfigError
from cantorprobe.harness import (
    ExperimentConfig,
    FunctionSpec,
    emit,
    parse_config,
    run_construct,
    run_energy_profile,
    run_fubini,
    run_graph,
    run_prevalence,
)
from cantorprobe.harness import cli
from cantorprobe.harness.emit import report_csvs, report_json

FULL = """
# every key once
cantor = middle:0.3333333333333333
depth = 10
phi = embed:fat
f = series:seed=9,m=12,decay=geometric:0.5
seeds = 1,2
n = 1.5
lambda_samples = 7
lambda_random = 2
lambda_seed = 0x10
lambda_points = 0.25
t = 0.3,0.5
fubini_n = 1,4
fubini_depth = 6
energy_depth = 6
profile_depths = 3:6
box_base = 2
box_jmin = 1
box_jmax = 8
slope_threshold = 0.75
graph_tol = 0.2
product_depth = 6
product_cap = 100000
max_atoms = 4096
out = results
threads = 2
deterministic = yes
"""


def test_parse_full_config():
    cfg = parse_config(FULL)
    assert cfg.cantor == RemovalSchedule.middle(1 / 3)
    assert cfg.phi == RemovalSchedule.fat()
    assert cfg.f == FunctionSpec("series", seed=9, m=12, decay=0.5)
    assert cfg.seeds == (1, 2) and cfg.lambda_seed == 16
    assert cfg.profile_depths == (3, 4, 5, 6)
    assert cfg.t == (0.3, 0.5) and cfg.deterministic and cfg.threads == 2
    lams = cfg.lambdas()
    assert len(lams) == 10 and lams == sorted(lams)
    assert 0.25 in lams and -1.5 in lams and 1.5 in lams
    assert all(-1.5 <= v <= 1.5 for v in lams)
    assert cfg.echo()["phi"] == "embed:fat"


@pytest.mark.parametrize("text", [
    "bogus = 1",
    "depth = 3\ndepth = 4",
    "depth",
    "depth = many",
    "cantor = sierpinski",
    "phi = fat",
    "f = series:seed=1",
    "f = series:seed=1,m=4,decay=harmonic:2",
    "n = 0.5",
    "lambda_samples = 2",
    "depth = 20",
    "deterministic = perhaps",
])
def test_bad_configs(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_function_specs():
    assert FunctionSpec.parse("zero").kind == "zero"
    assert FunctionSpec.parse("scaled-phi:-1").scale == -1.0
    spec = FunctionSpec.parse("series:seed=3,m=5,decay=geometric:0.25")
    assert FunctionSpec.parse(spec.text) == spec


def test_overrides():
    cfg = ExperimentConfig().with_overrides(seed=5, depth=12, out="x", threads=None)
    assert cfg.seeds == (5,) and cfg.depth == 12 and cfg.out == "x" and cfg.threads == 1
    assert cfg.with_overrides(depth=14).f.m == 14


def small(**kw):
    base = dict(depth=10, energy_depth=6, box_jmax=9, lambda_samples=5, n=2.0, t=(0.5,))
    base.update(kw)
    return ExperimentConfig(**base)


def test_collapse_on_the_exceptional_lambda():
    cfg = small(f=FunctionSpec("scaled-phi", scale=-1.0), depth=14, box_jmax=11)
    report = run_prevalence(cfg)
    (run,) = report.runs
    by_lam = {r.lam: r for r in run.records}
    assert sorted(by_lam) == [-2.0, -1.0, 0.0, 1.0, 2.0]
    assert by_lam[1.0].collapse and by_lam[1.0].estimate.slope <= 0.05
    assert by_lam[1.0].energy.infinite
    for lam in (0.0, 2.0):
        assert not by_lam[lam].collapse and by_lam[lam].estimate.slope >= 0.9
    assert report.summary["collapse_lambdas"] == [1.0]


def _brute_collision(f, phi, lam, d):
    vals = [f.evaluate(a) + lam * phi.evaluate(a) for a in (format(i, f"0{d}b") for i in range(2 ** d))]
    return any(vals[i] == vals[j] for i in range(len(vals)) for j in range(i + 1, len(vals)))


@pytest.mark.parametrize("spec", [FunctionSpec("scaled-phi", scale=-1.0), FunctionSpec("zero"),
                                  FunctionSpec("series", seed=4, m=6)])
def test_collapse_flags_match_brute_force(spec):
    d = 6
    cfg = small(f=spec, depth=d, energy_depth=d, box_jmax=5, lambda_points=(1.0, 0.0, 0.5))
    report = run_prevalence(cfg)
    phi = cfg.phi_function(d)
    for run in report.runs:
        f = spec.build(phi, seed=run.seed, m=d)
        for r in run.records:
            assert r.collapse == _brute_collision(f, phi, r.lam, d)
            if r.collapse:
                # a flagged lambda is an enumerated pair root
                fv, pv = f.values(d), phi.values(d)
                roots = {-(fv[i] - fv[j]) / (pv[i] - pv[j])
                         for i in range(2 ** d) for j in range(i + 1, 2 ** d)}
                assert r.lam in roots


def test_zero_f_slopes_follow_scaling():
    cfg = small(f=FunctionSpec("zero"), depth=14, box_jmax=11, lambda_samples=0,
                lambda_points=(-2.0, -1.0, -0.5, 0.5, 1.0, 2.0))
    (run,) = run_prevalence(cfg).runs
    by_lam = {r.lam: r for r in run.records}
    ref = by_lam[1.0].estimate
    for lam, r in by_lam.items():
        assert abs(r.estimate.slope - ref.slope) <= 0.02
    # doubling the image shifts the dyadic count sequence by one scale exactly
    c1 = [c for _, c in ref.scales_all]
    c2 = [c for _, c in by_lam[2.0].estimate.scales_all]
    assert c2[:-1] == c1[1:]
    cm = [c for _, c in by_lam[-1.0].estimate.scales_all]
    assert all(abs(a - b) <= 1 for a, b in zip(cm, c1))


def test_prevalence_report_consistency():
    cfg = small(seeds=(1, 2))
    report = run_prevalence(cfg)
    assert [run.seed for run in report.runs] == [1, 2]
    for run in report.runs:
        assert len(run.records) == len(cfg.lambdas())
        slopes = [r.estimate.slope for r in run.records]
        assert run.summary["median_slope"] == float(np.median(slopes))
        assert run.summary["fraction_at_or_above_threshold"] == np.mean(np.array(slopes) >= 0.8)


def test_fubini_run():
    cfg = small(f=FunctionSpec("zero"), t=(0.5,), fubini_n=(1.0,), fubini_depth=8)
    (res,) = run_fubini(cfg).results
    assert res["ratio_tight"] == pytest.approx(1.0, abs=1e-9)
    cfg = small(seeds=(1, 2), t=(0.3, 0.5, 0.7, 0.9), fubini_n=(1.0, 4.0), fubini_depth=6)
    results = run_fubini(cfg).results
    assert len(results) == 16
    assert all(r["ratio_tight"] <= 1 and r["rhs_tight"] <= r["rhs_paper"] for r in results)


def test_energy_profile_run():
    cfg = small(t=(0.0, 0.5), profile_depths=tuple(range(4, 13)))
    report = run_energy_profile(cfg)
    zero, half = report.profiles
    assert [v["value"] for v in zero["values"]] == pytest.approx([1 - 2.0 ** -d for d in range(4, 13)])
    assert half["classification"] == "bounded"
    cfg = small(phi=RemovalSchedule.middle(1 / 3), t=(0.9,), profile_depths=tuple(range(4, 13)))
    assert run_energy_profile(cfg).profiles[0]["classification"] == "diverging"


def test_graph_zero_f_on_thirds():
    cfg = small(cantor=RemovalSchedule.middle(1 / 3), f=FunctionSpec("zero"), depth=12, box_jmax=11)
    report = run_graph(cfg)
    (run,) = report.runs
    assert abs(run["est_graph"]["slope"] - run["est_X"]["slope"]) <= 0.02
    assert report.passed and set(run["checks"]) == {"graph_upper"}


def test_construct():
    report, mu = run_construct(small(depth=4))
    assert report.data["distinct_points"] == 16 and len(report.data["lengths"]) == 5
    assert mu.to_csv().startswith("location,weight")


def test_emit_all_formats(tmp_path):
    report = run_prevalence(small())
    paths = [p for fmt in ("json", "csv", "svg") for p in emit(report, fmt, tmp_path, deterministic=True)]
    names = sorted(p.name for p in paths)
    assert names == ["prevalence.json", "prevalence.svg", "prevalence_seed1.csv"]
    doc = json.loads((tmp_path / "prevalence.json").read_text())
    assert doc["schema"] == 1 and "timestamp" not in doc and doc["kind"] == "prevalence"
    rows = (tmp_path / "prevalence_seed1.csv").read_text().splitlines()
    assert rows[0] == "lambda,slope,r2,energy,collapse"
    assert len(rows) - 1 == len(small().lambdas())
    svg = (tmp_path / "prevalence.svg").read_text()
    assert svg.startswith("<svg") and "href" not in svg
    assert "timestamp" in json.loads(report_json(report))


def test_csv_layouts():
    fub = report_csvs(run_fubini(small(fubini_n=(1.0,), fubini_depth=4)))
    assert fub["fubini.csv"].splitlines()[0] == "seed,t,n,lhs,rhs_tight,rhs_paper,ratio_tight"
    prof = report_csvs(run_energy_profile(small(profile_depths=(3, 4, 5))))
    assert prof["profile.csv"].splitlines() [0] == "depth,s,energy"
    graph = report_csvs(run_graph(small(depth=8, box_jmax=7, product_depth=6)))
    assert all(text.startswith("epsilon,count") for text in graph.values())


def test_thread_count_does_not_change_reports():
    one = report_json(run_prevalence(small(threads=1)), deterministic=True)
    three = report_json(run_prevalence(small(threads=3)), deterministic=True)
    assert one == three


# ---- CLI --------------------------------------------------------------------

def write(tmp_path, text):
    path = tmp_path / "exp.cfg"
    path.write_text(text)
    return str(path)


def test_cli_commands(tmp_path):
    cfg = write(tmp_path, "depth = 8\nenergy_depth = 6\nbox_jmax = 7\nlambda_samples = 5\n"
                          "profile_depths = 3:6\nproduct_depth = 6\nfubini_depth = 5\n")
    for cmd in ("construct", "energy-profile", "fubini", "prevalence"):
        out = tmp_path / cmd
        assert cli.main([cmd, "--config", cfg, "--out", str(out), "--deterministic"]) == 0
        assert any(out.glob("*.json"))
    assert (tmp_path / "construct" / "measure.csv").exists()
    assert (tmp_path / "prevalence" / "prevalence.svg").exists()


def test_cli_exit_codes(tmp_path, monkeypatch):
    assert cli.main(["prevalence", "--config", write(tmp_path, "nope = 1\n")]) == 1
    assert cli.main(["prevalence", "--config", str(tmp_path / "missing.cfg")]) == 1
    assert cli.main(["no-such-command"]) == 1
    # a generic f on the zero-dimensional space violates the graph lower bound at desk scale
    lean = write(tmp_path, "cantor = lean\ndepth = 12\n")
    assert cli.main(["graph", "--config", lean, "--out", str(tmp_path / "g")]) == 2
    assert (tmp_path / "g" / "graph.json").exists()

    def broken(cfg):
        raise CheckFailed("lhs > rhs_tight")

    monkeypatch.setattr(cli, "run_fubini", broken)
    assert cli.main(["fubini", "--out", str(tmp_path / "f")]) == 2


def test_cli_deterministic_reruns_are_identical(tmp_path):
    cfg = write(tmp_path, "depth = 8\nenergy_depth = 6\nbox_jmax = 7\nlambda_samples = 9\n")
    for k in (1, 2):
        assert cli.main(["prevalence", "--config", cfg, "--out", str(tmp_path / f"r{k}"),
                         "--deterministic", "--seed", "3"]) == 0
    for name in ("prevalence.json", "prevalence_seed3.csv", "prevalence.svg"):
        assert (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()

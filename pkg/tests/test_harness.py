import math
import re

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ebucb.agents import Bucb, Ebucb, QuantileSchedule, ThompsonSampling
from ebucb.approx import Mixture, UcbAdversary, ucb_adversary_switch_time
from ebucb.bandit import BernoulliEnv, RegretTrace
from ebucb.harness.cli import main
from ebucb.harness.config import ConfigError, build_configs, load_config, parse_config_text, with_horizon
from ebucb.harness.export import (
    ExportError,
    csv_kind,
    read_aggregate_csv,
    read_traces_csv,
    write_aggregate_csv,
    write_traces_csv,
)
from ebucb.harness.runner import aggregate, regret_slope, replication_seed, run_experiment, run_replication
from ebucb.harness.svg import emit_svg, render_svg

SMALL = """
# two agents on a misspecified posterior
name = small
mu = 0.7, 0.3
horizon = 200
replications = 3
agents = ebucb, thompson
scheme = mixture
w = 0.9
gamma_scale = 0.5
base_seed = 11
"""


def trace(values):
    v = np.asarray(values, dtype=float)
    return RegretTrace(v.size, v, np.zeros(2), 0)


def test_parse_and_build():
    cfgs = build_configs(parse_config_text(SMALL))
    assert [c.agent_label for c in cfgs] == ["ebucb", "thompson"]
    c = cfgs[0]
    assert c.mu == (0.7, 0.3) and c.horizon == 200 and c.replications == 3 and c.base_seed == 11
    assert c.scheme == Mixture(0.9, 0.5)
    assert isinstance(c.agent, Ebucb) and c.agent.schedule == QuantileSchedule(2.0, 0.0, 200)
    assert isinstance(cfgs[1].agent, ThompsonSampling)


@pytest.mark.parametrize("text", [
    "mu = 0.7, 0.3\nhorizon = 10\nbogus = 1",
    "mu = 0.7, 0.3\nhorizon = 10\nhorizon = 20",
    "mu = 0.7\nhorizon = 10",
    "mu = 0.7, 0.3\nhorizon = 0",
    "mu = 0.7, 0.3\nhorizon = ten",
    "mu = 0.7, 0.3\nhorizon = 10\nagents = greedy",
    "mu = 0.7, 0.3\nhorizon = 10\nscheme = other",
    "mu = 0.7, 0.3\nhorizon = 10\nno equals sign",
    "mu = 0.9, 0.5, 0.3\nhorizon = 10\nscheme = ts_adversary\nr = 2",
    "mu = 0.7, 0.3\nhorizon = 10\nscheme = mixture\nw = 2\ngamma_scale = 1",
])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        build_configs(parse_config_text(text))


def test_switch_time_solved_per_agent():
    kv = parse_config_text("mu = 0.7, 0.3\nhorizon = 500\nagents = ebucb, bucb\nscheme = ucb_adversary\nswitch_time = 100")
    for c in build_configs(kv):
        assert isinstance(c.scheme, UcbAdversary)
        assert ucb_adversary_switch_time(c.schedule, c.scheme.r) == 101
    ebucb, bucb = build_configs(kv)
    assert isinstance(bucb.agent, Bucb) and ebucb.scheme.r != bucb.scheme.r


def test_with_horizon_moves_schedule():
    c = with_horizon(build_configs(parse_config_text(SMALL))[0], 1000)
    assert c.horizon == 1000 and c.agent.schedule.horizon == 1000 and c.schedule.horizon == 1000


def test_preset_files_parse():
    from pathlib import Path
    files = sorted(Path(__file__).resolve().parents[1].joinpath("configs").glob("*.cfg"))
    assert len(files) >= 20
    for f in files:
        assert load_config(f)


def test_replication_is_deterministic_and_consistent():
    cfg = build_configs(parse_config_text(SMALL))[0]
    a, b = run_replication(cfg, 1), run_replication(cfg, 1)
    assert np.array_equal(a.cum_regret, b.cum_regret) and np.array_equal(a.actions, b.actions)
    env = BernoulliEnv(cfg.mu)
    assert a.cum_regret[-1] == pytest.approx(float(env.gaps @ a.pulls), abs=1e-9)
    assert np.all(np.diff(a.cum_regret) >= 0)
    assert sum(a.final_state.N) == cfg.horizon and a.pulls.tolist() == list(a.final_state.N)


def test_replications_independent_of_count():
    cfg = build_configs(parse_config_text(SMALL))[0]
    few = run_experiment(cfg)
    more = run_experiment(cfg.__class__(**{**cfg.__dict__, "replications": 5}))
    for x, y in zip(few, more):
        assert np.array_equal(x.cum_regret, y.cum_regret)
    assert replication_seed(11, 0) != replication_seed(11, 1)


def test_parallel_matches_serial():
    cfg = build_configs(parse_config_text(SMALL))[1]
    serial = run_experiment(cfg, jobs=1)
    parallel = run_experiment(cfg, jobs=2)
    assert all(np.array_equal(x.cum_regret, y.cum_regret) for x, y in zip(serial, parallel))


def test_exact_ebucb_regret_is_small():
    text = "mu = 0.7, 0.3\nhorizon = 1000\nreplications = 5\nagents = ebucb\nscheme = exact\nbase_seed = 3"
    for tr in run_experiment(build_configs(parse_config_text(text))[0]):
        assert tr.cum_regret[-1] < 40


def test_aggregate_examples():
    t = np.arange(1, 6, dtype=float)
    one = aggregate([trace(t)])
    assert np.all(one.stderr == 0) and np.array_equal(one.mean, t)
    two = aggregate([trace(t), trace(3 * t)])
    assert np.allclose(two.mean, 2 * t)
    pair = aggregate([trace(0 * t), trace(2 * t)])
    assert np.allclose(pair.stderr, t)
    with pytest.raises(ValueError):
        aggregate([trace(t), trace(t[:3])])
    with pytest.raises(ValueError):
        aggregate([])


@given(st.lists(st.floats(0, 1), min_size=1, max_size=30), st.integers(1, 6))
def test_aggregate_of_identical_traces(steps, r):
    cum = np.cumsum(steps)
    res = aggregate([trace(cum)] * r)
    assert np.allclose(res.mean, cum) and np.all(res.stderr == 0)


def test_regret_slope_of_line():
    t = np.arange(1, 101, dtype=float)
    assert regret_slope(0.4 * t + 3, 10, 100) == pytest.approx(0.4, abs=1e-12)


def test_csv_roundtrip_and_format(tmp_path):
    rng = np.random.default_rng(0)
    traces = [trace(np.cumsum(rng.random(4) / 3)) for _ in range(2)]
    path = tmp_path / "t.csv"
    write_traces_csv([("ebucb", "exact", i, tr) for i, tr in enumerate(traces)], path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "agent,scheme,rep,t,cum_regret" and len(lines) == 1 + 8
    back = read_traces_csv(path)
    for i, tr in enumerate(traces):
        assert np.array_equal(back[("ebucb", "exact", i)], tr.cum_regret)
    assert csv_kind(path) == "traces"

    res = [aggregate(traces, a, "exact") for a in ("ebucb", "bucb", "thompson")]
    agg = tmp_path / "a.csv"
    write_aggregate_csv(res, agg)
    assert len(agg.read_text().splitlines()) == 1 + 3 * 4
    for x, y in zip(res, read_aggregate_csv(agg)):
        assert (x.agent, x.scheme) == (y.agent, y.scheme)
        assert np.array_equal(x.mean, y.mean) and np.array_equal(x.stderr, y.stderr)
    assert csv_kind(agg) == "aggregate"


def test_csv_single_trace_rows(tmp_path):
    p = tmp_path / "one.csv"
    write_traces_csv([("a", "s", 0, trace([0.0, 0.4]))], p)
    assert p.read_text().splitlines() == ["agent,scheme,rep,t,cum_regret", "a,s,0,1,0.0", "a,s,0,2,0.4"]


def test_export_errors_carry_path(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,2\n")
    with pytest.raises(ExportError, match="bad.csv"):
        read_traces_csv(bad)
    with pytest.raises(ExportError, match="missing.csv"):
        read_aggregate_csv(tmp_path / "missing.csv")


def test_svg_contract():
    empty = render_svg([], "empty")
    assert empty.startswith("<svg") and empty.rstrip().endswith("</svg>") and "<polyline" not in empty
    flat = aggregate([trace(np.full(50, 2.0))], "a", "s")
    text = render_svg([flat], "flat")
    pts = re.search(r'<polyline points="([^"]+)"', text).group(1).split()
    ys = {p.split(",")[1] for p in pts}
    assert len(ys) == 1
    assert render_svg([flat], "flat", [("T0", 20)]) == render_svg([flat], "flat", [("T0", 20)])
    assert "stroke-dasharray" in render_svg([flat], "flat", [("T0", 20)])


def test_svg_emit_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError):
        emit_svg([], blocker / "sub" / "x.svg")


def test_cli_run_is_byte_reproducible(tmp_path, capsys):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(SMALL)
    outs = []
    for d in ("a", "b"):
        assert main(["run", "--config", str(cfg), "--out-dir", str(tmp_path / d), "--jobs", "1"]) == 0
        outs.append([(tmp_path / d / f).read_bytes() for f in ("small_traces.csv", "small_aggregate.csv", "small.svg")])
    assert outs[0] == outs[1]
    assert "RESULT ebucb" in capsys.readouterr().out
    assert main(["plot", "--in", str(tmp_path / "a" / "small_traces.csv"), "--out", str(tmp_path / "p.svg")]) == 0
    assert main(["plot", "--in", str(tmp_path / "a" / "small_aggregate.csv"), "--out", str(tmp_path / "q.svg")]) == 0
    assert (tmp_path / "q.svg").read_text().count("<polyline") == 2


def test_cli_seed_override_changes_traces(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(SMALL)
    main(["run", "--config", str(cfg), "--out-dir", str(tmp_path / "a"), "--jobs", "1"])
    main(["run", "--config", str(cfg), "--out-dir", str(tmp_path / "b"), "--jobs", "1", "--seed", "12"])
    assert (tmp_path / "a" / "small_traces.csv").read_bytes() != (tmp_path / "b" / "small_traces.csv").read_bytes()


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["adversary-check", "--scheme", "ts", "--epsilon", "0.5", "--alpha", "-1", "--r", "3"]) == 1
    out = capsys.readouterr().out
    assert re.search(r"^CHECK budget_ts_alpha-1_eps0.5 fail \S+ \S+$", out, re.M)
    assert main(["adversary-check", "--scheme", "ucb", "--epsilon", "0.5", "--alpha", "0", "--states", "5"]) == 0
    assert main(["adversary-check", "--scheme", "ts", "--epsilon", "0.5", "--alpha", "2"]) == 2
    assert main(["verify-divergence", "--trials", "0"]) == 2
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n")
    assert main(["plot", "--in", str(bad), "--out", str(tmp_path / "x.svg")]) == 2


def test_cli_verify_suites(capsys):
    assert main(["verify-divergence", "--trials", "10"]) == 0
    assert main(["verify-shift", "--trials", "40"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(re.match(r"^CHECK \S+ pass \S+ \S+$", ln) for ln in lines)

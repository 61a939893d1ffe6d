import math

import pytest

import wpcn_sched as w


def default_instance(n=6, seed=3, p_hap_w=1.0):
    cfg = w.ExperimentConfig()
    cfg.topology.n_users = n
    cfg.sys.p_hap_w = p_hap_w
    return w.draw_realization(cfg, seed)


def test_lambert_identity():
    for y in (-0.3, -0.01, 0.5, 10.0):
        x = w.lambert_w(y)
        assert abs(x * math.exp(x) - y) <= 1e-12 * max(1.0, abs(y))
    x = w.lambert_w(-0.1, w.Branch.lower)
    assert x < -1.0
    with pytest.raises(w.DomainError):
        w.lambert_w(-1.0)


def test_closed_form_matches_oracle():
    inst = default_instance()
    for user in inst.users:
        link = w.make_link(user, inst.sys)
        d = w.optimal_power(link, user.battery_j)
        o = w.bisection_oracle(link, user.battery_j)
        assert d.duration_s == pytest.approx(o.duration_s, rel=1e-9)
        assert d.power_w <= inst.sys.p_max_w


def test_schedulers_and_validator():
    inst = default_instance(n=6)
    f = w.fpa(inst.users, inst.sys)
    b = w.bfa(inst.users, inst.sys)
    assert f.total_length_s == pytest.approx(b.total_length_s, rel=1e-12)
    assert b.node_count == math.factorial(6)
    for name in ("MPA", "MTPA", "FPA", "BFA", "OTPA", "PCA"):
        s = w.run_algorithm(name, inst.users, inst.sys)
        assert sorted(s.order) == list(range(6))
        assert s.total_length_s >= f.total_length_s * (1 - 1e-12) or name == "PCA"
        assert w.validate_schedule(inst, s).passed


def test_penalty_is_non_increasing():
    inst = default_instance()
    link = w.make_link(inst.users[0], inst.sys)
    s0 = w.zero_penalty_start(link)
    starts = [s0 * i / 20 for i in range(25)]
    values = [w.penalty(link, s) for s in starts]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    assert values[-1] <= 1e-12


def test_errors_are_typed():
    with pytest.raises(w.ConfigError):
        w.run_algorithm("NOPE", [], w.SystemParams())
    with pytest.raises(w.ConfigError):
        w.run_sweep_csv('{"colour": 1}')
    big = default_instance(n=10)
    with pytest.raises(w.SizeCapExceeded):
        w.bfa(big.users, big.sys)


def test_sweep_csv_is_deterministic():
    cfg = '{"n_users": 4, "realizations": 3, "values": [1, 10], "algorithms": ["MPA", "FPA"]}'
    a = w.run_sweep_csv(cfg).splitlines()
    b = w.run_sweep_csv(cfg).splitlines()
    assert a[0] == "sweep_var,sweep_value,algorithm,seed,schedule_len_s,runtime_ns,node_count"
    assert len(a) == 1 + 2 * 2 * 3

    def mask(lines):
        return [",".join(f for i, f in enumerate(line.split(",")) if i != 5) for line in lines]

    assert mask(a) == mask(b)

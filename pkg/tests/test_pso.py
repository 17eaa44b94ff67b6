import json

import numpy as np
import pytest

from swarmcrit.dynamics import PhasePoint, SwarmParams, build_step_matrix, step_homogeneous
from swarmcrit.pso import RunResult, SwarmState, init_swarm, optimize, pso_step


def sphere(points):
    points = np.atleast_2d(points)
    return np.sum(points * points, axis=1)


def sphere_scalar(x):
    return float(np.sum(np.asarray(x) ** 2))


# ---------------------------------------------------------------- init


def test_init_swarm_within_bounds():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=25, dim=10)
    state = init_swarm(params, (-100.0, 100.0), sphere, seed=1)
    assert state.positions.shape == (25, 10)
    assert np.all(state.positions >= -100) and np.all(state.positions <= 100)
    assert np.array_equal(state.velocities, np.zeros((25, 10)))
    assert np.array_equal(state.p_best, state.positions)
    gi = int(np.argmin(state.p_best_cost))
    assert state.g_best_cost == state.p_best_cost[gi]
    assert np.array_equal(state.g_best, state.positions[gi])


def test_init_single_particle():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=1, dim=3)
    state = init_swarm(params, (-5.0, 5.0), sphere, seed=2)
    assert np.array_equal(state.g_best, state.p_best[0])
    assert state.g_best_cost == state.p_best_cost[0]


def test_init_deterministic():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=5, dim=2)
    a = init_swarm(params, (-1.0, 1.0), sphere, seed=3)
    b = init_swarm(params, (-1.0, 1.0), sphere, seed=3)
    assert np.array_equal(a.positions, b.positions)
    assert a.g_best_cost == b.g_best_cost


def test_init_rejects_bad_bounds():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=2, dim=2)
    with pytest.raises(ValueError):
        init_swarm(params, (), sphere, seed=1)
    with pytest.raises(ValueError):
        init_swarm(params, (5.0, -5.0), sphere, seed=1)


def test_init_per_dimension_bounds():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=50, dim=2)
    state = init_swarm(params, [(-1.0, 0.0), (10.0, 20.0)], sphere, seed=4)
    assert np.all(state.positions[:, 0] <= 0.0) and np.all(state.positions[:, 0] >= -1.0)
    assert np.all(state.positions[:, 1] >= 10.0) and np.all(state.positions[:, 1] <= 20.0)


# ---------------------------------------------------------------- stepping


def test_step_zero_force_fixed_point():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=3, dim=2)
    state = init_swarm(params, (-1.0, 1.0), sphere, seed=5)
    pinned = SwarmState(
        positions=np.tile(state.g_best, (3, 1)),
        velocities=np.zeros((3, 2)),
        p_best=np.tile(state.g_best, (3, 1)),
        p_best_cost=np.full(3, state.g_best_cost),
        g_best=state.g_best,
        g_best_cost=state.g_best_cost,
        iteration=0,
    )
    rng = np.random.default_rng(6)
    out = pso_step(pinned, params, sphere, rng)
    assert np.array_equal(out.positions, pinned.positions)
    assert np.array_equal(out.velocities, np.zeros((3, 2)))
    assert out.iteration == 1


def test_gbest_monotone_and_personal_best_invariant():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=10, dim=3)
    state = init_swarm(params, (-50.0, 50.0), sphere, seed=7)
    rng = np.random.default_rng(8)
    last = state.g_best_cost
    for _ in range(100):
        state = pso_step(state, params, sphere, rng)
        assert state.g_best_cost <= last
        last = state.g_best_cost
        costs = sphere(state.positions)
        assert np.all(state.p_best_cost <= costs + 1e-15)
        assert state.g_best_cost == state.p_best_cost.min()


def test_stable_parameters_improve_sphere():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=25, dim=10)
    result = optimize(sphere, params, 200, bounds=(-100.0, 100.0), seed=9)
    assert result.best_cost < result.cost_trace[0]
    assert not result.diverged


def test_divergent_parameters_flag_divergence():
    # at omega=1.1, alpha=5 the exponent is ~0.16, so positions overflow
    # float64 around iteration 4400; most seeds must flag by 5000
    params = SwarmParams(1.1, 2.5, 2.5, n_particles=25, dim=2)
    flagged = sum(
        optimize(sphere, params, 5000, bounds=(-100.0, 100.0), seed=s).diverged
        for s in range(8)
    )
    assert flagged >= 7


def test_ties_keep_incumbent():
    params = SwarmParams(0.0, 1.0, 1.0, n_particles=2, dim=1)
    flat = lambda pts: np.zeros(np.atleast_2d(pts).shape[0])
    state = init_swarm(params, (-1.0, 1.0), flat, seed=10)
    first_best = state.g_best.copy()
    rng = np.random.default_rng(11)
    out = pso_step(state, params, flat, rng)
    assert np.array_equal(out.g_best, first_best)
    assert np.array_equal(out.p_best, state.p_best)


# ---------------------------------------------------------------- optimize


def test_optimize_trace_monotone_and_evaluations():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=25, dim=2)
    result = optimize(sphere, params, 300, bounds=(-100.0, 100.0), seed=12)
    assert np.all(np.diff(result.cost_trace) <= 0)
    assert result.evaluations == 25 * 301
    assert result.cost_trace.size == 300


def test_optimize_zero_iterations_returns_init_best():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=5, dim=2)
    result = optimize(sphere, params, 0, bounds=(-10.0, 10.0), seed=13)
    state = init_swarm(params, (-10.0, 10.0), sphere,
                       seed=np.random.SeedSequence(13).spawn(2)[0])
    assert result.best_cost == state.g_best_cost
    assert result.evaluations == 5


def test_optimize_deterministic_and_scalar_cost_agrees():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=8, dim=2)
    a = optimize(sphere, params, 50, bounds=(-10.0, 10.0), seed=14)
    b = optimize(sphere, params, 50, bounds=(-10.0, 10.0), seed=14)
    c = optimize(sphere_scalar, params, 50, bounds=(-10.0, 10.0), seed=14)
    assert a.best_cost == b.best_cost == c.best_cost
    assert np.array_equal(a.cost_trace, c.cost_trace)


def test_scale_equivariance_power_of_two():
    # power-of-two scaling commutes with float rounding, so the whole
    # trajectory scales exactly for a homogeneous cost
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=6, dim=2)
    base = optimize(sphere, params, 40, bounds=(-16.0, 16.0), seed=15)
    for kappa in (0.5, 4.0):
        scaled = optimize(sphere, params, 40, bounds=(-16.0 * kappa, 16.0 * kappa), seed=15)
        assert np.array_equal(scaled.best_position, kappa * base.best_position)
        assert scaled.best_cost == kappa**2 * base.best_cost


def test_single_particle_matches_homogeneous_dynamics_bitwise():
    # one particle, bests pinned to the origin, social-only weight 2.0:
    # alpha * r reconstructs the drawn weight exactly (power of two), so
    # the swarm trajectory must equal the homogeneous composition bit for
    # bit given the same draws
    params = SwarmParams(0.7, 0.0, 2.0, n_particles=1, dim=1)
    state = SwarmState(
        positions=np.array([[0.8]]),
        velocities=np.array([[0.1]]),
        p_best=np.zeros((1, 1)),
        p_best_cost=np.array([0.64]),
        g_best=np.zeros(1),
        g_best_cost=0.64,
        iteration=0,
    )
    rng = np.random.default_rng(16)
    swarm_traj = []
    for _ in range(50):
        state = pso_step(state, params, sphere, rng, update_bests=False)
        swarm_traj.append((state.velocities[0, 0], state.positions[0, 0]))

    rng = np.random.default_rng(16)
    z = PhasePoint(v=[0.1], x=[0.8])
    for k in range(50):
        rng.random((1, 1))  # r1 draw, unused at alpha1 = 0
        r2 = rng.random((1, 1))[0, 0]
        r = (params.alpha2 * r2) / params.alpha
        z = step_homogeneous(z, build_step_matrix(params.omega, params.alpha, r))
        assert (z.v[0], z.x[0]) == swarm_traj[k]


def test_run_result_export(tmp_path):
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=5, dim=2)
    result = optimize(sphere, params, 20, bounds=(-10.0, 10.0), seed=17)
    trace_path = tmp_path / "trace.csv"
    result.trace_to_csv(trace_path, metadata={"seed": 17})
    lines = trace_path.read_text().splitlines()
    assert "iteration,g_best_cost" in lines
    assert any(line.startswith("# seed=17") for line in lines)
    json_path = tmp_path / "result.json"
    result.to_json(json_path, params, 17)
    payload = json.loads(json_path.read_text())
    assert payload["best_cost"] == result.best_cost
    assert payload["params"]["omega"] == 0.7
    assert payload["seed"] == 17
    assert payload["diverged"] is False


def test_particles_view():
    params = SwarmParams(0.7, 0.7, 0.7, n_particles=4, dim=2)
    state = init_swarm(params, (-1.0, 1.0), sphere, seed=18)
    particles = state.particles
    assert len(particles) == 4
    assert particles[0].p_best_cost == state.p_best_cost[0]
    assert particles[2].state.is_finite

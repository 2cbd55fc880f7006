use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use swarmlab::engine::{
    initialize, randomized_death, simulate, step, AgentState, DrawPurpose, RelabelledDraws, RunJudge,
    ScriptedDraws, SeededDraws, SwarmConfig, SwarmState,
};
use swarmlab::harness::SuccessCriterion;
use swarmlab::objectives::{Landscape, ObjectiveName, ObjectiveSpec};
use swarmlab::topology::{make_complete, make_ring, make_small_world};

/// Negated 1-D sphere: the score is `-x^2`.
struct Sphere;

impl Landscape for Sphere {
    fn dimension(&self) -> usize {
        1
    }
    fn bounds(&self, _: usize) -> (f64, f64) {
        (-5.0, 5.0)
    }
    fn score(&self, x: &[f64]) -> f64 {
        -x[0] * x[0]
    }
}

struct NeverDone;

impl RunJudge for NeverDone {
    fn is_global_success(&self, _: &SwarmState) -> bool {
        false
    }
    fn count_winners(&self, _: &SwarmState) -> usize {
        0
    }
}

#[test]
fn two_agent_trace() {
    let config = SwarmConfig {
        phi1: 1.5,
        v_min: -2.0,
        v_max: 2.0,
        n_agents: 2,
        ..SwarmConfig::default()
    };
    let draws = ScriptedDraws::new()
        .with(DrawPurpose::Move, 0, 1, vec![0.3, 0.9])
        .with(DrawPurpose::Move, 1, 1, vec![0.5, 0.2])
        .with(DrawPurpose::Move, 0, 2, vec![0.7, 0.1])
        .with(DrawPurpose::Move, 1, 2, vec![0.25, 0.8])
        .with(DrawPurpose::Move, 0, 3, vec![0.6, 0.4])
        .with(DrawPurpose::Move, 1, 3, vec![0.9, 0.95]);
    let graph = make_complete(2).unwrap();
    let mut swarm = SwarmState::from_agents(vec![
        AgentState::new(vec![3.0], vec![0.5], &Sphere),
        AgentState::new(vec![-1.0], vec![1.5], &Sphere),
    ]);

    // Step 1, agent 0: own best is its position and agent 1 (score -1) is
    // the neighborhood best, so v = chi * (0.5 + 2.05 * 0.9 * (-1 - 3))
    // = 0.7298438 * -6.88 = -5.0213..., clamped to -2, and x = 1.
    // Agent 1 sees itself as the best: v = chi * 1.5 = 1.0947657.
    // (position, velocity, best position) after each step:
    let expected = [
        [(1.0, -2.0, 1.0), (0.09476569999999995, 1.0947657, 0.09476569999999995)],
        [
            (-0.5951269264874799, -1.59512692648748, -0.5951269264874799),
            (0.89377365859766, 0.79900795859766, 0.09476569999999995),
        ],
        [
            (-1.3464390619891886, -0.7513121355017086, -0.5951269264874799),
            (-0.4460157747767727, -1.3397894333744327, 0.09476569999999995),
        ],
    ];
    for (t, agents) in expected.iter().enumerate() {
        step(&mut swarm, &graph, &Sphere, &config, &draws);
        assert_eq!(swarm.iteration, t + 1);
        for (i, &(x, v, p)) in agents.iter().enumerate() {
            let a = &swarm.agents[i];
            assert!((a.position[0] - x).abs() < 1e-12, "step {} agent {i} x {}", t + 1, a.position[0]);
            assert!((a.velocity[0] - v).abs() < 1e-12, "step {} agent {i} v {}", t + 1, a.velocity[0]);
            assert!((a.best_position[0] - p).abs() < 1e-12, "step {} agent {i} p {}", t + 1, a.best_position[0]);
            assert_eq!(a.best_score, -p * p);
        }
    }
}

#[test]
fn pure_inertia_decays_geometrically() {
    let config = SwarmConfig {
        phi1: 0.0,
        phi2: 0.0,
        n_agents: 3,
        ..SwarmConfig::default()
    };
    let graph = make_ring(3).unwrap();
    let draws = SeededDraws::new(4);
    let mut swarm = SwarmState::from_agents(
        [(-3.0, 1.0), (0.0, -2.0), (2.0, 0.5)]
            .into_iter()
            .map(|(x, v)| AgentState::new(vec![x], vec![v], &Sphere))
            .collect(),
    );
    let v0: Vec<f64> = swarm.agents.iter().map(|a| a.velocity[0]).collect();
    for k in 1..=10 {
        step(&mut swarm, &graph, &Sphere, &config, &draws);
        for (a, v) in swarm.agents.iter().zip(&v0) {
            assert!((a.velocity[0] - config.chi.powi(k) * v).abs() < 1e-12);
        }
    }
}

#[test]
fn relabelling_agents_relabels_the_run() {
    let objective = ObjectiveSpec::default_spec(ObjectiveName::Rastrigin);
    let judge = SuccessCriterion::default().judge(&objective);
    let graph = make_small_world(30, 4, 0.2, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
    let config = SwarmConfig {
        n_agents: 30,
        // long runs reach exact score ties, which are broken by index
        max_iters: 60,
        death_prob: 0.002,
        ..SwarmConfig::default()
    };
    let draws = SeededDraws::new(11);
    let (result, swarm) = simulate(&config, &graph, &objective, &judge, &draws, false).unwrap();

    for seed in 0..3 {
        let mut perm: Vec<usize> = (0..30).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut original = vec![0; 30];
        for (old, &new) in perm.iter().enumerate() {
            original[new] = old;
        }
        let relabelled = RelabelledDraws {
            inner: &draws,
            original,
        };
        let (r2, s2) = simulate(&config, &graph.relabel(&perm).unwrap(), &objective, &judge, &relabelled, false).unwrap();
        assert_eq!(r2, result);
        for (old, &new) in perm.iter().enumerate() {
            assert_eq!(s2.agents[new], swarm.agents[old]);
        }
    }
}

#[test]
fn survival_matches_expectation() {
    let objective = ObjectiveSpec::default_spec(ObjectiveName::Shekel);
    let config = SwarmConfig::default();
    for (p, expected) in [(0.00033, 100.0 * (1.0f64 - 0.00033).powi(500)), (0.0007, 100.0 * (1.0f64 - 0.0007).powi(500))] {
        let trials = 400;
        let survivors: Vec<f64> = (0..trials)
            .into_par_iter()
            .map(|seed| {
                let draws = SeededDraws::new(seed);
                let mut swarm = initialize(&config, &objective, &draws);
                for t in 1..=500 {
                    swarm.iteration = t;
                    randomized_death(&mut swarm, p, &draws).unwrap();
                }
                swarm.alive_count() as f64
            })
            .collect();
        let mean = survivors.iter().sum::<f64>() / trials as f64;
        let var = survivors.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        let se = (var / trials as f64).sqrt();
        assert!((mean - expected).abs() < 3.5 * se, "p={p}: mean {mean}, expected {expected}, se {se}");
    }
}

#[test]
fn certain_doom_ends_the_run() {
    let config = SwarmConfig {
        n_agents: 10,
        death_prob: 0.9,
        ..SwarmConfig::default()
    };
    let (result, swarm) = simulate(&config, &make_ring(10).unwrap(), &Sphere, &NeverDone, &SeededDraws::new(1), true).unwrap();
    assert_eq!(result.survivors, 0);
    assert!(!result.converged);
    assert!(result.iterations_executed < 50);
    assert_eq!(swarm.alive_count(), 0);
    let trace = result.trace.unwrap();
    assert_eq!(trace.len(), result.iterations_executed);
    assert_eq!(trace.last().unwrap().best_score, None);
}

fn clamp_config() -> impl Strategy<Value = (SwarmConfig, u64)> {
    (0.1f64..1.5, 0.0f64..4.0, 0.0f64..4.0, 0.1f64..20.0, any::<u64>()).prop_map(|(chi, phi1, phi2, vmax, seed)| {
        (
            SwarmConfig {
                chi,
                phi1,
                phi2,
                v_min: -vmax,
                v_max: vmax,
                n_agents: 12,
                ..SwarmConfig::default()
            },
            seed,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn velocities_stay_clamped((config, seed) in clamp_config()) {
        let objective = ObjectiveSpec::default_spec(ObjectiveName::Schwefel);
        let draws = SeededDraws::new(seed);
        let graph = make_ring(12).unwrap();
        let mut swarm = initialize(&config, &objective, &draws);
        for _ in 0..30 {
            step(&mut swarm, &graph, &objective, &config, &draws);
            for a in &swarm.agents {
                for &v in &a.velocity {
                    prop_assert!(v >= config.v_min && v <= config.v_max);
                }
            }
        }
    }

    #[test]
    fn personal_bests_never_get_worse(seed in any::<u64>()) {
        let objective = ObjectiveSpec::default_spec(ObjectiveName::Ackley);
        let config = SwarmConfig { n_agents: 8, ..SwarmConfig::default() };
        let draws = SeededDraws::new(seed);
        let graph = make_ring(8).unwrap();
        let mut swarm = initialize(&config, &objective, &draws);
        for _ in 0..25 {
            let before: Vec<f64> = swarm.agents.iter().map(|a| a.best_score).collect();
            step(&mut swarm, &graph, &objective, &config, &draws);
            for (a, b) in swarm.agents.iter().zip(before) {
                prop_assert!(a.best_score >= b);
                prop_assert_eq!(a.best_score, objective.score(&a.best_position));
            }
        }
    }
}

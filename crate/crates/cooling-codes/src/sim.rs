//! Batch bus-transmission simulator. Each step draws a random message,
//! derives the hot set from the configured policy, encodes, applies the
//! codeword as the wire-transition vector (state XOR codeword), and checks
//! the decode round trip. Wire temperature is modeled as an exponential
//! moving average of transition indicators; that proxy is a model choice and
//! the report says so.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Codeword, HotSet, LpcCode};

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HotSetPolicy {
    /// The t wires with the highest temperature proxy, ties to the lowest
    /// index.
    TopT,
    /// A fresh uniform t-subset every step.
    RandomT,
    /// A fixed wire list (at most t wires) used every step.
    AdversarialFixed { wires: Vec<usize> },
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct SimConfig {
    /// Path of the code file to simulate.
    pub code: String,
    pub steps: u64,
    pub policy: HotSetPolicy,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// EMA decay in (0, 1); charge per transition is 1 - decay.
    #[serde(default = "default_decay")]
    pub decay: f64,
    /// Receiver-side corruption: this many random wire bits flip per step
    /// (exercises error-correcting codes end to end).
    #[serde(default)]
    pub flips_per_step: usize,
}

fn default_seed() -> u64 {
    0
}

fn default_decay() -> f64 {
    0.9
}

/// Per-wire bus state and thermal proxy.
#[derive(Clone, Debug)]
pub struct BusState {
    pub state: Vec<bool>,
    pub transition_counts: Vec<u64>,
    pub temp_proxy: Vec<f64>,
    decay: f64,
}

impl BusState {
    pub fn new(n: usize, decay: f64) -> BusState {
        BusState {
            state: vec![false; n],
            transition_counts: vec![0; n],
            temp_proxy: vec![0.0; n],
            decay,
        }
    }

    /// Applies a transition vector: flips the state on the codeword's
    /// support and charges those wires' proxies.
    pub fn apply(&mut self, word: &Codeword) {
        for proxy in self.temp_proxy.iter_mut() {
            *proxy *= self.decay;
        }
        for &wire in word.support() {
            self.state[wire] = !self.state[wire];
            self.transition_counts[wire] += 1;
            self.temp_proxy[wire] += 1.0 - self.decay;
        }
    }

    /// The t hottest wires by proxy, ties resolved to the lowest index.
    pub fn hottest(&self, t: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.temp_proxy.len()).collect();
        order.sort_by(|&a, &b| {
            self.temp_proxy[b]
                .partial_cmp(&self.temp_proxy[a])
                .expect("proxies are finite")
                .then(a.cmp(&b))
        });
        let mut hottest: Vec<usize> = order.into_iter().take(t).collect();
        hottest.sort_unstable();
        hottest
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SimReport {
    /// The thermal model is an EMA transition proxy, not a physical
    /// simulation; stated here so downstream tooling keeps that in mind.
    pub thermal_model: String,
    pub steps: u64,
    pub n: usize,
    pub t: usize,
    pub w: usize,
    pub kind: String,
    pub seed: u64,
    pub decay: f64,
    pub flips_per_step: usize,
    /// Largest per-step transition count observed (must stay <= w).
    pub max_step_weight: usize,
    /// Smallest per-step transition count observed.
    pub min_step_weight: usize,
    /// Steps whose codeword touched a declared-hot wire (must stay 0).
    pub hot_wire_violations: u64,
    pub per_wire_transitions: Vec<u64>,
    pub decode_successes: u64,
    pub decode_failures: u64,
    pub decode_success_rate: f64,
}

pub fn simulate(config: &SimConfig) -> Result<SimReport> {
    let code = crate::construct::load_code(&config.code)?;
    simulate_code(&code, config)
}

/// Simulator core, reusable with an already-loaded code (the `code` path in
/// the config is ignored).
pub fn simulate_code(code: &LpcCode, config: &SimConfig) -> Result<SimReport> {
    if !(config.decay > 0.0 && config.decay < 1.0) {
        return Err(Error::param(format!(
            "decay must lie in (0, 1); got {}",
            config.decay
        )));
    }
    if let HotSetPolicy::AdversarialFixed { wires } = &config.policy {
        if wires.len() > code.t {
            return Err(Error::param(format!(
                "fixed hot set of size {} exceeds t = {}",
                wires.len(),
                code.t
            )));
        }
        if let Some(&w) = wires.iter().find(|&&w| w >= code.n) {
            return Err(Error::param(format!("fixed hot wire {w} out of range")));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut bus = BusState::new(code.n, config.decay);
    let m = code.num_codesets();
    let mut report = SimReport {
        thermal_model: "per-wire EMA of transition indicators (model choice, not physics)".into(),
        steps: config.steps,
        n: code.n,
        t: code.t,
        w: code.w,
        kind: code.kind.name().into(),
        seed: config.seed,
        decay: config.decay,
        flips_per_step: config.flips_per_step,
        max_step_weight: 0,
        min_step_weight: usize::MAX,
        hot_wire_violations: 0,
        per_wire_transitions: Vec::new(),
        decode_successes: 0,
        decode_failures: 0,
        decode_success_rate: 1.0,
    };

    for step in 0..config.steps {
        let message = rng.gen_range(0..m);
        let hot_wires = match &config.policy {
            HotSetPolicy::TopT => bus.hottest(code.t),
            HotSetPolicy::RandomT => rand::seq::index::sample(&mut rng, code.n, code.t).into_vec(),
            HotSetPolicy::AdversarialFixed { wires } => wires.clone(),
        };
        let hot = HotSet::new(code.n, hot_wires)?;
        let word = code
            .encode(message, &hot)
            .map_err(|e| Error::param(format!("encoder failed at step {step}: {e}")))?;

        report.max_step_weight = report.max_step_weight.max(word.weight());
        report.min_step_weight = report.min_step_weight.min(word.weight());
        if !word.avoids(&hot) {
            report.hot_wire_violations += 1;
        }
        bus.apply(&word);

        let received = if config.flips_per_step == 0 {
            word
        } else {
            let mut support: std::collections::BTreeSet<usize> =
                word.support().iter().copied().collect();
            for flip in rand::seq::index::sample(&mut rng, code.n, config.flips_per_step) {
                if !support.remove(&flip) {
                    support.insert(flip);
                }
            }
            Codeword::new(code.n, support.into_iter().collect())?
        };
        match code.decode(&received) {
            Ok(decoded) if decoded == message => report.decode_successes += 1,
            _ => report.decode_failures += 1,
        }
    }

    report.per_wire_transitions = bus.transition_counts;
    if config.steps == 0 {
        report.min_step_weight = 0;
        report.per_wire_transitions = vec![0; code.n];
    } else {
        report.decode_success_rate =
            report.decode_successes as f64 / config.steps as f64;
    }
    Ok(report)
}

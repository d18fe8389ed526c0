//! Constant-control optimal control problem.
//!
//! The plant is the second-order ODE
//!
//! ```text
//! z'' + sin(z) z' + sin(t) cos(z) z^3 = sin(t) u1^2 + cos(t) u2^2 + sin(t) u1 u2
//! z(0) = 2, z'(0) = 2, t in [0, 1]
//! ```
//!
//! integrated as a first-order system with classical fixed-step RK4. Fitness is
//! `z(1)^2`, with two controls `u1, u2 in [-5, 5]` each encoded by 30 bits.

use std::cell::RefCell;
use std::collections::HashMap;

use super::{check_len, decode_real, FitnessProblem};
use crate::error::{GaeError, Result};
use crate::genome::BitString;

pub(super) const LENGTH: usize = 60;
const BITS_PER_CONTROL: usize = 30;
const CONTROL_RANGE: (f64, f64) = (-5.0, 5.0);
const CACHE_LIMIT: usize = 1 << 20;

thread_local! {
    // (step bits, chromosome value) -> fitness; the plant is a pure function
    static FITNESS_CACHE: RefCell<HashMap<(u64, u64), f64>> = RefCell::new(HashMap::new());
}

/// RK4 step used by [`OptimalControl::default`]: 1000 steps over `[0, 1]`.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Plant state at time `t`: position `z1 = z` and velocity `z2 = z'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub t: f64,
    pub z1: f64,
    pub z2: f64,
}

impl OdeState {
    pub const INITIAL: OdeState = OdeState {
        t: 0.0,
        z1: 2.0,
        z2: 2.0,
    };

    fn is_finite(&self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }
}

#[inline]
fn derivative(t: f64, z1: f64, z2: f64, u1: f64, u2: f64) -> (f64, f64) {
    let (st, ct) = t.sin_cos();
    let forcing = st * u1 * u1 + ct * u2 * u2 + st * u1 * u2;
    let (sz, cz) = z1.sin_cos();
    (z2, forcing - sz * z2 - st * cz * z1 * z1 * z1)
}

fn rk4_step(s: OdeState, h: f64, u1: f64, u2: f64) -> OdeState {
    let OdeState { t, z1, z2 } = s;
    let half = 0.5 * h;
    let k1 = derivative(t, z1, z2, u1, u2);
    let k2 = derivative(t + half, z1 + half * k1.0, z2 + half * k1.1, u1, u2);
    let k3 = derivative(t + half, z1 + half * k2.0, z2 + half * k2.1, u1, u2);
    let k4 = derivative(t + h, z1 + h * k3.0, z2 + h * k3.1, u1, u2);
    OdeState {
        t: t + h,
        z1: z1 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        z2: z2 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    }
}

/// Number of RK4 steps for step size `h` on `[0, 1]`.
fn step_count(h: f64) -> Result<usize> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(GaeError::BadStepSize(h));
    }
    let steps = (1.0 / h).round();
    if (steps * h - 1.0).abs() > 1e-9 {
        return Err(GaeError::BadStepSize(h));
    }
    Ok(steps as usize)
}

/// Integrates the plant with constant controls and returns `z(1)`.
pub fn simulate_plant(u1: f64, u2: f64, h: f64) -> Result<f64> {
    let steps = step_count(h)?;
    let mut state = OdeState::INITIAL;
    for i in 0..steps {
        // time from the step index keeps t exact at the end of the interval
        state.t = i as f64 * h;
        state = rk4_step(state, h, u1, u2);
        if !state.is_finite() {
            return Err(GaeError::Divergence { t: state.t });
        }
    }
    Ok(state.z1)
}

/// `(u1, u2)` encoded by a 60-bit chromosome.
pub fn decode_controls(s: &BitString) -> (f64, f64) {
    let (lo, hi) = CONTROL_RANGE;
    let bits = s.bits();
    (
        decode_real(&bits[..BITS_PER_CONTROL], lo, hi),
        decode_real(&bits[BITS_PER_CONTROL..2 * BITS_PER_CONTROL], lo, hi),
    )
}

/// `z(1)^2` for the controls encoded in `s`; divergent trajectories score 0.
pub fn control_fitness(s: &BitString) -> Result<f64> {
    check_len(s, LENGTH)?;
    Ok(OptimalControl::default().evaluate(s))
}

#[derive(Debug, Clone, Copy)]
pub struct OptimalControl {
    pub step: f64,
}

impl OptimalControl {
    /// Integrates the plant without consulting the per-thread memo.
    pub fn evaluate_uncached(&self, s: &BitString) -> f64 {
        let (u1, u2) = decode_controls(s);
        match simulate_plant(u1, u2, self.step) {
            Ok(z) => z * z,
            Err(_) => 0.0,
        }
    }
}

impl Default for OptimalControl {
    fn default() -> Self {
        Self { step: DEFAULT_STEP }
    }
}

impl FitnessProblem for OptimalControl {
    fn chromosome_length(&self) -> usize {
        LENGTH
    }

    fn evaluate(&self, s: &BitString) -> f64 {
        let key = (self.step.to_bits(), s.to_u64());
        if let Some(f) = FITNESS_CACHE.with(|c| c.borrow().get(&key).copied()) {
            return f;
        }
        let f = self.evaluate_uncached(s);
        FITNESS_CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() >= CACHE_LIMIT {
                c.clear();
            }
            c.insert(key, f);
        });
        f
    }
}

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::nsp::RosterInstance;

/// Seeded toy roster. Coverage asks for roughly `load` of the nurses on
/// working shifts each day; rules are drawn around what such a load needs,
/// so both satisfiable and unsatisfiable instances come out.
pub fn gen_roster(nurses: usize, days: usize, shifts: usize, load: f64, seed: u64) -> Result<RosterInstance> {
    if nurses == 0 || days == 0 || shifts < 2 {
        return Err(Error::invalid("roster needs nurses, days and at least two shifts"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = RosterInstance::unconstrained(nurses, days, shifts);
    let working = shifts - 1;
    let d = days as i64;
    let per_shift = (nurses as f64 * load / working as f64).max(0.0);
    for cov in inst.coverage.iter_mut() {
        for c in cov.iter_mut().take(working) {
            let jitter: f64 = rng.gen_range(0.6..1.4);
            *c = (per_shift * jitter).round() as i64;
        }
    }
    // Working days per nurse around the average demand.
    let demand: i64 = inst.coverage.iter().flatten().sum();
    let avg = demand as f64 / nurses as f64;
    let lo = (avg - rng.gen_range(0.0..1.5)).floor().clamp(0.0, d as f64) as i64;
    let hi = (avg + rng.gen_range(0.0..2.0)).ceil().clamp(lo as f64, d as f64) as i64;
    inst.work_occ = Interval::new(lo, hi);
    for s in 0..shifts {
        let max_occ = rng.gen_range(1..=d);
        inst.shift_occ[s] = Interval::new(0, max_occ);
        let min_len = if rng.gen_bool(0.3) && d >= 2 { 2 } else { 1 };
        let max_len = rng.gen_range(min_len..=d.min(min_len + 3));
        inst.shift_stretch[s] = Interval::new(min_len, max_len);
    }
    let w_lo = rng.gen_range(1..=2).min(d);
    inst.work_stretch = Interval::new(w_lo, rng.gen_range(w_lo + 1..=d.max(w_lo + 1)).min(d));
    Ok(inst)
}

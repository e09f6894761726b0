//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{all_chords, Chord, Instance};

pub const DEFAULT_ATTEMPTS: u32 = 1000;

pub fn complete(n: u32) -> Result<Instance> {
    Instance::new(n, all_chords(n).into_iter().map(|c| (c.a(), c.b())))
}

fn check(n: u32, p: f64) -> Result<()> {
    if n < 4 {
        return Err(Error::CycleTooSmall(n));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Params(format!("density must lie in (0, 1], got {p}")));
    }
    Ok(())
}

/// Each chord independently with probability `p`. Attempt `i` draws from
/// stream `i` of the seeded generator, until `S` is feasible.
pub fn random(n: u32, p: f64, seed: u64, attempts: u32) -> Result<Instance> {
    check(n, p)?;
    let chords = all_chords(n);
    for attempt in 0..attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let picked: Vec<(u32, u32)> = chords
            .iter()
            .filter(|_| rng.gen_bool(p))
            .map(|c| (c.a(), c.b()))
            .collect();
        match Instance::new(n, picked) {
            Ok(inst) => return Ok(inst),
            Err(Error::InfeasibleCandidateSet { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed { attempts })
}

/// `pairs` crossing pairs spread evenly around the cycle, the ring of
/// length-2 chords that keeps `S` feasible, and bridging chords between
/// neighbouring pairs drawn with probability `p`.
pub fn planted(n: u32, pairs: u32, p: f64, seed: u64) -> Result<Instance> {
    check(n, p)?;
    if pairs == 0 || 5 * pairs > n {
        return Err(Error::Params(format!("{pairs} planted pairs do not fit on a {n}-cycle")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wrap = |v: u32| (v - 1) % n + 1;
    let mut links: Vec<Chord> = (1..=n).map(|v| Chord::unchecked(v, wrap(v + 2))).collect();
    let step = n / pairs;
    let starts: Vec<u32> = (0..pairs).map(|i| 1 + i * step).collect();
    for &s in &starts {
        links.push(Chord::unchecked(s, wrap(s + 3)));
        links.push(Chord::unchecked(wrap(s + 1), wrap(s + 4)));
    }
    for (i, &s) in starts.iter().enumerate() {
        let t = starts[(i + 1) % starts.len()];
        for a in s..s + 5 {
            for b in t..t + 5 {
                let (a, b) = (wrap(a), wrap(b));
                if Chord::new(a, b, n).is_ok() && rng.gen_bool(p) {
                    links.push(Chord::unchecked(a, b));
                }
            }
        }
    }
    links.sort_unstable();
    links.dedup();
    Instance::new(n, links.into_iter().map(|c| (c.a(), c.b())))
}

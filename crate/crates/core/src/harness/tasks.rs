use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::mix_seed;
use crate::error::{Error, Result};
use crate::metrics::Task;

/// A uniformly random `k`-subset of `universe`, in universe order.
///
/// The draw depends only on `(seed, k, trial, attempt)`, so trials can be
/// generated in any order or in parallel.
pub fn draw_task(universe: &[String], k: usize, seed: u64, trial: usize, attempt: usize) -> Result<Task> {
    if k == 0 || k > universe.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot draw {k} distinct skills from a universe of {}",
            universe.len()
        )));
    }
    let parts: &[u64] = &[k as u64, trial as u64, attempt as u64];
    let parts = if attempt == 0 { &parts[..2] } else { parts };
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, parts));
    let mut picked = sample(&mut rng, universe.len(), k).into_vec();
    picked.sort_unstable();
    Task::new(picked.into_iter().map(|i| universe[i].clone()))
}

/// `trials` tasks of `k` distinct skills each.
pub fn generate_tasks(universe: &[String], k: usize, trials: usize, seed: u64) -> Result<Vec<Task>> {
    (0..trials).map(|t| draw_task(universe, k, seed, t, 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    #[test]
    fn reproducible_and_distinct() {
        let u = universe(30);
        let a = generate_tasks(&u, 7, 20, 42).unwrap();
        assert_eq!(a, generate_tasks(&u, 7, 20, 42).unwrap());
        assert_ne!(a, generate_tasks(&u, 7, 20, 43).unwrap());
        for t in &a {
            assert_eq!(t.len(), 7);
        }
        assert_ne!(draw_task(&u, 7, 42, 0, 1).unwrap(), a[0]);
    }

    #[test]
    fn whole_universe_and_errors() {
        let u = universe(5);
        for t in generate_tasks(&u, 5, 3, 1).unwrap() {
            assert_eq!(t.skills(), &u[..]);
        }
        assert!(generate_tasks(&u, 6, 1, 1).is_err());
        assert!(generate_tasks(&u, 0, 1, 1).is_err());
    }

    #[test]
    fn single_skill_draws_are_uniform() {
        let u = universe(10);
        let mut counts = [0usize; 10];
        for t in generate_tasks(&u, 1, 10_000, 9).unwrap() {
            let i: usize = t.skills()[0][1..].parse().unwrap();
            counts[i] += 1;
        }
        let sigma = (10_000.0f64 * 0.1 * 0.9).sqrt();
        for c in counts {
            assert!((c as f64 - 1000.0).abs() <= 3.0 * sigma, "{counts:?}");
        }
    }
}

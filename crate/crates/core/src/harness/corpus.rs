use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pi::PiProc;

const POOL: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Atoms drawn by [`generate_corpus`].
pub const DEFAULT_POOL: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub size_limit: usize,
    pub terms: Vec<PiProc>,
}

impl Corpus {
    pub fn printed(&self) -> Vec<String> {
        self.terms.iter().map(crate::syntax::print_pi).collect()
    }
}

/// `count` terms of size at most `size_limit`, drawn from a ChaCha stream.
/// Replication is always input-guarded.
pub fn generate_corpus(seed: u64, count: usize, size_limit: usize) -> Corpus {
    generate_corpus_over(seed, count, size_limit, DEFAULT_POOL)
}

/// As [`generate_corpus`] with atoms drawn from the first `pool` (at most 6)
/// letters; small pools make communication likely.
pub fn generate_corpus_over(seed: u64, count: usize, size_limit: usize, pool: usize) -> Corpus {
    let pool = pool.clamp(1, POOL.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = (0..count)
        .map(|_| {
            let top = size_limit.max(1);
            let budget = rng.gen_range(top.div_ceil(2)..=top);
            gen(&mut rng, budget, pool)
        })
        .collect();
    Corpus {
        seed,
        size_limit,
        terms,
    }
}

fn atom(rng: &mut ChaCha8Rng, pool: usize) -> &'static str {
    POOL[rng.gen_range(0..pool)]
}

/// A term of size at most `budget` (and at least 1).
fn gen(rng: &mut ChaCha8Rng, budget: usize, pool: usize) -> PiProc {
    // weights: nil, output, input, new, replicated input, par; large
    // budgets favour composite forms so that terms use most of it
    let mut weights = if budget >= 4 { [0u32, 1, 3, 2, 2, 5] } else { [1u32, 3, 3, 2, 1, 3] };
    if budget < 2 {
        weights[2..].fill(0);
    }
    if budget < 3 {
        weights[4] = 0;
        weights[5] = 0;
    }
    let total: u32 = weights.iter().sum();
    let mut pick = rng.gen_range(0..total);
    let mut kind = 0;
    while pick >= weights[kind] {
        pick -= weights[kind];
        kind += 1;
    }
    match kind {
        0 => PiProc::Nil,
        1 => PiProc::output(atom(rng, pool), atom(rng, pool)),
        2 => {
            let (x, y) = (atom(rng, pool), atom(rng, pool));
            PiProc::input(x, y, gen(rng, budget - 1, pool))
        }
        3 => {
            let x = atom(rng, pool);
            PiProc::new_name(x, gen(rng, budget - 1, pool))
        }
        4 => {
            let (x, y) = (atom(rng, pool), atom(rng, pool));
            PiProc::repl(PiProc::input(x, y, gen(rng, budget - 2, pool)))
        }
        _ => {
            let left = rng.gen_range(1..budget - 1);
            let l = gen(rng, left, pool);
            let r = gen(rng, budget - 1 - l.size(), pool);
            PiProc::Par(vec![l, r])
        }
    }
}

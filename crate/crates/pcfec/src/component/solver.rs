//! Key-equation solvers: syndromes in, error-locator polynomial out.
//!
//! Both solvers produce a locator with constant term 1 whose roots are
//! the inverses of the error locations. The decoder applies the same
//! validity checks regardless of which solver ran (degree, root count,
//! shortened range, corrected-syndrome recheck), so the two strategies
//! are interchangeable and must yield identical decode outcomes.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::gf::{GaloisField, Symbol};
use crate::poly::Poly;
use crate::Error;

/// Strategy interface for solving the key equation.
pub trait KeySolver: Send + Sync {
    /// Registry name of this solver.
    fn name(&self) -> &'static str;

    /// Largest correction radius supported, if limited.
    fn max_t(&self) -> Option<usize> {
        None
    }

    /// Computes a candidate error locator from syndromes S_1..S_2t
    /// (`syndromes[0]` holding S_1). Returns the locator and its claimed
    /// degree, or `None` when no candidate exists. A `Some` result is a
    /// candidate only; the caller still validates it.
    fn solve(&self, field: &GaloisField, syndromes: &[Symbol]) -> Option<(Poly, usize)>;
}

/// The Berlekamp-Massey iteration, the default solver for any t.
#[derive(Debug, Default)]
pub struct BerlekampMassey;

impl KeySolver for BerlekampMassey {
    fn name(&self) -> &'static str {
        "berlekamp-massey"
    }

    fn solve(&self, field: &GaloisField, syndromes: &[Symbol]) -> Option<(Poly, usize)> {
        let ns = syndromes.len();
        let mut current = Poly::one();
        let mut previous = Poly::one();
        let mut l = 0usize;
        let mut shift = 1usize;
        let mut last_discrepancy: Symbol = 1;

        for n in 0..ns {
            let mut delta = syndromes[n];
            for i in 1..=l {
                delta ^= field.mul(current.coeff(i), syndromes[n - i]);
            }
            if delta == 0 {
                shift += 1;
            } else if 2 * l <= n {
                let stash = current.clone();
                let factor = field
                    .div(delta, last_discrepancy)
                    .expect("last discrepancy is nonzero");
                current = current.add(&previous.scale(field, factor).shift_up(shift));
                previous = stash;
                l = n + 1 - l;
                last_discrepancy = delta;
                shift = 1;
            } else {
                let factor = field
                    .div(delta, last_discrepancy)
                    .expect("last discrepancy is nonzero");
                current = current.add(&previous.scale(field, factor).shift_up(shift));
                shift += 1;
            }
        }
        Some((current, l))
    }
}

/// Closed-form Peterson solver for t <= 2. Solves the 1x1 or 2x2 system
/// directly instead of iterating; with the shared downstream checks it
/// produces outcomes identical to Berlekamp-Massey.
#[derive(Debug, Default)]
pub struct Peterson;

impl KeySolver for Peterson {
    fn name(&self) -> &'static str {
        "peterson"
    }

    fn max_t(&self) -> Option<usize> {
        Some(2)
    }

    fn solve(&self, field: &GaloisField, syndromes: &[Symbol]) -> Option<(Poly, usize)> {
        if syndromes.iter().all(|&s| s == 0) {
            return Some((Poly::one(), 0));
        }
        match syndromes.len() {
            2 => {
                let (s1, s2) = (syndromes[0], syndromes[1]);
                if s1 == 0 {
                    return None;
                }
                let l1 = field.div(s2, s1).expect("s1 nonzero");
                Some((Poly::new(vec![1, l1]), 1))
            }
            4 => {
                let (s1, s2, s3, s4) = (syndromes[0], syndromes[1], syndromes[2], syndromes[3]);
                let det = field.mul(s2, s2) ^ field.mul(s1, s3);
                if det != 0 {
                    let l1 = field
                        .div(field.mul(s2, s3) ^ field.mul(s1, s4), det)
                        .expect("det nonzero");
                    let l2 = field
                        .div(field.mul(s2, s4) ^ field.mul(s3, s3), det)
                        .expect("det nonzero");
                    Some((Poly::new(vec![1, l1, l2]), 2))
                } else if s1 != 0 {
                    let l1 = field.div(s2, s1).expect("s1 nonzero");
                    Some((Poly::new(vec![1, l1]), 1))
                } else {
                    None
                }
            }
            other => {
                debug_assert!(false, "peterson limited to t<=2, got 2t={other}");
                None
            }
        }
    }
}

/// Builder signature for registered solvers.
pub type SolverBuilder = fn() -> Arc<dyn KeySolver>;

/// Name-keyed registry of key-equation solvers.
pub struct SolverRegistry {
    entries: BTreeMap<&'static str, SolverBuilder>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register("berlekamp-massey", || Arc::new(BerlekampMassey));
        reg.register("peterson", || Arc::new(Peterson));
        reg
    }

    pub fn register(&mut self, name: &'static str, builder: SolverBuilder) {
        self.entries.insert(name, builder);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn build(&self, name: &str) -> Result<Arc<dyn KeySolver>, Error> {
        match self.entries.get(name) {
            Some(builder) => Ok(builder()),
            None => Err(Error::UnknownStrategy {
                name: name.to_string(),
                available: self.names().collect::<Vec<_>>().join(", "),
            }),
        }
    }

    pub fn global() -> &'static SolverRegistry {
        static GLOBAL: OnceLock<SolverRegistry> = OnceLock::new();
        GLOBAL.get_or_init(SolverRegistry::with_defaults)
    }
}

/// Looks a solver up in the global registry.
pub fn build_solver(name: &str) -> Result<Arc<dyn KeySolver>, Error> {
    SolverRegistry::global().build(name)
}

/// Default solver name used when a spec does not pick one.
pub const DEFAULT_SOLVER: &str = "berlekamp-massey";

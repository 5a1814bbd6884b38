//! Branch-and-bound over pairs of total maps `f: X -> Y`, `g: Y -> X`.
//!
//! Variables are the values `f(x)` (in order of decreasing eccentricity of
//! `x`) followed by the values `g(y)` (same ordering on `Y`). Every pair of
//! variables is linked by one distortion term:
//!
//! * `f(x), f(x')`: `| |xx'| - |f(x)f(x')| |`
//! * `g(y), g(y')`: `| |yy'| - |g(y)g(y')| |`
//! * `f(x), g(y)`:  `| |x g(y)| - |f(x) y| |`
//!
//! so the maximum term over a partial assignment never decreases as more
//! variables are fixed. Domains are filtered forward after each assignment;
//! an empty domain cuts the branch.
//!
//! The search is split into independent subtrees on the value of the first
//! variable. A subtree prunes strictly against its own incumbent and
//! non-strictly against the best value shared by all subtrees, so every
//! subtree reports the first leaf (in its own depth-first order) attaining
//! its minimum. Picking the lowest-indexed subtree among those attaining the
//! global minimum then reproduces exactly what a single sequential pass
//! would return, whatever the number of worker threads.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::metric::FiniteMetricSpace;
use crate::relations::MapPair;

/// Optional edge structure on either side; `None` means no continuity
/// constraint at all (plain Gromov-Hausdorff search).
#[derive(Clone, Copy)]
pub(crate) struct Topology<'a> {
    pub x_adj: &'a [bool],
    pub y_adj: &'a [bool],
}

pub(crate) struct Problem<'a> {
    pub x: &'a FiniteMetricSpace,
    pub y: &'a FiniteMetricSpace,
    pub topology: Option<Topology<'a>>,
}

pub(crate) struct Limits {
    /// Leaves with values up to this one (in distortion units) are
    /// acceptable even before any leaf has been found.
    pub cap: f64,
    /// A leaf at or below this value ends the search.
    pub accept: f64,
    pub node_limit: u64,
    pub threads: usize,
}

pub(crate) struct Outcome {
    /// Best leaf found, as `(distortion, pair)`.
    pub best: Option<(f64, MapPair)>,
    pub nodes: u64,
    pub budget_exceeded: bool,
    pub accepted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    F(usize),
    G(usize),
}

fn order_by_eccentricity(space: &FiniteMetricSpace) -> Vec<usize> {
    let mut points: Vec<usize> = (0..space.len()).collect();
    points.sort_by(|&a, &b| {
        space
            .eccentricity(b)
            .total_cmp(&space.eccentricity(a))
            .then(a.cmp(&b))
    });
    points
}

struct Shared {
    best_bits: AtomicU64,
    nodes: AtomicU64,
    abort: AtomicBool,
    accepted_at: AtomicUsize,
}

impl Shared {
    fn best(&self) -> f64 {
        f64::from_bits(self.best_bits.load(Ordering::Relaxed))
    }

    fn offer(&self, value: f64) {
        let mut current = self.best_bits.load(Ordering::Relaxed);
        while value < f64::from_bits(current) {
            match self.best_bits.compare_exchange_weak(
                current,
                value.to_bits(),
                Ordering::Relaxed,
                Ordering::Relaxed,
            ) {
                Ok(_) => break,
                Err(seen) => current = seen,
            }
        }
    }
}

struct Engine<'a> {
    problem: &'a Problem<'a>,
    vars: Vec<Var>,
    words: usize,
    limits: &'a Limits,
}

struct SubtreeResult {
    best: Option<(f64, Vec<usize>)>,
    accepted: bool,
}

impl<'a> Engine<'a> {
    fn new(problem: &'a Problem<'a>, limits: &'a Limits) -> Self {
        let vars: Vec<Var> = order_by_eccentricity(problem.x)
            .into_iter()
            .map(Var::F)
            .chain(order_by_eccentricity(problem.y).into_iter().map(Var::G))
            .collect();
        let words = problem.x.len().max(problem.y.len()).div_ceil(64);
        Engine {
            problem,
            vars,
            words,
            limits,
        }
    }

    fn domain_size(&self, v: Var) -> usize {
        match v {
            Var::F(_) => self.problem.y.len(),
            Var::G(_) => self.problem.x.len(),
        }
    }

    #[inline]
    fn term(&self, vi: Var, a: usize, vj: Var, b: usize) -> f64 {
        let (x, y) = (self.problem.x, self.problem.y);
        match (vi, vj) {
            (Var::F(p), Var::F(q)) => (x.d(p, q) - y.d(a, b)).abs(),
            (Var::G(p), Var::G(q)) => (y.d(p, q) - x.d(a, b)).abs(),
            (Var::F(p), Var::G(q)) => (x.d(p, b) - y.d(a, q)).abs(),
            (Var::G(q), Var::F(p)) => (x.d(p, a) - y.d(b, q)).abs(),
        }
    }

    /// Edge preservation: adjacent points must land on equal or adjacent
    /// points.
    #[inline]
    fn admissible(&self, vi: Var, a: usize, vj: Var, b: usize) -> bool {
        let Some(t) = self.problem.topology else {
            return true;
        };
        let (nx, ny) = (self.problem.x.len(), self.problem.y.len());
        match (vi, vj) {
            (Var::F(p), Var::F(q)) => !t.x_adj[p * nx + q] || a == b || t.y_adj[a * ny + b],
            (Var::G(p), Var::G(q)) => !t.y_adj[p * ny + q] || a == b || t.x_adj[a * nx + b],
            _ => true,
        }
    }

    fn to_pair(&self, assignment: &[usize]) -> MapPair {
        let mut f = vec![0; self.problem.x.len()];
        let mut g = vec![0; self.problem.y.len()];
        for (&v, &value) in self.vars.iter().zip(assignment) {
            match v {
                Var::F(p) => f[p] = value,
                Var::G(q) => g[q] = value,
            }
        }
        MapPair { f, g }
    }

    fn run(&self) -> Outcome {
        let shared = Shared {
            best_bits: AtomicU64::new(self.limits.cap.to_bits()),
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            accepted_at: AtomicUsize::new(usize::MAX),
        };
        let first_values: Vec<usize> = (0..self.domain_size(self.vars[0])).collect();
        let results: Vec<SubtreeResult> = if self.limits.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.limits.threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                first_values
                    .par_iter()
                    .map(|&v| self.subtree(v, &shared))
                    .collect()
            })
        } else {
            first_values
                .iter()
                .map(|&v| self.subtree(v, &shared))
                .collect()
        };

        let accepted_index = results.iter().position(|r| r.accepted);
        let chosen = match accepted_index {
            Some(k) => results[k].best.clone(),
            None => results
                .iter()
                .filter_map(|r| r.best.clone())
                .reduce(|a, b| if b.0 < a.0 { b } else { a }),
        };
        Outcome {
            best: chosen.map(|(v, assignment)| (v, self.to_pair(&assignment))),
            nodes: shared.nodes.load(Ordering::Relaxed),
            budget_exceeded: shared.abort.load(Ordering::Relaxed),
            accepted: accepted_index.is_some(),
        }
    }

    fn subtree(&self, first_value: usize, shared: &Shared) -> SubtreeResult {
        let n = self.vars.len();
        let mut worker = Worker {
            engine: self,
            shared,
            index: first_value,
            domains: vec![0u64; (n + 1) * n * self.words],
            assignment: vec![0; n],
            local_best: f64::INFINITY,
            best: None,
            accepted: false,
            stop: false,
        };
        // Level 0 starts with every domain full except the first variable,
        // which is pinned to this subtree's value.
        for (pos, &v) in self.vars.iter().enumerate() {
            let size = self.domain_size(v);
            let base = pos * self.words;
            for b in 0..size {
                worker.domains[base + b / 64] |= 1 << (b % 64);
            }
        }
        worker.domains[..self.words].fill(0);
        worker.domains[first_value / 64] |= 1 << (first_value % 64);
        worker.descend(0, 0.0);
        SubtreeResult {
            best: worker.best,
            accepted: worker.accepted,
        }
    }
}

struct Worker<'a, 'e> {
    engine: &'e Engine<'a>,
    shared: &'e Shared,
    index: usize,
    /// One full copy of all domains per depth.
    domains: Vec<u64>,
    assignment: Vec<usize>,
    local_best: f64,
    best: Option<(f64, Vec<usize>)>,
    accepted: bool,
    stop: bool,
}

impl Worker<'_, '_> {
    fn allowance(&self) -> f64 {
        self.shared.best().max(self.engine.limits.accept)
    }

    #[inline]
    fn allowed(&self, t: f64, allowance: f64) -> bool {
        t < self.local_best && t <= allowance
    }

    fn should_stop(&mut self) -> bool {
        if self.stop {
            return true;
        }
        if self.shared.abort.load(Ordering::Relaxed)
            || self.shared.accepted_at.load(Ordering::Relaxed) < self.index
        {
            self.stop = true;
        }
        self.stop
    }

    fn descend(&mut self, depth: usize, running: f64) {
        let engine = self.engine;
        let n = engine.vars.len();
        let words = engine.words;
        let stride = n * words;
        let var = engine.vars[depth];
        let level = depth * stride;

        for w in 0..words {
            let mut bits = self.domains[level + depth * words + w];
            while bits != 0 {
                let b = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if self.should_stop() {
                    return;
                }
                let count = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
                if count > engine.limits.node_limit {
                    self.shared.abort.store(true, Ordering::Relaxed);
                    self.stop = true;
                    return;
                }

                let allowance = self.allowance();
                let mut value = running;
                for i in 0..depth {
                    value = value.max(engine.term(engine.vars[i], self.assignment[i], var, b));
                }
                if !self.allowed(value, allowance) {
                    continue;
                }
                self.assignment[depth] = b;

                if depth + 1 == n {
                    self.record_leaf(value);
                    if self.stop {
                        return;
                    }
                    continue;
                }

                if self.filter(depth, b, allowance) {
                    self.descend(depth + 1, value);
                    if self.stop {
                        return;
                    }
                }
            }
        }
    }

    /// Copies the domains of the unassigned variables to the next level,
    /// keeping only values compatible with `vars[depth] = value`. Returns
    /// false if some domain becomes empty.
    fn filter(&mut self, depth: usize, value: usize, allowance: f64) -> bool {
        let engine = self.engine;
        let n = engine.vars.len();
        let words = engine.words;
        let stride = n * words;
        let var = engine.vars[depth];
        let (src, dst) = self.domains.split_at_mut((depth + 1) * stride);
        let src = &src[depth * stride..];
        for j in depth + 1..n {
            let vj = engine.vars[j];
            let mut any = 0u64;
            for w in 0..words {
                let mut bits = src[j * words + w];
                let mut kept = 0u64;
                while bits != 0 {
                    let bit = bits.trailing_zeros();
                    bits &= bits - 1;
                    let b = w * 64 + bit as usize;
                    let t = engine.term(var, value, vj, b);
                    if t < self.local_best && t <= allowance && engine.admissible(var, value, vj, b)
                    {
                        kept |= 1 << bit;
                    }
                }
                dst[j * words + w] = kept;
                any |= kept;
            }
            if any == 0 {
                return false;
            }
        }
        true
    }

    fn record_leaf(&mut self, value: f64) {
        let allowance = self.allowance();
        if !self.allowed(value, allowance) {
            return;
        }
        self.local_best = value;
        self.best = Some((value, self.assignment.clone()));
        self.shared.offer(value);
        if value <= self.engine.limits.accept {
            self.accepted = true;
            self.shared
                .accepted_at
                .fetch_min(self.index, Ordering::Relaxed);
            self.stop = true;
        }
    }
}

pub(crate) fn run(problem: &Problem<'_>, limits: &Limits) -> Outcome {
    Engine::new(problem, limits).run()
}

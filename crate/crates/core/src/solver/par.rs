//! Thread-parallel search.
//!
//! The tree is split immediately below the root: one subproblem per root
//! branch, queued in the order the sequential search would take them. When
//! the queue runs dry an idle worker resplits the latest in-flight depth-one
//! subproblem, publishing its unexplored children as depth-two subproblems.
//!
//! All workers share one incumbent whose size and cost are packed into a
//! single `u64` key, so "better than" is plain integer comparison.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use parking_lot::{Condvar, Mutex};

use super::{
    second_pass_is_redundant, Expander, IncumbentView, SearchStats, Solution, SolveError,
};
use crate::bitset::Bitset;
use crate::colouring::colour_order;
use crate::graph::{LabelSet, LabelledGraph};

/// Packs `(size, cost)` so that a larger key is a better incumbent: size in
/// the high 32 bits, the complement of cost in the low 32 bits.
#[inline]
pub fn incumbent_key(size: usize, cost: u32) -> u64 {
    debug_assert!(size <= u32::MAX as usize);
    ((size as u64) << 32) | u64::from(!cost)
}

#[inline]
fn decode_key(key: u64) -> (usize, u32) {
    ((key >> 32) as usize, !(key as u32))
}

/// Best-so-far shared by all workers. Readers on the hot path look only at
/// the key; the witness is written under a lock together with the key.
#[derive(Debug)]
pub struct SharedIncumbent {
    key: AtomicU64,
    witness: Mutex<(Vec<usize>, LabelSet)>,
}

impl Default for SharedIncumbent {
    fn default() -> Self {
        SharedIncumbent::new(Vec::new(), LabelSet::EMPTY)
    }
}

impl SharedIncumbent {
    pub fn new(clique: Vec<usize>, labels: LabelSet) -> Self {
        SharedIncumbent {
            key: AtomicU64::new(incumbent_key(clique.len(), labels.cost())),
            witness: Mutex::new((clique, labels)),
        }
    }

    #[inline]
    pub fn key(&self) -> u64 {
        self.key.load(Ordering::Acquire)
    }

    /// `(size, cost)` as of the last completed update.
    #[inline]
    pub fn value(&self) -> (usize, u32) {
        decode_key(self.key())
    }

    /// Installs `(clique, labels)` if it is strictly better than the stored
    /// incumbent at the moment of the write. Returns whether it did.
    pub fn try_improve(&self, clique: &[usize], labels: LabelSet) -> bool {
        let key = incumbent_key(clique.len(), labels.cost());
        if key <= self.key() {
            return false;
        }
        let mut witness = self.witness.lock();
        let current = self.key.load(Ordering::Acquire);
        if key <= current {
            return false;
        }
        witness.0.clear();
        witness.0.extend_from_slice(clique);
        witness.1 = labels;
        // Every writer holds the lock, so the exchange cannot fail; it keeps
        // the monotone contract checkable.
        self.key
            .compare_exchange(current, key, Ordering::AcqRel, Ordering::Acquire)
            .expect("incumbent key changed outside the witness lock");
        true
    }

    /// Witness and labels, consistent with [`SharedIncumbent::key`] at the
    /// time of the call.
    pub fn snapshot(&self) -> (Vec<usize>, LabelSet) {
        self.witness.lock().clone()
    }
}

struct SharedView<'a>(&'a SharedIncumbent);

impl IncumbentView for SharedView<'_> {
    #[inline]
    fn size(&self) -> usize {
        self.0.value().0
    }

    #[inline]
    fn cost(&self) -> u32 {
        self.0.value().1
    }

    #[inline]
    fn offer(&mut self, clique: &[usize], labels: LabelSet) {
        self.0.try_improve(clique, labels);
    }
}

/// A unit of parallel work: the search state just after choosing the last
/// vertex of `prefix`, before the label filter and bound are applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subproblem {
    /// Position of the depth-one root branch in sequential order.
    pub root: usize,
    /// For depth-two work, position among the stolen children.
    pub child: Option<usize>,
    /// Chosen vertices, permuted numbering. Length one or two.
    pub prefix: Vec<usize>,
    /// Candidates left below `prefix`.
    pub candidates: Bitset,
    /// Labels used by `prefix`.
    pub labels: LabelSet,
    /// Colour bound of the branch that chose the last prefix vertex.
    pub bound: u32,
}

impl Subproblem {
    pub fn depth(&self) -> usize {
        self.prefix.len()
    }
}

/// One subproblem per root branch, in sequential branch order.
pub fn split_root(g: &LabelledGraph) -> VecDeque<Subproblem> {
    let root = colour_order(g.graph(), &g.graph().vertex_set());
    let mut remaining = g.graph().vertex_set();
    let mut queue = VecDeque::with_capacity(g.n());
    for i in (0..root.order.len()).rev() {
        let v = root.order[i];
        remaining.remove(v);
        let mut candidates = remaining.clone();
        candidates.intersect_with(g.graph().neighbours(v));
        queue.push_back(Subproblem {
            root: queue.len(),
            child: None,
            prefix: vec![v],
            candidates,
            labels: LabelSet::EMPTY,
            bound: root.bounds[i],
        });
    }
    queue
}

/// A depth-one subproblem being worked on, with its colouring published so
/// that unclaimed children can be stolen.
#[derive(Debug)]
pub(crate) struct InFlight {
    root: usize,
    vertex: usize,
    labels: LabelSet,
    order: Vec<usize>,
    bounds: Vec<u32>,
    /// Children `0..next` are unclaimed.
    next: AtomicUsize,
}

impl InFlight {
    /// Claims the next child in sequential order (highest index first).
    fn claim(&self) -> Option<usize> {
        self.next
            .fetch_update(Ordering::AcqRel, Ordering::Acquire, |k| k.checked_sub(1))
            .ok()
            .map(|k| k - 1)
    }

    fn abandon(&self) {
        self.next.store(0, Ordering::Release);
    }

    fn unclaimed(&self) -> usize {
        self.next.load(Ordering::Acquire)
    }

    /// Takes every unclaimed child and turns each into a depth-two
    /// subproblem, in sequential order.
    pub(crate) fn steal(&self, g: &LabelledGraph) -> Vec<Subproblem> {
        let k = self.next.swap(0, Ordering::AcqRel);
        let n = g.n();
        (0..k)
            .rev()
            .enumerate()
            .map(|(child, j)| {
                let w = self.order[j];
                let mut candidates = Bitset::from_indices(n, self.order[..j].iter().copied());
                candidates.intersect_with(g.graph().neighbours(w));
                Subproblem {
                    root: self.root,
                    child: Some(child),
                    prefix: vec![self.vertex, w],
                    candidates,
                    labels: g.labels_with_clique(w, &[self.vertex], self.labels),
                    bound: self.bounds[j],
                }
            })
            .collect()
    }
}

#[derive(Debug)]
struct Schedule {
    queue: VecDeque<Subproblem>,
    /// Depth-one subproblems dequeued and not yet finished.
    open: usize,
    /// The depth-one subproblem each worker is inside, if any.
    in_flight: Vec<Option<Arc<InFlight>>>,
    steals: u64,
}

struct Pool<'g> {
    graph: &'g LabelledGraph,
    state: Mutex<Schedule>,
    wake: Condvar,
}

impl<'g> Pool<'g> {
    fn new(graph: &'g LabelledGraph, queue: VecDeque<Subproblem>, workers: usize) -> Self {
        Pool {
            graph,
            state: Mutex::new(Schedule {
                queue,
                open: 0,
                in_flight: vec![None; workers],
                steals: 0,
            }),
            wake: Condvar::new(),
        }
    }

    /// Next subproblem for `worker`, or `None` once the pass is exhausted.
    fn next_job(&self) -> Option<Subproblem> {
        let mut state = self.state.lock();
        loop {
            if let Some(job) = state.queue.pop_front() {
                if job.depth() == 1 {
                    state.open += 1;
                }
                return Some(job);
            }
            let victim = state
                .in_flight
                .iter()
                .flatten()
                .filter(|f| f.unclaimed() > 0)
                .max_by_key(|f| f.root)
                .cloned();
            if let Some(victim) = victim {
                let stolen = victim.steal(self.graph);
                if !stolen.is_empty() {
                    state.steals += 1;
                    state.queue.extend(stolen);
                    self.wake.notify_all();
                }
                continue;
            }
            if state.open == 0 {
                return None;
            }
            self.wake.wait(&mut state);
        }
    }

    fn publish(&self, worker: usize, frame: Arc<InFlight>) {
        let mut state = self.state.lock();
        state.in_flight[worker] = Some(frame);
        self.wake.notify_all();
    }

    fn finish_depth_one(&self, worker: usize) {
        let mut state = self.state.lock();
        state.in_flight[worker] = None;
        state.open -= 1;
        self.wake.notify_all();
    }
}

/// Per-thread search: the expander plus the worker's slot index.
struct Worker<'g, 'a> {
    id: usize,
    search: Expander<'g, SharedView<'a>>,
}

impl<'g, 'a> Worker<'g, 'a> {
    fn run(&mut self, pool: &Pool<'g>) {
        while let Some(job) = pool.next_job() {
            let depth_one = job.depth() == 1;
            self.run_subproblem(&job, Some(pool));
            if depth_one {
                pool.finish_depth_one(self.id);
            }
        }
    }

    /// Replays the choice that produced `job` and searches below it.
    fn run_subproblem(&mut self, job: &Subproblem, pool: Option<&Pool<'g>>) {
        let (&last, before) = job.prefix.split_last().expect("empty prefix");
        let search = &mut self.search;
        search.clique.clear();
        search.clique.extend_from_slice(before);
        if search.pruned(job.bound) {
            return;
        }
        search.clique.push(last);
        if search.admits(job.labels) {
            search.incumbent.offer(&search.clique, job.labels);
            if !job.candidates.is_empty() {
                if job.depth() == 1 {
                    self.run_depth_one(job, pool);
                } else {
                    search.frame(0).candidates.copy_from(&job.candidates);
                    search.expand(0, job.labels);
                }
            }
        }
        self.search.clique.clear();
    }

    /// The expand loop directly below a root branch, with children claimed
    /// one at a time so that the rest can be stolen.
    fn run_depth_one(&mut self, job: &Subproblem, pool: Option<&Pool<'g>>) {
        let search = &mut self.search;
        search.nodes += 1;
        let mut frame = std::mem::take(search.frame(0));
        frame.candidates.copy_from(&job.candidates);
        frame.colour(search.graph);
        let in_flight = Arc::new(InFlight {
            root: job.root,
            vertex: job.prefix[0],
            labels: job.labels,
            order: frame.order.clone(),
            bounds: frame.bounds.clone(),
            next: AtomicUsize::new(frame.order.len()),
        });
        if let Some(pool) = pool {
            pool.publish(self.id, Arc::clone(&in_flight));
        }
        self.depth_one_loop(&in_flight, &mut frame, usize::MAX);
        self.search.frames[0] = frame;
    }

    /// Claims and explores up to `limit` children of `in_flight`.
    fn depth_one_loop(&mut self, in_flight: &InFlight, frame: &mut super::Frame, limit: usize) {
        let search = &mut self.search;
        // Vertices above the claimed index have been explored or stolen.
        let mut upto = frame.order.len();
        for _ in 0..limit {
            let Some(i) = in_flight.claim() else { break };
            for &w in &frame.order[i + 1..upto] {
                frame.candidates.remove(w);
            }
            if search.pruned(frame.bounds[i]) {
                in_flight.abandon();
                break;
            }
            let v = frame.order[i];
            search.branch(v, in_flight.labels, &frame.candidates, 0);
            frame.candidates.remove(v);
            upto = i;
        }
    }
}

/// Runs one pass over `permuted` with `workers` threads, updating `shared`.
/// Returns node and steal counts.
fn run_pass(
    permuted: &LabelledGraph,
    budget: u32,
    first: bool,
    shared: &SharedIncumbent,
    workers: usize,
) -> (u64, u64) {
    if permuted.n() == 0 {
        return (0, 0);
    }
    let pool = Pool::new(permuted, split_root(permuted), workers);
    let nodes: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|id| {
                let pool = &pool;
                scope.spawn(move || {
                    let mut worker = Worker {
                        id,
                        search: Expander::new(permuted, budget, first, SharedView(shared)),
                    };
                    worker.run(pool);
                    worker.search.nodes
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .sum()
    });
    let steals = pool.state.lock().steals;
    // The root expand itself.
    (nodes + 1, steals)
}

/// Parallel counterpart of [`super::solve`]: same passes, same optimum, with
/// a full join between the passes.
pub fn solve_parallel(g: &LabelledGraph, budget: u32, workers: usize) -> Result<Solution, SolveError> {
    if budget < 1 {
        return Err(SolveError::InvalidBudget);
    }
    if workers < 1 {
        return Err(SolveError::InvalidWorkers);
    }
    let start = Instant::now();
    let (permuted, perm) = g.permute_by_degree();
    let shared = SharedIncumbent::default();
    let mut stats = SearchStats {
        workers,
        ..SearchStats::default()
    };

    let (nodes, steals) = run_pass(&permuted, budget, true, &shared, workers);
    stats.nodes_pass1 = nodes;
    stats.steals = steals;
    (stats.pass1_size, stats.pass1_cost) = shared.value();

    if !second_pass_is_redundant(stats.pass1_size, stats.pass1_cost) {
        let (nodes, steals) = run_pass(&permuted, budget, false, &shared, workers);
        stats.nodes_pass2 = nodes;
        stats.steals += steals;
    }

    let (clique, labels) = shared.snapshot();
    stats.elapsed = start.elapsed().as_secs_f64();
    Ok(Solution::unpermute(&clique, labels, &perm, stats))
}

//! Exhaustive search for multiplier circuits.
//!
//! The search runs over all 16 inputs at once: every qubit carries a 16-bit
//! truth vector and a gate XORs the AND of its control vectors into its
//! target vector. Circuits are enumerated depth-first in canonical order only
//! (the lexicographically smallest arrangement reachable by swapping adjacent
//! gates on disjoint qubits), and branches are cut when
//!
//! * the register state repeats along the path (the loop could be removed), or
//! * the remaining gate budget is smaller than the exact distance to the goal,
//!   taken from a breadth-first table around the goal state.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{multiplier_truth_table, Circuit, GateKind, GateSpec, Qubit, REGISTER_QUBITS};

/// Truth vectors of all eight qubits.
type State = [u16; REGISTER_QUBITS];

/// Search bounds and the gate pool.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_gates: usize,
    pub pool: Vec<GateSpec>,
    /// Drop circuits that differ only by reordering disjoint adjacent gates.
    pub dedup: bool,
}

impl SearchOptions {
    pub fn new(max_gates: usize) -> Self {
        Self {
            max_gates,
            pool: default_pool(),
            dedup: true,
        }
    }
}

/// Toffolis with any two non-target controls and CNOTs with any non-target
/// control, both restricted to ancilla targets.
pub fn default_pool() -> Vec<GateSpec> {
    let mut pool = Vec::new();
    for t in Qubit::ANCILLAE {
        let others: Vec<Qubit> = Qubit::ALL.into_iter().filter(|&q| q != t).collect();
        for (i, &a) in others.iter().enumerate() {
            pool.push(GateSpec::cnot(a, t).expect("distinct qubits"));
            for &b in &others[i + 1..] {
                pool.push(GateSpec::toffoli(a, b, t).expect("distinct qubits"));
            }
        }
    }
    pool.sort();
    pool
}

/// Lexicographically smallest circuit obtainable by repeatedly swapping
/// adjacent gates that act on disjoint qubits.
pub fn canonicalize(c: &Circuit) -> Circuit {
    let mut rest = c.gates.clone();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // gates that commute with everything before them can move to the front
        let pick = (0..rest.len())
            .filter(|&j| rest[..j].iter().all(|g| g.is_disjoint(&rest[j])))
            .min_by(|&a, &b| rest[a].cmp(&rest[b]))
            .expect("first gate is always movable");
        out.push(rest.remove(pick));
    }
    Circuit::new(out)
}

fn initial_state() -> State {
    let mut s = [0u16; REGISTER_QUBITS];
    for (k, row) in multiplier_truth_table().iter().enumerate() {
        for (q, bit) in [row.x, row.y, row.z, row.w].into_iter().enumerate() {
            s[q] |= (bit as u16) << k;
        }
    }
    s
}

fn goal_state() -> State {
    let mut s = initial_state();
    for (k, row) in multiplier_truth_table().iter().enumerate() {
        for (a, &bit) in row.product.iter().enumerate() {
            s[4 + a] |= (bit as u16) << k;
        }
    }
    s
}

#[derive(Clone, Copy)]
struct PackedGate {
    controls: [usize; 2],
    target: usize,
}

impl PackedGate {
    fn new(g: &GateSpec) -> Self {
        let c: Vec<usize> = g.controls().iter().map(|q| q.position() - 1).collect();
        let controls = match g.kind() {
            GateKind::Cnot => [c[0], c[0]],
            GateKind::Toffoli => [c[0], c[1]],
        };
        Self {
            controls,
            target: g.target().position() - 1,
        }
    }

    fn apply(&self, s: &State) -> State {
        let mut out = *s;
        out[self.target] ^= s[self.controls[0]] & s[self.controls[1]];
        out
    }
}

/// Exact gate distance to the goal for every state within `depth` gates.
/// Gates in the pool are involutions, so a forward search from the goal
/// yields distances towards it.
fn distance_table(pool: &[PackedGate], depth: usize) -> HashMap<State, u8> {
    let goal = goal_state();
    let mut dist = HashMap::from([(goal, 0u8)]);
    let mut frontier = vec![goal];
    for d in 1..=depth {
        let mut next = Vec::new();
        for s in &frontier {
            for g in pool {
                let t = g.apply(s);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(t) {
                    e.insert(d as u8);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    dist
}

struct Searcher<'a> {
    specs: &'a [GateSpec],
    packed: &'a [PackedGate],
    dist: &'a HashMap<State, u8>,
    table_depth: usize,
    max_gates: usize,
    dedup: bool,
    goal: State,
}

impl Searcher<'_> {
    fn admissible(&self, path: &[usize], next: usize) -> bool {
        if !self.dedup {
            return true;
        }
        let g = &self.specs[next];
        for &prev in path.iter().rev() {
            let p = &self.specs[prev];
            if !g.is_disjoint(p) {
                break;
            }
            if next < prev {
                return false;
            }
        }
        true
    }

    fn reachable(&self, state: &State, remaining: usize) -> bool {
        match self.dist.get(state) {
            Some(&d) => d as usize <= remaining,
            None => remaining > self.table_depth,
        }
    }

    fn dfs(&self, path: &mut Vec<usize>, states: &mut Vec<State>, found: &mut Vec<Circuit>) {
        let state = *states.last().expect("initial state present");
        if state == self.goal {
            found.push(Circuit::new(
                path.iter().map(|&i| self.specs[i].clone()).collect(),
            ));
            return;
        }
        if path.len() == self.max_gates {
            return;
        }
        let remaining = self.max_gates - path.len() - 1;
        for (i, g) in self.packed.iter().enumerate() {
            if !self.admissible(path, i) {
                continue;
            }
            let next = g.apply(&state);
            if states.contains(&next) || !self.reachable(&next, remaining) {
                continue;
            }
            path.push(i);
            states.push(next);
            self.dfs(path, states, found);
            states.pop();
            path.pop();
        }
    }
}

/// All multiplier circuits of at most `opts.max_gates` gates drawn from
/// `opts.pool`, in deterministic order.
///
/// Circuits that pass through the same register state twice are not
/// reported, since removing the loop gives a shorter valid circuit.
pub fn search_circuits(opts: &SearchOptions) -> Vec<Circuit> {
    if opts.max_gates == 0 || opts.pool.is_empty() {
        return Vec::new();
    }
    let mut specs = opts.pool.clone();
    specs.sort();
    specs.dedup();
    let packed: Vec<PackedGate> = specs.iter().map(PackedGate::new).collect();
    let table_depth = opts.max_gates.min(3);
    let dist = distance_table(&packed, table_depth);
    let searcher = Searcher {
        specs: &specs,
        packed: &packed,
        dist: &dist,
        table_depth,
        max_gates: opts.max_gates,
        dedup: opts.dedup,
        goal: goal_state(),
    };

    let start = initial_state();
    if start == searcher.goal {
        return vec![Circuit::default()];
    }
    let remaining = opts.max_gates - 1;
    let per_first: Vec<Vec<Circuit>> = (0..specs.len())
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let next = packed[first].apply(&start);
            if next != start && searcher.reachable(&next, remaining) {
                let mut path = vec![first];
                let mut states = vec![start, next];
                searcher.dfs(&mut path, &mut states, &mut found);
            }
            found
        })
        .collect();
    per_first.into_iter().flatten().collect()
}

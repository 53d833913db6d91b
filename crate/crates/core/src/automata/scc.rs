use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use super::transitions::{State, Transitions};

/// Strongly connected components of a transition graph.
#[derive(Clone, Debug)]
pub struct Sccs {
    /// Components in topological order (an edge never goes to an earlier
    /// component); ties are broken by smallest member state.
    pub components: Vec<Vec<State>>,
    pub component_of: Vec<usize>,
    /// Whether the component contains a cycle (size > 1 or a self-loop).
    pub nontrivial: Vec<bool>,
    /// Direct successor components (excluding self).
    pub successors: Vec<BTreeSet<usize>>,
}

impl Sccs {
    pub fn new(trans: &Transitions) -> Self {
        let n = trans.state_count();
        let k = trans.letter_count();
        let raw = tarjan(n, |q| (0..k).map(move |a| trans.step(q, a)));
        let count = raw.iter().max().map_or(0, |m| m + 1);

        let mut succ = vec![BTreeSet::new(); count];
        let mut self_loop = vec![false; count];
        let mut size = vec![0; count];
        let mut min_state = vec![usize::MAX; count];
        for q in 0..n {
            size[raw[q]] += 1;
            min_state[raw[q]] = min_state[raw[q]].min(q);
            for a in 0..k {
                let p = trans.step(q, a);
                if raw[p] == raw[q] {
                    if p == q {
                        self_loop[raw[q]] = true;
                    }
                } else {
                    succ[raw[q]].insert(raw[p]);
                }
            }
        }
        // Kahn's algorithm, smallest member first
        let mut indeg = vec![0; count];
        for s in &succ {
            for &t in s {
                indeg[t] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..count)
            .filter(|&c| indeg[c] == 0)
            .map(|c| Reverse((min_state[c], c)))
            .collect();
        let mut order = Vec::with_capacity(count);
        while let Some(Reverse((_, c))) = heap.pop() {
            order.push(c);
            for &t in &succ[c] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    heap.push(Reverse((min_state[t], t)));
                }
            }
        }
        let mut rank = vec![0; count];
        for (i, &c) in order.iter().enumerate() {
            rank[c] = i;
        }
        let component_of: Vec<usize> = raw.iter().map(|&c| rank[c]).collect();
        let mut components = vec![Vec::new(); count];
        for q in 0..n {
            components[component_of[q]].push(q);
        }
        let nontrivial = order.iter().map(|&c| size[c] > 1 || self_loop[c]).collect();
        let successors = order
            .iter()
            .map(|&c| succ[c].iter().map(|&t| rank[t]).collect())
            .collect();
        Self {
            components,
            component_of,
            nontrivial,
            successors,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components reachable from `c` by at least one edge leaving `c`.
    pub fn strictly_reachable(&self, c: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = self.successors[c].iter().copied().collect();
        while let Some(d) = stack.pop() {
            if out.insert(d) {
                stack.extend(self.successors[d].iter().copied());
            }
        }
        out
    }
}

/// Iterative Tarjan; returns a component id per node (reverse topological).
pub(crate) fn tarjan<I: Iterator<Item = usize>>(n: usize, succ: impl Fn(usize) -> I) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ(root).collect(), 0));
        while let Some((v, children, i)) = call.last_mut() {
            let v = *v;
            if *i < children.len() {
                let w = children[*i];
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// SCCs of the transition graph in topological order.
pub fn scc_decomposition(trans: &Transitions) -> Vec<Vec<State>> {
    Sccs::new(trans).components
}

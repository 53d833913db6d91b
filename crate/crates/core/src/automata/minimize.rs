//! Hopcroft partition refinement.

use super::transitions::{State, Transitions};

struct Partition {
    elems: Vec<State>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut elems: Vec<State> = (0..n).collect();
        elems.sort_by_key(|&q| (colors[q], q));
        let mut loc = vec![0; n];
        let mut block_of = vec![0; n];
        let (mut start, mut end) = (Vec::new(), Vec::new());
        for (i, &q) in elems.iter().enumerate() {
            loc[q] = i;
            if i == 0 || colors[elems[i - 1]] != colors[q] {
                start.push(i);
                end.push(i);
            }
            *end.last_mut().unwrap() += 1;
            block_of[q] = start.len() - 1;
        }
        let marked = start.clone();
        Self {
            elems,
            loc,
            block_of,
            start,
            end,
            marked,
        }
    }

    fn blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn mark(&mut self, q: State) -> usize {
        let b = self.block_of[q];
        let i = self.loc[q];
        let j = self.marked[b];
        if i >= j {
            let other = self.elems[j];
            self.elems.swap(i, j);
            self.loc[q] = j;
            self.loc[other] = i;
            self.marked[b] += 1;
        }
        b
    }

    /// Splits `b` into its marked and unmarked parts; returns the new block
    /// (the marked part) if both are nonempty.
    fn split(&mut self, b: usize) -> Option<usize> {
        let mid = self.marked[b];
        self.marked[b] = self.start[b];
        if mid == self.end[b] {
            return None;
        }
        let nb = self.start.len();
        self.start.push(self.start[b]);
        self.end.push(mid);
        self.marked.push(self.start[b]);
        for i in self.start[b]..mid {
            self.block_of[self.elems[i]] = nb;
        }
        self.start[b] = mid;
        self.marked[b] = mid;
        Some(nb)
    }
}

/// Coarsest partition compatible with `colors` and the transitions.
/// Returns a block index per state.
pub(crate) fn refine(trans: &Transitions, colors: &[usize]) -> Vec<usize> {
    let n = trans.state_count();
    let k = trans.letter_count();
    if n == 0 {
        return Vec::new();
    }
    // inverse transitions, bucketed per (letter, target)
    let mut inv_start = vec![0usize; k * n + 1];
    for q in 0..n {
        for a in 0..k {
            inv_start[a * n + trans.step(q, a) + 1] += 1;
        }
    }
    for i in 0..k * n {
        inv_start[i + 1] += inv_start[i];
    }
    let mut fill = inv_start.clone();
    let mut inv = vec![0; n * k];
    for q in 0..n {
        for a in 0..k {
            let slot = a * n + trans.step(q, a);
            inv[fill[slot]] = q;
            fill[slot] += 1;
        }
    }

    let mut part = Partition::new(colors);
    let mut in_work = vec![false; part.blocks() * k];
    let mut work = Vec::new();
    // all initial blocks but the largest suffice
    let largest = (0..part.blocks()).max_by_key(|&b| part.size(b)).unwrap();
    for b in (0..part.blocks()).filter(|&b| b != largest) {
        for a in 0..k {
            in_work[b * k + a] = true;
            work.push((b, a));
        }
    }

    let mut touched = Vec::new();
    let mut splitter = Vec::new();
    while let Some((b, a)) = work.pop() {
        in_work[b * k + a] = false;
        splitter.clear();
        splitter.extend_from_slice(&part.elems[part.start[b]..part.end[b]]);
        touched.clear();
        for &q in &splitter {
            for &p in &inv[inv_start[a * n + q]..inv_start[a * n + q + 1]] {
                let y = part.mark(p);
                if part.marked[y] == part.start[y] + 1 {
                    touched.push(y);
                }
            }
        }
        for &y in &touched {
            if let Some(ny) = part.split(y) {
                in_work.resize(part.blocks() * k, false);
                for c in 0..k {
                    if in_work[y * k + c] {
                        in_work[ny * k + c] = true;
                        work.push((ny, c));
                    } else {
                        let smaller = if part.size(ny) <= part.size(y) { ny } else { y };
                        in_work[smaller * k + c] = true;
                        work.push((smaller, c));
                    }
                }
            }
        }
    }
    part.block_of
}

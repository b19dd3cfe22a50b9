//! Finite posets: covers, order closure, Möbius numbers, surgery.
//!
//! The order relation is stored as a reachability-closure bitmap over
//! element indices. Min/max deletion and intervals work on the induced
//! order, with covers recomputed by transitive reduction, because deleting
//! elements can create new covers.

use std::fmt::Write as _;
use std::sync::OnceLock;

/// Default guard cap for chain enumeration.
pub const DEFAULT_CHAIN_CAP: u64 = 100_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relation contains a cycle")]
    CycleDetected,
    #[error("duplicate element labels")]
    DuplicateLabels,
    #[error("poset is not bounded (needs unique minimum and maximum)")]
    NotBounded,
    #[error("poset has no unique minimum")]
    NoMinimum,
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("chain census exceeded the guard cap of {0} chains")]
    CapExceeded(u64),
}

/// Packed boolean matrix; row-major bitsets.
#[derive(Clone)]
struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            data: vec![0; words * n],
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] & (1u64 << (c % 64)) != 0
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1u64 << (c % 64);
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            self.data[b + k] |= self.data[a + k];
        }
    }

    /// dst &= !src, over a scratch row.
    #[allow(clippy::needless_range_loop)]
    fn and_not_row(&self, row: usize, mask: &mut [u64]) {
        let a = row * self.words;
        for k in 0..self.words {
            mask[k] &= !self.data[a + k];
        }
    }

    fn row_ones(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for k in 0..self.words {
            let mut w = self.data[r * self.words + k];
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(k * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for r in 0..self.n {
            for c in self.row_ones(r) {
                t.set(c, r);
            }
        }
        t
    }
}

/// A finite poset over opaque string keys.
pub struct FinitePoset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    up_adj: Vec<Vec<usize>>,
    down_adj: Vec<Vec<usize>>,
    leq: BitMatrix,
    geq: BitMatrix,
    topo: Vec<usize>,
    level: Vec<u32>,
    mins: Vec<usize>,
    maxs: Vec<usize>,
    graded: bool,
    mu_bottom: OnceLock<Vec<i64>>,
}

impl FinitePoset {
    /// Builds from generating relations; the stored covers are the
    /// transitive reduction of the generated order.
    pub fn from_covers(
        labels: Vec<String>,
        relations: &[(usize, usize)],
    ) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        {
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n {
                return Err(PosetError::DuplicateLabels);
            }
        }
        let mut up_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(x, y) in relations {
            assert!(x < n && y < n, "relation index out of range");
            if x == y {
                return Err(PosetError::CycleDetected);
            }
            up_edges[x].push(y);
        }

        // Topological order (Kahn) over the generating edges.
        let mut indeg = vec![0usize; n];
        for e in up_edges.iter().flatten() {
            indeg[*e] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        queue.sort_unstable();
        let mut topo = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            topo.push(x);
            let mut next: Vec<usize> = Vec::new();
            for &y in &up_edges[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    next.push(y);
                }
            }
            next.sort_unstable();
            queue.extend(next);
        }
        if topo.len() != n {
            return Err(PosetError::CycleDetected);
        }

        // Reachability closure, reflexive.
        let mut leq = BitMatrix::new(n);
        for &x in topo.iter().rev() {
            leq.set(x, x);
            let ups = up_edges[x].clone();
            for y in ups {
                leq.or_row_into(y, x);
            }
        }
        Ok(Self::from_closure(labels, leq))
    }

    /// Builds from element keys and a full order predicate.
    pub fn from_order<F>(labels: Vec<String>, leq_fn: F) -> Result<FinitePoset, PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut leq = BitMatrix::new(n);
        for x in 0..n {
            leq.set(x, x);
            for y in 0..n {
                if x != y && leq_fn(x, y) {
                    if leq_fn(y, x) {
                        return Err(PosetError::CycleDetected);
                    }
                    leq.set(x, y);
                }
            }
        }
        {
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n {
                return Err(PosetError::DuplicateLabels);
            }
        }
        // The predicate must be transitive: x <= y forces row(x) to contain
        // row(y).
        for x in 0..n {
            for y in leq.row_ones(x) {
                if y == x {
                    continue;
                }
                let (rx, ry) = (x * leq.words, y * leq.words);
                for w in 0..leq.words {
                    assert_eq!(
                        leq.data[rx + w] | leq.data[ry + w],
                        leq.data[rx + w],
                        "order predicate is not transitive"
                    );
                }
            }
        }
        Ok(Self::from_closure(labels, leq))
    }

    fn from_closure(labels: Vec<String>, leq: BitMatrix) -> FinitePoset {
        let n = labels.len();
        let geq = leq.transpose();

        // Longest-path levels from the minimal side, over the strict order.
        // Processing order: count of strict predecessors is monotone along
        // the order, so sorting by (predecessor count, index) is topological.
        let mut pred_count = vec![0usize; n];
        #[allow(clippy::needless_range_loop)]
        for x in 0..n {
            pred_count[x] = geq.row_ones(x).len() - 1;
        }
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_unstable_by_key(|&x| (pred_count[x], x));

        // Covers by sweep: minimal elements of each strict up-set.
        let words = leq.words;
        let mut covers: Vec<(usize, usize)> = Vec::new();
        let mut up_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut down_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut mask: Vec<u64> = vec![0; words];
        for x in 0..n {
            mask.copy_from_slice(&leq.data[x * words..(x + 1) * words]);
            mask[x / 64] &= !(1u64 << (x % 64));
            for &y in &topo {
                if mask[y / 64] & (1u64 << (y % 64)) != 0 {
                    covers.push((x, y));
                    up_adj[x].push(y);
                    down_adj[y].push(x);
                    leq.and_not_row(y, &mut mask);
                }
            }
        }
        covers.sort_unstable();
        for a in up_adj.iter_mut().chain(down_adj.iter_mut()) {
            a.sort_unstable();
        }

        let mins: Vec<usize> = (0..n).filter(|&x| down_adj[x].is_empty()).collect();
        let maxs: Vec<usize> = (0..n).filter(|&x| up_adj[x].is_empty()).collect();

        // Levels: longest chain from below, for layout and rank data.
        let mut level = vec![0u32; n];
        for &x in &topo {
            for &y in &up_adj[x] {
                level[y] = level[y].max(level[x] + 1);
            }
        }

        // Graded: all saturated chains between any two comparable elements
        // have equal length.
        let graded = check_graded(n, &topo, &up_adj, &leq);

        FinitePoset {
            labels,
            covers,
            up_adj,
            down_adj,
            leq,
            geq,
            topo,
            level,
            mins,
            maxs,
            graded,
            mu_bottom: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up_adj[x]
    }

    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down_adj[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq.get(x, y)
    }

    pub fn minimals(&self) -> &[usize] {
        &self.mins
    }

    pub fn maximals(&self) -> &[usize] {
        &self.maxs
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_empty() && self.mins.len() == 1 && self.maxs.len() == 1
    }

    pub fn bottom(&self) -> Option<usize> {
        if self.mins.len() == 1 {
            Some(self.mins[0])
        } else {
            None
        }
    }

    pub fn top(&self) -> Option<usize> {
        if self.maxs.len() == 1 {
            Some(self.maxs[0])
        } else {
            None
        }
    }

    /// Rank of a bounded graded poset: common length of maximal chains.
    pub fn rank(&self) -> Option<u32> {
        if self.is_bounded() && self.graded {
            Some(self.level[self.maxs[0]])
        } else {
            None
        }
    }

    /// Rank of an element above the unique minimum (graded case).
    pub fn rank_of(&self, x: usize) -> u32 {
        self.level[x]
    }

    /// Elements in a fixed linear extension of the order.
    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Möbius values mu(0, y) for all y, by the standard recursion.
    pub fn mobius_from_bottom(&self) -> Result<&[i64], PosetError> {
        let bottom = self.bottom().ok_or(PosetError::NoMinimum)?;
        Ok(self.mu_bottom.get_or_init(|| {
            let n = self.len();
            let mut mu = vec![0i64; n];
            mu[bottom] = 1;
            for &y in &self.topo {
                if y == bottom {
                    continue;
                }
                let mut acc = 0i64;
                for z in self.geq.row_ones(y) {
                    if z != y {
                        acc += mu[z];
                    }
                }
                mu[y] = -acc;
            }
            mu
        }))
    }

    /// Möbius number mu(0, 1) of a bounded poset.
    pub fn mobius_number(&self) -> Result<i64, PosetError> {
        if !self.is_bounded() {
            return Err(PosetError::NotBounded);
        }
        let top = self.maxs[0];
        Ok(self.mobius_from_bottom()?[top])
    }

    /// Philip Hall's chain alternation: sum over strict chains from bottom
    /// to top of (-1)^steps, enumerated by depth-first traversal with a
    /// guard cap.
    pub fn mobius_by_hall(&self, cap: u64) -> Result<i64, PosetError> {
        if !self.is_bounded() {
            return Err(PosetError::NotBounded);
        }
        let bottom = self.mins[0];
        let top = self.maxs[0];
        if bottom == top {
            return Ok(1);
        }
        let mut total: i64 = 0;
        let mut chains_seen: u64 = 0;
        // Stack of (element, parity sign of current step count).
        let mut stack: Vec<(usize, i64)> = vec![(bottom, 1)];
        let mut iters: Vec<std::vec::IntoIter<usize>> = Vec::new();
        let successors = |x: usize| -> std::vec::IntoIter<usize> {
            self.leq
                .row_ones(x)
                .into_iter()
                .filter(|&y| y != x)
                .collect::<Vec<_>>()
                .into_iter()
        };
        iters.push(successors(bottom));
        while let Some(iter) = iters.last_mut() {
            match iter.next() {
                Some(y) => {
                    let sign = -stack.last().unwrap().1;
                    if y == top {
                        total += sign;
                        chains_seen += 1;
                        if chains_seen > cap {
                            return Err(PosetError::CapExceeded(cap));
                        }
                    } else {
                        stack.push((y, sign));
                        iters.push(successors(y));
                    }
                }
                None => {
                    iters.pop();
                    stack.pop();
                }
            }
        }
        Ok(total)
    }

    fn unique_label(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.labels.contains(&candidate) {
            candidate.push('\'');
        }
        candidate
    }

    /// New formal minimum below everything.
    pub fn adjoin_bottom(&self) -> FinitePoset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(self.unique_label("0̂"));
        let mut relations = self.covers.clone();
        for &m in &self.mins {
            relations.push((n, m));
        }
        if self.is_empty() {
            return FinitePoset::from_covers(labels, &[]).expect("bottom adjunction");
        }
        FinitePoset::from_covers(labels, &relations).expect("bottom adjunction")
    }

    /// New formal maximum above everything.
    pub fn adjoin_top(&self) -> FinitePoset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(self.unique_label("1̂"));
        let mut relations = self.covers.clone();
        for &m in &self.maxs {
            relations.push((m, n));
        }
        FinitePoset::from_covers(labels, &relations).expect("top adjunction")
    }

    /// Induced subposet on a set of retained indices (sorted, deduped).
    pub fn induced(&self, keep: &[usize]) -> FinitePoset {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let leq_fn = |a: usize, b: usize| self.leq.get(keep[a], keep[b]);
        FinitePoset::from_order(labels, leq_fn).expect("induced subposet")
    }

    pub fn remove_minimals(&self) -> FinitePoset {
        let keep: Vec<usize> = (0..self.len()).filter(|x| !self.mins.contains(x)).collect();
        self.induced(&keep)
    }

    pub fn remove_maximals(&self) -> FinitePoset {
        let keep: Vec<usize> = (0..self.len()).filter(|x| !self.maxs.contains(x)).collect();
        self.induced(&keep)
    }

    /// Order dual: covers reversed, identical keys.
    pub fn dualize(&self) -> FinitePoset {
        let leq_fn = |a: usize, b: usize| self.leq.get(b, a);
        FinitePoset::from_order(self.labels.clone(), leq_fn).expect("dual poset")
    }

    /// Closed interval [x, y] as an induced subposet; second component maps
    /// interval indices back to `self` indices.
    pub fn interval_with_map(
        &self,
        x: usize,
        y: usize,
    ) -> Result<(FinitePoset, Vec<usize>), PosetError> {
        if !self.leq.get(x, y) {
            return Err(PosetError::NotComparable(x, y));
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq.get(x, z) && self.leq.get(z, y))
            .collect();
        Ok((self.induced(&keep), keep))
    }

    pub fn interval(&self, x: usize, y: usize) -> Result<FinitePoset, PosetError> {
        Ok(self.interval_with_map(x, y)?.0)
    }

    /// Both sides of the maxs-deletion identity
    /// `mu(P \ maxs ∪ {1}) = mu(P ∪ {1}) + sum over maximal x of mu([0, x])`,
    /// computed independently.
    pub fn maxs_deletion_check(&self) -> Result<MaxsDeletionCheck, PosetError> {
        let _ = self.bottom().ok_or(PosetError::NoMinimum)?;
        let lhs_poset = self.remove_maximals().adjoin_top();
        let lhs = lhs_poset
            .mobius_number()
            .expect("adjoined top and unique bottom");
        let with_top = self.adjoin_top();
        let mu_full = with_top
            .mobius_number()
            .expect("adjoined top and unique bottom");
        let mu_bottom = self.mobius_from_bottom()?;
        let sum_maxs: i64 = self.maxs.iter().map(|&x| mu_bottom[x]).sum();
        let rhs = mu_full + sum_maxs;
        Ok(MaxsDeletionCheck {
            lhs,
            rhs,
            equal: lhs == rhs,
        })
    }

    /// JSON export: elements, covers, gradedness, rank.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "elements": self.labels,
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "graded": self.graded,
            "rank": self.rank(),
        })
    }

    /// DOT export of the Hasse diagram with rank-layered layout hints.
    pub fn to_dot(
        &self,
        name: &str,
        edge_label: Option<&dyn Fn(usize, usize) -> String>,
    ) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap();
        }
        let max_level = self.level.iter().copied().max().unwrap_or(0);
        for lv in 0..=max_level {
            let members: Vec<String> = (0..self.len())
                .filter(|&x| self.level[x] == lv)
                .map(|x| format!("n{x};"))
                .collect();
            if !members.is_empty() {
                writeln!(out, "  {{ rank=same; {} }}", members.join(" ")).unwrap();
            }
        }
        for &(a, b) in &self.covers {
            match edge_label {
                Some(f) => writeln!(
                    out,
                    "  n{a} -> n{b} [label=\"{}\"];",
                    f(a, b).replace('"', "\\\"")
                )
                .unwrap(),
                None => writeln!(out, "  n{a} -> n{b};").unwrap(),
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// Result of the maxs-deletion identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxsDeletionCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

fn check_graded(n: usize, topo: &[usize], up_adj: &[Vec<usize>], leq: &BitMatrix) -> bool {
    // For each base element u, chain lengths from u must be single-valued.
    let mut dist = vec![-1i64; n];
    let mut order_pos = vec![0usize; n];
    for (pos, &x) in topo.iter().enumerate() {
        order_pos[x] = pos;
    }
    for &u in topo {
        for d in dist.iter_mut() {
            *d = -1;
        }
        dist[u] = 0;
        for &v in &topo[order_pos[u]..] {
            if dist[v] < 0 {
                continue;
            }
            for &w in &up_adj[v] {
                if !leq.get(u, w) {
                    continue;
                }
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                } else if dist[w] != dist[v] + 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Deterministic graded-poset generator for verification corpora.
///
/// Produces a poset with a unique minimum, covers only between consecutive
/// ranks (hence graded), and at least two elements.
pub fn random_graded_poset(seed: u64, max_elements: usize) -> FinitePoset {
    let mut rng = SplitMix64::new(seed);
    let max_elements = max_elements.max(2);
    let num_ranks = 2 + (rng.next() % 4) as usize; // ranks above 0̂: 1..=4 layers
    let mut sizes = vec![1usize]; // unique minimum
    let mut total = 1;
    for _ in 1..=num_ranks {
        if total >= max_elements {
            break;
        }
        let cap = (max_elements - total).min(6);
        let s = 1 + (rng.next() as usize) % cap;
        sizes.push(s);
        total += s;
    }
    if sizes.len() == 1 {
        sizes.push(1);
        total += 1;
    }
    let mut labels = Vec::with_capacity(total);
    let mut first_of_rank = Vec::new();
    let mut idx = 0;
    for (r, &s) in sizes.iter().enumerate() {
        first_of_rank.push(idx);
        for j in 0..s {
            labels.push(format!("p{r}_{j}"));
            idx += 1;
        }
    }
    let mut relations = Vec::new();
    for r in 1..sizes.len() {
        let below = sizes[r - 1];
        for j in 0..sizes[r] {
            let me = first_of_rank[r] + j;
            let parents = 1 + (rng.next() as usize) % below.min(3);
            let mut chosen = std::collections::BTreeSet::new();
            while chosen.len() < parents {
                chosen.insert(first_of_rank[r - 1] + (rng.next() as usize) % below);
            }
            for p in chosen {
                relations.push((p, me));
            }
        }
    }
    FinitePoset::from_covers(labels, &relations).expect("generated DAG is acyclic")
}

struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

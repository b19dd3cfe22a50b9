//! The noncrossing partition lattice NC(W) = [e, gamma] in absolute order,
//! its natural reflection labeling, and reflection orders that make the
//! labeling an EL-shelling.
//!
//! No fixed order table is assumed: `find_el_reflection_order` proposes
//! candidates from a geometric heuristic (angles of reflection roots in the
//! Coxeter plane), always validates them with the exact EL checker, and
//! falls back to a constraint-guided backtracking search. The checker is
//! the arbiter of correctness.

use std::collections::HashMap;

use crate::coxeter::{CoxeterSystem, ElementId};
use crate::poset::{FinitePoset, PosetError};
use crate::shelling::{self, EdgeLabeling, LabelSet};

#[derive(Debug, thiserror::Error)]
pub enum NcError {
    #[error("no EL-inducing reflection order found within the search budget")]
    SearchExhausted,
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Shelling(#[from] shelling::ShellingError),
}

/// NC(W) with its natural reflection edge-labeling data.
pub struct NCLattice<'a> {
    system: &'a CoxeterSystem,
    poset: FinitePoset,
    element_ids: Vec<ElementId>,
    index_of: HashMap<ElementId, usize>,
}

/// Builds [e, gamma] under absolute order. Elements are indexed by
/// (absolute length, canonical element order) so the bottom is index 0.
pub fn build_nc(system: &CoxeterSystem) -> NCLattice<'_> {
    let gamma = system.gamma_id();
    let mut ids: Vec<ElementId> = (0..system.group_order())
        .filter(|&w| system.leq_ids(w, gamma))
        .collect();
    ids.sort_unstable_by_key(|&w| (system.length_of(w), w));
    let labels: Vec<String> = ids.iter().map(|&w| system.render_id(w)).collect();
    let poset = FinitePoset::from_order(labels, |a, b| system.leq_ids(ids[a], ids[b]))
        .expect("absolute order restricted to [e, gamma]");
    debug_assert!(poset.is_graded());
    let index_of = ids.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    NCLattice {
        system,
        poset,
        element_ids: ids,
        index_of,
    }
}

impl<'a> NCLattice<'a> {
    pub fn system(&self) -> &'a CoxeterSystem {
        self.system
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.element_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Group element id of a poset index.
    pub fn element_id(&self, idx: usize) -> ElementId {
        self.element_ids[idx]
    }

    pub fn element_ids(&self) -> &[ElementId] {
        &self.element_ids
    }

    /// Poset index of a group element id, if it lies in [e, gamma].
    pub fn index_of(&self, id: ElementId) -> Option<usize> {
        self.index_of.get(&id).copied()
    }

    pub fn bottom_index(&self) -> usize {
        self.poset.bottom().expect("NC has a unique minimum e")
    }

    pub fn top_index(&self) -> usize {
        self.poset.top().expect("NC has a unique maximum gamma")
    }

    /// The reflection labeling a cover: x^-1 y.
    pub fn cover_reflection(&self, x: usize, y: usize) -> ElementId {
        let sys = self.system;
        let quot = sys.mul_ids(sys.inv_id(self.element_ids[x]), self.element_ids[y]);
        debug_assert_eq!(sys.length_of(quot), 1);
        quot
    }

    /// Labeling of the Hasse diagram by positions in a reflection order.
    pub fn natural_labeling(&self, order: &ReflectionOrder) -> EdgeLabeling {
        let names: Vec<String> = order
            .sequence()
            .iter()
            .map(|&t| self.system.render_id(t))
            .collect();
        let mut map = HashMap::new();
        for &(x, y) in self.poset.covers() {
            let t = self.cover_reflection(x, y);
            let pos = order
                .position(t)
                .expect("cover label is a reflection of the system");
            map.insert((x, y), pos);
        }
        EdgeLabeling::new(LabelSet::new(names), map)
    }

    /// Möbius values mu(e, w) for every w in NC(W), indexed by poset index.
    pub fn mobius_from_identity(&self) -> &[i64] {
        self.poset
            .mobius_from_bottom()
            .expect("NC has a unique minimum")
    }
}

/// A total order on the reflection set T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionOrder {
    sequence: Vec<ElementId>,
    position: HashMap<ElementId, usize>,
}

impl ReflectionOrder {
    pub fn new(system: &CoxeterSystem, sequence: Vec<ElementId>) -> Option<ReflectionOrder> {
        let mut sorted = sequence.clone();
        sorted.sort_unstable();
        let mut canonical = system.reflection_ids().to_vec();
        canonical.sort_unstable();
        if sorted != canonical {
            return None;
        }
        let position = sequence.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Some(ReflectionOrder { sequence, position })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[ElementId] {
        &self.sequence
    }

    pub fn position(&self, t: ElementId) -> Option<usize> {
        self.position.get(&t).copied()
    }
}

/// Search budget: node visits in the backtracking stage.
const SEARCH_BUDGET: u64 = 10_000_000;

/// Finds a reflection order under which the natural labeling of NC(W) is an
/// EL-labeling. Deterministic: geometric candidates are tried first and the
/// lexicographically smallest valid one (w.r.t. canonical reflection
/// indices) is returned; a budgeted backtracking search is the fallback.
pub fn find_el_reflection_order(nc: &NCLattice<'_>) -> Result<ReflectionOrder, NcError> {
    let system = nc.system();
    let reflections = system.reflection_ids().to_vec();
    let n_refl = reflections.len();
    if n_refl == 1 {
        return Ok(ReflectionOrder::new(system, reflections).expect("singleton order"));
    }

    let mut valid: Vec<Vec<ElementId>> = Vec::new();
    for cand in heuristic_candidates(nc, &reflections) {
        let order = ReflectionOrder::new(system, cand).expect("candidate is a permutation of T");
        if order_is_el(nc, &order) {
            valid.push(order.sequence().to_vec());
        }
    }
    if !valid.is_empty() {
        valid.sort_unstable();
        valid.dedup();
        let best = valid.remove(0);
        return Ok(ReflectionOrder::new(system, best).expect("validated order"));
    }

    backtracking_search(nc, &reflections)
}

fn order_is_el(nc: &NCLattice<'_>, order: &ReflectionOrder) -> bool {
    let labeling = nc.natural_labeling(order);
    shelling::is_el_labeling(nc.poset(), &labeling)
        .map(|r| r.is_el)
        .unwrap_or(false)
}

/// Geometric candidates: reflections sorted by the angle of their root's
/// projection onto the Coxeter plane, in all cyclic rotations and both
/// orientations, plus the canonical order and its reverse.
fn heuristic_candidates(nc: &NCLattice<'_>, reflections: &[ElementId]) -> Vec<Vec<ElementId>> {
    let system = nc.system();
    let n_refl = reflections.len();
    let mut candidates: Vec<Vec<ElementId>> = Vec::new();

    let roots = system.reflection_roots_f64();
    let dim = roots[0].len();
    let gamma_mat = system.euclidean_matrix_f64(system.gamma_id());
    let h = crate::catalan::degrees(system.ctype())
        .map(|d| d.coxeter_number)
        .unwrap_or(2);
    if let Some((u, v)) = coxeter_plane(&gamma_mat, dim, h) {
        let mut keyed: Vec<(f64, usize)> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let x: f64 = r.iter().zip(&u).map(|(a, b)| a * b).sum();
                let y: f64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                let mut theta = y.atan2(x);
                if theta < 0.0 {
                    theta += std::f64::consts::PI;
                }
                if theta >= std::f64::consts::PI {
                    theta -= std::f64::consts::PI;
                }
                (theta, i)
            })
            .collect();
        keyed.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        let base: Vec<ElementId> = keyed.iter().map(|&(_, i)| reflections[i]).collect();
        for start in 0..n_refl {
            let rotated: Vec<ElementId> = (0..n_refl).map(|i| base[(start + i) % n_refl]).collect();
            let mut reversed = rotated.clone();
            reversed.reverse();
            candidates.push(rotated);
            candidates.push(reversed);
        }
    }

    candidates.push(reflections.to_vec());
    let mut rev = reflections.to_vec();
    rev.reverse();
    candidates.push(rev);
    candidates.sort_unstable();
    candidates.dedup();
    candidates
}

/// Basis of the plane on which gamma acts by rotation through 2 pi / h,
/// via cyclic Jacobi diagonalization of gamma + gamma^T. Heuristic only.
#[allow(clippy::needless_range_loop)]
fn coxeter_plane(gamma: &[Vec<f64>], dim: usize, h: u64) -> Option<(Vec<f64>, Vec<f64>)> {
    if dim < 2 {
        return None;
    }
    let target = 2.0 * (2.0 * std::f64::consts::PI / h as f64).cos();
    let mut a = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            a[i][j] = gamma[i][j] + gamma[j][i];
        }
    }
    let mut v = vec![vec![0.0; dim]; dim];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    // Cyclic Jacobi sweeps.
    for _ in 0..60 {
        let mut off = 0.0;
        for p in 0..dim {
            for q in (p + 1)..dim {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let theta = 0.5 * (2.0 * a[p][q]).atan2(a[q][q] - a[p][p]);
                let (s, c) = theta.sin_cos();
                for k in 0..dim {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..dim {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut by_dist: Vec<(f64, usize)> = (0..dim).map(|i| ((a[i][i] - target).abs(), i)).collect();
    by_dist.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    let (i, j) = (by_dist[0].1, by_dist[1].1);
    let col = |c: usize| -> Vec<f64> { (0..dim).map(|r| v[r][c]).collect() };
    Some((col(i), col(j)))
}

/// Rank-2 interval constraint: atoms of [e, w] for a length-2 element w,
/// with the successor map t -> t w (the second label of the chain through t).
struct RankTwoConstraint {
    atoms: Vec<usize>,     // positions in the reflection list
    successor: Vec<usize>, // successor[i] pairs with atoms[i]
}

fn rank_two_constraints(nc: &NCLattice<'_>, reflections: &[ElementId]) -> Vec<RankTwoConstraint> {
    let system = nc.system();
    let refl_pos: HashMap<ElementId, usize> = reflections
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect();
    let mut out = Vec::new();
    for idx in 0..nc.len() {
        let w = nc.element_id(idx);
        if system.length_of(w) != 2 {
            continue;
        }
        let mut atoms = Vec::new();
        let mut successor = Vec::new();
        for (tpos, &t) in reflections.iter().enumerate() {
            if system.leq_ids(t, w) {
                let s = system.mul_ids(t, w); // t^-1 w for an involution t
                atoms.push(tpos);
                successor.push(refl_pos[&s]);
            }
        }
        out.push(RankTwoConstraint { atoms, successor });
    }
    out
}

/// Lexicographic backtracking over reflection orders. The rank-2 pruning
/// rule: a reflection may be placed only if, in every rank-2 interval
/// containing it, it is either the first of that interval's atoms to be
/// placed (it will head the unique rising chain) or its successor is
/// already placed (its chain falls). Complete orders still run the full
/// EL checker.
fn backtracking_search(
    nc: &NCLattice<'_>,
    reflections: &[ElementId],
) -> Result<ReflectionOrder, NcError> {
    let system = nc.system();
    let n_refl = reflections.len();
    let constraints = rank_two_constraints(nc, reflections);
    // For each reflection position, the constraints mentioning it.
    let mut involving: Vec<Vec<usize>> = vec![Vec::new(); n_refl];
    for (ci, c) in constraints.iter().enumerate() {
        for &a in &c.atoms {
            involving[a].push(ci);
        }
    }

    let mut placed = vec![false; n_refl];
    let mut placed_count_per_constraint = vec![0usize; constraints.len()];
    let mut sequence: Vec<usize> = Vec::with_capacity(n_refl);
    let mut budget = SEARCH_BUDGET;

    fn can_place(
        x: usize,
        constraints: &[RankTwoConstraint],
        involving: &[Vec<usize>],
        placed: &[bool],
        placed_count: &[usize],
    ) -> bool {
        for &ci in &involving[x] {
            let c = &constraints[ci];
            if placed_count[ci] == 0 {
                continue; // x heads this interval's rising chain
            }
            let i = c.atoms.iter().position(|&a| a == x).expect("member");
            if !placed[c.successor[i]] {
                return false;
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        nc: &NCLattice<'_>,
        reflections: &[ElementId],
        constraints: &[RankTwoConstraint],
        involving: &[Vec<usize>],
        placed: &mut [bool],
        placed_count: &mut [usize],
        sequence: &mut Vec<usize>,
        budget: &mut u64,
    ) -> Option<Vec<ElementId>> {
        if sequence.len() == reflections.len() {
            let seq: Vec<ElementId> = sequence.iter().map(|&i| reflections[i]).collect();
            let order = ReflectionOrder::new(nc.system(), seq.clone()).expect("permutation of T");
            if order_is_el(nc, &order) {
                return Some(seq);
            }
            return None;
        }
        for x in 0..reflections.len() {
            if placed[x] || *budget == 0 {
                continue;
            }
            *budget -= 1;
            if !can_place(x, constraints, involving, placed, placed_count) {
                continue;
            }
            placed[x] = true;
            for &ci in &involving[x] {
                placed_count[ci] += 1;
            }
            sequence.push(x);
            if let Some(found) = rec(
                nc,
                reflections,
                constraints,
                involving,
                placed,
                placed_count,
                sequence,
                budget,
            ) {
                return Some(found);
            }
            sequence.pop();
            for &ci in &involving[x] {
                placed_count[ci] -= 1;
            }
            placed[x] = false;
        }
        None
    }

    match rec(
        nc,
        reflections,
        &constraints,
        &involving,
        &mut placed,
        &mut placed_count_per_constraint,
        &mut sequence,
        &mut budget,
    ) {
        Some(seq) => Ok(ReflectionOrder::new(system, seq).expect("validated order")),
        None => Err(NcError::SearchExhausted),
    }
}

//! Edge labelings over totally ordered label sets, the EL-labeling checker,
//! falling-chain censuses, and the lex block labeling of the k-divisible
//! poset with a top adjoined.
//!
//! The checker is exhaustive: it enumerates every saturated chain of every
//! interval. Posets here are desk-scale, so honest enumeration beats
//! cleverness.

use std::collections::HashMap;

use crate::coxeter::{CoxeterSystem, ElementId};
use crate::kdiv;
use crate::nc::{NCLattice, ReflectionOrder};
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, thiserror::Error)]
pub enum ShellingError {
    #[error("poset is not graded")]
    NotGraded,
    #[error("poset is not bounded")]
    NotBounded,
    #[error("cover ({0}, {1}) has no label")]
    MissingLabel(usize, usize),
    #[error("chain is not unrefinable: ({0}, {1}) is not a cover")]
    NotUnrefinable(usize, usize),
    #[error("malformed cover: {0}")]
    MalformedCover(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Kdiv(#[from] kdiv::KdivError),
}

/// A totally ordered finite label set; labels are compared by position.
#[derive(Clone, Debug)]
pub struct LabelSet {
    names: Vec<String>,
}

impl LabelSet {
    pub fn new(names: Vec<String>) -> Self {
        LabelSet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, pos: usize) -> &str {
        &self.names[pos]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A total map from cover pairs to label positions.
#[derive(Clone, Debug)]
pub struct EdgeLabeling {
    label_set: LabelSet,
    map: HashMap<(usize, usize), usize>,
}

impl EdgeLabeling {
    pub fn new(label_set: LabelSet, map: HashMap<(usize, usize), usize>) -> Self {
        EdgeLabeling { label_set, map }
    }

    pub fn label_set(&self) -> &LabelSet {
        &self.label_set
    }

    pub fn label_of(&self, x: usize, y: usize) -> Option<usize> {
        self.map.get(&(x, y)).copied()
    }

    pub fn edges(&self) -> &HashMap<(usize, usize), usize> {
        &self.map
    }

    fn require_total(&self, poset: &FinitePoset) -> Result<(), ShellingError> {
        for &(x, y) in poset.covers() {
            if !self.map.contains_key(&(x, y)) {
                return Err(ShellingError::MissingLabel(x, y));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut edges: Vec<(usize, usize, usize)> =
            self.map.iter().map(|(&(x, y), &p)| (x, y, p)).collect();
        edges.sort_unstable();
        serde_json::json!({
            "labels": self.label_set.names(),
            "edges": edges.iter().map(|&(x, y, p)| [x, y, p]).collect::<Vec<_>>(),
        })
    }
}

/// Strictly increasing.
pub fn is_rising(word: &[usize]) -> bool {
    word.windows(2).all(|w| w[0] < w[1])
}

/// Weakly decreasing.
pub fn is_falling(word: &[usize]) -> bool {
    word.windows(2).all(|w| w[0] >= w[1])
}

/// Label word of an unrefinable chain.
pub fn chain_label_word(
    poset: &FinitePoset,
    labeling: &EdgeLabeling,
    chain: &[usize],
) -> Result<Vec<usize>, ShellingError> {
    let mut word = Vec::with_capacity(chain.len().saturating_sub(1));
    for pair in chain.windows(2) {
        let (x, y) = (pair[0], pair[1]);
        if !poset.up_covers(x).contains(&y) {
            return Err(ShellingError::NotUnrefinable(x, y));
        }
        let pos = labeling
            .label_of(x, y)
            .ok_or(ShellingError::MissingLabel(x, y))?;
        word.push(pos);
    }
    Ok(word)
}

/// Chains grouped by their top element: (elements, label word) pairs.
type ChainsByTop = HashMap<usize, Vec<(Vec<usize>, Vec<usize>)>>;

/// Why an interval failed the EL conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElFailure {
    NoRisingChain,
    MultipleRisingChains,
    RisingChainNotLexSmallest,
}

/// Offending interval and the chains that witnessed the failure.
#[derive(Clone, Debug)]
pub struct ElWitness {
    pub bottom: usize,
    pub top: usize,
    pub kind: ElFailure,
    pub chains: Vec<(Vec<usize>, Vec<usize>)>,
}

impl ElWitness {
    pub fn to_json(&self, poset: &FinitePoset) -> serde_json::Value {
        serde_json::json!({
            "interval": [poset.label(self.bottom), poset.label(self.top)],
            "failure": format!("{:?}", self.kind),
            "chains": self
                .chains
                .iter()
                .map(|(chain, word)| {
                    serde_json::json!({
                        "elements": chain.iter().map(|&i| poset.label(i)).collect::<Vec<_>>(),
                        "word": word,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug)]
pub struct ElCheck {
    pub is_el: bool,
    pub witness: Option<ElWitness>,
}

/// Exhaustive EL check: every nonsingleton interval must have a unique
/// rising maximal chain that is strictly lexicographically smallest.
pub fn is_el_labeling(
    poset: &FinitePoset,
    labeling: &EdgeLabeling,
) -> Result<ElCheck, ShellingError> {
    if !poset.is_graded() {
        return Err(ShellingError::NotGraded);
    }
    labeling.require_total(poset)?;

    let n = poset.len();
    for u in 0..n {
        // All saturated chains starting at u, grouped by endpoint. The
        // chains reaching v are exactly the maximal chains of [u, v].
        let mut by_top: ChainsByTop = HashMap::new();
        let mut chain = vec![u];
        let mut word: Vec<usize> = Vec::new();
        collect_chains(poset, labeling, &mut chain, &mut word, &mut by_top);

        let mut tops: Vec<usize> = by_top.keys().copied().collect();
        tops.sort_unstable();
        for v in tops {
            let chains = &by_top[&v];
            let rising: Vec<usize> = (0..chains.len())
                .filter(|&i| is_rising(&chains[i].1))
                .collect();
            if rising.len() != 1 {
                let kind = if rising.is_empty() {
                    ElFailure::NoRisingChain
                } else {
                    ElFailure::MultipleRisingChains
                };
                let witness_chains = if rising.is_empty() {
                    chains.clone()
                } else {
                    rising.iter().map(|&i| chains[i].clone()).collect()
                };
                return Ok(ElCheck {
                    is_el: false,
                    witness: Some(ElWitness {
                        bottom: u,
                        top: v,
                        kind,
                        chains: witness_chains,
                    }),
                });
            }
            let r = rising[0];
            for (i, c) in chains.iter().enumerate() {
                if i != r && chains[r].1 >= c.1 {
                    return Ok(ElCheck {
                        is_el: false,
                        witness: Some(ElWitness {
                            bottom: u,
                            top: v,
                            kind: ElFailure::RisingChainNotLexSmallest,
                            chains: vec![chains[r].clone(), c.clone()],
                        }),
                    });
                }
            }
        }
    }
    Ok(ElCheck {
        is_el: true,
        witness: None,
    })
}

fn collect_chains(
    poset: &FinitePoset,
    labeling: &EdgeLabeling,
    chain: &mut Vec<usize>,
    word: &mut Vec<usize>,
    by_top: &mut ChainsByTop,
) {
    let x = *chain.last().expect("nonempty chain");
    for &y in poset.up_covers(x) {
        let pos = labeling.label_of(x, y).expect("labeling checked total");
        chain.push(y);
        word.push(pos);
        by_top
            .entry(y)
            .or_default()
            .push((chain.clone(), word.clone()));
        collect_chains(poset, labeling, chain, word, by_top);
        chain.pop();
        word.pop();
    }
}

/// Number of maximal chains whose label word weakly decreases; prunes as
/// soon as a prefix stops falling.
pub fn count_falling_maximal_chains(
    poset: &FinitePoset,
    labeling: &EdgeLabeling,
) -> Result<u64, ShellingError> {
    Ok(falling_maximal_chains(poset, labeling)?.len() as u64)
}

/// The falling maximal chains themselves (bottom to top inclusive).
pub fn falling_maximal_chains(
    poset: &FinitePoset,
    labeling: &EdgeLabeling,
) -> Result<Vec<Vec<usize>>, ShellingError> {
    if !poset.is_bounded() {
        return Err(ShellingError::NotBounded);
    }
    if !poset.is_graded() {
        return Err(ShellingError::NotGraded);
    }
    labeling.require_total(poset)?;
    let bottom = poset.bottom().expect("bounded");
    let top = poset.top().expect("bounded");
    let mut out = Vec::new();
    let mut chain = vec![bottom];
    fn rec(
        poset: &FinitePoset,
        labeling: &EdgeLabeling,
        top: usize,
        chain: &mut Vec<usize>,
        last_label: Option<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = *chain.last().expect("nonempty");
        if x == top {
            out.push(chain.clone());
            return;
        }
        for &y in poset.up_covers(x) {
            let pos = labeling.label_of(x, y).expect("total labeling");
            if let Some(prev) = last_label {
                if pos > prev {
                    continue; // prefix no longer weakly decreasing
                }
            }
            chain.push(y);
            rec(poset, labeling, top, chain, Some(pos), out);
            chain.pop();
        }
    }
    rec(poset, labeling, top, &mut chain, None, &mut out);
    Ok(out)
}

/// The lex block labeling of NC_(k)(W) with a formal top adjoined.
///
/// `poset_with_top` must be the delta-sequence poset with the top appended
/// as its last index, and `deltas[i]` the sequence at index `i`. A cover
/// inside the poset changes exactly one coordinate `i` by a reflection `t`;
/// it is labeled by `t` inside block `i`. Covers into the top get the
/// distinguished separator label, placed between blocks 1 and 2.
pub fn lex_block_labeling(
    system: &CoxeterSystem,
    poset_with_top: &FinitePoset,
    deltas: &[Vec<ElementId>],
    order: &ReflectionOrder,
) -> Result<EdgeLabeling, ShellingError> {
    let top = deltas.len();
    if poset_with_top.len() != top + 1 {
        return Err(ShellingError::MalformedCover(
            "poset size does not match delta list plus top".into(),
        ));
    }
    let k = deltas.first().map(|d| d.len()).unwrap_or(1);
    let n_refl = order.len();

    let mut names = Vec::with_capacity(k * n_refl + 1);
    for block in 1..=k {
        if block == 2 {
            names.push("θ".to_string());
        }
        for j in 0..n_refl {
            names.push(format!(
                "t[{},{}]={}",
                block,
                j + 1,
                system.render_id(order.sequence()[j])
            ));
        }
    }
    if k == 1 {
        names.push("θ".to_string());
    }
    let position = |block: usize, j: usize| -> usize {
        if block == 1 {
            j
        } else {
            n_refl + 1 + (block - 2) * n_refl + j
        }
    };
    let theta_pos = n_refl;

    let mut map = HashMap::new();
    for &(x, y) in poset_with_top.covers() {
        if y == top {
            map.insert((x, y), theta_pos);
            continue;
        }
        let (dx, dy) = (&deltas[x], &deltas[y]);
        let changed: Vec<usize> = (0..k).filter(|&i| dx[i] != dy[i]).collect();
        if changed.len() != 1 {
            return Err(ShellingError::MalformedCover(format!(
                "cover ({x}, {y}) changes {} coordinates",
                changed.len()
            )));
        }
        let i = changed[0];
        let t = system.mul_ids(system.inv_id(dx[i]), dy[i]);
        let j = order.position(t).ok_or_else(|| {
            ShellingError::MalformedCover(format!("cover ({x}, {y}) quotient is not a reflection"))
        })?;
        map.insert((x, y), position(i + 1, j));
    }
    Ok(EdgeLabeling::new(LabelSet::new(names), map))
}

/// One contributing factorization in the block decomposition, with the
/// per-coordinate falling-chain counts and their product.
#[derive(Clone, Debug)]
pub struct DecompositionEntry {
    pub delta: Vec<ElementId>,
    pub per_block: Vec<u64>,
    pub product: u64,
}

/// Census of falling maximal chains of NC_(k)(W) ∪ {1̂} via the block
/// decomposition: one maximal factorization with first coordinate e, and an
/// independent falling chain of [e, delta_i] for each later coordinate.
#[derive(Clone, Debug)]
pub struct DecompositionCensus {
    pub total: u64,
    pub entries: Vec<DecompositionEntry>,
}

pub fn falling_chain_decomposition_report(
    nc: &NCLattice<'_>,
    maximal_factorizations: &[Vec<ElementId>],
    order: &ReflectionOrder,
) -> DecompositionCensus {
    let identity = nc.system().identity_id();
    let labeling = nc.natural_labeling(order);
    let mut memo: HashMap<usize, u64> = HashMap::new();
    let mut total = 0u64;
    let mut entries = Vec::new();
    for delta in maximal_factorizations {
        if delta[0] != identity {
            continue;
        }
        let mut per_block = Vec::with_capacity(delta.len().saturating_sub(1));
        let mut product = 1u64;
        for &d in &delta[1..] {
            let idx = nc.index_of(d).expect("delta entry lies in NC(W)");
            let count = *memo
                .entry(idx)
                .or_insert_with(|| falling_chains_to(nc.poset(), &labeling, idx));
            per_block.push(count);
            product *= count;
        }
        total += product;
        entries.push(DecompositionEntry {
            delta: delta.clone(),
            per_block,
            product,
        });
    }
    DecompositionCensus { total, entries }
}

/// Total of `falling_chain_decomposition_report`.
pub fn falling_chain_decomposition_census(
    nc: &NCLattice<'_>,
    maximal_factorizations: &[Vec<ElementId>],
    order: &ReflectionOrder,
) -> u64 {
    falling_chain_decomposition_report(nc, maximal_factorizations, order).total
}

/// Falling saturated chains from the bottom of NC(W) to a fixed element.
fn falling_chains_to(poset: &FinitePoset, labeling: &EdgeLabeling, target: usize) -> u64 {
    let bottom = poset.bottom().expect("NC has a bottom");
    fn rec(
        poset: &FinitePoset,
        labeling: &EdgeLabeling,
        target: usize,
        x: usize,
        last: Option<usize>,
    ) -> u64 {
        if x == target {
            return 1;
        }
        let mut acc = 0;
        for &y in poset.up_covers(x) {
            if !poset.leq(y, target) {
                continue;
            }
            let pos = labeling.label_of(x, y).expect("total labeling");
            if let Some(prev) = last {
                if pos > prev {
                    continue;
                }
            }
            acc += rec(poset, labeling, target, y, Some(pos));
        }
        acc
    }
    rec(poset, labeling, target, bottom, None)
}

/// Sum over the j-part minimal-length factorizations of gamma of the
/// product of Möbius values mu([e, delta_i]) inside NC(W).
pub fn factorization_mobius_sum(
    nc: &NCLattice<'_>,
    j: usize,
    cap: usize,
) -> Result<i128, ShellingError> {
    let factorizations = kdiv::factorizations_of_gamma(nc, j, cap)?;
    let mu = nc.mobius_from_identity();
    let mut total: i128 = 0;
    for delta in &factorizations {
        let mut term: i128 = 1;
        for &d in delta {
            let idx = nc.index_of(d).expect("factor lies in NC(W)");
            term *= mu[idx] as i128;
        }
        total += term;
    }
    Ok(total)
}

/// Sum of mu(0̂, x) over the maximal elements x of a poset with a unique
/// minimum.
pub fn sum_mobius_to_maxs(poset: &FinitePoset) -> Result<i64, PosetError> {
    let mu = poset.mobius_from_bottom()?;
    Ok(poset.maximals().iter().map(|&x| mu[x]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_falling_words() {
        assert!(is_rising(&[1, 2, 3]));
        assert!(!is_falling(&[1, 2, 3]));
        assert!(!is_rising(&[3, 3, 1]));
        assert!(is_falling(&[3, 3, 1]));
        assert!(!is_rising(&[1, 1, 2]));
        assert!(!is_falling(&[1, 1, 2]));
        // One-letter words are both rising and falling.
        assert!(is_rising(&[5]) && is_falling(&[5]));
    }

    fn two_chain_with_labeling() -> (FinitePoset, EdgeLabeling) {
        let poset = FinitePoset::from_covers(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        let mut map = HashMap::new();
        map.insert((0, 1), 0);
        let labeling = EdgeLabeling::new(LabelSet::new(vec!["x".into()]), map);
        (poset, labeling)
    }

    #[test]
    fn two_chain_is_el_with_any_labeling() {
        let (poset, labeling) = two_chain_with_labeling();
        let check = is_el_labeling(&poset, &labeling).unwrap();
        assert!(check.is_el);
        assert_eq!(count_falling_maximal_chains(&poset, &labeling).unwrap(), 1);
    }

    #[test]
    fn chain_words_and_errors() {
        let (poset, labeling) = two_chain_with_labeling();
        assert_eq!(
            chain_label_word(&poset, &labeling, &[0, 1]).unwrap(),
            vec![0]
        );
        assert!(matches!(
            chain_label_word(&poset, &labeling, &[1, 0]),
            Err(ShellingError::NotUnrefinable(1, 0))
        ));
    }

    #[test]
    fn diamond_with_equal_labels_fails_el() {
        // Both chains rise under labels (0,1)/(0,1): multiple rising chains.
        let poset = FinitePoset::from_covers(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let mut map = HashMap::new();
        map.insert((0, 1), 0);
        map.insert((1, 3), 1);
        map.insert((0, 2), 0);
        map.insert((2, 3), 1);
        let labeling = EdgeLabeling::new(LabelSet::new(vec!["p".into(), "q".into()]), map);
        let check = is_el_labeling(&poset, &labeling).unwrap();
        assert!(!check.is_el);
        let witness = check.witness.unwrap();
        assert_eq!(witness.kind, ElFailure::MultipleRisingChains);
        assert_eq!((witness.bottom, witness.top), (0, 3));
    }

    #[test]
    fn witness_serializes_interval_and_chains() {
        let poset = FinitePoset::from_covers(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let mut map = HashMap::new();
        map.insert((0, 1), 0);
        map.insert((1, 3), 1);
        map.insert((0, 2), 0);
        map.insert((2, 3), 1);
        let labeling = EdgeLabeling::new(LabelSet::new(vec!["p".into(), "q".into()]), map);
        let witness = is_el_labeling(&poset, &labeling)
            .unwrap()
            .witness
            .expect("two rising chains");
        let json = witness.to_json(&poset);
        assert_eq!(json["interval"], serde_json::json!(["0", "1"]));
        assert_eq!(json["chains"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn diamond_with_good_labels_is_el() {
        let poset = FinitePoset::from_covers(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let mut map = HashMap::new();
        map.insert((0, 1), 0);
        map.insert((1, 3), 1);
        map.insert((0, 2), 1);
        map.insert((2, 3), 0);
        let labeling = EdgeLabeling::new(LabelSet::new(vec!["p".into(), "q".into()]), map);
        let check = is_el_labeling(&poset, &labeling).unwrap();
        assert!(check.is_el, "{:?}", check.witness);
        // mu = (-1)^rank * falling count: 1 = (+1) * 1.
        assert_eq!(count_falling_maximal_chains(&poset, &labeling).unwrap(), 1);
        assert_eq!(poset.mobius_number().unwrap(), 1);
    }
}

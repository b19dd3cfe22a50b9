//! The k-divisible noncrossing partition posets: NC^(k)(W) on multichains,
//! NC_(k)(W) on delta sequences, the order-reversing duality between them,
//! and the surgered posets whose Möbius numbers the harness verifies.
//!
//! A delta sequence is admitted when every partial product delta_1..delta_i
//! is length-additive and lies in NC(W). The weaker reading that only asks
//! each entry to lie in NC(W) overcounts (it admits pairs of reflections
//! whose product has length two but sits outside [e, gamma]), and is kept
//! available as a diagnostic count.

use std::collections::HashMap;

use crate::coxeter::{CoxeterError, CoxeterSystem, ElementId, GroupElement};
use crate::nc::NCLattice;
use crate::poset::{FinitePoset, PosetError};

/// Default cap on constructed poset sizes.
pub const DEFAULT_ELEMENT_CAP: usize = 250_000;

#[derive(Debug, thiserror::Error)]
pub enum KdivError {
    #[error("k must be at least 1")]
    InvalidK,
    #[error("construction exceeds the element cap ({cap}); pass a larger cap to proceed")]
    ScaleExceeded { cap: usize },
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A multichain pi_1 <= ... <= pi_k <= gamma in NC(W).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiChain {
    entries: Vec<GroupElement>,
}

impl MultiChain {
    pub fn new(system: &CoxeterSystem, entries: Vec<GroupElement>) -> Result<Self, KdivError> {
        if entries.is_empty() {
            return Err(KdivError::InvalidK);
        }
        let mut ids = Vec::with_capacity(entries.len());
        for e in &entries {
            ids.push(
                system
                    .id_of(e)
                    .ok_or(KdivError::Coxeter(CoxeterError::MixedSystems))?,
            );
        }
        for pair in ids.windows(2) {
            if !system.leq_ids(pair[0], pair[1]) {
                return Err(KdivError::InvalidSequence(
                    "multichain entries are not weakly increasing".into(),
                ));
            }
        }
        if !system.leq_ids(*ids.last().expect("nonempty"), system.gamma_id()) {
            return Err(KdivError::InvalidSequence(
                "last multichain entry is not below gamma".into(),
            ));
        }
        Ok(MultiChain { entries })
    }

    pub fn entries(&self) -> &[GroupElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A delta sequence: all partial products delta_1..delta_i length-additive
/// and inside NC(W).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaSequence {
    entries: Vec<GroupElement>,
}

impl DeltaSequence {
    pub fn new(system: &CoxeterSystem, entries: Vec<GroupElement>) -> Result<Self, KdivError> {
        if entries.is_empty() {
            return Err(KdivError::InvalidK);
        }
        let gamma = system.gamma_id();
        let mut partial = system.identity_id();
        let mut total_len = 0u32;
        for e in &entries {
            let d = system
                .id_of(e)
                .ok_or(KdivError::Coxeter(CoxeterError::MixedSystems))?;
            let next = system.mul_ids(partial, d);
            total_len += system.length_of(d);
            if system.length_of(next) != total_len {
                return Err(KdivError::InvalidSequence(
                    "partial products are not length-additive".into(),
                ));
            }
            if !system.leq_ids(next, gamma) {
                return Err(KdivError::InvalidSequence(
                    "partial product leaves [e, gamma]".into(),
                ));
            }
            partial = next;
        }
        Ok(DeltaSequence { entries })
    }

    pub fn entries(&self) -> &[GroupElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// NC^(k)(W): multichains with the quotient-reversing order.
pub struct UpperPoset {
    pub poset: FinitePoset,
    /// Multichain at each poset index, as group element ids.
    pub multichains: Vec<Vec<ElementId>>,
    /// Delta sequence of each multichain (consecutive quotients).
    pub deltas: Vec<Vec<ElementId>>,
}

/// NC_(k)(W): delta sequences with the componentwise order.
pub struct LowerPoset {
    pub poset: FinitePoset,
    /// Delta sequence at each poset index, as group element ids.
    pub deltas: Vec<Vec<ElementId>>,
}

fn render_tuple(system: &CoxeterSystem, ids: &[ElementId], open: &str, close: &str) -> String {
    let inner: Vec<String> = ids.iter().map(|&w| system.render_id(w)).collect();
    format!("{}{}{}", open, inner.join(" | "), close)
}

/// Enumerates all multichains of length k in NC(W), as nc poset indices,
/// in lexicographic order.
fn enumerate_multichains(
    nc: &NCLattice<'_>,
    k: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, KdivError> {
    let m = nc.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        nc: &NCLattice<'_>,
        m: usize,
        k: usize,
        cap: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), KdivError> {
        if current.len() == k {
            if out.len() >= cap {
                return Err(KdivError::ScaleExceeded { cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let lo = *current.last().unwrap_or(&0);
        for cand in 0..m {
            // Multichain condition: candidate must dominate the previous
            // entry in absolute order.
            if let Some(&prev) = current.last() {
                if !nc.poset().leq(prev, cand) {
                    continue;
                }
            } else if cand < lo {
                continue;
            }
            current.push(cand);
            rec(nc, m, k, cap, current, out)?;
            current.pop();
        }
        Ok(())
    }
    rec(nc, m, k, cap, &mut current, &mut out)?;
    Ok(out)
}

fn deltas_of_multichain(nc: &NCLattice<'_>, chain_nc_indices: &[usize]) -> Vec<ElementId> {
    let sys = nc.system();
    let gamma = sys.gamma_id();
    let k = chain_nc_indices.len();
    (0..k)
        .map(|i| {
            let pi = nc.element_id(chain_nc_indices[i]);
            let pi_next = if i + 1 < k {
                nc.element_id(chain_nc_indices[i + 1])
            } else {
                gamma
            };
            sys.mul_ids(sys.inv_id(pi), pi_next)
        })
        .collect()
}

/// Builds NC^(k)(W). The order is the quotient condition: a <= b iff every
/// consecutive quotient of b lies below the matching quotient of a.
pub fn build_nc_upper(nc: &NCLattice<'_>, k: usize, cap: usize) -> Result<UpperPoset, KdivError> {
    if k == 0 {
        return Err(KdivError::InvalidK);
    }
    let sys = nc.system();
    let chains = enumerate_multichains(nc, k, cap)?;
    let deltas: Vec<Vec<ElementId>> = chains.iter().map(|c| deltas_of_multichain(nc, c)).collect();
    // Quotients live in NC(W); compare them through the nc poset closure.
    let delta_nc_idx: Vec<Vec<usize>> = deltas
        .iter()
        .map(|d| {
            d.iter()
                .map(|&w| nc.index_of(w).expect("quotients lie in NC(W)"))
                .collect()
        })
        .collect();
    let multichains: Vec<Vec<ElementId>> = chains
        .iter()
        .map(|c| c.iter().map(|&i| nc.element_id(i)).collect())
        .collect();
    let labels: Vec<String> = multichains
        .iter()
        .map(|c| render_tuple(sys, c, "⟨", "⟩"))
        .collect();
    let poset = FinitePoset::from_order(labels, |a, b| {
        delta_nc_idx[a]
            .iter()
            .zip(&delta_nc_idx[b])
            .all(|(&da, &db)| nc.poset().leq(db, da))
    })?;
    Ok(UpperPoset {
        poset,
        multichains,
        deltas,
    })
}

/// Builds NC_(k)(W): delta sequences ordered componentwise.
pub fn build_nc_lower(nc: &NCLattice<'_>, k: usize, cap: usize) -> Result<LowerPoset, KdivError> {
    if k == 0 {
        return Err(KdivError::InvalidK);
    }
    let sys = nc.system();
    let m = nc.len();
    let mut seqs: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(k);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        nc: &NCLattice<'_>,
        m: usize,
        k: usize,
        cap: usize,
        partial: ElementId,
        partial_len: u32,
        current: &mut Vec<usize>,
        seqs: &mut Vec<Vec<usize>>,
    ) -> Result<(), KdivError> {
        if current.len() == k {
            if seqs.len() >= cap {
                return Err(KdivError::ScaleExceeded { cap });
            }
            seqs.push(current.clone());
            return Ok(());
        }
        let sys = nc.system();
        for cand in 0..m {
            let d = nc.element_id(cand);
            let next = sys.mul_ids(partial, d);
            let next_len = partial_len + sys.length_of(d);
            if sys.length_of(next) != next_len {
                continue;
            }
            if nc.index_of(next).is_none() {
                continue;
            }
            current.push(cand);
            rec(nc, m, k, cap, next, next_len, current, seqs)?;
            current.pop();
        }
        Ok(())
    }
    rec(nc, m, k, cap, sys.identity_id(), 0, &mut current, &mut seqs)?;

    let deltas: Vec<Vec<ElementId>> = seqs
        .iter()
        .map(|s| s.iter().map(|&i| nc.element_id(i)).collect())
        .collect();
    let labels: Vec<String> = deltas
        .iter()
        .map(|d| render_tuple(sys, d, "(", ")"))
        .collect();
    let poset = FinitePoset::from_order(labels, |a, b| {
        seqs[a]
            .iter()
            .zip(&seqs[b])
            .all(|(&da, &db)| nc.poset().leq(da, db))
    })?;
    Ok(LowerPoset { poset, deltas })
}

/// Diagnostic count for the weaker reading: entries in NC(W) and partial
/// products length-additive, but no membership requirement on the partial
/// products themselves.
pub fn count_length_additive_sequences(
    nc: &NCLattice<'_>,
    k: usize,
    cap: usize,
) -> Result<usize, KdivError> {
    if k == 0 {
        return Err(KdivError::InvalidK);
    }
    let sys = nc.system();
    let m = nc.len();
    let mut count = 0usize;
    fn rec(
        nc: &NCLattice<'_>,
        m: usize,
        depth: usize,
        cap: usize,
        partial: ElementId,
        partial_len: u32,
        count: &mut usize,
    ) -> Result<(), KdivError> {
        if depth == 0 {
            *count += 1;
            if *count > cap {
                return Err(KdivError::ScaleExceeded { cap });
            }
            return Ok(());
        }
        let sys = nc.system();
        for cand in 0..m {
            let d = nc.element_id(cand);
            let next = sys.mul_ids(partial, d);
            if sys.length_of(next) != partial_len + sys.length_of(d) {
                continue;
            }
            rec(
                nc,
                m,
                depth - 1,
                cap,
                next,
                partial_len + sys.length_of(d),
                count,
            )?;
        }
        Ok(())
    }
    rec(nc, m, k, cap, sys.identity_id(), 0, &mut count)?;
    Ok(count)
}

/// Delta sequence of a multichain: consecutive quotients with gamma
/// appended, delta_i = pi_i^-1 pi_(i+1).
pub fn duality_map(system: &CoxeterSystem, mc: &MultiChain) -> Result<DeltaSequence, KdivError> {
    let k = mc.len();
    let mut ids = Vec::with_capacity(k);
    for e in mc.entries() {
        ids.push(
            system
                .id_of(e)
                .ok_or(KdivError::Coxeter(CoxeterError::MixedSystems))?,
        );
    }
    let gamma = system.gamma_id();
    let deltas: Vec<GroupElement> = (0..k)
        .map(|i| {
            let next = if i + 1 < k { ids[i + 1] } else { gamma };
            system
                .element(system.mul_ids(system.inv_id(ids[i]), next))
                .clone()
        })
        .collect();
    DeltaSequence::new(system, deltas)
}

/// Inverse of `duality_map`: pi_1 = gamma (delta_1..delta_k)^-1 and
/// pi_(i+1) = pi_i delta_i.
pub fn duality_inverse(
    system: &CoxeterSystem,
    ds: &DeltaSequence,
) -> Result<MultiChain, KdivError> {
    let mut ids = Vec::with_capacity(ds.len());
    for e in ds.entries() {
        ids.push(
            system
                .id_of(e)
                .ok_or(KdivError::Coxeter(CoxeterError::MixedSystems))?,
        );
    }
    let mut product = system.identity_id();
    for &d in &ids {
        product = system.mul_ids(product, d);
    }
    let mut pi = system.mul_ids(system.gamma_id(), system.inv_id(product));
    let mut entries = Vec::with_capacity(ids.len());
    for &d in &ids {
        entries.push(system.element(pi).clone());
        pi = system.mul_ids(pi, d);
    }
    MultiChain::new(system, entries)
}

/// Outcome of the exhaustive duality verification.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub bijective: bool,
    pub order_reversing: bool,
    /// Which delta assignment verified: "consecutive-quotients" or the
    /// coordinate-reversed fallback.
    pub variant: String,
}

/// Checks exhaustively that the quotient map is an order-reversing
/// bijection NC^(k) -> NC_(k); if the straightforward orientation fails,
/// the coordinate-reversed variant is tried.
pub fn verify_duality(upper: &UpperPoset, lower: &LowerPoset) -> DualityReport {
    let lower_index: HashMap<&Vec<ElementId>, usize> = lower
        .deltas
        .iter()
        .enumerate()
        .map(|(i, d)| (d, i))
        .collect();

    let try_variant = |reverse: bool| -> Option<Vec<usize>> {
        let mut image = Vec::with_capacity(upper.deltas.len());
        for d in &upper.deltas {
            let key: Vec<ElementId> = if reverse {
                d.iter().rev().copied().collect()
            } else {
                d.clone()
            };
            match lower_index.get(&key) {
                Some(&i) => image.push(i),
                None => return None,
            }
        }
        let mut seen = vec![false; lower.deltas.len()];
        for &i in &image {
            if seen[i] {
                return None;
            }
            seen[i] = true;
        }
        if !seen.iter().all(|&s| s) {
            return None;
        }
        Some(image)
    };

    for (reverse, name) in [
        (false, "consecutive-quotients"),
        (true, "consecutive-quotients-reversed"),
    ] {
        if let Some(image) = try_variant(reverse) {
            let n = upper.poset.len();
            let mut reversing = true;
            'outer: for a in 0..n {
                for b in 0..n {
                    if upper.poset.leq(a, b) != lower.poset.leq(image[b], image[a]) {
                        reversing = false;
                        break 'outer;
                    }
                }
            }
            if reversing {
                return DualityReport {
                    bijective: true,
                    order_reversing: true,
                    variant: name.into(),
                };
            }
        }
    }
    DualityReport {
        bijective: false,
        order_reversing: false,
        variant: "none".into(),
    }
}

/// NC^(k)(W) with its minimal elements removed and a formal bottom added.
pub fn surgered_poset_upper(
    nc: &NCLattice<'_>,
    k: usize,
    cap: usize,
) -> Result<FinitePoset, KdivError> {
    let upper = build_nc_upper(nc, k, cap)?;
    Ok(upper.poset.remove_minimals().adjoin_bottom())
}

/// NC_(k)(W) with its maximal elements removed and a formal top added.
pub fn surgered_poset_lower(
    nc: &NCLattice<'_>,
    k: usize,
    cap: usize,
) -> Result<FinitePoset, KdivError> {
    let lower = build_nc_lower(nc, k, cap)?;
    Ok(lower.poset.remove_maximals().adjoin_top())
}

/// All length-additive factorizations gamma = delta_1 .. delta_parts; these
/// are exactly the maximal elements of NC_(parts)(W).
pub fn factorizations_of_gamma(
    nc: &NCLattice<'_>,
    parts: usize,
    cap: usize,
) -> Result<Vec<Vec<ElementId>>, KdivError> {
    if parts == 0 {
        return Err(KdivError::InvalidK);
    }
    let sys = nc.system();
    let gamma = sys.gamma_id();
    let m = nc.len();
    let mut out: Vec<Vec<ElementId>> = Vec::new();
    let mut current: Vec<ElementId> = Vec::with_capacity(parts);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        nc: &NCLattice<'_>,
        m: usize,
        parts: usize,
        cap: usize,
        gamma: ElementId,
        partial: ElementId,
        partial_len: u32,
        current: &mut Vec<ElementId>,
        out: &mut Vec<Vec<ElementId>>,
    ) -> Result<(), KdivError> {
        let sys = nc.system();
        if current.len() == parts {
            if partial == gamma {
                if out.len() >= cap {
                    return Err(KdivError::ScaleExceeded { cap });
                }
                out.push(current.clone());
            }
            return Ok(());
        }
        for cand in 0..m {
            let d = nc.element_id(cand);
            let next = sys.mul_ids(partial, d);
            let next_len = partial_len + sys.length_of(d);
            if sys.length_of(next) != next_len {
                continue;
            }
            if nc.index_of(next).is_none() {
                continue;
            }
            current.push(d);
            rec(nc, m, parts, cap, gamma, next, next_len, current, out)?;
            current.pop();
        }
        Ok(())
    }
    rec(
        nc,
        m,
        parts,
        cap,
        gamma,
        sys.identity_id(),
        0,
        &mut current,
        &mut out,
    )?;
    Ok(out)
}

/// Maximal elements of NC_(k)(W): total length n and product gamma.
pub fn maximal_factorizations(
    nc: &NCLattice<'_>,
    k: usize,
    cap: usize,
) -> Result<Vec<Vec<ElementId>>, KdivError> {
    factorizations_of_gamma(nc, k, cap)
}

/// JSON export of a delta-sequence list.
pub fn deltas_to_json(system: &CoxeterSystem, deltas: &[Vec<ElementId>]) -> serde_json::Value {
    serde_json::json!(deltas
        .iter()
        .map(|d| d.iter().map(|&w| system.render_id(w)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_coxeter_system, CoxeterType};
    use crate::nc::build_nc;

    #[test]
    fn a1_upper_posets() {
        let sys = build_coxeter_system(&CoxeterType::a(1)).unwrap();
        let nc = build_nc(&sys);
        for k in 1..=4 {
            let upper = build_nc_upper(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(upper.poset.len(), k + 1, "k = {k}");
            let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(lower.poset.len(), k + 1, "k = {k}");
        }
    }

    #[test]
    fn a2_k2_counts() {
        let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc = build_nc(&sys);
        let upper = build_nc_upper(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(upper.poset.len(), 12);
        let lower = build_nc_lower(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(lower.poset.len(), 12);
        // Unique minimum (e, e).
        let bottom = lower.poset.bottom().unwrap();
        assert_eq!(
            lower.deltas[bottom],
            vec![sys.identity_id(), sys.identity_id()]
        );
        // Maximal elements are the length-additive factorizations of gamma.
        let maxs = lower.poset.maximals().len();
        let facs = maximal_factorizations(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(maxs, facs.len());
        assert_eq!(facs.len(), 5);
    }

    #[test]
    fn k1_lower_is_nc_itself() {
        let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc = build_nc(&sys);
        let lower = build_nc_lower(&nc, 1, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(lower.poset.len(), nc.len());
        assert_eq!(lower.poset.covers().len(), nc.poset().covers().len());
    }

    #[test]
    fn literal_reading_overcounts_on_a2() {
        let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc = build_nc(&sys);
        let strict = build_nc_lower(&nc, 2, DEFAULT_ELEMENT_CAP)
            .unwrap()
            .poset
            .len();
        let literal = count_length_additive_sequences(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(strict, 12);
        assert_eq!(literal, 15);
    }

    #[test]
    fn duality_roundtrip_a2() {
        let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc = build_nc(&sys);
        let upper = build_nc_upper(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
        for chain in &upper.multichains {
            let entries: Vec<GroupElement> =
                chain.iter().map(|&i| sys.element(i).clone()).collect();
            let mc = MultiChain::new(&sys, entries).unwrap();
            let ds = duality_map(&sys, &mc).unwrap();
            let back = duality_inverse(&sys, &ds).unwrap();
            assert_eq!(mc, back);
        }
    }

    #[test]
    fn surgered_poset_shapes() {
        let sys = build_coxeter_system(&CoxeterType::a(1)).unwrap();
        let nc = build_nc(&sys);
        // NC^(2)(A1) has two minimal elements; removing them leaves the
        // single maximum, so the surgered poset is a two-element chain.
        let p = surgered_poset_upper(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.mobius_number().unwrap(), -1);

        let sys2 = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc2 = build_nc(&sys2);
        let p2 = surgered_poset_upper(&nc2, 1, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(p2.len(), 5); // NC(A2) with e replaced by the formal bottom
        assert_eq!(p2.mobius_number().unwrap(), 2);
        let p2k2 = surgered_poset_upper(&nc2, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(p2k2.is_graded());
        assert_eq!(p2k2.mobius_number().unwrap(), 5);
    }

    #[test]
    fn factorization_examples() {
        let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc = build_nc(&sys);
        let f1 = factorizations_of_gamma(&nc, 1, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(f1, vec![vec![sys.gamma_id()]]);

        let sys1 = build_coxeter_system(&CoxeterType::a(1)).unwrap();
        let nc1 = build_nc(&sys1);
        let f2 = factorizations_of_gamma(&nc1, 2, DEFAULT_ELEMENT_CAP).unwrap();
        let t = sys1.gamma_id();
        let e = sys1.identity_id();
        assert_eq!(f2.len(), 2);
        assert!(f2.contains(&vec![t, e]));
        assert!(f2.contains(&vec![e, t]));
    }

    #[test]
    fn scale_cap_enforced() {
        let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
        let nc = build_nc(&sys);
        assert!(matches!(
            build_nc_lower(&nc, 2, 5),
            Err(KdivError::ScaleExceeded { cap: 5 })
        ));
    }

    #[test]
    fn sequence_constructors_validate() {
        let sys = build_coxeter_system(&CoxeterType::b(2)).unwrap();
        let gamma = sys.coxeter_element().clone();
        let e = sys.identity().clone();
        assert!(DeltaSequence::new(&sys, vec![e.clone(), gamma.clone()]).is_ok());
        // Two copies of gamma cannot be length-additive.
        assert!(DeltaSequence::new(&sys, vec![gamma.clone(), gamma.clone()]).is_err());
        assert!(MultiChain::new(&sys, vec![e.clone(), gamma.clone()]).is_ok());
        assert!(MultiChain::new(&sys, vec![gamma, e]).is_err());
    }
}

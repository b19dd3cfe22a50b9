//! Invariant-degree tables and Fuss-Catalan counting.
//!
//! The degree data is the classical table per family. Everything downstream
//! cross-checks it: the group order must equal `prod d_i`, the reflection
//! count `sum (d_i - 1)`, and the Fuss-Catalan products must match exhaustive
//! poset enumeration.

use crate::coxeter::{CoxeterError, CoxeterType, Family};

/// Fundamental invariant degrees of a finite Coxeter group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    /// Degrees `d_1 <= ... <= d_n`.
    pub degrees: Vec<u64>,
    /// Coxeter number `h = d_n`.
    pub coxeter_number: u64,
    /// Exponents `m_i = d_i - 1`.
    pub exponents: Vec<u64>,
}

impl DegreeData {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn group_order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    pub fn num_reflections(&self) -> u64 {
        self.exponents.iter().sum()
    }
}

/// Errors from the counting layer.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatalanError {
    #[error("fuss-catalan product is not an integer for {0:?} at k={1} (degree-table bug)")]
    NonIntegerResult(CoxeterType, u64),
    #[error("parameter k={0} exceeds the supported bound 64")]
    KTooLarge(u64),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// Degree table row for a supported type.
pub fn degrees(ctype: &CoxeterType) -> Result<DegreeData, CatalanError> {
    ctype.validate()?;
    let n = ctype.rank as u64;
    let degrees: Vec<u64> = match ctype.family {
        Family::A => (2..=n + 1).collect(),
        Family::B => (1..=n).map(|i| 2 * i).collect(),
        Family::D => {
            let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            d.sort_unstable();
            d
        }
        Family::I2 => vec![2, ctype.dihedral_order as u64],
        Family::H3 => vec![2, 6, 10],
        Family::F4 => vec![2, 6, 8, 12],
    };
    let coxeter_number = *degrees.last().expect("rank >= 1");
    let exponents = degrees.iter().map(|d| d - 1).collect();
    Ok(DegreeData {
        degrees,
        coxeter_number,
        exponents,
    })
}

fn catalan_product(ctype: &CoxeterType, k: u64, shift: i128) -> Result<i128, CatalanError> {
    if k > 64 {
        return Err(CatalanError::KTooLarge(k));
    }
    let data = degrees(ctype)?;
    let h = data.coxeter_number as i128;
    let mut numer: i128 = 1;
    let mut denom: i128 = 1;
    for &d in &data.degrees {
        numer *= k as i128 * h + d as i128 + shift;
        denom *= d as i128;
    }
    if numer % denom != 0 {
        return Err(CatalanError::NonIntegerResult(ctype.clone(), k));
    }
    Ok(numer / denom)
}

/// Fuss-Catalan number `Cat^(k)(W) = prod (k h + d_i) / d_i`.
///
/// Counts the k-multichain poset exactly; `k = 0` gives 1.
pub fn fuss_catalan(ctype: &CoxeterType, k: u64) -> Result<i128, CatalanError> {
    catalan_product(ctype, k, 0)
}

/// Positive Fuss-Catalan number `Cat_+^(k)(W) = prod (k h + d_i - 2) / d_i`.
///
/// `k = 0` gives 0 because `d_1 = 2`.
pub fn positive_fuss_catalan(ctype: &CoxeterType, k: u64) -> Result<i128, CatalanError> {
    catalan_product(ctype, k, -2)
}

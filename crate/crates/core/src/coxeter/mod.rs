//! Finite Coxeter systems with exact element arithmetic.
//!
//! A [`CoxeterSystem`] holds the fully enumerated group, the simple
//! generators S, the reflection set T (conjugacy closure of S), a Coxeter
//! element, and the absolute-length table computed by breadth-first search
//! over T-multiplication. Equality of elements is exact; no floating point
//! enters group arithmetic anywhere.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalan;
use crate::exact::{Matrix, Scalar};

mod families;
use families::{Geometry, Universe};

/// Supported families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    I2,
    H3,
    F4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
            Family::H3 => "H3",
            Family::F4 => "F4",
        };
        write!(f, "{s}")
    }
}

/// A (family, rank) selection, with the dihedral order for I2(m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    /// Only meaningful for I2; zero otherwise.
    pub dihedral_order: u32,
}

impl CoxeterType {
    pub fn a(rank: usize) -> Self {
        CoxeterType {
            family: Family::A,
            rank,
            dihedral_order: 0,
        }
    }
    pub fn b(rank: usize) -> Self {
        CoxeterType {
            family: Family::B,
            rank,
            dihedral_order: 0,
        }
    }
    pub fn d(rank: usize) -> Self {
        CoxeterType {
            family: Family::D,
            rank,
            dihedral_order: 0,
        }
    }
    pub fn i2(m: u32) -> Self {
        CoxeterType {
            family: Family::I2,
            rank: 2,
            dihedral_order: m,
        }
    }
    pub fn h3() -> Self {
        CoxeterType {
            family: Family::H3,
            rank: 3,
            dihedral_order: 0,
        }
    }
    pub fn f4() -> Self {
        CoxeterType {
            family: Family::F4,
            rank: 4,
            dihedral_order: 0,
        }
    }

    /// Structural and desk-scale validation.
    pub fn validate(&self) -> Result<(), CoxeterError> {
        match self.family {
            Family::A => {
                if self.rank < 1 {
                    return Err(CoxeterError::InvalidRank("A requires rank >= 1".into()));
                }
                if self.rank > 7 {
                    return Err(CoxeterError::UnsupportedType(format!(
                        "A{} exceeds desk-scale support (rank <= 7)",
                        self.rank
                    )));
                }
            }
            Family::B => {
                if self.rank < 1 {
                    return Err(CoxeterError::InvalidRank("B requires rank >= 1".into()));
                }
                if self.rank > 6 {
                    return Err(CoxeterError::UnsupportedType(format!(
                        "B{} exceeds desk-scale support (rank <= 6)",
                        self.rank
                    )));
                }
            }
            Family::D => {
                if self.rank < 4 {
                    return Err(CoxeterError::InvalidRank(format!(
                        "D{} rejected: use the A-type alias instead (D requires rank >= 4)",
                        self.rank
                    )));
                }
                if self.rank > 6 {
                    return Err(CoxeterError::UnsupportedType(format!(
                        "D{} exceeds desk-scale support (rank <= 6)",
                        self.rank
                    )));
                }
            }
            Family::I2 => {
                if self.rank != 2 {
                    return Err(CoxeterError::InvalidRank("I2 has rank 2".into()));
                }
                if self.dihedral_order < 3 {
                    return Err(CoxeterError::InvalidRank("I2(m) requires m >= 3".into()));
                }
                if self.dihedral_order > 1000 {
                    return Err(CoxeterError::UnsupportedType(
                        "I2(m) supported up to m = 1000".into(),
                    ));
                }
            }
            Family::H3 => {
                if self.rank != 3 {
                    return Err(CoxeterError::InvalidRank("H3 has rank 3".into()));
                }
            }
            Family::F4 => {
                if self.rank != 4 {
                    return Err(CoxeterError::InvalidRank("F4 has rank 4".into()));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.dihedral_order),
            Family::H3 | Family::F4 => write!(f, "{}", self.family),
            _ => write!(f, "{}{}", self.family, self.rank),
        }
    }
}

/// Errors from group construction and arithmetic.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("elements belong to different systems")]
    MixedSystems,
    #[error("invalid generator permutation: {0}")]
    GammaPermInvalid(String),
}

/// Canonical per-family element representation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum Repr {
    /// One-line permutation images on 0..points.
    Perm(Vec<u8>),
    /// Signed one-line images, entry i = +-(image+1).
    SignedPerm(Vec<i8>),
    /// Dihedral element r^rot f^flip.
    Dihedral { m: u32, rot: u32, flip: bool },
    /// Permutation of the root list (H3, F4).
    RootPerm(Vec<u8>),
}

impl Repr {
    /// Product self * other, applying `other` first.
    fn compose(&self, other: &Repr) -> Repr {
        match (self, other) {
            (Repr::Perm(a), Repr::Perm(b)) => {
                Repr::Perm(b.iter().map(|&i| a[i as usize]).collect())
            }
            (Repr::SignedPerm(a), Repr::SignedPerm(b)) => Repr::SignedPerm(
                b.iter()
                    .map(|&sv| {
                        let j = (sv.unsigned_abs() - 1) as usize;
                        let target = a[j];
                        if sv < 0 {
                            -target
                        } else {
                            target
                        }
                    })
                    .collect(),
            ),
            (
                Repr::Dihedral {
                    m,
                    rot: a,
                    flip: ea,
                },
                Repr::Dihedral {
                    m: m2,
                    rot: b,
                    flip: eb,
                },
            ) => {
                assert_eq!(m, m2, "dihedral orders must match");
                let rot = if *ea {
                    (a + m - b % m) % m
                } else {
                    (a + b) % m
                };
                Repr::Dihedral {
                    m: *m,
                    rot,
                    flip: ea ^ eb,
                }
            }
            (Repr::RootPerm(a), Repr::RootPerm(b)) => {
                Repr::RootPerm(b.iter().map(|&i| a[i as usize]).collect())
            }
            _ => panic!("composing elements of different representations"),
        }
    }

    fn inverse(&self) -> Repr {
        match self {
            Repr::Perm(a) => {
                let mut inv = vec![0u8; a.len()];
                for (i, &img) in a.iter().enumerate() {
                    inv[img as usize] = i as u8;
                }
                Repr::Perm(inv)
            }
            Repr::SignedPerm(a) => {
                let mut inv = vec![0i8; a.len()];
                for (i, &sv) in a.iter().enumerate() {
                    let j = (sv.unsigned_abs() - 1) as usize;
                    let mag = i as i8 + 1;
                    inv[j] = if sv < 0 { -mag } else { mag };
                }
                Repr::SignedPerm(inv)
            }
            Repr::Dihedral { m, rot, flip } => {
                if *flip {
                    self.clone()
                } else {
                    Repr::Dihedral {
                        m: *m,
                        rot: (m - rot % m) % m,
                        flip: false,
                    }
                }
            }
            Repr::RootPerm(a) => {
                let mut inv = vec![0u8; a.len()];
                for (i, &img) in a.iter().enumerate() {
                    inv[img as usize] = i as u8;
                }
                Repr::RootPerm(inv)
            }
        }
    }

    fn identity_like(&self) -> Repr {
        match self {
            Repr::Perm(a) => Repr::Perm((0..a.len() as u8).collect()),
            Repr::SignedPerm(a) => Repr::SignedPerm((1..=a.len() as i8).collect()),
            Repr::Dihedral { m, .. } => Repr::Dihedral {
                m: *m,
                rot: 0,
                flip: false,
            },
            Repr::RootPerm(a) => Repr::RootPerm((0..a.len() as u8).collect()),
        }
    }

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
}

/// An exactly comparable, hashable group element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement(pub(crate) Repr);

/// Index of an element inside its system's canonical element list.
pub type ElementId = usize;

/// A fully enumerated finite Coxeter system.
pub struct CoxeterSystem {
    ctype: CoxeterType,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, ElementId>,
    simple_ids: Vec<ElementId>,
    reflection_ids: Vec<ElementId>,
    identity_id: ElementId,
    gamma_id: ElementId,
    lengths: Vec<u32>,
    geometry: Geometry,
    gamma_perm: Vec<usize>,
}

/// Builds the system with the canonical Coxeter element (product of the
/// simple generators in stored order).
pub fn build_coxeter_system(ctype: &CoxeterType) -> Result<CoxeterSystem, CoxeterError> {
    let rank = ctype.rank;
    build_coxeter_system_with_gamma(ctype, &(0..rank).collect::<Vec<_>>())
}

/// Builds the system with the Coxeter element gamma = product of the simple
/// generators in the order given by `gamma_perm` (a permutation of 0..rank).
pub fn build_coxeter_system_with_gamma(
    ctype: &CoxeterType,
    gamma_perm: &[usize],
) -> Result<CoxeterSystem, CoxeterError> {
    ctype.validate()?;
    let mut sorted: Vec<usize> = gamma_perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..ctype.rank).collect::<Vec<_>>() {
        return Err(CoxeterError::GammaPermInvalid(format!(
            "expected a permutation of 0..{}, got {:?}",
            ctype.rank, gamma_perm
        )));
    }

    let Universe {
        elements: mut reprs,
        simples,
        geometry,
    } = match ctype.family {
        Family::A => families::type_a(ctype.rank),
        Family::B => families::type_b(ctype.rank),
        Family::D => families::type_d(ctype.rank),
        Family::I2 => families::type_i2(ctype.dihedral_order),
        Family::H3 => families::type_h3(),
        Family::F4 => families::type_f4(),
    };
    reprs.sort_unstable();
    let elements: Vec<GroupElement> = reprs.into_iter().map(GroupElement).collect();
    let index: HashMap<GroupElement, ElementId> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    assert_eq!(index.len(), elements.len(), "duplicate canonical elements");

    let id_of = |r: &Repr| -> ElementId {
        *index
            .get(&GroupElement(r.clone()))
            .expect("universe closed under composition")
    };

    let simple_ids: Vec<ElementId> = simples.iter().map(id_of).collect();
    let identity_id = id_of(&simples[0].identity_like());

    // Reflections: conjugacy closure of S.
    let mut refl_set: BTreeSet<Repr> = BTreeSet::new();
    let mut queue: VecDeque<Repr> = simples.iter().cloned().collect();
    for s in &simples {
        refl_set.insert(s.clone());
    }
    while let Some(t) = queue.pop_front() {
        for s in &simples {
            let conj = s.compose(&t).compose(&s.inverse());
            if refl_set.insert(conj.clone()) {
                queue.push_back(conj);
            }
        }
    }
    for t in &refl_set {
        assert!(!t.is_identity(), "identity in reflection set");
        assert!(t.compose(t).is_identity(), "non-involutive reflection");
    }
    let reflection_ids: Vec<ElementId> = refl_set.iter().map(id_of).collect();

    // Coxeter element: product of S in the requested order, rightmost first.
    let mut gamma = simples[gamma_perm[0]].clone();
    for &i in &gamma_perm[1..] {
        gamma = gamma.compose(&simples[i]);
    }
    let gamma_id = id_of(&gamma);

    // Absolute lengths by BFS over T-multiplication from the identity.
    let mut lengths = vec![u32::MAX; elements.len()];
    lengths[identity_id] = 0;
    let mut bfs: VecDeque<ElementId> = VecDeque::new();
    bfs.push_back(identity_id);
    while let Some(x) = bfs.pop_front() {
        let lx = lengths[x];
        for &t in &reflection_ids {
            let y = id_of(&elements[x].0.compose(&elements[t].0));
            if lengths[y] == u32::MAX {
                lengths[y] = lx + 1;
                bfs.push_back(y);
            }
        }
    }
    assert!(
        lengths.iter().all(|&l| l != u32::MAX),
        "T does not generate W"
    );

    // Cross-check against the classical degree data.
    let data = catalan::degrees(ctype).expect("validated type has degree data");
    assert_eq!(
        elements.len() as u128,
        data.group_order(),
        "group order mismatch with degree table"
    );
    assert_eq!(
        reflection_ids.len() as u64,
        data.num_reflections(),
        "reflection count mismatch with degree table"
    );
    // Order of gamma equals the Coxeter number.
    {
        let mut pow = gamma.clone();
        let mut order = 1u64;
        while !pow.is_identity() {
            pow = pow.compose(&gamma);
            order += 1;
        }
        assert_eq!(order, data.coxeter_number, "Coxeter element order != h");
    }

    Ok(CoxeterSystem {
        ctype: ctype.clone(),
        elements,
        index,
        simple_ids,
        reflection_ids,
        identity_id,
        gamma_id,
        lengths,
        geometry,
        gamma_perm: gamma_perm.to_vec(),
    })
}

impl CoxeterSystem {
    pub fn ctype(&self) -> &CoxeterType {
        &self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn num_reflections(&self) -> usize {
        self.reflection_ids.len()
    }

    pub fn gamma_perm(&self) -> &[usize] {
        &self.gamma_perm
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &GroupElement {
        &self.elements[id]
    }

    pub fn id_of(&self, w: &GroupElement) -> Option<ElementId> {
        self.index.get(w).copied()
    }

    fn require_id(&self, w: &GroupElement) -> Result<ElementId, CoxeterError> {
        self.id_of(w).ok_or(CoxeterError::MixedSystems)
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[self.identity_id]
    }

    pub fn identity_id(&self) -> ElementId {
        self.identity_id
    }

    pub fn coxeter_element(&self) -> &GroupElement {
        &self.elements[self.gamma_id]
    }

    pub fn gamma_id(&self) -> ElementId {
        self.gamma_id
    }

    pub fn simple_generators(&self) -> Vec<&GroupElement> {
        self.simple_ids.iter().map(|&i| &self.elements[i]).collect()
    }

    /// Reflections in the canonical order (lexicographic on representations).
    pub fn reflection_ids(&self) -> &[ElementId] {
        &self.reflection_ids
    }

    pub fn reflections(&self) -> Vec<&GroupElement> {
        self.reflection_ids
            .iter()
            .map(|&i| &self.elements[i])
            .collect()
    }

    /// Exact product a * b (b applied first).
    pub fn multiply(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement, CoxeterError> {
        let ia = self.require_id(a)?;
        let ib = self.require_id(b)?;
        Ok(self.elements[self.mul_ids(ia, ib)].clone())
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, CoxeterError> {
        let ia = self.require_id(a)?;
        Ok(self.elements[self.inv_id(ia)].clone())
    }

    pub fn mul_ids(&self, a: ElementId, b: ElementId) -> ElementId {
        let prod = self.elements[a].0.compose(&self.elements[b].0);
        *self
            .index
            .get(&GroupElement(prod))
            .expect("group closed under composition")
    }

    pub fn inv_id(&self, a: ElementId) -> ElementId {
        let inv = self.elements[a].0.inverse();
        *self
            .index
            .get(&GroupElement(inv))
            .expect("group closed under inversion")
    }

    /// Minimum number of reflections whose product is w.
    pub fn absolute_length(&self, w: &GroupElement) -> Result<u32, CoxeterError> {
        Ok(self.lengths[self.require_id(w)?])
    }

    pub fn length_of(&self, id: ElementId) -> u32 {
        self.lengths[id]
    }

    /// Absolute order: pi <= sigma iff l(sigma) = l(pi) + l(pi^-1 sigma).
    pub fn absolute_leq(
        &self,
        pi: &GroupElement,
        sigma: &GroupElement,
    ) -> Result<bool, CoxeterError> {
        let a = self.require_id(pi)?;
        let b = self.require_id(sigma)?;
        Ok(self.leq_ids(a, b))
    }

    pub fn leq_ids(&self, a: ElementId, b: ElementId) -> bool {
        let quot = self.mul_ids(self.inv_id(a), b);
        self.lengths[b] == self.lengths[a] + self.lengths[quot]
    }

    /// Codimension of the fixed space in the reflection representation,
    /// computed without any reference to the BFS length table. By Carter's
    /// lemma this equals the absolute length.
    pub fn fixed_space_codimension(&self, w: &GroupElement) -> Result<u32, CoxeterError> {
        let id = self.require_id(w)?;
        Ok(self.fixed_space_codim_id(id))
    }

    pub fn fixed_space_codim_id(&self, id: ElementId) -> u32 {
        match (&self.geometry, &self.elements[id].0) {
            (Geometry::PermPoints { points }, Repr::Perm(p)) => {
                // dim Fix on the reflection (sum-zero) subspace = cycles - 1.
                let cycles = count_cycles(p);
                (*points as u32) - cycles
            }
            (Geometry::Signed { n }, Repr::SignedPerm(sp)) => {
                // Fixed vectors come from cycles whose sign product is +1.
                let positive = count_positive_cycles(sp);
                (*n as u32) - positive
            }
            (Geometry::Dihedral { .. }, Repr::Dihedral { rot, flip, .. }) => {
                if *flip {
                    1
                } else if *rot == 0 {
                    0
                } else {
                    2
                }
            }
            (Geometry::RootsH3 { roots }, Repr::RootPerm(p)) => rank_minus_identity(roots, p, 3),
            (Geometry::RootsF4 { roots_in_basis, .. }, Repr::RootPerm(p)) => {
                rank_minus_identity(roots_in_basis, p, 4)
            }
            _ => unreachable!("geometry matches representation by construction"),
        }
    }

    /// Canonical text rendering for logs and exports.
    pub fn render(&self, w: &GroupElement) -> String {
        match &w.0 {
            Repr::Perm(p) => cycle_notation(p),
            Repr::SignedPerm(sp) => {
                let strs: Vec<String> = sp.iter().map(|v| v.to_string()).collect();
                format!("[{}]", strs.join(","))
            }
            Repr::Dihedral { rot, flip, .. } => match (rot, flip) {
                (0, false) => "e".to_string(),
                (1, false) => "r".to_string(),
                (a, false) => format!("r^{a}"),
                (0, true) => "f".to_string(),
                (1, true) => "r·f".to_string(),
                (a, true) => format!("r^{a}·f"),
            },
            Repr::RootPerm(p) => cycle_notation(p),
        }
    }

    pub fn render_id(&self, id: ElementId) -> String {
        self.render(&self.elements[id])
    }

    /// f64 root direction of each reflection (same order as
    /// `reflection_ids`), in the Euclidean realization. Heuristic use only.
    pub fn reflection_roots_f64(&self) -> Vec<Vec<f64>> {
        self.reflection_ids
            .iter()
            .map(|&t| self.reflection_root_f64(t))
            .collect()
    }

    fn reflection_root_f64(&self, t: ElementId) -> Vec<f64> {
        match (&self.geometry, &self.elements[t].0) {
            (Geometry::PermPoints { points }, Repr::Perm(p)) => {
                let (i, j) = two_cycle(p).expect("reflection in A is a transposition");
                let mut v = vec![0.0; *points];
                v[i] = 1.0;
                v[j] = -1.0;
                v
            }
            (Geometry::Signed { n }, Repr::SignedPerm(sp)) => {
                let mut v = vec![0.0; *n];
                match signed_reflection_kind(sp) {
                    SignedReflection::Flip(i) => v[i] = 1.0,
                    SignedReflection::Plus(i, j) => {
                        v[i] = 1.0;
                        v[j] = -1.0;
                    }
                    SignedReflection::Minus(i, j) => {
                        v[i] = 1.0;
                        v[j] = 1.0;
                    }
                }
                v
            }
            (Geometry::Dihedral { m }, Repr::Dihedral { rot, flip, .. }) => {
                assert!(flip, "dihedral reflection expected");
                // Mirror of r^a f is the line at angle a*pi/m; root is normal.
                let theta = (*rot as f64) * std::f64::consts::PI / (*m as f64)
                    + std::f64::consts::FRAC_PI_2;
                vec![theta.cos(), theta.sin()]
            }
            (Geometry::RootsH3 { roots }, Repr::RootPerm(p)) => {
                let idx = negated_root_index(roots, p);
                let root = &roots[idx];
                let l = h3_embedding();
                embed(&l, &[root[0].approx(), root[1].approx(), root[2].approx()])
            }
            (Geometry::RootsF4 { roots, .. }, Repr::RootPerm(p)) => {
                let idx = negated_root_index(roots, p);
                roots[idx].iter().map(|x| x.approx()).collect()
            }
            _ => unreachable!(),
        }
    }

    /// f64 matrix of an element in the Euclidean realization (heuristics
    /// and layout only).
    pub fn euclidean_matrix_f64(&self, id: ElementId) -> Vec<Vec<f64>> {
        match (&self.geometry, &self.elements[id].0) {
            (Geometry::PermPoints { points }, Repr::Perm(p)) => {
                let mut m = vec![vec![0.0; *points]; *points];
                for (src, &dst) in p.iter().enumerate() {
                    m[dst as usize][src] = 1.0;
                }
                m
            }
            (Geometry::Signed { n }, Repr::SignedPerm(sp)) => {
                let mut m = vec![vec![0.0; *n]; *n];
                for (src, &sv) in sp.iter().enumerate() {
                    let dst = (sv.unsigned_abs() - 1) as usize;
                    m[dst][src] = if sv < 0 { -1.0 } else { 1.0 };
                }
                m
            }
            (Geometry::Dihedral { m }, Repr::Dihedral { rot, flip, .. }) => {
                let theta = 2.0 * std::f64::consts::PI * (*rot as f64) / (*m as f64);
                let (s, c) = theta.sin_cos();
                if *flip {
                    // r^a f: first reflect across the x-axis, then rotate.
                    vec![vec![c, s], vec![s, -c]]
                } else {
                    vec![vec![c, -s], vec![s, c]]
                }
            }
            (Geometry::RootsH3 { roots }, Repr::RootPerm(p)) => {
                // Root-basis matrix columns are images of the simple roots;
                // conjugate into the Euclidean embedding x -> L^T x.
                let l = h3_embedding();
                let linv_t = invert3(&transpose3(&l));
                let mut mb = [[0.0; 3]; 3];
                for j in 0..3 {
                    let img = &roots[p[j] as usize];
                    for i in 0..3 {
                        mb[i][j] = img[i].approx();
                    }
                }
                let lt = transpose3(&l);
                let me = mat3mul(&mat3mul(&lt, &mb), &linv_t);
                me.iter().map(|r| r.to_vec()).collect()
            }
            (Geometry::RootsF4 { roots, .. }, Repr::RootPerm(p)) => {
                // Euclidean matrix solving M * simple_j = image_j.
                let mut basis = [[0.0; 4]; 4];
                let mut images = [[0.0; 4]; 4];
                for j in 0..4 {
                    for i in 0..4 {
                        basis[i][j] = roots[j][i].approx();
                        images[i][j] = roots[p[j] as usize][i].approx();
                    }
                }
                let m = mat4mul(&images, &invert4(&basis));
                m.iter().map(|r| r.to_vec()).collect()
            }
            _ => unreachable!(),
        }
    }
}

fn count_cycles(p: &[u8]) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
        }
    }
    cycles
}

fn count_positive_cycles(sp: &[i8]) -> u32 {
    let mut seen = vec![false; sp.len()];
    let mut positive = 0;
    for start in 0..sp.len() {
        if seen[start] {
            continue;
        }
        let mut x = start;
        let mut sign = 1i32;
        while !seen[x] {
            seen[x] = true;
            let sv = sp[x];
            if sv < 0 {
                sign = -sign;
            }
            x = (sv.unsigned_abs() - 1) as usize;
        }
        if sign > 0 {
            positive += 1;
        }
    }
    positive
}

fn two_cycle(p: &[u8]) -> Option<(usize, usize)> {
    let mut moved: Vec<usize> = (0..p.len()).filter(|&i| p[i] as usize != i).collect();
    if moved.len() == 2 && p[moved[0]] as usize == moved[1] {
        Some((moved.remove(0), moved.remove(0)))
    } else {
        None
    }
}

enum SignedReflection {
    Flip(usize),
    Plus(usize, usize),
    Minus(usize, usize),
}

fn signed_reflection_kind(sp: &[i8]) -> SignedReflection {
    let moved: Vec<usize> = (0..sp.len()).filter(|&i| sp[i] != i as i8 + 1).collect();
    match moved.len() {
        1 => SignedReflection::Flip(moved[0]),
        2 => {
            let (i, j) = (moved[0], moved[1]);
            if sp[i] > 0 {
                SignedReflection::Plus(i, j)
            } else {
                SignedReflection::Minus(i, j)
            }
        }
        _ => panic!("signed permutation is not a reflection"),
    }
}

fn negated_root_index<K: Scalar>(roots: &[Vec<K>], p: &[u8]) -> usize {
    // The reflection sends exactly one +- root pair to itself negated; pick
    // the representative whose first nonzero coordinate is positive.
    for (i, r) in roots.iter().enumerate() {
        let img = &roots[p[i] as usize];
        let negated = r.iter().zip(img.iter()).all(|(a, b)| a.add(b).is_zero());
        if negated {
            let sign = r
                .iter()
                .find(|c| !c.is_zero())
                .map(|c| c.approx())
                .unwrap_or(0.0);
            if sign > 0.0 {
                return i;
            }
        }
    }
    panic!("no negated root found for reflection");
}

#[allow(clippy::needless_range_loop)]
fn rank_minus_identity<K: Scalar>(roots: &[Vec<K>], p: &[u8], n: usize) -> u32 {
    // In the simple-root basis the first n roots are the basis vectors, so
    // the matrix columns are just the images' coordinates.
    let mut m = Matrix::<K>::zero(n);
    for j in 0..n {
        let img = &roots[p[j] as usize];
        for i in 0..n {
            m.set(i, j, img[i].clone());
        }
    }
    m.minus_identity().rank() as u32
}

fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

// Small fixed-size f64 helpers for the Euclidean embeddings.

fn h3_embedding() -> [[f64; 3]; 3] {
    // Cholesky factor L (lower) of the H3 Gram matrix; x_E = L^T x_B.
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let gram = [
        [1.0, -phi / 2.0, 0.0],
        [-phi / 2.0, 1.0, -0.5],
        [0.0, -0.5, 1.0],
    ];
    cholesky3(&gram)
}

#[allow(clippy::needless_range_loop)]
fn cholesky3(a: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    l
}

fn transpose3(a: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

fn mat3mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn embed(l: &[[f64; 3]; 3], v: &[f64; 3]) -> Vec<f64> {
    let lt = transpose3(l);
    (0..3)
        .map(|i| (0..3).map(|k| lt[i][k] * v[k]).sum())
        .collect()
}

fn invert3(a: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let m = a;
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let mut inv = [[0.0; 3]; 3];
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    inv
}

#[allow(clippy::needless_range_loop)]
fn invert4(a: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    // Gauss-Jordan with partial pivoting; inputs are tiny well-conditioned
    // root bases.
    let mut m = [[0.0; 8]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i][j];
        }
        m[i][4 + i] = 1.0;
    }
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap())
            .unwrap();
        m.swap(col, pivot);
        let pv = m[col][col];
        for j in 0..8 {
            m[col][j] /= pv;
        }
        for r in 0..4 {
            if r != col {
                let f = m[r][col];
                for j in 0..8 {
                    m[r][j] -= f * m[col][j];
                }
            }
        }
    }
    let mut inv = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            inv[i][j] = m[i][4 + j];
        }
    }
    inv
}

fn mat4mul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

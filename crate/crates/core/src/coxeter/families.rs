//! Per-family element universes, simple generators, and root data.
//!
//! Canonical element representations:
//!   A_n   permutations of {0..n} (one-line images)
//!   B_n   signed permutations, entry i = +-(image+1)
//!   D_n   signed permutations with an even number of sign changes
//!   I2(m) (rotation exponent, flip bit)
//!   H3    permutations of the 30 roots (matrices over Q(sqrt 5) reduced)
//!   F4    permutations of the 48 roots (rational matrices reduced)

use num_rational::Ratio;

use super::Repr;
use crate::exact::{Matrix, Rat, Scalar, Sqrt5};

/// Geometric side data kept for rendering, the length oracle, and the
/// reflection-order heuristic.
pub(crate) enum Geometry {
    /// A_n acting on `points` coordinates of R^points.
    PermPoints { points: usize },
    /// B_n / D_n acting on R^n.
    Signed { n: usize },
    /// Dihedral acting on R^2.
    Dihedral { m: u32 },
    /// H3 roots in simple-root coordinates over Q(sqrt 5).
    RootsH3 { roots: Vec<Vec<Sqrt5>> },
    /// F4 roots: standard Euclidean coordinates, plus the same roots in
    /// simple-root coordinates for exact fixed-space computations.
    RootsF4 {
        roots: Vec<Vec<Rat>>,
        roots_in_basis: Vec<Vec<Rat>>,
    },
}

pub(crate) struct Universe {
    pub elements: Vec<Repr>,
    pub simples: Vec<Repr>,
    pub geometry: Geometry,
}

fn all_perms(points: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(points);
    let mut used = vec![false; points];
    fn rec(points: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if current.len() == points {
            out.push(current.clone());
            return;
        }
        for i in 0..points {
            if !used[i] {
                used[i] = true;
                current.push(i as u8);
                rec(points, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(points, &mut current, &mut used, &mut out);
    out
}

fn transposition(points: usize, i: usize, j: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (0..points as u8).collect();
    p.swap(i, j);
    p
}

pub(crate) fn type_a(rank: usize) -> Universe {
    let points = rank + 1;
    let elements = all_perms(points).into_iter().map(Repr::Perm).collect();
    let simples = (0..rank)
        .map(|i| Repr::Perm(transposition(points, i, i + 1)))
        .collect();
    Universe {
        elements,
        simples,
        geometry: Geometry::PermPoints { points },
    }
}

fn signed_universe(n: usize, even_only: bool) -> Vec<Repr> {
    let mut out = Vec::new();
    for perm in all_perms(n) {
        for mask in 0..(1u32 << n) {
            if even_only && mask.count_ones() % 2 != 0 {
                continue;
            }
            let mut v = Vec::with_capacity(n);
            for (i, &img) in perm.iter().enumerate() {
                let mag = img as i8 + 1;
                v.push(if mask & (1 << i) != 0 { -mag } else { mag });
            }
            out.push(Repr::SignedPerm(v));
        }
    }
    out
}

fn signed_transposition(n: usize, i: usize, j: usize) -> Repr {
    let mut v: Vec<i8> = (1..=n as i8).collect();
    v.swap(i, j);
    Repr::SignedPerm(v)
}

pub(crate) fn type_b(rank: usize) -> Universe {
    let mut simples: Vec<Repr> = (0..rank.saturating_sub(1))
        .map(|i| signed_transposition(rank, i, i + 1))
        .collect();
    // Sign flip on the last coordinate.
    let mut flip: Vec<i8> = (1..=rank as i8).collect();
    flip[rank - 1] = -(rank as i8);
    simples.push(Repr::SignedPerm(flip));
    Universe {
        elements: signed_universe(rank, false),
        simples,
        geometry: Geometry::Signed { n: rank },
    }
}

pub(crate) fn type_d(rank: usize) -> Universe {
    let mut simples: Vec<Repr> = (0..rank - 1)
        .map(|i| signed_transposition(rank, i, i + 1))
        .collect();
    // Negative transposition of the last two coordinates.
    let mut neg: Vec<i8> = (1..=rank as i8).collect();
    neg[rank - 2] = -(rank as i8);
    neg[rank - 1] = -((rank - 1) as i8);
    simples.push(Repr::SignedPerm(neg));
    Universe {
        elements: signed_universe(rank, true),
        simples,
        geometry: Geometry::Signed { n: rank },
    }
}

pub(crate) fn type_i2(m: u32) -> Universe {
    let mut elements = Vec::with_capacity(2 * m as usize);
    for flip in [false, true] {
        for rot in 0..m {
            elements.push(Repr::Dihedral { m, rot, flip });
        }
    }
    // s1 = f, s2 = r^(m-1) f, so that s1 * s2 = r.
    let simples = vec![
        Repr::Dihedral {
            m,
            rot: 0,
            flip: true,
        },
        Repr::Dihedral {
            m,
            rot: m - 1,
            flip: true,
        },
    ];
    Universe {
        elements,
        simples,
        geometry: Geometry::Dihedral { m },
    }
}

fn rat(n: i128, d: i128) -> Rat {
    Ratio::new(n, d)
}

/// Reflection matrix in the simple-root basis from the Gram matrix:
/// row i of s_i is `-2 B_{j,i}` off the diagonal and `-1` on it (unit roots).
#[allow(clippy::needless_range_loop)]
fn reflection_matrix_unit_roots<K: Scalar>(gram: &Matrix<K>, i: usize) -> Matrix<K> {
    let n = gram.n;
    let mut m = Matrix::identity(n);
    for j in 0..n {
        if j == i {
            m.set(i, i, K::zero().sub(&K::one()));
        } else {
            let two = K::one().add(&K::one());
            m.set(i, j, K::zero().sub(&two.mul(gram.get(j, i))));
        }
    }
    m
}

/// Orbit of the simple roots under the generated group; simple roots occupy
/// the first `n` slots.
fn root_orbit<K: Scalar>(gens: &[Matrix<K>]) -> Vec<Vec<K>> {
    let n = gens[0].n;
    let mut roots: Vec<Vec<K>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { K::one() } else { K::zero() })
                .collect()
        })
        .collect();
    let mut head = 0;
    while head < roots.len() {
        let current = roots[head].clone();
        for g in gens {
            let image = g.apply(&current);
            if !roots.contains(&image) {
                roots.push(image);
            }
        }
        head += 1;
    }
    roots
}

fn matrix_to_root_perm<K: Scalar>(m: &Matrix<K>, roots: &[Vec<K>]) -> Vec<u8> {
    roots
        .iter()
        .map(|r| {
            let image = m.apply(r);
            roots
                .iter()
                .position(|x| *x == image)
                .expect("root set closed under the group") as u8
        })
        .collect()
}

fn root_perm_closure(gens: Vec<Vec<u8>>, num_roots: usize) -> Vec<Repr> {
    let identity: Vec<u8> = (0..num_roots as u8).collect();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(identity);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            // w * g: apply g first, then w.
            let prod: Vec<u8> = g.iter().map(|&i| w[i as usize]).collect();
            if seen.insert(prod.clone()) {
                queue.push_back(prod);
            }
        }
    }
    seen.into_iter().map(Repr::RootPerm).collect()
}

pub(crate) fn type_h3() -> Universe {
    // Diagram 5-3: B12 = -cos(pi/5) = -phi/2, B23 = -1/2, B13 = 0.
    let phi = Sqrt5::phi();
    let half = Sqrt5::rational(rat(1, 2));
    let mut gram: Matrix<Sqrt5> = Matrix::identity(3);
    let b12 = Sqrt5::zero().sub(&phi.mul(&half));
    let b23 = Sqrt5::zero().sub(&half);
    gram.set(0, 1, b12.clone());
    gram.set(1, 0, b12);
    gram.set(1, 2, b23.clone());
    gram.set(2, 1, b23);

    let gens: Vec<Matrix<Sqrt5>> = (0..3)
        .map(|i| reflection_matrix_unit_roots(&gram, i))
        .collect();
    let roots = root_orbit(&gens);
    assert_eq!(roots.len(), 30, "H3 root orbit size");
    let gen_perms: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| matrix_to_root_perm(g, &roots))
        .collect();
    let elements = root_perm_closure(gen_perms.clone(), roots.len());
    let simples = gen_perms.into_iter().map(Repr::RootPerm).collect();
    Universe {
        elements,
        simples,
        geometry: Geometry::RootsH3 { roots },
    }
}

pub(crate) fn type_f4() -> Universe {
    // Bourbaki simple roots: e2-e3, e3-e4, e4, (e1-e2-e3-e4)/2.
    let simple_roots: Vec<Vec<Rat>> = vec![
        vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(-1, 1)],
        vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
        vec![rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)],
    ];
    let dot = |a: &[Rat], b: &[Rat]| -> Rat { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // Reflection through alpha: v - 2 <v,a>/<a,a> a, as a matrix on e_j.
    #[allow(clippy::needless_range_loop)]
    let refl_matrix = |alpha: &[Rat]| -> Matrix<Rat> {
        let norm = dot(alpha, alpha);
        let mut m = Matrix::identity(4);
        for j in 0..4 {
            let e_j: Vec<Rat> = (0..4)
                .map(|t| if t == j { rat(1, 1) } else { rat(0, 1) })
                .collect();
            let coef = rat(2, 1) * dot(&e_j, alpha) / norm;
            for i in 0..4 {
                let v = m.get(i, j) - coef * alpha[i];
                m.set(i, j, v);
            }
        }
        m
    };
    let gens: Vec<Matrix<Rat>> = simple_roots.iter().map(|a| refl_matrix(a)).collect();

    // Orbit of the simple roots: all 48 roots, simple roots first.
    let mut roots: Vec<Vec<Rat>> = simple_roots.clone();
    let mut head = 0;
    while head < roots.len() {
        let current = roots[head].clone();
        for g in &gens {
            let image = g.apply(&current);
            if !roots.contains(&image) {
                roots.push(image);
            }
        }
        head += 1;
    }
    assert_eq!(roots.len(), 48, "F4 root orbit size");
    let gen_perms: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| matrix_to_root_perm(g, &roots))
        .collect();
    let elements = root_perm_closure(gen_perms.clone(), roots.len());
    let simples = gen_perms.into_iter().map(Repr::RootPerm).collect();

    // Express every root in the simple-root basis: coords = A^-1 root,
    // where A has the simple roots as columns.
    let mut a = Matrix::<Rat>::zero(4);
    for (j, alpha) in simple_roots.iter().enumerate() {
        for (i, entry) in alpha.iter().enumerate() {
            a.set(i, j, *entry);
        }
    }
    let a_inv = a.inverse().expect("simple roots are a basis");
    let roots_in_basis: Vec<Vec<Rat>> = roots.iter().map(|r| a_inv.apply(r)).collect();

    Universe {
        elements,
        simples,
        geometry: Geometry::RootsF4 {
            roots,
            roots_in_basis,
        },
    }
}

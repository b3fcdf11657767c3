//! Hecke modules at desk scale: the sign-induced module, principal
//! series, and central-character quotients with their analysis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::algebra::{geometric_sum, mul_simple_left, theta_right_form, HeckeElement, Lambda};
use crate::hecke::laurent::Laurent;
use crate::hecke::linalg::{annihilator, invariant_closure, qq, qq_pow, span_dim, Echelon, RatMatrix, QQ};
use crate::hecke::perm::Perm;
use crate::rat::{Rat, RatPair};

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > 3 {
        return Err(Error::RankTooLarge { rank });
    }
    Ok(())
}

/// A vector of the sign-induced module Sigma = H (x)_{H_S} sgn in its
/// free A-basis {theta^lambda (x) 1}.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SigmaVector {
    rank: usize,
    coords: BTreeMap<Lambda, Laurent>,
}

impl SigmaVector {
    pub fn zero(rank: usize) -> Self {
        SigmaVector {
            rank,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis(rank: usize, lambda: Lambda) -> Self {
        assert_eq!(lambda.len(), rank);
        let mut coords = BTreeMap::new();
        coords.insert(lambda, Laurent::one());
        SigmaVector { rank, coords }
    }

    pub fn coords(&self) -> &BTreeMap<Lambda, Laurent> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, rhs: &SigmaVector) -> SigmaVector {
        let mut out = self.clone();
        for (l, c) in &rhs.coords {
            out.insert(l.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Laurent) -> SigmaVector {
        let mut out = SigmaVector::zero(self.rank);
        for (l, v) in &self.coords {
            out.insert(l.clone(), v * c);
        }
        out
    }

    fn insert(&mut self, lambda: Lambda, c: Laurent) {
        if c.is_zero() {
            return;
        }
        match self.coords.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

/// The sign-induced module handle: A-free of rank one, theta acting by
/// index shift and `T_{s_k}` through the commutation rule followed by the
/// sign reduction `T_w -> (-1)^{l(w)}`.
#[derive(Clone, Copy, Debug)]
pub struct SignModule {
    rank: usize,
}

impl SignModule {
    pub fn new(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(SignModule { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Action of theta_i^{+-power} (0-based index): a basis-index shift.
    pub fn act_theta(&self, i: usize, power: i64, v: &SigmaVector) -> SigmaVector {
        let mut out = SigmaVector::zero(self.rank);
        for (lambda, c) in &v.coords {
            let mut shifted = lambda.clone();
            shifted[i] += power;
            out.insert(shifted, c.clone());
        }
        out
    }

    /// Action of T_{s_k}: `-theta^{s_k lambda} + (q-1) G(lambda, k)` on
    /// each basis vector.
    pub fn act_t(&self, k: usize, v: &SigmaVector) -> SigmaVector {
        let mut out = SigmaVector::zero(self.rank);
        let qm1 = Laurent::q_minus_one();
        for (lambda, c) in &v.coords {
            let mut swapped = lambda.clone();
            swapped.swap(k, k + 1);
            out.insert(swapped, -&(c.clone()));
            for (sign, mono) in geometric_sum(lambda, k) {
                let scale = if sign > 0 { &qm1 * c } else { -&(&qm1 * c) };
                out.insert(mono, scale);
            }
        }
        out
    }

    /// Action of a full element in normal form.
    pub fn act(&self, elem: &HeckeElement, v: &SigmaVector) -> SigmaVector {
        assert_eq!(elem.rank(), self.rank);
        let mut out = SigmaVector::zero(self.rank);
        for ((lambda, w), c) in elem.terms() {
            // apply T_w first (rightmost), then the theta shift
            let mut acc = v.clone();
            for &k in w.reduced_word().iter().rev() {
                acc = self.act_t(k, &acc);
            }
            for (i, &power) in lambda.iter().enumerate() {
                if power != 0 {
                    acc = self.act_theta(i, power, &acc);
                }
            }
            out = out.add(&acc.scaled(c));
        }
        out
    }
}

/// Dimension of the common (-1)-eigenspace of the `T_{s_k}` matrices.
pub fn sign_isotypic_dim(t_mats: &[RatMatrix], dim: usize) -> usize {
    sign_isotypic_basis(t_mats, dim).len()
}

fn sign_isotypic_basis(t_mats: &[RatMatrix], dim: usize) -> Vec<Vec<QQ>> {
    if t_mats.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = vec![QQ::zero(); dim];
                v[i] = QQ::one();
                v
            })
            .collect();
    }
    let stacked: Vec<RatMatrix> = t_mats
        .iter()
        .map(|t| t.add(&RatMatrix::identity(dim)))
        .collect();
    RatMatrix::vstack(&stacked).nullspace_basis()
}

/// The principal series H (x)_A chi at a rational specialization of q,
/// in its basis {T_w (x) 1}.
pub struct PrincipalSeries {
    rank: usize,
    chi: Vec<Rat>,
    q: Rat,
    basis: Vec<Perm>,
    theta_mats: Vec<RatMatrix>,
    t_mats: Vec<RatMatrix>,
}

impl PrincipalSeries {
    pub fn new(rank: usize, chi: Vec<Rat>, q: Rat) -> Result<Self> {
        check_rank(rank)?;
        if chi.len() != rank || chi.iter().any(|c| *c == Rat::from_integer(0)) {
            return Err(Error::ZeroCharacter);
        }
        if q == Rat::from_integer(0) {
            return Err(Error::ZeroQ);
        }
        let basis = Perm::all(rank);
        let index: BTreeMap<&Perm, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let dim = basis.len();

        let chi_qq: Vec<QQ> = chi.iter().map(qq).collect();
        let chi_pow = |mu: &Lambda| -> QQ {
            mu.iter()
                .enumerate()
                .map(|(i, &e)| qq_pow(&chi_qq[i], e))
                .fold(QQ::one(), |a, b| a * b)
        };

        let mut theta_mats = Vec::new();
        for i in 0..rank {
            let mut mat = RatMatrix::zeros(dim, dim);
            let mut e_i = vec![0i64; rank];
            e_i[i] = 1;
            for (col, w) in basis.iter().enumerate() {
                for ((u, mu), c) in theta_right_form(rank, &e_i, &w.reduced_word()) {
                    let row = index[&u];
                    let v = qq(&c.eval(&q)) * chi_pow(&mu);
                    mat.add_to(row, col, &v);
                }
            }
            theta_mats.push(mat);
        }

        let mut t_mats = Vec::new();
        for k in 0..rank.saturating_sub(1) {
            let mut mat = RatMatrix::zeros(dim, dim);
            for (col, w) in basis.iter().enumerate() {
                for (z, c) in mul_simple_left(k, w) {
                    let row = index[&z];
                    let v = qq(&c.eval(&q));
                    mat.add_to(row, col, &v);
                }
            }
            t_mats.push(mat);
        }

        Ok(PrincipalSeries {
            rank,
            chi,
            q,
            basis,
            theta_mats,
            t_mats,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn chi(&self) -> &[Rat] {
        &self.chi
    }

    pub fn q(&self) -> Rat {
        self.q
    }

    pub fn theta_matrix(&self, i: usize) -> &RatMatrix {
        &self.theta_mats[i]
    }

    pub fn t_matrix(&self, k: usize) -> &RatMatrix {
        &self.t_mats[k]
    }

    pub fn sign_isotypic_dim(&self) -> usize {
        sign_isotypic_dim(&self.t_mats, self.dim())
    }
}

/// The report produced by [`central_quotient`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CentralQuotientReport {
    pub rank: usize,
    pub orbit: Vec<RatPair>,
    pub q: RatPair,
    pub dim: usize,
    pub sign_dim: usize,
    /// Whether the sign vectors generate the quotient as a module.
    pub sign_generates: bool,
    /// Sign-isotypic dimension of the semisimple head.
    pub head_sign_dim: usize,
    /// Exactly one irreducible quotient contains the sign type.
    pub unique_sign_quotient: bool,
    /// Pairwise-distinct orbit coordinates.
    pub regular_orbit: bool,
    /// q is a rational root of a Poincare factor (q = -1); the analysis
    /// is reported but the uniqueness theorem's hypotheses fail.
    pub singular_q: bool,
}

/// The finite-dimensional quotient Sigma / J Sigma at a central character
/// given by the S_m-orbit of `orbit`, with q specialized to a rational.
///
/// The quotient of the torus part by the symmetric-function ideal is
/// computed with a staircase basis (exponents `a_j <= m - j`) and the
/// elementary-symmetric rewrite rules; the `T` action descends from the
/// sign module. The analysis follows the generated-by-sign mechanism:
/// the radical of the acting algebra is cut out by the trace form and
/// the head's sign multiplicity is read off the quotient.
pub fn central_quotient(rank: usize, orbit: Vec<Rat>, q: Rat) -> Result<CentralQuotientReport> {
    check_rank(rank)?;
    if orbit.len() != rank || orbit.iter().any(|c| *c == Rat::from_integer(0)) {
        return Err(Error::ZeroCharacter);
    }
    if q == Rat::from_integer(0) {
        return Err(Error::ZeroQ);
    }
    let reducer = QuotientReducer::new(rank, &orbit);
    let dim = reducer.basis.len();

    // theta_i matrices: multiply a basis monomial and reduce
    let mut theta_mats = Vec::new();
    for i in 0..rank {
        let mut mat = RatMatrix::zeros(dim, dim);
        for (col, b) in reducer.basis.iter().enumerate() {
            let mut shifted = b.clone();
            shifted[i] += 1;
            for (row, v) in reducer.reduce(&shifted, &QQ::one()) {
                mat.add_to(row, col, &v);
            }
        }
        theta_mats.push(mat);
    }

    // T_{s_k} matrices: the sign-module formula, reduced
    let qm1 = qq(&q) - QQ::one();
    let mut t_mats = Vec::new();
    for k in 0..rank.saturating_sub(1) {
        let mut mat = RatMatrix::zeros(dim, dim);
        for (col, b) in reducer.basis.iter().enumerate() {
            let mut swapped = b.clone();
            swapped.swap(k, k + 1);
            for (row, v) in reducer.reduce(&swapped, &-QQ::one()) {
                mat.add_to(row, col, &v);
            }
            for (sign, mono) in geometric_sum(b, k) {
                let scale = if sign > 0 { qm1.clone() } else { -qm1.clone() };
                for (row, v) in reducer.reduce(&mono, &scale) {
                    mat.add_to(row, col, &v);
                }
            }
        }
        t_mats.push(mat);
    }

    // generator set with theta inverses, for submodule closures and the
    // acting algebra
    let mut generators = theta_mats.clone();
    for m in &theta_mats {
        generators.push(
            m.inverse()
                .expect("theta acts invertibly at a nonzero character"),
        );
    }
    generators.extend(t_mats.iter().cloned());

    let sign_basis = sign_isotypic_basis(&t_mats, dim);
    let sign_dim = sign_basis.len();

    let generated = invariant_closure(&sign_basis, &generators);
    let sign_generates = span_dim(&generated) == dim;

    // acting algebra B as a span of matrices, then its trace-form radical
    let algebra = matrix_algebra(dim, &generators);
    let radical = algebra_radical(dim, &algebra);
    // radical submodule rad(B) . V
    let mut rad_vectors = Vec::new();
    for r in &radical {
        for i in 0..dim {
            let mut e = vec![QQ::zero(); dim];
            e[i] = QQ::one();
            rad_vectors.push(r.mul_vec(&e));
        }
    }
    let rad_dim = span_dim(&rad_vectors);

    // head sign dimension: {v : (T_k + 1) v in rad} modulo rad
    let ann = annihilator(&rad_vectors, dim);
    let head_sign_dim = if t_mats.is_empty() {
        dim - rad_dim
    } else {
        let stacked: Vec<RatMatrix> = t_mats
            .iter()
            .map(|t| ann.mul(&t.add(&RatMatrix::identity(dim))))
            .collect();
        RatMatrix::vstack(&stacked).nullity() - rad_dim
    };

    let mut sorted = orbit.clone();
    sorted.sort();
    sorted.dedup();
    let regular_orbit = sorted.len() == rank;
    let singular_q = q == Rat::from_integer(-1);

    Ok(CentralQuotientReport {
        rank,
        orbit: orbit.iter().map(|c| RatPair(*c)).collect(),
        q: RatPair(q),
        dim,
        sign_dim,
        sign_generates,
        head_sign_dim,
        unique_sign_quotient: sign_dim == 1 && sign_generates && head_sign_dim == 1,
        regular_orbit,
        singular_q,
    })
}

/// Rewrites arbitrary Laurent monomials in theta to the staircase basis
/// of A / (e_1 - c_1, ..., e_m - c_m).
struct QuotientReducer {
    rank: usize,
    c: Vec<QQ>,
    basis: Vec<Lambda>,
    index: BTreeMap<Lambda, usize>,
}

impl QuotientReducer {
    fn new(rank: usize, orbit: &[Rat]) -> Self {
        let c = elementary_symmetric(&orbit.iter().map(qq).collect::<Vec<_>>());
        let mut basis = Vec::new();
        match rank {
            1 => basis.push(vec![0]),
            2 => {
                for a1 in 0..2i64 {
                    basis.push(vec![a1, 0]);
                }
            }
            3 => {
                for a2 in 0..2i64 {
                    for a1 in 0..3i64 {
                        basis.push(vec![a1, a2, 0]);
                    }
                }
            }
            _ => unreachable!("rank capped at 3"),
        }
        basis.sort();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        QuotientReducer {
            rank,
            c,
            basis,
            index,
        }
    }

    fn is_basis(&self, mono: &Lambda) -> bool {
        self.index.contains_key(mono)
    }

    /// Reduces `coeff * theta^mono` to coordinates over the basis.
    fn reduce(&self, mono: &Lambda, coeff: &QQ) -> Vec<(usize, QQ)> {
        let mut work: BTreeMap<Lambda, QQ> = BTreeMap::new();
        work.insert(mono.clone(), coeff.clone());
        loop {
            let target = work
                .iter()
                .find(|(m, c)| !c.is_zero() && !self.is_basis(m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = target else { break };
            work.remove(&m);
            for (next, factor) in self.rewrite_once(&m) {
                let entry = work.entry(next).or_insert_with(QQ::zero);
                *entry += &c * &factor;
            }
            work.retain(|_, v| !v.is_zero());
        }
        work.into_iter()
            .map(|(m, c)| (self.index[&m], c))
            .collect()
    }

    /// One rewrite of the first out-of-basis feature of `m`, as a list of
    /// replacement monomials with factors.
    fn rewrite_once(&self, m: &Lambda) -> Vec<(Lambda, QQ)> {
        let c = &self.c;
        let shift = |m: &Lambda, deltas: &[(usize, i64)]| -> Lambda {
            let mut out = m.clone();
            for &(i, d) in deltas {
                out[i] += d;
            }
            out
        };
        match self.rank {
            1 => {
                // theta^a = c1^a
                vec![(vec![0], qq_pow(&c[0], m[0]))]
            }
            2 => {
                let (p, s) = (&c[0], &c[1]);
                if m[1] > 0 {
                    // theta2 = p - theta1
                    vec![
                        (shift(m, &[(1, -1)]), p.clone()),
                        (shift(m, &[(0, 1), (1, -1)]), -QQ::one()),
                    ]
                } else if m[1] < 0 {
                    // theta2^{-1} = theta1 / s
                    vec![(shift(m, &[(0, 1), (1, 1)]), QQ::one() / s)]
                } else if m[0] < 0 {
                    // theta1^{-1} = (p - theta1) / s
                    vec![
                        (shift(m, &[(0, 1)]), p / s),
                        (shift(m, &[(0, 2)]), -(QQ::one() / s)),
                    ]
                } else {
                    // theta1^2 = p theta1 - s
                    debug_assert!(m[0] >= 2);
                    vec![
                        (shift(m, &[(0, -1)]), p.clone()),
                        (shift(m, &[(0, -2)]), -s.clone()),
                    ]
                }
            }
            3 => {
                let (c1, c2, c3) = (&c[0], &c[1], &c[2]);
                if m[2] > 0 {
                    // theta3 = c1 - theta1 - theta2
                    vec![
                        (shift(m, &[(2, -1)]), c1.clone()),
                        (shift(m, &[(0, 1), (2, -1)]), -QQ::one()),
                        (shift(m, &[(1, 1), (2, -1)]), -QQ::one()),
                    ]
                } else if m[2] < 0 {
                    // theta3^{-1} = theta1 theta2 / c3
                    vec![(shift(m, &[(0, 1), (1, 1), (2, 1)]), QQ::one() / c3)]
                } else if m[1] < 0 {
                    // theta2^{-1} = (c1 theta1 - theta1^2 - theta1 theta2) / c3
                    vec![
                        (shift(m, &[(0, 1), (1, 1)]), c1 / c3),
                        (shift(m, &[(0, 2), (1, 1)]), -(QQ::one() / c3)),
                        (shift(m, &[(0, 1), (1, 2)]), -(QQ::one() / c3)),
                    ]
                } else if m[0] < 0 {
                    // theta1^{-1} = (c1 theta2 - theta1 theta2 - theta2^2) / c3
                    vec![
                        (shift(m, &[(0, 1), (1, 1)]), c1 / c3),
                        (shift(m, &[(0, 2), (1, 1)]), -(QQ::one() / c3)),
                        (shift(m, &[(0, 1), (1, 2)]), -(QQ::one() / c3)),
                    ]
                } else if m[1] >= 2 {
                    // theta2^2 = c1 theta1 + c1 theta2 - theta1^2
                    //            - theta1 theta2 - c2
                    vec![
                        (shift(m, &[(0, 1), (1, -2)]), c1.clone()),
                        (shift(m, &[(1, -1)]), c1.clone()),
                        (shift(m, &[(0, 2), (1, -2)]), -QQ::one()),
                        (shift(m, &[(0, 1), (1, -1)]), -QQ::one()),
                        (shift(m, &[(1, -2)]), -c2.clone()),
                    ]
                } else {
                    // theta1^3 = c1 theta1^2 - c2 theta1 + c3
                    debug_assert!(m[0] >= 3);
                    vec![
                        (shift(m, &[(0, -1)]), c1.clone()),
                        (shift(m, &[(0, -2)]), -c2.clone()),
                        (shift(m, &[(0, -3)]), c3.clone()),
                    ]
                }
            }
            _ => unreachable!(),
        }
    }
}

fn elementary_symmetric(xs: &[QQ]) -> Vec<QQ> {
    let mut e = vec![QQ::one()];
    for x in xs {
        let mut next = vec![QQ::zero(); e.len() + 1];
        for (i, c) in e.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * x;
        }
        e = next;
    }
    e.remove(0);
    e
}

/// Span of all words in the generators (with the identity), as a basis
/// of matrices. New products are propagated from echelon-reduced
/// representatives, which keeps coefficients small; the span is the same.
fn matrix_algebra(dim: usize, generators: &[RatMatrix]) -> Vec<RatMatrix> {
    let mut ech = Echelon::new(dim * dim);
    let mut basis: Vec<RatMatrix> = Vec::new();
    let mut queue = vec![RatMatrix::identity(dim)];
    queue.extend(generators.iter().cloned());
    while let Some(m) = queue.pop() {
        if let Some(reduced) = ech.insert(m.flat().to_vec()) {
            let rep = RatMatrix::from_flat(dim, dim, reduced);
            for g in generators {
                queue.push(g.mul(&rep));
            }
            basis.push(rep);
        }
    }
    basis
}

/// Trace-form radical of a spanned matrix algebra (valid over Q).
fn algebra_radical(dim: usize, algebra: &[RatMatrix]) -> Vec<RatMatrix> {
    let n = algebra.len();
    let mut gram = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, algebra[i].mul(&algebra[j]).trace());
        }
    }
    gram.nullspace_basis()
        .into_iter()
        .map(|coeffs| {
            let mut m = RatMatrix::zeros(dim, dim);
            for (c, b) in coeffs.iter().zip(algebra) {
                if !c.is_zero() {
                    for i in 0..dim {
                        for j in 0..dim {
                            let v = c * b.get(i, j);
                            m.add_to(i, j, &v);
                        }
                    }
                }
            }
            m
        })
        .collect()
}

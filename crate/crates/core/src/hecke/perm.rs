//! Elements of the symmetric group S_m in one-line notation, with the
//! length function and reduced words needed by the Hecke normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of {0, .., m-1}; `perm[i]` is the image of `i`.
/// Ordering is lexicographic on the one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m as u8).collect())
    }

    /// The simple transposition s_k swapping k and k+1 (0-based).
    pub fn transposition(m: usize, k: usize) -> Self {
        assert!(k + 1 < m, "s_{k} undefined at rank {m}");
        let mut p = Perm::identity(m);
        p.0.swap(k, k + 1);
        p
    }

    pub fn from_one_line(images: Vec<u8>) -> Option<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if (x as usize) >= m || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm(images))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.rank(), other.rank());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.rank()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// A reduced word `[k1, .., kL]` with `self = s_{k1} * .. * s_{kL}`,
    /// chosen deterministically (smallest descent first while unwinding).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut collected = Vec::new();
        loop {
            let descent = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]);
            match descent {
                None => break,
                Some(i) => {
                    w.swap(i, i + 1);
                    collected.push(i);
                }
            }
        }
        collected.reverse();
        collected
    }

    /// The coordinate action on exponent vectors: position `i` of the
    /// input lands at position `self(i)`.
    pub fn act_on_lambda(&self, lambda: &[i64]) -> Vec<i64> {
        assert_eq!(self.rank(), lambda.len());
        let mut out = vec![0i64; lambda.len()];
        for (i, &x) in lambda.iter().enumerate() {
            out[self.apply(i)] = x;
        }
        out
    }

    /// All elements of S_m in lexicographic one-line order.
    pub fn all(m: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(m);
        let mut used = vec![false; m];
        fn rec(m: usize, current: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if current.len() == m {
                out.push(Perm(current.clone()));
                return;
            }
            for x in 0..m {
                if !used[x] {
                    used[x] = true;
                    current.push(x as u8);
                    rec(m, current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        rec(m, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

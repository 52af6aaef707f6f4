//! Exact inversion of triangular incidence matrices over the integers.

use crate::error::SaxlError;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A square integer matrix over an ordered list of poset elements,
/// upper-triangular with unit diagonal under the stored linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<BigInt>>,
}

impl IncidenceMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(labels.len(), entries.len());
        assert!(entries.iter().all(|r| r.len() == labels.len()));
        IncidenceMatrix { labels, entries }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let n = labels.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        IncidenceMatrix { labels, entries }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn check_triangular(&self) -> Result<(), SaxlError> {
        for i in 0..self.dim() {
            if !self.entries[i][i].is_one() {
                return Err(SaxlError::NotTriangular(i, i));
            }
            for j in 0..i {
                if !self.entries[i][j].is_zero() {
                    return Err(SaxlError::NotTriangular(i, j));
                }
            }
        }
        Ok(())
    }

    /// Exact integer inverse by back-substitution; the product with the
    /// original is verified to be the identity before returning.
    pub fn invert(&self) -> Result<IncidenceMatrix, SaxlError> {
        self.check_triangular()?;
        let n = self.dim();
        let mut inv = vec![vec![BigInt::zero(); n]; n];
        for i in (0..n).rev() {
            inv[i][i] = BigInt::one();
            for j in i + 1..n {
                let mut s = BigInt::zero();
                for k in i + 1..=j {
                    s += &self.entries[i][k] * &inv[k][j];
                }
                inv[i][j] = -s;
            }
        }
        let out = IncidenceMatrix {
            labels: self.labels.clone(),
            entries: inv,
        };
        assert!(
            self.mul_is_identity(&out),
            "triangular inverse failed verification"
        );
        Ok(out)
    }

    fn mul_is_identity(&self, other: &IncidenceMatrix) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for k in 0..n {
                    s += &self.entries[i][k] * &other.entries[k][j];
                }
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                if s != want {
                    return false;
                }
            }
        }
        true
    }

    /// `M v` for an integer column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim());
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// A linear extension of the relation `leq` on `0..n`: Kahn's algorithm with
/// smallest-index tie-breaking, so the output is deterministic.
pub fn linear_extension<F: Fn(usize, usize) -> bool>(
    n: usize,
    leq: F,
) -> Result<Vec<usize>, SaxlError> {
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n).find(|&i| {
            !placed[i] && (0..n).all(|j| placed[j] || j == i || !(leq(j, i) && !leq(i, j)))
        });
        match next {
            Some(i) => {
                placed[i] = true;
                order.push(i);
            }
            None => {
                return Err(SaxlError::BadParameter(
                    "relation contains a cycle; no linear extension exists".into(),
                ))
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IncidenceMatrix {
        let labels = (0..rows.len()).map(|i| format!("c{i}")).collect();
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IncidenceMatrix::new(labels, entries)
    }

    #[test]
    fn identity_inverts_to_itself() {
        let id = IncidenceMatrix::identity(vec!["a".into(), "b".into()]);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn chain_poset_mobius_values() {
        // 1 < Z2 < Z4 with an all-ones upper triangle
        let chain = m(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        let inv = chain.invert().unwrap();
        assert_eq!(inv.entries[0][1], BigInt::from(-1));
        assert_eq!(inv.entries[1][2], BigInt::from(-1));
        assert_eq!(inv.entries[0][2], BigInt::from(0));
    }

    #[test]
    fn five_by_five_first_row() {
        let mtx = m(&[
            &[1, 19, 38, 19, 1],
            &[0, 1, 0, 1, 1],
            &[0, 0, 1, 1, 1],
            &[0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 1],
        ]);
        let inv = mtx.invert().unwrap();
        let first: Vec<i64> = inv.entries[0]
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(first, vec![1, -19, -38, 38, 18]);
    }

    #[test]
    fn non_triangular_rejected() {
        let bad = m(&[&[1, 0], &[1, 1]]);
        assert!(bad.invert().is_err());
        let bad_diag = m(&[&[2, 0], &[0, 1]]);
        assert!(bad_diag.invert().is_err());
    }

    #[test]
    fn linear_extension_respects_order() {
        // divisibility on {1,2,3,6} indexed 0..4
        let vals = [1u64, 6, 2, 3];
        let ext = linear_extension(4, |i, j| vals[j] % vals[i] == 0).unwrap();
        let pos = |v: u64| ext.iter().position(|&i| vals[i] == v).unwrap();
        assert!(pos(1) < pos(2) && pos(2) < pos(6) && pos(3) < pos(6));
    }
}

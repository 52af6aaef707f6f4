//! Permutations on the points `1..=degree`.
//!
//! Points are 1-based in every external representation (cycle lists in group
//! files, printed cycles). Internally images are stored 0-based in a flat
//! `u32` array.

use crate::error::SaxlError;
use std::fmt;

/// A permutation of `{1, .., degree}`, stored as the 0-based image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    /// Identity on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from a 0-based image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, SaxlError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img as usize >= n {
                return Err(SaxlError::NotBijective {
                    degree: n,
                    point: i + 1,
                    problem: format!("maps to {} which exceeds the degree", img + 1),
                });
            }
            if seen[img as usize] {
                return Err(SaxlError::NotBijective {
                    degree: n,
                    point: img as usize + 1,
                    problem: "is hit twice".into(),
                });
            }
            seen[img as usize] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds from a list of disjoint cycles over 1-based points. Fixed points
    /// are omitted; the empty list is the identity.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, SaxlError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt as usize > degree {
                    return Err(SaxlError::Parse(format!(
                        "cycle point {pt} outside 1..={degree}"
                    )));
                }
                let src = (pt - 1) as usize;
                if moved[src] {
                    return Err(SaxlError::Parse(format!(
                        "point {pt} appears in two cycles"
                    )));
                }
                moved[src] = true;
                let dst = cycle[(k + 1) % cycle.len()] - 1;
                images[src] = dst;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Right-action composition: the result maps `i` to `q(p(i))`
    /// (apply `self` first, then `q`).
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, SaxlError> {
        if self.degree() != q.degree() {
            return Err(SaxlError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        let images = self.images.iter().map(|&i| q.images[i as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Conjugate `self^g = g^-1 * self * g` (in right-action order).
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g^-1 c g)(i) = g(c(g^-1(i)))
        let ginv = g.inverse();
        ginv.compose_unchecked(self).compose_unchecked(g)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start as u32;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Cycle decomposition over 1-based points, fixed points omitted, each
    /// cycle rotated to start at its smallest point, cycles sorted by first
    /// point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p + 1);
                p = self.images[p as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Power `self^k` for signed `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            k >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, pt) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    #[test]
    fn compose_follows_right_action_convention() {
        // (1 2) then (2 3) is (1 3 2)
        let p = cyc(3, &[&[1, 2]]);
        let q = cyc(3, &[&[2, 3]]);
        assert_eq!(p.compose(&q).unwrap(), cyc(3, &[&[1, 3, 2]]));
    }

    #[test]
    fn identity_and_inverse_laws() {
        let g = cyc(5, &[&[1, 2, 3]]);
        let e = Permutation::identity(5);
        assert_eq!(g.compose(&e).unwrap(), g);
        assert_eq!(
            cyc(3, &[&[1, 2, 3]]).compose(&cyc(3, &[&[1, 3, 2]])).unwrap(),
            Permutation::identity(3)
        );
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(p.compose(&q).is_err());
    }

    #[test]
    fn cycle_roundtrip_and_order() {
        let g = cyc(7, &[&[1, 2], &[3, 4, 5]]);
        assert_eq!(g.order(), 6);
        assert_eq!(Permutation::from_cycles(7, &g.cycles()).unwrap(), g);
        assert_eq!(g.pow(6), Permutation::identity(7));
        assert_eq!(g.pow(-1), g.inverse());
    }

    #[test]
    fn conjugation_moves_cycles() {
        let t = cyc(3, &[&[1, 2]]);
        let g = cyc(3, &[&[2, 3]]);
        assert_eq!(t.conjugate_by(&g), cyc(3, &[&[1, 3]]));
    }

    #[test]
    fn bad_images_rejected() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }
}

//! Finitely generated permutation groups.
//!
//! [`Group`] carries a base and strong generating set built by a deterministic
//! Schreier-Sims pass, giving exact order and fast membership. [`Subgroup`] is
//! an explicit element list for the small subgroups that arc-stabiliser
//! arithmetic works with.

use crate::error::SaxlError;
use crate::perm::Permutation;
use num_bigint::BigUint;
use std::collections::HashMap;

/// One level of the stabiliser chain: a base point, the generators fixing the
/// earlier base points, and the transversal of the orbit of the base point.
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    /// point -> representative u with base^u = point
    transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn rebuild(base: u32, gens: Vec<Permutation>, degree: usize) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(base, Permutation::identity(degree));
        let mut frontier = vec![base];
        while let Some(x) = frontier.pop() {
            let ux = transversal[&x].clone();
            for g in &gens {
                let y = g.image(x);
                if !transversal.contains_key(&y) {
                    transversal.insert(y, ux.compose_unchecked(g));
                    frontier.push(y);
                }
            }
        }
        Level {
            base,
            gens,
            transversal,
        }
    }

    fn orbit_points(&self) -> Vec<u32> {
        let mut pts: Vec<u32> = self.transversal.keys().copied().collect();
        pts.sort_unstable();
        pts
    }
}

/// A permutation group with a stabiliser chain.
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl Group {
    /// Deterministic Schreier-Sims from a nonempty generator list.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Group, SaxlError> {
        if generators.is_empty() {
            return Err(SaxlError::BadParameter(
                "at least one generator is required".into(),
            ));
        }
        let degree = generators[0].degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(SaxlError::DegreeMismatch(degree, g.degree()));
            }
        }

        let mut builder = ChainBuilder {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
        };
        for g in &generators {
            builder.add_strong(g.clone());
        }
        let levels = builder.complete();

        let mut order = BigUint::from(1u32);
        for level in &levels {
            order *= BigUint::from(level.transversal.len() as u64);
        }
        let group = Group {
            degree,
            generators,
            levels,
            order,
        };
        debug_assert!(group.generators.iter().all(|g| group.contains(g)));
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`; panics if it does not fit (no catalog group comes close).
    pub fn order_u64(&self) -> u64 {
        u64::try_from(&self.order).expect("group order exceeds u64")
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit sizes along the chain; their product is the group order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.transversal.len()).collect()
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        match self.sift(p) {
            Some(residue) => residue.is_identity(),
            None => false,
        }
    }

    /// Uniformly random element: a product of uniformly chosen coset
    /// representatives along the chain.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut out = Permutation::identity(self.degree);
        for level in &self.levels {
            let pts = level.orbit_points();
            let pick = pts[rng.gen_range(0..pts.len())];
            out = out.compose_unchecked(&level.transversal[&pick]);
        }
        out
    }

    /// Strips `p` through the chain; `None` if some base image leaves its orbit.
    fn sift(&self, p: &Permutation) -> Option<Permutation> {
        let mut g = p.clone();
        for level in &self.levels {
            let x = g.image(level.base);
            let u = level.transversal.get(&x)?;
            g = g.compose_unchecked(&u.inverse());
        }
        Some(g)
    }
}

struct ChainBuilder {
    degree: usize,
    base: Vec<u32>,
    strong: Vec<Permutation>,
}

impl ChainBuilder {
    fn add_strong(&mut self, g: Permutation) {
        if g.is_identity() || self.strong.contains(&g) {
            return;
        }
        if self.base.iter().all(|&b| g.image(b) == b) {
            let moved = (0..self.degree as u32)
                .find(|&p| g.image(p) != p)
                .expect("non-identity permutation moves a point");
            self.base.push(moved);
        }
        self.strong.push(g);
    }

    fn level(&self, i: usize) -> Level {
        let gens: Vec<Permutation> = self
            .strong
            .iter()
            .filter(|g| self.base[..i].iter().all(|&b| g.image(b) == b))
            .cloned()
            .collect();
        Level::rebuild(self.base[i], gens, self.degree)
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// index at which stripping stopped.
    fn sift_from(&self, levels: &[Level], from: usize, g: Permutation) -> (Permutation, usize) {
        let mut g = g;
        for (j, level) in levels.iter().enumerate().skip(from) {
            let x = g.image(level.base);
            match level.transversal.get(&x) {
                Some(u) => g = g.compose_unchecked(&u.inverse()),
                None => return (g, j),
            }
        }
        (g, levels.len())
    }

    /// Bottom-up completion: at each level every Schreier generator must sift
    /// to the identity through the deeper levels.
    fn complete(mut self) -> Vec<Level> {
        let mut levels: Vec<Level> = (0..self.base.len()).map(|i| self.level(i)).collect();
        let mut i = levels.len().saturating_sub(1);
        loop {
            let mut clean = true;
            'scan: for x in levels[i].orbit_points() {
                let ux = levels[i].transversal[&x].clone();
                for h in levels[i].gens.clone() {
                    let y = h.image(x);
                    let uy = levels[i].transversal[&y].clone();
                    let schreier = ux.compose_unchecked(&h).compose_unchecked(&uy.inverse());
                    let (residue, depth) = self.sift_from(&levels, i + 1, schreier);
                    if !residue.is_identity() {
                        self.add_strong(residue);
                        while levels.len() < self.base.len() {
                            let k = levels.len();
                            levels.push(self.level(k));
                        }
                        for k in i..=depth.min(levels.len() - 1) {
                            levels[k] = self.level(k);
                        }
                        i = depth.min(levels.len() - 1);
                        clean = false;
                        break 'scan;
                    }
                }
            }
            if clean {
                if i == 0 {
                    break;
                }
                i -= 1;
            }
        }
        levels
    }
}

/// An explicit small subgroup: canonically sorted element list plus a short
/// generating list.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    degree: usize,
    elements: Vec<Permutation>,
    gens: Vec<Permutation>,
}

impl Subgroup {
    /// Closure of the generators, erroring out past `cap` elements.
    pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Subgroup, SaxlError> {
        for g in gens {
            if g.degree() != degree {
                return Err(SaxlError::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut elements: Vec<Permutation> = vec![id.clone()];
        let mut seen: std::collections::HashSet<Permutation> = elements.iter().cloned().collect();
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose_unchecked(g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(SaxlError::CapExceeded {
                            cap,
                            context: "subgroup closure".into(),
                        });
                    }
                    elements.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        elements.sort_unstable();
        let gens = if gens.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            gens.to_vec()
        };
        Ok(Subgroup {
            degree,
            elements,
            gens,
        })
    }

    pub fn trivial(degree: usize) -> Subgroup {
        let id = Permutation::identity(degree);
        Subgroup {
            degree,
            elements: vec![id.clone()],
            gens: vec![id],
        }
    }

    /// Builds directly from a full, closed element list (checked in debug).
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let gens = generating_subset(degree, &elements);
        Subgroup {
            degree,
            elements,
            gens,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.elements.iter().all(|e| self.contains(e))
    }

    /// Element-wise conjugate, canonically re-sorted.
    pub fn conjugate_by(&self, g: &Permutation) -> Subgroup {
        let mut elements: Vec<Permutation> =
            self.elements.iter().map(|e| e.conjugate_by(g)).collect();
        elements.sort_unstable();
        Subgroup {
            degree: self.degree,
            elements,
            gens: self.gens.iter().map(|e| e.conjugate_by(g)).collect(),
        }
    }

    /// Canonical identity: the sorted flat image arrays of all elements.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.order() * self.degree);
        for e in &self.elements {
            key.extend_from_slice(e.images());
        }
        key
    }

    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        self.gens.iter().all(|h| self.contains(&h.conjugate_by(g)))
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        ambient.gens.iter().all(|g| self.is_normalized_by(g))
    }

    /// True iff the subgroup is cyclic; cheap scan for a full-order element.
    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|e| e.order() == n)
    }

    /// Some generator of a cyclic subgroup.
    pub fn cyclic_generator(&self) -> Option<&Permutation> {
        let n = self.order() as u64;
        self.elements.iter().find(|e| e.order() == n)
    }

    /// Largest-order element `h` with `<h>` normal in this subgroup, if any
    /// non-trivial one exists. Used to realise coset spaces compactly.
    pub fn largest_normal_cyclic(&self) -> Option<Subgroup> {
        let mut best: Option<Subgroup> = None;
        let mut seen = std::collections::HashSet::new();
        for e in &self.elements {
            if e.is_identity() {
                continue;
            }
            let c = cyclic_subgroup(e);
            if !seen.insert(c.canonical_key()) {
                continue;
            }
            if c.is_normal_in(self) {
                let better = match &best {
                    Some(b) => c.order() > b.order(),
                    None => true,
                };
                if better {
                    best = Some(c);
                }
            }
        }
        best
    }

    /// Derived subgroup, generated by commutators of the generators over the
    /// element list.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comm_gens = Vec::new();
        for a in &self.gens {
            for b in &self.elements {
                // [a, b] = a^-1 b^-1 a b
                let c = a
                    .inverse()
                    .compose_unchecked(&b.inverse())
                    .compose_unchecked(a)
                    .compose_unchecked(b);
                if !c.is_identity() {
                    comm_gens.push(c);
                }
            }
        }
        comm_gens.sort_unstable();
        comm_gens.dedup();
        Subgroup::closure(self.degree, &comm_gens, self.order()).expect("derived fits in parent")
    }

    pub fn is_soluble(&self) -> bool {
        let mut current = self.clone();
        loop {
            if current.is_trivial() {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }
}

/// `<e>` as an explicit subgroup.
pub fn cyclic_subgroup(e: &Permutation) -> Subgroup {
    let mut elements = vec![Permutation::identity(e.degree())];
    let mut cur = e.clone();
    while !cur.is_identity() {
        elements.push(cur.clone());
        cur = cur.compose_unchecked(e);
    }
    elements.sort_unstable();
    Subgroup {
        degree: e.degree(),
        elements,
        gens: vec![e.clone()],
    }
}

/// Greedy small generating subset of a closed element list.
fn generating_subset(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let target = elements.len();
    if target == 1 {
        return vec![Permutation::identity(degree)];
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut have = 1usize;
    // pick high-order elements first so cyclic chunks come cheap
    let mut by_order: Vec<&Permutation> = elements.iter().filter(|e| !e.is_identity()).collect();
    by_order.sort_by_key(|e| std::cmp::Reverse(e.order()));
    for cand in by_order {
        if have == target {
            break;
        }
        let mut trial = gens.clone();
        trial.push(cand.clone());
        let size = Subgroup::closure(degree, &trial, target)
            .map(|s| s.order())
            .unwrap_or(usize::MAX);
        if size > have && size <= target {
            gens = trial;
            have = size;
        }
    }
    debug_assert_eq!(have, target);
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    #[test]
    fn s5_order_and_membership() {
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        assert_eq!(g.order_u64(), 120);
        assert!(g.contains(&cyc(5, &[&[1, 2]])));
        assert!(g.contains(&cyc(5, &[&[2, 5, 3]])));
        let product: u64 = g.transversal_sizes().iter().map(|&s| s as u64).product();
        assert_eq!(product, 120);
    }

    #[test]
    fn a4_rejects_odd_permutations() {
        let g = Group::from_generators(vec![cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[2, 3, 4]])]).unwrap();
        assert_eq!(g.order_u64(), 12);
        assert!(!g.contains(&cyc(4, &[&[1, 2]])));
    }

    #[test]
    fn order_is_generator_order_independent() {
        let gens = [
            cyc(7, &[&[1, 2, 3, 4, 5, 6, 7]]),
            cyc(7, &[&[1, 2]]),
            cyc(7, &[&[3, 5, 6]]),
        ];
        let forward = Group::from_generators(gens.to_vec()).unwrap();
        let mut shuffled = gens.to_vec();
        shuffled.reverse();
        let backward = Group::from_generators(shuffled).unwrap();
        assert_eq!(forward.order(), backward.order());
        assert_eq!(forward.order_u64(), 5040);
    }

    #[test]
    fn closure_and_canonical_keys() {
        let s3 = Subgroup::closure(3, &[cyc(3, &[&[1, 2, 3]]), cyc(3, &[&[1, 2]])], 100).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.is_soluble());
        let z3 = cyclic_subgroup(&cyc(3, &[&[1, 2, 3]]));
        assert!(s3.contains_subgroup(&z3));
        assert!(z3.is_normal_in(&s3));

        let conj = z3.conjugate_by(&cyc(3, &[&[1, 2]]));
        assert_eq!(conj.canonical_key(), z3.canonical_key());
    }

    #[test]
    fn conjugate_roundtrip() {
        let a = cyclic_subgroup(&cyc(4, &[&[1, 2]]));
        let g = cyc(4, &[&[2, 3]]);
        let moved = a.conjugate_by(&g);
        assert_eq!(moved.canonical_key(), cyclic_subgroup(&cyc(4, &[&[1, 3]])).canonical_key());
        assert_eq!(
            moved.conjugate_by(&g.inverse()).canonical_key(),
            a.canonical_key()
        );
    }

    #[test]
    fn a5_is_not_soluble() {
        let a5 = Subgroup::closure(5, &[cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])], 100)
            .unwrap();
        assert_eq!(a5.order(), 60);
        assert!(!a5.is_soluble());
        assert!(a5.largest_normal_cyclic().is_none());
    }

    #[test]
    fn normal_cyclic_extraction() {
        // S3 has a normal Z3
        let s3 = Subgroup::closure(3, &[cyc(3, &[&[1, 2, 3]]), cyc(3, &[&[1, 2]])], 100).unwrap();
        let k = s3.largest_normal_cyclic().unwrap();
        assert_eq!(k.order(), 3);
    }
}

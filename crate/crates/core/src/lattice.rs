//! Subgroup enumeration of small groups up to conjugacy, and the incidence
//! counts between classes.
//!
//! Enumeration is by cyclic extension: starting from the trivial subgroup,
//! each subgroup is extended by prime-power-order elements of its normalizer
//! (of the whole ambient group when it is insoluble), layer by layer, with
//! canonical-key deduplication. Stabiliser groups in scope are tiny, so the
//! brute layers are cheap.

use crate::error::SaxlError;
use crate::group::Subgroup;
use crate::numth::is_prime_power;
use std::collections::HashMap;

pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    /// |N_H(representative)|
    pub normalizer_order: u64,
}

impl SubgroupClass {
    pub fn class_size(&self) -> usize {
        self.members.len()
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

pub struct SubgroupClassTable {
    pub ambient_order: u64,
    pub classes: Vec<SubgroupClass>,
    key_to_class: HashMap<Vec<u32>, usize>,
}

impl SubgroupClassTable {
    /// Count of conjugates of class `b` that contain `a`.
    pub fn eta(&self, a: &Subgroup, b: usize) -> u64 {
        let class = &self.classes[b];
        if class.order() % a.order() != 0 {
            return 0;
        }
        class
            .members
            .iter()
            .filter(|d| d.contains_subgroup(a))
            .count() as u64
    }

    /// Index of the class a given subgroup belongs to.
    pub fn class_of(&self, s: &Subgroup) -> Option<usize> {
        self.key_to_class.get(&s.canonical_key()).copied()
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }
}

/// Every subgroup of `h` grouped into conjugacy classes, representatives
/// pairwise non-conjugate, sorted by (order, canonical key).
pub fn all_subgroups(h: &Subgroup, cap: usize) -> Result<SubgroupClassTable, SaxlError> {
    let n = h.order();
    if n > cap {
        return Err(SaxlError::CapExceeded {
            cap,
            context: format!("subgroup enumeration of a group of order {n}"),
        });
    }
    let degree = h.degree();
    let soluble = h.is_soluble();

    let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
    let trivial = Subgroup::trivial(degree);
    found.insert(trivial.canonical_key(), trivial.clone());
    let mut worklist = vec![trivial];

    while let Some(s) = worklist.pop() {
        if s.order() == n {
            continue;
        }
        // candidates proven sufficient: prime-power-order elements of N_H(S)
        // when every subgroup is soluble, of all of H otherwise
        let candidates: Vec<&crate::perm::Permutation> = h
            .elements()
            .iter()
            .filter(|e| !e.is_identity() && !s.contains(e))
            .filter(|e| is_prime_power(e.order()))
            .filter(|e| !soluble || s.is_normalized_by(e))
            .collect();
        for e in candidates {
            let mut gens = s.gens().to_vec();
            gens.push((*e).clone());
            let ext = Subgroup::closure(degree, &gens, n)?;
            let key = ext.canonical_key();
            if !found.contains_key(&key) {
                found.insert(key, ext.clone());
                worklist.push(ext);
            }
        }
    }

    // fuse into H-conjugacy classes
    let mut keys: Vec<Vec<u32>> = found.keys().cloned().collect();
    keys.sort_unstable();
    let mut assigned: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for key in &keys {
        if assigned.contains_key(key) {
            continue;
        }
        let class_idx = classes.len();
        let mut members: Vec<Subgroup> = Vec::new();
        let mut frontier = vec![found[key].clone()];
        assigned.insert(key.clone(), class_idx);
        while let Some(cur) = frontier.pop() {
            for g in h.gens() {
                let conj = cur.conjugate_by(g);
                let ckey = conj.canonical_key();
                if !assigned.contains_key(&ckey) {
                    debug_assert!(found.contains_key(&ckey), "class member drifted out of H");
                    assigned.insert(ckey, class_idx);
                    frontier.push(conj.clone());
                }
            }
            members.push(cur);
        }
        members.sort_by_cached_key(|m| m.canonical_key());
        let class_size = members.len() as u64;
        assert_eq!(
            n as u64 % class_size,
            0,
            "class size must divide the ambient order"
        );
        classes.push(SubgroupClass {
            representative: members[0].clone(),
            members,
            normalizer_order: n as u64 / class_size,
        });
    }
    classes.sort_by_cached_key(|c| (c.order(), c.representative.canonical_key()));
    let mut key_to_class = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for m in &c.members {
            key_to_class.insert(m.canonical_key(), i);
        }
    }
    Ok(SubgroupClassTable {
        ambient_order: n as u64,
        classes,
        key_to_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    #[test]
    fn cyclic_z6_has_divisor_lattice() {
        let z6 = Subgroup::closure(6, &[cyc(6, &[&[1, 2, 3, 4, 5, 6]])], 100).unwrap();
        let table = all_subgroups(&z6, 10_000).unwrap();
        let orders: Vec<usize> = table.classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert!(table.classes.iter().all(|c| c.class_size() == 1));
    }

    #[test]
    fn s3_classes() {
        let s3 = Subgroup::closure(3, &[cyc(3, &[&[1, 2, 3]]), cyc(3, &[&[1, 2]])], 100).unwrap();
        let table = all_subgroups(&s3, 10_000).unwrap();
        let shape: Vec<(usize, usize)> = table
            .classes
            .iter()
            .map(|c| (c.order(), c.class_size()))
            .collect();
        assert_eq!(shape, vec![(1, 1), (2, 3), (3, 1), (6, 1)]);
        assert_eq!(table.total_subgroups(), 6);
        // class size times normalizer order is the ambient order
        for c in &table.classes {
            assert_eq!(c.class_size() as u64 * c.normalizer_order, 6);
        }
    }

    #[test]
    fn a4_subgroups_found_without_solubility_shortcut() {
        let a4 = Subgroup::closure(4, &[cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[2, 3, 4]])], 100)
            .unwrap();
        let table = all_subgroups(&a4, 10_000).unwrap();
        // A4: 1, 3x Z2, V4, 4x Z3, A4 -> 10 subgroups, 5 classes
        assert_eq!(table.total_subgroups(), 10);
        assert_eq!(table.classes.len(), 5);
    }

    #[test]
    fn a5_insoluble_fallback() {
        let a5 =
            Subgroup::closure(5, &[cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])], 100)
                .unwrap();
        let table = all_subgroups(&a5, 10_000).unwrap();
        // A5 has 59 subgroups in 9 conjugacy classes
        assert_eq!(table.total_subgroups(), 59);
        assert_eq!(table.classes.len(), 9);
    }

    #[test]
    fn cyclic_class_count_matches_element_scan() {
        let s4 = Subgroup::closure(4, &[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])], 100)
            .unwrap();
        let table = all_subgroups(&s4, 10_000).unwrap();
        // independent count of cyclic subgroups: each <e> counted once
        let mut seen = std::collections::HashSet::new();
        for e in s4.elements() {
            seen.insert(crate::group::cyclic_subgroup(e).canonical_key());
        }
        let cyclic_in_table: usize = table
            .classes
            .iter()
            .filter(|c| c.representative.is_cyclic())
            .map(|c| c.class_size())
            .sum();
        assert_eq!(cyclic_in_table, seen.len());
    }

    #[test]
    fn eta_basics_on_s3() {
        let s3 = Subgroup::closure(3, &[cyc(3, &[&[1, 2, 3]]), cyc(3, &[&[1, 2]])], 100).unwrap();
        let table = all_subgroups(&s3, 10_000).unwrap();
        let trivial = Subgroup::trivial(3);
        for (i, c) in table.classes.iter().enumerate() {
            // every conjugate contains the trivial subgroup
            assert_eq!(table.eta(&trivial, i), c.class_size() as u64);
            // only the whole group contains itself among its conjugates
            assert_eq!(table.eta(&s3, i), if c.order() == 6 { 1 } else { 0 });
        }
        let z2 = crate::group::cyclic_subgroup(&cyc(3, &[&[1, 2]]));
        let z3_idx = table
            .classes
            .iter()
            .position(|c| c.order() == 3)
            .unwrap();
        assert_eq!(table.eta(&z2, z3_idx), 0); // 2 does not divide 3
    }
}

//! Finite G-sets with evaluable actions.
//!
//! A space is a materialized orbit: points, k-subsets of points, or
//! conjugates of a subgroup. Subgroup labels are canonical byte keys, either
//! the minimal generator of a cyclic subgroup or the full sorted element
//! list, so that equal subgroups always collide.
//!
//! All closures are breadth-first and order-normalized before return, so
//! results do not depend on how frontier work was scheduled.

use crate::error::SaxlError;
use crate::group::{Group, Subgroup};
use crate::par;
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_integer::Integer;
use std::collections::{HashMap, VecDeque};

/// Canonical label key. Point labels are a single entry, subset labels the
/// sorted points, subgroup labels flattened image arrays.
pub type Key = Box<[u16]>;

/// How conjugates of a subgroup are canonicalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjMode {
    /// Cyclic subgroup of the given order, keyed by its lexicographically
    /// minimal generator. Two distinct cyclic subgroups never share a
    /// generator, so the key is faithful.
    CyclicMinGen { order: u64 },
    /// Keyed by the sorted list of all element image arrays.
    FullElements { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceKind {
    Points,
    KSubsets { k: usize },
    SubgroupConjugates { mode: ConjMode },
}

/// A labeled transitive G-set with a distinguished base label.
pub struct ActionSpace {
    pub kind: SpaceKind,
    degree: usize,
    labels: Vec<Key>,
    index: HashMap<Key, u32>,
    base: u32,
}

fn to_u16(x: u32) -> u16 {
    debug_assert!(x <= u16::MAX as u32);
    x as u16
}

/// Composes two image arrays stored as u16: `out[i] = b[a[i]]`.
fn compose_u16(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().map(|&i| b[i as usize]).collect()
}

/// Conjugate `c^g` computed without inverting `g`: `res[g(i)] = g(c(i))`.
fn conjugate_u16(c: &[u16], g: &Permutation) -> Vec<u16> {
    let mut res = vec![0u16; c.len()];
    for (i, &ci) in c.iter().enumerate() {
        res[g.image(i as u32) as usize] = to_u16(g.image(ci as u32));
    }
    res
}

/// Minimal generator key of `<c>` where `c` has order `m`: the smallest image
/// array among the powers `c^k` with `gcd(k, m) = 1`.
fn min_generator_key(c: Vec<u16>, m: u64) -> Key {
    debug_assert!(m >= 2);
    let mut best = c.clone();
    let mut cur = c.clone();
    for k in 2..m {
        cur = compose_u16(&cur, &c);
        if k.gcd(&m) == 1 && cur < best {
            best = cur.clone();
        }
    }
    best.into_boxed_slice()
}

fn sort_blocks(flat: Vec<Vec<u16>>) -> Key {
    let mut blocks = flat;
    blocks.sort_unstable();
    let mut out = Vec::with_capacity(blocks.len() * blocks.first().map_or(0, |b| b.len()));
    for b in blocks {
        out.extend_from_slice(&b);
    }
    out.into_boxed_slice()
}

/// Applies `g` to a label key.
pub fn act_key(kind: &SpaceKind, degree: usize, key: &[u16], g: &Permutation) -> Key {
    match kind {
        SpaceKind::Points => Box::new([to_u16(g.image(key[0] as u32))]),
        SpaceKind::KSubsets { .. } => {
            let mut pts: Vec<u16> = key.iter().map(|&p| to_u16(g.image(p as u32))).collect();
            pts.sort_unstable();
            pts.into_boxed_slice()
        }
        SpaceKind::SubgroupConjugates { mode } => match mode {
            ConjMode::CyclicMinGen { order } => min_generator_key(conjugate_u16(key, g), *order),
            ConjMode::FullElements { size } => {
                let blocks: Vec<Vec<u16>> = key
                    .chunks_exact(degree)
                    .map(|c| conjugate_u16(c, g))
                    .collect();
                debug_assert_eq!(blocks.len(), *size);
                sort_blocks(blocks)
            }
        },
    }
}

/// Canonicalization mode for a subgroup: cyclic-min-generator when possible,
/// full element list otherwise.
pub fn conj_mode_for(s: &Subgroup) -> ConjMode {
    if s.order() >= 2 && s.is_cyclic() {
        ConjMode::CyclicMinGen {
            order: s.order() as u64,
        }
    } else {
        ConjMode::FullElements { size: s.order() }
    }
}

/// Canonical key of a subgroup under the given mode.
pub fn subgroup_key(s: &Subgroup, mode: &ConjMode) -> Key {
    match mode {
        ConjMode::CyclicMinGen { order } => {
            let c = s
                .cyclic_generator()
                .expect("cyclic mode requires a cyclic subgroup");
            let imgs: Vec<u16> = c.images().iter().map(|&x| to_u16(x)).collect();
            min_generator_key(imgs, *order)
        }
        ConjMode::FullElements { .. } => {
            let blocks: Vec<Vec<u16>> = s
                .elements()
                .iter()
                .map(|e| e.images().iter().map(|&x| to_u16(x)).collect())
                .collect();
            sort_blocks(blocks)
        }
    }
}

/// Rebuilds the subgroup named by a key.
pub fn subgroup_from_key(degree: usize, key: &[u16], mode: &ConjMode, cap: usize) -> Subgroup {
    match mode {
        ConjMode::CyclicMinGen { .. } => {
            let images: Vec<u32> = key.iter().map(|&x| x as u32).collect();
            let gen = Permutation::from_images(images).expect("key stores a permutation");
            crate::group::cyclic_subgroup(&gen)
        }
        ConjMode::FullElements { .. } => {
            let elements: Vec<Permutation> = key
                .chunks_exact(degree)
                .map(|c| {
                    Permutation::from_images(c.iter().map(|&x| x as u32).collect())
                        .expect("key stores permutations")
                })
                .collect();
            let _ = cap;
            Subgroup::from_elements(degree, elements)
        }
    }
}

impl ActionSpace {
    /// Materializes the orbit of `seed` under `gens` as a sorted label list.
    pub fn materialize(
        kind: SpaceKind,
        degree: usize,
        seed: Key,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<ActionSpace, SaxlError> {
        if degree > u16::MAX as usize {
            return Err(SaxlError::BadParameter(format!(
                "degree {degree} exceeds the label encoding limit"
            )));
        }
        let mut index: HashMap<Key, u32> = HashMap::new();
        let mut keys: Vec<Key> = Vec::new();
        index.insert(seed.clone(), 0);
        keys.push(seed.clone());
        let mut layer: Vec<u32> = vec![0];
        while !layer.is_empty() {
            // expand a BFS layer; the merge below is sequential so the result
            // is independent of worker scheduling
            let images: Vec<Vec<Key>> = par::par_map(&layer, |&idx| {
                gens.iter()
                    .map(|g| act_key(&kind, degree, &keys[idx as usize], g))
                    .collect()
            });
            let mut next = Vec::new();
            for keyset in images {
                for key in keyset {
                    if !index.contains_key(&key) {
                        let id = keys.len() as u32;
                        if keys.len() >= cap {
                            return Err(SaxlError::CapExceeded {
                                cap,
                                context: "orbit materialization".into(),
                            });
                        }
                        index.insert(key.clone(), id);
                        keys.push(key);
                        next.push(id);
                    }
                }
            }
            layer = next;
        }
        keys.sort_unstable();
        let mut index = HashMap::with_capacity(keys.len());
        for (i, k) in keys.iter().enumerate() {
            index.insert(k.clone(), i as u32);
        }
        let base = index[&seed];
        Ok(ActionSpace {
            kind,
            degree,
            labels: keys,
            index,
            base,
        })
    }

    /// Space of all points moved transitively by the group (the orbit of 0).
    pub fn points(degree: usize, gens: &[Permutation], cap: usize) -> Result<ActionSpace, SaxlError> {
        ActionSpace::materialize(SpaceKind::Points, degree, Box::new([0]), gens, cap)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_index(&self) -> u32 {
        self.base
    }

    pub fn labels(&self) -> &[Key] {
        &self.labels
    }

    pub fn label(&self, idx: u32) -> &Key {
        &self.labels[idx as usize]
    }

    pub fn index_of(&self, key: &Key) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// Applies `g` to the label at `idx`.
    pub fn act(&self, idx: u32, g: &Permutation) -> u32 {
        let key = act_key(&self.kind, self.degree, &self.labels[idx as usize], g);
        *self
            .index
            .get(&key)
            .expect("action left the materialized orbit")
    }

    /// Full permutation table of `g` on label indices.
    pub fn action_table(&self, g: &Permutation) -> Vec<u32> {
        let idxs: Vec<u32> = (0..self.labels.len() as u32).collect();
        par::par_map(&idxs, |&i| self.act(i, g))
    }

    /// Orbit of a label under a generator list, in breadth-first order.
    pub fn orbit_indices(&self, gens: &[Permutation], seed: u32) -> Vec<u32> {
        let mut seen = vec![false; self.labels.len()];
        let mut order = vec![seed];
        seen[seed as usize] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for g in gens {
                let y = self.act(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    /// True iff the orbit of the base label is the whole space.
    pub fn is_transitive(&self, gens: &[Permutation]) -> bool {
        self.orbit_indices(gens, self.base).len() == self.size()
    }
}

/// Breadth-first orbit of a key under an arbitrary action closure, with a
/// Schreier vector for witness reconstruction.
pub struct KeyOrbit {
    pub keys: Vec<Key>,
    pub index: HashMap<Key, u32>,
    /// (parent index, generator index); the root stores (0, u16::MAX)
    parent: Vec<(u32, u16)>,
}

impl KeyOrbit {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, key: &Key) -> bool {
        self.index.contains_key(key)
    }

    /// Word mapping the seed to the element at `idx`, composed from `gens`.
    pub fn witness(&self, gens: &[Permutation], idx: u32) -> Permutation {
        let degree = gens[0].degree();
        let mut path = Vec::new();
        let mut cur = idx;
        while self.parent[cur as usize].1 != u16::MAX {
            let (p, gi) = self.parent[cur as usize];
            path.push(gi);
            cur = p;
        }
        path.reverse();
        let mut u = Permutation::identity(degree);
        for gi in path {
            u = u.compose_unchecked(&gens[gi as usize]);
        }
        u
    }
}

/// Generic bounded BFS closure with Schreier vector.
pub fn key_orbit<F>(seed: Key, num_gens: usize, cap: usize, act: F) -> Result<KeyOrbit, SaxlError>
where
    F: Fn(&Key, usize) -> Key,
{
    let mut index = HashMap::new();
    let mut keys = vec![seed.clone()];
    let mut parent = vec![(0u32, u16::MAX)];
    index.insert(seed, 0u32);
    let mut queue: VecDeque<u32> = VecDeque::new();
    queue.push_back(0);
    while let Some(x) = queue.pop_front() {
        for gi in 0..num_gens {
            let key = act(&keys[x as usize], gi);
            if !index.contains_key(&key) {
                if keys.len() >= cap {
                    return Err(SaxlError::CapExceeded {
                        cap,
                        context: "key orbit".into(),
                    });
                }
                let id = keys.len() as u32;
                index.insert(key.clone(), id);
                keys.push(key);
                parent.push((x, gi as u16));
                queue.push_back(id);
            }
        }
    }
    Ok(KeyOrbit {
        keys,
        index,
        parent,
    })
}

/// Conjugation orbit of a subgroup under the generators of `G`.
pub fn conjugation_orbit(
    g_gens: &[Permutation],
    a: &Subgroup,
    cap: usize,
) -> Result<(ConjMode, KeyOrbit), SaxlError> {
    let mode = conj_mode_for(a);
    let degree = a.degree();
    let kind = SpaceKind::SubgroupConjugates { mode: mode.clone() };
    let seed = subgroup_key(a, &mode);
    let orbit = key_orbit(seed, g_gens.len(), cap, |key, gi| {
        act_key(&kind, degree, key, &g_gens[gi])
    })?;
    Ok((mode, orbit))
}

/// `|N_G(A)| = |G| / |A^G|`, by walking the conjugation orbit of `A`.
pub fn normalizer_order(g: &Group, a: &Subgroup, cap: usize) -> Result<BigUint, SaxlError> {
    let (_, orbit) = conjugation_orbit(g.generators(), a, cap)?;
    let (q, r) = g.order().div_rem(&BigUint::from(orbit.len() as u64));
    if r != BigUint::from(0u32) {
        return Err(SaxlError::Inconsistent(format!(
            "conjugation orbit size {} does not divide |G|",
            orbit.len()
        )));
    }
    Ok(q)
}

/// Searches the conjugation orbit of `A` for `B`, returning a witness `g`
/// with `A^g = B` when the subgroups are conjugate in `G`.
pub fn conjugacy_witness(
    g: &Group,
    a: &Subgroup,
    b: &Subgroup,
    cap: usize,
) -> Result<Option<Permutation>, SaxlError> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let mode = conj_mode_for(a);
    if mode != conj_mode_for(b) {
        return Ok(None);
    }
    let target = subgroup_key(b, &mode);
    let (_, orbit) = conjugation_orbit(g.generators(), a, cap)?;
    match orbit.index.get(&target) {
        Some(&idx) => {
            let w = orbit.witness(g.generators(), idx);
            debug_assert_eq!(
                subgroup_key(&a.conjugate_by(&w), &mode),
                target,
                "witness must conjugate A onto B"
            );
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

/// Stabiliser of a label as an explicit subgroup, via Schreier generators.
///
/// The stabiliser order must divide into `cap` elements; the orbit of the
/// label is bounded by the space size.
pub fn stabilizer_of_label(
    space: &ActionSpace,
    g: &Group,
    label: u32,
    cap: usize,
) -> Result<Subgroup, SaxlError> {
    let gens = g.generators();
    let kind = &space.kind;
    let degree = space.degree();
    let seed = space.label(label).clone();
    let orbit = key_orbit(seed, gens.len(), space.size() + 1, |key, gi| {
        act_key(kind, degree, key, &gens[gi])
    })?;
    let orbit_len = BigUint::from(orbit.len() as u64);
    let (target, rem) = g.order().div_rem(&orbit_len);
    if rem != BigUint::from(0u32) {
        return Err(SaxlError::Inconsistent(
            "orbit size does not divide |G|".into(),
        ));
    }
    let target = u64::try_from(&target).map_err(|_| SaxlError::CapExceeded {
        cap,
        context: "stabiliser enumeration".into(),
    })?;
    if target as usize > cap {
        return Err(SaxlError::CapExceeded {
            cap,
            context: "stabiliser enumeration".into(),
        });
    }

    let mut stab_gens: Vec<Permutation> = Vec::new();
    let mut current = Subgroup::trivial(degree);
    if target > 1 {
        'outer: for x in 0..orbit.len() as u32 {
            let ux = orbit.witness(gens, x);
            for (gi, h) in gens.iter().enumerate() {
                let y_key = act_key(kind, degree, &orbit.keys[x as usize], h);
                let y = orbit.index[&y_key];
                let uy = orbit.witness(gens, y);
                let s = ux.compose_unchecked(h).compose_unchecked(&uy.inverse());
                if s.is_identity() || current.contains(&s) {
                    let _ = gi;
                    continue;
                }
                stab_gens.push(s);
                current = Subgroup::closure(degree, &stab_gens, target as usize)?;
                if current.order() as u64 == target {
                    break 'outer;
                }
            }
        }
    }
    if current.order() as u64 != target {
        return Err(SaxlError::Inconsistent(format!(
            "stabiliser closure reached {} of expected {}",
            current.order(),
            target
        )));
    }
    Ok(current)
}

/// Minimal block system containing `{alpha, beta}`; returns the size of the
/// block containing `alpha` (Atkinson's refinement over a union-find).
fn minimal_block_size(tables: &[Vec<u32>], n: usize, alpha: u32, beta: u32) -> usize {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut queue: VecDeque<(u32, u32)> = VecDeque::new();
    let (ra, rb) = (find(&mut parent, alpha), find(&mut parent, beta));
    parent[rb as usize] = ra;
    queue.push_back((alpha, beta));
    while let Some((a, b)) = queue.pop_front() {
        for t in tables {
            let (x, y) = (t[a as usize], t[b as usize]);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[ry as usize] = rx;
                queue.push_back((x, y));
            }
        }
    }
    let root = find(&mut parent, alpha);
    (0..n as u32).filter(|&x| find(&mut parent, x) == root).count()
}

/// Primitivity test over explicit representatives, one per suborbit of the
/// base-label stabiliser. Requires transitivity.
pub fn is_primitive_with_reps(
    space: &ActionSpace,
    g: &Group,
    reps: &[u32],
) -> Result<bool, SaxlError> {
    if !space.is_transitive(g.generators()) {
        return Err(SaxlError::Intransitive);
    }
    let n = space.size();
    if n <= 2 {
        return Ok(true);
    }
    let tables: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|p| space.action_table(p))
        .collect();
    let alpha = space.base_index();
    let candidates: Vec<u32> = reps.iter().copied().filter(|&b| b != alpha).collect();
    let blocks = par::par_map(&candidates, |&beta| {
        minimal_block_size(&tables, n, alpha, beta)
    });
    Ok(blocks.into_iter().all(|s| s == n))
}

/// Primitivity by checking the minimal block through every pair
/// `{base, beta}`. Quadratic in the space size; intended for small spaces.
pub fn is_primitive(space: &ActionSpace, g: &Group) -> Result<bool, SaxlError> {
    let reps: Vec<u32> = (0..space.size() as u32).collect();
    is_primitive_with_reps(space, g, &reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    #[test]
    fn point_orbit_of_a_cycle() {
        let gens = vec![cyc(5, &[&[1, 2, 3, 4, 5]])];
        let space = ActionSpace::points(5, &gens, 1_000).unwrap();
        assert_eq!(space.size(), 5);
        let orbit = space.orbit_indices(&gens, space.base_index());
        assert_eq!(orbit.len(), 5);
    }

    #[test]
    fn two_subsets_under_s4() {
        let gens = vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])];
        let seed: Key = Box::new([0, 1]);
        let space =
            ActionSpace::materialize(SpaceKind::KSubsets { k: 2 }, 4, seed, &gens, 1_000).unwrap();
        assert_eq!(space.size(), 6);
    }

    #[test]
    fn stabilizer_in_s5_has_order_24() {
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        let space = ActionSpace::points(5, g.generators(), 1_000).unwrap();
        let last = space
            .index_of(&(Box::new([4u16]) as Key))
            .expect("point 5 present");
        let stab = stabilizer_of_label(&space, &g, last, 10_000).unwrap();
        assert_eq!(stab.order(), 24);
        assert!(stab.elements().iter().all(|e| e.image(4) == 4));
    }

    #[test]
    fn normalizer_orbit_identity() {
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        let a = crate::group::cyclic_subgroup(&cyc(5, &[&[1, 2, 3, 4, 5]]));
        let n = normalizer_order(&g, &a, 1_000_000).unwrap();
        // N_S5(<5-cycle>) = AGL_1(5) of order 20
        assert_eq!(u64::try_from(&n).unwrap(), 20);
        let (_, orbit) = conjugation_orbit(g.generators(), &a, 1_000_000).unwrap();
        assert_eq!(orbit.len() as u64 * 20, 120);
    }

    #[test]
    fn conjugacy_witness_examples() {
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        let a = crate::group::cyclic_subgroup(&cyc(5, &[&[1, 2]]));
        let b = crate::group::cyclic_subgroup(&cyc(5, &[&[3, 4]]));
        let w = conjugacy_witness(&g, &a, &b, 1_000_000).unwrap().unwrap();
        let mode = conj_mode_for(&a);
        assert_eq!(subgroup_key(&a.conjugate_by(&w), &mode), subgroup_key(&b, &mode));
        // self-conjugacy yields the identity witness
        let w0 = conjugacy_witness(&g, &a, &a, 1_000_000).unwrap().unwrap();
        assert!(w0.is_identity());
        // order mismatch: no witness
        let c = crate::group::cyclic_subgroup(&cyc(5, &[&[1, 2, 3]]));
        assert!(conjugacy_witness(&g, &a, &c, 1_000_000).unwrap().is_none());
    }

    #[test]
    fn primitivity_of_s5_and_blocks_of_d4() {
        let s5 = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        let space = ActionSpace::points(5, s5.generators(), 1_000).unwrap();
        assert!(is_primitive(&space, &s5).unwrap());

        // D4 = <(1 2 3 4), (1 3)> on 4 points is transitive but imprimitive
        let d4 = Group::from_generators(vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])])
            .unwrap();
        let space4 = ActionSpace::points(4, d4.generators(), 1_000).unwrap();
        assert!(!is_primitive(&space4, &d4).unwrap());
    }
}

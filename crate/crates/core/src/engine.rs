//! Subdegrees and valencies of a transitive action, two ways.
//!
//! The brute-force path partitions the space into stabiliser orbits and reads
//! the multiplicities off directly. The inversion engine reconstructs the
//! same data from arc-stabiliser classes: it counts, for each class `A`, the
//! group elements `g` with `H meet H^g` containing (`Delta`) or equal to
//! (`delta`) a conjugate of `A`, relates the two counts through a triangular
//! incidence matrix over the class poset, and solves exactly. Agreement of
//! the two paths is the strongest internal consistency check the tool has.

use crate::error::SaxlError;
use crate::group::{Group, Subgroup};
use crate::lattice::SubgroupClassTable;
use crate::par;
use crate::perm::Permutation;
use crate::poset::IncidenceMatrix;
use crate::space::{conjugation_orbit, subgroup_key, ActionSpace, ConjMode, Key};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    DeltaEngine,
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::BruteForce => "bruteforce",
            Method::DeltaEngine => "delta-engine",
            Method::ClosedForm => "closed-form",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdegreeEntry {
    pub length: BigUint,
    pub multiplicity: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks {
    pub sum_rule: bool,
    pub valency_divisibility: bool,
    pub cross_method_agreement: Option<bool>,
}

/// The output contract: subdegrees with multiplicities, the valency, the
/// method that produced them and the consistency flags.
#[derive(Debug, Clone)]
pub struct SubdegreeReport {
    pub group_name: String,
    pub order_g: BigUint,
    pub order_h: BigUint,
    pub index: BigUint,
    pub entries: Vec<SubdegreeEntry>,
    pub valency: BigUint,
    pub method: Method,
    pub checks: Checks,
}

impl SubdegreeReport {
    pub fn multiplicity_of(&self, length: &BigUint) -> BigUint {
        self.entries
            .iter()
            .find(|e| &e.length == length)
            .map(|e| e.multiplicity.clone())
            .unwrap_or_else(BigUint::zero)
    }

    pub fn multiplicity_of_u64(&self, length: u64) -> BigUint {
        self.multiplicity_of(&BigUint::from(length))
    }

    /// Entry-wise equality of the subdegree data (name/method ignored).
    pub fn same_subdegrees(&self, other: &SubdegreeReport) -> bool {
        self.entries == other.entries && self.valency == other.valency
    }
}

fn compute_checks(entries: &[SubdegreeEntry], index: &BigUint, valency: &BigUint, order_h: &BigUint) -> Checks {
    let total: BigUint = entries
        .iter()
        .map(|e| &e.length * &e.multiplicity)
        .sum();
    let sum_rule = &total == index;
    let valency_divisibility = valency.is_zero() || (valency % order_h).is_zero();
    Checks {
        sum_rule,
        valency_divisibility,
        cross_method_agreement: None,
    }
}

fn entries_from_map(map: &BTreeMap<u64, BigUint>) -> Vec<SubdegreeEntry> {
    map.iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(&n, m)| SubdegreeEntry {
            length: BigUint::from(n),
            multiplicity: m.clone(),
        })
        .collect()
}

/// Partition of a space into stabiliser orbits.
pub struct SuborbitData {
    /// label index -> suborbit id
    pub orbit_id: Vec<u32>,
    /// suborbit id -> smallest label index in the suborbit
    pub reps: Vec<u32>,
    /// suborbit id -> orbit length
    pub lengths: Vec<u64>,
}

impl SuborbitData {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Splits the space into orbits of `h`, scanning labels in ascending order so
/// ids and representatives are deterministic.
pub fn suborbits(space: &ActionSpace, h: &Subgroup) -> SuborbitData {
    let tables: Vec<Vec<u32>> = h
        .gens()
        .iter()
        .map(|g| space.action_table(g))
        .collect();
    let n = space.size();
    let mut orbit_id = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut lengths = Vec::new();
    for start in 0..n as u32 {
        if orbit_id[start as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        let mut stack = vec![start];
        orbit_id[start as usize] = id;
        let mut len = 0u64;
        while let Some(x) = stack.pop() {
            len += 1;
            for t in &tables {
                let y = t[x as usize];
                if orbit_id[y as usize] == u32::MAX {
                    orbit_id[y as usize] = id;
                    stack.push(y);
                }
            }
        }
        reps.push(start);
        lengths.push(len);
    }
    SuborbitData {
        orbit_id,
        reps,
        lengths,
    }
}

fn check_base_stabiliser(
    space: &ActionSpace,
    g: &Group,
    h: &Subgroup,
) -> Result<(), SaxlError> {
    let base = space.base_index();
    for p in h.gens() {
        if space.act(base, p) != base {
            return Err(SaxlError::StabiliserMismatch(
                "a generator of H moves the base label".into(),
            ));
        }
    }
    let expected = BigUint::from(h.order() as u64) * BigUint::from(space.size() as u64);
    if &expected != g.order() {
        return Err(SaxlError::StabiliserMismatch(format!(
            "|H| * |Omega| = {expected} but |G| = {}",
            g.order()
        )));
    }
    Ok(())
}

/// Brute-force path: suborbit lengths with multiplicities, valency from the
/// count of regular suborbits.
pub fn suborbits_bruteforce(
    space: &ActionSpace,
    g: &Group,
    h: &Subgroup,
    name: &str,
) -> Result<(SubdegreeReport, SuborbitData), SaxlError> {
    check_base_stabiliser(space, g, h)?;
    let data = suborbits(space, h);
    let mut mult: BTreeMap<u64, BigUint> = BTreeMap::new();
    for &len in &data.lengths {
        *mult.entry(len).or_insert_with(BigUint::zero) += 1u32;
    }
    let order_h = BigUint::from(h.order() as u64);
    let regular = mult
        .get(&(h.order() as u64))
        .cloned()
        .unwrap_or_else(BigUint::zero);
    let valency = &order_h * &regular;
    let index = BigUint::from(space.size() as u64);
    let entries = entries_from_map(&mult);
    let checks = compute_checks(&entries, &index, &valency, &order_h);
    let report = SubdegreeReport {
        group_name: name.to_string(),
        order_g: g.order().clone(),
        order_h,
        index,
        entries,
        valency,
        method: Method::BruteForce,
        checks,
    };
    Ok((report, data))
}

/// One class of arc stabilisers `H meet H^g`, up to conjugacy in `H`.
#[derive(Clone)]
pub struct ArcStabiliserClass {
    pub representative: Subgroup,
    pub h_class_size: u64,
    pub h_normalizer_order: u64,
    /// size of the fused class (1 until fusion has run)
    pub tilde_class_size: u64,
    /// how many suborbits realise a stabiliser in this class
    pub suborbit_count: u64,
    pub delta_size: Option<BigUint>,
    pub big_delta_size: Option<BigUint>,
}

impl ArcStabiliserClass {
    pub fn order(&self) -> u64 {
        self.representative.order() as u64
    }
}

pub struct ArcClasses {
    /// sorted by (order, canonical key)
    pub classes: Vec<ArcStabiliserClass>,
    /// suborbit id -> class index
    pub rep_class: Vec<usize>,
}

/// Explicit arc stabilisers, one per suborbit, deduplicated up to conjugacy
/// in `H`. The trivial subgroup and `H` itself are always present.
pub fn arc_stabilisers(
    space: &ActionSpace,
    h: &Subgroup,
    data: &SuborbitData,
) -> Result<ArcClasses, SaxlError> {
    let stabs: Vec<Subgroup> = par::par_map(&data.reps, |&rep| {
        let elements: Vec<Permutation> = h
            .elements()
            .iter()
            .filter(|e| space.act(rep, e) == rep)
            .cloned()
            .collect();
        Subgroup::from_elements(space.degree(), elements)
    });
    for (i, s) in stabs.iter().enumerate() {
        if s.order() as u64 * data.lengths[i] != h.order() as u64 {
            return Err(SaxlError::Inconsistent(
                "orbit-stabiliser identity failed on a suborbit".into(),
            ));
        }
    }

    // group identical stabilisers first, then fuse into H-classes
    let mut by_key: HashMap<Vec<u32>, (Subgroup, u64)> = HashMap::new();
    for s in &stabs {
        let e = by_key
            .entry(s.canonical_key())
            .or_insert_with(|| (s.clone(), 0));
        e.1 += 1;
    }
    let mut unique_keys: Vec<Vec<u32>> = by_key.keys().cloned().collect();
    unique_keys.sort_unstable();

    struct RawClass {
        members_min: Vec<u32>,
        class_size: u64,
        rep: Subgroup,
        suborbit_count: u64,
    }
    let mut key_to_class: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut raw: Vec<RawClass> = Vec::new();
    for key in &unique_keys {
        if key_to_class.contains_key(key) {
            continue;
        }
        let seed = by_key[key].0.clone();
        // full H-class of the subgroup
        let mut class_keys: HashSet<Vec<u32>> = HashSet::new();
        let mut frontier = vec![seed.clone()];
        let mut min_member = seed.clone();
        class_keys.insert(seed.canonical_key());
        while let Some(cur) = frontier.pop() {
            for gperm in h.gens() {
                let conj = cur.conjugate_by(gperm);
                let ck = conj.canonical_key();
                if !class_keys.contains(&ck) {
                    if ck < min_member.canonical_key() {
                        min_member = conj.clone();
                    }
                    class_keys.insert(ck);
                    frontier.push(conj);
                }
            }
        }
        let id = raw.len();
        let mut suborbit_count = 0;
        for ck in &class_keys {
            key_to_class.insert(ck.clone(), id);
            if let Some((_, cnt)) = by_key.get(ck) {
                suborbit_count += cnt;
            }
        }
        raw.push(RawClass {
            members_min: min_member.canonical_key(),
            class_size: class_keys.len() as u64,
            rep: min_member,
            suborbit_count,
        });
    }

    // the trivial group is included even when no regular suborbit exists
    let trivial = Subgroup::trivial(space.degree());
    if !key_to_class.contains_key(&trivial.canonical_key()) {
        key_to_class.insert(trivial.canonical_key(), raw.len());
        raw.push(RawClass {
            members_min: trivial.canonical_key(),
            class_size: 1,
            rep: trivial,
            suborbit_count: 0,
        });
    }

    let mut order_idx: Vec<usize> = (0..raw.len()).collect();
    order_idx.sort_by_key(|&i| (raw[i].rep.order(), raw[i].members_min.clone()));
    let mut final_of_raw = vec![0usize; raw.len()];
    let mut classes = Vec::with_capacity(raw.len());
    for (pos, &i) in order_idx.iter().enumerate() {
        final_of_raw[i] = pos;
        let rc = &raw[i];
        let h_order = h.order() as u64;
        if h_order % rc.class_size != 0 {
            return Err(SaxlError::Inconsistent(
                "class size does not divide |H|".into(),
            ));
        }
        classes.push(ArcStabiliserClass {
            representative: rc.rep.clone(),
            h_class_size: rc.class_size,
            h_normalizer_order: h_order / rc.class_size,
            tilde_class_size: 1,
            suborbit_count: rc.suborbit_count,
            delta_size: None,
            big_delta_size: None,
        });
    }
    let rep_class: Vec<usize> = stabs
        .iter()
        .map(|s| final_of_raw[key_to_class[&s.canonical_key()]])
        .collect();
    Ok(ArcClasses { classes, rep_class })
}

/// Memoizing wrapper over conjugation orbits in `G`: normalizer orders and
/// conjugacy tests for the subgroups the engine touches.
pub struct ConjugacyOracle<'a> {
    g: &'a Group,
    cap: usize,
    cache: RefCell<HashMap<Vec<u32>, Rc<CachedConjOrbit>>>,
}

pub struct CachedConjOrbit {
    pub mode: ConjMode,
    pub keys: HashSet<Key>,
    pub normalizer_order: BigUint,
}

impl<'a> ConjugacyOracle<'a> {
    pub fn new(g: &'a Group, cap: usize) -> Self {
        ConjugacyOracle {
            g,
            cap,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Group {
        self.g
    }

    pub fn orbit(&self, s: &Subgroup) -> Result<Rc<CachedConjOrbit>, SaxlError> {
        let key = s.canonical_key();
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let (mode, orbit) = conjugation_orbit(self.g.generators(), s, self.cap)?;
        let size = BigUint::from(orbit.len() as u64);
        let (norm, rem) = self.g.order().div_rem(&size);
        if !rem.is_zero() {
            return Err(SaxlError::Inconsistent(
                "conjugation orbit size does not divide |G|".into(),
            ));
        }
        let cached = Rc::new(CachedConjOrbit {
            mode,
            keys: orbit.index.into_keys().collect(),
            normalizer_order: norm,
        });
        self.cache.borrow_mut().insert(key, cached.clone());
        Ok(cached)
    }

    pub fn normalizer_order(&self, s: &Subgroup) -> Result<BigUint, SaxlError> {
        Ok(self.orbit(s)?.normalizer_order.clone())
    }

    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> Result<bool, SaxlError> {
        if a.order() != b.order() {
            return Ok(false);
        }
        if a.canonical_key() == b.canonical_key() {
            return Ok(true);
        }
        if a.is_cyclic() != b.is_cyclic() {
            return Ok(false);
        }
        let orbit = self.orbit(a)?;
        let bk = subgroup_key(b, &orbit.mode);
        Ok(orbit.keys.contains(&bk))
    }
}

/// Fuses classes with the same counting behaviour: conjugate in `G`, equal
/// normalizer order in `H`, and identical incidence rows and columns against
/// every other class.
pub fn fuse_equivalent(
    arc: &ArcClasses,
    table: &SubgroupClassTable,
    oracle: &ConjugacyOracle,
) -> Result<Vec<ArcStabiliserClass>, SaxlError> {
    let n = arc.classes.len();
    let eta = eta_matrix(&arc.classes, table)?;

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&arc.classes[i], &arc.classes[j]);
            if a.order() != b.order() || a.h_normalizer_order != b.h_normalizer_order {
                continue;
            }
            let rows_match = (0..n).all(|k| {
                k == i || k == j || (eta[i][k] == eta[j][k] && eta[k][i] == eta[k][j])
            });
            if !rows_match {
                continue;
            }
            if !oracle.are_conjugate(&a.representative, &b.representative)? {
                continue;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[rj] = ri;
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut fused: Vec<ArcStabiliserClass> = Vec::new();
    for members in groups.values() {
        let rep_idx = *members
            .iter()
            .min_by_key(|&&i| arc.classes[i].representative.canonical_key())
            .unwrap();
        let mut c = arc.classes[rep_idx].clone();
        c.tilde_class_size = members.len() as u64;
        c.suborbit_count = members.iter().map(|&i| arc.classes[i].suborbit_count).sum();
        fused.push(c);
    }
    fused.sort_by_key(|c| (c.order(), c.representative.canonical_key()));
    Ok(fused)
}

/// Incidence counts between the classes: `eta[i][j]` is the number of
/// H-conjugates of class `j`'s representative containing class `i`'s.
fn eta_matrix(
    classes: &[ArcStabiliserClass],
    table: &SubgroupClassTable,
) -> Result<Vec<Vec<u64>>, SaxlError> {
    let n = classes.len();
    let mut eta = vec![vec![0u64; n]; n];
    for j in 0..n {
        let cj = table.class_of(&classes[j].representative).ok_or_else(|| {
            SaxlError::Inconsistent("arc stabiliser missing from the subgroup table".into())
        })?;
        for i in 0..n {
            eta[i][j] = table.eta(&classes[i].representative, cj);
        }
    }
    Ok(eta)
}

pub struct DeltaOutcome {
    pub report: SubdegreeReport,
    /// classes in matrix row order with both counts filled
    pub classes: Vec<ArcStabiliserClass>,
    pub matrix: IncidenceMatrix,
    pub inverse: IncidenceMatrix,
}

fn exact_div(n: &BigUint, d: &BigUint, what: &str) -> Result<BigUint, SaxlError> {
    let (q, r) = n.div_rem(d);
    if !r.is_zero() {
        return Err(SaxlError::Inconsistent(format!(
            "{what}: {n} is not divisible by {d}"
        )));
    }
    Ok(q)
}

/// Solves for the exact-equality counts from the at-least counts.
///
/// The matrix is built over the fused classes ordered by ascending subgroup
/// order (canonical key as tie-break), which is a linear extension of the
/// containment poset; entries on the diagonal are 1, and the off-diagonal
/// entry is the incidence count times the fused class size. The `Delta`
/// column is filled from normalizer orders unless a class already carries a
/// supplied value.
pub fn delta_engine(
    g: &Group,
    h: &Subgroup,
    tilde: &[ArcStabiliserClass],
    table: &SubgroupClassTable,
    oracle: &ConjugacyOracle,
    name: &str,
) -> Result<DeltaOutcome, SaxlError> {
    let order_h = BigUint::from(h.order() as u64);
    let index = exact_div(g.order(), &order_h, "group order by stabiliser order")?;

    let mut classes: Vec<ArcStabiliserClass> = tilde.to_vec();
    classes.sort_by_key(|c| (c.order(), c.representative.canonical_key()));
    let n = classes.len();
    if n == 0 || classes[0].order() != 1 || classes[n - 1].order() != h.order() as u64 {
        return Err(SaxlError::BadParameter(
            "class list must contain the trivial subgroup and H".into(),
        ));
    }

    let eta = eta_matrix(&classes, table)?;
    let labels: Vec<String> = classes
        .iter()
        .map(|c| format!("order {}", c.order()))
        .collect();
    let mut entries = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = if i == j {
                BigInt::from(1)
            } else {
                BigInt::from(eta[i][j]) * BigInt::from(classes[j].tilde_class_size)
            };
        }
    }
    let matrix = IncidenceMatrix::new(labels, entries);
    let inverse = matrix.invert()?;

    // Delta column: trivial class sees the whole group; H is self-normalizing
    // in the primitive case; anything else sums |H| |N_G(B)| / |N_H(B)| over
    // the subgroup classes of H that are conjugate to the representative in G.
    for idx in 0..n {
        if classes[idx].big_delta_size.is_some() {
            continue;
        }
        let value = if classes[idx].order() == 1 {
            g.order().clone()
        } else if classes[idx].order() == h.order() as u64 {
            order_h.clone()
        } else {
            let rep = &classes[idx].representative;
            let orbit = oracle.orbit(rep)?;
            let mut sum = BigUint::zero();
            for tclass in &table.classes {
                if tclass.order() != rep.order() {
                    continue;
                }
                let b = &tclass.representative;
                if b.is_cyclic() != rep.is_cyclic() {
                    continue;
                }
                if !orbit.keys.contains(&subgroup_key(b, &orbit.mode)) {
                    continue;
                }
                let term = exact_div(
                    &(&order_h * &orbit.normalizer_order),
                    &BigUint::from(tclass.normalizer_order),
                    "normalizer-sum term",
                )?;
                sum += term;
            }
            sum
        };
        classes[idx].big_delta_size = Some(value);
    }

    let big_delta: Vec<BigInt> = classes
        .iter()
        .map(|c| BigInt::from(c.big_delta_size.clone().unwrap()))
        .collect();
    let small_delta = inverse.apply(&big_delta);
    for (i, d) in small_delta.iter().enumerate() {
        if d.is_negative() {
            return Err(SaxlError::Inconsistent(format!(
                "negative exact count {d} for the class of order {}; the class \
                 list is wrong or the stabiliser is not maximal",
                classes[i].order()
            )));
        }
        classes[i].delta_size = Some(d.to_biguint().unwrap());
    }

    let valency = exact_div(
        classes[0].delta_size.as_ref().unwrap(),
        &order_h,
        "valency from the trivial class",
    )?;

    let mut mult: BTreeMap<u64, BigUint> = BTreeMap::new();
    for c in &classes {
        let len = h.order() as u64 / c.order();
        let numer = c.delta_size.clone().unwrap() * BigUint::from(c.tilde_class_size);
        let denom = BigUint::from(c.h_normalizer_order) * BigUint::from(len);
        let m = exact_div(&numer, &denom, "suborbit multiplicity")?;
        *mult.entry(len).or_insert_with(BigUint::zero) += m;
    }
    let entries = entries_from_map(&mult);
    let checks = compute_checks(&entries, &index, &valency, &order_h);
    let report = SubdegreeReport {
        group_name: name.to_string(),
        order_g: g.order().clone(),
        order_h,
        index,
        entries,
        valency,
        method: Method::DeltaEngine,
        checks,
    };
    Ok(DeltaOutcome {
        report,
        classes,
        matrix,
        inverse,
    })
}

pub struct CrossValidation {
    pub report: SubdegreeReport,
    pub brute: SubdegreeReport,
    pub suborbits: SuborbitData,
    pub arc: ArcClasses,
    pub engine: Option<DeltaOutcome>,
    pub engine_error: Option<String>,
    pub agreement: Option<bool>,
}

/// Runs both paths and compares entry-wise. Engine inconsistencies become a
/// structured disagreement, not a crash; the brute-force report is always
/// produced.
pub fn cross_validate(
    space: &ActionSpace,
    g: &Group,
    h: &Subgroup,
    name: &str,
    primitive: bool,
    label_cap: usize,
    lattice_cap: usize,
) -> Result<CrossValidation, SaxlError> {
    let (brute, data) = suborbits_bruteforce(space, g, h, name)?;
    let arc = arc_stabilisers(space, h, &data)?;
    if !primitive {
        let mut report = brute.clone();
        report.checks.cross_method_agreement = None;
        return Ok(CrossValidation {
            report,
            brute,
            suborbits: data,
            arc,
            engine: None,
            engine_error: Some("inversion engine skipped: input not marked primitive".into()),
            agreement: None,
        });
    }
    let table = crate::lattice::all_subgroups(h, lattice_cap)?;
    let oracle = ConjugacyOracle::new(g, label_cap);
    let outcome = fuse_equivalent(&arc, &table, &oracle)
        .and_then(|tilde| delta_engine(g, h, &tilde, &table, &oracle, name));
    let (engine, engine_error, agreement) = match outcome {
        Ok(out) => {
            let agree = out.report.same_subdegrees(&brute);
            (Some(out), None, Some(agree))
        }
        Err(SaxlError::Inconsistent(msg)) => (None, Some(msg), Some(false)),
        Err(other) => return Err(other),
    };
    let mut report = brute.clone();
    report.checks.cross_method_agreement = agreement;
    Ok(CrossValidation {
        report,
        brute,
        suborbits: data,
        arc,
        engine,
        engine_error,
        agreement,
    })
}

/// Suborbit representatives whose stabiliser is non-trivial, proper and
/// normal in `H`. Normality is equivalent to the H-class being a singleton.
pub fn scan_normal_arc_stabilisers(
    h: &Subgroup,
    arc: &ArcClasses,
    data: &SuborbitData,
) -> Vec<u32> {
    let mut out = Vec::new();
    for (orbit, &class_idx) in arc.rep_class.iter().enumerate() {
        let c = &arc.classes[class_idx];
        if c.h_class_size == 1 && c.order() > 1 && c.order() < h.order() as u64 {
            out.push(data.reps[orbit]);
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_subgroup;
    use crate::space::{conj_mode_for, stabilizer_of_label};

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    /// S5 on 5 points: subdegrees 1 and 4, no regular suborbit.
    #[test]
    fn s5_natural_action() {
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        let space = ActionSpace::points(5, g.generators(), 100).unwrap();
        let h = stabilizer_of_label(&space, &g, space.base_index(), 1000).unwrap();
        let (report, data) = suborbits_bruteforce(&space, &g, &h, "s5").unwrap();
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.valency, BigUint::zero());
        assert!(report.checks.sum_rule);

        let arc = arc_stabilisers(&space, &h, &data).unwrap();
        // stabiliser intersections: S3 (from the 4-orbit), H itself, plus the
        // always-included trivial class
        let orders: Vec<u64> = arc.classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 6, 24]);
    }

    /// The full pipeline on S7 acting on conjugates of a 7-cycle subgroup.
    #[test]
    fn s7_frobenius_pipeline() {
        let g = Group::from_generators(vec![cyc(7, &[&[1, 2, 3, 4, 5, 6, 7]]), cyc(7, &[&[1, 2]])])
            .unwrap();
        let c7 = cyclic_subgroup(&cyc(7, &[&[1, 2, 3, 4, 5, 6, 7]]));
        let mode = conj_mode_for(&c7);
        let seed = subgroup_key(&c7, &mode);
        let space = ActionSpace::materialize(
            crate::space::SpaceKind::SubgroupConjugates { mode },
            7,
            seed,
            g.generators(),
            10_000,
        )
        .unwrap();
        assert_eq!(space.size(), 120);
        let h = stabilizer_of_label(&space, &g, space.base_index(), 10_000).unwrap();
        assert_eq!(h.order(), 42);

        let cv = cross_validate(&space, &g, &h, "s7", true, 1_000_000, 10_000).unwrap();
        assert_eq!(cv.agreement, Some(true));
        assert_eq!(cv.brute.valency, BigUint::from(42u32));
        let engine = cv.engine.as_ref().unwrap();
        assert_eq!(engine.report.valency, BigUint::from(42u32));
        // multiplicities 1, 1, 2, 2, 1 across lengths 1, 7, 14, 21, 42
        let m: Vec<(u64, u64)> = engine
            .report
            .entries
            .iter()
            .map(|e| {
                (
                    u64::try_from(&e.length).unwrap(),
                    u64::try_from(&e.multiplicity).unwrap(),
                )
            })
            .collect();
        assert_eq!(m, vec![(1, 1), (7, 1), (14, 2), (21, 2), (42, 1)]);
        // the exact counts match the hand calculation for this case
        let deltas: Vec<u64> = engine
            .classes
            .iter()
            .map(|c| u64::try_from(c.delta_size.as_ref().unwrap()).unwrap())
            .collect();
        assert_eq!(deltas, vec![1764, 252, 168, 42, 42]);
        let big: Vec<u64> = engine
            .classes
            .iter()
            .map(|c| u64::try_from(c.big_delta_size.as_ref().unwrap()).unwrap())
            .collect();
        assert_eq!(big, vec![5040, 336, 252, 84, 42]);
        // no proper normal arc stabiliser on a primitive action
        assert!(scan_normal_arc_stabilisers(&h, &cv.arc, &cv.suborbits).is_empty());
    }

    /// Degenerate regular action: H = 1, every suborbit regular.
    #[test]
    fn regular_action_scan_is_empty() {
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        let space = ActionSpace::points(5, g.generators(), 100).unwrap();
        let h = Subgroup::trivial(5);
        let (report, data) = suborbits_bruteforce(&space, &g, &h, "z5").unwrap();
        assert_eq!(report.valency, BigUint::from(5u32));
        let arc = arc_stabilisers(&space, &h, &data).unwrap();
        assert!(scan_normal_arc_stabilisers(&h, &arc, &data).is_empty());
    }
}

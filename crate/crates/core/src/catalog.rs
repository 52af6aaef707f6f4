//! Concrete constructors for every group/action in the bundled catalog:
//! two-dimensional projective groups on the projective line, Singer-torus
//! normalizers in higher dimensions, affine normalizers in symmetric and
//! alternating groups, plus checked-in generator files for the sporadic
//! cases.

use crate::error::SaxlError;
use crate::field::FiniteField;
use crate::files::GroupFile;
use crate::forms::DihedralCase;
use crate::group::{cyclic_subgroup, Group, Subgroup};
use crate::numth::factorize;
use crate::perm::Permutation;
use crate::space::{conj_mode_for, subgroup_key, ActionSpace, ConjMode, Key, SpaceKind};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;

/// Projective line over `F_q`: points are 0-based indices, field elements at
/// their own encoding, infinity at index `q`.
pub struct ProjectiveLine {
    pub field: FiniteField,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<ProjectiveLine, SaxlError> {
        let f = factorize(q);
        if f.len() != 1 {
            return Err(SaxlError::BadParameter(format!(
                "q = {q} is not a prime power"
            )));
        }
        let (p, e) = f[0];
        Ok(ProjectiveLine {
            field: FiniteField::new(p, e)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.field.q() as usize + 1
    }

    fn perm<F: Fn(Option<u32>) -> Option<u32>>(&self, map: F) -> Permutation {
        let q = self.field.q() as u32;
        let images: Vec<u32> = (0..=q)
            .map(|i| {
                let pt = if i == q { None } else { Some(i) };
                match map(pt) {
                    Some(x) => x,
                    None => q,
                }
            })
            .collect();
        Permutation::from_images(images).expect("projective map is a bijection")
    }

    pub fn translation(&self, c: u32) -> Permutation {
        self.perm(|pt| pt.map(|x| self.field.add(x, c)))
    }

    pub fn scaling(&self, c: u32) -> Permutation {
        self.perm(|pt| pt.map(|x| self.field.mul(c, x)))
    }

    /// x -> 1/x, swapping 0 and infinity.
    pub fn inversion(&self) -> Permutation {
        self.perm(|pt| match pt {
            Some(0) => None,
            Some(x) => Some(self.field.inv(x)),
            None => Some(0),
        })
    }

    /// x -> -1/x, an involution of determinant one.
    pub fn neg_inversion(&self) -> Permutation {
        self.perm(|pt| match pt {
            Some(0) => None,
            Some(x) => Some(self.field.neg(self.field.inv(x))),
            None => Some(0),
        })
    }

    /// The field automorphism x -> x^p.
    pub fn frobenius(&self) -> Permutation {
        self.perm(|pt| pt.map(|x| self.field.pow(x, self.field.p())))
    }

    /// An F_p-basis of the field: powers of the generator.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.field.k())
            .map(|i| self.field.pow(self.field.generator(), i as u64))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projectivity {
    Psl,
    Pgl,
}

/// `PSL_2(q)` or `PGL_2(q)` on the projective line together with the
/// dihedral stabiliser data: split case on 2-subsets, nonsplit case on
/// conjugates of a maximal torus generator.
pub fn build_psl2_action(
    q: u64,
    case: DihedralCase,
    proj: Projectivity,
    cap: usize,
) -> Result<(Group, ActionSpace, Subgroup), SaxlError> {
    if q < 7 {
        return Err(SaxlError::BadParameter("q >= 7 required".into()));
    }
    let line = ProjectiveLine::new(q)?;
    let f = &line.field;
    let even = f.p() == 2;
    let g1 = f.generator();

    let mut gens: Vec<Permutation> = line.basis().iter().map(|&b| line.translation(b)).collect();
    match (proj, even) {
        (Projectivity::Pgl, _) | (Projectivity::Psl, true) => {
            gens.push(line.scaling(g1));
            gens.push(line.inversion());
        }
        (Projectivity::Psl, false) => {
            gens.push(line.scaling(f.mul(g1, g1)));
            gens.push(line.neg_inversion());
        }
    }
    let group = Group::from_generators(gens)?;
    let expected_order = match (proj, even) {
        (Projectivity::Pgl, _) | (Projectivity::Psl, true) => q * (q * q - 1),
        (Projectivity::Psl, false) => q * (q * q - 1) / 2,
    };
    if group.order_u64() != expected_order {
        return Err(SaxlError::Inconsistent(format!(
            "projective group of order {} built, expected {expected_order}",
            group.order_u64()
        )));
    }

    match case {
        DihedralCase::Split => {
            // the 2-subset space, base label {0, infinity}
            let seed: Key = Box::new([0u16, q as u16]);
            let space = ActionSpace::materialize(
                SpaceKind::KSubsets { k: 2 },
                line.degree(),
                seed,
                group.generators(),
                cap,
            )?;
            let expected = (q + 1) * q / 2;
            if space.size() as u64 != expected {
                return Err(SaxlError::Inconsistent(
                    "2-subset orbit has the wrong size".into(),
                ));
            }
            let h_gens = match (proj, even) {
                (Projectivity::Pgl, _) | (Projectivity::Psl, true) => {
                    vec![line.scaling(g1), line.inversion()]
                }
                (Projectivity::Psl, false) => {
                    vec![line.scaling(f.mul(g1, g1)), line.neg_inversion()]
                }
            };
            let h = Subgroup::closure(line.degree(), &h_gens, cap)?;
            let expected_h = match (proj, even) {
                (Projectivity::Pgl, _) | (Projectivity::Psl, true) => 2 * (q - 1),
                (Projectivity::Psl, false) => q - 1,
            };
            if h.order() as u64 != expected_h {
                return Err(SaxlError::Inconsistent(format!(
                    "dihedral stabiliser of order {} built, expected {expected_h}",
                    h.order()
                )));
            }
            Ok((group, space, h))
        }
        DihedralCase::Nonsplit => {
            let target = match (proj, even) {
                (Projectivity::Pgl, _) | (Projectivity::Psl, true) => q + 1,
                (Projectivity::Psl, false) => (q + 1) / 2,
            };
            let torus = find_element_of_order(&group, target, 20_000)?;
            let space = space_of_cyclic_conjugates(&group, &torus, cap)?;
            let h = crate::space::stabilizer_of_label(&space, &group, space.base_index(), cap)?;
            let expected_h = match (proj, even) {
                (Projectivity::Pgl, _) | (Projectivity::Psl, true) => 2 * (q + 1),
                (Projectivity::Psl, false) => q + 1,
            };
            if h.order() as u64 != expected_h {
                return Err(SaxlError::Inconsistent(format!(
                    "torus normalizer of order {} built, expected {expected_h}",
                    h.order()
                )));
            }
            Ok((group, space, h))
        }
    }
}

/// Uniform random elements from the stabiliser chain until one has the
/// requested order; the RNG is seeded so results are reproducible.
fn find_element_of_order(g: &Group, order: u64, tries: u32) -> Result<Permutation, SaxlError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5a784c);
    for _ in 0..tries {
        let cand = g.random_element(&mut rng);
        let o = cand.order();
        if o == order {
            return Ok(cand);
        }
        if o % order == 0 {
            return Ok(cand.pow((o / order) as i64));
        }
    }
    Err(SaxlError::SearchFailed(format!(
        "no element of order {order} found in {tries} samples"
    )))
}

fn space_of_cyclic_conjugates(
    g: &Group,
    c: &Permutation,
    cap: usize,
) -> Result<ActionSpace, SaxlError> {
    let sub = cyclic_subgroup(c);
    let mode = conj_mode_for(&sub);
    let seed = subgroup_key(&sub, &mode);
    ActionSpace::materialize(
        SpaceKind::SubgroupConjugates { mode },
        g.degree(),
        seed,
        g.generators(),
        cap,
    )
}

/// Points of the projective space `P^{r-1}(F_q)` realized inside the
/// extension field `F_{q^r}`, with the coordinate tables needed to turn
/// matrices over `F_q` into point permutations.
struct SingerGeometry {
    small: FiniteField,
    big: FiniteField,
    r: usize,
    /// element of big field -> coordinates over small field in the basis
    /// 1, w, ..., w^{r-1} (w the big-field generator)
    coords: std::collections::HashMap<u32, Vec<u32>>,
    /// normalized projective coordinate vectors, sorted; index = point
    points: Vec<Vec<u32>>,
    point_index: std::collections::HashMap<Vec<u32>, u32>,
}

impl SingerGeometry {
    fn new(r: u64, q: u64) -> Result<SingerGeometry, SaxlError> {
        let fs = factorize(q);
        if fs.len() != 1 {
            return Err(SaxlError::BadParameter(format!(
                "q = {q} is not a prime power"
            )));
        }
        let (p, e) = fs[0];
        let small = FiniteField::new(p, e)?;
        let big = FiniteField::new(p, e * r as u32)?;

        // embed the small field: a root of its modulus inside the big field
        let embed: Vec<u32> = if e == 1 {
            (0..small.q() as u32).collect()
        } else {
            let roots = big.prime_poly_roots(small.modulus());
            let beta = *roots.first().ok_or_else(|| {
                SaxlError::Inconsistent("subfield modulus has no root upstairs".into())
            })?;
            (0..small.q() as u32)
                .map(|a| {
                    let mut acc = 0u32;
                    let mut rest = a as u64;
                    let mut pw = 1u32;
                    for _ in 0..e {
                        let digit = (rest % p) as u32;
                        rest /= p;
                        acc = big.add(acc, big.mul(digit, pw));
                        pw = big.mul(pw, beta);
                    }
                    acc
                })
                .collect()
        };
        // embedding sanity: multiplicative and additive on the full table
        for a in 0..small.q() as u32 {
            for b in 0..small.q() as u32 {
                if embed[small.add(a, b) as usize] != big.add(embed[a as usize], embed[b as usize])
                    || embed[small.mul(a, b) as usize]
                        != big.mul(embed[a as usize], embed[b as usize])
                {
                    return Err(SaxlError::Inconsistent(
                        "subfield embedding failed verification".into(),
                    ));
                }
            }
        }

        let r = r as usize;
        let w = big.generator();
        let basis: Vec<u32> = (0..r).map(|i| big.pow(w, i as u64)).collect();
        let mut coords = std::collections::HashMap::new();
        let mut stack = vec![0u32; r];
        // enumerate all coordinate vectors over the small field
        let total = (small.q() as u64).pow(r as u32);
        for n in 0..total {
            let mut rest = n;
            for slot in stack.iter_mut() {
                *slot = (rest % small.q()) as u32;
                rest /= small.q();
            }
            let mut v = 0u32;
            for (i, &c) in stack.iter().enumerate() {
                v = big.add(v, big.mul(embed[c as usize], basis[i]));
            }
            if coords.insert(v, stack.clone()).is_some() {
                return Err(SaxlError::Inconsistent(
                    "basis powers are not independent over the subfield".into(),
                ));
            }
        }

        // projective points: scale so the first nonzero coordinate is 1
        let mut points: Vec<Vec<u32>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for v in coords.values() {
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            let lead = *v.iter().find(|&&c| c != 0).unwrap();
            let inv = small.inv(lead);
            let norm: Vec<u32> = v.iter().map(|&c| small.mul(inv, c)).collect();
            if seen.insert(norm.clone()) {
                points.push(norm);
            }
        }
        points.sort_unstable();
        let expected = (q.pow(r as u32) - 1) / (q - 1);
        if points.len() as u64 != expected {
            return Err(SaxlError::Inconsistent(
                "projective point count mismatch".into(),
            ));
        }
        let point_index = points
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        Ok(SingerGeometry {
            small,
            big,
            r,
            coords,
            points,
            point_index,
        })
    }

    /// Permutation induced by an invertible matrix (columns = images of the
    /// basis vectors, entries in the small field).
    fn matrix_perm(&self, m: &[Vec<u32>]) -> Result<Permutation, SaxlError> {
        let images: Vec<u32> = self
            .points
            .iter()
            .map(|v| {
                let mut out = vec![0u32; self.r];
                for (j, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for i in 0..self.r {
                        out[i] = self.small.add(out[i], self.small.mul(c, m[j][i]));
                    }
                }
                let lead = *out.iter().find(|&&c| c != 0).expect("matrix is singular");
                let inv = self.small.inv(lead);
                let norm: Vec<u32> = out.iter().map(|&c| self.small.mul(inv, c)).collect();
                self.point_index[&norm]
            })
            .collect();
        Permutation::from_images(images).map_err(|_| {
            SaxlError::Inconsistent("matrix did not act bijectively on points".into())
        })
    }

    /// Column vector of coordinates of a big-field element.
    fn column(&self, v: u32) -> Vec<u32> {
        self.coords[&v].clone()
    }

    /// Multiplication by the big-field generator, as a matrix over F_q.
    fn singer_matrix(&self) -> Vec<Vec<u32>> {
        let w = self.big.generator();
        (0..self.r)
            .map(|j| self.column(self.big.pow(w, (j + 1) as u64)))
            .collect()
    }

    /// The relative Frobenius x -> x^q, as a matrix over F_q.
    fn frobenius_matrix(&self) -> Vec<Vec<u32>> {
        let w = self.big.generator();
        let q = self.small.q();
        (0..self.r)
            .map(|j| self.column(self.big.pow(self.big.pow(w, j as u64), q)))
            .collect()
    }

    fn identity_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.r)
            .map(|j| {
                let mut col = vec![0u32; self.r];
                col[j] = 1;
                col
            })
            .collect()
    }
}

/// `PGL_r(q)` on the points of the projective space, with the Singer-torus
/// normalizer `H = <z, sigma>` as the stabiliser of the conjugation space of
/// `<z>`. Only the linear case is constructed.
pub fn build_singer_normalizer_action(
    r: u64,
    q: u64,
    cap: usize,
) -> Result<(Group, ActionSpace, Subgroup), SaxlError> {
    let params = crate::forms::lr_eps_params(r, q, crate::numth::Eps::Plus)?;
    let geo = SingerGeometry::new(r, q)?;
    let z = geo.matrix_perm(&geo.singer_matrix())?;
    let sigma = geo.matrix_perm(&geo.frobenius_matrix())?;

    // transvections generate the special subgroup; add them until the chain
    // reaches the full projective general linear order
    let mut gens = vec![z.clone(), sigma.clone()];
    let mut group = Group::from_generators(gens.clone())?;
    let target = params
        .order_g
        .to_u64()
        .ok_or_else(|| SaxlError::BadParameter("group order exceeds u64".into()))?;
    'extend: for (i, j) in transvection_pairs(geo.r) {
        if group.order_u64() == target {
            break;
        }
        for b in 0..geo.small.k() {
            let c = geo.small.pow(geo.small.generator(), b as u64);
            let mut m = geo.identity_matrix();
            // basis vector j also picks up c times basis vector i
            m[j][i] = geo.small.add(m[j][i], c);
            gens.push(geo.matrix_perm(&m)?);
            group = Group::from_generators(gens.clone())?;
            if group.order_u64() == target {
                break 'extend;
            }
        }
    }
    if group.order_u64() != target {
        return Err(SaxlError::Inconsistent(format!(
            "projective group of order {} built, expected {target}",
            group.order_u64()
        )));
    }

    let h = Subgroup::closure(geo.points.len(), &[z.clone(), sigma], cap)?;
    let expected_h = params.a_plain.clone() * BigUint::from(r);
    if BigUint::from(h.order() as u64) != expected_h {
        return Err(SaxlError::Inconsistent(format!(
            "Singer normalizer of order {} built, expected {expected_h}",
            h.order()
        )));
    }
    let space = space_of_cyclic_conjugates(&group, &z, cap)?;
    let index = (&params.order_g / &expected_h)
        .to_u64()
        .ok_or_else(|| SaxlError::BadParameter("index exceeds u64".into()))?;
    if space.size() as u64 != index {
        return Err(SaxlError::Inconsistent(format!(
            "conjugate space of size {} built, expected {index}",
            space.size()
        )));
    }
    Ok((group, space, h))
}

/// The socle of the Singer construction: the special projective group on the
/// same conjugate space, with the intersected stabiliser.
pub fn build_singer_socle_action(
    r: u64,
    q: u64,
    cap: usize,
) -> Result<(Group, ActionSpace, Subgroup), SaxlError> {
    let params = crate::forms::lr_eps_params(r, q, crate::numth::Eps::Plus)?;
    let geo = SingerGeometry::new(r, q)?;
    let z = geo.matrix_perm(&geo.singer_matrix())?;
    let sigma = geo.matrix_perm(&geo.frobenius_matrix())?;

    let mut gens: Vec<Permutation> = Vec::new();
    for (i, j) in transvection_pairs(geo.r) {
        for b in 0..geo.small.k() {
            let c = geo.small.pow(geo.small.generator(), b as u64);
            let mut m = geo.identity_matrix();
            m[j][i] = geo.small.add(m[j][i], c);
            gens.push(geo.matrix_perm(&m)?);
        }
    }
    let socle = Group::from_generators(gens)?;
    let target = params
        .order_socle
        .to_u64()
        .ok_or_else(|| SaxlError::BadParameter("socle order exceeds u64".into()))?;
    if socle.order_u64() != target {
        return Err(SaxlError::Inconsistent(format!(
            "special projective group of order {} built, expected {target}",
            socle.order_u64()
        )));
    }

    let h_full = Subgroup::closure(geo.points.len(), &[z.clone(), sigma], cap)?;
    let h0_elements: Vec<Permutation> = h_full
        .elements()
        .iter()
        .filter(|e| socle.contains(e))
        .cloned()
        .collect();
    let h0 = Subgroup::from_elements(geo.points.len(), h0_elements);

    let space = space_of_cyclic_conjugates(&socle, &z, cap)?;
    if BigUint::from(space.size() as u64) * BigUint::from(h0.order() as u64) != params.order_socle
    {
        return Err(SaxlError::Inconsistent(
            "socle stabiliser/index mismatch".into(),
        ));
    }
    Ok((socle, space, h0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymAlt {
    Sym,
    Alt,
}

/// `S_p` or `A_p` on conjugates of a p-cycle subgroup; the stabiliser is the
/// affine normalizer (intersected with the alternating group if asked).
pub fn build_sym_alt_action(
    p: u64,
    variant: SymAlt,
    cap: usize,
) -> Result<(Group, ActionSpace, Subgroup), SaxlError> {
    if !crate::numth::is_prime(p) || p < 5 {
        return Err(SaxlError::BadParameter(format!(
            "p = {p} must be a prime >= 5"
        )));
    }
    let n = p as usize;
    let cycle = Permutation::from_images((0..n as u32).map(|x| (x + 1) % n as u32).collect())
        .unwrap();
    // multiplication by a primitive root fixes 0 and normalizes the cycle
    let g0 = primitive_root(p);
    let mult = Permutation::from_images(
        (0..n as u64).map(|x| ((g0 * x) % p) as u32).collect(),
    )
    .unwrap();

    let (group, h_gens) = match variant {
        SymAlt::Sym => {
            let transposition =
                Permutation::from_cycles(n, &[vec![1, 2]]).unwrap();
            (
                Group::from_generators(vec![cycle.clone(), transposition])?,
                vec![cycle.clone(), mult],
            )
        }
        SymAlt::Alt => {
            let three_cycle = Permutation::from_cycles(n, &[vec![1, 2, 3]]).unwrap();
            (
                Group::from_generators(vec![cycle.clone(), three_cycle])?,
                vec![cycle.clone(), mult.compose(&mult)?],
            )
        }
    };
    let h = Subgroup::closure(n, &h_gens, cap)?;
    let expected_h = match variant {
        SymAlt::Sym => p * (p - 1),
        SymAlt::Alt => p * (p - 1) / 2,
    };
    if h.order() as u64 != expected_h {
        return Err(SaxlError::Inconsistent(format!(
            "affine normalizer of order {} built, expected {expected_h}",
            h.order()
        )));
    }
    let space = space_of_cyclic_conjugates(&group, &cycle, cap)?;
    Ok((group, space, h))
}

fn primitive_root(p: u64) -> u64 {
    let divisors: Vec<u64> = factorize(p - 1).into_iter().map(|(r, _)| r).collect();
    'cand: for g in 2..p {
        for &r in &divisors {
            let mut acc = 1u64;
            let mut base = g;
            let mut e = (p - 1) / r;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            if acc == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("primitive roots exist modulo a prime")
}

/// Coset space of `H` in `G`, realized as conjugates of the largest cyclic
/// subgroup normal in `H` when one exists (compact labels), otherwise as
/// conjugates of `H` itself.
pub fn coset_space_for(g: &Group, h: &Subgroup, cap: usize) -> Result<ActionSpace, SaxlError> {
    let expected = (g.order() / BigUint::from(h.order() as u64))
        .to_u64()
        .ok_or_else(|| SaxlError::BadParameter("index exceeds u64".into()))?;
    if expected as usize > cap {
        return Err(SaxlError::CapExceeded {
            cap,
            context: "coset space".into(),
        });
    }
    if let Some(c) = h.largest_normal_cyclic() {
        let mode = conj_mode_for(&c);
        let seed = subgroup_key(&c, &mode);
        let space = ActionSpace::materialize(
            SpaceKind::SubgroupConjugates { mode },
            g.degree(),
            seed,
            g.generators(),
            cap,
        )?;
        if space.size() as u64 == expected {
            return Ok(space);
        }
    }
    let mode = ConjMode::FullElements { size: h.order() };
    let seed = subgroup_key(h, &mode);
    let space = ActionSpace::materialize(
        SpaceKind::SubgroupConjugates { mode },
        g.degree(),
        seed,
        g.generators(),
        cap,
    )?;
    if space.size() as u64 != expected {
        return Err(SaxlError::StabiliserMismatch(format!(
            "coset space has {} labels, expected {expected}; H is not self-normalizing",
            space.size()
        )));
    }
    Ok(space)
}

#[derive(Debug, Clone)]
pub enum Construction {
    File(&'static str),
    Psl2 { q: u64, case: DihedralCase },
    Pgl2 { q: u64, case: DihedralCase },
    Singer { r: u64, q: u64 },
    SingerSocle { r: u64, q: u64 },
    Sym { p: u64 },
    Alt { p: u64 },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub primitive: bool,
    pub expected_valency: Option<u64>,
    pub construction: Construction,
}

pub struct BuiltEntry {
    pub name: String,
    pub group: Group,
    pub stabilizer: Subgroup,
    pub space: ActionSpace,
    pub primitive: bool,
    pub expected_valency: Option<u64>,
}

macro_rules! data_file {
    ($name:literal) => {
        include_str!(concat!("../data/", $name, ".json"))
    };
}

pub fn catalog() -> Vec<CatalogEntry> {
    use Construction::*;
    let mut out = vec![
        CatalogEntry {
            name: "a5_s3",
            description: "alternating group of degree 5 on cosets of S3",
            primitive: true,
            expected_valency: Some(6),
            construction: File(data_file!("a5_s3")),
        },
        CatalogEntry {
            name: "m10_agl15",
            description: "M10 on cosets of the affine normalizer 5:4",
            primitive: true,
            expected_valency: Some(20),
            construction: File(data_file!("m10_agl15")),
        },
        CatalogEntry {
            name: "m10_8colon2",
            description: "M10 on cosets of a Sylow 2-subgroup 8:2",
            primitive: true,
            expected_valency: Some(32),
            construction: File(data_file!("m10_8colon2")),
        },
        CatalogEntry {
            name: "pgl2_9_d16",
            description: "PGL2(9) on cosets of D16",
            primitive: true,
            expected_valency: Some(16),
            construction: File(data_file!("pgl2_9_d16")),
        },
        CatalogEntry {
            name: "pgammal2_9_8colon2sq",
            description: "PGammaL2(9) on cosets of its Sylow 2-subgroup 8:2^2",
            primitive: true,
            expected_valency: None,
            construction: File(data_file!("pgammal2_9_8colon2sq")),
        },
        CatalogEntry {
            name: "a9_asl23",
            description: "alternating group of degree 9 on cosets of ASL2(3)",
            primitive: true,
            expected_valency: Some(432),
            construction: File(data_file!("a9_asl23")),
        },
        CatalogEntry {
            name: "m23_23colon11",
            description: "M23 on cosets of the Sylow-23 normalizer 23:11",
            primitive: true,
            expected_valency: None,
            construction: File(data_file!("m23_23colon11")),
        },
        CatalogEntry {
            name: "pgl3_7",
            description: "PGL3(7) on conjugates of a Singer subgroup",
            primitive: true,
            expected_valency: Some(31122),
            construction: Singer { r: 3, q: 7 },
        },
        CatalogEntry {
            name: "pgl3_4",
            description: "PGL3(4) on conjugates of a Singer subgroup",
            primitive: true,
            expected_valency: None,
            construction: Singer { r: 3, q: 4 },
        },
        CatalogEntry {
            name: "l3_2",
            description: "L3(2) on conjugates of a Singer subgroup",
            primitive: true,
            expected_valency: Some(0),
            construction: Singer { r: 3, q: 2 },
        },
        CatalogEntry {
            name: "gl5_2",
            description: "GL5(2) on conjugates of a Singer subgroup",
            primitive: true,
            expected_valency: Some(64170),
            construction: Singer { r: 5, q: 2 },
        },
        CatalogEntry {
            name: "psl3_7_socle",
            description: "L3(7) on the Singer conjugates, socle stabiliser",
            primitive: true,
            expected_valency: Some(32490),
            construction: SingerSocle { r: 3, q: 7 },
        },
        CatalogEntry {
            name: "sym7",
            description: "S7 on conjugates of a 7-cycle subgroup",
            primitive: true,
            expected_valency: Some(42),
            construction: Sym { p: 7 },
        },
        CatalogEntry {
            name: "sym11",
            description: "S11 on conjugates of an 11-cycle subgroup",
            primitive: true,
            expected_valency: Some(358490),
            construction: Sym { p: 11 },
        },
        CatalogEntry {
            name: "alt7",
            description: "A7 on conjugates of a 7-cycle subgroup (not primitive)",
            primitive: false,
            expected_valency: None,
            construction: Alt { p: 7 },
        },
    ];
    for q in [13u64, 17, 19, 23, 29] {
        out.push(CatalogEntry {
            name: match q {
                13 => "psl2_13_split",
                17 => "psl2_17_split",
                19 => "psl2_19_split",
                23 => "psl2_23_split",
                _ => "psl2_29_split",
            },
            description: "PSL2(q) on 2-subsets of the projective line",
            primitive: true,
            expected_valency: Some((q - 1) * (if q % 4 == 1 { q + 7 } else { q + 5 }) / 4),
            construction: Psl2 {
                q,
                case: DihedralCase::Split,
            },
        });
    }
    for q in [11u64, 13, 17, 19] {
        out.push(CatalogEntry {
            name: match q {
                11 => "psl2_11_nonsplit",
                13 => "psl2_13_nonsplit",
                17 => "psl2_17_nonsplit",
                _ => "psl2_19_nonsplit",
            },
            description: "PSL2(q) on conjugates of a nonsplit torus",
            primitive: true,
            expected_valency: Some((q + 1) * (if q % 4 == 1 { q - 1 } else { q - 3 }) / 4),
            construction: Psl2 {
                q,
                case: DihedralCase::Nonsplit,
            },
        });
    }
    for q in [7u64, 9, 11, 13, 16, 17] {
        out.push(CatalogEntry {
            name: match q {
                7 => "pgl2_7_split",
                9 => "pgl2_9_split",
                11 => "pgl2_11_split",
                13 => "pgl2_13_split",
                16 => "pgl2_16_split",
                _ => "pgl2_17_split",
            },
            description: "PGL2(q) on 2-subsets of the projective line",
            primitive: true,
            expected_valency: Some(2 * (q - 1)),
            construction: Pgl2 {
                q,
                case: DihedralCase::Split,
            },
        });
    }
    for q in [7u64, 9, 11, 13] {
        out.push(CatalogEntry {
            name: match q {
                7 => "pgl2_7_nonsplit",
                9 => "pgl2_9_nonsplit",
                11 => "pgl2_11_nonsplit",
                _ => "pgl2_13_nonsplit",
            },
            description: "PGL2(q) on conjugates of a nonsplit torus",
            primitive: true,
            expected_valency: Some(0),
            construction: Pgl2 {
                q,
                case: DihedralCase::Nonsplit,
            },
        });
    }
    out
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry, SaxlError> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| SaxlError::UnknownEntry(name.to_string()))
}

pub fn build_entry(name: &str, cap: usize) -> Result<BuiltEntry, SaxlError> {
    let entry = catalog_entry(name)?;
    let (group, space, stabilizer) = match &entry.construction {
        Construction::File(json) => {
            let file = GroupFile::parse(json)?;
            let (g, h) = file.build(cap)?;
            let space = coset_space_for(&g, &h, cap)?;
            (g, space, h)
        }
        Construction::Psl2 { q, case } => build_psl2_action(*q, *case, Projectivity::Psl, cap)?,
        Construction::Pgl2 { q, case } => build_psl2_action(*q, *case, Projectivity::Pgl, cap)?,
        Construction::Singer { r, q } => build_singer_normalizer_action(*r, *q, cap)?,
        Construction::SingerSocle { r, q } => build_singer_socle_action(*r, *q, cap)?,
        Construction::Sym { p } => build_sym_alt_action(*p, SymAlt::Sym, cap)?,
        Construction::Alt { p } => build_sym_alt_action(*p, SymAlt::Alt, cap)?,
    };
    Ok(BuiltEntry {
        name: entry.name.to_string(),
        group,
        stabilizer,
        space,
        primitive: entry.primitive,
        expected_valency: entry.expected_valency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgl2_7_split_shape() {
        let (g, space, h) =
            build_psl2_action(7, DihedralCase::Split, Projectivity::Pgl, 100_000).unwrap();
        assert_eq!(g.order_u64(), 336);
        assert_eq!(space.size(), 28);
        assert_eq!(h.order(), 12);
    }

    #[test]
    fn psl2_13_split_shape() {
        let (g, space, h) =
            build_psl2_action(13, DihedralCase::Split, Projectivity::Psl, 100_000).unwrap();
        assert_eq!(g.order_u64(), 1092);
        assert_eq!(space.size(), 91);
        assert_eq!(h.order(), 12);
    }

    #[test]
    fn pgl2_9_split_shape() {
        let (g, space, h) =
            build_psl2_action(9, DihedralCase::Split, Projectivity::Pgl, 100_000).unwrap();
        assert_eq!(g.order_u64(), 720);
        assert_eq!(space.size(), 45);
        assert_eq!(h.order(), 16);
    }

    #[test]
    fn singer_l3_2_shape() {
        let (g, space, h) = build_singer_normalizer_action(3, 2, 100_000).unwrap();
        assert_eq!(g.order_u64(), 168);
        assert_eq!(h.order(), 21);
        assert_eq!(space.size(), 8);
    }

    #[test]
    fn sym7_shape() {
        let (g, space, h) = build_sym_alt_action(7, SymAlt::Sym, 100_000).unwrap();
        assert_eq!(g.order_u64(), 5040);
        assert_eq!(space.size(), 120);
        assert_eq!(h.order(), 42);
    }

    #[test]
    fn alt11_stabiliser_order() {
        // degree (p-2)! is too large to materialize for p = 11 at this cap;
        // only check the normalizer construction on a smaller prime
        let (g, space, h) = build_sym_alt_action(7, SymAlt::Alt, 100_000).unwrap();
        assert_eq!(g.order_u64(), 2520);
        assert_eq!(h.order(), 21);
        assert_eq!(space.size(), 120);
    }
}

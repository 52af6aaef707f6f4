//! One-shot generator for the bundled group files (dev tool).

use saxl_core::catalog::ProjectiveLine;
use saxl_core::files::GroupFile;
use saxl_core::group::{cyclic_subgroup, Group, Subgroup};
use saxl_core::perm::Permutation;

fn write(file: &GroupFile) {
    // one generator per line keeps the files diffable
    let gen_lines = |gens: &[Vec<Vec<u32>>]| -> String {
        gens.iter()
            .map(|g| format!("    {}", serde_json::to_string(g).unwrap()))
            .collect::<Vec<_>>()
            .join(",\n")
    };
    let json = format!(
        "{{\n  \"name\": {},\n  \"degree\": {},\n  \"generators\": [\n{}\n  ],\n  \"stabilizer_generators\": [\n{}\n  ]\n}}\n",
        serde_json::to_string(&file.name).unwrap(),
        file.degree,
        gen_lines(&file.generators),
        gen_lines(&file.stabilizer_generators)
    );
    let parsed = GroupFile::parse(&json).unwrap();
    assert_eq!(parsed.generators, file.generators);
    let path = format!("crates/core/data/{}.json", file.name);
    std::fs::write(&path, json).unwrap();
    println!("wrote {path}");
}

fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
    let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &v).unwrap()
}

fn normalizer_in(elements: &[Permutation], target: &Subgroup) -> Vec<Permutation> {
    elements
        .iter()
        .filter(|e| target.is_normalized_by(e))
        .cloned()
        .collect()
}

fn a5_s3() {
    let g = vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])];
    let h = vec![cyc(5, &[&[1, 2, 3]]), cyc(5, &[&[1, 2], &[4, 5]])];
    let grp = Group::from_generators(g.clone()).unwrap();
    assert_eq!(grp.order_u64(), 60);
    let sub = Subgroup::closure(5, &h, 100).unwrap();
    assert_eq!(sub.order(), 6);
    write(&GroupFile::from_parts("a5_s3", 5, &g, &h));
}

fn a9_asl23() {
    // points of F_3^2, 0-based index a + 3b
    let pt = |a: u32, b: u32| (a % 3) + 3 * (b % 3);
    let map = |f: &dyn Fn(u32, u32) -> (u32, u32)| {
        let images: Vec<u32> = (0..9)
            .map(|x| {
                let (a, b) = (x % 3, x / 3);
                let (a2, b2) = f(a, b);
                pt(a2, b2)
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    let t1 = map(&|a, b| (a + 1, b));
    let t2 = map(&|a, b| (a, b + 1));
    let s = map(&|a, b| (2 * b, a)); // [[0,2],[1,0]], det 1
    let u = map(&|a, b| (a + b, b)); // [[1,1],[0,1]], det 1
    let h = vec![t1, t2, s, u];
    let sub = Subgroup::closure(9, &h, 1000).unwrap();
    assert_eq!(sub.order(), 216);
    let g = vec![
        cyc(9, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9]]),
        cyc(9, &[&[1, 2, 3]]),
    ];
    let grp = Group::from_generators(g.clone()).unwrap();
    assert_eq!(grp.order_u64(), 181440);
    for p in &h {
        assert!(grp.contains(p), "ASL2(3) generator not in A9");
    }
    write(&GroupFile::from_parts("a9_asl23", 9, &g, &h));
}

fn m23() {
    // residues 0..22 at 0-based indices; alpha: x+1, beta: 2x,
    // delta: x^3/9 on squares and 9x^3 on non-squares (0 fixed)
    let p = 23u64;
    let modp = |x: u64| (x % p) as u32;
    let alpha = Permutation::from_images((0..23).map(|x| modp(x + 1)).collect()).unwrap();
    let beta = Permutation::from_images((0..23).map(|x| modp(2 * x)).collect()).unwrap();
    let is_square = |x: u64| (1..p).any(|y| y * y % p == x);
    let inv9 = (1..p).find(|y| y * 9 % p == 1).unwrap();
    let delta = Permutation::from_images(
        (0..23)
            .map(|x: u64| {
                if x == 0 {
                    0
                } else if is_square(x) {
                    modp(x * x % p * x % p * inv9)
                } else {
                    modp(x * x % p * x % p * 9)
                }
            })
            .collect(),
    )
    .unwrap();
    let g = vec![alpha.clone(), beta.clone(), delta];
    let grp = Group::from_generators(g.clone()).unwrap();
    assert_eq!(grp.order_u64(), 10_200_960, "M23 order check");
    let h = vec![alpha, beta];
    let sub = Subgroup::closure(23, &h, 1000).unwrap();
    assert_eq!(sub.order(), 253);
    write(&GroupFile::from_parts("m23_23colon11", 23, &g, &h));
}

fn psl2_9_family() {
    let line = ProjectiveLine::new(9).unwrap();
    let f = &line.field;
    let g1 = f.generator();
    let psl_gens = vec![
        line.translation(1),
        line.translation(g1),
        line.scaling(f.mul(g1, g1)),
        line.neg_inversion(),
    ];
    let a6 = Group::from_generators(psl_gens.clone()).unwrap();
    assert_eq!(a6.order_u64(), 360);
    let delta = line.scaling(g1);
    let frob = line.frobenius();

    // PGL2(9) and its split torus normalizer D16
    let mut pgl_gens = psl_gens.clone();
    pgl_gens.push(delta.clone());
    pgl_gens.push(line.inversion());
    let pgl = Group::from_generators(pgl_gens.clone()).unwrap();
    assert_eq!(pgl.order_u64(), 720);
    let d16 = vec![delta.clone(), line.inversion()];
    assert_eq!(Subgroup::closure(10, &d16, 100).unwrap().order(), 16);
    write(&GroupFile::from_parts("pgl2_9_d16", 10, &pgl_gens, &d16));

    // PGammaL2(9) and its Sylow 2-subgroup 8:2^2
    let mut pgam_gens = pgl_gens.clone();
    pgam_gens.push(frob.clone());
    let pgam = Group::from_generators(pgam_gens.clone()).unwrap();
    assert_eq!(pgam.order_u64(), 1440);
    let syl = vec![delta.clone(), line.inversion(), frob.clone()];
    assert_eq!(Subgroup::closure(10, &syl, 100).unwrap().order(), 32);
    write(&GroupFile::from_parts(
        "pgammal2_9_8colon2sq",
        10,
        &pgam_gens,
        &syl,
    ));

    // M10 = <A6, delta * frob>; check it is neither PGL nor PSigmaL
    let mixer = delta.compose(&frob).unwrap();
    let mut m10_gens = psl_gens.clone();
    m10_gens.push(mixer);
    let m10 = Group::from_generators(m10_gens.clone()).unwrap();
    assert_eq!(m10.order_u64(), 720);
    assert!(!m10.contains(&delta), "M10 must not contain the torus map");
    assert!(!m10.contains(&frob), "M10 must not contain the field map");

    let elements = Subgroup::closure(10, &m10_gens, 1000).unwrap();
    assert_eq!(elements.order(), 720);

    // 5:4 = normalizer of a Sylow 5-subgroup
    let c5 = elements
        .elements()
        .iter()
        .find(|e| e.order() == 5)
        .unwrap()
        .clone();
    let n5 = normalizer_in(elements.elements(), &cyclic_subgroup(&c5));
    assert_eq!(n5.len(), 20);
    let h5 = Subgroup::from_elements(10, n5);
    write(&GroupFile::from_parts(
        "m10_agl15",
        10,
        &m10_gens,
        h5.gens(),
    ));

    // 8:2 = normalizer of a cyclic subgroup of order 8
    let c8 = elements
        .elements()
        .iter()
        .find(|e| e.order() == 8)
        .unwrap()
        .clone();
    let n8 = normalizer_in(elements.elements(), &cyclic_subgroup(&c8));
    assert_eq!(n8.len(), 16);
    let h8 = Subgroup::from_elements(10, n8);
    write(&GroupFile::from_parts(
        "m10_8colon2",
        10,
        &m10_gens,
        h8.gens(),
    ));
}

fn main() {
    a5_s3();
    a9_asl23();
    m23();
    psl2_9_family();
    println!("done");
}

//! Base-pair graph construction, DOT export, and the Johnson-graph
//! identification for dihedral stabilisers on 2-subsets.

use crate::engine::{suborbits, SuborbitData};
use crate::error::SaxlError;
use crate::group::{Group, Subgroup};
use crate::perm::Permutation;
use crate::space::{ActionSpace, SpaceKind};
use std::collections::HashSet;

pub const EXPORT_CAP: usize = 5000;

/// Edges of the base-pair graph: `{x, y}` is an edge iff the stabilisers of
/// the two labels intersect trivially. Computed by translating the set of
/// regular suborbits around the space, which also exercises the symmetry of
/// the adjacency relation (every edge must be found from both endpoints).
pub fn saxl_edges(
    space: &ActionSpace,
    g: &Group,
    h: &Subgroup,
    data: &SuborbitData,
) -> Result<Vec<(u32, u32)>, SaxlError> {
    let n = space.size();
    if n > EXPORT_CAP {
        return Err(SaxlError::CapExceeded {
            cap: EXPORT_CAP,
            context: "graph export".into(),
        });
    }
    let h_order = h.order() as u64;
    let regular: Vec<u32> = (0..n as u32)
        .filter(|&l| data.lengths[data.orbit_id[l as usize] as usize] == h_order && h.order() > 1)
        .collect();

    // transversal permutations mapping the base label onto each label
    let base = space.base_index();
    let mut rep: Vec<Option<Permutation>> = vec![None; n];
    rep[base as usize] = Some(Permutation::identity(space.degree()));
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(base);
    while let Some(x) = queue.pop_front() {
        let ux = rep[x as usize].clone().unwrap();
        for gen in g.generators() {
            let y = space.act(x, gen);
            if rep[y as usize].is_none() {
                rep[y as usize] = Some(ux.compose(gen)?);
                queue.push_back(y);
            }
        }
    }

    let mut edges: HashSet<(u32, u32)> = HashSet::new();
    let mut directed = 0u64;
    for gamma in 0..n as u32 {
        let u = rep[gamma as usize]
            .as_ref()
            .ok_or(SaxlError::Intransitive)?;
        for &rho in &regular {
            let delta = space.act(rho, u);
            if delta == gamma {
                continue;
            }
            directed += 1;
            let pair = if gamma < delta {
                (gamma, delta)
            } else {
                (delta, gamma)
            };
            edges.insert(pair);
        }
    }
    if directed != 2 * edges.len() as u64 {
        return Err(SaxlError::Inconsistent(
            "base-pair adjacency is not symmetric".into(),
        ));
    }
    let mut edges: Vec<(u32, u32)> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(edges)
}

/// DOT rendering: vertices named by 1-based label index, one line per
/// unordered edge in lexicographic order, byte-stable across runs.
pub fn saxl_graph_dot(
    space: &ActionSpace,
    g: &Group,
    h: &Subgroup,
    data: &SuborbitData,
) -> Result<String, SaxlError> {
    let edges = saxl_edges(space, g, h, data)?;
    let mut out = String::new();
    out.push_str("graph saxl {\n");
    out.push_str(&format!(
        "  /* vertices={} edges={} */\n",
        space.size(),
        edges.len()
    ));
    for (a, b) in &edges {
        out.push_str(&format!("  v{} -- v{};\n", a + 1, b + 1));
    }
    out.push_str("}\n");
    Ok(out)
}

/// True iff base-pair adjacency on a 2-subset space coincides exactly with
/// sharing one point, i.e. the graph is the Johnson graph J(n, 2).
pub fn johnson_check(space: &ActionSpace, g: &Group, h: &Subgroup) -> Result<bool, SaxlError> {
    match &space.kind {
        SpaceKind::KSubsets { k: 2 } => {}
        _ => {
            return Err(SaxlError::BadParameter(
                "Johnson identification needs a 2-subset space".into(),
            ))
        }
    }
    let data = suborbits(space, h);
    let edges: HashSet<(u32, u32)> = saxl_edges(space, g, h, &data)?.into_iter().collect();
    let n = space.size() as u32;
    for i in 0..n {
        for j in i + 1..n {
            let a = space.label(i);
            let b = space.label(j);
            let common = a.iter().filter(|x| b.contains(x)).count();
            let adjacent = edges.contains(&(i, j));
            if adjacent != (common == 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Key;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let v: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    #[test]
    fn empty_graph_when_no_regular_suborbit() {
        // S5 on points: no regular suborbit, so no edges
        let g = Group::from_generators(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])
            .unwrap();
        let space = ActionSpace::points(5, g.generators(), 100).unwrap();
        let h = crate::space::stabilizer_of_label(&space, &g, space.base_index(), 1000).unwrap();
        let data = suborbits(&space, &h);
        let dot = saxl_graph_dot(&space, &g, &h, &data).unwrap();
        assert!(dot.contains("/* vertices=5 edges=0 */"));
    }

    #[test]
    fn s4_on_pairs_is_johnson() {
        // S4 on 2-subsets of 4 points: pairs sharing a point form bases,
        // disjoint pairs do not, so the graph is J(4, 2)
        let g = Group::from_generators(vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])])
            .unwrap();
        let seed: Key = Box::new([0, 1]);
        let space = ActionSpace::materialize(
            SpaceKind::KSubsets { k: 2 },
            4,
            seed,
            g.generators(),
            100,
        )
        .unwrap();
        let h = crate::space::stabilizer_of_label(&space, &g, space.base_index(), 1000).unwrap();
        assert_eq!(h.order(), 4);
        let ok = johnson_check(&space, &g, &h).unwrap();
        assert!(ok);
    }
}

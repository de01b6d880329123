//! Bundled braid words for named knots, each gated by an independent
//! bracket-oracle cross-check before tests rely on it.

use crate::bracket::jones_via_bracket;
use crate::braid::BraidWord;
use crate::statesum::{jones_statesum, StateSumConfig};
use crate::Result;

const BRAIDS_TXT: &str = include_str!("braids.txt");

/// All bundled `(name, braid)` entries from `braids.txt`.
pub fn bundled_braids() -> Vec<(String, BraidWord)> {
    let mut out = Vec::new();
    for line in BRAIDS_TXT.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, text) = line
            .split_once('=')
            .expect("braids.txt lines are `name = braid`");
        let braid = BraidWord::parse(text.trim()).expect("braids.txt entries parse");
        out.push((name.trim().to_string(), braid));
    }
    out
}

/// Look up a bundled braid by name.
pub fn bundled_braid(name: &str) -> Option<BraidWord> {
    bundled_braids()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, b)| b)
}

/// The gate every bundled word must pass before use: the `N = 2` state sum
/// equals the brute-force Kauffman-bracket value exactly.
pub fn passes_bracket_gate(braid: &BraidWord) -> Result<bool> {
    let state = jones_statesum(braid, &StateSumConfig::new(2))?;
    Ok(state == jones_via_bracket(braid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::two_bridge_jones_class;
    use crate::qlaurent::QPoly;

    #[test]
    fn every_bundled_braid_passes_the_gate() {
        let braids = bundled_braids();
        assert!(!braids.is_empty());
        for (name, braid) in &braids {
            assert!(
                passes_bracket_gate(braid).unwrap(),
                "bundled braid {name} fails the bracket gate"
            );
        }
    }

    #[test]
    fn named_lookups() {
        assert!(bundled_braid("trefoil").is_some());
        assert!(bundled_braid("figure8").is_some());
        assert!(bundled_braid("9_20").is_some());
        assert!(bundled_braid("no_such_knot").is_none());
    }

    #[test]
    fn figure8_is_the_two_bridge_5_2() {
        let b = bundled_braid("figure8").unwrap();
        let v = jones_via_bracket(&b).canonical().normalized;
        let t = two_bridge_jones_class(5, 2).canonical().normalized;
        assert_eq!(v, t);
    }

    /// The 9-edge checkerboard graph of the 9_20 diagram: hexagon 1-6 with
    /// chord 1-4 and path 4-7-5.
    const GRAPH_920: [(usize, usize); 9] = [
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 1),
        (1, 4),
        (4, 7),
        (7, 5),
    ];

    /// Tutte polynomial of a connected multigraph, evaluated at
    /// (x, y) = (-q, -1/q). For the checkerboard graph of an alternating
    /// link diagram this gives the Jones polynomial up to a unit, which
    /// makes it a completely independent oracle for graph-specified knots.
    fn tutte_jones_class(edges: &[(usize, usize)]) -> QPoly {
        fn connected_without_first(edges: &[(usize, usize)], u: usize, v: usize) -> bool {
            let mut parent: Vec<usize> = (0..16).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for &(a, b) in &edges[1..] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
            find(&mut parent, u) == find(&mut parent, v)
        }
        fn contract_first(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
            let (u, v) = edges[0];
            edges[1..]
                .iter()
                .map(|&(a, b)| {
                    let a = if a == v { u } else { a };
                    let b = if b == v { u } else { b };
                    (a, b)
                })
                .collect()
        }
        let x = QPoly::from_q_terms([(1, -1)]);
        let y = QPoly::from_q_terms([(-1, -1)]);
        let Some(&(u, v)) = edges.first() else {
            return QPoly::one();
        };
        if u == v {
            return &y * &tutte_jones_class(&edges[1..]);
        }
        if !connected_without_first(edges, u, v) {
            return &x * &tutte_jones_class(&contract_first(edges));
        }
        &tutte_jones_class(&edges[1..]) + &tutte_jones_class(&contract_first(edges))
    }

    /// The two-bridge tangle oracle and the Tutte-polynomial oracle agree
    /// on the knot specified by the figure's checkerboard graph: it is the
    /// two-bridge b(41,11), continued fraction [3,1,2,1,2], determinant 41.
    #[test]
    fn graph_920_is_the_two_bridge_41_11() {
        let from_graph = tutte_jones_class(&GRAPH_920).canonical().normalized;
        let mirror = from_graph.reverse().canonical().normalized;
        let t = two_bridge_jones_class(41, 11).canonical().normalized;
        assert!(
            t == from_graph || t == mirror,
            "tangle b(41,11) vs graph Tutte value: {t} vs {from_graph}"
        );
        // sanity on a second graph: the triangle is the trefoil
        let trefoil = tutte_jones_class(&[(1, 2), (2, 3), (3, 1)])
            .canonical()
            .normalized;
        let b = two_bridge_jones_class(3, 1).canonical().normalized;
        let bm = b.reverse().canonical().normalized;
        assert!(trefoil == b || trefoil == bm);
    }

    /// Independent identification of the bundled 9_20 word: its Jones
    /// polynomial must match the two-bridge knot b(41,11), the knot of the
    /// figure's checkerboard graph; see `spanning_tree_determinant_check`
    /// for the graph-side confirmation of the determinant.
    #[test]
    fn braid_920_is_the_two_bridge_41_11() {
        let b = bundled_braid("9_20").unwrap();
        assert_eq!(b.components(), 1);
        let v = jones_via_bracket(&b).canonical().normalized;
        let t = two_bridge_jones_class(41, 11).canonical().normalized;
        let t_mirror = t.reverse().canonical().normalized;
        assert!(
            v == t || v == t_mirror,
            "bundled 9_20 braid is not the two-bridge b(41,11) knot: {v}"
        );
    }

    /// The 9-edge checkerboard graph of the 9_20 diagram (hexagon 1-6 with
    /// chord 1-4 and path 4-7-5) has 41 spanning trees, matching the
    /// determinant of the bundled braid's Jones value at q = -1.
    #[test]
    fn spanning_tree_determinant_check() {
        let edges = GRAPH_920;
        let mut trees = 0u64;
        // choose 6 of 9 edges and count the acyclic spanning subsets
        for mask in 0u32..(1 << 9) {
            if mask.count_ones() != 6 {
                continue;
            }
            let mut parent: Vec<usize> = (0..8).collect();
            fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut acyclic = true;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra == rb {
                        acyclic = false;
                        break;
                    }
                    parent[ra] = rb;
                }
            }
            if acyclic {
                trees += 1;
            }
        }
        assert_eq!(trees, 41);

        let b = bundled_braid("9_20").unwrap();
        let det = jones_via_bracket(&b).eval_at_minus_one().unwrap();
        assert_eq!(num_traits::Signed::abs(&det), 41.into());
    }

    /// Generator for braids.txt entries: scans braid words and prints those
    /// whose closure matches a target two-bridge Jones value. Run with
    /// `cargo test -p qtail-core --release search_braid_words -- --ignored --nocapture`.
    #[test]
    #[ignore]
    fn search_braid_words_for_two_bridge_targets() {
        let target = two_bridge_jones_class(41, 11).canonical().normalized;
        let mirror = target.reverse().canonical().normalized;
        let scan = |strands: usize, len: usize| {
            let target = &target;
            let mirror = &mirror;
            let letters: Vec<i32> = (1..strands as i32).flat_map(|i| [i, -i]).collect();
            let base = letters.len() as u64;
            let total = base.pow(len as u32);
            let workers = 8u64;
            let chunk = total.div_ceil(workers);
            std::thread::scope(|scope| {
                for w in 0..workers {
                    let letters = &letters;
                    scope.spawn(move || {
                        let lo = w * chunk;
                        let hi = (lo + chunk).min(total);
                        for idx in lo..hi {
                            let mut rest = idx;
                            let digits: Vec<usize> = (0..len)
                                .map(|_| {
                                    let d = (rest % base) as usize;
                                    rest /= base;
                                    d
                                })
                                .collect();
                            let min_rot = (0..len).all(|r| {
                                (0..len)
                                    .map(|i| digits[(i + r) % len])
                                    .ge(digits.iter().copied())
                            });
                            if !min_rot {
                                continue;
                            }
                            let word: Vec<i32> = digits.iter().map(|&d| letters[d]).collect();
                            // skip words that miss a generator (split or
                            // destabilizable closures)
                            if (2..strands as i32).any(|g| !word.iter().any(|l| l.abs() == g)) {
                                continue;
                            }
                            let b = BraidWord::new(strands, word).unwrap();
                            if b.components() != 1 {
                                continue;
                            }
                            let v = jones_via_bracket(&b).canonical().normalized;
                            if &v == target || &v == mirror {
                                println!("{strands}-strand match: {b}");
                            }
                        }
                    });
                }
            });
            println!("scan {strands} strands, length {len}: done");
        };
        scan(3, 9);
        scan(4, 9);
    }
}

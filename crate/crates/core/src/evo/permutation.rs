use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

fn check_parents(p1: &[usize], p2: &[usize]) -> Result<usize> {
    let n = p1.len();
    if p2.len() != n {
        return Err(Error::invalid("parents differ in length"));
    }
    let mut s1 = p1.to_vec();
    let mut s2 = p2.to_vec();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 || s1.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("parents are not permutations of the same node set"));
    }
    Ok(n)
}

/// Partially mapped crossover with the mapping section `[cut1, cut2)`.
///
/// `child1` keeps `p1` outside the section and takes `p2` inside it;
/// conflicts are resolved through the section mapping. `child2` is the
/// mirror image.
pub fn pmx_crossover(
    p1: &[usize],
    p2: &[usize],
    cut1: usize,
    cut2: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = check_parents(p1, p2)?;
    if !(cut1 < cut2 && cut2 <= n) {
        return Err(Error::invalid(format!("bad cut points ({cut1}, {cut2}) for length {n}")));
    }
    Ok((pmx_child(p1, p2, cut1, cut2), pmx_child(p2, p1, cut1, cut2)))
}

fn pmx_child(outer: &[usize], inner: &[usize], cut1: usize, cut2: usize) -> Vec<usize> {
    use std::collections::HashMap;
    // value in the inner section -> value of outer at the same position
    let mapping: HashMap<usize, usize> = (cut1..cut2).map(|k| (inner[k], outer[k])).collect();
    let mut child = outer.to_vec();
    child[cut1..cut2].copy_from_slice(&inner[cut1..cut2]);
    for k in (0..cut1).chain(cut2..outer.len()) {
        let mut v = outer[k];
        while let Some(&m) = mapping.get(&v) {
            v = m;
        }
        child[k] = v;
    }
    child
}

/// PMX with uniformly drawn cut points.
pub fn pmx_random<R: Rng + ?Sized>(
    p1: &[usize],
    p2: &[usize],
    rng: &mut R,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = check_parents(p1, p2)?;
    if n < 2 {
        return Ok((p1.to_vec(), p2.to_vec()));
    }
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n);
    while b == a {
        b = rng.gen_range(0..n);
    }
    let (c1, c2) = if a < b { (a, b + 1) } else { (b, a + 1) };
    pmx_crossover(p1, p2, c1, c2)
}

/// Edge recombination. Parents are read as cyclic tours; the child follows
/// the union edge map, always stepping to the neighbour with the fewest
/// remaining edges (ties drawn from `rng`). When the map runs dry the next
/// node is a random unvisited one.
pub fn erx_crossover<R: Rng + ?Sized>(p1: &[usize], p2: &[usize], rng: &mut R) -> Result<Vec<usize>> {
    let n = check_parents(p1, p2)?;
    if n <= 2 {
        return Ok(p1.to_vec());
    }
    let max_id = *p1.iter().max().expect("nonempty");
    let mut edges: Vec<Vec<usize>> = vec![Vec::with_capacity(4); max_id + 1];
    for parent in [p1, p2] {
        for k in 0..n {
            let a = parent[k];
            let b = parent[(k + 1) % n];
            if !edges[a].contains(&b) {
                edges[a].push(b);
            }
            if !edges[b].contains(&a) {
                edges[b].push(a);
            }
        }
    }
    let mut visited = vec![false; max_id + 1];
    let mut child = Vec::with_capacity(n);
    let mut current = if rng.gen::<bool>() { p1[0] } else { p2[0] };
    let mut candidates = Vec::with_capacity(4);
    loop {
        child.push(current);
        visited[current] = true;
        for &nb in &edges[current].clone() {
            edges[nb].retain(|&x| x != current);
        }
        if child.len() == n {
            break;
        }
        let neighbours = std::mem::take(&mut edges[current]);
        let fewest = neighbours.iter().map(|&v| edges[v].len()).min();
        candidates.clear();
        if let Some(fewest) = fewest {
            candidates.extend(neighbours.iter().copied().filter(|&v| edges[v].len() == fewest));
        }
        current = match candidates.choose(rng) {
            Some(&v) => v,
            None => {
                let unvisited: Vec<usize> = p1.iter().copied().filter(|&v| !visited[v]).collect();
                *unvisited.choose(rng).expect("unvisited node remains")
            }
        };
    }
    Ok(child)
}

/// Reverses `tour[i..=j]`.
pub fn invert_segment(tour: &[usize], i: usize, j: usize) -> Vec<usize> {
    let mut out = tour.to_vec();
    if i < j && j < out.len() {
        out[i..=j].reverse();
    }
    out
}

/// Inversion mutation: with probability `p_mutation`, reverse a random
/// segment of at least two positions.
pub fn mutate<R: Rng + ?Sized>(tour: &[usize], p_mutation: f64, rng: &mut R) -> Vec<usize> {
    let n = tour.len();
    if n < 2 || p_mutation.is_nan() || rng.gen::<f64>() >= p_mutation {
        return tour.to_vec();
    }
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n);
    while b == a {
        b = rng.gen_range(0..n);
    }
    invert_segment(tour, a.min(b), a.max(b))
}

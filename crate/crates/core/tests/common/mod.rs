//! Independent oracles for the integration suites: a dense adjacency-matrix
//! eigensolver, brute-force maximum clique, and exhaustive minimal-base
//! search. These never touch the library's certified paths.
#![allow(dead_code)] // each test binary uses its own subset

use drg_core::graphs::Graph;
use drg_core::groups::{stabilizer_orbits, PermGroup};
use nalgebra::DMatrix;

/// Distinct eigenvalues of the explicit adjacency matrix, descending, with
/// values clustered at `tol`.
pub fn adjacency_spectrum_oracle(g: &Graph, tol: f64) -> Vec<f64> {
    let n = g.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let eig = nalgebra::SymmetricEigen::new(a);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mut distinct: Vec<f64> = Vec::new();
    for v in vals {
        match distinct.last() {
            Some(&last) if (last - v).abs() <= tol => {}
            _ => distinct.push(v),
        }
    }
    distinct
}

/// Brute-force maximum clique size.
pub fn max_clique_oracle(g: &Graph) -> usize {
    fn extend(g: &Graph, current: usize, cand: &[u32], best: &mut usize) {
        if current + cand.len() <= *best {
            return;
        }
        if cand.is_empty() {
            *best = (*best).max(current);
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if current + (cand.len() - i) <= *best {
                break;
            }
            let next: Vec<u32> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            extend(g, current + 1, &next, best);
        }
    }
    let mut best = 0;
    let all: Vec<u32> = (0..g.n() as u32).collect();
    extend(g, 0, &all, &mut best);
    best
}

/// Smallest base size by exhaustive subset search up to `max_size`.
pub fn minimal_base_size_oracle(group: &PermGroup, max_size: usize) -> Option<usize> {
    let n = group.degree as u32;
    fn subsets(n: u32, size: usize, from: u32, current: &mut Vec<u32>, found: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if current.len() == size {
            return found(current);
        }
        for v in from..n {
            current.push(v);
            if subsets(n, size, v + 1, current, found) {
                return true;
            }
            current.pop();
        }
        false
    }
    for size in 1..=max_size {
        let mut current = Vec::new();
        let mut hit = false;
        subsets(n, size, 0, &mut current, &mut |sigma| {
            if stabilizer_orbits(group, sigma).fixing.len() == 1 {
                hit = true;
                true
            } else {
                false
            }
        });
        if hit {
            return Some(size);
        }
    }
    None
}

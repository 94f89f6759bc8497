//! Eigenvalues of the intersection matrix and the spectral quantities the
//! certificates consume: theta (second largest), m (smallest), the zero-weight
//! spectral radius xi = max(theta, -m), the Delsarte clique cap 1 - k/m and the
//! eigenvalue-gap bound theta <= k(1 - 1/(8 d^2)).
//!
//! Eigenvalues are computed from the similar symmetric tridiagonal matrix with
//! off-diagonal entries sqrt(b_i * c_{i+1}); integer eigenvalues are always
//! confirmed through the characteristic polynomial in exact arithmetic, never
//! by floating comparison alone.

use crate::arrays::IntersectionArray;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Relative tolerance for matching the principal eigenvalue to `k` and for
/// spectral comparisons in certificates.
pub const MATCH_TOL: f64 = 1e-9;
/// Relative tolerance below which two eigenvalues are considered degenerate.
pub const DISTINCT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectrumError {
    #[error("degenerate spectrum: eigenvalues {a} and {b} closer than 1e-6*k")]
    DegenerateSpectrum { a: f64, b: f64 },
    #[error("principal eigenvalue {got} does not match valency {k}")]
    PrincipalMismatch { got: f64, k: u64 },
    #[error("tridiagonal eigensolver failed to converge")]
    NoConvergence,
    #[error("eigenvalue gap violation: theta = {theta} exceeds k(1 - 1/(8d^2)) = {bound}")]
    GapViolation { theta: f64, bound: f64 },
}

/// The tridiagonal intersection matrix: row `i` holds `(c_i, a_i, b_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TridiagonalMatrix {
    /// Subdiagonal `c_1 ... c_d`.
    pub sub: Vec<u64>,
    /// Diagonal `a_0 ... a_d`.
    pub diag: Vec<u64>,
    /// Superdiagonal `b_0 ... b_{d-1}`.
    pub sup: Vec<u64>,
}

impl TridiagonalMatrix {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Characteristic polynomial `det(M - z I)` evaluated exactly at an
    /// integer, by the three-term minor recurrence.
    pub fn char_poly_at(&self, z: &BigInt) -> BigInt {
        let n = self.size();
        let mut prev = BigInt::from(1);
        let mut cur = BigInt::from(self.diag[0]) - z;
        for i in 1..n {
            let head = (BigInt::from(self.diag[i]) - z) * &cur;
            let off = BigInt::from(self.sub[i - 1]) * BigInt::from(self.sup[i - 1]);
            let next = head - off * &prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// The d+1 distinct eigenvalues of a distance-regular graph, descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Second largest eigenvalue.
    pub theta: f64,
    /// Smallest eigenvalue; always negative.
    pub m: f64,
    /// Zero-weight spectral radius `max(theta, -m)`.
    pub xi: f64,
    /// Exact integer value of `m` when it is a root of the characteristic
    /// polynomial.
    pub m_integer: Option<BigInt>,
    /// Exact integer value of `theta`, when integral.
    pub theta_integer: Option<BigInt>,
}

/// The intersection matrix of a valid array.
pub fn intersection_matrix(arr: &IntersectionArray) -> TridiagonalMatrix {
    let d = arr.d();
    TridiagonalMatrix {
        sub: arr.c().to_vec(),
        diag: (0..=d).map(|i| arr.a_at(i)).collect(),
        sup: arr.b().to_vec(),
    }
}

/// Eigenvalues of the intersection matrix via the symmetrized tridiagonal form.
pub fn spectrum(arr: &IntersectionArray) -> Result<Spectrum, SpectrumError> {
    let m = intersection_matrix(arr);
    let n = m.size();
    let mut diag: Vec<f64> = m.diag.iter().map(|&x| x as f64).collect();
    let mut off: Vec<f64> = (0..n - 1)
        .map(|i| ((m.sup[i] as f64) * (m.sub[i] as f64)).sqrt())
        .collect();
    off.push(0.0);
    sym_tridiag_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let k = arr.k();
    let kf = k as f64;
    if (diag[0] - kf).abs() > MATCH_TOL * kf {
        return Err(SpectrumError::PrincipalMismatch { got: diag[0], k });
    }
    diag[0] = kf;
    // Snap eigenvalues with exactly confirmed integer values.
    for x in diag.iter_mut().skip(1) {
        if let Some(z) = exact_integer_root(&m, *x) {
            *x = z.to_f64().unwrap();
        }
    }
    for w in diag.windows(2) {
        if w[0] - w[1] < DISTINCT_TOL * kf {
            return Err(SpectrumError::DegenerateSpectrum { a: w[0], b: w[1] });
        }
    }
    let theta = diag[1];
    let smallest = diag[n - 1];
    let spec = Spectrum {
        theta,
        m: smallest,
        xi: theta.max(-smallest),
        m_integer: exact_integer_root(&m, smallest),
        theta_integer: exact_integer_root(&m, theta),
        eigenvalues: diag,
    };
    debug_assert!(spec.m < 0.0);
    Ok(spec)
}

/// If `x` lies within 1e-6 of an integer z and z is exactly a root of the
/// characteristic polynomial, returns z.
fn exact_integer_root(m: &TridiagonalMatrix, x: f64) -> Option<BigInt> {
    let rounded = x.round();
    if (x - rounded).abs() >= 1e-6 {
        return None;
    }
    let z = BigInt::from(rounded as i64);
    if m.char_poly_at(&z).is_zero() {
        Some(z)
    } else {
        None
    }
}

/// Lemma-backed check: the smallest eigenvalue of a Delsarte-geometric graph
/// is an integer. Returns the exact value iff the nearest integer is a root.
pub fn smallest_eigenvalue_integer(arr: &IntersectionArray, spec: &Spectrum) -> Option<BigInt> {
    exact_integer_root(&intersection_matrix(arr), spec.m)
}

/// The Delsarte clique bound `1 - k/m`; exact rational when m is integral.
#[derive(Debug, Clone)]
pub struct DelsarteBound {
    pub exact: Option<BigRational>,
    pub approx: f64,
}

impl DelsarteBound {
    /// Largest integer clique size permitted by the bound.
    pub fn clique_cap(&self) -> u64 {
        match &self.exact {
            Some(r) => r.floor().to_integer().to_u64().unwrap_or(0),
            None => (self.approx + 1e-9).floor() as u64,
        }
    }

    /// Whether the bound itself is an integer (a necessary condition for a
    /// Delsarte clique geometry).
    pub fn integral_size(&self) -> Option<u64> {
        let r = self.exact.as_ref()?;
        if r.is_integer() {
            r.to_integer().to_u64()
        } else {
            None
        }
    }
}

pub fn delsarte_bound(arr: &IntersectionArray, spec: &Spectrum) -> DelsarteBound {
    let k = arr.k();
    let exact = spec.m_integer.as_ref().map(|m| {
        BigRational::from_integer(BigInt::from(1)) - BigRational::new(BigInt::from(k), m.clone())
    });
    let approx = match &exact {
        Some(r) => r.to_f64().unwrap(),
        None => 1.0 - k as f64 / spec.m,
    };
    DelsarteBound { exact, approx }
}

/// Slack report for `theta <= k(1 - 1/(8 d^2))`.
#[derive(Debug, Clone, Copy)]
pub struct GapSlack {
    pub theta: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Asserts the expansion-derived eigenvalue gap; a violation signals a
/// non-DRG spectrum.
pub fn check_eigen_gap(arr: &IntersectionArray, spec: &Spectrum) -> Result<GapSlack, SpectrumError> {
    let k = arr.k() as f64;
    let d = arr.d() as f64;
    let bound = k * (1.0 - 1.0 / (8.0 * d * d));
    if spec.theta <= bound + MATCH_TOL * k {
        Ok(GapSlack {
            theta: spec.theta,
            bound,
            slack: bound - spec.theta,
        })
    } else {
        Err(SpectrumError::GapViolation {
            theta: spec.theta,
            bound,
        })
    }
}

/// Implicit-shift QL iteration for a symmetric tridiagonal matrix; eigenvalues
/// land in `d`. `e[0..n-1]` is the subdiagonal, `e[n-1]` scratch.
fn sym_tridiag_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<(), SpectrumError> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm < n - 1 {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(SpectrumError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            // Wilkinson-style shift; SIGN(r, g) keeps the larger denominator.
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[mm] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..mm).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
        IntersectionArray::new(b.to_vec(), c.to_vec()).unwrap()
    }

    fn assert_close(xs: &[f64], ys: &[f64], tol: f64) {
        assert_eq!(xs.len(), ys.len());
        for (x, y) in xs.iter().zip(ys) {
            assert!((x - y).abs() < tol, "{xs:?} vs {ys:?}");
        }
    }

    #[test]
    fn petersen_matrix_and_spectrum() {
        let a = arr(&[3, 2], &[1, 1]);
        let m = intersection_matrix(&a);
        assert_eq!(m.diag, vec![0, 0, 2]);
        assert_eq!(m.sub, vec![1, 1]);
        assert_eq!(m.sup, vec![3, 2]);
        let s = spectrum(&a).unwrap();
        assert_close(&s.eigenvalues, &[3.0, 1.0, -2.0], 1e-9);
        assert_eq!(s.theta, 1.0);
        assert_eq!(s.xi, 2.0);
        assert_eq!(s.m_integer, Some(BigInt::from(-2)));
        assert_eq!(s.theta_integer, Some(BigInt::from(1)));
    }

    #[test]
    fn cube_spectrum_is_symmetric() {
        let a = arr(&[3, 2, 1], &[1, 2, 3]);
        let m = intersection_matrix(&a);
        assert_eq!(m.diag, vec![0, 0, 0, 0]);
        let s = spectrum(&a).unwrap();
        assert_close(&s.eigenvalues, &[3.0, 1.0, -1.0, -3.0], 1e-9);
    }

    #[test]
    fn johnson63_spectrum() {
        let a = arr(&[9, 4, 1], &[1, 4, 9]);
        let m = intersection_matrix(&a);
        assert_eq!(m.diag, vec![0, 4, 4, 0]);
        let s = spectrum(&a).unwrap();
        assert_close(&s.eigenvalues, &[9.0, 3.0, -1.0, -3.0], 1e-9);
        assert_eq!(s.xi, 3.0);
        assert_eq!(s.m_integer, Some(BigInt::from(-3)));
    }

    #[test]
    fn charpoly_roots_petersen() {
        let m = intersection_matrix(&arr(&[3, 2], &[1, 1]));
        for z in [3i64, 1, -2] {
            assert!(m.char_poly_at(&BigInt::from(z)).is_zero());
        }
        assert!(!m.char_poly_at(&BigInt::from(0)).is_zero());
    }

    #[test]
    fn irrational_smallest_eigenvalue_yields_none() {
        // Icosahedron: spectrum 5, sqrt5, -1, -sqrt5.
        let a = arr(&[5, 2, 1], &[1, 2, 5]);
        let s = spectrum(&a).unwrap();
        assert_eq!(s.m_integer, None);
        assert!((s.m + 5f64.sqrt()).abs() < 1e-9);
        assert_eq!(smallest_eigenvalue_integer(&a, &s), None);
    }

    #[test]
    fn delsarte_examples() {
        let j = arr(&[9, 4, 1], &[1, 4, 9]);
        let sj = spectrum(&j).unwrap();
        let b = delsarte_bound(&j, &sj);
        assert_eq!(b.clique_cap(), 4);
        assert_eq!(b.integral_size(), Some(4));

        let h = arr(&[6, 4, 2], &[1, 2, 3]);
        let sh = spectrum(&h).unwrap();
        assert_eq!(delsarte_bound(&h, &sh).clique_cap(), 3);

        let p = arr(&[3, 2], &[1, 1]);
        let sp = spectrum(&p).unwrap();
        let bp = delsarte_bound(&p, &sp);
        assert!((bp.approx - 2.5).abs() < 1e-12);
        assert_eq!(bp.clique_cap(), 2);
        assert_eq!(bp.integral_size(), None);
    }

    #[test]
    fn eigen_gap_examples() {
        for (b, c) in [
            (vec![3u64, 2], vec![1u64, 1]),
            (vec![6, 4, 2], vec![1, 2, 3]),
            (vec![9, 4, 1], vec![1, 4, 9]),
        ] {
            let a = IntersectionArray::new(b, c).unwrap();
            let s = spectrum(&a).unwrap();
            check_eigen_gap(&a, &s).unwrap();
        }
        let p = arr(&[3, 2], &[1, 1]);
        let s = spectrum(&p).unwrap();
        let slack = check_eigen_gap(&p, &s).unwrap();
        assert!((slack.bound - 3.0 * (1.0 - 1.0 / 32.0)).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_diameter_one() {
        let a = arr(&[4], &[1]);
        let s = spectrum(&a).unwrap();
        assert_close(&s.eigenvalues, &[4.0, -1.0], 1e-12);
        assert_eq!(s.m_integer, Some(BigInt::from(-1)));
    }
}

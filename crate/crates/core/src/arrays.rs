//! Intersection arrays: validation, derived parameters, imprimitivity detection
//! and the catalog families (Johnson, Hamming, crown, cycle).
//!
//! All parameter arithmetic is exact; sphere sizes and vertex counts are
//! arbitrary-precision integers, ratios are compared by cross-multiplication.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Wire format for an intersection array: `{"d": int, "b": [ints], "c": [ints]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawArray {
    pub d: usize,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

/// A validated intersection array `(b_0, ..., b_{d-1}; c_1, ..., c_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArrayViolation {
    #[error("length mismatch: b has {b_len} entries, c has {c_len}, both must equal d >= 1")]
    LengthMismatch { b_len: usize, c_len: usize },
    #[error("monotonicity violation in sequence {seq} at index {index}")]
    MonotonicityViolation { seq: char, index: usize },
    #[error("a_{index} = k - b_{index} - c_{index} is negative")]
    NegativeA { index: usize },
    #[error("sphere size k_{index} is not a positive integer")]
    NonIntegralSphereSize { index: usize },
    #[error("parity violation: n*k_{index} is odd")]
    ParityViolation { index: usize },
    #[error("2*lambda = {two_lambda} exceeds k + mu = {k_plus_mu}")]
    MuLambdaViolation { two_lambda: u64, k_plus_mu: u64 },
}

/// Report listing every violated invariant of a rejected array.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<ArrayViolation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid intersection array:")?;
        for v in &self.violations {
            write!(f, " [{v}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArraysError {
    #[error("valency two: cycles are handled as a special family")]
    ValencyTwo,
    #[error("family parameter out of range: {0}")]
    ParameterOutOfRange(String),
}

/// Exact derived parameters of a valid array.
#[derive(Debug, Clone)]
pub struct DerivedParams {
    pub k: u64,
    /// Sphere sizes `k_0 = 1, k_1, ..., k_d`.
    pub k_i: Vec<BigInt>,
    pub n: BigInt,
    /// `lambda = a_1` (0 when d = 1 is impossible: a_1 = k - 1 there).
    pub lambda: u64,
    /// `mu = c_2`; absent for diameter-one arrays.
    pub mu: Option<u64>,
    /// Largest sphere size over `i >= 1`.
    pub k_max: BigInt,
    /// Non-fatal observations, e.g. `k_1 > k_2`.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImprimitivityFlags {
    pub bipartite: bool,
    pub antipodal: bool,
    pub primitive: bool,
}

impl IntersectionArray {
    /// Validates raw sequences against every parameter constraint: the b/c
    /// monotone chains, `a_i >= 0`, integral sphere sizes, handshake parity on
    /// every distance relation, and `2*lambda <= k + mu` (which holds in every
    /// distance-regular graph of diameter at least two and is therefore a
    /// feasibility requirement, not just a theorem to observe).
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self, ValidationReport> {
        let mut violations = Vec::new();
        let d = b.len();
        if d == 0 || c.len() != d {
            return Err(ValidationReport {
                violations: vec![ArrayViolation::LengthMismatch {
                    b_len: d,
                    c_len: c.len(),
                }],
            });
        }
        let k = b[0];
        if k == 0 {
            violations.push(ArrayViolation::MonotonicityViolation { seq: 'b', index: 0 });
        }
        if d >= 2 && b[1] >= k {
            violations.push(ArrayViolation::MonotonicityViolation { seq: 'b', index: 1 });
        }
        for i in 1..d.saturating_sub(1) {
            if b[i + 1] > b[i] {
                violations.push(ArrayViolation::MonotonicityViolation { seq: 'b', index: i + 1 });
            }
        }
        if b[d - 1] == 0 {
            violations.push(ArrayViolation::MonotonicityViolation { seq: 'b', index: d - 1 });
        }
        if c[0] != 1 {
            violations.push(ArrayViolation::MonotonicityViolation { seq: 'c', index: 1 });
        }
        for i in 0..d - 1 {
            if c[i + 1] < c[i] {
                violations.push(ArrayViolation::MonotonicityViolation { seq: 'c', index: i + 2 });
            }
        }
        if c[d - 1] > k {
            violations.push(ArrayViolation::MonotonicityViolation { seq: 'c', index: d });
        }
        // a_i = k - b_i - c_i, with b_d = 0 and c_0 = 0.
        for i in 1..=d {
            let bi = if i < d { b[i] } else { 0 };
            let ci = c[i - 1];
            if (bi as u128) + (ci as u128) > k as u128 {
                violations.push(ArrayViolation::NegativeA { index: i });
            }
        }
        // Sphere sizes and parity.
        let mut k_i = vec![BigInt::one()];
        let mut integral = true;
        for i in 1..=d {
            let num = k_i[i - 1].clone() * BigInt::from(b[i - 1]);
            let den = BigInt::from(c[i - 1]);
            if c[i - 1] == 0 || !(num.clone() % &den).is_zero() {
                violations.push(ArrayViolation::NonIntegralSphereSize { index: i });
                integral = false;
                break;
            }
            k_i.push(num / den);
        }
        if integral {
            let n: BigInt = BigInt::one() + k_i[1..].iter().sum::<BigInt>();
            for (i, ki) in k_i.iter().enumerate().skip(1) {
                if ((ki * &n) % BigInt::from(2)).is_zero() {
                    continue;
                }
                violations.push(ArrayViolation::ParityViolation { index: i });
            }
        }
        if d >= 2 && k > b[1] {
            let lambda = k - b[1] - 1;
            let mu = c[1];
            if 2 * lambda as u128 > (k + mu) as u128 {
                violations.push(ArrayViolation::MuLambdaViolation {
                    two_lambda: 2 * lambda,
                    k_plus_mu: k + mu,
                });
            }
        }
        if violations.is_empty() {
            Ok(IntersectionArray { b, c })
        } else {
            Err(ValidationReport { violations })
        }
    }

    pub fn from_raw(raw: &RawArray) -> Result<Self, ValidationReport> {
        if raw.d != raw.b.len() || raw.d != raw.c.len() {
            return Err(ValidationReport {
                violations: vec![ArrayViolation::LengthMismatch {
                    b_len: raw.b.len(),
                    c_len: raw.c.len(),
                }],
            });
        }
        Self::new(raw.b.clone(), raw.c.clone())
    }

    pub fn to_raw(&self) -> RawArray {
        RawArray {
            d: self.d(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    pub fn d(&self) -> usize {
        self.b.len()
    }

    pub fn k(&self) -> u64 {
        self.b[0]
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    /// `b_i` with the convention `b_d = 0`.
    pub fn b_at(&self, i: usize) -> u64 {
        if i < self.d() {
            self.b[i]
        } else {
            0
        }
    }

    /// `c_i` for `1 <= i <= d`, with `c_0 = 0`.
    pub fn c_at(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = k - b_i - c_i` for `0 <= i <= d`.
    pub fn a_at(&self, i: usize) -> u64 {
        self.k() - self.b_at(i) - self.c_at(i)
    }

    pub fn lambda(&self) -> u64 {
        self.a_at(1)
    }

    pub fn mu(&self) -> Option<u64> {
        if self.d() >= 2 {
            Some(self.c[1])
        } else {
            None
        }
    }

    /// Exact derived parameters; re-verifies the monotone ratio chain
    /// `k/c_2 > k_2/k_1 >= ... >= k_d/k_{d-1}` by cross-multiplication.
    pub fn derive(&self) -> DerivedParams {
        let d = self.d();
        let mut k_i = vec![BigInt::one()];
        for i in 1..=d {
            let next = k_i[i - 1].clone() * BigInt::from(self.b[i - 1]) / BigInt::from(self.c[i - 1]);
            k_i.push(next);
        }
        let n: BigInt = BigInt::one() + k_i[1..].iter().sum::<BigInt>();
        let k_max = k_i[1..].iter().max().cloned().unwrap();
        debug_assert!(self.ratio_chain_holds());
        let mut warnings = Vec::new();
        if d >= 2 && k_i[1] > k_i[2] {
            warnings.push(format!("k_1 = {} exceeds k_2 = {}", k_i[1], k_i[2]));
        }
        DerivedParams {
            k: self.k(),
            lambda: self.lambda(),
            mu: self.mu(),
            n,
            k_max,
            k_i,
            warnings,
        }
    }

    /// The chain `k/c_2 > b_1/c_2 = k_2/k_1 >= k_3/k_2 >= ... >= k_d/k_{d-1}`,
    /// compared as exact cross-multiplied integers. `k_{i+1}/k_i = b_i/c_{i+1}`.
    pub fn ratio_chain_holds(&self) -> bool {
        let d = self.d();
        if d < 2 {
            return true;
        }
        if self.k() <= self.b[1] {
            return false;
        }
        for i in 1..d - 1 {
            // b_i / c_{i+1} >= b_{i+1} / c_{i+2}
            let lhs = self.b[i] as u128 * self.c[i + 1] as u128;
            let rhs = self.b[i + 1] as u128 * self.c[i] as u128;
            if lhs < rhs {
                return false;
            }
        }
        true
    }

    /// Array-level imprimitivity flags: bipartite iff all `a_i = 0`; antipodal
    /// iff `b_i = c_{d-i}` for all `i != floor(d/2)`. Requires valency > 2.
    pub fn imprimitivity(&self) -> Result<ImprimitivityFlags, ArraysError> {
        if self.k() <= 2 {
            return Err(ArraysError::ValencyTwo);
        }
        let d = self.d();
        let bipartite = (1..=d).all(|i| self.a_at(i) == 0);
        let antipodal = d >= 2
            && (0..d)
                .filter(|&i| i != d / 2)
                .all(|i| self.b_at(i) == self.c_at(d - i));
        Ok(ImprimitivityFlags {
            bipartite,
            antipodal,
            primitive: !bipartite && !antipodal,
        })
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ";")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntersectionArray {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawArray::deserialize(de)?;
        IntersectionArray::from_raw(&raw).map_err(serde::de::Error::custom)
    }
}

/// Parametrized catalog families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    Johnson { s: u64, d: u64 },
    Hamming { d: u64, s: u64 },
    Crown { m: u64 },
    Cycle { n: u64 },
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Johnson { s, d } => write!(f, "johnson({s},{d})"),
            FamilyTag::Hamming { d, s } => write!(f, "hamming({d},{s})"),
            FamilyTag::Crown { m } => write!(f, "crown({m})"),
            FamilyTag::Cycle { n } => write!(f, "cycle({n})"),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The intersection array of a catalog family member.
///
/// Johnson `J(s,d)`: `b_i = (d-i)(s-d-i)`, `c_i = i^2`, valency `d(s-d)`.
/// Hamming `H(d,s)`: `b_i = (d-i)(s-1)`, `c_i = i`, valency `d(s-1)`.
/// Crown(m) is `K_{m,m}` minus a perfect matching: `{m-1, m-2, 1; 1, m-2, m-1}`.
pub fn family_array(tag: FamilyTag) -> Result<IntersectionArray, ArraysError> {
    let arr = match tag {
        FamilyTag::Johnson { s, d } => {
            if d < 2 || s < 2 * d {
                return Err(ArraysError::ParameterOutOfRange(format!(
                    "johnson needs d >= 2 and s >= 2d, got s={s} d={d}"
                )));
            }
            let b: Vec<u64> = (0..d).map(|i| (d - i) * (s - d - i)).collect();
            let c: Vec<u64> = (1..=d).map(|i| i * i).collect();
            IntersectionArray::new(b, c)
        }
        FamilyTag::Hamming { d, s } => {
            if d < 2 || s < 2 {
                return Err(ArraysError::ParameterOutOfRange(format!(
                    "hamming needs d >= 2 and s >= 2, got d={d} s={s}"
                )));
            }
            let b: Vec<u64> = (0..d).map(|i| (d - i) * (s - 1)).collect();
            let c: Vec<u64> = (1..=d).collect();
            IntersectionArray::new(b, c)
        }
        FamilyTag::Crown { m } => {
            if m < 3 {
                return Err(ArraysError::ParameterOutOfRange(format!(
                    "crown needs m >= 3, got m={m}"
                )));
            }
            IntersectionArray::new(vec![m - 1, m - 2, 1], vec![1, m - 2, m - 1])
        }
        FamilyTag::Cycle { n } => {
            if n < 3 {
                return Err(ArraysError::ParameterOutOfRange(format!(
                    "cycle needs n >= 3, got n={n}"
                )));
            }
            let d = (n / 2) as usize;
            let mut b = vec![1u64; d];
            b[0] = 2;
            let mut c = vec![1u64; d];
            if n % 2 == 0 {
                c[d - 1] = 2;
            }
            IntersectionArray::new(b, c)
        }
    };
    Ok(arr.expect("family generator produced an invalid array"))
}

/// All catalog tags whose generated array equals the input, in a fixed order
/// (Johnson, Hamming, Crown, Cycle). An empty result means "no catalog family".
pub fn match_family(arr: &IntersectionArray) -> Vec<FamilyTag> {
    let mut tags = Vec::new();
    let d = self_d_u64(arr);
    let k = arr.k();
    // Johnson: k = d(s-d) => s = k/d + d, s >= 2d.
    if d >= 2 && k.is_multiple_of(d) {
        let s = k / d + d;
        if s >= 2 * d {
            let tag = FamilyTag::Johnson { s, d };
            if family_array(tag).as_ref() == Ok(arr) {
                tags.push(tag);
            }
        }
    }
    // Hamming: k = d(s-1) => s = k/d + 1.
    if d >= 2 && k.is_multiple_of(d) {
        let s = k / d + 1;
        if s >= 2 {
            let tag = FamilyTag::Hamming { d, s };
            if family_array(tag).as_ref() == Ok(arr) {
                tags.push(tag);
            }
        }
    }
    if d == 3 && k >= 2 {
        let tag = FamilyTag::Crown { m: k + 1 };
        if family_array(tag).as_ref() == Ok(arr) {
            tags.push(tag);
        }
    }
    if k == 2 {
        // n is small for cycles; d = floor(n/2) gives two candidates.
        for n in [2 * d, 2 * d + 1] {
            if n >= 3 {
                let tag = FamilyTag::Cycle { n };
                if family_array(tag).as_ref() == Ok(arr) {
                    tags.push(tag);
                }
            }
        }
    }
    tags
}

fn self_d_u64(arr: &IntersectionArray) -> u64 {
    arr.d() as u64
}

/// Exhaustively enumerates every valid intersection array with `k <= max_k`,
/// `2 <= d <= max_d` and (optionally) `n <= max_n`.
pub fn enumerate_valid_arrays(max_k: u64, max_d: usize, max_n: Option<u64>) -> Vec<IntersectionArray> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        let mut b = vec![0u64; d];
        let mut c = vec![0u64; d];
        enumerate_b(&mut b, &mut c, 0, max_k, d, max_n, &mut out);
    }
    out
}

fn enumerate_b(
    b: &mut Vec<u64>,
    c: &mut Vec<u64>,
    i: usize,
    max_k: u64,
    d: usize,
    max_n: Option<u64>,
    out: &mut Vec<IntersectionArray>,
) {
    if i == d {
        c[0] = 1;
        enumerate_c(b, c, 1, d, max_n, out);
        return;
    }
    let (lo, hi) = if i == 0 {
        (2, max_k)
    } else if i == 1 {
        (1, b[0] - 1)
    } else {
        (1, b[i - 1])
    };
    for v in lo..=hi {
        b[i] = v;
        enumerate_b(b, c, i + 1, max_k, d, max_n, out);
    }
}

fn enumerate_c(
    b: &mut Vec<u64>,
    c: &mut Vec<u64>,
    i: usize,
    d: usize,
    max_n: Option<u64>,
    out: &mut Vec<IntersectionArray>,
) {
    if i == d {
        if let Ok(arr) = IntersectionArray::new(b.clone(), c.clone()) {
            if let Some(cap) = max_n {
                if arr.derive().n > BigInt::from(cap) {
                    return;
                }
            }
            out.push(arr);
        }
        return;
    }
    for v in c[i - 1]..=b[0] {
        c[i] = v;
        enumerate_c(b, c, i + 1, d, max_n, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
        IntersectionArray::new(b.to_vec(), c.to_vec()).unwrap()
    }

    #[test]
    fn cube_array_is_valid() {
        let a = arr(&[3, 2, 1], &[1, 2, 3]);
        let p = a.derive();
        assert_eq!(p.n, BigInt::from(8));
        assert_eq!(p.lambda, 0);
        assert_eq!(p.mu, Some(2));
    }

    #[test]
    fn monotonicity_violation_at_b1() {
        let err = IntersectionArray::new(vec![3, 3], vec![1, 1]).unwrap_err();
        assert!(err
            .violations
            .contains(&ArrayViolation::MonotonicityViolation { seq: 'b', index: 1 }));
    }

    #[test]
    fn johnson63_derivation() {
        let a = arr(&[9, 4, 1], &[1, 4, 9]);
        let p = a.derive();
        assert_eq!(p.n, BigInt::from(20));
        assert_eq!(p.k, 9);
        assert_eq!(p.lambda, 4);
        assert_eq!(p.mu, Some(4));
        assert_eq!(p.k_i[1..], [BigInt::from(9), BigInt::from(9), BigInt::from(1)]);
    }

    #[test]
    fn hamming33_derivation() {
        let p = arr(&[6, 4, 2], &[1, 2, 3]).derive();
        assert_eq!(p.n, BigInt::from(27));
        assert_eq!(p.lambda, 1);
        assert_eq!(p.mu, Some(2));
        assert_eq!(p.k_max, BigInt::from(12));
    }

    #[test]
    fn petersen_derivation() {
        let p = arr(&[3, 2], &[1, 1]).derive();
        assert_eq!(p.n, BigInt::from(10));
        assert_eq!(p.lambda, 0);
        assert_eq!(p.mu, Some(1));
    }

    #[test]
    fn mulambda_is_a_feasibility_constraint() {
        // SRG parameters (25, 12, 10, 1) satisfy every basic chain condition
        // but violate 2*lambda <= k + mu, so no distance-regular graph exists.
        let err = IntersectionArray::new(vec![12, 1], vec![1, 1]).unwrap_err();
        assert!(matches!(
            err.violations[0],
            ArrayViolation::MuLambdaViolation { two_lambda: 20, k_plus_mu: 13 }
        ));
    }

    #[test]
    fn imprimitivity_flags() {
        assert_eq!(
            arr(&[3, 2, 1], &[1, 2, 3]).imprimitivity().unwrap(),
            ImprimitivityFlags { bipartite: true, antipodal: true, primitive: false }
        );
        assert_eq!(
            arr(&[3, 2], &[1, 1]).imprimitivity().unwrap(),
            ImprimitivityFlags { bipartite: false, antipodal: false, primitive: true }
        );
        // J(6,3) is antipodal: b_i = c_{3-i} for i != 1.
        assert_eq!(
            arr(&[9, 4, 1], &[1, 4, 9]).imprimitivity().unwrap(),
            ImprimitivityFlags { bipartite: false, antipodal: true, primitive: false }
        );
        assert_eq!(
            arr(&[2, 1], &[1, 1]).imprimitivity(),
            Err(ArraysError::ValencyTwo)
        );
    }

    #[test]
    fn family_arrays() {
        assert_eq!(
            family_array(FamilyTag::Johnson { s: 6, d: 3 }).unwrap(),
            arr(&[9, 4, 1], &[1, 4, 9])
        );
        assert_eq!(
            family_array(FamilyTag::Hamming { d: 3, s: 3 }).unwrap(),
            arr(&[6, 4, 2], &[1, 2, 3])
        );
        assert_eq!(
            family_array(FamilyTag::Crown { m: 4 }).unwrap(),
            arr(&[3, 2, 1], &[1, 2, 3])
        );
        assert_eq!(
            family_array(FamilyTag::Cycle { n: 6 }).unwrap(),
            arr(&[2, 1, 1], &[1, 1, 2])
        );
        assert_eq!(
            family_array(FamilyTag::Cycle { n: 5 }).unwrap(),
            arr(&[2, 1], &[1, 1])
        );
        assert!(family_array(FamilyTag::Johnson { s: 5, d: 3 }).is_err());
    }

    #[test]
    fn match_family_examples() {
        assert_eq!(
            match_family(&arr(&[3, 2, 1], &[1, 2, 3])),
            vec![FamilyTag::Hamming { d: 3, s: 2 }, FamilyTag::Crown { m: 4 }]
        );
        assert_eq!(
            match_family(&arr(&[9, 4, 1], &[1, 4, 9])),
            vec![FamilyTag::Johnson { s: 6, d: 3 }]
        );
        assert!(match_family(&arr(&[5, 4], &[1, 2])).is_empty());
        assert_eq!(
            match_family(&arr(&[2, 1], &[1, 1])),
            vec![FamilyTag::Cycle { n: 5 }]
        );
    }

    #[test]
    fn family_roundtrip_regenerates_array() {
        for tag in [
            FamilyTag::Johnson { s: 7, d: 3 },
            FamilyTag::Hamming { d: 4, s: 2 },
            FamilyTag::Crown { m: 6 },
            FamilyTag::Cycle { n: 9 },
        ] {
            let a = family_array(tag).unwrap();
            for t in match_family(&a) {
                assert_eq!(family_array(t).unwrap(), a);
            }
            assert!(match_family(&a).contains(&tag));
        }
    }

    #[test]
    fn serde_roundtrip() {
        let a = arr(&[9, 4, 1], &[1, 4, 9]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"d":3,"b":[9,4,1],"c":[1,4,9]}"#);
        let back: IntersectionArray = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<IntersectionArray>(r#"{"d":2,"b":[3,3],"c":[1,1]}"#).is_err());
    }

    #[test]
    fn enumeration_finds_known_arrays() {
        let all = enumerate_valid_arrays(9, 3, Some(30));
        assert!(all.contains(&arr(&[3, 2], &[1, 1])));
        assert!(all.contains(&arr(&[9, 4, 1], &[1, 4, 9])));
        assert!(all.contains(&arr(&[5, 2, 1], &[1, 2, 5])));
        // every enumerated array re-validates to the same object
        for a in &all {
            assert_eq!(
                IntersectionArray::new(a.b().to_vec(), a.c().to_vec()).unwrap(),
                *a
            );
        }
    }
}

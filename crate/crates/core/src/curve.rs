//! Kummer curves y^m = prod (x - alpha_i)^{lambda_i} and the integer
//! arithmetic their gap computations run on.
//!
//! A curve is stored as the exponent `m` together with the multiplicities
//! `lambda_1..lambda_r` of the finite branch places; the place at infinity
//! carries `lambda_0 = -sum(lambda_i)`, so all multiplicities sum to zero.
//! The roots `alpha_i` themselves never enter any formula here and are not
//! stored; they are assumed pairwise distinct.

use std::fmt;

use crate::error::{Error, Result};

/// Floor division rounding toward negative infinity. `b` must be positive.
pub fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Ceiling division. `b` must be positive.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -(-a).div_euclid(b)
}

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a.rem_euclid(b));
    }
    a
}

/// Inverse of `a` modulo `m`, normalized into `[1, m-1]`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::NotInvertible { value: a, modulus: m });
    }
    // extended Euclid on (a mod m, m)
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { value: a, modulus: m });
    }
    Ok(old_s.rem_euclid(m))
}

/// One ramified place of the extension: the place at infinity or the
/// finite place above x = alpha_i, named by its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceRef {
    Infinity,
    Finite(usize),
}

impl fmt::Display for PlaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceRef::Infinity => write!(f, "inf"),
            PlaceRef::Finite(i) => write!(f, "{i}"),
        }
    }
}

/// The data of a Kummer extension that gap computations consume: the
/// exponent and the multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerCurve {
    m: i64,
    lambdas: Vec<i64>,
    lambda0: i64,
}

impl KummerCurve {
    /// Builds a curve from the exponent `m >= 2` and the multiplicities of
    /// the finite branch places. Rejects zero multiplicities, parameter
    /// sizes that could overflow 64-bit intermediates, and multiplicity
    /// vectors under which no place is totally ramified (such data does not
    /// define a degree-m extension of the intended shape).
    pub fn new(m: i64, lambdas: Vec<i64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::ExponentTooSmall(m));
        }
        if lambdas.is_empty() {
            return Err(Error::NoMultiplicities);
        }
        if let Some(i) = lambdas.iter().position(|&l| l == 0) {
            return Err(Error::ZeroMultiplicity(i + 1));
        }
        let sum: i128 = lambdas.iter().map(|&l| l as i128).sum();
        let lambda0 = i64::try_from(-sum).map_err(|_| Error::Overflow)?;
        let max_abs = lambdas
            .iter()
            .map(|l| l.unsigned_abs())
            .chain([lambda0.unsigned_abs()])
            .max()
            .unwrap();
        let r = lambdas.len() as i64;
        // cheap guard: every product formed downstream is bounded by
        // m * max|lambda| * (2g+1) and 2g <= m*(r-1)+2
        let budget = (m as i128) * (max_abs as i128) * ((m as i128) * (r as i128) + 2);
        if i64::try_from(budget).is_err() {
            return Err(Error::Overflow);
        }
        let curve = KummerCurve { m, lambdas, lambda0 };
        if !curve.places().any(|p| curve.is_totally_ramified(p).unwrap()) {
            return Err(Error::NowhereTotallyRamified);
        }
        Ok(curve)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Number of finite branch places (the r in lambda_1..lambda_r).
    pub fn branch_count(&self) -> usize {
        self.lambdas.len()
    }

    /// Multiplicities of the finite branch places.
    pub fn lambdas(&self) -> &[i64] {
        &self.lambdas
    }

    /// Multiplicity of the place at infinity, -sum(lambdas).
    pub fn lambda0(&self) -> i64 {
        self.lambda0
    }

    /// All r+1 ramified places, infinity first.
    pub fn places(&self) -> impl Iterator<Item = PlaceRef> + '_ {
        std::iter::once(PlaceRef::Infinity).chain((1..=self.branch_count()).map(PlaceRef::Finite))
    }

    /// Multiplicity attached to a place.
    pub fn multiplicity(&self, p: PlaceRef) -> Result<i64> {
        match p {
            PlaceRef::Infinity => Ok(self.lambda0),
            PlaceRef::Finite(i) => {
                if i == 0 || i > self.lambdas.len() {
                    Err(Error::PlaceOutOfRange { index: i, count: self.lambdas.len() })
                } else {
                    Ok(self.lambdas[i - 1])
                }
            }
        }
    }

    /// A place is totally ramified exactly when its multiplicity is
    /// coprime to m.
    pub fn is_totally_ramified(&self, p: PlaceRef) -> Result<bool> {
        Ok(gcd(self.m, self.multiplicity(p)?) == 1)
    }

    /// Inverse of the place's multiplicity modulo m, in `[1, m-1]`.
    pub fn inverse_multiplicity(&self, p: PlaceRef) -> Result<i64> {
        let lam = self.multiplicity(p)?;
        mod_inverse(lam, self.m).map_err(|_| Error::NotTotallyRamified(p))
    }

    /// Genus from the ramification data:
    /// (m(r-1) + 2 - sum_{i=0}^{r} gcd(m, lambda_i)) / 2.
    pub fn genus(&self) -> i64 {
        let r = self.lambdas.len() as i64;
        let gcd_sum: i64 = self
            .lambdas
            .iter()
            .chain([&self.lambda0])
            .map(|&l| gcd(self.m, l))
            .sum();
        let numerator = self.m * (r - 1) + 2 - gcd_sum;
        assert!(numerator % 2 == 0, "ramification numerator must be even");
        assert!(numerator >= 0, "genus must be nonnegative");
        numerator / 2
    }

    /// Validates and builds a selection of places on this curve.
    pub fn select(&self, places: Vec<PlaceRef>) -> Result<PlaceSelection> {
        PlaceSelection::new(self, places)
    }

    /// The floor sum driving every pure-gap test: for a tuple (a_0..a_s)
    /// aligned with the selection and any integer t,
    ///
    /// sum_{i selected} floor((a_i + t*lambda_{j_i}) / m)
    ///   + sum_{unselected} floor(t*lambda / m),
    ///
    /// where the second sum runs over the multiplicities of all places not
    /// in the selection (lambda_0 included whenever infinity is unselected).
    /// The value only depends on t mod m.
    pub fn floor_sum(&self, sel: &PlaceSelection, tuple: &[i64], t: i64) -> Result<i64> {
        sel.check_curve(self)?;
        if tuple.len() != sel.len() {
            return Err(Error::TupleLengthMismatch { expected: sel.len(), got: tuple.len() });
        }
        let m = self.m as i128;
        let t = t as i128;
        let mut sum: i128 = 0;
        for (&a, &p) in tuple.iter().zip(sel.places()) {
            let lam = self.multiplicity(p).unwrap() as i128;
            sum += (a as i128 + t * lam).div_euclid(m);
        }
        for p in self.places() {
            if !sel.contains(p) {
                let lam = self.multiplicity(p).unwrap() as i128;
                sum += (t * lam).div_euclid(m);
            }
        }
        Ok(sum as i64)
    }
}

/// An ordered selection of distinct totally ramified places, the
/// (Q_{j_0},...,Q_{j_s}) that pure-gap tuples are indexed against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceSelection {
    places: Vec<PlaceRef>,
    branch_count: usize,
}

impl PlaceSelection {
    pub fn new(curve: &KummerCurve, places: Vec<PlaceRef>) -> Result<Self> {
        if places.is_empty() {
            return Err(Error::EmptySelection);
        }
        if places.len() > curve.branch_count() + 1 {
            return Err(Error::SelectionTooLarge {
                got: places.len(),
                max: curve.branch_count() + 1,
            });
        }
        for (i, &p) in places.iter().enumerate() {
            if !curve.is_totally_ramified(p)? {
                return Err(Error::NotTotallyRamified(p));
            }
            if places[..i].contains(&p) {
                return Err(Error::DuplicatePlace(p));
            }
        }
        Ok(PlaceSelection { places, branch_count: curve.branch_count() })
    }

    pub fn places(&self) -> std::slice::Iter<'_, PlaceRef> {
        self.places.iter()
    }

    pub fn as_slice(&self) -> &[PlaceRef] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn contains(&self, p: PlaceRef) -> bool {
        self.places.contains(&p)
    }

    /// The selection of the first `k` places, used while building bottom
    /// sets place by place.
    pub(crate) fn prefix(&self, k: usize) -> PlaceSelection {
        debug_assert!(k >= 1 && k <= self.places.len());
        PlaceSelection { places: self.places[..k].to_vec(), branch_count: self.branch_count }
    }

    pub(crate) fn check_curve(&self, curve: &KummerCurve) -> Result<()> {
        if self.branch_count != curve.branch_count() {
            return Err(Error::SelectionCurveMismatch {
                selection: self.branch_count,
                curve: curve.branch_count(),
            });
        }
        Ok(())
    }
}

/// Scans the bound floor(r(j+1)/m) - floor(rj/m) >= floor(r/m) for all
/// 1 <= j <= m-1; holds whenever gcd(m,r) = 1. Test utility for the
/// arithmetic kernel.
pub fn floor_step_bound_holds(m: i64, r: i64) -> bool {
    debug_assert!(m >= 1 && r >= 1);
    (1..m).all(|j| floor_div(r * (j + 1), m) - floor_div(r * j, m) >= floor_div(r, m))
}

/// Scans the threshold identity
/// floor(rj/m) <= r-k-1  <=>  j <= m - ceil(km/r) - [k = r]
/// over 1 <= k <= 2r-1 and 1-m <= j <= m-1. Test utility backing the
/// closed-form staircase bounds.
pub fn floor_threshold_equivalence_holds(m: i64, r: i64) -> bool {
    debug_assert!(m >= 2 && r >= 1 && gcd(m, r) == 1);
    for k in 1..=(2 * r - 1) {
        for j in (1 - m)..m {
            let lhs = floor_div(r * j, m) <= r - k - 1;
            let rhs = j <= m - ceil_div(k * m, r) - i64::from(k == r);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

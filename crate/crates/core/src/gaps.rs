//! Weierstrass gap sets G(Q) at a single totally ramified place.
//!
//! The generic route scans the bottom residues 1..m-1 and expands each by
//! multiples of m; for curves with all multiplicities equal there are two
//! closed forms ([`gap_set_residue_major`], [`gap_set_block_major`]) that
//! must produce the same set and serve as cross-checks.

use crate::curve::{ceil_div, floor_div, gcd, KummerCurve, PlaceRef};
use crate::error::{Error, Result};

/// Which of the two ramified place shapes a closed form describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceKind {
    Finite,
    Infinite,
}

/// The gap set at one place, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSet {
    pub place: PlaceRef,
    pub members: Vec<i64>,
}

impl GapSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Tests a single value: a is a gap at p exactly when
/// sum_{i=0}^{r} floor(-a*lam*lambda_i/m) + ceil(a/m) <= -1,
/// where lam is the inverse of the multiplicity of p modulo m.
pub fn is_gap(c: &KummerCurve, p: PlaceRef, a: i64) -> Result<bool> {
    let lam = c.inverse_multiplicity(p)? as i128;
    if a <= 0 {
        return Ok(false);
    }
    let m = c.m() as i128;
    let a = a as i128;
    let mut sum: i128 = -(-a).div_euclid(m); // ceil(a/m)
    for v in all_multiplicities(c) {
        sum += (-a * lam * v as i128).div_euclid(m);
    }
    Ok(sum <= -1)
}

/// The full gap set at p: residues a in 1..m-1 passing the bottom test
/// sum floor(-a*lam*lambda_i/m) <= -2, each expanded to a + km for
/// 0 <= k <= cap(a).
pub fn gap_set(c: &KummerCurve, p: PlaceRef) -> Result<GapSet> {
    let lam = c.inverse_multiplicity(p)? as i128;
    let m = c.m();
    let sel = c.select(vec![p])?;
    let mut members = Vec::new();
    for a in 1..m {
        let mut sum: i128 = 0;
        for v in all_multiplicities(c) {
            sum += (-(a as i128) * lam * v as i128).div_euclid(m as i128);
        }
        if sum <= -2 {
            let t = (-(a as i128) * lam).rem_euclid(m as i128) as i64;
            let cap = -1 - c.floor_sum(&sel, &[a], t)?;
            debug_assert!(cap >= 0);
            members.extend((0..=cap).map(|k| a + m * k));
        }
    }
    members.sort_unstable();
    debug_assert_eq!(members.len() as i64, c.genus());
    Ok(GapSet { place: p, members })
}

/// Independent route: test every candidate up to 2g-1 with [`is_gap`].
/// Slower than [`gap_set`] but shares no enumeration logic with it.
pub fn gap_set_by_scan(c: &KummerCurve, p: PlaceRef) -> Result<GapSet> {
    let mut members = Vec::new();
    for a in 1..=(2 * c.genus() - 1).max(0) {
        if is_gap(c, p, a)? {
            members.push(a);
        }
    }
    Ok(GapSet { place: p, members })
}

/// Closed form for curves with all multiplicities equal and gcd(rl, m)=1,
/// iterating residues first:
/// finite places  {mk+j  : 1 <= j <= m-1-floor(m/r), 0 <= k <= r-2-floor(rj/m)},
/// infinity       {mk-rj : 1 <= j <= m-1-floor(m/r), ceil(rj/m) <= k <= r-1}.
pub fn gap_set_residue_major(m: i64, r: i64, kind: PlaceKind) -> Result<GapSet> {
    check_coprime_pair(m, r)?;
    let mut members = Vec::new();
    for j in 1..=(m - 1 - floor_div(m, r)) {
        match kind {
            PlaceKind::Finite => {
                for k in 0..=(r - 2 - floor_div(r * j, m)) {
                    members.push(m * k + j);
                }
            }
            PlaceKind::Infinite => {
                for k in ceil_div(r * j, m)..=(r - 1) {
                    members.push(m * k - r * j);
                }
            }
        }
    }
    members.sort_unstable();
    let place = match kind {
        PlaceKind::Finite => PlaceRef::Finite(1),
        PlaceKind::Infinite => PlaceRef::Infinity,
    };
    Ok(GapSet { place, members })
}

/// The same sets iterated block first. Finite places work for every
/// coprime pair; the infinity form needs m | r+1 or r | m-1 and refuses
/// other shapes.
pub fn gap_set_block_major(m: i64, r: i64, kind: PlaceKind) -> Result<GapSet> {
    check_coprime_pair(m, r)?;
    let mut members = Vec::new();
    match kind {
        PlaceKind::Finite => {
            for k in 0..=(r - 2 - floor_div(r, m)) {
                for j in 1..=(m - ceil_div((k + 1) * m, r)) {
                    members.push(m * k + j);
                }
            }
        }
        PlaceKind::Infinite if (r + 1) % m == 0 => {
            let v = (r + 1) / m;
            for k in 0..=(r - v - 1) {
                for j in 1..=(m - ceil_div((k + 1) * m, r)) {
                    members.push(m * k + j);
                }
            }
        }
        PlaceKind::Infinite if (m - 1) % r == 0 => {
            let u = (m - 1) / r;
            for k in 1..=(r - 1) {
                for j in 1..=(k * u) {
                    members.push(m * k - r * j);
                }
            }
        }
        PlaceKind::Infinite => {
            return Err(Error::ShapeMismatch(format!(
                "the block-major infinity form needs m | r+1 or r | m-1, got m={m}, r={r}"
            )));
        }
    }
    members.sort_unstable();
    let place = match kind {
        PlaceKind::Finite => PlaceRef::Finite(1),
        PlaceKind::Infinite => PlaceRef::Infinity,
    };
    Ok(GapSet { place, members })
}

fn check_coprime_pair(m: i64, r: i64) -> Result<()> {
    if m < 2 || r < 1 {
        return Err(Error::ParameterRange(format!("need m >= 2 and r >= 1, got m={m}, r={r}")));
    }
    if gcd(m, r) != 1 {
        return Err(Error::ShapeMismatch(format!("m and r must be coprime, got m={m}, r={r}")));
    }
    Ok(())
}

fn all_multiplicities(c: &KummerCurve) -> impl Iterator<Item = i64> + '_ {
    std::iter::once(c.lambda0()).chain(c.lambdas().iter().copied())
}

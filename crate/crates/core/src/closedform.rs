//! Explicit pure-gap sets and consecutive pure-gap boxes for the
//! equal-multiplicity curve y^m = f(x)^lambda with deg f = r and
//! gcd(r*lambda, m) = 1.
//!
//! The set constructors here take only (m, r, s) plus shape parameters;
//! lambda never enters because the resulting sets do not depend on it.
//! Each constructor is checked against the generic enumeration engine in
//! tests, on curves instantiated with several lambda values.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::curve::{ceil_div, floor_div, gcd, KummerCurve, PlaceRef, PlaceSelection};
use crate::error::{Error, Result};
use crate::puregaps::GapTuple;

/// An axis-aligned lattice box of pure gaps: every integer tuple between
/// `lower` and `upper` (componentwise) is a pure gap at `places`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureGapBox {
    pub places: Vec<PlaceRef>,
    pub lower: GapTuple,
    pub upper: GapTuple,
}

impl PureGapBox {
    pub fn new(places: Vec<PlaceRef>, lower: GapTuple, upper: GapTuple) -> Result<Self> {
        if places.len() != lower.len() || lower.len() != upper.len() {
            return Err(Error::InvalidBox(format!(
                "{} places with bounds of lengths {} and {}",
                places.len(),
                lower.len(),
                upper.len()
            )));
        }
        if places.is_empty() {
            return Err(Error::EmptySelection);
        }
        for i in 0..lower.len() {
            if lower[i] < 1 || lower[i] > upper[i] {
                return Err(Error::InvalidBox(format!(
                    "coordinate {i} spans {}..{}",
                    lower[i], upper[i]
                )));
            }
        }
        Ok(PureGapBox { places, lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.places.len()
    }

    pub fn selection(&self, c: &KummerCurve) -> Result<PlaceSelection> {
        c.select(self.places.clone())
    }

    pub fn point_count(&self) -> i64 {
        self.lower.iter().zip(&self.upper).map(|(&a, &b)| b - a + 1).product()
    }

    pub fn contains(&self, tuple: &[i64]) -> bool {
        tuple.len() == self.dim()
            && tuple
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&a, &b))| a <= v && v <= b)
    }

    /// All lattice points of the box in lexicographic order.
    pub fn lattice_points(&self) -> Vec<GapTuple> {
        let mut out = Vec::new();
        let mut cur = self.lower.clone();
        loop {
            out.push(cur.clone());
            let mut pos = self.dim();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur[pos] < self.upper[pos] {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = self.lower[pos];
            }
        }
    }

    /// Checks the defining property on a concrete curve: every lattice
    /// point is a pure gap at the box's places.
    pub fn verify(&self, c: &KummerCurve) -> Result<bool> {
        let sel = self.selection(c)?;
        let mut cur = self.lower.clone();
        loop {
            if !crate::puregaps::is_pure_gap(c, &sel, &cur)? {
                return Ok(false);
            }
            let mut pos = self.dim();
            loop {
                if pos == 0 {
                    return Ok(true);
                }
                pos -= 1;
                if cur[pos] < self.upper[pos] {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = self.lower[pos];
            }
        }
    }
}

fn check_coprime(m: i64, r: i64) -> Result<()> {
    if m < 2 || r < 1 {
        return Err(Error::ParameterRange(format!("need m >= 2 and r >= 1, got m={m}, r={r}")));
    }
    if gcd(m, r) != 1 {
        return Err(Error::ShapeMismatch(format!("m={m} and r={r} are not coprime")));
    }
    Ok(())
}

fn check_s(s: i64, lo: i64, r: i64) -> Result<()> {
    if s < lo || s > r {
        return Err(Error::ParameterRange(format!("need {lo} <= s <= r={r}, got s={s}")));
    }
    Ok(())
}

/// All tuples with `1 <= j_i` whose coordinates can be matched to the
/// non-increasing `bounds` staircase by some permutation, reported as the
/// list of non-increasing representatives.
fn staircase_multisets(bounds: &[i64]) -> Vec<Vec<i64>> {
    fn go(bounds: &[i64], pos: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == bounds.len() {
            out.push(cur.clone());
            return;
        }
        for j in 1..=bounds[pos].min(cap) {
            cur.push(j);
            go(bounds, pos + 1, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bounds, 0, i64::MAX, &mut Vec::with_capacity(bounds.len()), &mut out);
    out
}

fn distinct_permutations(values: &[i64]) -> BTreeSet<Vec<i64>> {
    values.iter().copied().permutations(values.len()).collect()
}

fn for_each_composition(dim: usize, total: i64, f: &mut impl FnMut(&[i64])) {
    fn go(cur: &mut Vec<i64>, dim: usize, left: i64, f: &mut impl FnMut(&[i64])) {
        if cur.len() + 1 == dim {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(cur, dim, left - k, f);
            cur.pop();
        }
    }
    if dim == 0 || total < 0 {
        return;
    }
    go(&mut Vec::with_capacity(dim), dim, total, f);
}

/// Emits, for every residue multiset fitting `bounds` and every total
/// shift budget `shift_total`, all tuples (m*k_i + j_i) obtained by
/// permuting residues and distributing the shifts.
fn shifted_staircase_tuples(
    m: i64,
    bounds: &[i64],
    shift_total: i64,
    out: &mut BTreeSet<GapTuple>,
) {
    let dim = bounds.len();
    for multiset in staircase_multisets(bounds) {
        for residues in distinct_permutations(&multiset) {
            for_each_composition(dim, shift_total, &mut |shift| {
                let tuple: GapTuple =
                    residues.iter().zip(shift).map(|(&j, &k)| m * k + j).collect();
                out.insert(tuple);
            });
        }
    }
}

/// G_0(Q_1,...,Q_s) for any equal-multiplicity curve with parameters
/// (m, r): the union over total shift k of permuted staircase boxes with
/// bounds t_i = m - ceil(m(k+i)/r). Empty once s reaches r - floor(r/m).
pub fn pure_gaps_finite(m: i64, r: i64, s: i64) -> Result<Vec<GapTuple>> {
    check_coprime(m, r)?;
    check_s(s, 2, r)?;
    let mut set = BTreeSet::new();
    let k_max = r - floor_div(r, m) - 1 - s;
    for k in 0..=k_max.max(-1) {
        let bounds: Vec<i64> = (1..=s).map(|i| m - ceil_div(m * (k + i), r)).collect();
        shifted_staircase_tuples(m, &bounds, k, &mut set);
    }
    Ok(set.into_iter().collect())
}

/// G_0(Q_inf,Q_1,...,Q_s) when m divides r+1: the same staircase shape
/// with s+1 interchangeable coordinates and bounds
/// t_i = m - ceil(m(k+i+1)/r). Empty once s reaches r - v.
pub fn pure_gaps_with_infinity_v(m: i64, r: i64, s: i64) -> Result<Vec<GapTuple>> {
    check_coprime(m, r)?;
    if (r + 1) % m != 0 {
        return Err(Error::ShapeMismatch(format!("m={m} does not divide r+1={}", r + 1)));
    }
    check_s(s, 1, r)?;
    let v = (r + 1) / m;
    let mut set = BTreeSet::new();
    let k_max = r - v - 1 - s;
    for k in 0..=k_max.max(-1) {
        let bounds: Vec<i64> = (0..=s).map(|i| m - ceil_div(m * (k + i + 1), r)).collect();
        shifted_staircase_tuples(m, &bounds, k, &mut set);
    }
    Ok(set.into_iter().collect())
}

/// G_0(Q_inf,Q_1,...,Q_s) for arbitrary coprime (m, r). The infinity
/// coordinate is parameterized as m*k_0 - r*j_0; for each j_0 the total
/// shift k runs from ceil(r*j_0/m) up to min(d_{j_0}, r-1) with
/// d_{j_0} = r - floor((1-j_0)r/m) - s - 1. The r-1 cap keeps the finite
/// bounds within their defining range; without it the union acquires
/// spurious tuples.
pub fn pure_gaps_with_infinity_general(m: i64, r: i64, s: i64) -> Result<Vec<GapTuple>> {
    check_coprime(m, r)?;
    check_s(s, 1, r)?;
    let mut set = BTreeSet::new();
    if s >= r - floor_div(r, m) {
        return Ok(Vec::new());
    }
    let c = m - 1 - floor_div(m, r);
    for j0 in 1..=c {
        let d = r - floor_div((1 - j0) * r, m) - s - 1;
        let k_lo = ceil_div(r * j0, m);
        for k in k_lo..=d.min(r - 1) {
            let bounds: Vec<i64> = (1..=s)
                .map(|i| {
                    let adjust = if k + i == r { 1 } else { 0 };
                    m - ceil_div((k + i) * m, r) + j0 - adjust
                })
                .collect();
            for multiset in staircase_multisets(&bounds) {
                for residues in distinct_permutations(&multiset) {
                    for k0 in k_lo..=k {
                        for_each_composition(s as usize, k - k0, &mut |shift| {
                            let mut tuple = Vec::with_capacity(s as usize + 1);
                            tuple.push(m * k0 - r * j0);
                            tuple.extend(
                                residues.iter().zip(shift).map(|(&j, &ki)| m * ki + j),
                            );
                            set.insert(tuple);
                        });
                    }
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

fn family_range_check(name: &str, value: i64, lo: i64, hi: i64) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::ParameterRange(format!("need {lo} <= {name} <= {hi}, got {value}")));
    }
    Ok(())
}

fn finite_places(s: i64) -> Vec<PlaceRef> {
    (1..=s as usize).map(PlaceRef::Finite).collect()
}

fn infinity_places(s: i64) -> Vec<PlaceRef> {
    std::iter::once(PlaceRef::Infinity).chain((1..=s as usize).map(PlaceRef::Finite)).collect()
}

/// Consecutive pure gaps at s finite places: the box from
/// (mk+1, 1, ..., 1) to (mk+t_1, t_2, ..., t_s) with
/// t_i = m - ceil((k+i)m/r).
pub fn family_box_finite(m: i64, r: i64, s: i64, k: i64) -> Result<PureGapBox> {
    check_coprime(m, r)?;
    let s_max = r - floor_div(r, m) - 1;
    family_range_check("s", s, 2, s_max)?;
    family_range_check("k", k, 0, s_max - s)?;
    let t: Vec<i64> = (1..=s).map(|i| m - ceil_div((k + i) * m, r)).collect();
    debug_assert!(t.iter().all(|&ti| ti >= 1));
    let mut lower = vec![1; s as usize];
    lower[0] = m * k + 1;
    let mut upper = t;
    upper[0] += m * k;
    PureGapBox::new(finite_places(s), lower, upper)
}

/// Consecutive pure gaps at the infinite place plus s finite places when
/// m divides r+1: box from (mk+1, 1, ..., 1) to (mk+t_0, t_1, ..., t_s)
/// with t_i = m - ceil(m(k+i+1)/r).
pub fn family_box_infinity_v(m: i64, r: i64, s: i64, k: i64) -> Result<PureGapBox> {
    check_coprime(m, r)?;
    if (r + 1) % m != 0 {
        return Err(Error::ShapeMismatch(format!("m={m} does not divide r+1={}", r + 1)));
    }
    let v = (r + 1) / m;
    family_range_check("s", s, 1, r - v - 1)?;
    family_range_check("k", k, 0, r - v - 1 - s)?;
    let t: Vec<i64> = (0..=s).map(|i| m - ceil_div(m * (k + i + 1), r)).collect();
    debug_assert!(t.iter().all(|&ti| ti >= 1));
    let mut lower = vec![1; s as usize + 1];
    lower[0] = m * k + 1;
    let mut upper = t;
    upper[0] += m * k;
    PureGapBox::new(infinity_places(s), lower, upper)
}

/// Pure gaps pinned at a single infinity value m*k - r*j0 (which must be
/// a gap at the infinite place) times a finite box with bounds
/// t_i = m - ceil((k+i)m/r) + j0, lowered by one when k+i = r.
pub fn family_box_infinity_general(m: i64, r: i64, s: i64, k: i64, j0: i64) -> Result<PureGapBox> {
    check_coprime(m, r)?;
    check_s(s, 1, r)?;
    family_range_check("k", k, 1, r - 1)?;
    family_range_check("j0", j0, 1, m - 1)?;
    let pinned = m * k - r * j0;
    let probe = KummerCurve::new(m, vec![1; r as usize])?;
    if !crate::gaps::is_gap(&probe, PlaceRef::Infinity, pinned)? {
        return Err(Error::ParameterRange(format!(
            "mk - r*j0 = {pinned} is not a gap at the infinite place"
        )));
    }
    let t: Vec<i64> = (1..=s)
        .map(|i| {
            let adjust = if k + i == r { 1 } else { 0 };
            m - ceil_div((k + i) * m, r) + j0 - adjust
        })
        .collect();
    if let Some(&bad) = t.iter().find(|&&ti| ti < 1) {
        return Err(Error::InvalidBox(format!("finite bound {bad} is below 1")));
    }
    let mut lower = vec![1; s as usize + 1];
    lower[0] = pinned;
    let mut upper = t;
    upper.insert(0, pinned);
    PureGapBox::new(infinity_places(s), lower, upper)
}

/// Consecutive pure gaps in every coordinate when m = ur + 1: infinity
/// range [rc+r-s-1, rc+r-1] times boxes [1, u(r-i)-c-1].
pub fn family_box_infinity_u(m: i64, r: i64, s: i64, c: i64) -> Result<PureGapBox> {
    check_coprime(m, r)?;
    if (m - 1) % r != 0 || m - 1 < r {
        return Err(Error::ShapeMismatch(format!("r={r} does not divide m-1={}", m - 1)));
    }
    let u = (m - 1) / r;
    family_range_check("s", s, 1, r - 2)?;
    family_range_check("c", c, 0, u * (r - s - 1) - 1)?;
    let t: Vec<i64> = (1..=s).map(|i| u * (r - i) - c - 1).collect();
    debug_assert!(t.iter().all(|&ti| ti >= 1));
    let mut lower = vec![1; s as usize + 1];
    lower[0] = r * c + r - s - 1;
    let mut upper = t;
    upper.insert(0, r * c + r - 1);
    PureGapBox::new(infinity_places(s), lower, upper)
}

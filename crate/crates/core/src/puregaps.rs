//! Pure gaps at selections of totally ramified places.
//!
//! Two independent deciders are provided: [`is_pure_gap_oracle`] scans all
//! m residues of the floor sum, while [`is_pure_gap`] checks only the s+1
//! residues picked out by the tuple itself. The enumeration pipeline finds
//! the bottom set (all pure gaps inside `[1, m-1]^{s+1}`) place by place,
//! attaches to each bottom tuple the largest total m-shift budget that
//! keeps it pure, and expands. Scan-based variants of each stage exist
//! purely to referee the algorithmic ones in tests.

use rayon::prelude::*;

use crate::curve::{KummerCurve, PlaceRef, PlaceSelection};
use crate::error::{Error, Result};

/// A pure-gap candidate, one coordinate per selected place.
pub type GapTuple = Vec<i64>;

/// One bottom tuple together with its expansion budget: every shift
/// `tuple + m*k` with `k >= 0` componentwise and `sum(k) <= cap` is pure,
/// and no shift with a larger total is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomEntry {
    pub tuple: GapTuple,
    pub cap: i64,
}

/// The pure gaps inside `[1, m-1]^{s+1}`, lexicographically sorted, with
/// their expansion caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomSet {
    pub places: Vec<PlaceRef>,
    pub entries: Vec<BottomEntry>,
}

impl BottomSet {
    pub fn tuples(&self) -> impl Iterator<Item = &GapTuple> {
        self.entries.iter().map(|e| &e.tuple)
    }

    /// Expands every entry by all admissible m-shifts, producing the full
    /// pure-gap set in lexicographic order.
    pub fn expand(&self, m: i64) -> Vec<GapTuple> {
        let mut out = Vec::new();
        for entry in &self.entries {
            for_each_shift(entry.tuple.len(), entry.cap, &mut |shift| {
                let shifted: Vec<i64> =
                    entry.tuple.iter().zip(shift).map(|(&a, &k)| a + m * k).collect();
                out.push(shifted);
            });
        }
        out.sort_unstable();
        out
    }
}

fn validate_tuple(sel: &PlaceSelection, tuple: &[i64]) -> Result<()> {
    if tuple.len() != sel.len() {
        return Err(Error::TupleLengthMismatch { expected: sel.len(), got: tuple.len() });
    }
    if let Some((i, &v)) = tuple.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(Error::NegativeCoordinate { index: i, value: v });
    }
    Ok(())
}

/// Brute-force decider: (a_0..a_s) is pure iff for every t in 0..m either
/// the floor sum is negative, or it is nonnegative and no selected term's
/// floor moves when its coordinate is lowered by one.
pub fn is_pure_gap_oracle(c: &KummerCurve, sel: &PlaceSelection, tuple: &[i64]) -> Result<bool> {
    validate_tuple(sel, tuple)?;
    let m = c.m();
    for t in 0..m {
        if c.floor_sum(sel, tuple, t)? < 0 {
            continue;
        }
        for (&a, &p) in tuple.iter().zip(sel.places()) {
            let lam = c.multiplicity(p)? as i128;
            let shifted = a as i128 + t as i128 * lam;
            if shifted.div_euclid(m as i128) != (shifted - 1).div_euclid(m as i128) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fast decider: (a_0..a_s) is pure iff for every selected index v the
/// floor sum at t = -a_v * sigma_v mod m is at most -1, where sigma_v
/// inverts the multiplicity of the v-th place.
pub fn is_pure_gap(c: &KummerCurve, sel: &PlaceSelection, tuple: &[i64]) -> Result<bool> {
    validate_tuple(sel, tuple)?;
    let m = c.m() as i128;
    for (&a, &p) in tuple.iter().zip(sel.places()) {
        let sigma = c.inverse_multiplicity(p)? as i128;
        let t = (-(a as i128) * sigma).rem_euclid(m) as i64;
        if c.floor_sum(sel, tuple, t)? > -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bottom pure gaps at the selection: seed with the one-place residues,
/// extend one place at a time, then attach expansion caps.
pub fn bottom_pure_gaps(c: &KummerCurve, sel: &PlaceSelection) -> Result<BottomSet> {
    sel.check_curve(c)?;
    let mut tuples = seed_bottom(c, sel)?;
    for len in 2..=sel.len() {
        tuples = extend_bottom(c, &sel.prefix(len), tuples)?;
    }
    let entries = tuples
        .into_iter()
        .map(|tuple| {
            let cap = expansion_cap(c, sel, &tuple)?;
            debug_assert!(cap >= 0);
            Ok(BottomEntry { tuple, cap })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BottomSet { places: sel.as_slice().to_vec(), entries })
}

/// One-place seed: residues a in 1..m-1 with
/// sum_{i=0}^{r} floor(-a*lam*lambda_i/m) <= -2.
fn seed_bottom(c: &KummerCurve, sel: &PlaceSelection) -> Result<Vec<GapTuple>> {
    let p = sel.as_slice()[0];
    let lam = c.inverse_multiplicity(p)? as i128;
    let m = c.m();
    let mut out = Vec::new();
    for a in 1..m {
        let mut sum: i128 = 0;
        for v in std::iter::once(c.lambda0()).chain(c.lambdas().iter().copied()) {
            sum += (-(a as i128) * lam * v as i128).div_euclid(m as i128);
        }
        if sum <= -2 {
            out.push(vec![a]);
        }
    }
    Ok(out)
}

/// One extension round: for each known bottom tuple at the first s places
/// of `ext_sel`, scan candidate last coordinates a = 1..m-1. A candidate
/// joins when the floor sum at t = -a*lam is at most -1; when it fails and
/// some prefix coordinate is congruent to a*lam*lambda_{j_i} mod m, no
/// larger candidate can succeed for this prefix and the scan stops early.
fn extend_bottom(
    c: &KummerCurve,
    ext_sel: &PlaceSelection,
    prev: Vec<GapTuple>,
) -> Result<Vec<GapTuple>> {
    let s = ext_sel.len() - 1;
    let new_place = ext_sel.as_slice()[s];
    let lam = c.inverse_multiplicity(new_place)? as i128;
    let prefix_lams: Vec<i128> = ext_sel.as_slice()[..s]
        .iter()
        .map(|&p| c.multiplicity(p).map(|l| l as i128))
        .collect::<Result<_>>()?;
    let m = c.m();
    let mut out: Vec<GapTuple> = prev
        .par_iter()
        .map(|prefix| {
            let mut grown = Vec::new();
            let mut ext = prefix.clone();
            ext.push(0);
            for a in 1..m {
                ext[s] = a;
                let t = (-(a as i128) * lam).rem_euclid(m as i128) as i64;
                if c.floor_sum(ext_sel, &ext, t).unwrap() <= -1 {
                    grown.push(ext.clone());
                } else if prefix.iter().zip(&prefix_lams).any(|(&ai, &li)| {
                    (ai as i128 - (a as i128) * lam * li).rem_euclid(m as i128) == 0
                }) {
                    break;
                }
            }
            grown
        })
        .flatten()
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Largest total m-shift budget under which `tuple` stays pure:
/// -1 - max_v floor_sum(tuple, t_v) over the tuple's own residues t_v.
fn expansion_cap(c: &KummerCurve, sel: &PlaceSelection, tuple: &[i64]) -> Result<i64> {
    let m = c.m() as i128;
    let mut worst = i64::MIN;
    for (&a, &p) in tuple.iter().zip(sel.places()) {
        let sigma = c.inverse_multiplicity(p)? as i128;
        let t = (-(a as i128) * sigma).rem_euclid(m) as i64;
        worst = worst.max(c.floor_sum(sel, tuple, t)?);
    }
    Ok(-1 - worst)
}

/// The complete pure-gap set at the selection, lexicographically sorted.
pub fn full_pure_gap_set(c: &KummerCurve, sel: &PlaceSelection) -> Result<Vec<GapTuple>> {
    Ok(bottom_pure_gaps(c, sel)?.expand(c.m()))
}

/// No-pruning referee for [`bottom_pure_gaps`]: filter the whole box
/// `[1, m-1]^{s+1}` through the fast decider.
pub fn bottom_pure_gaps_by_scan(c: &KummerCurve, sel: &PlaceSelection) -> Result<Vec<GapTuple>> {
    scan_box(c, sel, c.m() - 1, is_pure_gap)
}

/// Exhaustive referee for [`full_pure_gap_set`]: filter `[1, 2g-1]^{s+1}`
/// through the brute-force oracle. Every pure-gap coordinate is a gap, so
/// nothing lives beyond 2g-1.
pub fn full_pure_gap_set_by_scan(c: &KummerCurve, sel: &PlaceSelection) -> Result<Vec<GapTuple>> {
    scan_box(c, sel, 2 * c.genus() - 1, is_pure_gap_oracle)
}

fn scan_box(
    c: &KummerCurve,
    sel: &PlaceSelection,
    hi: i64,
    accept: fn(&KummerCurve, &PlaceSelection, &[i64]) -> Result<bool>,
) -> Result<Vec<GapTuple>> {
    sel.check_curve(c)?;
    if hi < 1 {
        return Ok(Vec::new());
    }
    let candidates: Vec<i64> = (1..=hi).collect();
    let out: Vec<GapTuple> = candidates
        .par_iter()
        .map(|&first| {
            let mut found = Vec::new();
            let mut tuple = vec![first; sel.len()];
            fill_scan(c, sel, hi, accept, &mut tuple, 1, &mut found);
            found
        })
        .flatten()
        .collect();
    Ok(out)
}

fn fill_scan(
    c: &KummerCurve,
    sel: &PlaceSelection,
    hi: i64,
    accept: fn(&KummerCurve, &PlaceSelection, &[i64]) -> Result<bool>,
    tuple: &mut GapTuple,
    depth: usize,
    found: &mut Vec<GapTuple>,
) {
    if depth == tuple.len() {
        if accept(c, sel, tuple).unwrap() {
            found.push(tuple.clone());
        }
        return;
    }
    for a in 1..=hi {
        tuple[depth] = a;
        fill_scan(c, sel, hi, accept, tuple, depth + 1, found);
    }
}

/// Single-inequality extension test. `sel` selects s+1 places and `prefix`
/// is a pure gap at its first s places. For `a = 1` this decides whether
/// `(prefix, 1)` is pure; for larger `a` it assumes `(prefix, a-1)` is pure
/// and decides `(prefix, a)`. Hypotheses are the caller's responsibility
/// and are asserted in debug builds.
pub fn extend_pure_gap(
    c: &KummerCurve,
    sel: &PlaceSelection,
    prefix: &[i64],
    a: i64,
) -> Result<bool> {
    sel.check_curve(c)?;
    if prefix.len() + 1 != sel.len() {
        return Err(Error::TupleLengthMismatch { expected: sel.len(), got: prefix.len() + 1 });
    }
    let m = c.m();
    if a < 1 || a > m - 1 {
        return Err(Error::CandidateOutOfRange { got: a, max: m - 1 });
    }
    let mut ext = prefix.to_vec();
    ext.push(a);
    debug_assert!(
        if a == 1 {
            is_pure_gap(c, &sel.prefix(prefix.len()), prefix).unwrap()
        } else {
            let mut known = prefix.to_vec();
            known.push(a - 1);
            is_pure_gap(c, sel, &known).unwrap()
        },
        "extension hypothesis does not hold for prefix {prefix:?}, a = {a}"
    );
    let lam = c.inverse_multiplicity(sel.as_slice()[prefix.len()])? as i128;
    let t = (-(a as i128) * lam).rem_euclid(m as i128) as i64;
    let verdict = c.floor_sum(sel, &ext, t)? <= -1;
    debug_assert_eq!(verdict, is_pure_gap(c, sel, &ext).unwrap());
    Ok(verdict)
}

/// Projects a pure gap onto a subset of its places; the result is again a
/// pure gap at the projected selection.
pub fn project_pure_gap(
    c: &KummerCurve,
    sel: &PlaceSelection,
    tuple: &[i64],
    subset_indices: &[usize],
) -> Result<(PlaceSelection, GapTuple)> {
    validate_tuple(sel, tuple)?;
    debug_assert!(is_pure_gap(c, sel, tuple)?);
    if subset_indices.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut places = Vec::with_capacity(subset_indices.len());
    let mut projected = Vec::with_capacity(subset_indices.len());
    for &i in subset_indices {
        if i >= sel.len() {
            return Err(Error::ParameterRange(format!(
                "projection index {i} out of range for a {}-place selection",
                sel.len()
            )));
        }
        places.push(sel.as_slice()[i]);
        projected.push(tuple[i]);
    }
    Ok((PlaceSelection::new(c, places)?, projected))
}

/// Calls `f` once per shift vector of the given dimension with total at
/// most `budget`, in lexicographic order.
fn for_each_shift(dim: usize, budget: i64, f: &mut impl FnMut(&[i64])) {
    fn go(shift: &mut Vec<i64>, dim: usize, left: i64, f: &mut impl FnMut(&[i64])) {
        if shift.len() == dim {
            f(shift);
            return;
        }
        for k in 0..=left {
            shift.push(k);
            go(shift, dim, left - k, f);
            shift.pop();
        }
    }
    go(&mut Vec::with_capacity(dim), dim, budget.max(-1), f);
}

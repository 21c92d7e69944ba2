//! Multi-point differential AG-code parameters from boxes of consecutive
//! pure gaps.
//!
//! A box with corners (a_1..a_s) and (b_1..b_s) at places Q_1..Q_s yields
//! the divisor G = sum (a_i + b_i - 1) Q_i; when 2g-2 < deg G < n the code
//! C_Omega(D, G) on n further rational places has dimension n + g - 1 -
//! deg G and minimum distance at least deg G - (2g-2) + s + sum(b_i-a_i).
//! Rational place counts N are closed-form inputs carried by the curve
//! family, never computed by point counting.

use crate::closedform::{
    family_box_finite, family_box_infinity_u, family_box_infinity_v, PureGapBox,
};
use crate::curve::{ceil_div, KummerCurve, PlaceRef, PlaceSelection};
use crate::error::{Error, Result};

/// A concrete curve over a finite field together with its rational place
/// count N and a display label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamilyInstance {
    pub curve: KummerCurve,
    pub genus: i64,
    pub n_rational: i64,
    pub label: String,
    pub notes: Vec<String>,
}

impl CurveFamilyInstance {
    pub fn new(curve: KummerCurve, n_rational: i64, label: impl Into<String>) -> Result<Self> {
        if n_rational <= 0 {
            return Err(Error::FamilyConstraint(format!(
                "rational place count must be positive, got {n_rational}"
            )));
        }
        let genus = curve.genus();
        Ok(CurveFamilyInstance { curve, genus, n_rational, label: label.into(), notes: Vec::new() })
    }
}

/// Parameters of one designed code: the divisor G as per-place
/// coefficients, the length n, the dimension, and the distance bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeDesign {
    pub family: CurveFamilyInstance,
    pub selection: PlaceSelection,
    pub g_coeffs: Vec<i64>,
    pub n: i64,
    pub k_dim: i64,
    pub d_lower: i64,
}

impl CodeDesign {
    pub fn deg_g(&self) -> i64 {
        self.g_coeffs.iter().sum()
    }

    /// The [n, k, >= d] triple.
    pub fn triple(&self) -> (i64, i64, i64) {
        (self.n, self.k_dim, self.d_lower)
    }
}

fn window_check(fam: &CurveFamilyInstance, deg_g: i64, n: i64, n_max: i64) -> Result<()> {
    let two_g_minus_two = 2 * fam.genus - 2;
    if deg_g <= two_g_minus_two || deg_g >= n || n > n_max {
        return Err(Error::WindowViolation { deg_g, two_g_minus_two, n, n_max });
    }
    Ok(())
}

fn assemble(
    fam: &CurveFamilyInstance,
    places: Vec<PlaceRef>,
    g_coeffs: Vec<i64>,
    n: Option<i64>,
    d_lower: i64,
) -> Result<CodeDesign> {
    let selection = fam.curve.select(places)?;
    let deg_g: i64 = g_coeffs.iter().sum();
    let n_max = fam.n_rational - selection.len() as i64;
    let n = n.unwrap_or(n_max);
    window_check(fam, deg_g, n, n_max)?;
    let k_dim = n + fam.genus - 1 - deg_g;
    Ok(CodeDesign { family: fam.clone(), selection, g_coeffs, n, k_dim, d_lower })
}

/// Designs the code attached to a box of consecutive pure gaps: divisor
/// coefficients a_i + b_i - 1 and distance bound
/// deg G - (2g-2) + s + sum(b_i - a_i), where s counts the selected
/// places. `n` defaults to every rational place outside the selection.
pub fn code_from_box(
    fam: &CurveFamilyInstance,
    pure_box: &PureGapBox,
    n: Option<i64>,
) -> Result<CodeDesign> {
    debug_assert!(pure_box.verify(&fam.curve)?);
    let g_coeffs: Vec<i64> =
        pure_box.lower.iter().zip(&pure_box.upper).map(|(&a, &b)| a + b - 1).collect();
    let deg_g: i64 = g_coeffs.iter().sum();
    let span: i64 = pure_box.upper.iter().zip(&pure_box.lower).map(|(&b, &a)| b - a).sum();
    let d_lower = deg_g - (2 * fam.genus - 2) + pure_box.dim() as i64 + span;
    assemble(fam, pure_box.places.clone(), g_coeffs, n, d_lower)
}

fn equal_multiplicity(fam: &CurveFamilyInstance) -> Result<(i64, i64)> {
    let lambdas = fam.curve.lambdas();
    if lambdas.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::FamilyConstraint(format!(
            "construction needs equal multiplicities, curve has {lambdas:?}"
        )));
    }
    Ok((fam.curve.m(), fam.curve.branch_count() as i64))
}

/// Codes on s finite totally ramified places:
/// G = ((2k+1)m - ceil((k+1)m/r)) Q_1 + sum_{i=2}^s (m - ceil((k+i)m/r)) Q_i.
pub fn construction1(
    fam: &CurveFamilyInstance,
    s: i64,
    k: i64,
    n: Option<i64>,
) -> Result<CodeDesign> {
    let (m, r) = equal_multiplicity(fam)?;
    family_box_finite(m, r, s, k)?;
    let mut g_coeffs = vec![(2 * k + 1) * m - ceil_div((k + 1) * m, r)];
    g_coeffs.extend((2..=s).map(|i| m - ceil_div((k + i) * m, r)));
    let deg_g: i64 = g_coeffs.iter().sum();
    let d_lower = deg_g - (2 * fam.genus - 2) + s * m
        - (1..=s).map(|i| ceil_div((k + i) * m, r)).sum::<i64>();
    let places = (1..=s as usize).map(PlaceRef::Finite).collect();
    assemble(fam, places, g_coeffs, n, d_lower)
}

/// Codes on the infinite place plus s finite ones, for m dividing r+1:
/// G = ((2k+1)m - ceil((k+1)m/r)) Q_inf + sum (m - ceil((k+i+1)m/r)) Q_i.
pub fn construction2(
    fam: &CurveFamilyInstance,
    s: i64,
    k: i64,
    n: Option<i64>,
) -> Result<CodeDesign> {
    let (m, r) = equal_multiplicity(fam)?;
    family_box_infinity_v(m, r, s, k)?;
    let mut g_coeffs = vec![(2 * k + 1) * m - ceil_div((k + 1) * m, r)];
    g_coeffs.extend((1..=s).map(|i| m - ceil_div((k + i + 1) * m, r)));
    let deg_g: i64 = g_coeffs.iter().sum();
    let d_lower = deg_g - (2 * fam.genus - 2) + (s + 1) * m
        - (0..=s).map(|i| ceil_div((k + i + 1) * m, r)).sum::<i64>();
    let places = std::iter::once(PlaceRef::Infinity)
        .chain((1..=s as usize).map(PlaceRef::Finite))
        .collect();
    assemble(fam, places, g_coeffs, n, d_lower)
}

/// Codes on the infinite place plus s finite ones, for m = ur + 1:
/// G = ((2c+2)r - s - 3) Q_inf + sum (u(r-i) - c - 1) Q_i.
pub fn construction3(
    fam: &CurveFamilyInstance,
    s: i64,
    c: i64,
    n: Option<i64>,
) -> Result<CodeDesign> {
    let (m, r) = equal_multiplicity(fam)?;
    family_box_infinity_u(m, r, s, c)?;
    let u = (m - 1) / r;
    let mut g_coeffs = vec![(2 * c + 2) * r - s - 3];
    g_coeffs.extend((1..=s).map(|i| u * (r - i) - c - 1));
    let deg_g: i64 = g_coeffs.iter().sum();
    let d_lower = deg_g - (2 * fam.genus - 2) + 1 + (u * r - c) * s - s * (s + 1) * u / 2;
    let places = std::iter::once(PlaceRef::Infinity)
        .chain((1..=s as usize).map(PlaceRef::Finite))
        .collect();
    assemble(fam, places, g_coeffs, n, d_lower)
}

/// Identifies one of the three cataloged curve families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// y^m = (x^e - x)^(e-1) over GF(q^t) with e = q^(t/2); needs t even,
    /// m | q^t - 1, and gcd(m, e-1) = 1.
    One { q: i64, t: i64, m: i64 },
    /// y^m = x^q + x over GF(q^2); needs m | q + 1.
    Two { q: i64, m: i64 },
    /// y^(q+1) = x^(q/2) + ... + x over GF(q^2) with q = 2^t, t >= 2.
    Three { q: i64 },
}

fn is_prime_power(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = n;
    for cand in 2..i64::MAX {
        if (cand as i128) * (cand as i128) > n as i128 {
            break;
        }
        if n % cand == 0 {
            p = cand;
            break;
        }
    }
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
    }
    rest == 1
}

fn constraint(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::FamilyConstraint(msg()))
    }
}

/// Instantiates a cataloged family: builds the curve, takes the genus
/// from it, and attaches the family's closed-form rational place count.
pub fn catalog(spec: FamilySpec) -> Result<CurveFamilyInstance> {
    match spec {
        FamilySpec::One { q, t, m } => {
            constraint(is_prime_power(q), || format!("q={q} is not a prime power"))?;
            constraint(t >= 2 && t % 2 == 0, || format!("t={t} is not even and positive"))?;
            constraint(m >= 2, || format!("m={m} is too small"))?;
            let qt = (q as i128).checked_pow(t as u32).ok_or(Error::Overflow)?;
            let e = (q as i128).pow(t as u32 / 2);
            let r = i64::try_from(e).map_err(|_| Error::Overflow)?;
            constraint((qt - 1) % m as i128 == 0, || format!("m={m} does not divide q^t-1"))?;
            constraint(crate::curve::gcd(r - 1, m) == 1, || {
                format!("m={m} shares a factor with q^(t/2)-1={}", r - 1)
            })?;
            let n_rational = i128::from(m) * (qt - e) + e + 1;
            let n_rational = i64::try_from(n_rational).map_err(|_| Error::Overflow)?;
            let curve = KummerCurve::new(m, vec![r - 1; r as usize])?;
            let fam = CurveFamilyInstance::new(curve, n_rational, format!("q{q}t{t}m{m}"))?;
            debug_assert_eq!(fam.genus, (r - 1) * (m - 1) / 2);
            Ok(fam)
        }
        FamilySpec::Two { q, m } => {
            constraint(is_prime_power(q), || format!("q={q} is not a prime power"))?;
            constraint(m >= 2 && (q + 1) % m == 0, || format!("m={m} does not divide q+1"))?;
            let curve = KummerCurve::new(m, vec![1; q as usize])?;
            let n_rational = q * (1 + (q - 1) * m) + 1;
            let fam = CurveFamilyInstance::new(curve, n_rational, format!("q{q}m{m}"))?;
            debug_assert_eq!(fam.genus, (m - 1) * (q - 1) / 2);
            Ok(fam)
        }
        FamilySpec::Three { q } => {
            constraint(q >= 4 && q.count_ones() == 1, || {
                format!("q={q} is not a power of two with q >= 4")
            })?;
            let m = q + 1;
            let r = q / 2;
            let curve = KummerCurve::new(m, vec![1; r as usize])?;
            let genus = curve.genus();
            let n_rational = 1 + q * q + 2 * genus * q;
            let mut fam = CurveFamilyInstance::new(curve, n_rational, format!("q{q}"))?;
            fam.notes.push(format!(
                "genus q(q-2)/4 = {genus} follows from (m-1)(r-1)/2 with m={m}, r={r}; \
                 the alternative value q(q-2)/2 = {} is inconsistent with it",
                q * (q - 2) / 2
            ));
            Ok(fam)
        }
    }
}

/// One row of a parameter table: the family inputs, the shape parameter,
/// the resulting design, and the quoted distance improvement, which is
/// carried as unverified metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: u8,
    pub q: i64,
    pub t: Option<i64>,
    pub m: i64,
    pub s: i64,
    pub k: i64,
    pub design: CodeDesign,
    pub improvement: i64,
}

const TABLE1: [(i64, i64, i64, i64, i64, i64); 6] = [
    (8, 2, 9, 2, 5, 3),
    (8, 2, 9, 3, 4, 2),
    (8, 2, 3, 2, 3, 1),
    (9, 2, 5, 2, 5, 2),
    (9, 2, 5, 3, 4, 1),
    (5, 2, 3, 2, 1, 0),
];

const TABLE3: [(i64, i64, i64, i64, i64); 8] = [
    (5, 6, 2, 2, 1),
    (7, 8, 2, 4, 3),
    (7, 4, 2, 3, 1),
    (8, 9, 2, 5, 3),
    (8, 3, 2, 3, 1),
    (9, 5, 2, 5, 2),
    (9, 5, 3, 4, 1),
    (9, 2, 2, 2, 0),
];

/// Recomputes every row of the requested parameter table (1-4) from its
/// family and construction; nothing is read back from stored triples.
pub fn table_rows(table: u8) -> Result<Vec<TableRow>> {
    let rows = match table {
        1 => TABLE1
            .iter()
            .map(|&(q, t, m, s, k, imp)| {
                let fam = catalog(FamilySpec::One { q, t, m })?;
                let design = construction1(&fam, s, k, None)?;
                Ok(TableRow { table, q, t: Some(t), m, s, k, design, improvement: imp })
            })
            .collect::<Result<Vec<_>>>()?,
        2 => TABLE1
            .iter()
            .map(|&(q, t, m, s, k, imp)| {
                let fam = catalog(FamilySpec::One { q, t, m })?;
                let design = construction2(&fam, s - 1, k, None)?;
                Ok(TableRow { table, q, t: Some(t), m, s: s - 1, k, design, improvement: imp })
            })
            .collect::<Result<Vec<_>>>()?,
        3 => TABLE3
            .iter()
            .map(|&(q, m, s, k, imp)| {
                let fam = catalog(FamilySpec::Two { q, m })?;
                let design = construction1(&fam, s, k, None)?;
                Ok(TableRow { table, q, t: None, m, s, k, design, improvement: imp })
            })
            .collect::<Result<Vec<_>>>()?,
        4 => TABLE3
            .iter()
            .map(|&(q, m, s, k, imp)| {
                let fam = catalog(FamilySpec::Two { q, m })?;
                let design = construction2(&fam, s - 1, k, None)?;
                Ok(TableRow { table, q, t: None, m, s: s - 1, k, design, improvement: imp })
            })
            .collect::<Result<Vec<_>>>()?,
        other => return Err(Error::UnknownTable(other)),
    };
    Ok(rows)
}

/// All four tables in order.
pub fn reproduce_tables() -> Result<Vec<TableRow>> {
    let mut all = Vec::new();
    for table in 1..=4 {
        all.extend(table_rows(table)?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record_family() -> CurveFamilyInstance {
        let curve = KummerCurve::new(8, vec![3, 7, 7]).unwrap();
        CurveFamilyInstance::new(curve, 76, "gf25-record").unwrap()
    }

    #[test]
    fn catalog_examples() {
        let f = catalog(FamilySpec::One { q: 8, t: 2, m: 9 }).unwrap();
        assert_eq!(f.curve.branch_count(), 8);
        assert_eq!(f.curve.lambdas()[0], 7);
        assert_eq!(f.genus, 28);
        assert_eq!(f.n_rational, 513);

        let f = catalog(FamilySpec::Two { q: 5, m: 6 }).unwrap();
        assert_eq!(f.curve.branch_count(), 5);
        assert_eq!(f.genus, 10);
        assert_eq!(f.n_rational, 126);

        let f = catalog(FamilySpec::Three { q: 8 }).unwrap();
        assert_eq!(f.curve.m(), 9);
        assert_eq!(f.curve.branch_count(), 4);
        assert_eq!(f.genus, 12);
        assert_eq!(f.n_rational, 257);
        assert!(!f.notes.is_empty());
    }

    #[test]
    fn catalog_constraints() {
        assert!(catalog(FamilySpec::One { q: 8, t: 2, m: 5 }).is_err());
        assert!(catalog(FamilySpec::One { q: 8, t: 2, m: 7 }).is_err());
        assert!(catalog(FamilySpec::One { q: 8, t: 3, m: 9 }).is_err());
        assert!(catalog(FamilySpec::One { q: 6, t: 2, m: 5 }).is_err());
        assert!(catalog(FamilySpec::Two { q: 5, m: 4 }).is_err());
        assert!(catalog(FamilySpec::Three { q: 6 }).is_err());
        assert!(catalog(FamilySpec::Three { q: 2 }).is_err());
    }

    #[test]
    fn record_codes_from_boxes() {
        let fam = record_family();
        let places = vec![PlaceRef::Finite(1), PlaceRef::Finite(2)];

        let b1 = PureGapBox::new(places.clone(), vec![2, 9], vec![2, 9]).unwrap();
        let c1 = code_from_box(&fam, &b1, Some(74)).unwrap();
        assert_eq!(c1.g_coeffs, vec![3, 17]);
        assert_eq!(c1.triple(), (74, 60, 10));

        let b2 = PureGapBox::new(places, vec![10, 1], vec![10, 1]).unwrap();
        let c2 = code_from_box(&fam, &b2, Some(74)).unwrap();
        assert_eq!(c2.g_coeffs, vec![19, 1]);
        assert_eq!(c2.triple(), (74, 60, 10));

        for n in 69..=74 {
            let c = code_from_box(&fam, &b1, Some(n)).unwrap();
            assert_eq!(c.triple(), (n, n - 14, 10));
        }
        assert!(matches!(
            code_from_box(&fam, &b1, Some(75)),
            Err(Error::WindowViolation { .. })
        ));
        assert!(code_from_box(&fam, &b1, Some(20)).is_err());
    }

    #[test]
    fn construction1_examples() {
        let fam = catalog(FamilySpec::One { q: 8, t: 2, m: 9 }).unwrap();
        assert_eq!(construction1(&fam, 2, 5, None).unwrap().triple(), (511, 445, 42));

        let fam = catalog(FamilySpec::Two { q: 5, m: 6 }).unwrap();
        assert_eq!(construction1(&fam, 2, 2, None).unwrap().triple(), (124, 106, 12));

        let fam = catalog(FamilySpec::One { q: 9, t: 2, m: 5 }).unwrap();
        assert_eq!(fam.n_rational, 370);
        assert_eq!(construction1(&fam, 3, 4, None).unwrap().triple(), (367, 338, 18));
    }

    #[test]
    fn construction2_examples() {
        let fam = catalog(FamilySpec::One { q: 8, t: 2, m: 9 }).unwrap();
        assert_eq!(construction2(&fam, 1, 5, None).unwrap().triple(), (511, 445, 42));

        let fam = catalog(FamilySpec::Two { q: 9, m: 5 }).unwrap();
        assert_eq!(construction2(&fam, 2, 4, None).unwrap().triple(), (367, 338, 18));

        let fam = catalog(FamilySpec::One { q: 5, t: 2, m: 3 }).unwrap();
        assert_eq!(construction2(&fam, 1, 1, None).unwrap().triple(), (64, 59, 4));
    }

    #[test]
    fn construction3_example() {
        let fam = catalog(FamilySpec::Three { q: 8 }).unwrap();
        let design = construction3(&fam, 1, 3, Some(255)).unwrap();
        assert_eq!(design.triple(), (255, 236, 12));
        assert_eq!(design.g_coeffs, vec![28, 2]);
        assert_eq!(construction3(&fam, 1, 3, None).unwrap().triple(), (255, 236, 12));
    }

    #[test]
    fn constructions_match_box_route() {
        fn both(
            label: &str,
            via_formula: Result<CodeDesign>,
            via_box: Result<CodeDesign>,
        ) -> bool {
            match (via_formula, via_box) {
                (Ok(a), Ok(b)) => {
                    assert_eq!(a, b, "{label}");
                    true
                }
                (Err(_), Err(_)) => false,
                (a, b) => panic!("{label} disagreed: {a:?} vs {b:?}"),
            }
        }

        let fam1 = catalog(FamilySpec::One { q: 8, t: 2, m: 9 }).unwrap();
        let (m, r) = (9, 8);
        let mut produced = 0;
        for s in 2..=3 {
            for k in 0..=(r - s - 1) {
                let via_box =
                    code_from_box(&fam1, &family_box_finite(m, r, s, k).unwrap(), None);
                if both(
                    &format!("construction1 s={s} k={k}"),
                    construction1(&fam1, s, k, None),
                    via_box,
                ) {
                    produced += 1;
                }
            }
        }
        for s in 1..=2 {
            for k in 0..=(r - 1 - 1 - s) {
                let via_box =
                    code_from_box(&fam1, &family_box_infinity_v(m, r, s, k).unwrap(), None);
                if both(
                    &format!("construction2 s={s} k={k}"),
                    construction2(&fam1, s, k, None),
                    via_box,
                ) {
                    produced += 1;
                }
            }
        }
        let fam3 = catalog(FamilySpec::Three { q: 8 }).unwrap();
        for s in 1..=2 {
            for c in 0..=(2 * (4 - s - 1) - 1) {
                let via_box = family_box_infinity_u(9, 4, s, c)
                    .and_then(|b| code_from_box(&fam3, &b, None));
                if both(
                    &format!("construction3 s={s} c={c}"),
                    construction3(&fam3, s, c, None),
                    via_box,
                ) {
                    produced += 1;
                }
            }
        }
        assert!(produced >= 10, "only {produced} grid points passed the window");
    }

    #[test]
    fn design_identities() {
        for row in reproduce_tables().unwrap() {
            let d = &row.design;
            assert_eq!(d.k_dim, d.n + d.family.genus - 1 - d.deg_g());
            assert!(d.deg_g() > 2 * d.family.genus - 2);
            assert!(d.deg_g() < d.n);
            assert!(d.n <= d.family.n_rational - d.selection.len() as i64);
        }
    }

    #[test]
    fn table_triples() {
        let t1: Vec<(i64, i64, i64)> =
            table_rows(1).unwrap().iter().map(|r| r.design.triple()).collect();
        assert_eq!(
            t1,
            vec![
                (511, 445, 42),
                (510, 459, 30),
                (175, 161, 10),
                (368, 331, 24),
                (367, 338, 18),
                (64, 59, 4),
            ]
        );

        let t3: Vec<(i64, i64, i64)> =
            table_rows(3).unwrap().iter().map(|r| r.design.triple()).collect();
        assert_eq!(
            t3,
            vec![
                (124, 106, 12),
                (342, 295, 30),
                (174, 156, 12),
                (511, 445, 42),
                (175, 161, 10),
                (368, 331, 24),
                (367, 338, 18),
                (152, 145, 6),
            ]
        );

        for (pair, shift) in [((1u8, 2u8), 1i64), ((3, 4), 1)] {
            let base = table_rows(pair.0).unwrap();
            let other = table_rows(pair.1).unwrap();
            assert_eq!(base.len(), other.len());
            for (a, b) in base.iter().zip(&other) {
                assert_eq!(a.design.triple(), b.design.triple());
                assert_eq!(a.s - shift, b.s);
                assert_eq!(a.k, b.k);
            }
        }
        assert!(table_rows(5).is_err());
    }

    #[test]
    fn window_enforced() {
        let fam = catalog(FamilySpec::Two { q: 9, m: 2 }).unwrap();
        assert!(matches!(
            construction1(&fam, 2, 2, Some(153)),
            Err(Error::WindowViolation { .. })
        ));
        assert!(construction1(&fam, 2, 9, None).is_err());
        let tiny = CurveFamilyInstance::new(KummerCurve::new(2, vec![1]).unwrap(), 4, "tiny");
        assert!(tiny.is_ok());
        assert!(CurveFamilyInstance::new(KummerCurve::new(2, vec![1]).unwrap(), 0, "bad").is_err());
    }
}

//! Randomized cross-checks: the fast pure-gap criterion against the
//! brute-force scan, gap counts against the genus, and the closed-form
//! set descriptions against the extension algorithm.

use kummer_gaps::closedform::{
    pure_gaps_finite, pure_gaps_with_infinity_general, pure_gaps_with_infinity_v,
};
use kummer_gaps::curve::gcd;
use kummer_gaps::gaps::gap_set;
use kummer_gaps::puregaps::{full_pure_gap_set, is_pure_gap, is_pure_gap_oracle};
use kummer_gaps::{KummerCurve, PlaceRef};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct VerifyConfig {
    pub max_m: i64,
    pub max_r: i64,
    pub max_s: usize,
    pub max_lambda: i64,
    pub curves: usize,
    pub seed: u64,
    pub inject_fault: bool,
}

pub struct VerifyOutcome {
    pub lines: Vec<String>,
    pub mismatches: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn random_curve(rng: &mut StdRng, cfg: &VerifyConfig) -> KummerCurve {
    loop {
        let m = rng.gen_range(2..=cfg.max_m);
        let r = rng.gen_range(1..=cfg.max_r);
        let lambdas: Vec<i64> = (0..r)
            .map(|_| {
                let v = rng.gen_range(1..=cfg.max_lambda);
                if rng.gen_bool(0.5) {
                    -v
                } else {
                    v
                }
            })
            .collect();
        if let Ok(c) = KummerCurve::new(m, lambdas) {
            return c;
        }
    }
}

fn choose(rng: &mut StdRng, pool: &[PlaceRef], size: usize) -> Vec<PlaceRef> {
    let mut idx: Vec<usize> = (0..pool.len()).collect();
    for i in 0..size {
        let j = rng.gen_range(i..idx.len());
        idx.swap(i, j);
    }
    let mut picked = idx[..size].to_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| pool[i]).collect()
}

fn advance(tuple: &mut [i64], hi: i64) -> bool {
    for slot in tuple.iter_mut().rev() {
        if *slot < hi {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

pub fn run(cfg: &VerifyConfig) -> VerifyOutcome {
    let mut lines = Vec::new();
    let mut mismatches = Vec::new();

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut inject = cfg.inject_fault;
    let mut selections = 0u64;
    let mut tuples = 0u64;
    let mut criterion_bad = 0u64;
    let mut places = 0u64;
    let mut count_bad = 0u64;
    'curves: for _ in 0..cfg.curves {
        let c = random_curve(&mut rng, cfg);
        let ramified: Vec<PlaceRef> =
            c.places().filter(|&p| c.is_totally_ramified(p).unwrap_or(false)).collect();
        for &p in &ramified {
            places += 1;
            let count = gap_set(&c, p).expect("place is totally ramified").len() as i64;
            if count != c.genus() {
                count_bad += 1;
                mismatches.push(format!(
                    "gap-count mismatch: m={} lambdas={:?} place={p} gaps={count} genus={}",
                    c.m(),
                    c.lambdas(),
                    c.genus()
                ));
                break 'curves;
            }
        }
        for size in 1..=cfg.max_s + 1 {
            if size > ramified.len() {
                break;
            }
            let sel = c
                .select(choose(&mut rng, &ramified, size))
                .expect("places come from the curve itself");
            selections += 1;
            let mut tuple = vec![0i64; size];
            loop {
                tuples += 1;
                let mut criterion =
                    is_pure_gap(&c, &sel, &tuple).expect("tuple shape matches selection");
                if std::mem::take(&mut inject) {
                    criterion = !criterion;
                }
                let oracle =
                    is_pure_gap_oracle(&c, &sel, &tuple).expect("tuple shape matches selection");
                if criterion != oracle {
                    criterion_bad += 1;
                    let fault = if cfg.inject_fault { " (injected fault)" } else { "" };
                    let place_names: Vec<String> =
                        sel.places().map(|p| p.to_string()).collect();
                    mismatches.push(format!(
                        "criterion mismatch: m={} lambdas={:?} places={:?} tuple={tuple:?} \
                         criterion={criterion} oracle={oracle}{fault}",
                        c.m(),
                        c.lambdas(),
                        place_names,
                    ));
                    break 'curves;
                }
                if !advance(&mut tuple, 2 * c.m()) {
                    break;
                }
            }
        }
    }
    lines.push(format!(
        "criterion-vs-oracle: curves={} selections={selections} tuples={tuples} \
         mismatches={criterion_bad}",
        cfg.curves
    ));
    lines.push(format!("gap-count-vs-genus: places={places} violations={count_bad}"));

    let mut grids = 0u64;
    let mut comparisons = 0u64;
    let mut closed_bad = 0u64;
    'grid: for m in 2..=cfg.max_m {
        for r in 2..=cfg.max_r {
            if gcd(m, r) != 1 {
                continue;
            }
            let second = (2..).find(|&l| gcd(m, l) == 1).expect("some integer is coprime to m");
            for s in 1..=(cfg.max_s as i64).min(r) {
                grids += 1;
                for l in [1, second] {
                    let c = KummerCurve::new(m, vec![l; r as usize])
                        .expect("equal coprime multiplicities are valid");
                    let mut trials: Vec<(&str, Vec<Vec<i64>>, Vec<PlaceRef>)> = Vec::new();
                    if s >= 2 {
                        trials.push((
                            "finite",
                            pure_gaps_finite(m, r, s).expect("parameters are in range"),
                            (1..=s as usize).map(PlaceRef::Finite).collect(),
                        ));
                    }
                    let with_inf: Vec<PlaceRef> = std::iter::once(PlaceRef::Infinity)
                        .chain((1..=s as usize).map(PlaceRef::Finite))
                        .collect();
                    trials.push((
                        "infinity",
                        pure_gaps_with_infinity_general(m, r, s).expect("parameters are in range"),
                        with_inf.clone(),
                    ));
                    if (r + 1) % m == 0 {
                        trials.push((
                            "infinity-v",
                            pure_gaps_with_infinity_v(m, r, s).expect("parameters are in range"),
                            with_inf,
                        ));
                    }
                    for (label, expected, place_list) in trials {
                        comparisons += 1;
                        let sel = c.select(place_list).expect("selection is valid");
                        let got =
                            full_pure_gap_set(&c, &sel).expect("selection is totally ramified");
                        if got != expected {
                            closed_bad += 1;
                            mismatches.push(format!(
                                "closed-form mismatch ({label}): m={m} r={r} s={s} lambda={l} \
                                 closed-form={} tuples, algorithm={} tuples",
                                expected.len(),
                                got.len()
                            ));
                            break 'grid;
                        }
                    }
                }
            }
        }
    }
    lines.push(format!(
        "closedform-vs-engine: parameter-sets={grids} comparisons={comparisons} \
         mismatches={closed_bad}"
    ));

    VerifyOutcome { lines, mismatches }
}

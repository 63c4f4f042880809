//! Exact-rational recomputation of normalization, weighted sums and ranking.
//! Shares no code with the engine; inputs are converted from `f64` exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub struct Instance {
    pub ids: Vec<u64>,
    /// true = benefit, false = cost
    pub benefit: Vec<bool>,
    pub weights: Vec<f64>,
    /// rows = alternatives
    pub values: Vec<Vec<f64>>,
}

pub struct OracleRow {
    pub id: u64,
    pub normalized: Vec<BigRational>,
    pub v: BigRational,
    pub rank: u32,
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Rows in input order with their exact V and rank.
pub fn evaluate(inst: &Instance) -> Vec<OracleRow> {
    let m = inst.values.len();
    let n = inst.weights.len();
    let x: Vec<Vec<BigRational>> = inst.values.iter().map(|r| r.iter().map(|&v| exact(v)).collect()).collect();
    let mut r = vec![vec![BigRational::zero(); n]; m];
    for j in 0..n {
        let col: Vec<&BigRational> = x.iter().map(|row| &row[j]).collect();
        if inst.benefit[j] {
            let max = col.iter().copied().max().unwrap().clone();
            if !max.is_zero() {
                for i in 0..m {
                    r[i][j] = &x[i][j] / &max;
                }
            }
        } else {
            let min = col.iter().copied().min().unwrap().clone();
            for i in 0..m {
                r[i][j] = &min / &x[i][j];
            }
        }
    }
    let v: Vec<BigRational> = r
        .iter()
        .map(|row| {
            row.iter()
                .zip(&inst.weights)
                .fold(BigRational::zero(), |acc, (rij, &w)| acc + rij * exact(w))
        })
        .collect();
    // rank: count strictly better alternatives, ties broken by smaller id
    (0..m)
        .map(|i| {
            let better = (0..m)
                .filter(|&k| v[k] > v[i] || (v[k] == v[i] && inst.ids[k] < inst.ids[i]))
                .count();
            OracleRow {
                id: inst.ids[i],
                normalized: r[i].clone(),
                v: v[i].clone(),
                rank: better as u32 + 1,
            }
        })
        .collect()
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap()
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

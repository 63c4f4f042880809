//! Random decision problems on the quarter grid.

use placement_core::{Attribute, CrispRule, CriterionKind, CriterionSpec};
use rand::Rng;

use super::oracle::Instance;

pub fn random_instance(rng: &mut impl Rng, max_m: usize, max_n: usize) -> Instance {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    let benefit: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let weights = (0..n).map(|_| rng.gen_range(1..=4) as f64 * 0.25).collect();
    let values = (0..m)
        .map(|_| {
            benefit
                .iter()
                .map(|&b| {
                    let lo = if b { 0 } else { 1 };
                    rng.gen_range(lo..=4) as f64 * 0.25
                })
                .collect()
        })
        .collect();
    // distinct ids, not in input order
    let mut ids: Vec<u64> = (1..=20).collect();
    for i in 0..m {
        let k = rng.gen_range(i..ids.len());
        ids.swap(i, k);
    }
    ids.truncate(m);
    Instance { ids, benefit, weights, values }
}

/// Criterion specs carrying only kind and weight; the attribute binding is
/// irrelevant once the crisp matrix exists.
pub fn specs_for(inst: &Instance) -> Vec<CriterionSpec> {
    inst.benefit
        .iter()
        .zip(&inst.weights)
        .enumerate()
        .map(|(j, (&b, &w))| CriterionSpec {
            code: format!("C{}", j + 1),
            name: format!("criterion {}", j + 1),
            kind: if b { CriterionKind::Benefit } else { CriterionKind::Cost },
            attribute: Attribute::Age,
            weight: w,
            weight_label: None,
            crisp_map: vec![CrispRule::range(0, None, 1.0)],
        })
        .collect()
}

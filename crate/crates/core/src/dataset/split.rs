use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
    Test2,
}

impl Split {
    pub const ALL: [Split; 4] = [Split::Train, Split::Val, Split::Test, Split::Test2];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
            Split::Test2 => "test2",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn check_fractions(fractions: &BTreeMap<Split, f64>) -> Result<()> {
    if let Some((s, f)) = fractions.iter().find(|(_, f)| !(f.is_finite() && **f >= 0.0)) {
        return Err(Error::Config(format!(
            "split fraction for {s} must be finite and non-negative, got {f}"
        )));
    }
    let total: f64 = fractions.values().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!("split fractions must sum to 1, got {total}")));
    }
    Ok(())
}

/// Number of sources per split by largest-remainder rounding. Ties on the
/// remainder go to the earlier split.
pub fn split_counts(n: usize, fractions: &BTreeMap<Split, f64>) -> BTreeMap<Split, usize> {
    let mut counts: BTreeMap<Split, usize> = BTreeMap::new();
    let mut remainders = Vec::new();
    for (&split, &f) in fractions {
        if f <= 0.0 {
            continue;
        }
        let exact = f * n as f64;
        let whole = exact.floor() as usize;
        counts.insert(split, whole);
        remainders.push((split, exact - whole as f64));
    }
    let assigned: usize = counts.values().sum();
    remainders.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    for (split, _) in remainders.iter().take(n.saturating_sub(assigned)) {
        *counts.get_mut(split).expect("split present") += 1;
    }
    counts
}

/// Assigns whole sources to splits. Sources are sorted, shuffled with
/// `seed`, and cut into consecutive runs in split order.
pub fn assign_splits(
    sources: &[String],
    fractions: &BTreeMap<Split, f64>,
    seed: u64,
) -> Result<BTreeMap<String, Split>> {
    check_fractions(fractions)?;
    let unique: BTreeSet<&String> = sources.iter().collect();
    if unique.len() != sources.len() {
        return Err(Error::Validation("duplicate source ids".into()));
    }
    let active = fractions.values().filter(|f| **f > 0.0).count();
    if sources.len() < active {
        return Err(Error::Validation(format!(
            "{} sources cannot fill {active} splits",
            sources.len()
        )));
    }
    let mut order: Vec<&String> = unique.into_iter().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut out = BTreeMap::new();
    let mut it = order.into_iter();
    for (split, count) in split_counts(sources.len(), fractions) {
        for s in it.by_ref().take(count) {
            out.insert(s.clone(), split);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(pairs: &[(Split, f64)]) -> BTreeMap<Split, f64> {
        pairs.iter().copied().collect()
    }

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    #[test]
    fn low_resolution_fractions() {
        let f = fr(&[(Split::Train, 0.778), (Split::Val, 0.111), (Split::Test, 0.111)]);
        let c = split_counts(9, &f);
        assert_eq!(
            c,
            BTreeMap::from([(Split::Train, 7), (Split::Val, 1), (Split::Test, 1)])
        );
    }

    #[test]
    fn four_way_largest_remainder() {
        let f = fr(&[
            (Split::Train, 0.615),
            (Split::Val, 0.112),
            (Split::Test, 0.205),
            (Split::Test2, 0.068),
        ]);
        let c = split_counts(161, &f);
        assert_eq!(c.values().copied().collect::<Vec<_>>(), [99, 18, 33, 11]);
        let map = assign_splits(&ids(161), &f, 4).unwrap();
        assert_eq!(map.len(), 161);
        assert_eq!(map, assign_splits(&ids(161), &f, 4).unwrap());
    }

    #[test]
    fn errors() {
        let f = fr(&[(Split::Train, 0.5), (Split::Test, 0.5)]);
        assert!(assign_splits(&ids(1), &f, 0).is_err());
        assert!(assign_splits(&ids(3), &fr(&[(Split::Train, 0.9)]), 0).is_err());
        let all_train = assign_splits(&ids(1), &fr(&[(Split::Train, 1.0)]), 0).unwrap();
        assert_eq!(all_train["s0"], Split::Train);
    }
}

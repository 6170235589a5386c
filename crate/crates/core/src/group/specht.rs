//! Hook lengths, Murnaghan–Nakayama, and the decomposition of the tensor
//! square of the deleted permutation representation.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

use super::stats::{factorial, partitions, ConjugacyClass, Twist};

/// Largest `m` for which character values are evaluated class by class.
pub const MN_MAX_DEGREE: u32 = 10;

fn validate(partition: &[u32]) -> Result<()> {
    let ok = !partition.is_empty()
        && partition.iter().all(|&p| p > 0)
        && partition.windows(2).all(|w| w[0] >= w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPartition(partition.to_vec()))
    }
}

/// Dimension of the Specht module `S^λ` by the hook length formula.
pub fn specht_dim(partition: &[u32]) -> Result<BigUint> {
    validate(partition)?;
    let m: u32 = partition.iter().sum();
    let mut hooks = BigUint::from(1u32);
    for (i, &row) in partition.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = partition[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            hooks *= arm + leg + 1;
        }
    }
    Ok(factorial(m) / hooks)
}

/// `χ^λ(μ)` by Murnaghan–Nakayama on beta-sets: removing a rim hook of
/// length `r` moves one bead from `b` to `b - r`, with sign `(-1)^{#beads
/// strictly between}`.
pub fn mn_character(lambda: &[u32], mu: &[u32]) -> Result<i64> {
    validate(lambda)?;
    validate(mu)?;
    let m: u32 = lambda.iter().sum();
    if mu.iter().sum::<u32>() != m {
        return Err(Error::InvalidArgument(format!(
            "cycle type {mu:?} is not a partition of {m}"
        )));
    }
    if m > MN_MAX_DEGREE {
        return Err(Error::GroupDegreeOutOfRange { m });
    }
    let k = lambda.len() as u32;
    let beads: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l + k - 1 - i as u32)
        .collect();
    Ok(mn_rec(&beads, mu))
}

fn mn_rec(beads: &[u32], mu: &[u32]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beads.iter().enumerate() {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beads.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beads.to_vec();
        next[idx] = target;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&next, rest);
    }
    total
}

/// The four constituents of `V ⊗ V` for `V` the deleted permutation
/// representation of `Sym(n+1)`.
pub fn tensor_square_constituents(n: u32) -> [Vec<u32>; 4] {
    let m = n + 1;
    [vec![m], vec![n, 1], vec![n - 1, 2], vec![n - 1, 1, 1]]
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorSquareReport {
    pub n: u32,
    pub dims: Vec<String>,
    pub formula_dims: Vec<String>,
    pub dim_sum: String,
    pub n_squared: String,
    pub dims_ok: bool,
    /// Number of classes of `Sym(n+1)` where `(fix-1)^2` was compared with
    /// the constituent characters; zero when `n+1` exceeds [`MN_MAX_DEGREE`].
    pub classes_checked: usize,
    pub pointwise_ok: Option<bool>,
}

impl TensorSquareReport {
    pub fn passed(&self) -> bool {
        self.dims_ok && self.pointwise_ok != Some(false)
    }
}

pub fn tensor_square_check(n: u32) -> Result<TensorSquareReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("tensor square needs n >= 3, got {n}")));
    }
    let parts = tensor_square_constituents(n);
    let dims: Vec<BigUint> = parts.iter().map(|p| specht_dim(p)).collect::<Result<_>>()?;
    let nb = BigUint::from(n);
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    let formula = vec![
        one.clone(),
        nb.clone(),
        (&nb + &one) * (&nb - &two) / &two,
        &nb * (&nb - &one) / &two,
    ];
    let dim_sum: BigUint = dims.iter().sum();
    let n_squared = &nb * &nb;
    let dims_ok = dims == formula && dim_sum == n_squared;

    let m = n + 1;
    let (classes_checked, pointwise_ok) = if m <= MN_MAX_DEGREE {
        let mut ok = true;
        let classes = partitions(m);
        for mu in &classes {
            let v = ConjugacyClass::new(mu.clone()).value(Twist::Plain);
            let mut rhs = 0;
            for lambda in &parts {
                rhs += mn_character(lambda, mu)?;
            }
            ok &= v * v == rhs;
        }
        (classes.len(), Some(ok))
    } else {
        (0, None)
    };

    Ok(TensorSquareReport {
        n,
        dims: dims.iter().map(ToString::to_string).collect(),
        formula_dims: formula.iter().map(ToString::to_string).collect(),
        dim_sum: dim_sum.to_string(),
        n_squared: n_squared.to_string(),
        dims_ok,
        classes_checked,
        pointwise_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::stats::build_stats;

    fn dim(p: &[u32]) -> u64 {
        specht_dim(p).unwrap().try_into().unwrap()
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(dim(&[5, 1]), 5);
        assert_eq!(dim(&[4, 2]), 9);
        assert_eq!(dim(&[4, 1, 1]), 10);
        assert_eq!(dim(&[6]), 1);
        assert_eq!(dim(&[1, 1, 1, 1, 1, 1]), 1);
        assert_eq!(dim(&[3, 2, 1]), 16);
        assert!(specht_dim(&[1, 2]).is_err());
        assert!(specht_dim(&[]).is_err());
        assert!(specht_dim(&[3, 0]).is_err());
    }

    #[test]
    fn dims_square_sum_to_order() {
        for m in 1..=8u32 {
            let total: BigUint = partitions(m)
                .iter()
                .map(|p| {
                    let d = specht_dim(p).unwrap();
                    &d * &d
                })
                .sum();
            assert_eq!(total, factorial(m));
        }
    }

    #[test]
    fn mn_matches_dimension_and_known_values() {
        for lambda in partitions(6) {
            let at_id = mn_character(&lambda, &[1; 6]).unwrap();
            assert_eq!(BigUint::from(at_id as u64), specht_dim(&lambda).unwrap());
        }
        // Deleted permutation character.
        for mu in partitions(6) {
            let c = ConjugacyClass::new(mu.clone());
            assert_eq!(mn_character(&[5, 1], &mu).unwrap(), c.value(Twist::Plain));
            assert_eq!(mn_character(&[1; 6], &mu).unwrap(), c.sign as i64);
        }
        assert!(mn_character(&[11], &[11]).is_err());
        assert!(mn_character(&[3], &[2]).is_err());
    }

    #[test]
    fn mn_column_orthogonality() {
        let s = build_stats(6).unwrap();
        let lambdas = partitions(6);
        for a in &lambdas {
            for b in &lambdas {
                let mut inner = BigUint::from(0u32);
                let mut neg = BigUint::from(0u32);
                for c in &s.classes {
                    let v = mn_character(a, &c.cycle_type).unwrap() * mn_character(b, &c.cycle_type).unwrap();
                    let w = &c.size * BigUint::from(v.unsigned_abs());
                    if v >= 0 {
                        inner += w;
                    } else {
                        neg += w;
                    }
                }
                let expected = if a == b { s.order() } else { BigUint::from(0u32) };
                assert_eq!(inner - neg, expected);
            }
        }
    }

    #[test]
    fn tensor_square_reports() {
        for (n, dims) in [(5u32, ["1", "5", "9", "10"]), (7, ["1", "7", "20", "21"])] {
            let r = tensor_square_check(n).unwrap();
            assert!(r.passed());
            assert_eq!(r.dims, dims);
        }
        let r5 = tensor_square_check(5).unwrap();
        assert_eq!((r5.classes_checked, r5.pointwise_ok), (11, Some(true)));
        let r13 = tensor_square_check(13).unwrap();
        assert!(r13.dims_ok);
        assert_eq!(r13.pointwise_ok, None);
        assert!(tensor_square_check(2).is_err());
    }
}

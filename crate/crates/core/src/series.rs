//! Partition counts and truncated q-series for characters.

/// All partitions of `n` as non-increasing part lists, in reverse
/// lexicographic order (`[n]` first).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Coefficients `0..=n` of `prod_{k>=1} (1 - q^k)^{-colors}`.
fn colored_partition_counts(n: usize, colors: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for _ in 0..colors {
        for k in 1..=n {
            for i in k..=n {
                c[i] += c[i - k];
            }
        }
    }
    c
}

pub fn partition_count(n: u32) -> u64 {
    colored_partition_counts(n as usize, 1)[n as usize]
}

/// Number of pairs of partitions of total size `n`:
/// `P2(n) = sum_i P(n - i) P(i)`.
pub fn p2(n: u32) -> u64 {
    colored_partition_counts(n as usize, 2)[n as usize]
}

pub fn p2_series(n: u32) -> Series {
    Series(
        colored_partition_counts(n as usize, 2)
            .into_iter()
            .map(|c| c as i64)
            .collect(),
    )
}

/// Integer power series truncated after a fixed number of coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series(pub Vec<i64>);

impl Series {
    pub fn one(n: u32) -> Self {
        let mut v = vec![0; n as usize + 1];
        v[0] = 1;
        Series(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplies by `(1 - q^k)`.
    pub fn times_one_minus_q_pow(&self, k: u32) -> Series {
        let k = k as usize;
        let mut out = self.0.clone();
        for i in (k..out.len()).rev() {
            out[i] -= self.0[i - k];
        }
        Series(out)
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: u32) -> Series {
        let n = self.0.len();
        let k = (k as usize).min(n);
        let mut out = vec![0; k];
        out.extend_from_slice(&self.0[..n - k]);
        Series(out)
    }

    pub fn add(&self, other: &Series) -> Series {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Series) -> Series {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn to_dims(&self) -> Vec<usize> {
        self.0.iter().map(|&c| c.max(0) as usize).collect()
    }
}

/// Truncated `sum_{i>=0} q^{ip} (1 - q^p)`, which telescopes to 1.
pub fn telescoping_sum(p: u32, n: u32) -> Series {
    let mut acc = Series(vec![0; n as usize + 1]);
    let base = Series::one(n).times_one_minus_q_pow(p);
    let mut i = 0;
    while i * p <= n {
        acc = acc.add(&base.shifted(i * p));
        i += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(p2(0), 1);
        assert_eq!(p2(2), 5);
        assert_eq!(p2(5), 36);
        assert_eq!(
            (0..8).map(partition_count).collect::<Vec<_>>(),
            [1, 1, 2, 3, 5, 7, 11, 15]
        );
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn p2_is_self_convolution() {
        for n in 0..=12u32 {
            let conv: u64 = (0..=n)
                .map(|i| partition_count(n - i) * partition_count(i))
                .sum();
            assert_eq!(p2(n), conv);
            assert_eq!(partitions(n).len() as u64, partition_count(n));
        }
    }

    #[test]
    fn series_ops() {
        let s = p2_series(5);
        assert_eq!(s.times_one_minus_q_pow(1).0, [1, 1, 3, 5, 10, 16]);
        assert_eq!(
            s.times_one_minus_q_pow(1).times_one_minus_q_pow(1).0,
            [1, 0, 2, 2, 5, 6]
        );
        assert_eq!(s.shifted(2).0, [0, 0, 1, 2, 5, 10]);
        assert_eq!(telescoping_sum(3, 8), Series::one(8));
    }
}

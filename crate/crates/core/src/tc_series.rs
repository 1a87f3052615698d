//! Generating functions `F(x) = Σ_{n≥1} TC_{n+1} x^n = P(x)/(1−x)^2`.
//!
//! The coefficient of `x^n` is `TC_{n+1}`, so the first stored value
//! (`TC_2`) is the coefficient of `x^1` and `F(0) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prefix `TC_2, …, TC_m` plus the eventual law `TC_{n+1} = slope·n + offset` for `n ≥ start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcSequence {
    pub values: Vec<i64>,
    pub slope: i64,
    pub offset: i64,
    /// Index `n₀ ≥ 1` from which the linear law holds.
    pub start: usize,
}

/// Coefficients of `P`, ascending powers of `x`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeratorPolynomial {
    pub coefficients: Vec<i64>,
}

impl NumeratorPolynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        NumeratorPolynomial { coefficients }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag = c.unsigned_abs();
            match (i, mag) {
                (0, m) => out.push_str(&m.to_string()),
                (1, 1) => out.push('x'),
                (1, m) => out.push_str(&format!("{m}x")),
                (e, 1) => out.push_str(&format!("x^{e}")),
                (e, m) => out.push_str(&format!("{m}x^{e}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl TcSequence {
    /// `a_n`, the coefficient of `x^n` in `F`.
    fn coefficient(&self, n: usize) -> i64 {
        if n == 0 {
            0
        } else if n <= self.values.len() {
            self.values[n - 1]
        } else {
            self.linear(n)
        }
    }

    fn linear(&self, n: usize) -> i64 {
        self.slope * n as i64 + self.offset
    }

    pub fn validate(&self) -> Result<()> {
        if self.start == 0 {
            return Err(Error::NotRational(
                "the linear law must start at n >= 1".into(),
            ));
        }
        if let Some(v) = self.values.iter().find(|&&v| v < 0) {
            return Err(Error::NotRational(format!("negative value {v}")));
        }
        for n in self.start..=self.values.len() {
            let (got, want) = (self.values[n - 1], self.linear(n));
            if got != want {
                return Err(Error::NotRational(format!(
                    "TC_{} = {got} breaks the declared law {}·{n} + {} = {want}",
                    n + 1,
                    self.slope,
                    self.offset
                )));
            }
        }
        if self.linear(self.start.max(self.values.len() + 1)) < 0 {
            return Err(Error::NotRational(
                "declared law produces negative values".into(),
            ));
        }
        Ok(())
    }
}

/// `TC_n = n·k` for `n = 2..=m`.
pub fn tc_sequence_linear(k: u32, m: usize) -> Result<TcSequence> {
    if k < 2 || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "need k >= 2 and m >= 2, got k = {k}, m = {m}"
        )));
    }
    let k = k as i64;
    Ok(TcSequence {
        values: (2..=m as i64).map(|n| n * k).collect(),
        slope: k,
        offset: k,
        start: 1,
    })
}

/// `P = (1−x)^2 F`, exact.
pub fn generating_polynomial(seq: &TcSequence) -> Result<NumeratorPolynomial> {
    seq.validate()?;
    let a = |n: usize| seq.coefficient(n);
    let p =
        |n: usize| a(n) - 2 * if n >= 1 { a(n - 1) } else { 0 } + if n >= 2 { a(n - 2) } else { 0 };
    // past start + 1 all three terms follow the linear law and cancel
    let last = seq.start + 1;
    let tail_end = (seq.values.len() + 2).max(last + 2);
    if let Some(n) = (last + 1..=tail_end).find(|&n| p(n) != 0) {
        return Err(Error::NotRational(format!(
            "coefficient of x^{n} in (1-x)^2 F does not vanish"
        )));
    }
    Ok(NumeratorPolynomial::new((0..=last).map(p).collect()))
}

/// First `count` coefficients of `P(x)/(1−x)^2`.
pub fn series_expand(poly: &NumeratorPolynomial, count: usize) -> Vec<i64> {
    (0..count)
        .map(|n| {
            poly.coefficients
                .iter()
                .enumerate()
                .take_while(|&(j, _)| j <= n)
                .map(|(j, &c)| c * (n - j + 1) as i64)
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: multiply the truncated series by (1 − 2x + x²) term by term.
    fn oracle_numerator(series: &[i64]) -> Vec<i64> {
        let kernel = [1i64, -2, 1];
        let mut out = vec![0i64; series.len()];
        for (i, &s) in series.iter().enumerate() {
            for (j, &c) in kernel.iter().enumerate() {
                if i + j < out.len() {
                    out[i + j] += s * c;
                }
            }
        }
        out
    }

    #[test]
    fn linear_sequences() {
        assert_eq!(tc_sequence_linear(2, 5).unwrap().values, vec![4, 6, 8, 10]);
        assert_eq!(tc_sequence_linear(3, 4).unwrap().values, vec![6, 9, 12]);
        assert_eq!(tc_sequence_linear(2, 2).unwrap().values, vec![4]);
        assert!(tc_sequence_linear(1, 4).is_err());
    }

    #[test]
    fn numerator_matches_oracle() {
        for k in 2..=6i64 {
            let series: Vec<i64> = (0..20)
                .map(|n| if n == 0 { 0 } else { k * (n + 1) })
                .collect();
            let oracle = oracle_numerator(&series);
            assert_eq!(&oracle[..3], &[0, 2 * k, -k]);
            assert!(oracle[3..].iter().all(|&c| c == 0));
            let seq = tc_sequence_linear(k as u32, 6).unwrap();
            assert_eq!(
                generating_polynomial(&seq).unwrap().coefficients,
                vec![0, 2 * k, -k]
            );
        }
    }

    #[test]
    fn k2_polynomial() {
        let p = generating_polynomial(&tc_sequence_linear(2, 5).unwrap()).unwrap();
        assert_eq!(p.render(), "4x - 2x^2");
        assert_eq!(series_expand(&p, 4), vec![0, 4, 6, 8]);
        assert_eq!(p.eval_at_one(), 2);
    }

    #[test]
    fn zero_and_identity_numerators() {
        let zero = TcSequence {
            values: vec![0, 0, 0],
            slope: 0,
            offset: 0,
            start: 1,
        };
        let p = generating_polynomial(&zero).unwrap();
        assert_eq!(p.degree(), None);
        assert_eq!(p.render(), "0");
        assert_eq!(series_expand(&p, 3), vec![0, 0, 0]);
        let x = NumeratorPolynomial::new(vec![0, 1]);
        assert_eq!(series_expand(&x, 5), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn late_start_raises_degree() {
        // TC_2 = 3, then TC_{n+1} = 2n + 2 from n = 2
        let seq = TcSequence {
            values: vec![3, 6, 8],
            slope: 2,
            offset: 2,
            start: 2,
        };
        let p = generating_polynomial(&seq).unwrap();
        assert!(p.degree().unwrap() <= 3);
        assert_eq!(series_expand(&p, 4)[1..], [3, 6, 8]);
    }

    #[test]
    fn rejects_inconsistent_law() {
        let seq = TcSequence {
            values: vec![4, 6, 9],
            slope: 2,
            offset: 2,
            start: 1,
        };
        assert!(matches!(
            generating_polynomial(&seq),
            Err(Error::NotRational(_))
        ));
    }
}

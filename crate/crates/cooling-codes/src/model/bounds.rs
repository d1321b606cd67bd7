//! Counting and Turán-type upper bounds on code sizes, plus the size
//! formulas of the earlier concatenation and sunflower constructions for
//! side-by-side comparison. All arithmetic is exact big-integer arithmetic;
//! 2^20-scale counts must never round.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Exact binomial coefficient; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The four size bounds for (n, t, w) codes.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Bounds {
    /// Counting bound for weight-at-most-w codes: sum of C(n-t, i), i <= w.
    pub lpc_count_bound: BigUint,
    /// Counting bound for constant-weight codes: C(n-t, w).
    pub cpc_count_bound: BigUint,
    /// Turán-system bound for constant-weight codes:
    /// floor((n-w+1)/(t+1) * C(n-t-1, w-1)).
    pub cpc_turan_bound: BigUint,
    /// Turán-augmented bound for weight-at-most-w codes:
    /// sum of C(n, i), i <= w-1, plus the constant-weight Turán bound.
    pub lpc_turan_bound: BigUint,
}

pub fn bounds(n: usize, t: usize, w: usize) -> Result<Bounds> {
    if t + w > n || w == 0 {
        return Err(Error::param(format!(
            "bounds need 1 <= w and t + w <= n; got n={n}, t={t}, w={w}"
        )));
    }
    let (n64, t64, w64) = (n as u64, t as u64, w as u64);
    let lpc_count_bound: BigUint = (0..=w64).map(|i| binomial(n64 - t64, i)).sum();
    let cpc_count_bound = binomial(n64 - t64, w64);
    let cpc_turan_bound =
        BigUint::from(n64 - w64 + 1) * binomial(n64 - t64 - 1, w64 - 1) / BigUint::from(t64 + 1);
    let below_w: BigUint = (0..w64).map(|i| binomial(n64, i)).sum();
    let lpc_turan_bound = below_w + &cpc_turan_bound;
    Ok(Bounds {
        lpc_count_bound,
        cpc_count_bound,
        cpc_turan_bound,
        lpc_turan_bound,
    })
}

/// Whether a comparison formula applies for the supplied parameters, and its
/// value when it does. Linear-code existence hypotheses are taken on the
/// caller's assertion; only the arithmetic conditions are checked here.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Applicability {
    Applicable { size: BigUint },
    NotApplicable { reason: String },
}

impl Applicability {
    pub fn size(&self) -> Option<&BigUint> {
        match self {
            Applicability::Applicable { size } => Some(size),
            Applicability::NotApplicable { .. } => None,
        }
    }
}

/// Size report for the concatenation construction: an (ms, t, mw')-LPC code
/// of size q^(m-t-1) when t+1 <= m/2, or q^(m-t) when t+1 <= m <= q+1.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConcatReport {
    pub n: usize,
    pub t: usize,
    pub w: usize,
    pub half_m_variant: Applicability,
    pub up_to_q_plus_1_variant: Applicability,
}

pub fn concatenation_sizes(m: u64, s: u64, w_prime: u64, q: u64, t: u64) -> ConcatReport {
    let n = (m * s) as usize;
    let w = (m * w_prime) as usize;
    let t_us = t as usize;

    let mut shared_reason = None;
    let ball: BigUint = (0..=w_prime).map(|i| binomial(s, i)).sum();
    if BigUint::from(q) > ball {
        shared_reason = Some(format!("q={q} exceeds the weight-{w_prime} ball of size {ball}"));
    } else if crate::gf::Field::new(q).is_err() {
        shared_reason = Some(format!("q={q} is not a supported prime power"));
    } else if t > s {
        shared_reason = Some(format!("t={t} exceeds s={s}"));
    }

    let make = |cond: bool, cond_desc: &str, exp: u64| -> Applicability {
        if let Some(reason) = &shared_reason {
            return Applicability::NotApplicable {
                reason: reason.clone(),
            };
        }
        if cond {
            Applicability::Applicable {
                size: BigUint::from(q).pow(exp as u32),
            }
        } else {
            Applicability::NotApplicable {
                reason: cond_desc.to_string(),
            }
        }
    };

    let half = make(
        2 * (t + 1) <= m && m > t,
        &format!("condition t+1 <= m/2 fails: t={t}, m={m}"),
        m.saturating_sub(t + 1),
    );
    let full = make(
        t < m && m <= q + 1,
        &format!("condition t+1 <= m <= q+1 fails: t={t}, m={m}, q={q}"),
        m.saturating_sub(t),
    );
    ConcatReport {
        n,
        t: t_us,
        w,
        half_m_variant: half,
        up_to_q_plus_1_variant: full,
    }
}

/// Size report for the sunflower construction: an (n, t, w)-LPC code of size
/// 2^(n-t-r), under r+t <= (n+s)/2 and caller-asserted existence of a binary
/// [n, s, w+1] code together with nonexistence of a binary [n-t, r, w+1]
/// code.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SunflowerReport {
    pub n: usize,
    pub t: usize,
    pub w: usize,
    pub result: Applicability,
    /// The hypotheses this report does not check.
    pub asserted_by_caller: String,
}

pub fn sunflower_size(n: u64, t: u64, w: u64, s: u64, r: u64) -> SunflowerReport {
    let asserted = format!(
        "a binary [{n},{s},{}] code exists and a binary [{},{r},{}] code does not",
        w + 1,
        n - t.min(n),
        w + 1
    );
    let check = || -> std::result::Result<BigUint, String> {
        if s > n {
            return Err(format!("dimension s={s} exceeds length n={n}"));
        }
        if t + w > n {
            return Err(format!("t + w > n: t={t}, w={w}, n={n}"));
        }
        if r > n - t {
            return Err(format!("dimension r={r} exceeds length n-t={}", n - t));
        }
        if 2 * (r + t) > n + s {
            return Err(format!("condition r+t <= (n+s)/2 fails: r={r}, t={t}, n={n}, s={s}"));
        }
        if r + t > n {
            return Err(format!("exponent n-t-r is negative: r={r}, t={t}, n={n}"));
        }
        Ok(BigUint::from(2u32).pow((n - t - r) as u32))
    };
    SunflowerReport {
        n: n as usize,
        t: t as usize,
        w: w as usize,
        result: match check() {
            Ok(size) => Applicability::Applicable { size },
            Err(reason) => Applicability::NotApplicable { reason },
        },
        asserted_by_caller: asserted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Factorial-based binomial, independent of the multiplicative routine.
    fn binomial_oracle(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::from(0u32);
        }
        let fact = |m: u64| (1..=m).map(BigUint::from).product::<BigUint>();
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn binomial_matches_factorial_oracle() {
        for n in 0..20 {
            for k in 0..=n + 2 {
                assert_eq!(binomial(n, k), binomial_oracle(n, k), "C({n},{k})");
            }
        }
        assert_eq!(binomial(96, 15), binomial_oracle(96, 15));
    }

    #[test]
    fn bounds_4_1_2() {
        let b = bounds(4, 1, 2).unwrap();
        assert_eq!(b.cpc_count_bound, BigUint::from(3u32));
        assert_eq!(b.cpc_turan_bound, BigUint::from(3u32)); // floor(3/2 * C(2,1))
        assert_eq!(b.lpc_count_bound, BigUint::from(7u32));
        assert_eq!(b.lpc_turan_bound, BigUint::from(8u32));
    }

    #[test]
    fn bounds_12_3_3() {
        let b = bounds(12, 3, 3).unwrap();
        assert_eq!(b.cpc_count_bound, BigUint::from(84u32)); // C(9,3)
        assert_eq!(b.cpc_turan_bound, BigUint::from(70u32)); // floor(10/4 * C(8,2))
        assert_eq!(b.lpc_count_bound, BigUint::from(130u32));
        assert_eq!(b.lpc_turan_bound, BigUint::from(149u32));
    }

    #[test]
    fn single_avoiding_support_when_w_equals_n_minus_t() {
        let b = bounds(9, 5, 4).unwrap();
        assert_eq!(b.cpc_count_bound, BigUint::from(1u32));
        assert!(bounds(9, 6, 4).is_err());
    }

    #[test]
    fn concatenation_reproduces_96_wire_example() {
        // m=6, t=1, s=16, w'=1, q=16: a (96,1,6)-LPC code of size 16^5 = 2^20
        let r = concatenation_sizes(6, 16, 1, 16, 1);
        assert_eq!((r.n, r.t, r.w), (96, 1, 6));
        assert_eq!(
            r.up_to_q_plus_1_variant.size().unwrap(),
            &BigUint::from(1u32 << 20)
        );
        assert_eq!(
            r.half_m_variant.size().unwrap(),
            &BigUint::from(1u32 << 16)
        );
    }

    #[test]
    fn concatenation_rejects_oversized_q() {
        let r = concatenation_sizes(6, 3, 1, 16, 1);
        assert!(r.up_to_q_plus_1_variant.size().is_none());
        assert!(r.half_m_variant.size().is_none());
    }

    #[test]
    fn sunflower_reproduces_known_sizes() {
        let r = sunflower_size(96, 15, 6, 81, 65);
        assert_eq!(r.result.size().unwrap(), &BigUint::from(1u32 << 16));

        let r = sunflower_size(160, 48, 6, 137, 95);
        assert_eq!(r.result.size().unwrap(), &BigUint::from(1u32 << 17));
    }

    #[test]
    fn sunflower_marks_impossible_dimension_inapplicable() {
        let r = sunflower_size(96, 15, 6, 137, 95);
        assert!(r.result.size().is_none());
    }
}

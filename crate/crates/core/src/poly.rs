//! Polynomials in q with nonnegative integer coefficients and half-integer
//! exponents (stored doubled), for the one-dimensional sums X and the
//! fermionic sums M.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    /// doubled exponent -> coefficient
    pub coeffs: BTreeMap<i64, u64>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn add_term(&mut self, exp2x: i64, coeff: u64) {
        if coeff == 0 {
            return;
        }
        *self.coeffs.entry(exp2x).or_insert(0) += coeff;
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e2, &c) in &self.coeffs {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let power = if e2 == 0 {
                String::new()
            } else if e2 == 2 {
                "q".to_string()
            } else if e2 % 2 == 0 {
                format!("q^{}", e2 / 2)
            } else {
                format!("q^({e2}/2)")
            };
            match (c, power.as_str()) {
                (_, "") => write!(f, "{c}")?,
                (1, p) => write!(f, "{p}")?,
                (_, p) => write!(f, "{c}*{p}")?,
            }
        }
        Ok(())
    }
}

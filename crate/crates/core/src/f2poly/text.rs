//! Polynomial text format:
//!
//! ```text
//! vars 3
//! x1*x2      # one monomial per line
//! x3
//! 1          # the constant term
//! ```
//!
//! Repeated monomials cancel; factors may appear in any order.

use std::str::FromStr;

use super::Poly;
use crate::error::{Error, Result};

impl Poly {
    pub fn parse(text: &str) -> Result<Poly> {
        let mut poly: Option<Poly> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(p) = poly.as_mut() else {
                let mut it = line.split_whitespace();
                match (it.next(), it.next(), it.next()) {
                    (Some("vars"), Some(n), None) => {
                        let n: usize = n.parse().map_err(|_| Error::parse(lineno, format!("bad variable count {n:?}")))?;
                        poly = Some(Poly::zero(n));
                        continue;
                    }
                    _ => return Err(Error::parse(lineno, "expected header `vars <n>`")),
                }
            };
            if line == "1" {
                p.toggle_constant();
                continue;
            }
            let mut vars = Vec::with_capacity(3);
            for factor in line.split('*') {
                let factor = factor.trim();
                let idx = factor
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| Error::parse(lineno, format!("bad factor {factor:?}")))?;
                if idx == 0 || idx as usize > p.n_vars() {
                    return Err(Error::parse(lineno, format!("variable x{idx} outside 1..={}", p.n_vars())));
                }
                vars.push(idx);
            }
            p.toggle_vars(&vars).map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        poly.ok_or_else(|| Error::parse(0, "missing header `vars <n>`"))
    }

    /// Serializes to the text format, monomials in canonical order.
    pub fn to_text(&self) -> String {
        let mut s = format!("vars {}\n", self.n_vars());
        for m in self.terms() {
            s.push_str(&m.to_string());
            s.push('\n');
        }
        if self.constant() {
            s.push_str("1\n");
        }
        s
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Poly::parse(s)
    }
}

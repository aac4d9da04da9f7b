//! Line-oriented instance files.
//!
//! ```text
//! # comments run to end of line
//! m n k
//! a11 a12 ... a1n
//! ...
//! am1 am2 ... amn
//! y1 ... ym          (optional)
//! ```
//!
//! Entries are arbitrary 64-bit signed integers and are kept as written;
//! reduction happens when a matrix is built for a particular modulus.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::Result;
use crate::matrix::{MatModK, VecModK};
use crate::residue_ring::Modulus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub k: u64,
    pub a: Vec<Vec<i64>>,
    pub y: Option<Vec<i64>>,
}

fn parse_numbers<T: FromStr>(line: usize, text: &str) -> Result<Vec<T>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| ParseError {
                line,
                message: format!("not an integer: {tok:?}"),
            })
        })
        .collect()
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(ParseError {
            line: 1,
            message: "missing header `m n k`".into(),
        })?;
        let header: Vec<u64> = parse_numbers(hline, header)?;
        let [m, n, k] = header[..] else {
            return Err(ParseError {
                line: hline,
                message: "header must be `m n k`".into(),
            });
        };
        if m == 0 || n == 0 {
            return Err(ParseError {
                line: hline,
                message: "matrix dimensions must be positive".into(),
            });
        }
        if k < 2 {
            return Err(ParseError {
                line: hline,
                message: format!("modulus must be at least 2, got {k}"),
            });
        }

        let mut a = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let (line, text) = lines.next().ok_or(ParseError {
                line: hline,
                message: format!("expected {m} matrix rows, found {}", a.len()),
            })?;
            let row: Vec<i64> = parse_numbers(line, text)?;
            if row.len() as u64 != n {
                return Err(ParseError {
                    line,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            a.push(row);
        }

        let y = match lines.next() {
            None => None,
            Some((line, text)) => {
                let y: Vec<i64> = parse_numbers(line, text)?;
                if y.len() as u64 != m {
                    return Err(ParseError {
                        line,
                        message: format!("right-hand side needs {m} entries, found {}", y.len()),
                    });
                }
                Some(y)
            }
        };
        if let Some((line, _)) = lines.next() {
            return Err(ParseError {
                line,
                message: "unexpected trailing content".into(),
            });
        }
        Ok(Self { k, a, y })
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a[0].len()
    }

    pub fn matrix(&self, modulus: &Modulus) -> Result<MatModK> {
        MatModK::from_rows(&self.a, modulus)
    }

    pub fn rhs(&self, modulus: &Modulus) -> Option<VecModK> {
        self.y.as_deref().map(|y| VecModK::from_i64(y, modulus))
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "{} {} {}", self.rows(), self.cols(), self.k)?;
        for row in &self.a {
            writeln!(f, "{}", join(row))?;
        }
        if let Some(y) = &self.y {
            writeln!(f, "{}", join(y))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_rhs() {
        let text = "# 2x = 2 (mod 4)\n1 1 4\n\n2   # A\n2\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(
            inst,
            Instance {
                k: 4,
                a: vec![vec![2]],
                y: Some(vec![2])
            }
        );
    }

    #[test]
    fn rhs_is_optional() {
        let inst =
            Instance::parse("2 2 6\n1 -1\n9223372036854775807 -9223372036854775808\n").unwrap();
        assert_eq!(inst.y, None);
        assert_eq!(inst.a[1], vec![i64::MAX, i64::MIN]);
        let m = Modulus::new(6).unwrap();
        assert_eq!(inst.matrix(&m).unwrap().row(0), &[1, 5]);
    }

    #[test]
    fn reports_errors_with_lines() {
        let cases = [
            ("", 1),
            ("1 1\n", 1),
            ("1 1 1\n0\n", 1),
            ("0 1 3\n", 1),
            ("2 2 5\n1 2\n", 1),
            ("1 2 5\n1 x\n", 2),
            ("1 2 5\n1 2 3\n", 2),
            ("1 1 5\n1\n1 2\n", 3),
            ("1 1 5\n1\n1\n1\n", 4),
        ];
        for (text, line) in cases {
            let err = Instance::parse(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
        }
    }

    fn instance() -> impl Strategy<Value = Instance> {
        (1usize..=4, 1usize..=4, 2u64..=u64::MAX).prop_flat_map(|(m, n, k)| {
            let row = proptest::collection::vec(any::<i64>(), n);
            (
                proptest::collection::vec(row, m),
                proptest::option::of(proptest::collection::vec(any::<i64>(), m)),
            )
                .prop_map(move |(a, y)| Instance { k, a, y })
        })
    }

    proptest! {
        #[test]
        fn write_then_parse_round_trips(inst in instance()) {
            prop_assert_eq!(Instance::parse(&inst.to_string()).unwrap(), inst);
        }
    }
}

//! Matrix files, rational literals, and serde helpers.
//!
//! A matrix file is a header line `d m` followed by `d` lines of `m`
//! whitespace-separated rational literals (`7`, `-3`, `2/5`). Blank lines and
//! lines whose first non-blank character is `#` are ignored.

use num_bigint::BigInt;
use num_traits::Signed;
use sha2::{Digest, Sha256};

use crate::error::{MalError, Result};
use crate::linalg::{RatMatrix, Rational};

/// Parse `n` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| format!("invalid rational literal {s:?}"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            if q.starts_with(['+', '-']) {
                return Err(format!("denominator must be a positive integer in {s:?}"));
            }
            let q = int(q)?;
            if !q.is_positive() {
                return Err(format!("denominator must be positive in {s:?}"));
            }
            Ok(Rational::new(int(p)?, q))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_matrix_file(text: &str) -> Result<RatMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(MalError::Parse {
        line: 0,
        msg: "missing header line \"d m\"".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |t: &str| {
        t.parse::<usize>().map_err(|_| MalError::Parse {
            line: hline,
            msg: format!("header must be two nonnegative integers \"d m\", got {header:?}"),
        })
    };
    if dims.len() != 2 {
        return Err(MalError::Parse {
            line: hline,
            msg: format!("header must be two nonnegative integers \"d m\", got {header:?}"),
        });
    }
    let (d, m) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
    let mut entries = Vec::with_capacity(d * m);
    for row in 0..d {
        let (ln, line) = lines.next().ok_or(MalError::Parse {
            line: hline,
            msg: format!("expected {d} rows, found {row}"),
        })?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != m {
            return Err(MalError::Parse {
                line: ln,
                msg: format!("expected {m} entries, found {}", toks.len()),
            });
        }
        for t in toks {
            entries.push(parse_rational(t).map_err(|msg| MalError::Parse { line: ln, msg })?);
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(MalError::Parse {
            line: ln,
            msg: format!("unexpected content after {d} rows"),
        });
    }
    RatMatrix::new(d, m, entries)
}

/// Canonical text form; `parse_matrix_file` reads it back unchanged.
pub fn write_matrix_file(mat: &RatMatrix) -> String {
    let mut out = format!("{} {}\n", mat.rows(), mat.cols());
    for i in 0..mat.rows() {
        let row: Vec<String> = mat.row(i).iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of the canonical text form of a matrix.
pub fn matrix_digest(mat: &RatMatrix) -> String {
    sha256_hex(write_matrix_file(mat).as_bytes())
}

pub fn matrix_to_strings(mat: &RatMatrix) -> Vec<Vec<String>> {
    (0..mat.rows())
        .map(|i| mat.row(i).iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> std::result::Result<RatMatrix, String> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    RatMatrix::from_rows(parsed).map_err(|e| e.to_string())
}

/// Serde adapter: `Rational` as a string literal.
pub mod rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Vec<Rational>` as a list of string literals.
pub mod rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: `RatMatrix` as rows of string literals.
pub mod rational_matrix {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &RatMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_strings(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RatMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        matrix_from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn matrix_file_roundtrip() {
        let text = "# U(2,3)\n2 3\n1 0 1\n\n0 1 2/4\n";
        let m = parse_matrix_file(text).unwrap();
        assert_eq!(m.get(1, 2), &ratio(1, 2));
        let written = write_matrix_file(&m);
        assert_eq!(written, "2 3\n1 0 1\n0 1 1/2\n");
        assert_eq!(parse_matrix_file(&written).unwrap(), m);
    }

    #[test]
    fn matrix_file_errors() {
        assert!(matches!(parse_matrix_file(""), Err(MalError::Parse { .. })));
        assert!(matches!(parse_matrix_file("2\n1 0\n"), Err(MalError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_matrix_file("2 2\n1 0\n0\n"),
            Err(MalError::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_matrix_file("2 2\n1 0\n"), Err(MalError::Parse { .. })));
        assert!(matches!(
            parse_matrix_file("1 2\n1 0\n5 5\n"),
            Err(MalError::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_matrix_file("1 1\n1/0\n"), Err(MalError::Parse { .. })));
    }
}

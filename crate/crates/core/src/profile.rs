//! Per-cycle error-probability profiles and their plain-text file format.
//!
//! A profile is the vector `P = (p_1, ..., p_n)` where `p_i` is the
//! probability that TDMA cycle `i` delivers no valid data. The file format is
//! one probability per line (decimal or scientific notation), with blank
//! lines and lines starting with `#` ignored; UTF-8 with LF or CRLF endings.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::error::Error;
use crate::Result;

/// The ordered per-cycle error probabilities of one perturbation zone.
///
/// Every entry lies in `[0, 1]`; the length is the zone's cycle count `n`
/// (possibly zero). Cycle indices are 1-based in the mathematics and in
/// error messages, 0-based in the underlying slice.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorProfile {
    probs: Vec<f64>,
}

impl ErrorProfile {
    /// Builds a profile from raw probabilities, rejecting any entry outside
    /// `[0, 1]` (NaN included).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        for (i, &p) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ProfileProbability {
                    index: i + 1,
                    value: p,
                });
            }
        }
        Ok(Self { probs })
    }

    /// Number of cycles `n`.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// True when the profile spans zero cycles.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// The probabilities `p_1..p_n` as a slice (`probs()[i]` is `p_{i+1}`).
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Smallest entry, or `None` for an empty profile.
    pub fn min_p(&self) -> Option<f64> {
        self.probs.iter().copied().reduce(f64::min)
    }

    /// Largest entry, or `None` for an empty profile.
    pub fn max_p(&self) -> Option<f64> {
        self.probs.iter().copied().reduce(f64::max)
    }

    /// A copy restricted to the first `n` cycles (`n >= len` returns the
    /// whole profile).
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            probs: self.probs[..n.min(self.probs.len())].to_vec(),
        }
    }

    /// Reads a profile from a newline-separated stream.
    ///
    /// Blank lines and lines starting with `#` are skipped; every other line
    /// must parse as a real in `[0, 1]`. Line numbers in errors are 1-based
    /// physical line numbers.
    ///
    /// # Errors
    ///
    /// [`Error::ProfileParse`] / [`Error::ProfileRange`] pinpoint the first
    /// bad line; [`Error::EmptyProfile`] is returned when no data lines are
    /// present at all.
    pub fn read(source: impl BufRead) -> Result<Self> {
        let mut probs = Vec::new();
        for (idx, line) in source.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let value: f64 = trimmed.parse().map_err(|_| Error::ProfileParse {
                line: idx + 1,
                content: trimmed.to_owned(),
            })?;
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ProfileRange {
                    line: idx + 1,
                    value,
                });
            }
            probs.push(value);
        }
        if probs.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Self { probs })
    }

    /// Reads a profile file from disk; see [`ErrorProfile::read`].
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::read(BufReader::new(File::open(path)?))
    }

    /// Writes the profile in the file format accepted by
    /// [`ErrorProfile::read`], one probability per line with enough digits
    /// to round-trip exactly.
    pub fn write(&self, sink: &mut impl Write) -> io::Result<()> {
        for p in &self.probs {
            writeln!(sink, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_probabilities() {
        let profile = ErrorProfile::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(profile.len(), 3);
        assert_eq!(profile.probs(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn accepts_empty_profile() {
        let profile = ErrorProfile::new(vec![]).unwrap();
        assert!(profile.is_empty());
        assert_eq!(profile.min_p(), None);
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = ErrorProfile::new(vec![0.1, 1.5]).unwrap_err();
        assert!(matches!(
            err,
            Error::ProfileProbability { index: 2, value } if value == 1.5
        ));
    }

    #[test]
    fn rejects_nan_entry() {
        let err = ErrorProfile::new(vec![f64::NAN]).unwrap_err();
        assert!(matches!(err, Error::ProfileProbability { index: 1, .. }));
    }

    #[test]
    fn reads_plain_lines() {
        let profile = ErrorProfile::read("0.1\n0.2\n0.3\n".as_bytes()).unwrap();
        assert_eq!(profile.probs(), &[0.1, 0.2, 0.3]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let profile = ErrorProfile::read("# comment\n0.5\n".as_bytes()).unwrap();
        assert_eq!(profile.probs(), &[0.5]);

        let profile = ErrorProfile::read("\n  \n0.25\n\n# x\n0.75\n".as_bytes()).unwrap();
        assert_eq!(profile.probs(), &[0.25, 0.75]);
    }

    #[test]
    fn accepts_scientific_notation_and_crlf() {
        let profile = ErrorProfile::read("1e-3\r\n2.5E-2\r\n".as_bytes()).unwrap();
        assert_eq!(profile.probs(), &[1e-3, 2.5e-2]);
    }

    #[test]
    fn reports_out_of_range_with_line_number() {
        let err = ErrorProfile::read("1.5\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::ProfileRange { line: 1, value } if value == 1.5));

        let err = ErrorProfile::read("0.5\n# ok\n-0.1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::ProfileRange { line: 3, .. }));
    }

    #[test]
    fn reports_parse_error_with_line_number() {
        let err = ErrorProfile::read("0.5\nabc\n".as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            Error::ProfileParse { line: 2, ref content } if content == "abc"
        ));
    }

    #[test]
    fn rejects_stream_without_data_lines() {
        assert!(matches!(
            ErrorProfile::read("".as_bytes()).unwrap_err(),
            Error::EmptyProfile
        ));
        assert!(matches!(
            ErrorProfile::read("# only comments\n\n".as_bytes()).unwrap_err(),
            Error::EmptyProfile
        ));
    }

    #[test]
    fn write_read_round_trip_is_exact() {
        let original = ErrorProfile::new(vec![0.1, 1.0 / 3.0, 2.22e-16, 1.0, 0.0]).unwrap();
        let mut buf = Vec::new();
        original.write(&mut buf).unwrap();
        let reread = ErrorProfile::read(buf.as_slice()).unwrap();
        assert_eq!(reread, original);
    }

    #[test]
    fn truncated_keeps_prefix() {
        let profile = ErrorProfile::new(vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(profile.truncated(2).probs(), &[0.1, 0.2]);
        assert_eq!(profile.truncated(9).probs(), &[0.1, 0.2, 0.3]);
    }
}

//! Durable scan state for interruptible long-range scans.
//!
//! A checkpoint is a small line-oriented text file written atomically
//! (temp file + rename) after every committed chunk. It records the scan
//! configuration (both as a hash and as an echo of the fields, so a mismatch
//! can be reported readably), the last fully completed exponent, and the
//! running minima. Resuming from a checkpoint reproduces byte-identical
//! output to an uninterrupted run because everything downstream of the
//! recorded state is a pure function of the configuration.
//!
//! Format (first line is a magic tag; every other line is `key value`):
//!
//! ```text
//! ZFSCAN1
//! config <sha256 hex of the canonical configuration string>
//! p 4
//! q 3
//! n_min 2
//! n_max 200000
//! threshold adaptive
//! stride 1000
//! last_completed_n 104448
//! records_emitted 117
//! hits 2 3 4 5 6 7 9 13 14 17
//! min_frac_n 692
//! min_frac_num <base-10 digits of p^n mod q^n>
//! min_frac_den <base-10 digits of q^n>
//! min_mahler_n 39
//! min_mahler_bits 3fe0a3d70a3d70a4
//! ```
//!
//! An empty or missing file is treated as "no checkpoint" (fresh start); a
//! present but malformed file is an error, never silently ignored.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Magic tag identifying the checkpoint format version.
pub const MAGIC: &str = "ZFSCAN1";

/// Serialized scan state sufficient to resume after `last_completed_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    /// SHA-256 (hex) of the canonical configuration string.
    pub config_hash: String,
    pub p: u64,
    pub q: u64,
    pub n_min: u64,
    pub n_max: u64,
    /// Canonical threshold description, e.g. `adaptive` or `fixed 1/1000`.
    pub threshold: String,
    pub stride: u64,
    /// Every exponent `<= last_completed_n` has been scanned and its records
    /// handed to the caller.
    pub last_completed_n: u64,
    pub records_emitted: u64,
    /// Exponents whose fractional part fell below the threshold, ascending.
    pub hits: Vec<u64>,
    /// Argmin of the fractional part over the completed prefix.
    pub min_frac_n: u64,
    /// Exact numerator `p^n mod q^n` of the minimum, base-10.
    pub min_frac_num: String,
    /// Exact denominator `q^n` of the minimum, base-10.
    pub min_frac_den: String,
    /// Argmin of the Mahler margin diagnostic over the completed prefix.
    pub min_mahler_n: u64,
    /// Minimum Mahler margin as log2 (an approximate, f64-only diagnostic).
    pub min_mahler_log2: f64,
}

impl Checkpoint {
    /// Renders the checkpoint in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(
            256 + self.min_frac_num.len() + self.min_frac_den.len() + 8 * self.hits.len(),
        );
        s.push_str(MAGIC);
        s.push('\n');
        let mut kv = |k: &str, v: &str| {
            s.push_str(k);
            s.push(' ');
            s.push_str(v);
            s.push('\n');
        };
        kv("config", &self.config_hash);
        kv("p", &self.p.to_string());
        kv("q", &self.q.to_string());
        kv("n_min", &self.n_min.to_string());
        kv("n_max", &self.n_max.to_string());
        kv("threshold", &self.threshold);
        kv("stride", &self.stride.to_string());
        kv("last_completed_n", &self.last_completed_n.to_string());
        kv("records_emitted", &self.records_emitted.to_string());
        let hits = self
            .hits
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        kv("hits", &hits);
        kv("min_frac_n", &self.min_frac_n.to_string());
        kv("min_frac_num", &self.min_frac_num);
        kv("min_frac_den", &self.min_frac_den);
        kv("min_mahler_n", &self.min_mahler_n.to_string());
        kv(
            "min_mahler_bits",
            &format!("{:016x}", self.min_mahler_log2.to_bits()),
        );
        s
    }

    /// Writes the checkpoint atomically: a temp file in the same directory
    /// is flushed and then renamed over the destination, so readers either
    /// see the old complete state or the new complete state.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = std::path::PathBuf::from(tmp);
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads a checkpoint. `Ok(None)` means "start fresh": the file does not
    /// exist or is empty. A present but malformed file is an error.
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        if text.trim().is_empty() {
            return Ok(None);
        }
        Self::parse(&text).map(Some)
    }

    fn parse(text: &str) -> Result<Checkpoint> {
        let bad = |msg: String| Error::Checkpoint(msg);
        let mut lines = text.lines();
        let magic = lines.next().unwrap_or("");
        if magic != MAGIC {
            return Err(bad(format!(
                "unrecognized header {magic:?}, expected {MAGIC:?}"
            )));
        }
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            // A key with an empty value ("hits ") may lose its trailing
            // space in transit; treat a bare key as key with empty value.
            let (k, v) = line.split_once(' ').unwrap_or((line, ""));
            fields.push((k, v));
        }
        let get = |key: &str| -> Result<&str> {
            fields
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| bad(format!("missing field `{key}`")))
        };
        let get_u64 = |key: &str| -> Result<u64> {
            get(key)?
                .parse::<u64>()
                .map_err(|e| bad(format!("field `{key}`: {e}")))
        };

        let hits_raw = get("hits")?;
        let mut hits = Vec::new();
        for tok in hits_raw.split_whitespace() {
            hits.push(
                tok.parse::<u64>()
                    .map_err(|e| bad(format!("field `hits`: {e}")))?,
            );
        }
        if !hits.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("field `hits`: not strictly ascending".to_string()));
        }

        let digits = |key: &str| -> Result<String> {
            let v = get(key)?;
            if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("field `{key}`: expected base-10 digits")));
            }
            Ok(v.to_string())
        };

        let bits_hex = get("min_mahler_bits")?;
        let bits = u64::from_str_radix(bits_hex, 16)
            .map_err(|e| bad(format!("field `min_mahler_bits`: {e}")))?;

        Ok(Checkpoint {
            config_hash: get("config")?.to_string(),
            p: get_u64("p")?,
            q: get_u64("q")?,
            n_min: get_u64("n_min")?,
            n_max: get_u64("n_max")?,
            threshold: get("threshold")?.to_string(),
            stride: get_u64("stride")?,
            last_completed_n: get_u64("last_completed_n")?,
            records_emitted: get_u64("records_emitted")?,
            hits,
            min_frac_n: get_u64("min_frac_n")?,
            min_frac_num: digits("min_frac_num")?,
            min_frac_den: digits("min_frac_den")?,
            min_mahler_n: get_u64("min_mahler_n")?,
            min_mahler_log2: f64::from_bits(bits),
        })
    }
}

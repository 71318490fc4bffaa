//! Prime bitmaps cached on disk under `$GPSPRIMES_CACHE_DIR`, keyed by `(lo, hi)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gpsprimes::arith::{build_tables, ArithmeticTables};

use crate::CliError;

pub const CACHE_ENV: &str = "GPSPRIMES_CACHE_DIR";

const MAGIC: &[u8; 8] = b"GPSSIEVE";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn file_for(dir: &Path, lo: u64, hi: u64) -> PathBuf {
    dir.join(format!("sieve-{lo}-{hi}.bin"))
}

fn encode(t: &ArithmeticTables) -> Vec<u8> {
    let words = t.bitmap();
    let mut out = Vec::with_capacity(32 + 8 * words.len());
    out.extend_from_slice(MAGIC);
    for v in [t.lo(), t.hi(), words.len() as u64] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for w in words {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out
}

fn decode(bytes: &[u8], lo: u64, hi: u64) -> Option<ArithmeticTables> {
    let word = |i: usize| -> Option<u64> { Some(u64::from_le_bytes(bytes.get(8 + 8 * i..16 + 8 * i)?.try_into().ok()?)) };
    if bytes.get(..8)? != MAGIC || word(0)? != lo || word(1)? != hi {
        return None;
    }
    let n = word(2)? as usize;
    if bytes.len() != 32 + 8 * n {
        return None;
    }
    let bits = (0..n).map(|i| word(3 + i)).collect::<Option<Vec<_>>>()?;
    ArithmeticTables::from_bitmap(lo, hi, bits).ok()
}

/// Prime tables on `[1, hi]`, loaded from or written to the cache when one is configured.
pub fn prime_tables(hi: u64) -> Result<ArithmeticTables, CliError> {
    let hi = hi.max(2);
    let Some(dir) = cache_dir() else {
        return Ok(build_tables(1, hi, false)?);
    };
    let path = file_for(&dir, 1, hi);
    if let Some(t) = fs::read(&path).ok().and_then(|b| decode(&b, 1, hi)) {
        return Ok(t);
    }
    let t = build_tables(1, hi, false)?;
    fs::create_dir_all(&dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(&encode(&t))?;
    f.sync_all()?;
    fs::rename(&tmp, &path)?;
    Ok(t)
}

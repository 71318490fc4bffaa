//! Exact integer substrate: sieve tables, multiplicative functions, modular powers.

mod factor;
mod sieve;

pub use factor::{factorize, is_prime_u64, powmod};
pub(crate) use factor::integer_root;
pub use sieve::{build_tables, build_tables_segmented, ArithmeticTables, DEFAULT_SEGMENT_LEN};

use crate::error::{Error, Result};

/// Möbius function by direct factorization.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(sieve::mobius_from(&factorize(n)?))
}

/// von Mangoldt function by direct factorization.
pub fn von_mangoldt(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let f = factorize(n)?;
    Ok(match f.as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    })
}

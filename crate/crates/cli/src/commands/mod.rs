pub mod carmichael;
pub mod count;
pub mod expsum;
pub mod optimize;
pub mod seq;
pub mod smooth;
pub mod thresholds;
pub mod verify;

use serde::Serialize;

use crate::CliError;

pub(crate) fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub(crate) fn real(v: f64) -> String {
    gpsprimes::asymptotics::format_real(v)
}

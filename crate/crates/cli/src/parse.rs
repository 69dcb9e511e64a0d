//! Big-integer arguments: plain decimal or `10^K`.

use num_bigint::BigUint;
use num_traits::Num;

use crate::error::CliError;

/// Inputs wider than this many bits are refused before any table is built.
pub const MAX_INPUT_BITS: u64 = 20_000;

pub fn parse_nat(text: &str) -> Result<BigUint, CliError> {
    let text = text.trim();
    let value = if let Some(exponent) = text.strip_prefix("10^") {
        let k: u32 = exponent
            .parse()
            .map_err(|_| CliError::Usage(format!("bad exponent in {text:?}")))?;
        // 10^K has about 3.33 K bits.
        if u64::from(k) * 3322 / 1000 > MAX_INPUT_BITS {
            return Err(budget(text));
        }
        BigUint::from(10u32).pow(k)
    } else {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CliError::Usage(format!(
                "{text:?} is not a non-negative decimal integer or 10^K"
            )));
        }
        BigUint::from_str_radix(text, 10).expect("validated digits")
    };
    if value.bits() > MAX_INPUT_BITS {
        return Err(budget(text));
    }
    Ok(value)
}

fn budget(text: &str) -> CliError {
    CliError::Budget(format!(
        "{text} is wider than the {MAX_INPUT_BITS}-bit input limit"
    ))
}

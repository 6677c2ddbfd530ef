//! Canonical text form of a congruential map.
//!
//! ```text
//! congruential v1
//! modulus 3
//! piece 0: 2 0 3
//! piece 1: 4 -1 3
//! piece 2: 4 1 3
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::affine::AffinePiece;
use crate::error::{Error, Result};
use crate::map::CongruentialMap;

pub const HEADER: &str = "congruential v1";

pub fn to_text(f: &CongruentialMap) -> String {
    let mut out = format!("{HEADER}\nmodulus {}\n", f.modulus());
    for (j, p) in f.pieces().iter().enumerate() {
        out.push_str(&format!("piece {j}: {} {} {}\n", p.a(), p.b(), p.c()));
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn from_text(input: &str) -> Result<CongruentialMap> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if header != HEADER {
        return Err(err(line, format!("expected `{HEADER}`, found `{header}`")));
    }
    let (line, modulus_line) = lines.next().ok_or_else(|| err(line + 1, "missing `modulus` line"))?;
    let modulus: usize = modulus_line
        .strip_prefix("modulus")
        .map(str::trim)
        .ok_or_else(|| err(line, "expected `modulus K`"))?
        .parse()
        .map_err(|e| err(line, format!("bad modulus: {e}")))?;
    if modulus == 0 {
        return Err(err(line, "modulus must be positive"));
    }

    let mut pieces: Vec<Option<AffinePiece>> = vec![None; modulus];
    let mut last_line = line;
    for (line, text) in lines {
        last_line = line;
        let rest = text
            .strip_prefix("piece")
            .ok_or_else(|| err(line, format!("expected `piece j: a b c`, found `{text}`")))?;
        let (index, coeffs) = rest
            .split_once(':')
            .ok_or_else(|| err(line, "missing `:` after piece index"))?;
        let j: usize = index
            .trim()
            .parse()
            .map_err(|e| err(line, format!("bad piece index: {e}")))?;
        if j >= modulus {
            return Err(err(line, format!("piece index {j} is not below modulus {modulus}")));
        }
        if pieces[j].is_some() {
            return Err(err(line, format!("duplicate piece {j}")));
        }
        let nums = coeffs
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|e| err(line, format!("bad integer `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c] = <[BigInt; 3]>::try_from(nums)
            .map_err(|v| err(line, format!("expected 3 coefficients, found {}", v.len())))?;
        if a.gcd(&b).gcd(&c) != BigInt::from(1) {
            return Err(err(line, format!("coefficients {a} {b} {c} are not reduced")));
        }
        let piece = AffinePiece::new(a, b, c)
            .ok_or_else(|| err(line, "slope must be non-negative and denominator positive"))?;
        if !piece.is_integral_on(modulus, j) {
            return Err(err(
                line,
                format!("piece {j} does not map the class {j} mod {modulus} into N"),
            ));
        }
        pieces[j] = Some(piece);
    }
    if let Some(missing) = pieces.iter().position(Option::is_none) {
        return Err(err(last_line, format!("missing piece {missing}")));
    }
    CongruentialMap::new(modulus, pieces.into_iter().map(Option::unwrap).collect())
}

impl std::str::FromStr for CongruentialMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        from_text(s)
    }
}

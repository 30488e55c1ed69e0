//! Small arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `C(n, 2)` as an integer; zero for `n < 2`.
pub fn choose2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `C(n, 3)` as an integer; zero for `n < 3`.
pub fn choose3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

pub fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &BigRational) -> String {
    r.to_string()
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.05` (exactly).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Some(if negative { -r } else { r });
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Independent RNG stream `stream` of the master `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

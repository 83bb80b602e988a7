//! Shell-safe literals: complex numbers, points, and scan regions.
//!
//! Complex grammar: `<real>[+|-]<real>i`, no spaces. A bare real is accepted
//! with zero imaginary part, and a trailing `<real>i` alone means a purely
//! imaginary value.

use num_complex::Complex64;

pub type C64 = Complex64;

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let bad = |why: &str| Err(format!("bad complex literal {s:?}: {why}"));
    if s.is_empty() {
        return bad("empty");
    }
    if s.contains(char::is_whitespace) {
        return bad("no spaces allowed");
    }
    let body = match s.strip_suffix('i') {
        None => {
            return match s.parse::<f64>() {
                Ok(re) => Ok(C64::new(re, 0.0)),
                Err(_) => bad("not a real number"),
            }
        }
        Some(body) => body,
    };
    // split before the sign of the imaginary part: the last '+'/'-' that is
    // neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    match split {
        Some(i) => {
            let re: f64 = match body[..i].parse() {
                Ok(v) => v,
                Err(_) => return bad("real part is not a number"),
            };
            let im: f64 = match body[i..].parse() {
                Ok(v) => v,
                Err(_) => return bad("imaginary part is not a number"),
            };
            Ok(C64::new(re, im))
        }
        None => match body.parse::<f64>() {
            Ok(im) => Ok(C64::new(0.0, im)),
            Err(_) => bad("imaginary part is not a number"),
        },
    }
}

/// Comma-separated complex coordinates.
pub fn parse_point(s: &str) -> Result<Vec<C64>, String> {
    s.split(',').map(parse_complex).collect()
}

/// Scan region literal `c1,c2,w1,w2,w3,w4`: two complex centers followed by
/// four real half-widths (re z1, im z1, re z2, im z2).
pub fn parse_region(s: &str) -> Result<((C64, C64), [f64; 4]), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(format!(
            "region wants 6 comma-separated fields c1,c2,w1,w2,w3,w4, got {}",
            parts.len()
        ));
    }
    let c1 = parse_complex(parts[0])?;
    let c2 = parse_complex(parts[1])?;
    let mut w = [0.0; 4];
    for (i, p) in parts[2..].iter().enumerate() {
        w[i] = p
            .parse::<f64>()
            .map_err(|_| format!("bad half-width {p:?}"))?;
    }
    Ok(((c1, c2), w))
}

/// `R,A` grid sizes.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (r, a) = s
        .split_once(',')
        .ok_or_else(|| format!("grid wants R,A, got {s:?}"))?;
    let radii = r.parse().map_err(|_| format!("bad radius count {r:?}"))?;
    let angles = a.parse().map_err(|_| format!("bad angle count {a:?}"))?;
    Ok((radii, angles))
}

//! Matrix exponential: scaling and squaring with the diagonal [13/13]
//! Padé approximant (Higham 2005 coefficients).
//!
//! The scaling threshold is a 1-norm of 0.5, well inside the order-13
//! accuracy region, so a single Padé order suffices.

use super::CMat;
use crate::error::Result;
use crate::scalar::Real;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const SQUARING_THRESHOLD: f64 = 0.5;

pub(super) fn expm<T: Real>(a: &CMat<T>) -> Result<CMat<T>> {
    let n = a.rows();
    if n == 0 {
        return Ok(CMat::zeros(0, 0));
    }

    let norm = a.norm_one().to_f64().unwrap_or(f64::INFINITY);
    let squarings = if norm <= SQUARING_THRESHOLD {
        0
    } else {
        (norm / SQUARING_THRESHOLD).log2().ceil() as u32
    };
    let scale = T::of(0.5).powi(squarings as i32);
    let m = a.scale_re(scale);

    let b: Vec<T> = PADE13.iter().map(|&c| T::of(c)).collect();
    let ident = CMat::identity(n);
    let m2 = &m * &m;
    let m4 = &m2 * &m2;
    let m6 = &m4 * &m2;

    // u = M (M6 (b13 M6 + b11 M4 + b9 M2) + b7 M6 + b5 M4 + b3 M2 + b1 I)
    let u_inner = &(&m6.scale_re(b[13]) + &m4.scale_re(b[11])) + &m2.scale_re(b[9]);
    let u_poly = &(&(&m6.matmul(&u_inner) + &m6.scale_re(b[7])) + &m4.scale_re(b[5]))
        + &(&m2.scale_re(b[3]) + &ident.scale_re(b[1]));
    let u = m.matmul(&u_poly);
    // v = M6 (b12 M6 + b10 M4 + b8 M2) + b6 M6 + b4 M4 + b2 M2 + b0 I
    let v_inner = &(&m6.scale_re(b[12]) + &m4.scale_re(b[10])) + &m2.scale_re(b[8]);
    let v = &(&(&m6.matmul(&v_inner) + &m6.scale_re(b[6])) + &m4.scale_re(b[4]))
        + &(&m2.scale_re(b[2]) + &ident.scale_re(b[0]));

    // exp(M) ~ (v - u)^-1 (v + u)
    let mut result = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

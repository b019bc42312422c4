//! Bessel functions of the first kind J_n(z), integer order, complex argument.
//!
//! Orders above |z|/2 come from Miller's backward recurrence; lower orders are
//! reached by forward recurrence from J_0, J_1. The backward sequence is
//! normalised with the generating-function sum
//! e^{±iz} = J_0 + 2 Σ_{k≥1} (±i)^k J_k, picking the sign for which the
//! sum does not cancel when Im z ≠ 0.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_BESSEL_ORDER: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselOrder {
    pub n: i32,
    pub z: C64,
}

impl BesselOrder {
    pub fn new(n: i32, z: C64) -> Self {
        Self { n, z }
    }
}

pub fn bessel_j(ord: BesselOrder) -> Result<C64> {
    bessel_j_with_limit(ord, DEFAULT_MAX_BESSEL_ORDER)
}

pub fn bessel_j_with_limit(ord: BesselOrder, max_order: u32) -> Result<C64> {
    let m = ord.n.unsigned_abs();
    if m > max_order {
        return Err(Error::OrderLimit { order: ord.n as i64, max: max_order });
    }
    let z = ord.z;
    let value = if z.norm() >= 2.0 * m as f64 {
        forward(m, z)
    } else {
        miller(m, z)[m as usize]
    };
    // J_{-n} = (-1)^n J_n
    Ok(if ord.n < 0 && m % 2 == 1 { -value } else { value })
}

/// J_0(z), ..., J_nmax(z) in one backward sweep.
pub fn bessel_j_sequence(nmax: u32, z: C64) -> Result<Vec<C64>> {
    if nmax > DEFAULT_MAX_BESSEL_ORDER {
        return Err(Error::OrderLimit { order: nmax as i64, max: DEFAULT_MAX_BESSEL_ORDER });
    }
    Ok(miller(nmax, z))
}

fn forward(n: u32, z: C64) -> C64 {
    let seq = miller(1, z);
    let (mut prev, mut cur) = (seq[0], seq[1]);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = cur * (2.0 * k as f64) / z - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn miller(nmax: u32, z: C64) -> Vec<C64> {
    let len = nmax as usize + 1;
    if z.norm() == 0.0 {
        let mut out = vec![C64::new(0.0, 0.0); len];
        out[0] = C64::new(1.0, 0.0);
        return out;
    }
    let scale = (nmax as f64).max(z.norm());
    let mut start = (scale + 20.0 + (160.0 * scale).sqrt()).ceil() as usize;
    start += start % 2;

    let mut vals = vec![C64::new(0.0, 0.0); start + 2];
    vals[start] = C64::new(1e-30, 0.0);
    for k in (1..=start).rev() {
        vals[k - 1] = vals[k] * (2.0 * k as f64) / z - vals[k + 1];
        if vals[k - 1].norm() > 1e100 {
            for v in vals[k - 1..].iter_mut() {
                *v *= 1e-100;
            }
        }
    }

    let (unit, target) = if z.im <= 0.0 {
        (C64::new(0.0, 1.0), (C64::new(0.0, 1.0) * z).exp())
    } else {
        (C64::new(0.0, -1.0), (C64::new(0.0, -1.0) * z).exp())
    };
    let mut sum = vals[0];
    let mut phase = C64::new(1.0, 0.0);
    for v in vals.iter().take(start + 1).skip(1) {
        phase *= unit;
        sum += 2.0 * phase * v;
    }
    // complex division squares the modulus; divide by the modulus first
    let mag = sum.norm();
    let norm = target / (sum / mag) / mag;
    vals.truncate(len);
    let real = z.im == 0.0;
    for v in vals.iter_mut() {
        *v *= norm;
        if real {
            v.im = 0.0;
        }
    }
    vals
}

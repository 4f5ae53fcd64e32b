use super::gamma::gamma_q;
use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

// Acklam's rational approximation, used as the starting point for Halley
// refinement against the incomplete-gamma form of the normal CDF.
#[allow(clippy::excessive_precision)]
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_690e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
#[allow(clippy::excessive_precision)]
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
#[allow(clippy::excessive_precision)]
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
#[allow(clippy::excessive_precision)]
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.02425;

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    // Phi(z) = Q(1/2, z^2/2) / 2 for z <= 0
    let tail = 0.5 * gamma_q(0.5, 0.5 * z * z);
    if z <= 0.0 {
        tail
    } else {
        1.0 - tail
    }
}

/// Inverse of the standard normal CDF.
///
/// Accurate to a few ulps of `p` in probability; odd-symmetric about 0.5 by
/// construction.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            what: "normal quantile probability",
            value: p,
        });
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        // exact for p in [0.5, 1]
        return Ok(-lower_quantile(1.0 - p));
    }
    Ok(lower_quantile(p))
}

fn lower_quantile(p: f64) -> f64 {
    let mut z = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };
    for _ in 0..3 {
        let e = normal_cdf(z) - p;
        if e == 0.0 {
            break;
        }
        let u = e * SQRT_2PI * (0.5 * z * z).exp();
        z -= u / (1.0 + 0.5 * z * u);
    }
    z
}

//! Standard normal pdf, cdf and quantile.

use core::f64::consts::FRAC_1_SQRT_2;

use super::LN_SQRT_2PI;
use crate::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_502_415_765_284_811;

pub fn std_normal_pdf(s: f64) -> f64 {
    libm::exp(-0.5 * s * s) / SQRT_2PI
}

pub fn std_normal_ln_pdf(s: f64) -> f64 {
    -0.5 * s * s - LN_SQRT_2PI
}

/// Φ(s), evaluated through `erfc` so that both tails keep full relative
/// precision. `±∞` map to 1 and 0.
pub fn std_normal_cdf(s: f64) -> f64 {
    0.5 * libm::erfc(-s * FRAC_1_SQRT_2)
}

/// Upper tail `1 - Φ(s)`.
pub fn std_normal_sf(s: f64) -> f64 {
    0.5 * libm::erfc(s * FRAC_1_SQRT_2)
}

// Acklam's rational approximation, |relative error| < 1.15e-9 before
// refinement.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_690e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.024_25;

fn acklam(u: f64) -> f64 {
    if u < P_LOW {
        let q = libm::sqrt(-2.0 * libm::log(u));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = u - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Quantile for `u <= 0.5`, refined with one Halley step against Φ.
fn lower_quantile(u: f64) -> f64 {
    let x = acklam(u);
    let e = std_normal_cdf(x) - u;
    // e / φ(x), with φ evaluated in log space so the deep tail does not
    // overflow.
    let step = e * libm::exp(0.5 * x * x + LN_SQRT_2PI);
    x - step / (1.0 + 0.5 * x * step)
}

/// Φ⁻¹(u) for `0 < u < 1`.
///
/// Values above one half are mapped through `1 - u`, which is exact there,
/// so the upper tail is as accurate as the lower one.
pub fn std_normal_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain("normal quantile requires 0 < u < 1"));
    }
    if u == 0.5 {
        return Ok(0.0);
    }
    if u < 0.5 {
        Ok(lower_quantile(u))
    } else {
        Ok(-lower_quantile(1.0 - u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CDF_REF: &[(f64, f64)] = &[
        (1.0, 0.841_344_746_068_542_948_585_232_5),
        (-1.0, 0.158_655_253_931_457_051_414_767_5),
        (2.5, 0.993_790_334_674_223_864_833_021_9),
        (-5.0, 2.866_515_718_791_939_116_737_523e-7),
        (-10.0, 7.619_853_024_160_526_065_973_343e-24),
        (-20.0, 2.753_624_118_606_233_695_075_623e-89),
        (7.0, 0.999_999_999_998_720_187_456_114_2),
    ];

    #[test]
    fn cdf_reference_points() {
        for &(s, want) in CDF_REF {
            let got = std_normal_cdf(s);
            assert!((got - want).abs() <= 1e-15, "s={s}");
            if s < 0.0 {
                // rounding of s/√2 alone costs about s² ulps in the tail
                let rel = 4.0 * f64::EPSILON * s * s + 1e-15;
                assert!((got - want).abs() <= rel * want, "relative, s={s}");
            }
        }
        assert_eq!(std_normal_cdf(0.0), 0.5);
        assert_eq!(std_normal_cdf(f64::INFINITY), 1.0);
        assert_eq!(std_normal_cdf(f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn quantile_reference_points() {
        let cases = [
            (0.975, 1.959_963_984_540_053_855_604_431),
            (1e-10, -6.361_340_902_404_056_204_695_376),
            (0.999_999, 4.753_424_308_817_087_765_688_097),
            (0.02, -2.053_748_910_631_823_052_937_352),
            (0.3, -0.524_400_512_708_040_784_038_289_3),
            (1e-300, -37.047_096_299_361_199_237_222_96),
        ];
        for (u, want) in cases {
            let got = std_normal_quantile(u).unwrap();
            assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "u={u}: {got} vs {want}");
        }
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
    }

    #[test]
    fn quantile_round_trip_relative() {
        let mut u = 1e-300;
        while u < 1.0 {
            let s = std_normal_quantile(u).unwrap();
            let back = std_normal_cdf(s);
            assert!((back - u).abs() <= 1e-12 * u, "u={u}");
            u *= 1.7;
        }
        for i in 1..1000 {
            let u = f64::from(i) / 1000.0;
            let s = std_normal_quantile(u).unwrap();
            assert!((std_normal_cdf(s) - u).abs() <= 1e-12 * u);
            // upper tail measured on the complement
            let sf = std_normal_sf(s);
            assert!((sf - (1.0 - u)).abs() <= 1e-12 * (1.0 - u).max(1e-3));
        }
        assert!((std_normal_quantile(std_normal_cdf(1.0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quantile_domain() {
        for u in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(std_normal_quantile(u).is_err());
        }
    }

    #[test]
    fn inverse_pair_on_grid() {
        let mut s = -7.0;
        while s <= 7.0 {
            // Above s ≈ 5.6 the spacing of doubles near 1 exceeds φ(s)·1e-9,
            // so Φ(s) itself cannot carry s to that precision; the upper half
            // goes through the complement instead.
            let back = if s <= 5.0 {
                std_normal_quantile(std_normal_cdf(s)).unwrap()
            } else {
                -std_normal_quantile(std_normal_sf(s)).unwrap()
            };
            assert!((back - s).abs() <= 1e-9, "s={s}");
            s += 0.01;
        }
    }

    #[test]
    fn quantile_is_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..20_000 {
            let u = f64::from(i) / 20_000.0;
            let s = std_normal_quantile(u).unwrap();
            assert!(s > prev);
            prev = s;
        }
    }
}

//! Bivariate normal lower-orthant probabilities.
//!
//! Genz's refinement of the Drezner–Wesolowsky method: Gauss–Legendre
//! quadrature of the Plackett integral over `asin(ρ)` for `|ρ| <= 0.925`,
//! and a transformed-variable expansion around the singular `|ρ| = 1` case
//! otherwise.
#![allow(clippy::excessive_precision)]

use core::f64::consts::PI;

use super::normal::std_normal_cdf;
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;
const SQRT_2PI: f64 = 2.506_628_274_631_000_502_415_765_284_811;

// (weight, abscissa) pairs on [-1, 1]; only the negative half is stored, the
// evaluation mirrors each node.
const GL6: [(f64, f64); 3] = [
    (0.171_324_492_379_170_5, -0.932_469_514_203_152_2),
    (0.360_761_573_048_138_4, -0.661_209_386_466_264_7),
    (0.467_913_934_572_691_0, -0.238_619_186_083_197_0),
];
const GL12: [(f64, f64); 6] = [
    (0.047_175_336_386_511_77, -0.981_560_634_246_719_1),
    (0.106_939_325_995_318_3, -0.904_117_256_370_475_0),
    (0.160_078_328_543_346_4, -0.769_902_674_194_305_0),
    (0.203_167_426_723_065_9, -0.587_317_954_286_617_1),
    (0.233_492_536_538_354_7, -0.367_831_498_998_180_2),
    (0.249_147_045_813_402_9, -0.125_233_408_511_469_2),
];
const GL20: [(f64, f64); 10] = [
    (0.017_614_007_139_152_12, -0.993_128_599_185_094_9),
    (0.040_601_429_800_386_94, -0.963_971_927_277_913_8),
    (0.062_672_048_334_109_06, -0.912_234_428_251_325_9),
    (0.083_276_741_576_704_75, -0.839_116_971_822_218_8),
    (0.101_930_119_817_240_4, -0.746_331_906_460_150_8),
    (0.118_194_531_961_518_4, -0.636_053_680_726_515_0),
    (0.131_688_638_449_176_6, -0.510_867_001_950_827_1),
    (0.142_096_109_318_382_1, -0.373_706_088_715_419_6),
    (0.149_172_986_472_603_7, -0.227_785_851_141_645_1),
    (0.152_753_387_130_725_9, -0.076_526_521_133_497_33),
];

fn nodes(abs_rho: f64) -> &'static [(f64, f64)] {
    if abs_rho < 0.3 {
        &GL6
    } else if abs_rho < 0.75 {
        &GL12
    } else {
        &GL20
    }
}

/// `P(S > h, T > k)` for a standard bivariate normal with correlation `r`.
fn upper_orthant(h: f64, k: f64, r: f64) -> f64 {
    if h == f64::INFINITY || k == f64::INFINITY {
        return 0.0;
    }
    if h == f64::NEG_INFINITY {
        return if k == f64::NEG_INFINITY { 1.0 } else { std_normal_cdf(-k) };
    }
    if k == f64::NEG_INFINITY {
        return std_normal_cdf(-h);
    }
    if r == 0.0 {
        return std_normal_cdf(-h) * std_normal_cdf(-k);
    }

    let quad = nodes(r.abs());
    let mut k = k;
    let mut hk = h * k;
    let mut bvn = 0.0;

    if r.abs() < 0.925 {
        let hs = 0.5 * (h * h + k * k);
        let asr = 0.5 * libm::asin(r);
        for &(w, x) in quad {
            for t in [1.0 + x, 1.0 - x] {
                let sn = libm::sin(asr * t);
                bvn += w * libm::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
        }
        return bvn * asr / TWO_PI + std_normal_cdf(-h) * std_normal_cdf(-k);
    }

    if r < 0.0 {
        k = -k;
        hk = -hk;
    }
    if r.abs() < 1.0 {
        let a2 = (1.0 - r) * (1.0 + r);
        let mut a = libm::sqrt(a2);
        let b2 = (h - k) * (h - k);
        let c = (4.0 - hk) / 8.0;
        let d = (12.0 - hk) / 80.0;
        let asr = -0.5 * (b2 / a2 + hk);
        if asr > -100.0 {
            bvn = a
                * libm::exp(asr)
                * (1.0 - c * (b2 - a2) * (1.0 - d * b2) / 3.0 + c * d * a2 * a2);
        }
        if hk > -100.0 {
            let b = libm::sqrt(b2);
            let sp = SQRT_2PI * std_normal_cdf(-b / a);
            bvn -= libm::exp(-0.5 * hk) * sp * b * (1.0 - c * b2 * (1.0 - d * b2) / 3.0);
        }
        a *= 0.5;
        let mut sum = 0.0;
        for &(w, x) in quad {
            for t in [1.0 + x, 1.0 - x] {
                let xs = (a * t) * (a * t);
                let asr = -0.5 * (b2 / xs + hk);
                if asr > -100.0 {
                    let sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
                    let rs = libm::sqrt(1.0 - xs);
                    let ep = libm::exp(-0.5 * hk * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
                    sum += w * libm::exp(asr) * (sp - ep);
                }
            }
        }
        bvn = (a * sum - bvn) / TWO_PI;
    }

    if r > 0.0 {
        bvn + std_normal_cdf(-f64::max(h, k))
    } else if h >= k {
        -bvn
    } else {
        let l = if h < 0.0 {
            std_normal_cdf(k) - std_normal_cdf(h)
        } else {
            std_normal_cdf(-h) - std_normal_cdf(-k)
        };
        l - bvn
    }
}

/// `P(S <= h, T <= k)` for a standard bivariate normal pair with
/// correlation `rho`. Limits may be infinite.
pub fn bvn_cdf(h: f64, k: f64, rho: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::Domain("bivariate normal correlation must lie in [-1, 1]"));
    }
    if h.is_nan() || k.is_nan() {
        return Err(Error::Domain("bivariate normal limits must not be NaN"));
    }
    Ok(upper_orthant(-h, -k, rho).clamp(0.0, 1.0))
}

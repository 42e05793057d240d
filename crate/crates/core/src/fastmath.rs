//! Branch-free sine and cosine kernels.
//!
//! The slice versions contain no data-dependent branches in the hot loop, so
//! the compiler can vectorize them across samples. The scalar versions run the
//! exact same arithmetic, which is what lets a batched evaluation and a loop of
//! scalar evaluations agree bit for bit.
//!
//! Arguments are reduced modulo π/2 with a three-part Cody-Waite split and the
//! fdlibm minimax polynomials are evaluated on [-π/4, π/4]. Error is within a
//! couple of ulp for |x| ≤ [`REDUCTION_LIMIT`]; larger or non-finite arguments
//! fall back to the standard library.

// constants are quoted at fdlibm precision
#![allow(clippy::excessive_precision)]

/// Largest |x| handled by the polynomial path.
pub const REDUCTION_LIMIT: f64 = 1.0e5;

// 1.5 * 2^52: adding and subtracting rounds to the nearest integer.
const ROUND_MAGIC: f64 = 6_755_399_441_055_744.0;

const FRAC_2_PI: f64 = std::f64::consts::FRAC_2_PI;
const PIO2_1: f64 = 1.570_796_326_734_125_614_17e+00;
const PIO2_2: f64 = 6.077_100_506_303_965_976_60e-11;
const PIO2_3: f64 = 2.022_266_248_711_166_455_80e-21;

const S1: f64 = -1.666_666_666_666_663_243_48e-01;
const S2: f64 = 8.333_333_333_322_489_461_24e-03;
const S3: f64 = -1.984_126_982_985_794_931_34e-04;
const S4: f64 = 2.755_731_370_707_006_767_89e-06;
const S5: f64 = -2.505_076_025_340_686_341_95e-08;
const S6: f64 = 1.589_690_995_211_550_102_21e-10;

const C1: f64 = 4.166_666_666_666_660_190_37e-02;
const C2: f64 = -1.388_888_888_887_410_957_49e-03;
const C3: f64 = 2.480_158_728_947_672_941_78e-05;
const C4: f64 = -2.755_731_435_139_066_330_35e-07;
const C5: f64 = 2.087_572_321_298_174_827_90e-09;
const C6: f64 = -1.135_964_755_778_819_482_65e-11;

#[inline(always)]
fn reduce(x: f64) -> (f64, u64) {
    let t = x * FRAC_2_PI + ROUND_MAGIC;
    let q = t.to_bits();
    let n = t - ROUND_MAGIC;
    let r = ((x - n * PIO2_1) - n * PIO2_2) - n * PIO2_3;
    (r, q)
}

#[inline(always)]
fn poly_sin(r: f64) -> f64 {
    let z = r * r;
    let v = z * r;
    let p = S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)));
    r + v * (S1 + z * p)
}

#[inline(always)]
fn poly_cos(r: f64) -> f64 {
    let z = r * r;
    let p = z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
    let hz = 0.5 * z;
    let w = 1.0 - hz;
    w + (((1.0 - w) - hz) + z * p)
}

#[inline(always)]
fn flip(v: f64, bit: u64) -> f64 {
    f64::from_bits(v.to_bits() ^ (bit << 63))
}

/// `a` where the low bit of `q` is clear, `b` where it is set. Bit masks
/// instead of a compare keep the loop vectorizable on baseline x86-64.
#[inline(always)]
fn select_odd(q: u64, a: f64, b: f64) -> f64 {
    let m = (q & 1).wrapping_neg();
    f64::from_bits((a.to_bits() & !m) | (b.to_bits() & m))
}

#[inline(always)]
fn sin_kernel(x: f64) -> f64 {
    let (r, q) = reduce(x);
    let v = select_odd(q, poly_sin(r), poly_cos(r));
    flip(v, (q >> 1) & 1)
}

#[inline(always)]
fn cos_kernel(x: f64) -> f64 {
    let (r, q) = reduce(x);
    let v = select_odd(q, poly_cos(r), poly_sin(r));
    flip(v, (q.wrapping_add(1) >> 1) & 1)
}

#[inline(always)]
fn in_range(x: f64) -> bool {
    x.abs() <= REDUCTION_LIMIT
}

#[inline]
pub fn sin(x: f64) -> f64 {
    if in_range(x) {
        sin_kernel(x)
    } else {
        x.sin()
    }
}

#[inline]
pub fn cos(x: f64) -> f64 {
    if in_range(x) {
        cos_kernel(x)
    } else {
        x.cos()
    }
}

fn all_in_range(xs: &[f64]) -> bool {
    xs.iter().fold(true, |ok, &x| ok & in_range(x))
}

macro_rules! slice_kernel {
    ($name:ident, $wide:ident, $widest:ident, $kernel:ident, $scalar:ident) => {
        #[cfg(target_arch = "x86_64")]
        #[target_feature(enable = "avx2")]
        fn $wide(xs: &mut [f64]) {
            for x in xs.iter_mut() {
                *x = $kernel(*x);
            }
        }

        #[cfg(target_arch = "x86_64")]
        #[target_feature(enable = "avx512f")]
        fn $widest(xs: &mut [f64]) {
            for x in xs.iter_mut() {
                *x = $kernel(*x);
            }
        }

        /// In-place evaluation over a slice; bitwise equal to mapping the
        /// scalar function. Wider vector units are used when the CPU has them,
        /// which changes speed only: the arithmetic is the same IEEE sequence.
        pub fn $name(xs: &mut [f64]) {
            if !all_in_range(xs) {
                xs.iter_mut().for_each(|x| *x = $scalar(*x));
                return;
            }
            #[cfg(target_arch = "x86_64")]
            if std::arch::is_x86_feature_detected!("avx512f") {
                // SAFETY: the required CPU feature was detected at runtime.
                unsafe { $widest(xs) };
                return;
            }
            #[cfg(target_arch = "x86_64")]
            if std::arch::is_x86_feature_detected!("avx2") {
                // SAFETY: the required CPU feature was detected at runtime.
                unsafe { $wide(xs) };
                return;
            }
            for x in xs.iter_mut() {
                *x = $kernel(*x);
            }
        }
    };
}

slice_kernel!(sin_in_place, sin_avx2, sin_avx512, sin_kernel, sin);
slice_kernel!(cos_in_place, cos_avx2, cos_avx512, cos_kernel, cos);

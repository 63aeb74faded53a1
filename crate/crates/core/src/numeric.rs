//! Numerical utilities: adaptive Gauss–Kronrod quadrature, semi-infinite
//! integration, golden-section minimisation and Kolmogorov–Smirnov distances.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the 7-point rule at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Quadrature {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    Quadrature {
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// Globally adaptive G7/K15 quadrature on `[a, b]`. Subdivides the interval
/// with the largest error estimate until the total estimate satisfies
/// `error ≤ max(abs_tol, rel_tol·|value|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error: 0.0,
        };
    }
    let mut parts = vec![(a, b, gk15(&f, a, b))];
    for _ in 0..4000 {
        let value: f64 = parts.iter().map(|p| p.2.value).sum();
        let error: f64 = parts.iter().map(|p| p.2.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            break;
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .expect("non-empty");
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        parts.push((lo, mid, gk15(&f, lo, mid)));
        parts.push((mid, hi, gk15(&f, mid, hi)));
    }
    Quadrature {
        value: parts.iter().map(|p| p.2.value).sum(),
        error: parts.iter().map(|p| p.2.error).sum(),
    }
}

/// Integral of `f` over `(0, ∞)` for integrands that are negligible near 0
/// and decay in the tail. `scale` is a characteristic abscissa (e.g. the
/// mean); the half-line is cut into dyadic pieces around it and each piece is
/// integrated adaptively. Pieces are added until their contribution drops
/// below `rel_tol` of the running total.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, scale: f64, rel_tol: f64) -> Quadrature {
    assert!(scale > 0.0, "scale must be positive");
    let mut total = Quadrature {
        value: 0.0,
        error: 0.0,
    };
    let piece_tol = rel_tol * 1e-2;
    let add = |q: Quadrature, total: &mut Quadrature| {
        total.value += q.value;
        total.error += q.error;
        q.value.abs()
    };
    // Upward from the scale.
    let mut small_run = 0;
    let mut lo = scale;
    for k in 0..2000 {
        let hi = lo * 2.0;
        let q = integrate(&f, lo, hi, 0.0, piece_tol);
        let c = add(q, &mut total);
        if k > 2 && c <= rel_tol * 1e-3 * total.value.abs() {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        lo = hi;
        if !lo.is_finite() {
            break;
        }
    }
    // Downward towards zero.
    let mut hi = scale;
    small_run = 0;
    for _ in 0..2000 {
        let lo = hi * 0.5;
        let q = integrate(&f, lo, hi, 0.0, piece_tol);
        let c = add(q, &mut total);
        hi = lo;
        if c <= rel_tol * 1e-3 * total.value.abs() {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        if hi < f64::MIN_POSITIVE {
            break;
        }
    }
    let q = integrate(&f, 0.0, hi, 0.0, piece_tol);
    add(q, &mut total);
    total
}

/// CDF values `∫_lower^{x_i} pdf` at each point of an ascending slice,
/// accumulated interval by interval.
pub fn cdf_at_sorted<F: Fn(f64) -> f64>(pdf: F, lower: f64, sorted: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = 0.0;
    let mut prev = lower;
    for &x in sorted {
        debug_assert!(x >= prev, "points must be ascending");
        if x > prev {
            acc += integrate(&pdf, prev, x, 1e-14, 1e-10).value;
        }
        out.push(acc);
        prev = x;
    }
    out
}

/// Two-sided Kolmogorov–Smirnov distance between the empirical CDF of an
/// ascending sample and model CDF values at the same points.
pub fn ks_distance(sorted: &[f64], cdf: &[f64]) -> f64 {
    assert_eq!(sorted.len(), cdf.len());
    let n = sorted.len() as f64;
    let mut d = 0.0_f64;
    for (i, &f) in cdf.iter().enumerate() {
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    d
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping when the
/// bracket is narrower than `rel_tol` of its midpoint.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    rel_tol: f64,
) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= rel_tol * (0.5 * (a + b)).abs().max(f64::MIN_POSITIVE) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Median of a slice (NaN-free). Returns NaN for an empty slice.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Linear-interpolated quantile of an ascending slice, `q ∈ [0, 1]`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let w = pos - lo as f64;
    sorted[lo] * (1.0 - w) + sorted[hi] * w
}

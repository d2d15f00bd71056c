//! Bessel functions of the first kind, orders zero and one.
//!
//! `|x| <= 8` uses the defining power series; beyond that the Hankel form
//! `sqrt(2/(pi x)) (P cos(x - phase) - Q sin(x - phase))` with rational
//! approximations of P and Q. The J0 coefficients are the Cephes set for
//! `x > 5`, the J1 coefficients the fdlibm set for `x >= 8`.

#![allow(clippy::excessive_precision, clippy::unreadable_literal)]

use std::f64::consts::{FRAC_PI_4, PI};

const SERIES_LIMIT: f64 = 8.0;
const SQRT_2_OVER_PI: f64 = 0.79788456080286535588;

/// Sum of `sum_k (-1)^k (x^2/4)^k / (k! (k + order)!)`, i.e. `J_order(x) / (x/2)^order`.
fn reduced_series(x: f64, order: u32) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    for k in 1..=order {
        term /= f64::from(k);
    }
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= -q / (k * (k + f64::from(order)));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1e-300) && k > q.sqrt() {
            break;
        }
        k += 1.0;
    }
    sum
}

fn polevl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Like [`polevl`] with an implicit leading coefficient of one.
fn p1evl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(1.0, |acc, &c| acc * x + c)
}

pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_LIMIT {
        return reduced_series(x, 0);
    }
    let w = 5.0 / x;
    let z = w * w;
    let p = polevl(z, &J0_PP) / polevl(z, &J0_PQ);
    let q = polevl(z, &J0_QP) / p1evl(z, &J0_QQ);
    let xn = x - FRAC_PI_4;
    (p * xn.cos() - w * q * xn.sin()) * SQRT_2_OVER_PI / x.sqrt()
}

pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax <= SERIES_LIMIT {
        0.5 * ax * reduced_series(ax, 1)
    } else {
        let z = 1.0 / (ax * ax);
        let pr = polevl(z, &J1_PR8_REV) / polevl(z, &J1_PS8_REV);
        let qr = polevl(z, &J1_QR8_REV) / polevl(z, &J1_QS8_REV);
        let p = 1.0 + pr;
        let q = (0.375 + qr) / ax;
        let xn = ax - 3.0 * FRAC_PI_4;
        (p * xn.cos() - q * xn.sin()) * SQRT_2_OVER_PI / ax.sqrt()
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// `J1(x) / x`, finite at the origin where it tends to 1/2.
pub fn j1_over_x(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        0.5 * reduced_series(ax, 1)
    } else {
        j1(ax) / ax
    }
}

/// `J0''(x) = J1(x)/x - J0(x)`.
pub fn j0_second_derivative(x: f64) -> f64 {
    j1_over_x(x) - j0(x)
}

// One-term asymptotic form, kept as a cheap comparator for benchmarks.
#[allow(dead_code)]
pub fn j0_leading_asymptotic(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt() * (x - FRAC_PI_4).cos()
}

const J0_PP: [f64; 7] = [
    7.96936729297347051624e-4,
    8.28352392107440799803e-2,
    1.23953371646414299388e0,
    5.44725003058768775090e0,
    8.74716500199817011941e0,
    5.30324038235394892183e0,
    9.99999999999999997821e-1,
];
const J0_PQ: [f64; 7] = [
    9.24408810558863637013e-4,
    8.56288474354474431428e-2,
    1.25352743901058953537e0,
    5.47097740330417105182e0,
    8.76190883237069594232e0,
    5.30605288235394617618e0,
    1.00000000000000000218e0,
];
const J0_QP: [f64; 8] = [
    -1.13663838898469149931e-2,
    -1.28252718670509318512e0,
    -1.95539544257735972385e1,
    -9.32060152123768231369e1,
    -1.77681167980488050595e2,
    -1.47077505154951170175e2,
    -5.14105326766599330220e1,
    -6.05014350600728481186e0,
];
const J0_QQ: [f64; 7] = [
    6.43178256118178023184e1,
    8.56430025976980587198e2,
    3.88240183605401609683e3,
    7.24046774195652478189e3,
    5.93072701187316984827e3,
    2.06209331660327847417e3,
    2.42005740240291393179e2,
];

// fdlibm pone/qone coefficients for x >= 8, highest power first.
const J1_PR8_REV: [f64; 6] = [
    7.91447954031891731574e+03,
    3.87474538913960532227e+03,
    4.12051854307378562225e+02,
    1.32394806593073575129e+01,
    1.17187499999988647970e-01,
    0.0,
];
const J1_PS8_REV: [f64; 6] = [
    3.08042720627888811578e+04,
    9.76027935934950801311e+04,
    3.69562060269033463555e+04,
    3.65093083420853463394e+03,
    1.14207370375678408436e+02,
    1.0,
];
const J1_QR8_REV: [f64; 6] = [
    -4.84385124285750353010e+04,
    -1.18498066702429587167e+04,
    -7.59601722513950107896e+02,
    -1.62717534544589987888e+01,
    -1.02539062499992714161e-01,
    0.0,
];
const J1_QS8_REV: [f64; 7] = [
    -2.94490264303834643215e+05,
    6.66601232617776375264e+05,
    7.19657723683240939863e+05,
    1.33875336287249578163e+05,
    7.82538599923348465381e+03,
    1.61395369700722909556e+02,
    1.0,
];

#[cfg(test)]
mod tests {
    use super::*;

    // (x, J0(x), J1(x)) from 40-digit arbitrary precision evaluation.
    const REFERENCE: [(f64, f64, f64); 20] = [
        (0.0, 1.0, 0.0),
        (0.5, 0.93846980724081290423, 0.24226845767487388638),
        (1.0, 0.76519768655796655145, 0.44005058574493351596),
        (1.5, 0.51182767173591812875, 0.55793650791009964199),
        (2.0, 0.22389077914123566805, 0.5767248077568733872),
        (
            2.404825557695773,
            -1.2011950073676861231e-16,
            0.51914749728946673819,
        ),
        (3.0, -0.26005195490193343762, 0.33905895852593645893),
        (4.0, -0.39714980986384737229, -0.066043328023549136143),
        (5.0, -0.17759677131433830435, -0.32757913759146522204),
        (6.0, 0.15064525725099693166, -0.27668385812756560817),
        (7.0, 0.30007927051955559665, -0.0046828234823458326991),
        (7.9, 0.19436184484127831756, 0.21917939992175114408),
        (8.0, 0.17165080713755390609, 0.23463634685391462438),
        (8.1, 0.14751745404437758233, 0.24760776698159291818),
        (9.0, -0.090333611182876134336, 0.24531178657332527232),
        (10.0, -0.2459357644513483352, 0.04347274616886143667),
        (12.0, 0.047689310796833536624, -0.22344710449062761237),
        (15.0, -0.014224472826780773234, 0.20510403861352276115),
        (18.0, -0.013355805721984110885, -0.18799488548806959401),
        (20.0, 0.16702466434058315473, 0.066833124175850045579),
    ];

    #[test]
    fn matches_reference_table() {
        for &(x, r0, r1) in &REFERENCE {
            assert!((j0(x) - r0).abs() <= 1e-12, "J0({x}) = {} vs {r0}", j0(x));
            assert!((j1(x) - r1).abs() <= 1e-12, "J1({x}) = {} vs {r1}", j1(x));
            assert!((j0(-x) - r0).abs() <= 1e-12);
            assert!((j1(-x) + r1).abs() <= 1e-12);
        }
    }

    #[test]
    fn series_and_asymptotic_branches_meet_at_eight() {
        let below = 8.0_f64;
        let above = f64::from_bits(below.to_bits() + 1);
        assert!((j0(below) - j0(above)).abs() < 1e-14);
        assert!((j1(below) - j1(above)).abs() < 1e-14);
    }

    #[test]
    fn second_derivative_limit_at_origin() {
        assert_eq!(j0_second_derivative(0.0), -0.5);
        assert!((j0_second_derivative(1e-6) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn leading_asymptotic_is_rough_for_large_x() {
        assert!((j0_leading_asymptotic(20.0) - j0(20.0)).abs() < 1e-2);
    }
}

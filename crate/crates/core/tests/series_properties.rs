use num_complex::Complex64;
use proptest::prelude::*;
use wrightlens::laurent::{apply_operator, wright_kernel, LaurentSeries, TaylorSeries};
use wrightlens::special::{phi, WrightParams};

fn coeffs_strategy(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 0..=len).prop_map(|v| {
        v.into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect()
    })
}

proptest! {
    #[test]
    fn hadamard_commutes(a in coeffs_strategy(8), b in coeffs_strategy(8)) {
        let f = LaurentSeries::normalized(a).unwrap();
        let g = LaurentSeries::new(Complex64::new(0.5, -1.0), b).unwrap();
        prop_assert_eq!(f.hadamard(&g), g.hadamard(&f));
    }

    #[test]
    fn operator_is_hadamard_with_kernel(a in coeffs_strategy(12), alpha in 0.0..2.0f64, beta in 0.1..3.0f64) {
        let wp = WrightParams::new(alpha, beta).unwrap();
        let f = LaurentSeries::normalized(a).unwrap();
        let h = apply_operator(&wp, &f).unwrap();
        let k = wright_kernel(&wp, f.truncation()).unwrap();
        let via_kernel = f.hadamard(&k);
        prop_assert_eq!(h.principal(), Complex64::new(1.0, 0.0));
        for (n, (x, y)) in h.coeffs().iter().zip(via_kernel.coeffs()).enumerate() {
            prop_assert!((x - y).norm() <= 1e-15 * x.norm().max(1e-300));
            let expected = f.coeffs()[n] * phi(&wp, n + 1).unwrap();
            prop_assert!((x - expected).norm() <= 1e-14 * expected.norm().max(1e-300));
        }
    }

    #[test]
    fn z_derivative_matches_finite_difference(a in coeffs_strategy(6), re in -0.6..0.6f64, im in -0.6..0.6f64) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 0.1);
        let f = LaurentSeries::normalized(a).unwrap();
        let h = 1e-5;
        let derivative = (f.eval(z + h).unwrap() - f.eval(z - h).unwrap()) / (2.0 * h);
        let expected = z * derivative;
        let got = f.z_derivative().eval(z).unwrap();
        prop_assert!((got - expected).norm() <= 1e-6 * expected.norm().max(1.0));
    }

    #[test]
    fn taylor_division_round_trip(a in coeffs_strategy(6), b in coeffs_strategy(6)) {
        let mut num = vec![Complex64::new(1.0, 0.0)];
        num.extend(a);
        let mut den = vec![Complex64::new(2.0, 0.0)];
        den.extend(b);
        let p = TaylorSeries::from_polynomial(&num, 10);
        let q = TaylorSeries::from_polynomial(&den, 10);
        let back = p.div(&q).unwrap().mul(&q);
        for k in 0..=10 {
            prop_assert!((back.coeff(k) - p.coeff(k)).norm() < 1e-9);
        }
    }
}

#[test]
fn evaluation_matches_direct_sum() {
    let f = LaurentSeries::from_real(1.0, &[0.5, -0.25, 0.125]).unwrap();
    let z = Complex64::new(0.3, -0.4);
    let direct = 1.0 / z + 0.5 * z - 0.25 * z * z + 0.125 * z * z * z;
    assert!((f.eval(z).unwrap() - direct).norm() < 1e-15);
}

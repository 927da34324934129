use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CMat;
use crate::scalar::standard_normal_complex;

type C = Complex<f64>;
type M = CMat<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> M {
    M::from_fn(rows, cols, |_, _| standard_normal_complex(rng))
}

fn rand_hermitian(rng: &mut ChaCha8Rng, n: usize) -> M {
    let g = rand_mat(rng, n, n);
    (&g + &g.adjoint()).scale_re(0.5)
}

fn assert_mat_close(a: &M, b: &M, tol: f64) {
    let scale = a.norm_fro().max(b.norm_fro()).max(1.0);
    let diff = (a - b).norm_fro();
    assert!(diff <= tol * scale, "matrices differ by {diff:e} (tol {tol:e})");
}

#[test]
fn basic_algebra() {
    let i2 = M::identity(2);
    let a = M::from_rows(vec![vec![c(1.0, 2.0), c(0.0, -1.0)], vec![c(3.0, 0.0), c(0.5, 0.5)]]);
    assert_mat_close(&a.matmul(&i2), &a, 0.0);
    assert_mat_close(&a.adjoint().adjoint(), &a, 0.0);
    assert_eq!(a.trace(), c(1.5, 2.5));
    // adjoint reverses products
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let x = rand_mat(&mut rng, 3, 4);
    let y = rand_mat(&mut rng, 4, 2);
    assert_mat_close(&x.matmul(&y).adjoint(), &y.adjoint().matmul(&x.adjoint()), 1e-15);
}

#[test]
fn empty_matrices_are_legal() {
    let e = M::zeros(0, 0);
    assert_eq!(e.matmul(&e).rows(), 0);
    assert_eq!(e.eigh_values().unwrap().len(), 0);
    assert_eq!(e.eigen().unwrap().values.len(), 0);
    assert_eq!(e.expm().unwrap().rows(), 0);
    assert_eq!(e.norm_fro(), 0.0);
}

#[test]
fn lu_solutions_satisfy_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1usize, 2, 5, 9] {
        let a = &rand_mat(&mut rng, n, n) + &M::identity(n).scale_re(3.0);
        let b = rand_mat(&mut rng, n, 3);
        let x = a.solve(&b).unwrap();
        assert_mat_close(&a.matmul(&x), &b, 1e-12);
        let inv = a.inverse().unwrap();
        assert_mat_close(&a.matmul(&inv), &M::identity(n), 1e-12);
    }
}

#[test]
fn lu_rejects_singular() {
    let a = M::from_rows(vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]);
    assert!(a.inverse().is_err());
}

#[test]
fn hermitian_eigenvalues_of_diagonal() {
    let d = M::from_diag(&[c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]);
    let e = d.eigh_values().unwrap();
    assert_eq!(e.len(), 3);
    for (got, want) in e.iter().zip([-1.0, 2.0, 3.0]) {
        assert!((got - want).abs() < 1e-14);
    }
}

#[test]
fn hermitian_eigenvalues_match_trace_and_frobenius() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [2usize, 3, 6, 10] {
        let a = rand_hermitian(&mut rng, n);
        let e = a.eigh_values().unwrap();
        let tr: f64 = e.iter().sum();
        assert!((tr - a.trace().re).abs() <= 1e-11 * a.norm_fro().max(1.0));
        let fr: f64 = e.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((fr - a.norm_fro()).abs() <= 1e-11 * a.norm_fro().max(1.0));
    }
}

#[test]
fn hermitian_eigenvalues_agree_with_general_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [2usize, 4, 7] {
        let a = rand_hermitian(&mut rng, n);
        let mut herm = a.eigh_values().unwrap();
        let mut gen: Vec<f64> = a.eigen().unwrap().values.iter().map(|z| z.re).collect();
        herm.sort_by(|x, y| x.partial_cmp(y).unwrap());
        gen.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (h, g) in herm.iter().zip(&gen) {
            assert!((h - g).abs() <= 1e-10 * a.norm_fro().max(1.0), "{h} vs {g}");
        }
    }
}

#[test]
fn general_eigen_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in [1usize, 2, 3, 5, 8, 12] {
        let a = rand_mat(&mut rng, n, n);
        let eig = a.eigen().unwrap();
        let scale = a.norm_fro().max(1.0);
        for k in 0..n {
            let v = M::from_fn(n, 1, |r, _| eig.vectors[(r, k)]);
            let av = a.matmul(&v);
            let lv = v.scale(eig.values[k]);
            assert!(
                (&av - &lv).norm_fro() <= 1e-10 * scale,
                "n={n} k={k} residual {}",
                (&av - &lv).norm_fro()
            );
        }
    }
}

#[test]
fn general_eigen_recovers_known_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in [2usize, 4, 6] {
        // A = S D S^-1 with known, well separated D
        let diag: Vec<C> = (0..n).map(|i| c(i as f64 + 1.0, (i as f64) - 0.5)).collect();
        let d = M::from_diag(&diag);
        let s = &rand_mat(&mut rng, n, n) + &M::identity(n).scale_re(4.0);
        let a = s.matmul(&d).matmul(&s.inverse().unwrap());
        let mut got = a.eigen().unwrap().values;
        let mut want = diag.clone();
        let key = |z: &C| (z.re, z.im);
        got.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        want.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() <= 1e-9 * a.norm_fro().max(1.0), "{g} vs {w}");
        }
    }
}

#[test]
fn eigen_handles_doubled_real_eigenvalues() {
    // conjugate-paired spectrum with an exact doubling, as produced by
    // symplectic embeddings of quaternionic matrices with real spectrum
    let a = M::from_rows(vec![
        vec![c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)],
    ]);
    let eig = a.eigen().unwrap();
    let mut re: Vec<f64> = eig.values.iter().map(|z| z.re).collect();
    re.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for (got, want) in re.iter().zip([2.0, 2.0, 3.0, 3.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    for k in 0..4 {
        let v = M::from_fn(4, 1, |r, _| eig.vectors[(r, k)]);
        let res = (&a.matmul(&v) - &v.scale(eig.values[k])).norm_fro();
        assert!(res <= 1e-10, "k={k} residual {res}");
    }
}

#[test]
fn singular_values_detect_rank() {
    let a = M::from_rows(vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]);
    let sv = a.singular_values().unwrap();
    assert!(sv[0] <= 1e-12 * sv[1]);
}

#[test]
fn expm_of_zero_and_diagonal() {
    let z = M::zeros(3, 3);
    assert_mat_close(&z.expm().unwrap(), &M::identity(3), 1e-15);
    let d = M::from_diag(&[c(0.3, 1.0), c(-2.0, 0.0)]);
    let e = d.expm().unwrap();
    let want = M::from_diag(&[c(0.3, 1.0).exp(), c(-2.0, 0.0).exp()]);
    assert_mat_close(&e, &want, 1e-14);
}

#[test]
fn expm_of_nilpotent() {
    let a = M::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]);
    let e = a.expm().unwrap();
    let want = M::from_rows(vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]);
    assert_mat_close(&e, &want, 1e-15);
}

#[test]
fn expm_inverse_is_exp_of_negative() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in [2usize, 4, 6] {
        let a = rand_mat(&mut rng, n, n).scale_re(0.8);
        let e = a.expm().unwrap();
        let em = (-&a).expm().unwrap();
        assert_mat_close(&e.matmul(&em), &M::identity(n), 1e-12);
    }
}

#[test]
fn expm_of_anti_hermitian_is_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in [2usize, 5] {
        let g = rand_mat(&mut rng, n, n);
        let a = (&g - &g.adjoint()).scale_re(0.5).scale_re(3.0);
        let u = a.expm().unwrap();
        assert_mat_close(&u.adjoint().matmul(&u), &M::identity(n), 1e-12);
    }
}

#[test]
fn expm_matches_taylor_series_for_small_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let a = rand_mat(&mut rng, 4, 4).scale_re(0.01);
    // independent route: plain Taylor summation converges fast at this norm
    let mut sum = M::identity(4);
    let mut term = M::identity(4);
    for k in 1..25 {
        term = term.matmul(&a).scale_re(1.0 / k as f64);
        sum = &sum + &term;
    }
    assert_mat_close(&a.expm().unwrap(), &sum, 1e-14);
}

#[test]
fn cond_one_of_identity() {
    assert!((M::identity(5).cond_one().unwrap() - 1.0).abs() < 1e-14);
}

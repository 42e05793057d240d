//! Randomized checks of the sample-by-sample semantics.

use mcprop::sampling::{self, mv_normal_particles, sigma_points, MvNormalSpec};
use mcprop::{cov, BinaryOp, Particles, UnaryFn};
use nalgebra::DMatrix;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Expr {
    Input(usize),
    Const(f64),
    Unary(UnaryFn, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

const INPUTS: usize = 3;

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0..INPUTS).prop_map(Expr::Input),
        (-3.0..3.0f64).prop_map(Expr::Const),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let unary = prop::sample::select(UnaryFn::ALL.to_vec());
        let binary = prop::sample::select(vec![
            BinaryOp::Add,
            BinaryOp::Sub,
            BinaryOp::Mul,
            BinaryOp::Div,
            BinaryOp::Atan2,
            BinaryOp::Min,
            BinaryOp::Max,
            BinaryOp::Hypot,
        ]);
        prop_oneof![
            (unary, inner.clone()).prop_map(|(f, e)| Expr::Unary(f, Box::new(e))),
            (binary, inner.clone(), inner).prop_map(|(op, a, b)| Expr::Binary(
                op,
                Box::new(a),
                Box::new(b)
            )),
        ]
    })
}

enum Value {
    P(Particles),
    S(f64),
}

fn eval_particles(e: &Expr, xs: &[Particles]) -> Value {
    match e {
        Expr::Input(i) => Value::P(xs[*i].clone()),
        Expr::Const(c) => Value::S(*c),
        Expr::Unary(f, a) => match eval_particles(a, xs) {
            Value::P(p) => Value::P(p.unary(*f)),
            Value::S(s) => Value::S(f.apply(s)),
        },
        Expr::Binary(op, a, b) => {
            let (a, b) = (eval_particles(a, xs), eval_particles(b, xs));
            let r = match (&a, &b, op) {
                // route the four arithmetic operators through the overloads
                (Value::P(x), Value::P(y), BinaryOp::Add) => x + y,
                (Value::P(x), Value::P(y), BinaryOp::Sub) => x - y,
                (Value::P(x), Value::P(y), BinaryOp::Mul) => x * y,
                (Value::P(x), Value::P(y), BinaryOp::Div) => x / y,
                (Value::P(x), Value::S(y), BinaryOp::Mul) => x * *y,
                (Value::S(x), Value::P(y), BinaryOp::Sub) => *x - y,
                (Value::P(x), Value::S(y), _) => Particles::binary_op(*op, x, *y).unwrap(),
                (Value::S(x), Value::P(y), _) => Particles::binary_op(*op, *x, y).unwrap(),
                (Value::P(x), Value::P(y), _) => Particles::binary_op(*op, x, y).unwrap(),
                (Value::S(x), Value::S(y), _) => return Value::S(op.apply(*x, *y)),
            };
            Value::P(r)
        }
    }
}

fn eval_scalar(e: &Expr, xs: &[f64]) -> f64 {
    match e {
        Expr::Input(i) => xs[*i],
        Expr::Const(c) => *c,
        Expr::Unary(f, a) => f.apply(eval_scalar(a, xs)),
        Expr::Binary(op, a, b) => op.apply(eval_scalar(a, xs), eval_scalar(b, xs)),
    }
}

fn same(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan())
}

fn particles(n: usize) -> impl Strategy<Value = Particles> {
    prop::collection::vec(-4.0..4.0f64, n).prop_map(|v| Particles::from_samples(v).unwrap())
}

proptest! {
    #[test]
    fn expression_trees_act_per_sample(
        (xs, e) in (1usize..=16).prop_flat_map(|n| (prop::collection::vec(particles(n), INPUTS), expr()))
    ) {
        let n = xs[0].len();
        match eval_particles(&e, &xs) {
            Value::P(p) => {
                prop_assert_eq!(p.len(), n);
                for i in 0..n {
                    let scalars: Vec<f64> = xs.iter().map(|x| x.samples()[i]).collect();
                    let want = eval_scalar(&e, &scalars);
                    prop_assert!(same(p.samples()[i], want), "sample {}: {} vs {}", i, p.samples()[i], want);
                }
            }
            Value::S(s) => prop_assert!(same(s, eval_scalar(&e, &[0.0; INPUTS]))),
        }
    }

    #[test]
    fn scalars_broadcast_like_constants(p in particles(12), c in -5.0..5.0f64) {
        let k = Particles::constant(c, p.len());
        for op in [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div, BinaryOp::Hypot] {
            let a = Particles::binary_op(op, &p, c).unwrap();
            let b = Particles::binary_op(op, &p, &k).unwrap();
            prop_assert_eq!(a.into_samples(), b.into_samples());
            let a = Particles::binary_op(op, c, &p).unwrap();
            let b = Particles::binary_op(op, &k, &p).unwrap();
            prop_assert_eq!(a.into_samples(), b.into_samples());
        }
        prop_assert_eq!((&p + c).into_samples(), (&p + &k).into_samples());
        prop_assert_eq!((c * &p).into_samples(), (&k * &p).into_samples());
    }

    #[test]
    fn statistics_are_location_scale_equivariant(
        p in particles(50), a in 0.1..10.0f64, b in -100.0..100.0f64
    ) {
        let q = &p * a + b;
        prop_assert!((q.mean() - (a * p.mean() + b)).abs() < 1e-9 * (1.0 + b.abs()));
        prop_assert!((q.std() - a * p.std()).abs() < 1e-9 * (1.0 + a * p.std()));
        let r = -&p;
        prop_assert!((r.std() - p.std()).abs() < 1e-12);
    }

    #[test]
    fn covariance_is_symmetric_psd(ps in prop::collection::vec(particles(20), 1..5)) {
        let c = cov(&ps).unwrap();
        prop_assert_eq!(&c, &c.transpose());
        let eig = c.symmetric_eigenvalues();
        let scale = c.diagonal().max().max(1.0);
        prop_assert!(eig.iter().all(|l| *l >= -1e-10 * scale), "{}", eig);
    }

    #[test]
    fn sigma_points_reproduce_mean_and_covariance(
        k in 1usize..=10,
        entries in prop::collection::vec(-1.0..1.0f64, 100),
        mean in prop::collection::vec(-5.0..5.0f64, 10),
    ) {
        let b = DMatrix::from_fn(k, k, |i, j| entries[i * 10 + j]);
        let sigma = &b * b.transpose() + DMatrix::identity(k, k) * 1e-3;
        let set = sigma_points(&mean[..k], &sigma).unwrap();
        prop_assert_eq!(set.count(), 2 * k + 1);
        for (p, m) in set.particles().iter().zip(&mean) {
            prop_assert!((p.mean() - m).abs() < 1e-10 * (1.0 + m.abs()));
        }
        let err = (set.population_cov() - &sigma).abs().max();
        prop_assert!(err < 1e-10 * sigma.abs().max().max(1.0), "err {}", err);
    }
}

#[test]
fn mismatched_counts_are_rejected() {
    let a = Particles::constant(1.0, 3);
    let b = Particles::constant(1.0, 4);
    assert!(Particles::binary_op(BinaryOp::Add, &a, &b).is_err());
    assert!(cov(&[a.clone(), b.clone()]).is_err());
    assert!(std::panic::catch_unwind(|| &a + &b).is_err());
}

#[test]
fn mv_normal_recovers_covariance() {
    let sigma = DMatrix::from_row_slice(3, 3, &[2.0, 0.6, -0.3, 0.6, 1.0, 0.2, -0.3, 0.2, 0.5]);
    let spec = MvNormalSpec::new(vec![1.0, 2.0, 3.0], sigma.clone()).unwrap();
    let ps = mv_normal_particles(&spec, 20_000, &mut sampling::seeded_rng(3)).unwrap();
    let c = cov(&ps).unwrap();
    assert!((c - &sigma).abs().max() < 0.05);
    for (p, m) in ps.iter().zip([1.0, 2.0, 3.0]) {
        assert!((p.mean() - m).abs() < 0.03);
    }
}

use super::Particles;
use crate::error::{Error, Result};
use crate::fastmath;

/// Either an uncertain or a certain operand.
#[derive(Debug, Clone, Copy)]
pub enum Operand<'a> {
    Particles(&'a Particles),
    Scalar(f64),
}

impl<'a> From<&'a Particles> for Operand<'a> {
    fn from(p: &'a Particles) -> Self {
        Operand::Particles(p)
    }
}

impl From<f64> for Operand<'_> {
    fn from(x: f64) -> Self {
        Operand::Scalar(x)
    }
}

impl Operand<'_> {
    #[inline]
    pub(crate) fn at(&self, i: usize) -> f64 {
        match self {
            Operand::Particles(p) => p.samples[i],
            Operand::Scalar(x) => *x,
        }
    }

    pub(crate) fn count(&self) -> Option<usize> {
        match self {
            Operand::Particles(p) => Some(p.len()),
            Operand::Scalar(_) => None,
        }
    }

    pub(crate) fn mean(&self) -> f64 {
        match self {
            Operand::Particles(p) => p.mean(),
            Operand::Scalar(x) => *x,
        }
    }
}

/// Common sample count of a set of operands; at least one must be uncertain.
pub(crate) fn common_count(args: &[Operand<'_>]) -> Result<usize> {
    let mut n: Option<usize> = None;
    for a in args {
        if let Some(m) = a.count() {
            match n {
                None => n = Some(m),
                Some(k) if k != m => return Err(Error::CountMismatch { left: k, right: m }),
                _ => {}
            }
        }
    }
    n.ok_or_else(|| Error::Domain("at least one argument must be particles".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Atan2,
    Min,
    Max,
    Hypot,
}

impl BinaryOp {
    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            BinaryOp::Add => a + b,
            BinaryOp::Sub => a - b,
            BinaryOp::Mul => a * b,
            BinaryOp::Div => a / b,
            BinaryOp::Pow => a.powf(b),
            BinaryOp::Atan2 => a.atan2(b),
            BinaryOp::Min => a.min(b),
            BinaryOp::Max => a.max(b),
            BinaryOp::Hypot => a.hypot(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
    Neg,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
    Floor,
    Ceil,
}

impl UnaryFn {
    pub const ALL: [UnaryFn; 16] = [
        UnaryFn::Sin,
        UnaryFn::Cos,
        UnaryFn::Tan,
        UnaryFn::Exp,
        UnaryFn::Log,
        UnaryFn::Sqrt,
        UnaryFn::Abs,
        UnaryFn::Neg,
        UnaryFn::Asin,
        UnaryFn::Acos,
        UnaryFn::Atan,
        UnaryFn::Sinh,
        UnaryFn::Cosh,
        UnaryFn::Tanh,
        UnaryFn::Floor,
        UnaryFn::Ceil,
    ];

    /// The scalar function applied to each sample.
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            UnaryFn::Sin => fastmath::sin(x),
            UnaryFn::Cos => fastmath::cos(x),
            UnaryFn::Tan => x.tan(),
            UnaryFn::Exp => x.exp(),
            UnaryFn::Log => x.ln(),
            UnaryFn::Sqrt => x.sqrt(),
            UnaryFn::Abs => x.abs(),
            UnaryFn::Neg => -x,
            UnaryFn::Asin => x.asin(),
            UnaryFn::Acos => x.acos(),
            UnaryFn::Atan => x.atan(),
            UnaryFn::Sinh => x.sinh(),
            UnaryFn::Cosh => x.cosh(),
            UnaryFn::Tanh => x.tanh(),
            UnaryFn::Floor => x.floor(),
            UnaryFn::Ceil => x.ceil(),
        }
    }
}

macro_rules! unary_methods {
    ($($name:ident => $f:ident),* $(,)?) => {
        $(
            #[inline]
            pub fn $name(&self) -> Particles {
                self.unary(UnaryFn::$f)
            }
        )*
    };
}

impl Particles {
    /// Applies `f` to every sample.
    pub fn unary(&self, f: UnaryFn) -> Particles {
        let mut out = self.samples.clone();
        match f {
            UnaryFn::Sin => fastmath::sin_in_place(&mut out),
            UnaryFn::Cos => fastmath::cos_in_place(&mut out),
            _ => out.iter_mut().for_each(|x| *x = f.apply(*x)),
        }
        Particles::from_vec_unchecked(out)
    }

    unary_methods! {
        sin => Sin, cos => Cos, tan => Tan, exp => Exp, ln => Log, sqrt => Sqrt,
        abs => Abs, asin => Asin, acos => Acos, atan => Atan, sinh => Sinh,
        cosh => Cosh, tanh => Tanh, floor => Floor, ceil => Ceil,
    }

    pub fn powi(&self, k: i32) -> Particles {
        self.map(|x| x.powi(k))
    }

    pub fn powf(&self, e: f64) -> Particles {
        self.map(|x| x.powf(e))
    }

    /// Elementwise `a op b` with scalar broadcasting.
    pub fn binary_op<'a, 'b>(
        op: BinaryOp,
        a: impl Into<Operand<'a>>,
        b: impl Into<Operand<'b>>,
    ) -> Result<Particles> {
        let (a, b) = (a.into(), b.into());
        let n = common_count(&[a, b])?;
        let out = match (a, b) {
            (Operand::Particles(x), Operand::Particles(y)) => x
                .samples
                .iter()
                .zip(&y.samples)
                .map(|(&u, &v)| op.apply(u, v))
                .collect(),
            _ => (0..n).map(|i| op.apply(a.at(i), b.at(i))).collect(),
        };
        Ok(Particles::from_vec_unchecked(out))
    }

    pub fn pow(&self, e: &Particles) -> Result<Particles> {
        Self::binary_op(BinaryOp::Pow, self, e)
    }

    pub fn atan2(&self, x: &Particles) -> Result<Particles> {
        Self::binary_op(BinaryOp::Atan2, self, x)
    }

    pub fn hypot(&self, other: &Particles) -> Result<Particles> {
        Self::binary_op(BinaryOp::Hypot, self, other)
    }

    /// Elementwise minimum (not the particle minimum, see [`Particles::sample_min`]).
    pub fn min(&self, other: &Particles) -> Result<Particles> {
        Self::binary_op(BinaryOp::Min, self, other)
    }

    /// Elementwise maximum (not the particle maximum, see [`Particles::sample_max`]).
    pub fn max(&self, other: &Particles) -> Result<Particles> {
        Self::binary_op(BinaryOp::Max, self, other)
    }
}

impl crate::number::Number for Particles {
    #[inline]
    fn sin(&self) -> Self {
        self.unary(UnaryFn::Sin)
    }
    #[inline]
    fn cos(&self) -> Self {
        self.unary(UnaryFn::Cos)
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }

    /// Single pass instead of a copy and two elementwise passes.
    fn add_scaled(&self, k: &Self, h: f64) -> Self {
        super::ops::assert_same_len(self, k);
        let out = self
            .samples
            .iter()
            .zip(&k.samples)
            .map(|(&u, &k)| k * h + u)
            .collect();
        Particles::from_vec_unchecked(out)
    }

    fn rk4_update(&self, mut a: Self, b: Self, c: Self, d: Self, w: f64) -> Self {
        for p in [&a, &b, &c, &d] {
            super::ops::assert_same_len(self, p);
        }
        let it = a
            .samples
            .iter_mut()
            .zip(&b.samples)
            .zip(&c.samples)
            .zip(&d.samples);
        for ((((a, &b), &c), &d), &u) in it.zip(&self.samples) {
            *a = (*a + b * 2.0 + c * 2.0 + d) * w + u;
        }
        a
    }
}

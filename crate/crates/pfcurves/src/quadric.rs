//! Quadratic spaces, projective points, membership tests and reproducible
//! rational point sampling on quadrics.
//!
//! The canonical quadric is the split (hyperbolic) form, where rational
//! points are plentiful and `e0` is a designated base point for
//! stereographic sampling.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::CurveMap;
use crate::matrix::MatQ;
use crate::poly::UniPoly;
use crate::rat::Rat;

/// Point of a projective space, stored as any nonzero coordinate vector.
/// Equality is up to a global nonzero scalar.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(Rat::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len()
    }

    /// Representative scaled so the first nonzero coordinate is 1.
    pub fn canonical(&self) -> Vec<Rat> {
        let lead = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        let inv = lead.recip();
        self.coords.iter().map(|c| c * &inv).collect()
    }

    /// Integer representative with coprime coordinates and positive leading
    /// coordinate. Keeps entry sizes small when points feed into further
    /// exact computations.
    pub fn primitive(&self) -> Vec<Rat> {
        let mut lcm = BigInt::one();
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> =
            self.coords.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut gcd = BigInt::zero();
        for s in &scaled {
            gcd = gcd.gcd(s);
        }
        let sign = scaled
            .iter()
            .find(|s| !s.is_zero())
            .map_or(BigInt::one(), |s| if s.is_negative() { -BigInt::one() } else { BigInt::one() });
        let div = gcd * sign;
        scaled
            .into_iter()
            .map(|s| Rat::from_big(num::rational::BigRational::from_integer(s / &div)))
            .collect()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.canonical() == other.canonical()
    }
}

impl Eq for ProjPoint {}

/// Controls for randomized rational sampling: coordinates are drawn from a
/// box of numerators/denominators, and genericity failures are resampled up
/// to a cap before giving up.
#[derive(Clone, Copy, Debug)]
pub struct SampleParams {
    pub bound: i64,
    pub max_attempts: u32,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { bound: 1_000_000, max_attempts: 32 }
    }
}

impl SampleParams {
    pub fn rat<R: Rng>(&self, rng: &mut R) -> Rat {
        let num = rng.gen_range(-self.bound..=self.bound);
        let den = rng.gen_range(1..=self.bound);
        Rat::new(num, den)
    }
}

/// A nondegenerate symmetric bilinear form `B` on a vector space `V`,
/// cutting out the quadric `{ q(v) = 0 }` in `P(V)`, where `q(v) = B(v,v)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadSpace {
    gram: MatQ,
    /// Rational point with `q = 0`, used as the centre of stereographic
    /// sampling when present.
    base: Option<Vec<Rat>>,
}

impl QuadSpace {
    pub fn from_gram(gram: MatQ) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let mut q = QuadSpace { gram, base: None };
        // e0 works as a base point whenever it happens to be isotropic.
        let e0: Vec<Rat> = std::iter::once(Rat::one())
            .chain(std::iter::repeat(Rat::zero()))
            .take(q.dim_ambient())
            .collect();
        if q.quad_value(&e0).map(|v| v.is_zero()).unwrap_or(false) {
            q.base = Some(e0);
        }
        Ok(q)
    }

    /// The split quadric `Q_n` in `P^{n+1}`: hyperbolic blocks
    /// `[[0,1],[1,0]]` on `V` of dimension `n+2`, plus a final `[1]` block
    /// when the dimension is odd.
    pub fn split(n: usize) -> Self {
        let dim = n + 2;
        let mut gram = MatQ::zero(dim, dim);
        let mut i = 0;
        while i + 1 < dim {
            gram[(i, i + 1)] = Rat::one();
            gram[(i + 1, i)] = Rat::one();
            i += 2;
        }
        if dim % 2 == 1 {
            gram[(dim - 1, dim - 1)] = Rat::one();
        }
        QuadSpace::from_gram(gram).expect("split form is symmetric and nondegenerate")
    }

    pub fn with_base_point(mut self, base: Vec<Rat>) -> Result<Self> {
        if !self.quad_value(&base)?.is_zero() {
            return Err(Error::PointNotOnQuadric { index: 0 });
        }
        self.base = Some(base);
        Ok(self)
    }

    /// Dimension of the underlying vector space `V` (the quadric lives in
    /// `P(V)`).
    pub fn dim_ambient(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &MatQ {
        &self.gram
    }

    pub fn base_point(&self) -> Option<&[Rat]> {
        self.base.as_deref()
    }

    /// `B(u, v) = u^t G v`, exactly.
    pub fn bilinear(&self, u: &[Rat], v: &[Rat]) -> Result<Rat> {
        let n = self.dim_ambient();
        if u.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: u.len() });
        }
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
        let mut acc = Rat::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.gram[(i, j)].is_zero() || v[j].is_zero() {
                    continue;
                }
                acc += &u[i] * &self.gram[(i, j)] * &v[j];
            }
        }
        Ok(acc)
    }

    /// `q(v) = B(v, v)`.
    pub fn quad_value(&self, v: &[Rat]) -> Result<Rat> {
        self.bilinear(v, v)
    }

    /// Whether the projective point lies on the quadric; invariant under
    /// rescaling the representative.
    pub fn on_quadric(&self, p: &ProjPoint) -> bool {
        self.quad_value(p.coords()).map(|v| v.is_zero()).unwrap_or(false)
    }

    /// Second intersection of the line through `base` in direction `w`
    /// with the quadric: `s*base + w` where `s = -q(w) / (2 B(base, w))`.
    /// `None` when the direction is tangent (`B(base, w) = 0`).
    pub(crate) fn second_intersection(&self, base: &[Rat], w: &[Rat]) -> Option<Vec<Rat>> {
        let b = self.bilinear(base, w).ok()?;
        if b.is_zero() {
            return None;
        }
        let qw = self.quad_value(w).ok()?;
        let s = -qw / (Rat::from_int(2) * b);
        Some(
            base.iter()
                .zip(w)
                .map(|(b_i, w_i)| &s * b_i + w_i)
                .collect(),
        )
    }

    /// Random rational point on the quadric, via stereographic projection
    /// from the base point applied to a random direction. Deterministic
    /// given the RNG state; tangent directions are resampled up to the
    /// attempt cap.
    pub fn sample_point<R: Rng>(&self, rng: &mut R, params: &SampleParams) -> Result<ProjPoint> {
        let base = self.base.as_ref().ok_or(Error::NoBasePoint)?;
        for _ in 0..params.max_attempts {
            let w: Vec<Rat> = (0..self.dim_ambient()).map(|_| params.rat(rng)).collect();
            if let Some(p) = self.second_intersection(base, &w) {
                if p.iter().all(Rat::is_zero) {
                    continue;
                }
                let point = ProjPoint::new(p)?;
                debug_assert!(self.on_quadric(&point));
                return Ok(point);
            }
        }
        Err(Error::GenericityExhausted { attempts: params.max_attempts })
    }
}

/// Evaluate a component vector of polynomials at `t`, as a projective
/// point. Errors when every component vanishes (a base point of the
/// parametrization).
pub fn eval_components(components: &[UniPoly], t: &Rat) -> Result<ProjPoint> {
    ProjPoint::new(components.iter().map(|p| p.eval(t)).collect())
}

/// The point `[P^0(t) : ... : P^n(t)]` of a parametrized curve.
pub fn curve_point(curve: &CurveMap, t: &Rat) -> Result<ProjPoint> {
    eval_components(curve.components(), t)
}

//! Closed-form invariants of moduli of rational curves: expected
//! dimensions, covering-degree bounds, del Pezzo lattice arithmetic, cone
//! membership, reduction-to-the-plane bookkeeping and bisecant counts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Expected dimension of the space of m-pointed rational curves of class
/// `beta`: `dim X - (K_X . beta) + m - 3`.
pub fn expected_dim(dim_x: i64, minus_k_dot_beta: i64, m: i64) -> i64 {
    dim_x + minus_k_dot_beta + m - 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    ProjectiveSpace,
    Quadric,
}

impl FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pn" | "projective" | "projective-space" => Ok(SpaceKind::ProjectiveSpace),
            "quadric" | "qn" => Ok(SpaceKind::Quadric),
            other => Err(Error::Parse(format!("unknown space kind {other:?}"))),
        }
    }
}

/// Lower and upper bounds for the minimal rational m-connecting degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: u64,
    pub upper: u64,
}

/// Bounds on the least degree `d` for which degree-d rational curves pass
/// through `m` general points (dominant evaluation).
///
/// Projective space of dimension n:
/// `m - 1 - floor(2(m-2)/(n+1)) <= d <= m - 1 - floor((m-1)/(n+1))`.
/// Quadric of dimension n: exactly 2 for `m = 2`, and
/// `m - 1 - floor((m-3)/n) <= d <= m - 1` for `m >= 3`.
pub fn covering_bounds(kind: SpaceKind, n: u64, m: u64) -> Result<BoundPair> {
    if m < 2 {
        return Err(Error::Parse("covering bounds need m >= 2".into()));
    }
    if n < 2 {
        return Err(Error::Parse("covering bounds need n >= 2".into()));
    }
    let pair = match kind {
        SpaceKind::ProjectiveSpace => BoundPair {
            lower: m - 1 - 2 * (m - 2) / (n + 1),
            upper: m - 1 - (m - 1) / (n + 1),
        },
        SpaceKind::Quadric => {
            if m == 2 {
                BoundPair { lower: 2, upper: 2 }
            } else {
                BoundPair { lower: m - 1 - (m - 3) / n, upper: m - 1 }
            }
        }
    };
    debug_assert!(pair.lower <= pair.upper);
    Ok(pair)
}

/// Number of bisecant lines to a degree-d genus-g curve on the quintic
/// threefold: `C(d-2, 2) - 3g`.
pub fn bisecant_count(d: u64, g: u64) -> Result<i64> {
    if d < 2 {
        return Err(Error::Parse("bisecant count needs d >= 2".into()));
    }
    let k = d - 2;
    let c = if k < 2 { 0 } else { (k * (k - 1) / 2) as i64 };
    Ok(c - 3 * g as i64)
}

/// A divisor class `(a; b_1, ..., b_{9-delta})` on a del Pezzo surface of
/// degree `delta` marked as a blow-up of the plane: `a` is the coefficient
/// of the pulled-back line class and `b_i` the coefficients of the
/// exceptional classes. The intersection pairing is
/// `a a' - sum_i b_i b_i'`; the canonical class is `(-3; -1, ..., -1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DPClass {
    pub delta: usize,
    pub a: Rat,
    pub b: Vec<Rat>,
}

/// Position of a class relative to the nef and ample cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConePosition {
    NotNef,
    NefNotAmple,
    Ample,
}

impl DPClass {
    pub fn new(delta: usize, a: Rat, b: Vec<Rat>) -> Result<Self> {
        if !(1..=8).contains(&delta) {
            return Err(Error::UnsupportedDelta { delta });
        }
        if b.len() != 9 - delta {
            return Err(Error::LengthMismatch { expected: 9 - delta, got: b.len() });
        }
        Ok(DPClass { delta, a, b })
    }

    /// The anticanonical class `(3; 1, ..., 1)`.
    pub fn anticanonical(delta: usize) -> Result<Self> {
        DPClass::new(delta, Rat::from_int(3), vec![Rat::one(); 9 - delta])
    }

    pub fn canonical(delta: usize) -> Result<Self> {
        DPClass::new(delta, Rat::from_int(-3), vec![Rat::from_int(-1); 9 - delta])
    }

    pub fn b_sum(&self) -> Rat {
        self.b.iter().cloned().sum()
    }

    /// Intersection pairing `a a' - sum b_i b_i'`.
    pub fn pair(&self, other: &DPClass) -> Result<Rat> {
        if self.delta != other.delta {
            return Err(Error::DeltaMismatch);
        }
        let cross: Rat = self.b.iter().zip(&other.b).map(|(x, y)| x * y).sum();
        Ok(&self.a * &other.a - cross)
    }

    pub fn self_intersection(&self) -> Rat {
        self.pair(self).expect("same delta")
    }

    /// Arithmetic genus from adjunction: `(C^2 + C.K)/2 + 1`.
    pub fn genus(&self) -> Result<Rat> {
        let k = DPClass::canonical(self.delta)?;
        let val = (self.self_intersection() + self.pair(&k)?) / Rat::from_int(2) + Rat::one();
        Ok(val)
    }

    /// Whether the class is a root of the canonical-orthogonal lattice:
    /// self-intersection -2 and orthogonal to the canonical class.
    pub fn is_root(&self) -> bool {
        let k = DPClass::canonical(self.delta).expect("valid delta");
        self.self_intersection() == Rat::from_int(-2)
            && self.pair(&k).expect("same delta").is_zero()
    }

    /// Nef/ample cone position, by the inequality lists valid for degrees
    /// 5 through 8: for degree >= 7, `a >= b >= 0` with `b` the sum of the
    /// `b_i`; for degree 5 and 6, `b_i >= 0` and `a >= b_i + b_j` for all
    /// pairs. Ample means all inequalities strict.
    pub fn cone_position(&self) -> Result<ConePosition> {
        if !(5..=8).contains(&self.delta) {
            return Err(Error::UnsupportedDelta { delta: self.delta });
        }
        let zero = Rat::zero();
        let (nef, ample): (bool, bool) = if self.delta >= 7 {
            let b = self.b_sum();
            (self.a >= b && b >= zero, self.a > b && b > zero)
        } else {
            let mut nef = self.b.iter().all(|bi| *bi >= zero);
            let mut ample = self.b.iter().all(|bi| *bi > zero);
            for i in 0..self.b.len() {
                for j in 0..i {
                    let s = &self.b[i] + &self.b[j];
                    nef &= self.a >= s;
                    ample &= self.a > s;
                }
            }
            (nef, ample)
        };
        Ok(if ample {
            ConePosition::Ample
        } else if nef {
            ConePosition::NefNotAmple
        } else {
            ConePosition::NotNef
        })
    }

    /// The numerical hypothesis `3a >= 2 sum(b_i)` under which the spaces
    /// of rational curves in every multiple of the class are nonempty and
    /// unirational.
    pub fn unirationality_condition(&self) -> bool {
        Rat::from_int(3) * self.a.clone() >= Rat::from_int(2) * self.b_sum()
    }

    /// Bookkeeping of the reduction to plane curves: degree-d curves in
    /// the class with m marked points correspond to plane curves of degree
    /// `d*a` through each blow-up centre `p_i` with multiplicity `d*b_i`,
    /// for a total of `m + d*sum(b_i)` marks.
    pub fn reduce_to_p2(&self, d: u64, m: u64) -> PlaneReduction {
        let dr = Rat::from_int(d as i64);
        PlaneReduction {
            p2_degree: &dr * &self.a,
            total_marks: Rat::from_int(m as i64) + &dr * &self.b_sum(),
            base_points: self
                .b
                .iter()
                .enumerate()
                .map(|(i, bi)| (i + 1, &dr * bi))
                .collect(),
        }
    }
}

impl fmt::Display for DPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.delta, self.a)?;
        for (i, bi) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{bi}")?;
        }
        Ok(())
    }
}

impl FromStr for DPClass {
    type Err = Error;

    /// Parses `delta:a:b1,b2,...`, e.g. `5:3:1,1,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected delta:a:b1,b2,... got {s:?}"
            )));
        }
        let delta: usize = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad delta {:?}", parts[0])))?;
        let a: Rat = parts[1].parse()?;
        let b = parts[2]
            .split(',')
            .map(|t| t.parse())
            .collect::<Result<Vec<Rat>>>()?;
        DPClass::new(delta, a, b)
    }
}

/// Multiplicity record of the reduction to plane curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneReduction {
    pub p2_degree: Rat,
    pub total_marks: Rat,
    /// `(centre index, multiplicity)` pairs, 1-based.
    pub base_points: Vec<(usize, Rat)>,
}

/// Number of marked points used at degree d in the high-degree induction
/// on del Pezzo surfaces: `floor((2 delta - 9) d / 2) + 1`, defined for
/// degree delta >= 5.
pub fn dp_m_d(delta: u64, d: u64) -> Result<u64> {
    if delta < 5 {
        return Err(Error::UnsupportedDelta { delta: delta as usize });
    }
    if d < 1 {
        return Err(Error::Parse("m_d needs d >= 1".into()));
    }
    Ok((2 * delta - 9) * d / 2 + 1)
}

/// The twenty roots of the degree-5 lattice in the `(h; e1..e4)` basis:
/// the differences of exceptional classes and the classes
/// `+/-(h - e_i - e_j - e_k)`.
pub fn dp5_roots() -> Vec<DPClass> {
    let mut roots = Vec::with_capacity(20);
    // e_i - e_j has blow-up coefficients b_i = -1, b_j = +1
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let mut b = vec![Rat::zero(); 4];
            b[i] = Rat::from_int(-1);
            b[j] = Rat::one();
            roots.push(DPClass::new(5, Rat::zero(), b).unwrap());
        }
    }
    // +/- (h - e_i - e_j - e_k)
    for omit in 0..4 {
        for sign in [1i64, -1] {
            let b = (0..4)
                .map(|i| if i == omit { Rat::zero() } else { Rat::from_int(sign) })
                .collect();
            roots.push(DPClass::new(5, Rat::from_int(sign), b).unwrap());
        }
    }
    roots
}

/// The ten line classes on the degree-5 surface: the four exceptional
/// classes and the six classes `h - e_i - e_j`.
pub fn dp5_lines() -> Vec<DPClass> {
    let mut lines = Vec::with_capacity(10);
    for i in 0..4 {
        let mut b = vec![Rat::zero(); 4];
        b[i] = Rat::from_int(-1);
        lines.push(DPClass::new(5, Rat::zero(), b).unwrap());
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let mut b = vec![Rat::zero(); 4];
            b[i] = Rat::one();
            b[j] = Rat::one();
            lines.push(DPClass::new(5, Rat::one(), b).unwrap());
        }
    }
    lines
}

/// Intersection numbers of the quintic curve class `C = alpha - K`
/// attached to a root `alpha` of the degree-5 lattice with the ten lines,
/// sorted. For every root the multiset is `{0,0,0,1,1,1,1,2,2,2}`: the
/// three lines meeting `C` twice are its bisecants.
pub fn dp5_quintic_table(root: &DPClass) -> Result<Vec<i64>> {
    if root.delta != 5 {
        return Err(Error::UnsupportedDelta { delta: root.delta });
    }
    if !root.is_root() {
        return Err(Error::NotARoot);
    }
    let minus_k = DPClass::anticanonical(5)?;
    let c = DPClass::new(
        5,
        &root.a + &minus_k.a,
        root.b.iter().zip(&minus_k.b).map(|(x, y)| x + y).collect(),
    )?;
    let mut values = Vec::with_capacity(10);
    for line in dp5_lines() {
        let v = c.pair(&line)?;
        if !v.is_integer() {
            return Err(Error::Parse(format!("non-integral pairing {v}")));
        }
        let num = v.numer();
        values.push(i64::try_from(num.clone()).map_err(|_| Error::Parse("overflow".into()))?);
    }
    values.sort_unstable();
    Ok(values)
}

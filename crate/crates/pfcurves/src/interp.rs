//! Interpolation of degree-d rational curves through marked points.
//!
//! A configuration fixes parameters `z_0, ..., z_d` on the line and target
//! points `x_i = [v_i]`. Every curve through the configuration is
//! `P(z) = sum_i lambda_i L_i(z) v_i` with `L_i` the Lagrange basis, so the
//! interpolation problems below are linear algebra on the coefficient
//! vector `lambda`.
//!
//! On a quadric the condition that the curve stays on the hypersurface is
//! governed by the rescaled skew-symmetric matrix `A` with entries
//! `B(v_i, v_j) / (z_j - z_i)`: writing `mu_i = lambda_i / zeta_i` with
//! `zeta_i = prod_{k != i} (z_i - z_k)`, the admissible curves are exactly
//! the kernel vectors of `A` with no vanishing coordinate. Kernels of
//! near-maximal-rank skew matrices are in turn spanned by signed Pfaffian
//! minors, which is what makes the classification effective.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{MatQ, SkewMatQ};
use crate::poly::UniPoly;
use crate::quadric::QuadSpace;
use crate::rat::Rat;

/// Marked parameter values on the line together with target coordinate
/// vectors. Parameters are affine charts `t_i = [z_i : 1]` and must be
/// pairwise distinct; configurations containing the point at infinity are
/// rejected at parse time, the caller re-coordinates first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkedConfig {
    z: Vec<Rat>,
    points: Vec<Vec<Rat>>,
}

impl MarkedConfig {
    pub fn new(z: Vec<Rat>, points: Vec<Vec<Rat>>) -> Result<Self> {
        if z.len() != points.len() {
            return Err(Error::LengthMismatch { expected: z.len(), got: points.len() });
        }
        if !pairwise_distinct(&z) {
            return Err(Error::RepeatedParameter);
        }
        let dim = points.first().map_or(0, Vec::len);
        for v in &points {
            if v.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, got: v.len() });
            }
            if v.iter().all(Rat::is_zero) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(MarkedConfig { z, points })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// Degree of the interpolation problem: one less than the number of
    /// marked points.
    pub fn degree(&self) -> usize {
        self.len().saturating_sub(1)
    }

    pub fn params(&self) -> &[Rat] {
        &self.z
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// Node products `zeta_i = prod_{k != i} (z_i - z_k)`; all nonzero
    /// because the parameters are distinct.
    pub fn zetas(&self) -> Vec<Rat> {
        (0..self.len())
            .map(|i| {
                self.z
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, zk)| &self.z[i] - zk)
                    .product()
            })
            .collect()
    }
}

fn pairwise_distinct(z: &[Rat]) -> bool {
    z.iter().enumerate().all(|(i, zi)| z[..i].iter().all(|zk| zk != zi))
}

/// Lagrange basis polynomial `L_i(z) = prod_{j != i} (z - z_j)/(z_i - z_j)`,
/// of degree `|z| - 1`, with `L_i(z_j) = delta_ij`.
pub fn lagrange_basis(z: &[Rat], i: usize) -> Result<UniPoly> {
    if i >= z.len() {
        return Err(Error::IndexOutOfRange { index: i, size: z.len() });
    }
    if !pairwise_distinct(z) {
        return Err(Error::RepeatedParameter);
    }
    let mut p = UniPoly::one();
    for (j, zj) in z.iter().enumerate() {
        if j == i {
            continue;
        }
        let denom = (&z[i] - zj).recip();
        p = p.mul(&UniPoly::linear_from_root(zj).scale(&denom));
    }
    Ok(p)
}

/// A parametrized rational curve `P(z) = sum_i lambda_i L_i(z) v_i`. When
/// every `lambda_i` is nonzero the curve passes through `x_i` at `z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveMap {
    degree: usize,
    lambda: Vec<Rat>,
    config: MarkedConfig,
    components: Vec<UniPoly>,
}

impl CurveMap {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn lambda(&self) -> &[Rat] {
        &self.lambda
    }

    pub fn config(&self) -> &MarkedConfig {
        &self.config
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }
}

impl Serialize for CurveMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CurveMap", 5)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("z", self.config.params())?;
        s.serialize_field("points", self.config.points())?;
        s.serialize_field("lambda", &self.lambda)?;
        s.serialize_field("components", &self.components)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for CurveMap {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            z: Vec<Rat>,
            points: Vec<Vec<Rat>>,
            lambda: Vec<Rat>,
        }
        let w = Wire::deserialize(deserializer)?;
        let config = MarkedConfig::new(w.z, w.points).map_err(serde::de::Error::custom)?;
        interpolate_pn(&config, &w.lambda).map_err(serde::de::Error::custom)
    }
}

/// The curve `P(z) = sum_i lambda_i L_i(z) v_i` through the configuration.
pub fn interpolate_pn(config: &MarkedConfig, lambda: &[Rat]) -> Result<CurveMap> {
    if lambda.len() != config.len() {
        return Err(Error::LengthMismatch { expected: config.len(), got: lambda.len() });
    }
    let dim = config.points().first().map_or(0, Vec::len);
    let mut components = vec![UniPoly::zero(); dim];
    for (i, v) in config.points().iter().enumerate() {
        if lambda[i].is_zero() {
            continue;
        }
        let li = lagrange_basis(config.params(), i)?.scale(&lambda[i]);
        for (j, comp) in components.iter_mut().enumerate() {
            if !v[j].is_zero() {
                *comp = comp.add(&li.scale(&v[j]));
            }
        }
    }
    Ok(CurveMap { degree: config.degree(), lambda: lambda.to_vec(), config: config.clone(), components })
}

/// The rescaled skew-symmetric matrix of a marked configuration on a
/// quadric: entries `B(v_i, v_j) / (z_j - z_i)` off the diagonal.
#[derive(Clone, Debug)]
pub struct RescaledSkew {
    matrix: SkewMatQ,
    source: MarkedConfig,
}

impl RescaledSkew {
    pub fn matrix(&self) -> &SkewMatQ {
        &self.matrix
    }

    pub fn source(&self) -> &MarkedConfig {
        &self.source
    }
}

pub fn build_rescaled_skew(quad: &QuadSpace, config: &MarkedConfig) -> Result<RescaledSkew> {
    let m = config.len();
    let z = config.params();
    let v = config.points();
    let mut mat = MatQ::zero(m, m);
    for i in 0..m {
        if v[i].len() != quad.dim_ambient() {
            return Err(Error::LengthMismatch { expected: quad.dim_ambient(), got: v[i].len() });
        }
        for j in i + 1..m {
            let b = quad.bilinear(&v[i], &v[j])?;
            let entry = b / (&z[j] - &z[i]);
            mat[(j, i)] = -&entry;
            mat[(i, j)] = entry;
        }
    }
    Ok(RescaledSkew { matrix: SkewMatQ::new(mat)?, source: config.clone() })
}

/// Kernel of a near-maximal-rank skew matrix from its Pfaffian minors.
///
/// Odd size with corank 1: the single vector `((-1)^{i+1} pf(A(i)))_i`.
/// Even size with corank 2: a basis of two among the spanning vectors
/// `N_i = ((-1)^{i+j} pf(A(i,j)))_j`. Any other corank is rejected.
pub fn kernel_via_pfaffians(a: &SkewMatQ) -> Result<Vec<Vec<Rat>>> {
    let m = a.size();
    let rank = a.mat().rank();
    let corank = m - rank;
    let expected = if m % 2 == 1 { 1 } else { 2 };
    if corank != expected {
        return Err(Error::CorankPrecondition { size: m, corank });
    }
    if m % 2 == 1 {
        let v: Vec<Rat> = (0..m)
            .map(|i| {
                let pf = a.pfaffian_minor(&[i])?;
                Ok(if i % 2 == 0 { -pf } else { pf })
            })
            .collect::<Result<_>>()?;
        debug_assert!(a.mat().mul_vec(&v).unwrap().iter().all(Rat::is_zero));
        return Ok(vec![v]);
    }
    // even size: assemble the spanning vectors N_i and keep two independent.
    // The sign is (-1)^{i+j} with removal order taken into account: the
    // minor is antisymmetric in the removed pair, so crossing j = i flips
    // the sign once more.
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for i in 0..m {
        let mut n_i = vec![Rat::zero(); m];
        for (j, slot) in n_i.iter_mut().enumerate() {
            if j == i {
                continue;
            }
            let pf = a.pfaffian_minor(&[i, j])?;
            let parity = (i + j + usize::from(j < i)) % 2;
            *slot = if parity == 0 { pf } else { -pf };
        }
        if n_i.iter().all(Rat::is_zero) {
            continue;
        }
        debug_assert!(a.mat().mul_vec(&n_i).unwrap().iter().all(Rat::is_zero));
        basis.push(n_i);
        if basis.len() == 2 {
            let stacked = MatQ::from_rows(basis.clone())?;
            if stacked.rank() == 2 {
                break;
            }
            basis.pop();
        }
    }
    debug_assert_eq!(basis.len(), 2);
    Ok(basis)
}

/// How an interpolation fibre sits inside the coefficient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FibreKind {
    /// No admissible coefficient vector: the kernel misses the locus where
    /// every coordinate is nonzero.
    Empty,
    /// A single curve (one-dimensional kernel with no vanishing entry).
    UniqueCurve,
    /// A one-parameter family (two-dimensional kernel meeting the open
    /// locus).
    Pencil,
    /// Solution space of projective dimension at least two, or the whole
    /// coefficient space when the constraint matrix vanishes identically.
    Family,
}

impl std::fmt::Display for FibreKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FibreKind::Empty => "Empty",
            FibreKind::UniqueCurve => "UniqueCurve",
            FibreKind::Pencil => "Pencil",
            FibreKind::Family => "Family",
        };
        write!(f, "{s}")
    }
}

/// Classification of the solution set of an interpolation problem, with
/// materialized representative curves and the vanishing Pfaffian minors
/// that witness any departure from the generic pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct FibreDescription {
    pub kind: FibreKind,
    /// Projective dimension of the solution set, when nonempty.
    pub dim: Option<usize>,
    pub kernel_dim: usize,
    /// Whether the kernel meets the locus where all coordinates are
    /// nonzero; equivalently, no coordinate functional vanishes on it.
    pub nonvanishing_ok: bool,
    pub representatives: Vec<CurveMap>,
    /// Index sets `S` with `pf(A(S)) = 0` where the generic configuration
    /// has a nonzero minor; the empty set stands for `pf(A)` itself.
    pub vanishing_minors: Vec<Vec<usize>>,
    /// Kernel basis members that violate the open all-nonzero condition.
    pub excluded_basis_members: Vec<usize>,
}

impl FibreDescription {
    pub fn lambda_representatives(&self) -> Vec<Vec<Rat>> {
        self.representatives.iter().map(|c| c.lambda().to_vec()).collect()
    }
}

impl Serialize for FibreDescription {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FibreDescription", 7)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("kernel_dim", &self.kernel_dim)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("nonvanishing_ok", &self.nonvanishing_ok)?;
        s.serialize_field("lambda_representatives", &self.lambda_representatives())?;
        s.serialize_field("vanishing_minors", &self.vanishing_minors)?;
        s.serialize_field("excluded_basis_members", &self.excluded_basis_members)?;
        s.end()
    }
}

/// Kernel-side classification shared by the projective and quadric fibres.
///
/// Returns the kind, the admissible representative vectors, and the basis
/// members excluded by a vanishing coordinate. The representative list
/// keeps each admissible basis vector; when some basis member is excluded
/// but the kernel still meets the open locus, one interior combination
/// `sum_j t^j b_j` with small integer `t` is added, deterministically.
fn classify_kernel(basis: &[Vec<Rat>], full_dim: usize) -> (FibreKind, Option<usize>, bool, Vec<Vec<Rat>>, Vec<usize>) {
    let kernel_dim = basis.len();
    if kernel_dim == 0 {
        return (FibreKind::Empty, None, false, Vec::new(), Vec::new());
    }
    let coords = basis[0].len();
    let nonvanishing_ok =
        (0..coords).all(|c| basis.iter().any(|b| !b[c].is_zero()));
    let excluded: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().any(Rat::is_zero))
        .map(|(i, _)| i)
        .collect();
    if !nonvanishing_ok {
        return (FibreKind::Empty, None, false, Vec::new(), excluded);
    }
    let mut reps: Vec<Vec<Rat>> = basis
        .iter()
        .filter(|b| b.iter().all(|x| !x.is_zero()))
        .cloned()
        .collect();
    if !excluded.is_empty() {
        // each coordinate of sum_j t^j b_j is a nonzero polynomial in t of
        // degree < kernel_dim, so small t values quickly avoid all roots
        'search: for t in 1..=(coords * kernel_dim + 1) as i64 {
            let tr = Rat::from_int(t);
            let mut combo = vec![Rat::zero(); coords];
            let mut power = Rat::one();
            for b in basis {
                for (c, slot) in combo.iter_mut().enumerate() {
                    *slot += &power * &b[c];
                }
                power = power * &tr;
            }
            if combo.iter().all(|x| !x.is_zero()) {
                reps.push(combo);
                break 'search;
            }
        }
    }
    let kind = if kernel_dim == full_dim {
        FibreKind::Family
    } else {
        match kernel_dim {
            1 => FibreKind::UniqueCurve,
            2 => FibreKind::Pencil,
            _ => FibreKind::Family,
        }
    };
    (kind, Some(kernel_dim - 1), true, reps, excluded)
}

/// Fibre of the evaluation map for curves on a quadric through a marked
/// configuration lying on it.
///
/// Builds the rescaled skew matrix `A`, computes its kernel exactly
/// (cross-checked against the Pfaffian-minor formulas at corank 1 and 2),
/// rescales kernel vectors by the node products, and classifies the
/// solution set. Every returned representative curve lies on the quadric
/// identically.
pub fn solve_quadric_fibre(quad: &QuadSpace, config: &MarkedConfig) -> Result<FibreDescription> {
    for (i, v) in config.points().iter().enumerate() {
        if !quad.quad_value(v)?.is_zero() {
            return Err(Error::PointNotOnQuadric { index: i });
        }
    }
    let rs = build_rescaled_skew(quad, config)?;
    let a = rs.matrix();
    let m = a.size();
    let kernel = a.mat().kernel_basis();
    let corank = kernel.len();

    if (m % 2 == 1 && corank == 1) || (m % 2 == 0 && corank == 2) {
        let pf_kernel = kernel_via_pfaffians(a)?;
        let mut all = kernel.clone();
        all.extend(pf_kernel.iter().cloned());
        let span = MatQ::from_rows(all)?;
        assert_eq!(
            span.rank(),
            corank,
            "Pfaffian-minor kernel disagrees with the elimination kernel"
        );
    }

    let mut vanishing_minors = Vec::new();
    if m % 2 == 0 {
        if a.pfaffian().is_zero() {
            vanishing_minors.push(Vec::new());
            for i in 0..m {
                for j in i + 1..m {
                    if a.pfaffian_minor(&[i, j])?.is_zero() {
                        vanishing_minors.push(vec![i, j]);
                    }
                }
            }
        }
    } else {
        for i in 0..m {
            if a.pfaffian_minor(&[i])?.is_zero() {
                vanishing_minors.push(vec![i]);
            }
        }
    }

    let (kind, dim, nonvanishing_ok, mus, excluded) = classify_kernel(&kernel, m);
    let zetas = config.zetas();
    let mut representatives = Vec::with_capacity(mus.len());
    for mu in mus {
        let lambda: Vec<Rat> = zetas.iter().zip(&mu).map(|(z, m)| z * m).collect();
        let curve = interpolate_pn(config, &lambda)?;
        assert!(
            verify_on_quadric(quad, &curve),
            "solver produced a curve leaving the quadric"
        );
        representatives.push(curve);
    }

    Ok(FibreDescription {
        kind,
        dim,
        kernel_dim: corank,
        nonvanishing_ok,
        representatives,
        vanishing_minors,
        excluded_basis_members: excluded,
    })
}

/// Whether `q(P(z))` vanishes identically, i.e. the parametrized curve is
/// contained in the quadric. Expands the composition as an exact
/// polynomial of degree at most `2d`.
pub fn verify_on_quadric(quad: &QuadSpace, curve: &CurveMap) -> bool {
    verify_components_on_quadric(quad, curve.components())
}

pub fn verify_components_on_quadric(quad: &QuadSpace, components: &[UniPoly]) -> bool {
    if components.len() != quad.dim_ambient() {
        return false;
    }
    let mut q = UniPoly::zero();
    let g = quad.gram();
    for (a, pa) in components.iter().enumerate() {
        for (b, pb) in components.iter().enumerate() {
            if g[(a, b)].is_zero() {
                continue;
            }
            q = q.add(&pa.mul(pb).scale(&g[(a, b)]));
        }
    }
    q.is_zero()
}

/// Result of a projective interpolation fibre, together with the two
/// hypotheses that guarantee nonemptiness for arbitrary (not necessarily
/// general) targets: the degree bound `d >= n m'` and the wedge-rank
/// condition on the matrices `(v_i ^ v_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct PnFibre {
    pub description: FibreDescription,
    pub degree_condition_ok: bool,
    pub wedge_condition_ok: bool,
}

/// Wedge coordinates of `u ^ w`, listed over index pairs `a < b`.
fn wedge(u: &[Rat], w: &[Rat]) -> Vec<Rat> {
    let n = u.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(&u[a] * &w[b] - &u[b] * &w[a]);
        }
    }
    out
}

/// Curves of degree `d` through `d + 1` base points that also pass through
/// `m'` extra points: each extra point imposes the rank-one conditions
/// `P(z_j) ^ v_j = 0`, linear in `lambda`. Classifies the solution space
/// intersected with the open locus `lambda_i != 0`.
pub fn pn_fibre(base: &MarkedConfig, extra: &MarkedConfig, n: usize) -> Result<PnFibre> {
    let mut all_params = base.params().to_vec();
    all_params.extend(extra.params().iter().cloned());
    if !pairwise_distinct(&all_params) {
        return Err(Error::RepeatedParameter);
    }
    for v in base.points().iter().chain(extra.points()) {
        if v.len() != n + 1 {
            return Err(Error::LengthMismatch { expected: n + 1, got: v.len() });
        }
    }
    let d = base.degree();
    let m_extra = extra.len();
    let degree_condition_ok = d >= n * m_extra;

    let mut wedge_condition_ok = true;
    for vj in extra.points() {
        let cols: Vec<Vec<Rat>> = base.points().iter().map(|vi| wedge(vi, vj)).collect();
        let full = MatQ::from_rows(cols.clone())?.transpose();
        let full_rank = full.rank();
        for omit in 0..cols.len() {
            let reduced: Vec<Vec<Rat>> = cols
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .map(|(_, c)| c.clone())
                .collect();
            if MatQ::from_rows(reduced)?.transpose().rank() != full_rank {
                wedge_condition_ok = false;
                break;
            }
        }
        if !wedge_condition_ok {
            break;
        }
    }

    // linear system on lambda: for each extra point j, the wedge rows of
    // sum_i lambda_i L_i(z_j) v_i ^ v_j
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let lagrange: Vec<UniPoly> = (0..base.len())
        .map(|i| lagrange_basis(base.params(), i))
        .collect::<Result<_>>()?;
    for (j, vj) in extra.points().iter().enumerate() {
        let zj = &extra.params()[j];
        let wedges: Vec<Vec<Rat>> = base
            .points()
            .iter()
            .enumerate()
            .map(|(i, vi)| {
                let li = lagrange[i].eval(zj);
                wedge(vi, vj).into_iter().map(|w| &li * &w).collect()
            })
            .collect();
        let n_rows = wedges[0].len();
        for r in 0..n_rows {
            rows.push(wedges.iter().map(|w| w[r].clone()).collect());
        }
    }
    let kernel = if rows.is_empty() {
        MatQ::zero(1, base.len()).kernel_basis()
    } else {
        MatQ::from_rows(rows)?.kernel_basis()
    };

    let (kind, dim, nonvanishing_ok, lambdas, excluded) = classify_kernel(&kernel, base.len());
    let representatives = lambdas
        .iter()
        .map(|l| interpolate_pn(base, l))
        .collect::<Result<Vec<_>>>()?;

    Ok(PnFibre {
        description: FibreDescription {
            kind,
            dim,
            kernel_dim: kernel.len(),
            nonvanishing_ok,
            representatives,
            vanishing_minors: Vec::new(),
            excluded_basis_members: excluded,
        },
        degree_condition_ok,
        wedge_condition_ok,
    })
}

/// Closed form for the Pfaffian of the rescaled skew matrix of the
/// alternating two-point configuration:
/// `prod_{i<j, i+j even} (z_j - z_i) / prod_{i<j, i+j odd} (z_j - z_i)`.
pub fn cauchy_pfaffian(z: &[Rat]) -> Result<Rat> {
    if z.len() % 2 == 1 || z.is_empty() {
        return Err(Error::OddLength);
    }
    if !pairwise_distinct(z) {
        return Err(Error::RepeatedParameter);
    }
    let mut num = Rat::one();
    let mut den = Rat::one();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let diff = &z[j] - &z[i];
            if (i + j) % 2 == 0 {
                num = num * diff;
            } else {
                den = den * diff;
            }
        }
    }
    Ok(num / den)
}

/// The alternating configuration of two isotropic vectors with
/// `B(u, v) = 1`: `v_i = u` for even `i`, `v` for odd `i`. Its rescaled
/// skew matrix has maximal rank for any distinct parameters, and its
/// Pfaffian is [`cauchy_pfaffian`].
pub fn alternating_config(u: &[Rat], v: &[Rat], z: Vec<Rat>) -> Result<MarkedConfig> {
    let points = (0..z.len())
        .map(|i| if i % 2 == 0 { u.to_vec() } else { v.to_vec() })
        .collect();
    MarkedConfig::new(z, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::{curve_point, ProjPoint};

    fn e(i: usize, n: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn zs(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| Rat::from_int(v)).collect()
    }

    #[test]
    fn lagrange_two_nodes() {
        // z = (0,1), i = 0: L_0 = 1 - z
        let l0 = lagrange_basis(&zs(&[0, 1]), 0).unwrap();
        assert_eq!(l0.coeffs(), &[q(1, 1), q(-1, 1)]);
    }

    #[test]
    fn lagrange_three_nodes() {
        // z = (0,1,2), i = 1: L_1 = z(2 - z)
        let l1 = lagrange_basis(&zs(&[0, 1, 2]), 1).unwrap();
        assert_eq!(l1.coeffs(), &[q(0, 1), q(2, 1), q(-1, 1)]);
        assert_eq!(l1.eval(&q(0, 1)), q(0, 1));
        assert_eq!(l1.eval(&q(1, 1)), q(1, 1));
        assert_eq!(l1.eval(&q(2, 1)), q(0, 1));
    }

    #[test]
    fn lagrange_partition_of_unity() {
        let z = zs(&[0, 1, 2, 3]);
        let mut sum = UniPoly::zero();
        for i in 0..4 {
            sum = sum.add(&lagrange_basis(&z, i).unwrap());
        }
        assert_eq!(sum, UniPoly::one());
    }

    #[test]
    fn lagrange_rejects_repeated_nodes() {
        assert_eq!(
            lagrange_basis(&zs(&[0, 1, 0]), 0),
            Err(Error::RepeatedParameter)
        );
    }

    #[test]
    fn interpolate_standard_conic() {
        let config = MarkedConfig::new(zs(&[0, 1, 2]), vec![e(0, 3), e(1, 3), e(2, 3)]).unwrap();
        let lambda = vec![Rat::one(), Rat::one(), Rat::one()];
        let curve = interpolate_pn(&config, &lambda).unwrap();
        for (i, z) in config.params().iter().enumerate() {
            let p = curve_point(&curve, z).unwrap();
            assert_eq!(p, ProjPoint::new(config.points()[i].clone()).unwrap());
        }
        // components are exactly the Lagrange basis
        for i in 0..3 {
            assert_eq!(
                curve.components()[i],
                lagrange_basis(config.params(), i).unwrap()
            );
        }
    }

    #[test]
    fn degenerate_member_misses_point() {
        // lambda_0 = 0 violates the open condition: every component picks
        // up the factor (z - z_0), so the map degenerates at the first
        // node instead of passing through x_0
        let config = MarkedConfig::new(zs(&[0, 1, 2]), vec![e(0, 3), e(1, 3), e(2, 3)]).unwrap();
        let lambda = vec![Rat::zero(), Rat::one(), Rat::one()];
        let curve = interpolate_pn(&config, &lambda).unwrap();
        assert_eq!(curve_point(&curve, &q(0, 1)), Err(Error::ZeroVector));
        // the other nodes are still interpolated
        for i in [1usize, 2] {
            assert_eq!(
                curve_point(&curve, &config.params()[i]).unwrap(),
                ProjPoint::new(config.points()[i].clone()).unwrap()
            );
        }
    }

    #[test]
    fn line_through_two_points() {
        let config = MarkedConfig::new(
            zs(&[0, 1]),
            vec![vec![q(1, 1), q(2, 1), q(3, 1)], vec![q(1, 1), q(0, 1), q(-1, 1)]],
        )
        .unwrap();
        let curve = interpolate_pn(&config, &[Rat::one(), Rat::one()]).unwrap();
        assert_eq!(curve.degree(), 1);
        assert!(curve.components().iter().all(|c| c.degree().map_or(true, |d| d <= 1)));
        for (i, z) in config.params().iter().enumerate() {
            assert_eq!(
                curve_point(&curve, z).unwrap(),
                ProjPoint::new(config.points()[i].clone()).unwrap()
            );
        }
    }

    #[test]
    fn constant_curve() {
        let config = MarkedConfig::new(vec![q(0, 1)], vec![vec![q(2, 1), q(4, 1)]]).unwrap();
        let curve = interpolate_pn(&config, &[Rat::one()]).unwrap();
        let p = curve_point(&curve, &q(17, 5)).unwrap();
        assert_eq!(p, ProjPoint::new(vec![q(1, 1), q(2, 1)]).unwrap());
    }

    #[test]
    fn curve_point_zero_vector_is_an_error() {
        // P(z) = (1 - 2z) * v vanishes at z = 1/2
        let v = vec![q(1, 1), q(1, 1)];
        let minus_v = vec![q(-1, 1), q(-1, 1)];
        let config = MarkedConfig::new(zs(&[0, 1]), vec![v, minus_v]).unwrap();
        let curve = interpolate_pn(&config, &[Rat::one(), Rat::one()]).unwrap();
        assert_eq!(curve_point(&curve, &q(1, 2)), Err(Error::ZeroVector));
        assert!(curve_point(&curve, &q(1, 3)).is_ok());
    }

    #[test]
    fn rescaled_skew_two_points() {
        let quad = QuadSpace::split(3);
        let config = MarkedConfig::new(zs(&[0, 1]), vec![e(0, 5), e(1, 5)]).unwrap();
        let rs = build_rescaled_skew(&quad, &config).unwrap();
        assert_eq!(rs.matrix().mat(), &MatQ::from_i64(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn rescaled_skew_alternating_degree_three() {
        let quad = QuadSpace::split(3);
        let config = alternating_config(&e(0, 5), &e(1, 5), zs(&[0, 1, 2, 3])).unwrap();
        let rs = build_rescaled_skew(&quad, &config).unwrap();
        let a = rs.matrix().mat();
        assert_eq!(a[(0, 1)], q(1, 1));
        assert_eq!(a[(0, 2)], q(0, 1));
        assert_eq!(a[(0, 3)], q(1, 3));
        assert_eq!(a[(1, 2)], q(1, 1));
        assert_eq!(a[(1, 3)], q(0, 1));
        assert_eq!(a[(2, 3)], q(1, 1));
    }

    #[test]
    fn rescaled_skew_isotropic_repeats_vanish() {
        let quad = QuadSpace::split(3);
        let config =
            MarkedConfig::new(zs(&[0, 1, 2]), vec![e(0, 5), e(0, 5), e(0, 5)]).unwrap();
        let rs = build_rescaled_skew(&quad, &config).unwrap();
        assert_eq!(rs.matrix().mat(), &MatQ::zero(3, 3));
    }

    #[test]
    fn pfaffian_kernel_odd_example() {
        let a = SkewMatQ::from_upper(3, &[q(1, 1), q(2, 1), q(3, 1)]).unwrap();
        let kernel = kernel_via_pfaffians(&a).unwrap();
        assert_eq!(kernel, vec![vec![q(-3, 1), q(2, 1), q(-1, 1)]]);
        assert!(a.mat().mul_vec(&kernel[0]).unwrap().iter().all(Rat::is_zero));
    }

    #[test]
    fn pfaffian_kernel_even_example() {
        // only a01 = 1: kernel is the span of e2, e3
        let mut upper = vec![Rat::zero(); 6];
        upper[0] = Rat::one();
        let a = SkewMatQ::from_upper(4, &upper).unwrap();
        let kernel = kernel_via_pfaffians(&a).unwrap();
        assert_eq!(kernel.len(), 2);
        let mut all = kernel.clone();
        all.extend(a.mat().kernel_basis());
        assert_eq!(MatQ::from_rows(all).unwrap().rank(), 2);
    }

    #[test]
    fn pfaffian_kernel_rejects_wrong_corank() {
        let a = SkewMatQ::from_upper(2, &[q(1, 1)]).unwrap();
        assert_eq!(
            kernel_via_pfaffians(&a),
            Err(Error::CorankPrecondition { size: 2, corank: 0 })
        );
    }

    #[test]
    fn quadric_fibre_two_general_points_is_empty() {
        let quad = QuadSpace::split(3);
        // B(e0, e1) = 1 != 0: no line through the pair, only a conic
        let config = MarkedConfig::new(zs(&[0, 1]), vec![e(0, 5), e(1, 5)]).unwrap();
        let fibre = solve_quadric_fibre(&quad, &config).unwrap();
        assert_eq!(fibre.kind, FibreKind::Empty);
        assert_eq!(fibre.kernel_dim, 0);
        assert!(fibre.representatives.is_empty());
    }

    #[test]
    fn quadric_fibre_line_inside_quadric_is_family() {
        let quad = QuadSpace::split(3);
        // B(e0, e2) = 0: the matrix vanishes and every lambda is admissible
        let config = MarkedConfig::new(zs(&[0, 1]), vec![e(0, 5), e(2, 5)]).unwrap();
        let fibre = solve_quadric_fibre(&quad, &config).unwrap();
        assert_eq!(fibre.kind, FibreKind::Family);
        assert_eq!(fibre.kernel_dim, 2);
        assert_eq!(fibre.dim, Some(1));
        assert!(!fibre.representatives.is_empty());
    }

    #[test]
    fn quadric_fibre_rejects_point_off_quadric() {
        let quad = QuadSpace::split(3);
        let off = vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)];
        let config = MarkedConfig::new(zs(&[0, 1]), vec![e(0, 5), off]).unwrap();
        assert_eq!(
            solve_quadric_fibre(&quad, &config),
            Err(Error::PointNotOnQuadric { index: 1 })
        );
    }

    #[test]
    fn verify_constant_curve_on_quadric() {
        let quad = QuadSpace::split(3);
        let config = MarkedConfig::new(vec![q(0, 1)], vec![e(0, 5)]).unwrap();
        let curve = interpolate_pn(&config, &[Rat::one()]).unwrap();
        assert!(verify_on_quadric(&quad, &curve));
    }

    #[test]
    fn verify_rejects_generic_interpolant() {
        let quad = QuadSpace::split(3);
        let config = MarkedConfig::new(
            zs(&[0, 1, 2]),
            vec![e(0, 5), e(1, 5), vec![q(1, 1); 5]],
        )
        .unwrap();
        let curve = interpolate_pn(&config, &[Rat::one(), Rat::one(), Rat::one()]).unwrap();
        assert!(!verify_on_quadric(&quad, &curve));
    }

    #[test]
    fn pn_fibre_worked_conic() {
        // base e0, e1, e2 at z = (0,1,2), extra [1:1:1] at z = 3:
        // unique conic with lambda proportional to (1, -1/3, 1/3)
        let base = MarkedConfig::new(zs(&[0, 1, 2]), vec![e(0, 3), e(1, 3), e(2, 3)]).unwrap();
        let extra = MarkedConfig::new(zs(&[3]), vec![vec![q(1, 1); 3]]).unwrap();
        let fibre = pn_fibre(&base, &extra, 2).unwrap();
        assert!(fibre.degree_condition_ok);
        assert!(fibre.wedge_condition_ok);
        assert_eq!(fibre.description.kind, FibreKind::UniqueCurve);
        let lam = &fibre.description.representatives[0].lambda().to_vec();
        let scale = lam[0].recip();
        let normalized: Vec<Rat> = lam.iter().map(|l| l * &scale).collect();
        assert_eq!(normalized, vec![q(1, 1), q(-1, 3), q(1, 3)]);
        // and the curve does pass through the extra point
        let p = curve_point(&fibre.description.representatives[0], &q(3, 1)).unwrap();
        assert_eq!(p, ProjPoint::new(vec![q(1, 1); 3]).unwrap());
    }

    #[test]
    fn pn_fibre_no_extra_points_is_whole_space() {
        let base = MarkedConfig::new(zs(&[0, 1, 2]), vec![e(0, 3), e(1, 3), e(2, 3)]).unwrap();
        let extra = MarkedConfig::new(vec![], vec![]).unwrap();
        let fibre = pn_fibre(&base, &extra, 2).unwrap();
        assert_eq!(fibre.description.kernel_dim, 3);
        assert_eq!(fibre.description.dim, Some(2));
        assert_eq!(fibre.description.kind, FibreKind::Family);
    }

    #[test]
    fn pn_fibre_three_non_collinear_points_empty() {
        let base = MarkedConfig::new(zs(&[0, 1]), vec![e(0, 3), e(1, 3)]).unwrap();
        let extra = MarkedConfig::new(zs(&[2]), vec![vec![q(1, 1); 3]]).unwrap();
        let fibre = pn_fibre(&base, &extra, 2).unwrap();
        assert_eq!(fibre.description.kind, FibreKind::Empty);
    }

    #[test]
    fn pn_fibre_rejects_repeated_parameters() {
        let base = MarkedConfig::new(zs(&[0, 1]), vec![e(0, 3), e(1, 3)]).unwrap();
        let extra = MarkedConfig::new(zs(&[1]), vec![vec![q(1, 1); 3]]).unwrap();
        assert!(matches!(pn_fibre(&base, &extra, 2), Err(Error::RepeatedParameter)));
    }

    #[test]
    fn cauchy_pfaffian_small_values() {
        assert_eq!(cauchy_pfaffian(&zs(&[0, 1])).unwrap(), q(1, 1));
        assert_eq!(cauchy_pfaffian(&zs(&[0, 1, 2, 3])).unwrap(), q(4, 3));
        assert_eq!(cauchy_pfaffian(&zs(&[0, 1, 2])), Err(Error::OddLength));
        assert_eq!(
            cauchy_pfaffian(&zs(&[0, 0])),
            Err(Error::RepeatedParameter)
        );
    }

    #[test]
    fn cauchy_pfaffian_matches_matrix_pfaffian() {
        let quad = QuadSpace::split(3);
        for z in [zs(&[0, 1]), zs(&[0, 1, 2, 3]), zs(&[0, 1, 2, 3, 4, 5]), zs(&[-3, 7, 2, 9, -1, 4])] {
            let config = alternating_config(&e(0, 5), &e(1, 5), z.clone()).unwrap();
            let rs = build_rescaled_skew(&quad, &config).unwrap();
            assert_eq!(cauchy_pfaffian(&z).unwrap(), rs.matrix().pfaffian());
            // the pairing-sum oracle agrees as well
            assert_eq!(cauchy_pfaffian(&z).unwrap(), rs.matrix().pfaffian_by_pairings());
        }
    }

    #[test]
    fn curve_map_serde_round_trip() {
        let config = MarkedConfig::new(zs(&[0, 1, 2]), vec![e(0, 3), e(1, 3), e(2, 3)]).unwrap();
        let curve = interpolate_pn(&config, &[q(1, 1), q(-1, 3), q(1, 3)]).unwrap();
        let json = serde_json::to_string(&curve).unwrap();
        let back: CurveMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, curve);
    }
}

//! Matrix models of the Euclidean, projective, scene and dilation groups, and the
//! stabiliser subalgebras of the geometric objects they act on.
//!
//! Every model is realised as a Lie algebra of `m x m` matrices with a fixed basis.
//! Subalgebras are stored in coordinates with respect to that basis, so all
//! intersections and sums happen in `Q^{dim g}`.
//!
//! | model            | matrices                 | dim g        |
//! |------------------|--------------------------|--------------|
//! | `euclidean(d)`   | `[S b; 0 0]`, `S` skew   | `C(d+1, 2)`  |
//! | `projective(n)`  | traceless `n x n`        | `n^2 - 1`    |
//! | `scenes(d)`      | zero except the last row | `d + 1`      |
//! | `dilation(d)`    | `[mu I b; 0 0]`          | `d + 1`      |
//!
//! A stabiliser is always computed the same way: the object is turned into a linear
//! subspace `W` of homogeneous coordinates and the algebra elements `X` with
//! `X W ⊆ W` are collected.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, q, Rational, RationalMatrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelKind {
    Euclidean { d: usize },
    Projective { n: usize },
    Scenes { d: usize },
    Dilation { d: usize },
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Euclidean { d } => write!(f, "euclidean({d})"),
            ModelKind::Projective { n } => write!(f, "projective({n})"),
            ModelKind::Scenes { d } => write!(f, "scenes({d})"),
            ModelKind::Dilation { d } => write!(f, "dilation({d})"),
        }
    }
}

impl ModelKind {
    /// Side length of the matrices.
    pub fn size(self) -> usize {
        match self {
            ModelKind::Euclidean { d } | ModelKind::Scenes { d } | ModelKind::Dilation { d } => d + 1,
            ModelKind::Projective { n } => n,
        }
    }

    pub fn algebra_dim(self) -> usize {
        match self {
            ModelKind::Euclidean { d } => (d + 1) * d / 2,
            ModelKind::Projective { n } => n * n - 1,
            ModelKind::Scenes { d } | ModelKind::Dilation { d } => d + 1,
        }
    }

    pub fn model(self) -> GroupModel {
        GroupModel::new(self)
    }
}

/// A matrix Lie algebra with a basis in which every element `B_j` owns one
/// matrix position where it is 1 and every other basis element is 0.
#[derive(Clone, Debug)]
pub struct GroupModel {
    kind: ModelKind,
    basis: Vec<RationalMatrix>,
    positions: Vec<(usize, usize)>,
}

fn unit(m: usize, entries: &[(usize, usize, i64)]) -> RationalMatrix {
    let mut x = RationalMatrix::zeros(m, m);
    for &(r, c, v) in entries {
        x.set(r, c, q(v));
    }
    x
}

impl GroupModel {
    pub fn new(kind: ModelKind) -> Self {
        let m = kind.size();
        let mut basis = Vec::new();
        let mut positions = Vec::new();
        match kind {
            ModelKind::Euclidean { d } => {
                for i in 0..d {
                    for j in i + 1..d {
                        basis.push(unit(m, &[(j, i, 1), (i, j, -1)]));
                        positions.push((j, i));
                    }
                }
                for i in 0..d {
                    basis.push(unit(m, &[(i, d, 1)]));
                    positions.push((i, d));
                }
            }
            ModelKind::Projective { n } => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            basis.push(unit(m, &[(i, j, 1)]));
                            positions.push((i, j));
                        }
                    }
                }
                for i in 0..n.saturating_sub(1) {
                    basis.push(unit(m, &[(i, i, 1), (n - 1, n - 1, -1)]));
                    positions.push((i, i));
                }
            }
            ModelKind::Scenes { d } => {
                for j in 0..=d {
                    basis.push(unit(m, &[(d, j, 1)]));
                    positions.push((d, j));
                }
            }
            ModelKind::Dilation { d } => {
                let diag: Vec<(usize, usize, i64)> = (0..d).map(|i| (i, i, 1)).collect();
                basis.push(unit(m, &diag));
                positions.push((0, 0));
                for i in 0..d {
                    basis.push(unit(m, &[(i, d, 1)]));
                    positions.push((i, d));
                }
            }
        }
        debug_assert_eq!(basis.len(), kind.algebra_dim());
        GroupModel { kind, basis, positions }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.kind.size()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn element(&self, coords: &[Rational]) -> RationalMatrix {
        let m = self.size();
        let mut out = RationalMatrix::zeros(m, m);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c)).expect("basis matrices share a shape");
            }
        }
        out
    }

    /// Coordinates of `x` if it lies in the algebra.
    pub fn coords_of(&self, x: &RationalMatrix) -> Option<Vec<Rational>> {
        if x.rows() != self.size() || x.cols() != self.size() {
            return None;
        }
        let coords: Vec<Rational> = self.positions.iter().map(|&(r, c)| x.get(r, c).clone()).collect();
        (self.element(&coords) == *x).then_some(coords)
    }

    pub fn full(&self) -> Subalgebra {
        Subalgebra { kind: self.kind, span: Subspace::full(self.dim()) }
    }

    pub fn zero(&self) -> Subalgebra {
        Subalgebra { kind: self.kind, span: Subspace::zero(self.dim()) }
    }

    /// Algebra elements `X` with `X W ⊆ W`, where `W` is spanned by `w` in `Q^m`.
    pub fn preserver_of(&self, w: &[Vec<Rational>]) -> Result<Subalgebra> {
        let m = self.size();
        let space = Subspace::span(m, w)?;
        if space.dim() != w.len() {
            return Err(Error::Degenerate("spanning vectors are linearly dependent".into()));
        }
        let comp = space.orthogonal_complement_rows();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for u in 0..comp.rows() {
            for wv in w {
                let row: Vec<Rational> = self
                    .basis
                    .iter()
                    .map(|b| {
                        let bw = b.mul_vec(wv).expect("vector length matches model size");
                        crate::linalg::dot(comp.row(u), &bw)
                    })
                    .collect();
                rows.push(row);
            }
        }
        let cond = RationalMatrix::from_rows(self.dim(), &rows)?;
        Ok(Subalgebra { kind: self.kind, span: nullspace_in(&cond, self.dim()) })
    }

    pub fn bracket(x: &RationalMatrix, y: &RationalMatrix) -> RationalMatrix {
        x.mul(y).and_then(|a| a.sub(&y.mul(x)?)).expect("square matrices of equal size")
    }
}

fn nullspace_in(cond: &RationalMatrix, n: usize) -> Subspace {
    if cond.rows() == 0 {
        Subspace::full(n)
    } else {
        nullspace(cond)
    }
}

/// A subalgebra of a model's Lie algebra, in model coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    kind: ModelKind,
    span: Subspace,
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalgebra[{}; {:?}]", self.kind, self.span)
    }
}

impl Subalgebra {
    /// Span of coordinate vectors. Closure under the bracket is not checked here;
    /// see [`Subalgebra::validated`].
    pub fn from_coords(kind: ModelKind, vectors: &[Vec<Rational>]) -> Result<Self> {
        Ok(Subalgebra { kind, span: Subspace::span(kind.algebra_dim(), vectors)? })
    }

    pub fn from_subspace(kind: ModelKind, span: Subspace) -> Result<Self> {
        if span.ambient() != kind.algebra_dim() {
            return Err(Error::DimensionMismatch { expected: kind.algebra_dim(), found: span.ambient() });
        }
        Ok(Subalgebra { kind, span })
    }

    pub fn from_matrices(kind: ModelKind, mats: &[RationalMatrix]) -> Result<Self> {
        let model = kind.model();
        let coords = mats
            .iter()
            .map(|x| {
                model.coords_of(x).ok_or_else(|| Error::NotSubalgebra(format!("matrix lies outside the {kind} algebra")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(kind, &coords)
    }

    /// Like `from_matrices`, but also rejects spans that are not closed under the bracket.
    pub fn validated(kind: ModelKind, mats: &[RationalMatrix]) -> Result<Self> {
        let s = Self::from_matrices(kind, mats)?;
        if !s.is_bracket_closed() {
            return Err(Error::NotSubalgebra("span is not closed under the commutator".into()));
        }
        Ok(s)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn codim(&self) -> usize {
        self.kind.algebra_dim() - self.dim()
    }

    pub fn basis_matrices(&self) -> Vec<RationalMatrix> {
        let model = self.kind.model();
        self.span.basis_vectors().iter().map(|c| model.element(c)).collect()
    }

    fn same_model(&self, other: &Subalgebra) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::ModelMismatch(self.kind.to_string(), other.kind.to_string()));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.same_model(other)?;
        Ok(Subalgebra { kind: self.kind, span: self.span.intersect(&other.span)? })
    }

    pub fn sum(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.same_model(other)?;
        Ok(Subalgebra { kind: self.kind, span: self.span.sum(&other.span)? })
    }

    pub fn contains_coords(&self, v: &[Rational]) -> bool {
        self.span.contains(v)
    }

    pub fn contains(&self, other: &Subalgebra) -> bool {
        self.kind == other.kind && self.span.contains_subspace(&other.span)
    }

    pub fn is_bracket_closed(&self) -> bool {
        let model = self.kind.model();
        let mats = self.basis_matrices();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let b = GroupModel::bracket(&mats[i], &mats[j]);
                match model.coords_of(&b) {
                    Some(c) if self.span.contains(&c) => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Exact intersection of two subalgebras over the same model.
pub fn incidence_algebra(a: &Subalgebra, b: &Subalgebra) -> Result<Subalgebra> {
    a.intersect(b)
}

/// Geometric objects whose stabilisers populate realisations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometricObject {
    /// Affine point of `R^d`.
    Point {
        #[serde(with = "crate::json::vector")]
        coords: Vec<Rational>,
    },
    /// Finite set of affine points; stabilised pointwise.
    PointSet {
        #[serde(with = "crate::json::vectors")]
        points: Vec<Vec<Rational>>,
    },
    /// Linear subspace of `R^n` given by independent spanning vectors.
    ProjectiveSubspace {
        #[serde(with = "crate::json::vectors")]
        basis: Vec<Vec<Rational>>,
    },
    /// Homogeneous point `[x_0 : ... : x_d]` of `RP^d`, different from `[0 : ... : 0 : 1]`.
    ScenePoint {
        #[serde(with = "crate::json::vector")]
        coords: Vec<Rational>,
    },
    /// Affine hyperplane `normal · x = offset`.
    Hyperplane {
        #[serde(with = "crate::json::vector")]
        normal: Vec<Rational>,
        #[serde(with = "crate::json::scalar")]
        offset: Rational,
    },
    /// `point + span(directions)`.
    AffineSubspace {
        #[serde(with = "crate::json::vector")]
        point: Vec<Rational>,
        #[serde(with = "crate::json::vectors")]
        directions: Vec<Vec<Rational>>,
    },
}

impl GeometricObject {
    fn variant(&self) -> &'static str {
        match self {
            GeometricObject::Point { .. } => "point",
            GeometricObject::PointSet { .. } => "point_set",
            GeometricObject::ProjectiveSubspace { .. } => "projective_subspace",
            GeometricObject::ScenePoint { .. } => "scene_point",
            GeometricObject::Hyperplane { .. } => "hyperplane",
            GeometricObject::AffineSubspace { .. } => "affine_subspace",
        }
    }
}

fn homogeneous(p: &[Rational], last: i64) -> Vec<Rational> {
    let mut v = p.to_vec();
    v.push(q(last));
    v
}

fn check_len(model: ModelKind, v: &[Rational], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::IncompatibleObject {
            model: model.to_string(),
            reason: format!("expected {expected} coordinates, found {}", v.len()),
        });
    }
    Ok(())
}

/// Lie algebra of the stabiliser of `obj` in `model`.
pub fn stabiliser(model: ModelKind, obj: &GeometricObject) -> Result<Subalgebra> {
    let g = model.model();
    let incompatible = || Error::IncompatibleObject {
        model: model.to_string(),
        reason: format!("{} objects are not acted on by this group", obj.variant()),
    };
    match (model, obj) {
        (ModelKind::Euclidean { d } | ModelKind::Dilation { d }, GeometricObject::Point { coords }) => {
            check_len(model, coords, d)?;
            g.preserver_of(&[homogeneous(coords, 1)])
        }
        (ModelKind::Euclidean { .. } | ModelKind::Dilation { .. }, GeometricObject::PointSet { points }) => {
            let mut acc = g.full();
            for p in points {
                acc = acc.intersect(&stabiliser(model, &GeometricObject::Point { coords: p.clone() })?)?;
            }
            Ok(acc)
        }
        (
            ModelKind::Euclidean { d } | ModelKind::Dilation { d },
            GeometricObject::AffineSubspace { point, directions },
        ) => {
            check_len(model, point, d)?;
            let mut w = vec![homogeneous(point, 1)];
            for dir in directions {
                check_len(model, dir, d)?;
                w.push(homogeneous(dir, 0));
            }
            g.preserver_of(&w)
                .map_err(|_| Error::Degenerate("affine subspace directions are linearly dependent".into()))
        }
        (ModelKind::Euclidean { d } | ModelKind::Dilation { d }, GeometricObject::Hyperplane { normal, offset }) => {
            check_len(model, normal, d)?;
            if normal.iter().all(Zero::is_zero) {
                return Err(Error::Degenerate("hyperplane normal is zero".into()));
            }
            let h = homogeneous(normal, 0);
            let mut h = h;
            h[d] = -offset.clone();
            let w = Subspace::span(d + 1, &[h])?.orthogonal_complement().basis_vectors();
            g.preserver_of(&w)
        }
        (ModelKind::Projective { n }, GeometricObject::ProjectiveSubspace { basis }) => {
            for b in basis {
                check_len(model, b, n)?;
            }
            g.preserver_of(basis)
        }
        (ModelKind::Scenes { d }, GeometricObject::ScenePoint { coords }) => {
            check_len(model, coords, d + 1)?;
            if coords[..d].iter().all(Zero::is_zero) {
                return Err(Error::Degenerate(
                    "scene point is zero or equals the projection centre [0:...:0:1]".into(),
                ));
            }
            g.preserver_of(std::slice::from_ref(coords))
        }
        _ => Err(incompatible()),
    }
}

/// Infinitesimal preservers of the affine subspace `L` in `euclidean(d)`.
pub fn tangency_algebra_affine(model: ModelKind, l: &GeometricObject) -> Result<Subalgebra> {
    match (model, l) {
        (ModelKind::Euclidean { .. }, GeometricObject::AffineSubspace { .. }) => stabiliser(model, l),
        _ => Err(Error::IncompatibleObject {
            model: model.to_string(),
            reason: "tangency algebras are defined for affine subspaces in a Euclidean model".into(),
        }),
    }
}

const E2: ModelKind = ModelKind::Euclidean { d: 2 };

/// Scales a homogeneous vector so that its last nonzero coordinate is 1.
pub fn normalise_projective(v: &[Rational]) -> Vec<Rational> {
    match v.iter().rev().find(|x| !x.is_zero()) {
        Some(s) => {
            let s = s.clone();
            v.iter().map(|x| x / &s).collect()
        }
        None => v.to_vec(),
    }
}

/// Centre of rotation of a nonzero element of `e(2)`, as a point of `RP^2`.
///
/// `[[0, -a, b1], [a, 0, b2], [0, 0, 0]]` maps to `[-b2 : b1 : a]`: the fixed point for
/// a rotation (`a != 0`) and the point at infinity `[-b2 : b1 : 0]` for a translation.
pub fn centre_of_rotation(w: &RationalMatrix) -> Result<Vec<Rational>> {
    let coords = E2
        .model()
        .coords_of(w)
        .ok_or_else(|| Error::IncompatibleObject { model: E2.to_string(), reason: "matrix is not in e(2)".into() })?;
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("the zero element has no centre of rotation".into()));
    }
    let a = w.get(1, 0).clone();
    let b1 = w.get(0, 2).clone();
    let b2 = w.get(1, 2).clone();
    Ok(normalise_projective(&[-b2, b1, a]))
}

/// The one-dimensional subalgebra of `e(2)` whose centre is the projective point `x`.
pub fn rotation_centre_algebra(x: &[Rational]) -> Result<Subalgebra> {
    if x.len() != 3 || x.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("expected a nonzero homogeneous 3-vector".into()));
    }
    let w = RationalMatrix::from_rows(
        3,
        &[
            vec![q(0), -x[2].clone(), x[1].clone()],
            vec![x[2].clone(), q(0), -x[0].clone()],
            vec![q(0), q(0), q(0)],
        ],
    )?;
    Subalgebra::from_matrices(E2, &[w])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collinearity {
    pub collinear: bool,
    pub determinant_zero: bool,
    pub algebra_sum_dim: usize,
}

/// Collinearity of three points of `RP^2`, decided by the homogeneous determinant and
/// cross-checked against the dimension of the sum of their rotation-centre algebras.
pub fn centres_collinear(x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Collinearity> {
    for p in [x, y, z] {
        if p.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: p.len() });
        }
    }
    let det = &x[0] * (&y[1] * &z[2] - &y[2] * &z[1]) - &x[1] * (&y[0] * &z[2] - &y[2] * &z[0])
        + &x[2] * (&y[0] * &z[1] - &y[1] * &z[0]);
    let sum = rotation_centre_algebra(x)?.sum(&rotation_centre_algebra(y)?)?.sum(&rotation_centre_algebra(z)?)?;
    let determinant_zero = det.is_zero();
    if determinant_zero != (sum.dim() <= 2) {
        return Err(Error::Invariant(format!(
            "determinant test and algebra-sum test disagree (det zero: {determinant_zero}, dim {})",
            sum.dim()
        )));
    }
    Ok(Collinearity { collinear: determinant_zero, determinant_zero, algebra_sum_dim: sum.dim() })
}

/// Algebra homomorphisms used to transport realisations between models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraMap {
    Identity,
    /// `X -> -X^T` on traceless matrices; infinitesimal form of `A -> (A^T)^{-1}`.
    ProjectiveDual,
    /// `X -> -X^T`, normalised modulo scalars so the last diagonal entry vanishes.
    SceneToParallel,
    /// Inverse of `SceneToParallel`.
    ParallelToScene,
}

impl AlgebraMap {
    pub fn target(self, source: ModelKind) -> Result<ModelKind> {
        match (self, source) {
            (AlgebraMap::Identity, k) => Ok(k),
            (AlgebraMap::ProjectiveDual, k @ ModelKind::Projective { .. }) => Ok(k),
            (AlgebraMap::SceneToParallel, ModelKind::Scenes { d }) => Ok(ModelKind::Dilation { d }),
            (AlgebraMap::ParallelToScene, ModelKind::Dilation { d }) => Ok(ModelKind::Scenes { d }),
            (map, k) => Err(Error::NotIsomorphism(format!("{map:?} is not defined on {k}"))),
        }
    }

    pub fn apply(self, x: &RationalMatrix) -> RationalMatrix {
        let neg_t = || x.transpose().scale(&q(-1));
        let shift = |y: RationalMatrix, s: Rational| {
            let n = y.rows();
            y.sub(&RationalMatrix::identity(n).scale(&s)).expect("square")
        };
        match self {
            AlgebraMap::Identity => x.clone(),
            AlgebraMap::ProjectiveDual => neg_t(),
            AlgebraMap::SceneToParallel => {
                let y = neg_t();
                let last = y.rows() - 1;
                let s = y.get(last, last).clone();
                shift(y, s)
            }
            AlgebraMap::ParallelToScene => {
                let y = neg_t();
                let s = y.get(0, 0).clone();
                shift(y, s)
            }
        }
    }

    /// Image of a subalgebra; fails unless the map is an isomorphism onto the target algebra.
    pub fn push(self, a: &Subalgebra) -> Result<Subalgebra> {
        let target = self.target(a.kind())?;
        if target.algebra_dim() != a.kind().algebra_dim() {
            return Err(Error::NotIsomorphism("source and target algebras differ in dimension".into()));
        }
        let image = a.basis_matrices().iter().map(|x| self.apply(x)).collect::<Vec<_>>();
        let pushed = Subalgebra::from_matrices(target, &image)
            .map_err(|_| Error::NotIsomorphism(format!("{self:?} leaves the {target} algebra")))?;
        if pushed.dim() != a.dim() {
            return Err(Error::NotIsomorphism(format!("{self:?} drops rank on a subalgebra")));
        }
        Ok(pushed)
    }

    /// Checks that the map sends a basis of the full source algebra to a basis of the target.
    pub fn check_isomorphism(self, source: ModelKind) -> Result<()> {
        let full = source.model().full();
        let image = self.push(&full)?;
        if image.dim() != image.kind().algebra_dim() {
            return Err(Error::NotIsomorphism("map is not onto".into()));
        }
        Ok(())
    }
}

/// Hyperplane `normal · x = offset` polar to the scene point `[normal : -offset]`.
pub fn polar_hyperplane(scene_point: &[Rational]) -> GeometricObject {
    let d = scene_point.len() - 1;
    GeometricObject::Hyperplane { normal: scene_point[..d].to_vec(), offset: -scene_point[d].clone() }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn pt(xs: &[i64]) -> GeometricObject {
        GeometricObject::Point { coords: xs.iter().map(|&x| q(x)).collect() }
    }

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn algebra_dimensions() {
        for d in 1..5 {
            assert_eq!(ModelKind::Euclidean { d }.model().dim(), binomial(d + 1, 2));
            assert_eq!(ModelKind::Scenes { d }.model().dim(), d + 1);
            assert_eq!(ModelKind::Dilation { d }.model().dim(), d + 1);
        }
        for n in 2..5 {
            assert_eq!(ModelKind::Projective { n }.model().dim(), n * n - 1);
        }
    }

    #[test]
    fn full_algebras_are_closed() {
        for k in [
            ModelKind::Euclidean { d: 3 },
            ModelKind::Projective { n: 3 },
            ModelKind::Scenes { d: 2 },
            ModelKind::Dilation { d: 3 },
        ] {
            assert!(k.model().full().is_bracket_closed(), "{k}");
        }
    }

    #[test]
    fn origin_stabiliser_in_the_plane() {
        let h = stabiliser(E2, &pt(&[0, 0])).unwrap();
        assert_eq!(h.dim(), 1);
        let rot = h.basis_matrices().remove(0);
        assert!(rot.get(0, 2).is_zero() && rot.get(1, 2).is_zero());
        assert!(!rot.get(1, 0).is_zero());
    }

    #[test]
    fn stabiliser_matches_paper_matrices() {
        // p = (1, 0): [[0, -t, 0], [t, 0, -t], [0, 0, 0]]
        let h = stabiliser(E2, &pt(&[1, 0])).unwrap();
        let expected = RationalMatrix::from_i64(&[&[0, -1, 0], &[1, 0, -1], &[0, 0, 0]]);
        assert_eq!(h, Subalgebra::from_matrices(E2, &[expected]).unwrap());
        // p = (0, 1): [[0, -t, t], [t, 0, 0], [0, 0, 0]]
        let h = stabiliser(E2, &pt(&[0, 1])).unwrap();
        let expected = RationalMatrix::from_i64(&[&[0, -1, 1], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(h, Subalgebra::from_matrices(E2, &[expected]).unwrap());
    }

    #[test]
    fn two_points_have_trivial_stabiliser() {
        let set = GeometricObject::PointSet { points: vec![qs(&[0, 0]), qs(&[1, 0])] };
        assert_eq!(stabiliser(E2, &set).unwrap().dim(), 0);
        let a = stabiliser(E2, &pt(&[0, 0])).unwrap();
        let b = stabiliser(E2, &pt(&[3, 5])).unwrap();
        assert_eq!(incidence_algebra(&a, &b).unwrap().dim(), 0);
        assert_eq!(incidence_algebra(&a, &a).unwrap(), a);
    }

    #[test]
    fn projective_point_and_line() {
        let p3 = ModelKind::Projective { n: 3 };
        let point = stabiliser(p3, &GeometricObject::ProjectiveSubspace { basis: vec![qs(&[1, 0, 0])] }).unwrap();
        let line =
            stabiliser(p3, &GeometricObject::ProjectiveSubspace { basis: vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])] }).unwrap();
        assert_eq!(point.dim(), 6);
        assert_eq!(line.dim(), 6);
        assert_eq!(point.intersect(&line).unwrap().dim(), 5);
    }

    #[test]
    fn scene_point_stabiliser() {
        let s2 = ModelKind::Scenes { d: 2 };
        let h = stabiliser(s2, &GeometricObject::ScenePoint { coords: qs(&[1, 2, 3]) }).unwrap();
        assert_eq!(h.dim(), 2);
        // a_0 x_0 + a_1 x_1 + alpha_d x_d = 0 on the last row.
        for b in h.basis_matrices() {
            let s = b.get(2, 0) * q(1) + b.get(2, 1) * q(2) + b.get(2, 2) * q(3);
            assert!(s.is_zero());
        }
        assert!(stabiliser(s2, &GeometricObject::ScenePoint { coords: qs(&[0, 0, 1]) }).is_err());
        assert!(stabiliser(s2, &GeometricObject::ScenePoint { coords: qs(&[0, 0, 0]) }).is_err());
    }

    #[test]
    fn hyperplane_stabiliser_in_dilations() {
        let d2 = ModelKind::Dilation { d: 2 };
        let normal = qs(&[2, -1]);
        let offset = q(3);
        let h = stabiliser(d2, &GeometricObject::Hyperplane { normal: normal.clone(), offset: offset.clone() }).unwrap();
        assert_eq!(h.dim(), 2);
        for b in h.basis_matrices() {
            // b . alpha + mu c = 0
            let mu = b.get(0, 0);
            let s = b.get(0, 2) * &normal[0] + b.get(1, 2) * &normal[1] + mu * &offset;
            assert!(s.is_zero());
        }
    }

    #[test]
    fn affine_tangency() {
        let x_axis = GeometricObject::AffineSubspace { point: qs(&[0, 0]), directions: vec![qs(&[1, 0])] };
        let h = tangency_algebra_affine(E2, &x_axis).unwrap();
        assert_eq!(h.dim(), 1);
        let plane = GeometricObject::AffineSubspace { point: qs(&[0, 0]), directions: vec![qs(&[1, 0]), qs(&[0, 1])] };
        assert_eq!(tangency_algebra_affine(E2, &plane).unwrap().dim(), 3);
        let origin = GeometricObject::AffineSubspace { point: qs(&[0, 0]), directions: vec![] };
        assert_eq!(tangency_algebra_affine(E2, &origin).unwrap(), stabiliser(E2, &pt(&[0, 0])).unwrap());
        let bad = GeometricObject::AffineSubspace { point: qs(&[0, 0]), directions: vec![qs(&[1, 0]), qs(&[2, 0])] };
        assert!(tangency_algebra_affine(E2, &bad).is_err());
    }

    #[test]
    fn orbit_dimension_identity() {
        // dim H - dim(H ∩ Stab(p)) = dim L for p ∈ L.
        let e3 = ModelKind::Euclidean { d: 3 };
        let l = GeometricObject::AffineSubspace { point: qs(&[1, 2, 3]), directions: vec![qs(&[1, 1, 0]), qs(&[0, 1, -1])] };
        let h = tangency_algebra_affine(e3, &l).unwrap();
        let s = stabiliser(e3, &pt(&[1, 2, 3])).unwrap();
        assert_eq!(h.dim() - h.intersect(&s).unwrap().dim(), 2);
    }

    #[test]
    fn centres() {
        let rot = RationalMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(centre_of_rotation(&rot).unwrap(), qs(&[0, 0, 1]));
        let tr = RationalMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(centre_of_rotation(&tr).unwrap(), qs(&[0, 1, 0]));
        let about = stabiliser(E2, &pt(&[2, 3])).unwrap().basis_matrices().remove(0);
        assert_eq!(centre_of_rotation(&about).unwrap(), qs(&[2, 3, 1]));
        assert!(centre_of_rotation(&RationalMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn centre_round_trip() {
        for w in [qs(&[0, 1, 5]), qs(&[3, 0, 0]), qs(&[2, -7, 1])] {
            let x = GroupModel::new(E2).element(&w);
            let c = centre_of_rotation(&x).unwrap();
            assert_eq!(rotation_centre_algebra(&c).unwrap(), Subalgebra::from_coords(E2, &[w]).unwrap());
        }
    }

    #[test]
    fn collinearity() {
        let c = centres_collinear(&qs(&[0, 0, 1]), &qs(&[1, 0, 1]), &qs(&[2, 0, 1])).unwrap();
        assert!(c.collinear);
        assert_eq!(c.algebra_sum_dim, 2);
        let c = centres_collinear(&qs(&[0, 0, 1]), &qs(&[1, 0, 1]), &qs(&[0, 1, 1])).unwrap();
        assert!(!c.collinear);
        assert_eq!(c.algebra_sum_dim, 3);
        let c = centres_collinear(&qs(&[4, 1, 1]), &qs(&[4, 1, 1]), &qs(&[0, 9, 1])).unwrap();
        assert!(c.collinear);
    }

    #[test]
    fn projective_duality_on_stabilisers() {
        let p4 = ModelKind::Projective { n: 4 };
        let w = vec![qs(&[1, 2, 0, 1]), qs(&[0, 1, 1, 3])];
        let stab = stabiliser(p4, &GeometricObject::ProjectiveSubspace { basis: w.clone() }).unwrap();
        let perp = Subspace::span(4, &w).unwrap().orthogonal_complement().basis_vectors();
        let dual = stabiliser(p4, &GeometricObject::ProjectiveSubspace { basis: perp }).unwrap();
        assert_eq!(AlgebraMap::ProjectiveDual.push(&stab).unwrap(), dual);
    }

    #[test]
    fn scene_to_parallel_polarity() {
        let s = vec![q(2), frac(-1, 3), q(5)];
        let stab = stabiliser(ModelKind::Scenes { d: 2 }, &GeometricObject::ScenePoint { coords: s.clone() }).unwrap();
        let image = AlgebraMap::SceneToParallel.push(&stab).unwrap();
        let h = stabiliser(ModelKind::Dilation { d: 2 }, &polar_hyperplane(&s)).unwrap();
        assert_eq!(image, h);
        assert_eq!(AlgebraMap::ParallelToScene.push(&image).unwrap(), stab);
    }

    #[test]
    fn duality_maps_are_isomorphisms() {
        AlgebraMap::ProjectiveDual.check_isomorphism(ModelKind::Projective { n: 3 }).unwrap();
        AlgebraMap::SceneToParallel.check_isomorphism(ModelKind::Scenes { d: 3 }).unwrap();
        AlgebraMap::ParallelToScene.check_isomorphism(ModelKind::Dilation { d: 2 }).unwrap();
        assert!(AlgebraMap::SceneToParallel.check_isomorphism(ModelKind::Euclidean { d: 2 }).is_err());
    }

    #[test]
    fn incompatible_objects() {
        let p3 = ModelKind::Projective { n: 3 };
        assert!(stabiliser(p3, &pt(&[0, 0])).is_err());
        assert!(stabiliser(E2, &pt(&[0, 0, 0])).is_err());
        assert!(stabiliser(E2, &GeometricObject::ScenePoint { coords: qs(&[1, 0, 0]) }).is_err());
    }
}

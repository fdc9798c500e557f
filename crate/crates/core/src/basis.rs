//! Trial-function families, boundary weight families and trace operators.

use std::f64::consts::PI;

use crate::quadrature::{BoundaryKind, BoundaryQuadrature, BoundarySample, Domain2D, Edge};
use crate::{Error, Result};

/// Value and first two derivatives of a univariate function.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet1 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Value, gradient and Hessian entries of a bivariate function.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dyy: f64,
    pub dxy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family1D {
    /// `1, cos(πx/ℓ), …, cos((N-1)πx/ℓ)`.
    Cosine,
    /// `x, x², 1, cos(πx/ℓ), …, cos((N-3)πx/ℓ)`.
    AugmentedCosine,
    /// `1, x, …, x^(N-1)`.
    Monomial,
    /// Explicit polynomials, each given by ascending coefficients.
    Polynomials(Vec<Vec<f64>>),
}

/// A finite family of `C²` functions on `[0, ℓ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis1D {
    family: Family1D,
    count: usize,
    length: f64,
}

fn check_length(length: f64) -> Result<()> {
    if length > 0.0 && length.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "interval length must be positive, got {length}"
        )))
    }
}

fn monomial_jet(k: usize, x: f64) -> Jet1 {
    let k_f = k as f64;
    Jet1 {
        value: x.powi(k as i32),
        d1: if k >= 1 {
            k_f * x.powi(k as i32 - 1)
        } else {
            0.0
        },
        d2: if k >= 2 {
            k_f * (k_f - 1.0) * x.powi(k as i32 - 2)
        } else {
            0.0
        },
    }
}

fn cosine_jet(n: usize, x: f64, length: f64) -> Jet1 {
    if n == 0 {
        return Jet1 {
            value: 1.0,
            d1: 0.0,
            d2: 0.0,
        };
    }
    let k = n as f64 * PI / length;
    let (s, c) = (k * x).sin_cos();
    Jet1 {
        value: c,
        d1: -k * s,
        d2: -k * k * c,
    }
}

impl Basis1D {
    pub fn cosine(count: usize, length: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument(
                "cosine basis needs at least one member".into(),
            ));
        }
        check_length(length)?;
        Ok(Self {
            family: Family1D::Cosine,
            count,
            length,
        })
    }

    /// Cosines completed by `x` and `x²`; `count` includes the two extra members.
    pub fn augmented_cosine(count: usize, length: f64) -> Result<Self> {
        if count < 3 {
            return Err(Error::InvalidArgument(format!(
                "augmented cosine basis needs at least 3 members, got {count}"
            )));
        }
        check_length(length)?;
        Ok(Self {
            family: Family1D::AugmentedCosine,
            count,
            length,
        })
    }

    pub fn monomial(count: usize, length: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument(
                "monomial basis needs at least one member".into(),
            ));
        }
        check_length(length)?;
        Ok(Self {
            family: Family1D::Monomial,
            count,
            length,
        })
    }

    pub fn polynomials(coefficients: Vec<Vec<f64>>, length: f64) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument(
                "polynomial basis needs at least one member".into(),
            ));
        }
        check_length(length)?;
        Ok(Self {
            count: coefficients.len(),
            family: Family1D::Polynomials(coefficients),
            length,
        })
    }

    pub fn family(&self) -> &Family1D {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Harmonic number of member `i` if it is a cosine (the constant is 0).
    pub fn harmonic(&self, i: usize) -> Option<usize> {
        match self.family {
            Family1D::Cosine => Some(i),
            Family1D::AugmentedCosine if i >= 2 => Some(i - 2),
            _ => None,
        }
    }

    /// Index of the member `cos(nπx/ℓ)` (the constant for `n = 0`), if present.
    pub fn cosine_index(&self, n: usize) -> Option<usize> {
        let i = match self.family {
            Family1D::Cosine => n,
            Family1D::AugmentedCosine => n + 2,
            _ => return None,
        };
        (i < self.count).then_some(i)
    }

    pub fn eval(&self, i: usize, x: f64) -> Jet1 {
        assert!(
            i < self.count,
            "member {i} out of range for basis of {}",
            self.count
        );
        match &self.family {
            Family1D::Cosine => cosine_jet(i, x, self.length),
            Family1D::AugmentedCosine => match i {
                0 => monomial_jet(1, x),
                1 => monomial_jet(2, x),
                _ => cosine_jet(i - 2, x, self.length),
            },
            Family1D::Monomial => monomial_jet(i, x),
            Family1D::Polynomials(coeffs) => {
                let mut jet = Jet1::default();
                for (k, &c) in coeffs[i].iter().enumerate() {
                    let m = monomial_jet(k, x);
                    jet.value += c * m.value;
                    jet.d1 += c * m.d1;
                    jet.d2 += c * m.d2;
                }
                jet
            }
        }
    }

    pub fn label(&self, i: usize) -> String {
        match &self.family {
            Family1D::Cosine | Family1D::AugmentedCosine => match (self.harmonic(i), i) {
                (Some(0), _) => "1".into(),
                (Some(n), _) => format!("cos({n}πx/ℓ)"),
                (None, 0) => "x".into(),
                (None, _) => "x^2".into(),
            },
            Family1D::Monomial => format!("x^{i}"),
            Family1D::Polynomials(_) => format!("p{i}"),
        }
    }
}

/// Tensor-product family `φ_i(x) ψ_j(y)`, indexed row-major in `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis2D {
    x: Basis1D,
    y: Basis1D,
}

impl Basis2D {
    pub fn tensor(bx: Basis1D, by: Basis1D) -> Self {
        Self { x: bx, y: by }
    }

    /// `x^(i-1) y^(j-1)` for `i, j = 1..=n`.
    pub fn monomial(n: usize) -> Result<Self> {
        Ok(Self::tensor(
            Basis1D::monomial(n, 1.0)?,
            Basis1D::monomial(n, 1.0)?,
        ))
    }

    pub fn x_factor(&self) -> &Basis1D {
        &self.x
    }

    pub fn y_factor(&self) -> &Basis1D {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.y.len() + j
    }

    pub fn split(&self, member: usize) -> (usize, usize) {
        (member / self.y.len(), member % self.y.len())
    }

    /// Whether the family can be integrated over `domain`. Monomials are
    /// defined everywhere; other tensor families live on `[0, ℓx] × [0, ℓy]`.
    pub fn supports(&self, domain: Domain2D) -> bool {
        let monomial = matches!(self.x.family, Family1D::Monomial | Family1D::Polynomials(_))
            && matches!(self.y.family, Family1D::Monomial | Family1D::Polynomials(_));
        match domain {
            Domain2D::UnitSquare => monomial || (self.x.length == 1.0 && self.y.length == 1.0),
            Domain2D::UnitDisk => monomial,
        }
    }

    pub fn eval(&self, member: usize, x: f64, y: f64) -> Jet2 {
        let (i, j) = self.split(member);
        combine(self.x.eval(i, x), self.y.eval(j, y))
    }

    pub fn label(&self, member: usize) -> String {
        let (i, j) = self.split(member);
        format!("{}·{}", self.x.label(i), self.y.label(j).replace('x', "y"))
    }
}

fn combine(fx: Jet1, fy: Jet1) -> Jet2 {
    Jet2 {
        value: fx.value * fy.value,
        dx: fx.d1 * fy.value,
        dy: fx.value * fy.d1,
        dxx: fx.d2 * fy.value,
        dyy: fx.value * fy.d2,
        dxy: fx.d1 * fy.d1,
    }
}

/// A trial family of either dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialBasis {
    Line(Basis1D),
    Plane(Basis2D),
}

impl TrialBasis {
    pub fn len(&self) -> usize {
        match self {
            TrialBasis::Line(b) => b.len(),
            TrialBasis::Plane(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Jet of member `i` at `point` (`[x]` or `[x, y]`). Univariate members
    /// report their derivatives in the `x` channels.
    pub fn eval(&self, i: usize, point: &[f64]) -> Jet2 {
        match self {
            TrialBasis::Line(b) => {
                let j = b.eval(i, point[0]);
                Jet2 {
                    value: j.value,
                    dx: j.d1,
                    dxx: j.d2,
                    ..Jet2::default()
                }
            }
            TrialBasis::Plane(b) => b.eval(i, point[0], point[1]),
        }
    }
}

impl From<Basis1D> for TrialBasis {
    fn from(b: Basis1D) -> Self {
        TrialBasis::Line(b)
    }
}

impl From<Basis2D> for TrialBasis {
    fn from(b: Basis2D) -> Self {
        TrialBasis::Plane(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
}

/// Point evaluation of a function (`order = 0`) or its derivative
/// (`order = 1`) at an interval endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndpointFunctional {
    pub endpoint: Endpoint,
    pub order: u8,
}

impl EndpointFunctional {
    pub fn new(endpoint: Endpoint, order: u8) -> Result<Self> {
        if order > 1 {
            return Err(Error::InvalidArgument(format!(
                "endpoint functionals support derivative order 0 or 1, got {order}"
            )));
        }
        Ok(Self { endpoint, order })
    }

    pub fn value(endpoint: Endpoint) -> Self {
        Self { endpoint, order: 0 }
    }

    pub fn slope(endpoint: Endpoint) -> Self {
        Self { endpoint, order: 1 }
    }

    pub fn apply(&self, basis: &Basis1D, i: usize) -> f64 {
        let x = match self.endpoint {
            Endpoint::Left => 0.0,
            Endpoint::Right => basis.length(),
        };
        let jet = basis.eval(i, x);
        if self.order == 0 {
            jet.value
        } else {
            jet.d1
        }
    }
}

/// Boundary weight functionals `ψ_j`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSet {
    /// Piecewise constants `g_k` followed by piecewise linears `h_k(θ) = θ`
    /// (global angle) on `s` equal arcs; `2s` members.
    CirclePartition {
        segments: usize,
    },
    /// `cos((j-1)πz)`, `j = 1..=s`, on each edge (bottom, right, top, left);
    /// `4s` members, edge-major.
    SquareEdgeCosines {
        per_edge: usize,
    },
    Endpoint(Vec<EndpointFunctional>),
}

impl WeightSet {
    pub fn circle_partition(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument(
                "circle partition needs s >= 1".into(),
            ));
        }
        Ok(WeightSet::CirclePartition { segments: s })
    }

    pub fn square_edge_cosines(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("edge cosines need s >= 1".into()));
        }
        Ok(WeightSet::SquareEdgeCosines { per_edge: s })
    }

    pub fn endpoints(which: &[(Endpoint, u8)]) -> Result<Self> {
        which
            .iter()
            .map(|&(e, o)| EndpointFunctional::new(e, o))
            .collect::<Result<Vec<_>>>()
            .map(WeightSet::Endpoint)
    }

    pub fn len(&self) -> usize {
        match self {
            WeightSet::CirclePartition { segments } => 2 * segments,
            WeightSet::SquareEdgeCosines { per_edge } => 4 * per_edge,
            WeightSet::Endpoint(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Check that `bquad` can pair these weights: circle weights need a
    /// circle partition whose arcs refine theirs.
    pub fn check_quadrature(&self, bquad: &BoundaryQuadrature) -> Result<()> {
        match (self, bquad.kind()) {
            (WeightSet::CirclePartition { segments }, BoundaryKind::Circle { segments: q })
                if q % segments == 0 =>
            {
                Ok(())
            }
            (WeightSet::SquareEdgeCosines { .. }, BoundaryKind::SquareEdges) => Ok(()),
            _ => Err(Error::InvalidArgument(format!(
                "weight set {self:?} cannot be paired with boundary quadrature {:?}",
                bquad.kind()
            ))),
        }
    }

    /// Value of weight `j` at a boundary sample. Endpoint functionals have no
    /// boundary density and return `None`.
    pub fn density(
        &self,
        j: usize,
        sample: &BoundarySample,
        bquad_kind: BoundaryKind,
    ) -> Option<f64> {
        match *self {
            WeightSet::CirclePartition { segments } => {
                let q = match bquad_kind {
                    BoundaryKind::Circle { segments } => segments,
                    BoundaryKind::SquareEdges => return None,
                };
                let k = j % segments;
                let arc = sample.segment / (q / segments);
                if arc != k {
                    return Some(0.0);
                }
                Some(if j < segments { 1.0 } else { sample.param })
            }
            WeightSet::SquareEdgeCosines { per_edge } => {
                let edge = j / per_edge;
                if sample.segment != edge {
                    return Some(0.0);
                }
                let harmonic = (j % per_edge) as f64;
                Some((harmonic * PI * sample.param).cos())
            }
            WeightSet::Endpoint(_) => None,
        }
    }

    /// `⟨ψ_j, g⟩` for a boundary function `g` sampled at `bquad`.
    pub fn pair(
        &self,
        j: usize,
        bquad: &BoundaryQuadrature,
        g: impl Fn(&BoundarySample) -> f64,
    ) -> Result<f64> {
        self.check_quadrature(bquad)?;
        Ok(bquad.integrate(|s| self.density(j, s, bquad.kind()).expect("boundary weight") * g(s)))
    }

    pub fn label(&self, j: usize) -> String {
        match self {
            WeightSet::CirclePartition { segments } => {
                if j < *segments {
                    format!("g{j}")
                } else {
                    format!("h{}", j - segments)
                }
            }
            WeightSet::SquareEdgeCosines { per_edge } => {
                let edge = Edge::ALL[j / per_edge];
                format!("{edge:?}:cos({}πz)", j % per_edge)
            }
            WeightSet::Endpoint(v) => {
                let f = v[j];
                let at = match f.endpoint {
                    Endpoint::Left => "0",
                    Endpoint::Right => "ℓ",
                };
                if f.order == 0 {
                    format!("u({at})")
                } else {
                    format!("u'({at})")
                }
            }
        }
    }
}

/// The boundary map `Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOperator {
    /// Restriction to the boundary curve.
    Value,
    /// Outward normal derivative on the boundary curve.
    NormalDerivative,
    /// Endpoint values or slopes; which one is chosen per
    /// [`EndpointFunctional`].
    Endpoint,
}

impl TraceOperator {
    /// Trace of a 2D jet at a boundary sample.
    pub fn apply(&self, jet: &Jet2, sample: &BoundarySample) -> f64 {
        match self {
            TraceOperator::Value | TraceOperator::Endpoint => jet.value,
            TraceOperator::NormalDerivative => {
                jet.dx * sample.normal[0] + jet.dy * sample.normal[1]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{circle_partition, square_edges};

    fn fd_check_1d(b: &Basis1D, i: usize, x: f64) {
        let h = 1e-5;
        let jet = b.eval(i, x);
        let fp = b.eval(i, x + h).value;
        let fm = b.eval(i, x - h).value;
        let d1 = (fp - fm) / (2.0 * h);
        let d2 = (fp - 2.0 * jet.value + fm) / (h * h);
        let scale = 1.0 + jet.d1.abs();
        assert!(
            (d1 - jet.d1).abs() <= 1e-6 * scale,
            "{}: d1 {d1} vs {}",
            b.label(i),
            jet.d1
        );
        let d1p = b.eval(i, x + h).d1;
        let d1m = b.eval(i, x - h).d1;
        let d2c = (d1p - d1m) / (2.0 * h);
        let scale = 1.0 + jet.d2.abs();
        assert!(
            (d2c - jet.d2).abs() <= 1e-6 * scale,
            "{}: d2 {d2c} vs {}",
            b.label(i),
            jet.d2
        );
        // Second difference of values is much noisier; loose sanity bound only.
        assert!((d2 - jet.d2).abs() <= 1e-2 * scale);
    }

    #[test]
    fn cosine_examples() {
        let b = Basis1D::cosine(6, PI).unwrap();
        assert_eq!(
            b.eval(0, 1.3),
            Jet1 {
                value: 1.0,
                d1: 0.0,
                d2: 0.0
            }
        );
        assert!((b.eval(3, PI).value + 1.0).abs() < 1e-15);
        for n in 0..6 {
            assert_eq!(b.eval(n, 0.0).d1, 0.0);
            assert!(b.eval(n, PI).d1.abs() < 1e-14);
        }
    }

    #[test]
    fn augmented_examples() {
        let b = Basis1D::augmented_cosine(5, PI).unwrap();
        assert_eq!(b.eval(0, 2.0).value, 2.0);
        assert_eq!(b.eval(1, 2.0).value, 4.0);
        assert_eq!(b.eval(1, 0.7).d2, 2.0);
        assert_eq!(b.eval(2, 0.7).value, 1.0);
        assert!((b.eval(3, 0.7).value - 0.7f64.cos()).abs() < 1e-15);
        assert!((b.eval(4, 0.7).value - 1.4f64.cos()).abs() < 1e-15);
        assert_eq!(b.cosine_index(2), Some(4));
        assert_eq!(b.cosine_index(3), None);
        assert!(Basis1D::augmented_cosine(2, PI).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let bases = [
            Basis1D::cosine(8, PI).unwrap(),
            Basis1D::augmented_cosine(8, 1.0).unwrap(),
            Basis1D::monomial(6, 1.0).unwrap(),
            Basis1D::polynomials(vec![vec![0.0, PI, -1.0]], PI).unwrap(),
        ];
        for b in &bases {
            for _ in 0..100 {
                let x = rng.gen_range(0.05..0.95) * b.length();
                for i in 0..b.len() {
                    fd_check_1d(b, i, x);
                }
            }
        }
    }

    #[test]
    fn tensor_derivatives_match_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let b = Basis2D::tensor(
            Basis1D::augmented_cosine(5, 1.0).unwrap(),
            Basis1D::cosine(4, 1.0).unwrap(),
        );
        let h = 1e-5;
        for _ in 0..100 {
            let (x, y) = (rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
            for m in 0..b.len() {
                let j = b.eval(m, x, y);
                let dx = (b.eval(m, x + h, y).value - b.eval(m, x - h, y).value) / (2.0 * h);
                let dy = (b.eval(m, x, y + h).value - b.eval(m, x, y - h).value) / (2.0 * h);
                let dxx = (b.eval(m, x + h, y).dx - b.eval(m, x - h, y).dx) / (2.0 * h);
                let dyy = (b.eval(m, x, y + h).dy - b.eval(m, x, y - h).dy) / (2.0 * h);
                let dxy = (b.eval(m, x, y + h).dx - b.eval(m, x, y - h).dx) / (2.0 * h);
                for (fd, exact) in [
                    (dx, j.dx),
                    (dy, j.dy),
                    (dxx, j.dxx),
                    (dyy, j.dyy),
                    (dxy, j.dxy),
                ] {
                    assert!(
                        (fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()),
                        "{fd} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn monomial_2d_examples() {
        let b = Basis2D::monomial(3).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b.eval(b.index(0, 0), 0.3, -0.8).value, 1.0);
        // (i, j) = (3, 2) in one-based indexing is x²y.
        let m = b.index(2, 1);
        assert_eq!(b.eval(m, 1.0, 1.0).dxx, 2.0);
        assert_eq!(b.eval(m, 0.5, 0.25).value, 0.0625);
        let xy = b.index(1, 1);
        for (x, y) in [(0.0, 0.0), (0.3, -0.7), (2.0, 5.0)] {
            assert_eq!(b.eval(xy, x, y).dxy, 1.0);
        }
        assert!(b.supports(Domain2D::UnitDisk));
    }

    #[test]
    fn tensor_examples() {
        let c = Basis2D::tensor(
            Basis1D::cosine(3, 1.0).unwrap(),
            Basis1D::cosine(4, 1.0).unwrap(),
        );
        assert_eq!(c.len(), 12);
        assert_eq!(c.eval(0, 0.2, 0.9).value, 1.0);
        assert!(c.eval(c.index(1, 0), 0.5, 0.123).value.abs() < 1e-15);
        assert!(!c.supports(Domain2D::UnitDisk));
        assert!(c.supports(Domain2D::UnitSquare));

        let a = Basis2D::tensor(
            Basis1D::augmented_cosine(4, 1.0).unwrap(),
            Basis1D::augmented_cosine(4, 1.0).unwrap(),
        );
        // x · y² is member (x, y²) = (0, 1).
        let m = a.index(0, 1);
        assert!((a.eval(m, 0.3, 0.5).value - 0.3 * 0.25).abs() < 1e-16);
    }

    #[test]
    fn weight_counts_and_supports() {
        let w = WeightSet::circle_partition(2).unwrap();
        assert_eq!(w.len(), 4);
        let bq = circle_partition(2, 8).unwrap();
        // g_1 lives on [π, 2π].
        for s in bq.samples() {
            let g1 = w.density(1, s, bq.kind()).unwrap();
            assert_eq!(g1, if s.param >= PI { 1.0 } else { 0.0 });
        }
        let one = WeightSet::circle_partition(1).unwrap();
        let bq1 = circle_partition(1, 8).unwrap();
        assert!((one.pair(0, &bq1, |_| 1.0).unwrap() - 2.0 * PI).abs() < 1e-13);

        let sq = WeightSet::square_edge_cosines(3).unwrap();
        assert_eq!(sq.len(), 12);
        let eq = square_edges(10).unwrap();
        // (bottom, j = 1) pairs u(x, 0) against the constant 1.
        let v = sq
            .pair(0, &eq, |s| if s.segment == 0 { s.point[0] } else { 100.0 })
            .unwrap();
        assert!((v - 0.5).abs() < 1e-14);
        assert!(sq.pair(0, &bq1, |_| 1.0).is_err());

        let ends = WeightSet::endpoints(&[(Endpoint::Left, 0), (Endpoint::Right, 1)]).unwrap();
        assert_eq!(ends.len(), 2);
        assert!(WeightSet::endpoints(&[(Endpoint::Left, 2)]).is_err());
    }

    #[test]
    fn endpoint_functionals_on_cosines() {
        let b = Basis1D::cosine(9, PI).unwrap();
        for n in 0..9 {
            assert_eq!(EndpointFunctional::value(Endpoint::Left).apply(&b, n), 1.0);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((EndpointFunctional::value(Endpoint::Right).apply(&b, n) - sign).abs() < 1e-14);
            assert_eq!(EndpointFunctional::slope(Endpoint::Left).apply(&b, n), 0.0);
        }
    }

    #[test]
    fn value_trace_is_restriction() {
        let b = Basis2D::monomial(3).unwrap();
        let bq = circle_partition(3, 4).unwrap();
        for s in bq.samples() {
            for m in 0..b.len() {
                let jet = b.eval(m, s.point[0], s.point[1]);
                assert_eq!(TraceOperator::Value.apply(&jet, s), jet.value);
            }
        }
        // Normal derivative of x² + y² on the unit circle is 2.
        let s = &bq.samples()[5];
        let (x, y) = (s.point[0], s.point[1]);
        let jet = Jet2 {
            value: x * x + y * y,
            dx: 2.0 * x,
            dy: 2.0 * y,
            ..Jet2::default()
        };
        assert!((TraceOperator::NormalDerivative.apply(&jet, s) - 2.0).abs() < 1e-14);
    }
}

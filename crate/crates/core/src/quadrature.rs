//! Deterministic Gauss quadrature on intervals, the unit square, the unit disk
//! and the partitioned boundaries of the circle and the square.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Gauss-Legendre order used per panel by the default 1D and square rules.
pub const DEFAULT_ORDER: usize = 10;
/// Lower bound on the panel count of the default composite rules.
pub const DEFAULT_MIN_PANELS: usize = 4;
pub const DEFAULT_DISK_RADIAL: usize = 32;
pub const DEFAULT_DISK_ANGULAR: usize = 64;
pub const DEFAULT_CIRCLE_SEGMENT_ORDER: usize = 24;
pub const DEFAULT_EDGE_ORDER: usize = 48;

/// Panel count of the default composite rule for a basis with `n` members per axis.
pub fn default_panels(n: usize) -> usize {
    n.max(DEFAULT_MIN_PANELS)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl QuadratureRule1D {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the `order`-point Gauss-Legendre rule on [-1, 1],
/// nodes ascending.
fn reference_gauss(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, refined by Newton.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `order`-point Gauss-Legendre rule on `[a, b]`, exact for polynomials of
/// degree `2 order - 1`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<QuadratureRule1D> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "quadrature order must be >= 1".into(),
        ));
    }
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidArgument(format!(
            "quadrature interval [{a}, {b}] is empty or not finite"
        )));
    }
    let (xs, ws) = reference_gauss(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule1D {
        nodes: xs.iter().map(|&x| mid + half * x).collect(),
        weights: ws.iter().map(|&w| half * w).collect(),
        a,
        b,
    })
}

/// The `order`-point Gauss rule repeated on `panels` equal subintervals of `[a, b]`.
pub fn composite_rule(order: usize, panels: usize, a: f64, b: f64) -> Result<QuadratureRule1D> {
    if panels == 0 {
        return Err(Error::InvalidArgument("panel count must be >= 1".into()));
    }
    // Validates order and interval.
    gauss_legendre(order, a, b)?;
    let (xs, ws) = reference_gauss(order);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        for (&x, &w) in xs.iter().zip(&ws) {
            nodes.push(mid + 0.5 * width * x);
            weights.push(0.5 * width * w);
        }
    }
    Ok(QuadratureRule1D {
        nodes,
        weights,
        a,
        b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain2D {
    UnitSquare,
    UnitDisk,
}

impl Domain2D {
    pub fn area(self) -> f64 {
        match self {
            Domain2D::UnitSquare => 1.0,
            Domain2D::UnitDisk => PI,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule2D {
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
    domain: Domain2D,
}

impl QuadratureRule2D {
    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> Domain2D {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| w * f(p[0], p[1]))
            .sum()
    }
}

/// Product rule on the unit square; both factors must live on `[0, 1]`.
pub fn tensor_square(
    rule_x: &QuadratureRule1D,
    rule_y: &QuadratureRule1D,
) -> Result<QuadratureRule2D> {
    for r in [rule_x, rule_y] {
        if r.interval() != (0.0, 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tensor_square needs rules on [0, 1], got {:?}",
                r.interval()
            )));
        }
    }
    let mut points = Vec::with_capacity(rule_x.len() * rule_y.len());
    let mut weights = Vec::with_capacity(points.capacity());
    for (&x, &wx) in rule_x.nodes.iter().zip(&rule_x.weights) {
        for (&y, &wy) in rule_y.nodes.iter().zip(&rule_y.weights) {
            points.push([x, y]);
            weights.push(wx * wy);
        }
    }
    Ok(QuadratureRule2D {
        points,
        weights,
        domain: Domain2D::UnitSquare,
    })
}

/// Default square rule: composite Gauss with `default_panels(n)` panels per axis.
pub fn default_square(n: usize) -> QuadratureRule2D {
    let r = composite_rule(DEFAULT_ORDER, default_panels(n), 0.0, 1.0).expect("valid default rule");
    tensor_square(&r, &r).expect("both factors on [0, 1]")
}

/// Polar product rule on the unit disk: Gauss in `r` (with the Jacobian `r`
/// folded into the weights) times the uniform rule in `θ`.
pub fn polar_disk(radial_order: usize, angular_count: usize) -> Result<QuadratureRule2D> {
    if radial_order == 0 {
        return Err(Error::InvalidArgument("radial order must be >= 1".into()));
    }
    if angular_count < 4 {
        return Err(Error::InvalidArgument("angular count must be >= 4".into()));
    }
    let radial = gauss_legendre(radial_order, 0.0, 1.0)?;
    let dtheta = 2.0 * PI / angular_count as f64;
    let mut points = Vec::with_capacity(radial_order * angular_count);
    let mut weights = Vec::with_capacity(points.capacity());
    for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
        for k in 0..angular_count {
            let theta = dtheta * k as f64;
            points.push([r * theta.cos(), r * theta.sin()]);
            weights.push(wr * r * dtheta);
        }
    }
    Ok(QuadratureRule2D {
        points,
        weights,
        domain: Domain2D::UnitDisk,
    })
}

/// Which boundary a [`BoundaryQuadrature`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Unit circle split into `segments` equal arcs.
    Circle { segments: usize },
    /// The four edges of the unit square: bottom, right, top, left.
    SquareEdges,
}

/// Square edges in the order used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Bottom,
    Right,
    Top,
    Left,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Bottom, Edge::Right, Edge::Top, Edge::Left];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Point of the edge at parameter `z ∈ [0, 1]`.
    pub fn point(self, z: f64) -> [f64; 2] {
        match self {
            Edge::Bottom => [z, 0.0],
            Edge::Right => [1.0, z],
            Edge::Top => [z, 1.0],
            Edge::Left => [0.0, z],
        }
    }

    pub fn outward_normal(self) -> [f64; 2] {
        match self {
            Edge::Bottom => [0.0, -1.0],
            Edge::Right => [1.0, 0.0],
            Edge::Top => [0.0, 1.0],
            Edge::Left => [-1.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    /// `θ` on the circle, `z` along a square edge.
    pub param: f64,
    /// Arc index on the circle, edge index on the square.
    pub segment: usize,
    pub point: [f64; 2],
    pub normal: [f64; 2],
    /// Arc-length weight.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryQuadrature {
    kind: BoundaryKind,
    samples: Vec<BoundarySample>,
}

impl BoundaryQuadrature {
    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    pub fn samples(&self) -> &[BoundarySample] {
        &self.samples
    }

    pub fn total_weight(&self) -> f64 {
        self.samples.iter().map(|s| s.weight).sum()
    }

    pub fn integrate(&self, f: impl Fn(&BoundarySample) -> f64) -> f64 {
        self.samples.iter().map(|s| s.weight * f(s)).sum()
    }
}

/// Gauss nodes in `θ` on each arc `[2πk/s, 2π(k+1)/s]` of the unit circle.
pub fn circle_partition(s: usize, per_segment_order: usize) -> Result<BoundaryQuadrature> {
    if s == 0 {
        return Err(Error::InvalidArgument("segment count must be >= 1".into()));
    }
    let arc = 2.0 * PI / s as f64;
    let mut samples = Vec::with_capacity(s * per_segment_order);
    for k in 0..s {
        let rule = gauss_legendre(per_segment_order, arc * k as f64, arc * (k + 1) as f64)?;
        for (&theta, &w) in rule.nodes.iter().zip(&rule.weights) {
            let (sn, cs) = theta.sin_cos();
            samples.push(BoundarySample {
                param: theta,
                segment: k,
                point: [cs, sn],
                normal: [cs, sn],
                weight: w,
            });
        }
    }
    Ok(BoundaryQuadrature {
        kind: BoundaryKind::Circle { segments: s },
        samples,
    })
}

/// One Gauss rule in `z ∈ [0, 1]` per edge of the unit square.
pub fn square_edges(per_edge_order: usize) -> Result<BoundaryQuadrature> {
    let rule = gauss_legendre(per_edge_order, 0.0, 1.0)?;
    let mut samples = Vec::with_capacity(4 * per_edge_order);
    for edge in Edge::ALL {
        for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
            samples.push(BoundarySample {
                param: z,
                segment: edge.index(),
                point: edge.point(z),
                normal: edge.outward_normal(),
                weight: w,
            });
        }
    }
    Ok(BoundaryQuadrature {
        kind: BoundaryKind::SquareEdges,
        samples,
    })
}

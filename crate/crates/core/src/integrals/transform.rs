use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Exact, Scalar};

/// Declared properties of a unary transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "nondecreasing")]
    Nondecreasing,
    #[serde(rename = "vanishes-at-0")]
    VanishesAtZero,
    #[serde(rename = "odd")]
    Odd,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Nondecreasing => "nondecreasing",
            Property::VanishesAtZero => "vanishes-at-0",
            Property::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Identity,
    /// Linear interpolation through strictly increasing `(x, y)` breakpoints.
    /// Undefined outside `[x_first, x_last]`.
    PiecewiseLinear(Vec<(Scalar, Scalar)>),
    /// `x ↦ slope · x`
    Linear(Scalar),
    /// `x ↦ x³`
    Cube,
    Constant(Scalar),
}

/// A unary transform `φ` together with the properties it is declared to have.
///
/// Declared properties are verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformFn {
    shape: Shape,
    properties: BTreeSet<Property>,
}

impl TransformFn {
    pub fn identity() -> TransformFn {
        TransformFn {
            shape: Shape::Identity,
            properties: [Property::Nondecreasing, Property::VanishesAtZero, Property::Odd].into(),
        }
    }

    pub fn piecewise(
        points: Vec<(Scalar, Scalar)>,
        properties: impl IntoIterator<Item = Property>,
    ) -> Result<TransformFn> {
        if points.is_empty() {
            return Err(Error::BadBreakpoints("no breakpoints".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::BadBreakpoints(format!(
                "abscissae must increase strictly ({} then {})",
                w[0].0, w[1].0
            )));
        }
        Self::with_properties(Shape::PiecewiseLinear(points), properties)
    }

    pub fn named(shape: Shape, properties: impl IntoIterator<Item = Property>) -> Result<TransformFn> {
        if let Shape::PiecewiseLinear(points) = shape {
            return Self::piecewise(points, properties);
        }
        Self::with_properties(shape, properties)
    }

    fn with_properties(shape: Shape, properties: impl IntoIterator<Item = Property>) -> Result<TransformFn> {
        let phi = TransformFn { shape, properties: properties.into_iter().collect() };
        for &p in &phi.properties {
            phi.verify(p)?;
        }
        Ok(phi)
    }

    fn verify(&self, property: Property) -> Result<()> {
        let violated = |detail: String| Err(Error::PhiPropertyViolated { property, detail });
        match (&self.shape, property) {
            (Shape::Identity | Shape::Cube, _) => Ok(()),
            (Shape::Linear(slope), Property::Nondecreasing) if slope.is_negative() => {
                violated(format!("slope {slope} is negative"))
            }
            (Shape::Linear(_), _) => Ok(()),
            (Shape::Constant(_), Property::Nondecreasing) => Ok(()),
            (Shape::Constant(c), _) if !c.is_zero() => violated(format!("constant {c} is not 0")),
            (Shape::Constant(_), _) => Ok(()),
            (Shape::PiecewiseLinear(points), Property::Nondecreasing) => {
                match points.windows(2).find(|w| w[0].1 > w[1].1) {
                    Some(w) => violated(format!("φ({}) = {} > φ({}) = {}", w[0].0, w[0].1, w[1].0, w[1].1)),
                    None => Ok(()),
                }
            }
            (Shape::PiecewiseLinear(_), Property::VanishesAtZero) => match self.eval(&scalar::zero()) {
                Ok(v) if v.is_zero() => Ok(()),
                Ok(v) => violated(format!("φ(0) = {v}")),
                Err(_) => violated("0 lies outside the breakpoint range".into()),
            },
            (Shape::PiecewiseLinear(points), Property::Odd) => {
                for (x, y) in points {
                    let mirrored = (-x.clone(), -y.clone());
                    if !points.contains(&mirrored) {
                        return violated(format!("breakpoint ({x}, {y}) has no mirror image"));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn properties(&self) -> &BTreeSet<Property> {
        &self.properties
    }

    pub fn has(&self, property: Property) -> bool {
        self.properties.contains(&property)
    }

    pub fn require(&self, property: Property) -> Result<()> {
        if self.has(property) {
            Ok(())
        } else {
            Err(Error::PhiMissingProperty(property))
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.shape, Shape::Identity)
    }

    /// Breakpoint range, or `None` for transforms defined on all of `R`.
    pub fn domain(&self) -> Option<(&Scalar, &Scalar)> {
        match &self.shape {
            Shape::PiecewiseLinear(points) => Some((&points[0].0, &points[points.len() - 1].0)),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        match &self.shape {
            Shape::Identity => Ok(x.clone()),
            Shape::Linear(slope) => Ok(slope * x),
            Shape::Cube => Ok(x * x * x),
            Shape::Constant(c) => Ok(c.clone()),
            Shape::PiecewiseLinear(points) => interpolate(points, x),
        }
    }

    pub fn from_json(text: &str) -> Result<TransformFn> {
        serde_json::from_str::<TransformFile>(text)?.into_transform()
    }

    pub fn to_file(&self) -> TransformFile {
        let (breakpoints, named, parameter) = match &self.shape {
            Shape::PiecewiseLinear(points) => {
                (Some(points.iter().map(|(x, y)| [Exact(x.clone()), Exact(y.clone())]).collect()), None, None)
            }
            Shape::Identity => (None, Some("identity".to_string()), None),
            Shape::Cube => (None, Some("cube".to_string()), None),
            Shape::Linear(s) => (None, Some("linear".to_string()), Some(Exact(s.clone()))),
            Shape::Constant(c) => (None, Some("constant".to_string()), Some(Exact(c.clone()))),
        };
        TransformFile { breakpoints, named, parameter, properties: self.properties.iter().copied().collect() }
    }
}

fn interpolate(points: &[(Scalar, Scalar)], x: &Scalar) -> Result<Scalar> {
    let first = &points[0];
    let last = &points[points.len() - 1];
    if x < &first.0 || x > &last.0 {
        return Err(Error::PhiOutsideDomain(x.to_string()));
    }
    // first breakpoint with abscissa >= x
    let idx = points.partition_point(|(px, _)| px < x);
    let (x1, y1) = &points[idx];
    if x1 == x || idx == 0 {
        return Ok(y1.clone());
    }
    let (x0, y0) = &points[idx - 1];
    Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
}

/// JSON form of a transform.
///
/// `{"breakpoints": [["0","0"],["1/2","1"]], "properties": ["nondecreasing","vanishes-at-0"]}`
/// or `{"named": "linear", "parameter": "2", "properties": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TransformFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakpoints: Option<Vec<[Exact; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Exact>,
    #[serde(default)]
    pub properties: Vec<Property>,
}

impl TransformFile {
    pub fn into_transform(self) -> Result<TransformFn> {
        let props = self.properties;
        match (self.breakpoints, self.named.as_deref(), self.parameter) {
            (Some(points), None, None) => {
                TransformFn::piecewise(points.into_iter().map(|[x, y]| (x.0, y.0)).collect(), props)
            }
            (None, Some("identity"), None) => TransformFn::named(Shape::Identity, props),
            (None, Some("cube"), None) => TransformFn::named(Shape::Cube, props),
            (None, Some("linear"), Some(p)) => TransformFn::named(Shape::Linear(p.0), props),
            (None, Some("constant"), Some(p)) => TransformFn::named(Shape::Constant(p.0), props),
            _ => Err(Error::Parse(
                "transform needs either `breakpoints` or a known `named` form with its `parameter`".into(),
            )),
        }
    }
}

//! Schläfli symbols `{p,q,r}` and the classification of the honeycombs they
//! describe.
//!
//! Geometry follows from comparing `cos(π/q)` against `sin(π/p)·sin(π/r)`.
//! Vertex and cell types follow from the geometry of the vertex figure
//! `{q,r}` and the cell `{p,q}`, i.e. from the sign of `(x-2)(y-2) - 4`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Absolute tolerance on `cos(π/q) - sin(π/p)·sin(π/r)` for finite symbols.
pub const EUCLIDEAN_TOLERANCE: f64 = 1e-12;

/// A Schläfli term: an integer `>= 3` or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedInt {
    Finite(u32),
    Infinity,
}

impl ExtendedInt {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::TermOutOfRange(n.to_string()));
        }
        Ok(ExtendedInt::Finite(n))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedInt::Infinity)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtendedInt::Finite(n) => Some(n),
            ExtendedInt::Infinity => None,
        }
    }

    /// `π/n`, which is exactly zero for infinity.
    pub fn angle(self) -> f64 {
        match self {
            ExtendedInt::Finite(n) => PI / n as f64,
            ExtendedInt::Infinity => 0.0,
        }
    }

    pub fn sin_angle(self) -> f64 {
        match self {
            ExtendedInt::Finite(n) => (PI / n as f64).sin(),
            ExtendedInt::Infinity => 0.0,
        }
    }

    pub fn cos_angle(self) -> f64 {
        match self {
            ExtendedInt::Finite(n) => (PI / n as f64).cos(),
            ExtendedInt::Infinity => 1.0,
        }
    }

    /// Single-character form used in file names: digits, or `i` for infinity.
    pub fn file_tag(self) -> String {
        match self {
            ExtendedInt::Finite(n) => n.to_string(),
            ExtendedInt::Infinity => "i".to_string(),
        }
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::Finite(n) => write!(f, "{n}"),
            ExtendedInt::Infinity => f.write_str("∞"),
        }
    }
}

impl FromStr for ExtendedInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "i" | "inf" | "∞" => return Ok(ExtendedInt::Infinity),
            _ => {}
        }
        if t.is_empty() {
            return Err(Error::MalformedSymbol(s.to_string()));
        }
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::MalformedSymbol(s.to_string()));
        }
        if t.starts_with('-') {
            return Err(Error::TermOutOfRange(t.to_string()));
        }
        match t.parse::<u32>() {
            Ok(n) if n < 3 => Err(Error::TermOutOfRange(t.to_string())),
            Ok(n) => Ok(ExtendedInt::Finite(n)),
            Err(_) => Err(Error::MalformedSymbol(s.to_string())),
        }
    }
}

/// The quantity `(x-2)(y-2)` compared against 4.
fn pair_class(x: ExtendedInt, y: ExtendedInt) -> std::cmp::Ordering {
    match (x, y) {
        (ExtendedInt::Finite(a), ExtendedInt::Finite(b)) => {
            ((a as i64 - 2) * (b as i64 - 2)).cmp(&4)
        }
        // Any infinite factor against a finite term >= 3 (or another
        // infinity) diverges.
        _ => std::cmp::Ordering::Greater,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        })
    }
}

/// Whether a vertex or cell lies inside space, on its boundary, or beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementType {
    Material,
    Ideal,
    Hyperideal,
}

impl fmt::Display for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementType::Material => "material",
            ElementType::Ideal => "ideal",
            ElementType::Hyperideal => "hyperideal",
        })
    }
}

impl From<std::cmp::Ordering> for ElementType {
    fn from(o: std::cmp::Ordering) -> Self {
        match o {
            std::cmp::Ordering::Less => ElementType::Material,
            std::cmp::Ordering::Equal => ElementType::Ideal,
            std::cmp::Ordering::Greater => ElementType::Hyperideal,
        }
    }
}

/// Geometry of the two-dimensional tiling `{p,q}`.
pub fn classify_2d(p: ExtendedInt, q: ExtendedInt) -> Geometry {
    match pair_class(p, q) {
        std::cmp::Ordering::Less => Geometry::Spherical,
        std::cmp::Ordering::Equal => Geometry::Euclidean,
        std::cmp::Ordering::Greater => Geometry::Hyperbolic,
    }
}

/// Dihedral angle of the polyhedron `{p,q}`.
pub fn dihedral_angle(p: ExtendedInt, q: ExtendedInt) -> Result<f64> {
    let not_poly = || Error::NotAPolyhedron(p.to_string(), q.to_string());
    if p.is_infinite() || q.is_infinite() || classify_2d(p, q) == Geometry::Hyperbolic {
        return Err(not_poly());
    }
    let arg = q.cos_angle() / p.sin_angle();
    if arg > 1.0 + 1e-12 {
        return Err(not_poly());
    }
    Ok(2.0 * arg.min(1.0).asin())
}

/// A rank-3 Schläfli symbol `{p,q,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchlafliSymbol {
    pub p: ExtendedInt,
    pub q: ExtendedInt,
    pub r: ExtendedInt,
}

impl SchlafliSymbol {
    pub fn new(p: ExtendedInt, q: ExtendedInt, r: ExtendedInt) -> Self {
        SchlafliSymbol { p, q, r }
    }

    /// Convenience constructor for finite symbols; `0` stands for infinity.
    pub fn from_ints(p: u32, q: u32, r: u32) -> Result<Self> {
        let term = |n: u32| {
            if n == 0 {
                Ok(ExtendedInt::Infinity)
            } else {
                ExtendedInt::new(n)
            }
        };
        Ok(SchlafliSymbol::new(term(p)?, term(q)?, term(r)?))
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn dual(self) -> Self {
        SchlafliSymbol::new(self.r, self.q, self.p)
    }

    pub fn geometry(self) -> Geometry {
        classify_3d(self)
    }

    pub fn vertex_type(self) -> ElementType {
        vertex_type(self)
    }

    pub fn cell_type(self) -> ElementType {
        cell_type(self)
    }

    /// File stem such as `43i` for `{4,3,∞}`.
    pub fn file_stem(self) -> String {
        format!("{}{}{}", self.p.file_tag(), self.q.file_tag(), self.r.file_tag())
    }
}

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.p, self.q, self.r)
    }
}

impl FromStr for SchlafliSymbol {
    type Err = Error;

    /// Accepts `{p,q,r}`, `p,q,r` and `p-q-r`, plus the compact
    /// three-character file form such as `437` or `i33`.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let malformed = || Error::MalformedSymbol(text.to_string());
        let body = match (compact.strip_prefix('{'), compact.ends_with('}')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => compact.as_str(),
            _ => return Err(malformed()),
        };
        let chars: Vec<String>;
        let terms: Vec<&str> = if body.contains(',') {
            body.split(',').collect()
        } else if body.contains('-') {
            body.split('-').collect()
        } else if body.chars().count() == 3
            && body.chars().all(|c| c.is_ascii_digit() || c == 'i' || c == '∞')
        {
            chars = body.chars().map(String::from).collect::<Vec<_>>();
            chars.iter().map(String::as_str).collect()
        } else {
            return Err(malformed());
        };
        if terms.len() != 3 {
            return Err(malformed());
        }
        let parsed = terms
            .iter()
            .map(|t| t.parse::<ExtendedInt>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::MalformedSymbol(_) => malformed(),
                other => other,
            })?;
        Ok(SchlafliSymbol::new(parsed[0], parsed[1], parsed[2]))
    }
}

/// Geometry of the honeycomb `{p,q,r}`.
pub fn classify_3d(s: SchlafliSymbol) -> Geometry {
    // Any infinite term forces the hyperbolic case: q = ∞ gives 1 > sin·sin,
    // and p or r = ∞ gives cos(π/q) > 0.
    if s.p.is_infinite() || s.q.is_infinite() || s.r.is_infinite() {
        return Geometry::Hyperbolic;
    }
    let lhs = s.q.cos_angle();
    let rhs = s.p.sin_angle() * s.r.sin_angle();
    let diff = lhs - rhs;
    if diff.abs() <= EUCLIDEAN_TOLERANCE {
        Geometry::Euclidean
    } else if diff < 0.0 {
        Geometry::Spherical
    } else {
        Geometry::Hyperbolic
    }
}

/// Vertex type, from the vertex figure `{q,r}`.
pub fn vertex_type(s: SchlafliSymbol) -> ElementType {
    pair_class(s.r, s.q).into()
}

/// Cell type, from the cell `{p,q}`.
pub fn cell_type(s: SchlafliSymbol) -> ElementType {
    pair_class(s.p, s.q).into()
}

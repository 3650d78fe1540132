//! Exact piecewise-linear bijections `[0, m] -> [0, n]` whose breakpoints are
//! dyadic and whose slopes are integer powers of two.
//!
//! These form a strict monoidal category (tensor is juxtaposition) with the
//! idempotent object `1` and `α: 2 -> 1`, division by two. `F` is `Aut(1)`.
//! The model is independent of the span machinery and is used to check it.

mod model;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dyadic::{Dyadic, DyadicError};

pub use model::mu_forest;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("a PL map needs at least one breakpoint")]
    NoPoints,
    #[error("breakpoints must run from (0,0) to ({m},{n})")]
    WrongEndpoints { m: String, n: String },
    #[error("breakpoints are not strictly increasing at index {0}")]
    NonMonotone(usize),
    #[error("slope of piece {index} is {dy} / {dx}, not a power of two")]
    SlopeNotPowerOfTwo {
        index: usize,
        dx: Dyadic,
        dy: Dyadic,
    },
    #[error("cannot compose {inner_dst} -> ... with a map out of {outer_src}")]
    ObjectMismatch { outer_src: usize, inner_dst: usize },
    #[error("the PL model only exists for binary trees, got arity {0}")]
    UnsupportedArity(usize),
    #[error("malformed breakpoint `{0}`")]
    Malformed(String),
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
}

/// A canonical PL bijection: breakpoints strictly increasing in both
/// coordinates, no three consecutive points collinear.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    src: usize,
    dst: usize,
    points: Vec<(Dyadic, Dyadic)>,
    /// `log2` of the slope of each piece.
    slopes: Vec<i64>,
}

impl PlMap {
    /// Validates and canonicalises a list of breakpoints.
    pub fn new(m: usize, n: usize, points: Vec<(Dyadic, Dyadic)>) -> Result<PlMap, PlError> {
        let wrong = || PlError::WrongEndpoints {
            m: m.to_string(),
            n: n.to_string(),
        };
        let (first, last) = match (points.first(), points.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(PlError::NoPoints),
        };
        if !first.0.is_zero() || !first.1.is_zero() {
            return Err(wrong());
        }
        if last.0 != Dyadic::from(m) || last.1 != Dyadic::from(n) {
            return Err(wrong());
        }
        if (m == 0) != (n == 0) {
            return Err(wrong());
        }
        if m == 0 {
            if points.len() != 1 {
                return Err(PlError::NonMonotone(1));
            }
            return Ok(PlMap::identity(0));
        }
        let mut slopes = Vec::with_capacity(points.len() - 1);
        for (i, w) in points.windows(2).enumerate() {
            let dx = &w[1].0 - &w[0].0;
            let dy = &w[1].1 - &w[0].1;
            if !dx.is_positive() || !dy.is_positive() {
                return Err(PlError::NonMonotone(i + 1));
            }
            let k = Dyadic::log2_ratio(&dy, &dx).map_err(|_| PlError::SlopeNotPowerOfTwo {
                index: i,
                dx,
                dy,
            })?;
            slopes.push(k);
        }
        Ok(PlMap::canonical(m, n, points, slopes))
    }

    /// Drops breakpoints between pieces of equal slope.
    fn canonical(src: usize, dst: usize, points: Vec<(Dyadic, Dyadic)>, slopes: Vec<i64>) -> PlMap {
        let mut out_pts = Vec::with_capacity(points.len());
        let mut out_slopes: Vec<i64> = Vec::with_capacity(slopes.len());
        let mut pts = points.into_iter();
        out_pts.push(pts.next().expect("non-empty"));
        for (p, s) in pts.zip(slopes) {
            if out_slopes.last() == Some(&s) {
                *out_pts.last_mut().unwrap() = p;
            } else {
                out_pts.push(p);
                out_slopes.push(s);
            }
        }
        PlMap {
            src,
            dst,
            points: out_pts,
            slopes: out_slopes,
        }
    }

    /// Builds from breakpoints already known to be increasing with
    /// power-of-two slopes.
    fn from_trusted(src: usize, dst: usize, points: Vec<(Dyadic, Dyadic)>) -> PlMap {
        if src == 0 {
            return PlMap::identity(0);
        }
        let slopes = points
            .windows(2)
            .map(|w| {
                Dyadic::log2_ratio(&(&w[1].1 - &w[0].1), &(&w[1].0 - &w[0].0))
                    .expect("power-of-two slope")
            })
            .collect();
        PlMap::canonical(src, dst, points, slopes)
    }

    pub fn identity(m: usize) -> PlMap {
        if m == 0 {
            return PlMap {
                src: 0,
                dst: 0,
                points: vec![(Dyadic::zero(), Dyadic::zero())],
                slopes: Vec::new(),
            };
        }
        let e = Dyadic::from(m);
        PlMap {
            src: m,
            dst: m,
            points: vec![(Dyadic::zero(), Dyadic::zero()), (e.clone(), e)],
            slopes: vec![0],
        }
    }

    /// `α: [0,2] -> [0,1]`, division by two.
    pub fn halving() -> PlMap {
        PlMap {
            src: 2,
            dst: 1,
            points: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::from(2i64), Dyadic::one()),
            ],
            slopes: vec![-1],
        }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn points(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    /// `log2` of each piece's slope.
    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.slopes.iter().all(|&s| s == 0)
    }

    /// Index of the piece containing `x` (the left one at a breakpoint).
    fn piece_at(&self, x: &Dyadic) -> usize {
        let idx = self.points.partition_point(|(px, _)| px < x);
        idx.saturating_sub(1)
            .min(self.slopes.len().saturating_sub(1))
    }

    /// `f(x)` for `x ∈ [0, src]`.
    pub fn apply(&self, x: &Dyadic) -> Dyadic {
        if self.slopes.is_empty() {
            return x.clone();
        }
        let i = self.piece_at(x);
        let (x0, y0) = &self.points[i];
        y0 + &(x - x0).scale_pow2(self.slopes[i])
    }

    /// `f⁻¹(y)` for `y ∈ [0, dst]`.
    pub fn apply_inverse(&self, y: &Dyadic) -> Dyadic {
        if self.slopes.is_empty() {
            return y.clone();
        }
        let idx = self.points.partition_point(|(_, py)| py < y);
        let i = idx.saturating_sub(1).min(self.slopes.len() - 1);
        let (x0, y0) = &self.points[i];
        x0 + &(y - y0).scale_pow2(-self.slopes[i])
    }

    /// Whether some breakpoint lies strictly between `lo` and `hi`.
    pub(crate) fn has_break_inside(&self, lo: &Dyadic, hi: &Dyadic) -> bool {
        let idx = self.points.partition_point(|(px, _)| px <= lo);
        self.points.get(idx).is_some_and(|(px, _)| px < hi)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &PlMap) -> Result<PlMap, PlError> {
        if f.dst != self.src {
            return Err(PlError::ObjectMismatch {
                outer_src: self.src,
                inner_dst: f.dst,
            });
        }
        if f.src == 0 {
            return Ok(PlMap::identity(0));
        }
        let mut xs: Vec<Dyadic> = f.points.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.points.iter().map(|(x, _)| f.apply_inverse(x)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.apply(&f.apply(&x));
                (x, y)
            })
            .collect();
        Ok(PlMap::from_trusted(f.src, self.dst, points))
    }

    pub fn inverse(&self) -> PlMap {
        PlMap {
            src: self.dst,
            dst: self.src,
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
            slopes: self.slopes.iter().map(|s| -s).collect(),
        }
    }

    /// Juxtaposition: `self` on `[0, m1]`, `other` shifted to `[m1, m1 + m2]`.
    pub fn tensor(&self, other: &PlMap) -> PlMap {
        if self.src == 0 {
            return other.clone();
        }
        if other.src == 0 {
            return self.clone();
        }
        let (dx, dy) = (Dyadic::from(self.src), Dyadic::from(self.dst));
        let mut points = self.points.clone();
        points.extend(other.points.iter().skip(1).map(|(x, y)| (x + &dx, y + &dy)));
        let mut slopes = self.slopes.clone();
        slopes.extend_from_slice(&other.slopes);
        PlMap::canonical(self.src + other.src, self.dst + other.dst, points, slopes)
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}:{y}")?;
        }
        Ok(())
    }
}

/// `x:y,x:y,...`; the objects are read off the last breakpoint.
impl FromStr for PlMap {
    type Err = PlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let points = s
            .split(',')
            .map(|pair| {
                let (x, y) = pair
                    .split_once(':')
                    .ok_or_else(|| PlError::Malformed(pair.trim().to_string()))?;
                Ok((x.parse::<Dyadic>()?, y.parse::<Dyadic>()?))
            })
            .collect::<Result<Vec<_>, PlError>>()?;
        let (lx, ly) = points.last().ok_or(PlError::NoPoints)?;
        let as_object = |v: &Dyadic| v.to_i64().filter(|&k| k >= 0).map(|k| k as usize);
        let (Some(m), Some(n)) = (as_object(lx), as_object(ly)) else {
            return Err(PlError::WrongEndpoints {
                m: lx.to_string(),
                n: ly.to_string(),
            });
        };
        PlMap::new(m, n, points)
    }
}

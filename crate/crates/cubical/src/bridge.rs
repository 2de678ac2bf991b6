//! Gromov products, four-point hyperbolicity defects on finite balls, and the
//! Roller-to-Gromov comparison for eventually periodic rays.

use std::fmt;

use crate::ball::ball_around;
use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::distance;
use crate::invariants::{streams_equal, EventuallyPeriodic};
use crate::rays::{develop, separating_hyperplanes, PeriodicRay, SeparatorVerdict};
use crate::words::{GroupElement, Raag};

/// An exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> HalfInt {
        HalfInt { twice }
    }

    pub fn zero() -> HalfInt {
        HalfInt { twice: 0 }
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `(x, y)_base = ½ (d(x, base) + d(y, base) − d(x, y))`, exact.
pub fn gromov_product(raag: &Raag, x: &GroupElement, y: &GroupElement, base: &GroupElement) -> HalfInt {
    let twice = distance(raag, x, base) as i64 + distance(raag, y, base) as i64
        - distance(raag, x, y) as i64;
    debug_assert!(twice >= 0);
    HalfInt { twice }
}

/// The largest four-point defect `min{(x,y)_w, (y,z)_w} − (x,z)_w` over the
/// ball of the given radius, floored at 0. Exact for the ball; a lower bound
/// for the whole space.
pub fn delta_estimate(raag: &Raag, center: &GroupElement, radius: usize, cap: usize) -> Result<HalfInt> {
    if radius > cap {
        return Err(Error::CapExceeded(radius, cap));
    }
    let pts = ball_around(raag, center, radius);
    let n = pts.len();
    let mut dist = vec![0u32; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(raag, &pts[i], &pts[j]) as u32;
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let best = exec::max_over(n, |w| {
        let mut worst: i64 = 0;
        for x in 0..n {
            let dxw = dist[x * n + w] as i64;
            for y in 0..n {
                let xy = dxw + dist[y * n + w] as i64 - dist[x * n + y] as i64;
                for z in 0..n {
                    let yz = dist[y * n + w] as i64 + dist[z * n + w] as i64 - dist[y * n + z] as i64;
                    let xz = dxw + dist[z * n + w] as i64 - dist[x * n + z] as i64;
                    let defect = xy.min(yz) - xz;
                    if defect > worst {
                        worst = defect;
                    }
                }
            }
        }
        worst
    })
    .unwrap_or(0);
    Ok(HalfInt { twice: best.max(0) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryVerdict {
    Equal,
    /// Gromov products along the prefixes stayed at or below the witnessed
    /// bound over the second half of the horizon.
    Distinct { witnessed_bound: HalfInt },
    Indeterminate,
}

/// Do two rays converge to the same Gromov boundary point?
///
/// Exact when the defining graph has no edges (tree case: ends coincide iff
/// the letter streams coincide). In general: a certified finite separating
/// set forces equality; stagnating Gromov products witness distinctness; and
/// otherwise the verdict is indeterminate.
pub fn gromov_boundary_equal(
    raag: &Raag,
    ray1: &PeriodicRay,
    ray2: &PeriodicRay,
    horizon: usize,
) -> Result<BoundaryVerdict> {
    if raag.graph().edge_count() == 0 {
        develop(raag, ray1, 2 * ray1.period.len())?;
        develop(raag, ray2, 2 * ray2.period.len())?;
        let stream = |ray: &PeriodicRay| {
            EventuallyPeriodic::new(ray.base.letters().to_vec(), ray.period.letters().to_vec())
        };
        let eq = streams_equal(&stream(ray1)?, &stream(ray2)?);
        return Ok(if eq {
            BoundaryVerdict::Equal
        } else {
            BoundaryVerdict::Distinct { witnessed_bound: HalfInt::zero() }
        });
    }

    if let SeparatorVerdict::Exact(_) = separating_hyperplanes(raag, ray1, ray2, horizon)? {
        return Ok(BoundaryVerdict::Equal);
    }

    let dev1 = develop(raag, ray1, horizon)?;
    let dev2 = develop(raag, ray2, horizon)?;
    let origin = raag.identity();
    let products: Vec<HalfInt> = (0..=horizon)
        .map(|d| gromov_product(raag, &dev1.vertices[d], &dev2.vertices[d], &origin))
        .collect();
    let half = horizon / 2;
    let bound = products[..=half].iter().max().copied().unwrap_or_default();
    if products[half..].iter().all(|p| *p <= bound) {
        Ok(BoundaryVerdict::Distinct { witnessed_bound: bound })
    } else {
        Ok(BoundaryVerdict::Indeterminate)
    }
}

/// Partition of a ray family by Gromov-boundary equality.
#[derive(Debug, Clone)]
pub struct FiberReport {
    /// Classes as index sets into the input family.
    pub classes: Vec<Vec<usize>>,
    /// Rays isolated because some verdict involving them was indeterminate.
    pub indeterminate: Vec<usize>,
    pub max_class_size: usize,
    /// `D − 2 + 1` with `D = 2 |V(Γ)|`, the degree bound on boundary links
    /// plus one; observed class sizes must never exceed it.
    pub class_size_bound: usize,
    pub bound_violated: bool,
}

/// Partitions rays by `gromov_boundary_equal`, isolating rays involved in
/// any indeterminate verdict, and checks the observed class sizes against
/// the degree bound.
pub fn fiber_sample(raag: &Raag, rays: &[PeriodicRay], horizon: usize) -> Result<FiberReport> {
    let n = rays.len();
    let mut equal = vec![false; n * n];
    let mut shaky = vec![false; n];
    for i in 0..n {
        for j in (i + 1)..n {
            match gromov_boundary_equal(raag, &rays[i], &rays[j], horizon)? {
                BoundaryVerdict::Equal => {
                    equal[i * n + j] = true;
                    equal[j * n + i] = true;
                }
                BoundaryVerdict::Distinct { .. } => {}
                BoundaryVerdict::Indeterminate => {
                    shaky[i] = true;
                    shaky[j] = true;
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if assigned[i] || shaky[i] {
            continue;
        }
        let mut class = vec![i];
        assigned[i] = true;
        let mut cursor = 0;
        while cursor < class.len() {
            let x = class[cursor];
            cursor += 1;
            for j in 0..n {
                if !assigned[j] && !shaky[j] && equal[x * n + j] {
                    assigned[j] = true;
                    class.push(j);
                }
            }
        }
        classes.push(class);
    }
    let indeterminate: Vec<usize> = (0..n).filter(|&i| shaky[i]).collect();
    for &i in &indeterminate {
        classes.push(vec![i]);
    }
    let max_class_size = classes.iter().map(Vec::len).max().unwrap_or(0);
    let class_size_bound = 2 * raag.graph().vertex_count() - 2 + 1;
    Ok(FiberReport {
        bound_violated: max_class_size > class_size_bound,
        classes,
        indeterminate,
        max_class_size,
        class_size_bound,
    })
}

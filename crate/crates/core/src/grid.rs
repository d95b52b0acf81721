//! Rectangular `(T, v)` grids with inclusive, equally spaced axes.

use crate::{Error, Result};

/// `steps` equally spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::Argument { op: "grid range (need min < max)", value: min });
        }
        if steps < 2 {
            return Err(Error::Argument { op: "grid steps (need >= 2)", value: steps as f64 });
        }
        Ok(Self { min, max, steps })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.steps - 1) as f64
    }

    /// Index of the grid value nearest `x` (clamped to the axis).
    pub fn nearest(&self, x: f64) -> usize {
        let f = (x - self.min) / self.spacing();
        if !(f > 0.0) {
            0
        } else {
            (libm::round(f) as usize).min(self.steps - 1)
        }
    }
}

/// Temperature rows × volume columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub temperature: Axis,
    pub volume: Axis,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.temperature.steps * self.volume.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.volume.steps + col
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values() {
        let a = Axis::new(0.2, 1.4, 400).unwrap();
        assert_eq!(a.value(0), 0.2);
        assert_eq!(a.value(399), 1.4);
        assert_eq!(a.nearest(1.0), 266);
        assert_eq!(a.nearest(-5.0), 0);
        assert_eq!(a.nearest(50.0), 399);
        assert!(Axis::new(1.0, 0.5, 10).is_err());
        assert!(Axis::new(0.0, 1.0, 1).is_err());
    }
}

//! Windowed hit-count grids over the complex plane and 16-bit PGM export.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Axis-aligned window in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        assert!(x_max > x_min && y_max > y_min, "empty window");
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn square(half_side: f64) -> Self {
        Self::new(-half_side, half_side, -half_side, half_side)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x_min && z.re < self.x_max && z.im >= self.y_min && z.im < self.y_max
    }

    /// Euclidean distance from `z` to the rectangle (0 inside).
    pub fn distance(&self, z: Complex64) -> f64 {
        let dx = (self.x_min - z.re).max(0.0).max(z.re - self.x_max);
        let dy = (self.y_min - z.im).max(0.0).max(z.im - self.y_max);
        (dx * dx + dy * dy).sqrt()
    }
}

/// Per-cell accumulation grid. Cells are half-open; points on the max
/// edges fall outside. Row 0 is the bottom row (y = y_min side); PGM
/// export emits rows top-down.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterGrid {
    pub window: Rect,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<f64>,
}

impl RasterGrid {
    pub fn new(window: Rect, width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0 && width <= 1 << 14 && height <= 1 << 14);
        Self {
            window,
            width,
            height,
            cells: vec![0.0; width * height],
        }
    }

    pub fn cell_index(&self, z: Complex64) -> Option<usize> {
        if !self.window.contains(z) {
            return None;
        }
        let ix = ((z.re - self.window.x_min) / self.window.width() * self.width as f64) as usize;
        let iy = ((z.im - self.window.y_min) / self.window.height() * self.height as f64) as usize;
        let ix = ix.min(self.width - 1);
        let iy = iy.min(self.height - 1);
        Some(iy * self.width + ix)
    }

    pub fn add_point(&mut self, z: Complex64) {
        if let Some(i) = self.cell_index(z) {
            self.cells[i] += 1.0;
        }
    }

    pub fn accumulate(&mut self, points: &[Complex64]) {
        for &z in points {
            self.add_point(z);
        }
    }

    /// Adds another grid cellwise; windows and shapes must match.
    pub fn merge(&mut self, other: &RasterGrid) {
        assert_eq!(self.window, other.window);
        assert_eq!((self.width, self.height), (other.width, other.height));
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            *a += b;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for c in &mut self.cells {
            *c *= factor;
        }
    }

    pub fn max_cell(&self) -> f64 {
        self.cells.iter().copied().fold(0.0, f64::max)
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().sum()
    }

    /// Mirror about the real axis (row reversal): the raster of the
    /// conjugated point set on a conjugation-symmetric window.
    pub fn flipped_vertical(&self) -> RasterGrid {
        let mut out = self.clone();
        for iy in 0..self.height {
            let src = self.height - 1 - iy;
            out.cells[iy * self.width..(iy + 1) * self.width]
                .copy_from_slice(&self.cells[src * self.width..(src + 1) * self.width]);
        }
        out
    }

    /// 16-bit binary PGM (P5, maxval 65535, big-endian samples), rows
    /// emitted top-down. `log_scale` applies `log(1+x)` before the
    /// normalization to the full 16-bit range.
    pub fn to_pgm16(&self, log_scale: bool) -> Vec<u8> {
        let transform = |v: f64| if log_scale { (1.0 + v).ln() } else { v };
        let peak = self.cells.iter().map(|&v| transform(v)).fold(0.0, f64::max);
        let mut out = Vec::with_capacity(32 + 2 * self.cells.len());
        out.extend_from_slice(format!("P5\n{} {}\n65535\n", self.width, self.height).as_bytes());
        for iy in (0..self.height).rev() {
            for ix in 0..self.width {
                let v = transform(self.cells[iy * self.width + ix]);
                let level = if peak > 0.0 {
                    (v / peak * 65535.0).round() as u16
                } else {
                    0
                };
                out.extend_from_slice(&level.to_be_bytes());
            }
        }
        out
    }
}

/// Sidecar metadata written next to every PGM.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RasterSidecar {
    pub window: Rect,
    pub width: usize,
    pub height: usize,
    pub log_scale: bool,
    pub max_cell: f64,
    pub total_hits: f64,
    pub normalization: String,
}

impl RasterSidecar {
    pub fn for_grid(grid: &RasterGrid, log_scale: bool, normalization: &str) -> Self {
        Self {
            window: grid.window,
            width: grid.width,
            height: grid.height,
            log_scale,
            max_cell: grid.max_cell(),
            total_hits: grid.total(),
            normalization: normalization.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_grid_is_zero() {
        let g = RasterGrid::new(Rect::square(1.0), 8, 8);
        assert_eq!(g.total(), 0.0);
        let pgm = g.to_pgm16(true);
        assert!(pgm.starts_with(b"P5\n8 8\n65535\n"));
        assert_eq!(pgm.len(), 13 + 128);
    }

    #[test]
    fn accumulation_and_window_edges() {
        let mut g = RasterGrid::new(Rect::new(0.0, 1.0, 0.0, 1.0), 4, 4);
        g.add_point(c(0.1, 0.1));
        g.add_point(c(0.1, 0.1));
        g.add_point(c(1.0, 0.5)); // on the max edge: outside
        g.add_point(c(-0.01, 0.5)); // outside
        assert_eq!(g.total(), 2.0);
        assert_eq!(g.cells[0], 2.0);
    }

    #[test]
    fn merge_is_addition() {
        let mut a = RasterGrid::new(Rect::square(1.0), 4, 4);
        let mut b = a.clone();
        a.add_point(c(0.5, 0.5));
        b.add_point(c(0.5, 0.5));
        b.add_point(c(-0.5, -0.5));
        a.merge(&b);
        assert_eq!(a.total(), 3.0);
    }

    #[test]
    fn vertical_flip_mirrors_conjugation() {
        // Odd height keeps the real axis inside the center row.
        let mut g = RasterGrid::new(Rect::square(1.0), 5, 5);
        let pts = [c(0.3, 0.4), c(-0.2, -0.9), c(0.0, 0.0), c(0.7, 0.1)];
        g.accumulate(&pts);
        let mut h = RasterGrid::new(Rect::square(1.0), 5, 5);
        let conj: Vec<Complex64> = pts.iter().map(|z| z.conj()).collect();
        h.accumulate(&conj);
        assert_eq!(g.flipped_vertical(), h);
    }

    #[test]
    fn pgm_is_16bit_big_endian() {
        let mut g = RasterGrid::new(Rect::square(1.0), 2, 1);
        g.add_point(c(-0.5, 0.0));
        let pgm = g.to_pgm16(false);
        let header = b"P5\n2 1\n65535\n";
        assert_eq!(&pgm[..header.len()], header);
        assert_eq!(&pgm[header.len()..], &[0xFF, 0xFF, 0x00, 0x00]);
    }
}

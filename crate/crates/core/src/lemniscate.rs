//! The orientation-reversing set `{|p'| < |q'|}` on a square grid.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::HarmonicPolynomial;

pub const MIN_RESOLUTION: usize = 64;

/// Square window `center + [-h, h] x [-h, h]` split into `resolution^2` cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridWindow {
    pub center: Complex64,
    pub half_width: f64,
    pub resolution: usize,
}

impl GridWindow {
    pub fn new(center: Complex64, half_width: f64, resolution: usize) -> Result<Self> {
        let w = Self {
            center,
            half_width,
            resolution,
        };
        w.validate()?;
        Ok(w)
    }

    /// `|Re z|, |Im z| < 1`.
    pub fn unit(resolution: usize) -> Result<Self> {
        Self::new(Complex64::new(0.0, 0.0), 1.0, resolution)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < MIN_RESOLUTION {
            return Err(Error::Domain(format!(
                "resolution {} below {MIN_RESOLUTION}",
                self.resolution
            )));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::Domain(format!("half width {}", self.half_width)));
        }
        if !self.center.re.is_finite() || !self.center.im.is_finite() {
            return Err(Error::Domain("non-finite window center".into()));
        }
        Ok(())
    }

    pub fn cell_size(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }

    /// Center of the cell in row `i` (top to bottom) and column `j`.
    pub fn cell_center(&self, i: usize, j: usize) -> Complex64 {
        let h = self.cell_size();
        self.center
            + Complex64::new(
                -self.half_width + (j as f64 + 0.5) * h,
                self.half_width - (i as f64 + 0.5) * h,
            )
    }

    pub fn with_resolution(&self, resolution: usize) -> Result<Self> {
        Self::new(self.center, self.half_width, resolution)
    }
}

/// Radius containing every root of `sum c_k z^k`: the positive root of
/// `|c_d| r^d = sum_{k<d} |c_k| r^k`. Zero for constants.
fn root_radius(c: &[Complex64]) -> Result<f64> {
    let d = match c.iter().rposition(|ck| ck.norm() > 0.0) {
        Some(d) if d > 0 => d,
        _ => return Ok(0.0),
    };
    HarmonicPolynomial::new(c[..=d].to_vec(), vec![Complex64::new(0.0, 0.0)])?.majorant_radius()
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, ck| acc * z + ck)
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, ck)| ck * k as f64)
        .collect()
}

/// A window centred at 0 reaching 5% past every root of `p'` and `q'`. Each
/// bounded component of the reversing set contains a root of `p'`, so every
/// component meets the window; components cut by the edge are flagged by
/// `component_report`.
pub fn full_disk_window(f: &HarmonicPolynomial, resolution: usize) -> Result<GridWindow> {
    let radius = root_radius(&derivative(f.a()))?.max(root_radius(&derivative(f.b()))?);
    let half_width = if radius > 0.0 { 1.05 * radius } else { 1.0 };
    GridWindow::new(Complex64::new(0.0, 0.0), half_width, resolution)
}

/// Boolean grid, row-major, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl Mask {
    pub fn new(width: usize, height: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != width * height {
            return Err(Error::Domain(format!(
                "{} cells for a {width}x{height} mask",
                cells.len()
            )));
        }
        Ok(Self {
            width,
            height,
            cells,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.width + j]
    }

    pub fn count_true(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Keeps a cell only if it and its four neighbours are set; cells off the
    /// grid count as set, so erosion does not eat in from the window edge.
    pub fn eroded(&self) -> Mask {
        let (w, h) = (self.width, self.height);
        let at = |i: isize, j: isize| {
            if i < 0 || j < 0 || i >= h as isize || j >= w as isize {
                true
            } else {
                self.cells[i as usize * w + j as usize]
            }
        };
        let cells = (0..h * w)
            .map(|idx| {
                let (i, j) = ((idx / w) as isize, (idx % w) as isize);
                at(i, j) && at(i - 1, j) && at(i + 1, j) && at(i, j - 1) && at(i, j + 1)
            })
            .collect();
        Mask {
            width: w,
            height: h,
            cells,
        }
    }

    /// Binary PGM (`P5`), 255 for set cells.
    pub fn write_pgm<W: Write>(&self, out: &mut W) -> Result<()> {
        let io = |e: std::io::Error| Error::Parse(e.to_string());
        write!(out, "P5\n{} {}\n255\n", self.width, self.height).map_err(io)?;
        let bytes: Vec<u8> = self
            .cells
            .iter()
            .map(|&c| if c { 255 } else { 0 })
            .collect();
        out.write_all(&bytes).map_err(io)
    }
}

/// Cell `(i, j)` is set iff `|p'| < |q'|` at its center.
pub fn omega_minus_mask(f: &HarmonicPolynomial, w: &GridWindow) -> Result<Mask> {
    w.validate()?;
    let r = w.resolution;
    let mut cells = vec![false; r * r];
    if f.m() == 0 {
        return Mask::new(r, r, cells);
    }
    let (dp, dq) = (derivative(f.a()), derivative(f.b()));
    for i in 0..r {
        for j in 0..r {
            let z = w.cell_center(i, j);
            cells[i * r + j] = horner(&dp, z).norm_sqr() < horner(&dq, z).norm_sqr();
        }
    }
    Mask::new(r, r, cells)
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub count: usize,
    /// Components with a cell on the window edge; the window may cut them.
    pub touching_boundary: usize,
    /// Cell counts, largest first.
    pub sizes: Vec<usize>,
}

/// 4-connected components of the set cells.
pub fn component_report(mask: &Mask) -> ComponentReport {
    let (w, h) = (mask.width, mask.height);
    let mut uf = UnionFind::new(w * h);
    for i in 0..h {
        for j in 0..w {
            let idx = i * w + j;
            if !mask.cells[idx] {
                continue;
            }
            if j + 1 < w && mask.cells[idx + 1] {
                uf.union(idx, idx + 1);
            }
            if i + 1 < h && mask.cells[idx + w] {
                uf.union(idx, idx + w);
            }
        }
    }
    let mut sizes = std::collections::HashMap::new();
    let mut edge = std::collections::HashSet::new();
    for i in 0..h {
        for j in 0..w {
            let idx = i * w + j;
            if mask.cells[idx] {
                let root = uf.find(idx);
                *sizes.entry(root).or_insert(0usize) += 1;
                if i == 0 || j == 0 || i + 1 == h || j + 1 == w {
                    edge.insert(root);
                }
            }
        }
    }
    let mut sizes: Vec<usize> = sizes.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ComponentReport {
        count: sizes.len(),
        touching_boundary: edge.len(),
        sizes,
    }
}

pub fn count_components(mask: &Mask) -> usize {
    component_report(mask).count
}

/// Marching-squares segments of `{|p'| = |q'|}` on the cell-center lattice,
/// written as CSV `segment_id,re,im` with two rows per segment.
pub fn write_contour_csv<W: Write>(
    out: &mut W,
    f: &HarmonicPolynomial,
    w: &GridWindow,
) -> Result<()> {
    w.validate()?;
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    writeln!(out, "segment_id,re,im").map_err(io)?;
    if f.m() == 0 {
        return Ok(());
    }
    let r = w.resolution;
    // Bounded level function, positive inside the reversing set.
    let field: Vec<f64> = (0..r * r)
        .map(|idx| {
            let v = f.point_values(w.cell_center(idx / r, idx % r));
            let (a, b) = (v.dp.norm(), v.dq.norm());
            if a + b == 0.0 {
                0.0
            } else {
                (b - a) / (b + a)
            }
        })
        .collect();
    let mut id = 0usize;
    for i in 0..r - 1 {
        for j in 0..r - 1 {
            // Corners counter-clockwise from top-left: (i,j), (i+1,j), (i+1,j+1), (i,j+1).
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let vals: Vec<f64> = corners.iter().map(|&(a, b)| field[a * r + b]).collect();
            let mut crossings = Vec::with_capacity(4);
            for k in 0..4 {
                let (v0, v1) = (vals[k], vals[(k + 1) % 4]);
                if (v0 > 0.0) != (v1 > 0.0) {
                    let t = v0 / (v0 - v1);
                    let z0 = w.cell_center(corners[k].0, corners[k].1);
                    let z1 = w.cell_center(corners[(k + 1) % 4].0, corners[(k + 1) % 4].1);
                    crossings.push(z0 + (z1 - z0) * t);
                }
            }
            // Two crossings make one segment; four (a saddle) are paired by
            // edge order, which is enough for plotting.
            for pair in crossings.chunks_exact(2) {
                for z in pair {
                    writeln!(out, "{id},{:.10e},{:.10e}", z.re, z.im).map_err(io)?;
                }
                id += 1;
            }
        }
    }
    Ok(())
}

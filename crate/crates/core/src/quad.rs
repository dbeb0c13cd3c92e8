//! Composite Simpson quadrature.

/// Composite Simpson rule on `[lo, hi]` with `n` subintervals (rounded up to
/// an even count, at least 2).
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let n = n.max(2);
    let n = n + (n & 1);
    let h = (hi - lo) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let v = f(lo + h * i as f64);
        if i & 1 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(lo) + f(hi) + 4.0 * odd + 2.0 * even)
}

/// Subinterval count giving `per_unit` subintervals per unit length.
pub fn panels_for(length: f64, per_unit: usize) -> usize {
    let n = (length.abs() * per_unit as f64).ceil() as usize;
    n.max(2)
}

/// Cumulative integral table of `f` on a uniform grid of `cells` cells over
/// `[lo, hi]`, each cell integrated by Simpson with `sub` subintervals.
#[derive(Debug, Clone)]
pub struct PrefixIntegral {
    lo: f64,
    step: f64,
    sub: usize,
    table: Vec<f64>,
}

impl PrefixIntegral {
    pub fn new<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, cells: usize, sub: usize) -> Self {
        let cells = cells.max(1);
        let step = (hi - lo) / cells as f64;
        let mut table = Vec::with_capacity(cells + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for j in 0..cells {
            let a = lo + step * j as f64;
            acc += simpson(f, a, a + step, sub);
            table.push(acc);
        }
        Self {
            lo,
            step,
            sub,
            table,
        }
    }

    pub fn cells(&self) -> usize {
        self.table.len() - 1
    }

    pub fn node(&self, j: usize) -> f64 {
        self.lo + self.step * j as f64
    }

    /// Cumulative integral from `lo` to node `j`.
    pub fn at_node(&self, j: usize) -> f64 {
        self.table[j]
    }

    /// Cumulative integral from `lo` to an arbitrary point `t` in range.
    pub fn at<F: Fn(f64) -> f64>(&self, f: &F, t: f64) -> f64 {
        let pos = ((t - self.lo) / self.step).floor();
        let j = (pos.max(0.0) as usize).min(self.cells() - 1);
        let a = self.node(j);
        if t == a {
            return self.table[j];
        }
        self.table[j] + simpson(f, a, t, self.sub)
    }
}

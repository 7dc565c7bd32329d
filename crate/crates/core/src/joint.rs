//! Two-variable joint distributions and the elementary inequalities
//! `H(X) >= H(X|Y)`, `I(X;Y) >= 0` and `I(X;Y) = I(Y;X)`.
//!
//! Cells may be zero (`0 log 0 = 0`); the marginals may not.

use num_traits::{Signed, Zero};

use crate::dist::{parse_rational_token, strip_comment, ExactDistribution, Rational};
use crate::entropy::shannon_entropy;
use crate::error::{Error, Result};
use crate::numeric::{log2_rational, rational_to_f64};

/// Slack allowed when checking the inequalities in floating point.
pub const INEQUALITY_TOLERANCE: f64 = 1e-12;

/// Joint law of a row variable `X` and a column variable `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    cells: Vec<Rational>,
}

impl JointDistribution {
    pub fn new(cells: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = cells.len();
        let cols = cells.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidJoint("no cells".into()));
        }
        if let Some(r) = cells.iter().position(|row| row.len() != cols) {
            return Err(Error::InvalidJoint(format!(
                "row {r} has {} cells, expected {cols}",
                cells[r].len()
            )));
        }
        let cells: Vec<Rational> = cells.into_iter().flatten().collect();
        if let Some(c) = cells.iter().find(|c| c.is_negative()) {
            return Err(Error::InvalidJoint(format!("negative cell {c}")));
        }
        let sum: Rational = cells.iter().sum();
        if sum != Rational::from_integer(1.into()) {
            return Err(Error::InvalidJoint(format!("cells sum to {sum}, not 1")));
        }
        let joint = Self { rows, cols, cells };
        let (x, y) = joint.marginal_sums();
        if let Some(r) = x.iter().position(Zero::is_zero) {
            return Err(Error::InvalidJoint(format!("row {r} has zero marginal")));
        }
        if let Some(c) = y.iter().position(Zero::is_zero) {
            return Err(Error::InvalidJoint(format!("column {c} has zero marginal")));
        }
        Ok(joint)
    }

    /// Independent joint `p(x, y) = p(x) q(y)`.
    pub fn product(x: &ExactDistribution, y: &ExactDistribution) -> Self {
        let cells = x
            .probs()
            .iter()
            .flat_map(|p| y.probs().iter().map(move |q| p * q))
            .collect();
        Self {
            rows: x.len(),
            cols: y.len(),
            cells,
        }
    }

    /// Text form: `R C` on the first line, then `R` lines of `C` rational tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l).trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(Error::MalformedInput {
            line: 1,
            reason: "missing `R C` header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::MalformedInput {
                line,
                reason: format!("expected `R C`, found `{header}`"),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Error::MalformedInput {
                line,
                reason: format!("expected `R C`, found `{header}`"),
            });
        };
        let mut cells = Vec::with_capacity(rows);
        for (line, l) in lines {
            let row = l
                .split_whitespace()
                .map(|t| parse_rational_token(t, line))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != cols {
                return Err(Error::MalformedInput {
                    line,
                    reason: format!("expected {cols} cells, found {}", row.len()),
                });
            }
            cells.push(row);
        }
        if cells.len() != rows {
            return Err(Error::MalformedInput {
                line,
                reason: format!("header announces {rows} rows, found {}", cells.len()),
            });
        }
        Self::new(cells)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, x: usize, y: usize) -> &Rational {
        &self.cells[x * self.cols + y]
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for y in 0..self.cols {
            for x in 0..self.rows {
                cells.push(self.cell(x, y).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    fn marginal_sums(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut x = vec![Rational::zero(); self.rows];
        let mut y = vec![Rational::zero(); self.cols];
        for (row, xr) in self.cells.chunks(self.cols).zip(&mut x) {
            for (v, yc) in row.iter().zip(&mut y) {
                *xr += v;
                *yc += v;
            }
        }
        (x, y)
    }

    /// `(p(x), p(y))` as exact distributions.
    pub fn marginals(&self) -> (ExactDistribution, ExactDistribution) {
        let (x, y) = self.marginal_sums();
        (
            ExactDistribution::from_rationals(x).expect("validated at construction"),
            ExactDistribution::from_rationals(y).expect("validated at construction"),
        )
    }

    /// Every cell equals the product of its marginals, exactly.
    pub fn is_independent(&self) -> bool {
        let (x, y) = self.marginal_sums();
        (0..self.rows).all(|r| (0..self.cols).all(|c| *self.cell(r, c) == &x[r] * &y[c]))
    }

    /// `H(X, Y)`.
    pub fn joint_entropy(&self, base: u32) -> Result<f64> {
        let log2_b = log2_base(base)?;
        let bits: f64 = self
            .cells
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| -rational_to_f64(c) * log2_rational(c))
            .sum();
        Ok(bits / log2_b)
    }

    /// `H(X|Y) = -Σ p(x,y) log p(x|y)`, with `p(x|y)` formed exactly.
    pub fn conditional_entropy(&self, base: u32) -> Result<f64> {
        let log2_b = log2_base(base)?;
        let (_, y) = self.marginal_sums();
        let mut bits = 0.0;
        for row in self.cells.chunks(self.cols) {
            for (v, yc) in row.iter().zip(&y) {
                if v.is_zero() {
                    continue;
                }
                bits -= rational_to_f64(v) * log2_rational(&(v / yc));
            }
        }
        Ok(bits / log2_b)
    }

    /// `I(X;Y) = H(X) - H(X|Y)`.
    pub fn mutual_information(&self, base: u32) -> Result<f64> {
        let (x, _) = self.marginals();
        Ok(shannon_entropy(&x, base)? - self.conditional_entropy(base)?)
    }

    pub fn check_inequalities(&self, base: u32) -> Result<InequalityReport> {
        let (x, y) = self.marginals();
        let t = self.transpose();
        Ok(InequalityReport {
            h_x: shannon_entropy(&x, base)?,
            h_y: shannon_entropy(&y, base)?,
            h_xy: self.joint_entropy(base)?,
            h_x_given_y: self.conditional_entropy(base)?,
            h_y_given_x: t.conditional_entropy(base)?,
            i_xy: self.mutual_information(base)?,
            i_yx: t.mutual_information(base)?,
            independent: self.is_independent(),
        })
    }
}

fn log2_base(base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    Ok(f64::from(base).log2())
}

/// Entropies of a joint and the verdicts derived from them.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub h_x: f64,
    pub h_y: f64,
    pub h_xy: f64,
    pub h_x_given_y: f64,
    pub h_y_given_x: f64,
    pub i_xy: f64,
    pub i_yx: f64,
    /// Cells equal marginal products exactly.
    pub independent: bool,
}

impl InequalityReport {
    /// `H(X) >= H(X|Y)` and `H(Y) >= H(Y|X)`.
    pub fn conditioning_reduces_entropy(&self) -> bool {
        self.h_x >= self.h_x_given_y - INEQUALITY_TOLERANCE
            && self.h_y >= self.h_y_given_x - INEQUALITY_TOLERANCE
    }

    pub fn mutual_information_nonnegative(&self) -> bool {
        self.i_xy >= -INEQUALITY_TOLERANCE && self.i_yx >= -INEQUALITY_TOLERANCE
    }

    pub fn mutual_information_symmetric(&self) -> bool {
        (self.i_xy - self.i_yx).abs() <= INEQUALITY_TOLERANCE
    }

    /// Independence forces `I = 0`; vacuous for dependent joints.
    pub fn independence_implies_zero(&self) -> bool {
        !self.independent || self.i_xy <= INEQUALITY_TOLERANCE
    }

    pub fn all_hold(&self) -> bool {
        self.conditioning_reduces_entropy()
            && self.mutual_information_nonnegative()
            && self.mutual_information_symmetric()
            && self.independence_implies_zero()
    }
}

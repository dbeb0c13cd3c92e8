//! Numerical companion to the rigidity phenomenon for the centered
//! Hardy-Littlewood maximal function.
//!
//! A periodic function whose interval averages `(A_x f)(r)` share a common
//! critical radius for every centre `x` must be a shifted, dilated sine.
//! This crate computes every object that statement touches:
//!
//! * [`periodic`]: trigonometric polynomials, the sine family and black-box
//!   periodic callables behind one [`FunctionHandle`].
//! * [`averaging`]: interval averages by quadrature and by the Fourier
//!   multiplier `sin(rk)/(rk)`, their radial derivative and the criticality
//!   residual.
//! * [`maximal`]: signed maximal values, the length function `r_f`, value-set
//!   summaries and the uncentered length `r*_f` on `[0, 1]`.
//! * [`rigidity`]: fixed points of `tan t = t`, exact tangent multiple-angle
//!   polynomials and the combined nonvanishing certificate.
//! * [`dde`]: the associated delay differential equation, integrated by the
//!   method of steps.
//! * [`lattice`]: the discrete maximal function on periodic sequences, the
//!   alternating power-law example and sup-norm distance to sampled sines.
//! * [`poincare`]: the Poincaré inequality controlled by `‖r*_f‖∞`.
//! * [`cli`]: the experiment harness behind the `maxrigidity` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod averaging;
pub mod cli;
pub mod corpus;
pub mod dde;
pub mod error;
pub mod lattice;
pub mod maximal;
pub mod periodic;
pub mod poincare;
pub mod quad;
pub mod rigidity;
pub mod svg;

pub use error::{Error, Result};
pub use periodic::{BlackBox, FourierSeries, FunctionHandle, Mode, SineParams};
